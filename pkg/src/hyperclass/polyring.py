"""Dense univariate polynomials over a :class:`~hyperclass.ff.Field`.

Two layers: module-level functions on plain coefficient lists (low to high,
no trailing zeros, ``[]`` is zero), used directly in hot loops, and the
immutable :class:`Poly` wrapper for everything else.
"""
from __future__ import annotations

import itertools
import random
import re
from collections.abc import Callable, Iterator

from .ff import Field, FieldError, QuadraticExtension, prime_factors


class SearchExhausted(RuntimeError):
    """An exhaustive scan found no candidate."""


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def padd(F: Field, a, b):
    if len(a) < len(b):
        a, b = b, a
    if F.n == 1:
        p = F.p
        res = [(x + y) % p for x, y in zip(a, b)]
    else:
        add = F.add
        res = [add(x, y) for x, y in zip(a, b)]
    res.extend(a[len(b):])
    return trim(res)


def pneg(F: Field, a):
    neg = F.neg
    return [neg(x) for x in a]


def psub(F: Field, a, b):
    return padd(F, a, pneg(F, b))


def pscale(F: Field, a, c: int):
    if c == 0:
        return []
    mul = F.mul
    return [mul(x, c) for x in a]


def pshift(a, k: int):
    return [0] * k + list(a) if a else []


def pmul(F: Field, a, b):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    if F.n == 1:
        p = F.p
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    res[i + j] += ai * bj
        return trim([c % p for c in res])
    log, exp, m, add = F.log, F.exp, F.order, F.add
    lb = [(j, log[bj]) for j, bj in enumerate(b) if bj]
    for i, ai in enumerate(a):
        if ai:
            la = log[ai]
            for j, l in lb:
                res[i + j] = add(res[i + j], exp[(la + l) % m])
    return trim(res)


def pdivmod(F: Field, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    inv = F.inv(b[-1])
    quo = [0] * (len(a) - db)
    if F.n == 1:
        p = F.p
        for s in range(len(a) - 1 - db, -1, -1):
            c = a[s + db] * inv % p
            if c:
                quo[s] = c
                for i, bi in enumerate(b):
                    a[s + i] = (a[s + i] - c * bi) % p
    else:
        mul, sub = F.mul, F.sub
        for s in range(len(a) - 1 - db, -1, -1):
            c = mul(a[s + db], inv)
            if c:
                quo[s] = c
                for i, bi in enumerate(b):
                    if bi:
                        a[s + i] = sub(a[s + i], mul(c, bi))
    return trim(quo), trim(a[:db])


def prem(F: Field, a, b):
    if len(a) < len(b):
        return list(a)
    return pdivmod(F, a, b)[1]


def pmonic(F: Field, a):
    if not a or a[-1] == 1:
        return list(a)
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F: Field, a, b):
    """Monic gcd."""
    a, b = list(a), list(b)
    while b:
        a, b = b, prem(F, a, b)
    return pmonic(F, a)


def pxgcd(F: Field, a, b):
    """Return (g, s, t) with s*a + t*b = g, g monic (or zero)."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        qt, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(F, s0, pmul(F, qt, s1))
        t0, t1 = t1, psub(F, t0, pmul(F, qt, t1))
    if not r0:
        return [], [], []
    inv = F.inv(r0[-1])
    return pscale(F, r0, inv), pscale(F, s0, inv), pscale(F, t0, inv)


def peval(F: Field, a, x: int) -> int:
    acc = 0
    mul, add = F.mul, F.add
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def ppowmod(F: Field, a, e: int, m):
    result = [1] if len(m) > 1 else []
    base = prem(F, a, m)
    while e:
        if e & 1:
            result = prem(F, pmul(F, result, base), m)
        e >>= 1
        if e:
            base = prem(F, pmul(F, base, base), m)
    return result


def pderiv(F: Field, a):
    return trim([F.mul(F.from_int(i), c) for i, c in enumerate(a)][1:])


# --- the Poly wrapper ----------------------------------------------------------

_TERM = re.compile(r"^\s*(\d+)?\s*(?:(T)(?:\^(\d+))?)?\s*$")


class Poly:
    """Immutable polynomial; ``coeffs`` are field codes, low degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(trim(list(coeffs))))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def T(cls, field: Field) -> Poly:
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c: int) -> Poly:
        return cls(field, (c,))

    @classmethod
    def parse(cls, field: Field, text: str) -> Poly:
        """Inverse of ``str``: "2+0T+1T^2" style, coefficients as element codes."""
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(field)
        coeffs: dict[int, int] = {}
        for term in text.split("+"):
            m = _TERM.match(term)
            if not term or not m or (m.group(1) is None and m.group(2) is None):
                raise ValueError(f"bad polynomial term {term!r} in {text!r}")
            c = int(m.group(1)) if m.group(1) is not None else 1
            if c >= field.q:
                raise ValueError(f"coefficient {c} out of range for {field!r}")
            d = 0 if m.group(2) is None else int(m.group(3) or 1)
            coeffs[d] = field.add(coeffs.get(d, 0), c)
        top = max(coeffs)
        return cls(field, [coeffs.get(i, 0) for i in range(top + 1)])

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            parts.append(str(c) if i == 0 else f"{c}T" if i == 1 else f"{c}T^{i}")
        return "+".join(parts)

    def __repr__(self):
        return f"Poly({self.field!r}, {str(self)!r})"

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lead == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.n, self.coeffs))

    def sort_key(self):
        """Canonical order: by degree, then coefficients low degree first."""
        return (len(self.coeffs), self.coeffs)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def _wrap(self, c):
        return Poly(self.field, c)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldError("polynomials over different fields")
            return other.coeffs
        if isinstance(other, int):
            return trim([other % self.field.q]) if other else []
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(padd(self.field, self.coeffs, o))

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(pneg(self.field, self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(psub(self.field, self.coeffs, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._wrap(pmul(self.field, self.coeffs, o))

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        return self._wrap(pscale(self.field, self.coeffs, c))

    def __pow__(self, e: int):
        result = self._wrap([1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        o = self._coerce(other)
        qt, r = pdivmod(self.field, self.coeffs, o)
        return self._wrap(qt), self._wrap(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x: int) -> int:
        return peval(self.field, self.coeffs, x)

    def monic(self) -> Poly:
        return self._wrap(pmonic(self.field, self.coeffs))

    def gcd(self, other: Poly) -> Poly:
        return self._wrap(pgcd(self.field, self.coeffs, self._coerce(other)))

    def xgcd(self, other: Poly):
        g, s, t = pxgcd(self.field, self.coeffs, self._coerce(other))
        return self._wrap(g), self._wrap(s), self._wrap(t)

    def pow_mod(self, e: int, m: Poly) -> Poly:
        return self._wrap(ppowmod(self.field, self.coeffs, e, m.coeffs))

    def derivative(self) -> Poly:
        return self._wrap(pderiv(self.field, self.coeffs))

    def map_coeffs(self, field: Field, fn: Callable[[int], int]) -> Poly:
        return Poly(field, [fn(c) for c in self.coeffs])


def gcd(f: Poly, g: Poly) -> Poly:
    return f.gcd(g)


# --- irreducibility and factorization ---------------------------------------------

def _frobenius_powers(F: Field, f, d):
    """Yield T^(q^i) mod f for i = 1..d."""
    h = [0, 1]
    for _ in range(d):
        h = ppowmod(F, h, F.q, f)
        yield h


def is_irreducible(f: Poly) -> bool:
    """Rabin's criterion over the coefficient field."""
    if f.degree < 1:
        raise ValueError("irreducibility of a constant is undefined")
    F, n = f.field, f.degree
    if n == 1:
        return True
    fm = pmonic(F, f.coeffs)
    maximal = {n // r for r in prime_factors(n)}
    x = [0, 1]
    for i, h in enumerate(_frobenius_powers(F, fm, n), start=1):
        if i in maximal and len(pgcd(F, fm, psub(F, h, x))) != 1:
            return False
        if i == n:
            return not psub(F, h, x)
    return False  # pragma: no cover


def _pth_root(F: Field, a):
    # a is a polynomial in T^p; take p-th roots of the coefficients too
    p = F.p
    e = F.q // p
    return trim([F.pow(c, e) for c in a[::p]])


def squarefree_decomposition(F: Field, f) -> list[tuple[list[int], int]]:
    """Monic f -> [(g, m)] with f = prod g^m, each g squarefree (Yun, char p aware)."""
    out: list[tuple[list[int], int]] = []
    if len(f) <= 1:
        return out
    df = pderiv(F, f)
    if not df:
        for g, m in squarefree_decomposition(F, _pth_root(F, f)):
            out.append((g, m * F.p))
        return out
    c = pgcd(F, f, df)
    w = pdivmod(F, f, c)[0]
    i = 1
    while len(w) > 1:
        y = pgcd(F, w, c)
        z = pdivmod(F, w, y)[0]
        if len(z) > 1:
            out.append((pmonic(F, z), i))
        i += 1
        w = y
        c = pdivmod(F, c, y)[0]
    if len(c) > 1:
        for g, m in squarefree_decomposition(F, _pth_root(F, c)):
            out.append((g, m * F.p))
    return out


def distinct_degree(F: Field, f) -> list[tuple[list[int], int]]:
    """Squarefree monic f -> [(g_d, d)] where g_d is the product of its degree-d factors."""
    out = []
    h = [0, 1]
    d = 0
    while 2 * (d + 1) <= len(f) - 1:
        d += 1
        h = ppowmod(F, h, F.q, f)
        g = pgcd(F, f, psub(F, h, [0, 1]))
        if len(g) > 1:
            out.append((g, d))
            f = pdivmod(F, f, g)[0]
            h = prem(F, h, f)
    if len(f) > 1:
        out.append((f, len(f) - 1))
    return out


def equal_degree(F: Field, f, d: int, rng: random.Random) -> list[list[int]]:
    """Split a squarefree monic product of degree-d irreducibles (Cantor-Zassenhaus)."""
    n = len(f) - 1
    if n == d:
        return [f]
    e = (F.q**d - 1) // 2
    while True:
        a = trim([rng.randrange(F.q) for _ in range(n)])
        if len(a) < 2:
            continue
        b = psub(F, ppowmod(F, a, e, f), [1])
        g = pgcd(F, f, b)
        if 1 < len(g) < len(f):
            return (equal_degree(F, g, d, rng)
                    + equal_degree(F, pdivmod(F, f, g)[0], d, rng))


def factor(f: Poly, seed: int = 0) -> tuple[int, list[tuple[Poly, int]]]:
    """Return (leading unit, [(monic irreducible, multiplicity)]) sorted by degree then coefficients.

    ``seed`` drives the equal-degree splitting; the result does not depend on it.
    """
    if f.degree < 1:
        raise ValueError("cannot factor a constant")
    F = f.field
    rng = random.Random(seed)
    counts: dict[tuple[int, ...], int] = {}
    for g, m in squarefree_decomposition(F, pmonic(F, f.coeffs)):
        for gd, d in distinct_degree(F, g):
            for h in equal_degree(F, gd, d, rng):
                key = tuple(h)
                counts[key] = counts.get(key, 0) + m
    facs = sorted((Poly(F, k), m) for k, m in counts.items())
    return f.lead, facs


def roots(f: Poly) -> list[int]:
    """Roots of f in its own coefficient field, sorted by code."""
    F = f.field
    fm = pmonic(F, f.coeffs)
    if len(fm) < 2:
        raise ValueError("roots of a constant are undefined")
    g = pgcd(F, fm, psub(F, ppowmod(F, [0, 1], F.q, fm), [0, 1]))
    out = []
    if len(g) > 1:
        for lin in equal_degree(F, g, 1, random.Random(0)):
            out.append(F.neg(lin[0]))
    return sorted(out)


def roots_in_ext(f: Poly, ext: QuadraticExtension) -> list[int]:
    """Roots in F_{q^2} of a polynomial over F_q."""
    if f.field is not ext.base:
        raise FieldError("polynomial is not over the base of the extension")
    return roots(f.map_coeffs(ext.ext, ext.embed))


def sqrt_mod(a: Poly, m: Poly) -> Poly | None:
    """A square root of a modulo the irreducible m (Tonelli-Shanks in F_q[T]/m), or None."""
    F = m.field
    mod = pmonic(F, m.coeffs)
    a0 = prem(F, a.coeffs, mod)
    if not a0:
        return Poly(F)
    Q = F.q ** (len(mod) - 1)
    if ppowmod(F, a0, (Q - 1) // 2, mod) != [1]:
        return None
    s, t = 0, Q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = None
    for cand in _all_polys(F, len(mod) - 1):
        if cand and ppowmod(F, cand, (Q - 1) // 2, mod) != [1]:
            z = cand
            break
    mulm = lambda x, y: prem(F, pmul(F, x, y), mod)
    c = ppowmod(F, z, t, mod)
    x = ppowmod(F, a0, (t + 1) // 2, mod)
    b = ppowmod(F, a0, t, mod)
    r = s
    while b != [1]:
        i, bb = 0, b
        while bb != [1]:
            bb = mulm(bb, bb)
            i += 1
        g = c
        for _ in range(r - i - 1):
            g = mulm(g, g)
        x = mulm(x, g)
        c = mulm(g, g)
        b = mulm(b, c)
        r = i
    return Poly(F, x)


def _all_polys(F: Field, below: int) -> Iterator[list[int]]:
    for deg in range(below):
        for low in itertools.product(range(F.q), repeat=deg):
            for top in range(1, F.q):
                yield list(low) + [top]


def monic_polys(F: Field, d: int) -> Iterator[Poly]:
    """All monic polynomials of degree d, low-degree coefficients most significant."""
    for low in itertools.product(range(F.q), repeat=d):
        yield Poly(F, low + (1,))


def monic_irreducibles(F: Field, d: int) -> Iterator[Poly]:
    for f in monic_polys(F, d):
        if is_irreducible(f):
            yield f


def find_binomial_irreducible(F: Field, l: int,
                              constraint: Callable[[int, int], bool] | None = None) -> Poly:
    """Least (b0, b1), both nonzero, with b0*T^(l-2) + b1 irreducible and meeting ``constraint``."""
    if l < 4 or l % 2:
        raise ValueError("l must be even and at least 4")
    if F.q + 1 <= l - 2:
        raise SearchExhausted(f"q+1 = {F.q + 1} <= l-2 = {l - 2}: field too small for l = {l}")
    for b0 in range(1, F.q):
        for b1 in range(1, F.q):
            if constraint is not None and not constraint(b0, b1):
                continue
            B = Poly(F, [b1] + [0] * (l - 3) + [b0])
            if is_irreducible(B):
                return B
    raise SearchExhausted(f"no irreducible b0*T^{l - 2}+b1 over {F!r} meets the constraint")

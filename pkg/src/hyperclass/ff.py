"""Finite fields F_q (q = p^n, p odd) and the quadratic extension F_{q^2}.

Elements are plain ints ("codes"): the element c_0 + c_1 x + ... + c_{n-1} x^{n-1}
of F_p[x]/(modulus) has code sum(c_i * p**i).  The prime subfield is therefore
{0, ..., p-1} and ordering elements by code is the canonical "coordinate order"
used for every deterministic choice in the package.

Every field carries exp/log tables for a fixed multiplicative generator, so
multiplication is an index addition and addition goes through a Zech table.
"""
from __future__ import annotations

import functools
import itertools
import os

MAX_FIELD_SIZE = int(os.environ.get("HYPERCLASS_MAX_FIELD", 2**16))


class FieldError(ValueError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- bare F_p[x] helpers, only used to pick moduli and bootstrap tables -------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _mulmod(a, b, mod, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _rem(res, mod, p)


def _rem(a, mod, p):
    a = _trim(list(a))
    m = len(mod) - 1
    inv = pow(mod[-1], p - 2, p)
    while len(a) - 1 >= m:
        c = a[-1] * inv % p
        s = len(a) - 1 - m
        for i, mi in enumerate(mod):
            a[s + i] = (a[s + i] - c * mi) % p
        _trim(a)
    return a


def _gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _rem(a, b, p)
    return a


def _powmod(a, e, mod, p):
    result = [1]
    base = _rem(a, mod, p)
    while e:
        if e & 1:
            result = _mulmod(result, base, mod, p)
        base = _mulmod(base, base, mod, p)
        e >>= 1
    return result


def _sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p
                  for i in range(n)])


def _is_irreducible_fp(f, p):
    """Rabin's test over the prime field."""
    n = len(f) - 1
    x = [0, 1]
    for r in prime_factors(n):
        h = _sub(_powmod(x, p ** (n // r), f, p), x, p)
        if len(_gcd(f, h, p)) != 1:
            return False
    return not _sub(_powmod(x, p**n, f, p), x, p)


def canonical_modulus(p: int, n: int) -> tuple[int, ...]:
    """Least monic irreducible of degree n over F_p, low-degree coefficients most significant."""
    for low in itertools.product(range(p), repeat=n):
        f = list(low) + [1]
        if n == 1 or _is_irreducible_fp(f, p):
            return tuple(f)
    raise FieldError(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


class Field:
    """The finite field F_{p^n} with canonical modulus.

    Use :func:`make_field` rather than the constructor; fields are cached so
    identity comparison is equality.
    """

    def __init__(self, p: int, n: int, modulus: tuple[int, ...]):
        self.p = p
        self.n = n
        self.q = p**n
        self.modulus = modulus
        self.order = self.q - 1
        self._build_tables()

    # construction ---------------------------------------------------------

    def coords(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.n):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    def elem(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.n:
            raise FieldError("too many coordinates")
        code = 0
        for c in reversed(coords):
            code = code * self.p + c % self.p
        return code

    def _build_tables(self):
        p, n, q, m = self.p, self.n, self.q, self.order
        mod = list(self.modulus)
        targets = [m // r for r in prime_factors(m)] if m > 1 else []
        gen = None
        for cand in range(1, q):
            c = _trim(list(self.coords(cand)))
            if all(_powmod(c, t, mod, p) != [1] for t in targets):
                gen = c
                break
        assert gen is not None
        exp = [0] * m
        log = [-1] * q
        cur = [1]
        for i in range(m):
            code = self.elem(cur)
            exp[i] = code
            log[code] = i
            cur = _mulmod(cur, gen, mod, p)
        self.exp = exp
        self.log = log
        self.gen = self.elem(gen)
        self.half = m // 2
        # zech[i] = log(1 + g^i), or -1 when 1 + g^i = 0
        if n == 1:
            self.zech = None
        else:
            zech = [-1] * m
            for i in range(m):
                c = list(self.coords(exp[i]))
                c[0] = (c[0] + 1) % p
                zech[i] = log[self.elem(c)]
            self.zech = zech

    def __repr__(self):
        return f"GF({self.p}^{self.n})" if self.n > 1 else f"GF({self.p})"

    def __reduce__(self):
        return make_field, (self.p, self.n)

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    # arithmetic -------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % self.order]
        if z < 0:
            return 0
        return self.exp[(la + z) % self.order]

    def neg(self, a: int) -> int:
        if self.n == 1:
            return -a % self.p
        if a == 0:
            return 0
        return self.exp[(self.log[a] + self.half) % self.order]

    def sub(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a - b) % self.p
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self.exp[(self.log[a] + self.log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.n == 1:
            return pow(a, -1, self.p)
        return self.exp[-self.log[a] % self.order]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[self.log[a] * e % self.order]

    def is_square(self, a: int) -> bool:
        return a == 0 or self.log[a] % 2 == 0

    def chi(self, a: int) -> int:
        """Quadratic character: 0, 1 or -1."""
        if a == 0:
            return 0
        return 1 if self.log[a] % 2 == 0 else -1

    def sqrt(self, a: int) -> int | None:
        """Square root, the smaller of the two by code; None for non-squares."""
        if a == 0:
            return 0
        la = self.log[a]
        if la % 2:
            return None
        y = self.exp[la // 2]
        return min(y, self.neg(y))

    def multiplicative_generator(self) -> int:
        return self.gen

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        from math import gcd
        return self.order // gcd(self.log[a], self.order)

    def nonsquares(self) -> list[int]:
        return [a for a in range(1, self.q) if self.log[a] % 2]

    def least_nonsquare(self) -> int:
        return next(a for a in range(1, self.q) if self.log[a] % 2)

    def from_int(self, c: int) -> int:
        """Image of an integer in the prime subfield."""
        return c % self.p


def make_field(p: int, n: int = 1, max_size: int | None = None) -> Field:
    """Canonical GF(p^n); raises FieldError for p = 2, composite p, n < 1 or oversize."""
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"characteristic {p} is not prime")
    if p == 2:
        raise FieldError("characteristic 2 is not supported")
    if n < 1:
        raise FieldError("extension degree must be at least 1")
    cap = MAX_FIELD_SIZE if max_size is None else max_size
    if p**n > cap:
        raise FieldError(f"field size {p}^{n} exceeds the configured bound {cap}")
    return _field(p, n)


@functools.lru_cache(maxsize=None)
def _field(p: int, n: int) -> Field:
    return Field(p, n, canonical_modulus(p, n))


class Embedding:
    """Ring embedding of ``small`` into ``big`` (same characteristic, degree dividing).

    The image of the small field's generator x is the least root (by code) of
    the small field's modulus inside ``big``.
    """

    def __init__(self, small: Field, big: Field):
        if small.p != big.p or big.n % small.n:
            raise FieldError(f"{small!r} does not embed in {big!r}")
        self.small = small
        self.big = big
        if small.n == 1:
            table = list(range(small.q))
        else:
            step = big.order // small.order
            roots = []
            for j in range(small.order):
                r = big.exp[j * step]
                acc = 0
                for c in reversed(small.modulus):
                    acc = big.add(big.mul(acc, r), c)
                if acc == 0:
                    roots.append(r)
            r = min(roots)
            table = []
            for a in range(small.q):
                acc = 0
                for c in reversed(small.coords(a)):
                    acc = big.add(big.mul(acc, r), c)
                table.append(acc)
        self.table = table
        self.back = {b: a for a, b in enumerate(table)}

    def __call__(self, a: int) -> int:
        return self.table[a]

    def contains(self, b: int) -> bool:
        return b in self.back

    def restrict(self, b: int) -> int:
        try:
            return self.back[b]
        except KeyError:
            raise FieldError(f"{b} is not in the embedded {self.small!r}") from None


@functools.lru_cache(maxsize=None)
def embedding(small: Field, big: Field) -> Embedding:
    return Embedding(small, big)


class QuadraticExtension:
    """F_{q^2} built as GF(p^{2n}) together with the embedding of F_q."""

    def __init__(self, base: Field):
        self.base = base
        self.ext = make_field(base.p, 2 * base.n)
        self.emb = embedding(base, self.ext)

    def embed(self, a: int) -> int:
        return self.emb(a)

    def in_base(self, x: int) -> bool:
        return self.emb.contains(x)

    def restrict(self, x: int) -> int:
        return self.emb.restrict(x)

    def conj(self, x: int) -> int:
        """Frobenius x -> x^q."""
        return self.ext.pow(x, self.base.q)

    def norm_conj(self, x: int) -> tuple[int, int]:
        c = self.conj(x)
        return self.emb.restrict(self.ext.mul(x, c)), c

    def norm(self, x: int) -> int:
        return self.norm_conj(x)[0]

    def trace(self, x: int) -> int:
        return self.emb.restrict(self.ext.add(x, self.conj(x)))


@functools.lru_cache(maxsize=None)
def quadratic_extension(base: Field) -> QuadraticExtension:
    return QuadraticExtension(base)

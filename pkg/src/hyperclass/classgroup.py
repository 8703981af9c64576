"""Ideal class groups of imaginary quadratic orders O = F_q[T][sqrt(D)], D = e*p.

An ideal is stored as a pair (a, b) of coefficient tuples meaning the
A-module a*A + (b + sqrt(D))*A with a monic, a | b^2 - D and deg b < deg a.
Composition is Gauss/Cantor composition; reduction lowers deg a until it is at
most g (odd k) or g + 1 (even k).  For even k a class whose reduced ideals have
degree g + 1 contains exactly q + 1 of them (the "neighbours" below); its
canonical representative is the least one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from .ff import Field, QuadraticExtension, quadratic_extension
from .polyring import (
    Poly, factor, is_irreducible, monic_irreducibles, padd, pdivmod, pgcd,
    pmonic, pmul, pneg, prem, pscale, psub, pxgcd, sqrt_mod, trim,
)


class ClassGroupError(RuntimeError):
    pass


class OrderIdeal(NamedTuple):
    a: tuple[int, ...]
    b: tuple[int, ...]

    def sort_key(self):
        return (len(self.a), self.a, self.b)

    def as_polys(self, F: Field) -> tuple[Poly, Poly]:
        return Poly(F, self.a), Poly(F, self.b)


# A class is identified with its canonical reduced representative.
IdealClass = OrderIdeal


class QuadOrder:
    """The maximal order of K(sqrt(e*p)) for a non-square e and irreducible p.

    ``d_inf`` is the degree of the place at infinity: 1 when k is odd, 2 when k is
    even (then the leading coefficient of D must be a non-square).
    """

    def __init__(self, field: Field, e: int, p_poly: Poly):
        if p_poly.field is not field:
            raise ValueError("p_poly must be over the given field")
        if e == 0 or field.is_square(e):
            raise ValueError(f"e = {e} is a square in {field!r}")
        if p_poly.degree < 1 or not is_irreducible(p_poly):
            raise ValueError(f"{p_poly} is not an irreducible non-constant polynomial")
        self.field = field
        self.e = e
        self.p_poly = p_poly
        self.D = p_poly.scale(e)
        self.k = k = p_poly.degree
        if k % 2:
            self.d_inf = 1
            self.genus = (k - 1) // 2
            self.bound = self.genus
        else:
            if field.is_square(self.D.lead):
                raise ValueError("leading coefficient of D is a square: infinity splits (real case)")
            self.d_inf = 2
            self.genus = (k - 2) // 2
            self.bound = self.genus + 1
        self._D = list(self.D.coeffs)
        self.identity = OrderIdeal((1,), ())

    def __repr__(self):
        return f"QuadOrder({self.field!r}, e={self.e}, p={self.p_poly})"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "e": self.e, "p_poly": str(self.p_poly),
                "k": self.k, "genus": self.genus, "d_inf": self.d_inf}

    # --- ideal arithmetic on raw lists -------------------------------------------

    def ideal(self, a: Poly, b: Poly) -> OrderIdeal:
        """Validated primitive ideal (a, b + sqrt D); a is made monic, b reduced mod a."""
        F = self.field
        am = pmonic(F, a.coeffs)
        if not am:
            raise ValueError("a must be nonzero")
        bm = prem(F, b.coeffs, am)
        if prem(F, psub(F, pmul(F, bm, bm), self._D), am):
            raise ClassGroupError(f"({a}, {b} + sqrt D) is not an ideal: a does not divide b^2 - D")
        return OrderIdeal(tuple(am), tuple(bm))

    def compose(self, I: OrderIdeal, J: OrderIdeal) -> OrderIdeal:
        """Primitive part of the product I*J, not reduced."""
        F, D = self.field, self._D
        a1, b1, a2, b2 = list(I.a), list(I.b), list(J.a), list(J.b)
        d1, e1, e2 = pxgcd(F, a1, a2)
        if d1 == [1]:
            a = pmul(F, a1, a2)
            b = padd(F, pmul(F, pmul(F, e1, a1), b2), pmul(F, pmul(F, e2, a2), b1))
            return OrderIdeal(tuple(a), tuple(prem(F, b, a)))
        d, c1, c2 = pxgcd(F, d1, padd(F, b1, b2))
        s1, s2 = pmul(F, c1, e1), pmul(F, c1, e2)
        dd = pmul(F, d, d)
        a = pdivmod(F, pmul(F, a1, a2), dd)[0]
        num = padd(F, padd(F, pmul(F, pmul(F, s1, a1), b2), pmul(F, pmul(F, s2, a2), b1)),
                   pmul(F, c2, padd(F, pmul(F, b1, b2), D)))
        b, r = pdivmod(F, num, d)
        assert not r
        return OrderIdeal(tuple(a), tuple(prem(F, b, a)))

    def conj(self, I: OrderIdeal) -> OrderIdeal:
        F = self.field
        return OrderIdeal(I.a, tuple(prem(F, pneg(F, list(I.b)), list(I.a))))

    def reduce(self, I: OrderIdeal) -> OrderIdeal:
        """Equivalent ideal with deg a <= bound, via (a, b) -> ((D - b^2)/a, -b)."""
        F, D = self.field, self._D
        a, b = list(I.a), list(I.b)
        while len(a) - 1 > self.bound:
            a = pmonic(F, pdivmod(F, psub(F, D, pmul(F, b, b)), a)[0])
            b = prem(F, pneg(F, b), a)
        return OrderIdeal(tuple(a), tuple(b))

    def neighbours(self, I: OrderIdeal) -> list[OrderIdeal]:
        """The q ideals obtained from I by one reduction step with b replaced by b + t*a."""
        F, D = self.field, self._D
        a, b = list(I.a), list(I.b)
        a0 = pdivmod(F, psub(F, D, pmul(F, b, b)), a)[0]
        out = []
        for t in range(F.q):
            bt = padd(F, b, pscale(F, a, t))
            # (D - bt^2)/a = a0 - 2t*b - t^2*a
            at = psub(F, psub(F, a0, pscale(F, b, F.mul(2 % F.p, t))), pscale(F, a, F.mul(t, t)))
            at = pmonic(F, at)
            out.append(OrderIdeal(tuple(at), tuple(prem(F, pneg(F, bt), at))))
        return out

    def canonical(self, I: OrderIdeal) -> IdealClass:
        """Canonical representative of the class of I."""
        R = self.reduce(I)
        if self.d_inf == 2 and len(R.a) - 1 == self.bound:
            return min([R] + self.neighbours(R), key=OrderIdeal.sort_key)
        return R

    def mul(self, x: IdealClass, y: IdealClass) -> IdealClass:
        return self.canonical(self.compose(x, y))

    def inverse(self, x: IdealClass) -> IdealClass:
        return self.canonical(self.conj(x))

    def pow(self, x: IdealClass, n: int) -> IdealClass:
        if n < 0:
            x, n = self.inverse(x), -n
        result = self.identity
        while n:
            if n & 1:
                result = self.mul(result, x)
            n >>= 1
            if n:
                x = self.mul(x, x)
        return result

    def norm_degree(self, u: Poly, v: Poly) -> int:
        """deg(u^2 - D v^2) computed directly."""
        return (u * u - self.D * v * v).degree

    # --- principality ------------------------------------------------------------

    def is_principal(self, I: OrderIdeal) -> bool:
        """Whether the primitive ideal I has a generator u + v sqrt(D).

        deg N(u + v sqrt D) = max(2 deg u, k + 2 deg v) because e is a non-square,
        so a generator needs k + 2 deg v <= deg a and 2 deg u <= deg a; for each
        monic v in that range the only candidate is u = v*b mod a.
        """
        F, D = self.field, self._D
        a, b = list(I.a), list(I.b)
        da = len(a) - 1
        if da == 0:
            return True
        if da < self.k:
            return False
        import itertools
        for dv in range((da - self.k) // 2 + 1):
            for low in itertools.product(range(F.q), repeat=dv):
                v = list(low) + [1]
                u = prem(F, pmul(F, v, b), a)
                if 2 * (len(u) - 1) > da:
                    continue
                N = psub(F, pmul(F, u, u), pmul(F, D, pmul(F, v, v)))
                if len(N) - 1 == da and pmonic(F, N) == a:
                    return True
        return False

    def same_class(self, I: OrderIdeal, J: OrderIdeal) -> bool:
        """Equivalence certified by a principality search on I * conj(J)."""
        return self.is_principal(self.compose(I, self.conj(J)))

    # --- primes ------------------------------------------------------------------

    def prime_ideals(self, max_degree: int):
        """Yield prime ideals above split or ramified monic irreducibles, by degree."""
        F = self.field
        pm = self.p_poly.monic()
        for d in range(1, max_degree + 1):
            for P in monic_irreducibles(F, d):
                if P == pm:
                    yield OrderIdeal(P.coeffs, ())
                    continue
                r = sqrt_mod(self.D, P)
                if r is not None:
                    yield self.ideal(P, r)


def ideal_mul_reduce(I: OrderIdeal, J: OrderIdeal, order: QuadOrder) -> OrderIdeal:
    return order.canonical(order.compose(I, J))


def is_principal(I: OrderIdeal, order: QuadOrder) -> bool:
    return order.is_principal(I)


@dataclass
class AbelianStructure:
    """Pic(O) as a product of cyclic groups Z/d_1 x ... with d_1 | d_2 | ...

    ``coords`` maps every canonical class to its exponent vector on the
    internal generators; ``basis`` converts those to coordinates on ``generators``.
    """

    divisors: list[int]
    generators: list[IdealClass]
    order: QuadOrder = field(repr=False)
    _table: dict = field(repr=False, default_factory=dict)
    _V: list = field(repr=False, default_factory=list)
    _all_divisors: list = field(repr=False, default_factory=list)

    @property
    def h(self) -> int:
        return math.prod(self.divisors)

    def coordinates(self, x: IdealClass) -> tuple[int, ...]:
        vec = self._table[self.order.canonical(x)]
        r = len(self._V)
        vec = list(vec) + [0] * (r - len(vec))
        coords = []
        for j, dj in enumerate(self._all_divisors):
            c = sum(vec[i] * self._V[i][j] for i in range(r))
            if dj != 1:
                coords.append(c % dj)
        return tuple(coords)

    def element_order(self, x: IdealClass) -> int:
        out = 1
        for c, d in zip(self.coordinates(x), self.divisors):
            out = math.lcm(out, d // math.gcd(c, d))
        return out

    def in_power_subgroup(self, x: IdealClass, m: int) -> bool:
        """Whether x lies in G^m."""
        return all(c % math.gcd(m, d) == 0 for c, d in zip(self.coordinates(x), self.divisors))

    def elements(self):
        return self._table.keys()


def _smith(rels: list[list[int]]):
    S, U, V = smith_normal_decomp(Matrix(rels), domain=ZZ)
    r = len(rels)
    divs = [abs(int(S[i, i])) for i in range(r)]
    Vl = [[int(V[i, j]) for j in range(r)] for i in range(r)]
    Vinv = V.inv()
    Vinvl = [[int(Vinv[i, j]) for j in range(r)] for i in range(r)]
    return divs, Vl, Vinvl


def class_group(order: QuadOrder, target_h: int, degree_cap: int | None = None) -> AbelianStructure:
    """Generate Pic(O) from prime ideals until it has ``target_h`` elements.

    Each new prime class x extends the known subgroup H by the cosets x^i H,
    i < m, where m is least with x^m in H; the exponent vectors give a relation
    lattice whose Smith form is the elementary divisor decomposition.
    """
    O = order
    cap = degree_cap if degree_cap is not None else 2 * O.genus + 2
    table: dict[IdealClass, tuple[int, ...]] = {O.identity: ()}
    gens: list[IdealClass] = []
    rels: list[list[int]] = []
    if target_h < 1:
        raise ValueError("target_h must be positive")
    primes = O.prime_ideals(cap)
    while len(table) < target_h:
        P = next(primes, None)
        if P is None:
            raise ClassGroupError(
                f"prime ideals up to degree {cap} generate only {len(table)} of {target_h} classes")
        x = O.canonical(P)
        if x in table:
            continue
        j = len(gens)
        y, m = x, 1
        while y not in table:
            y = O.mul(y, x)
            m += 1
        rel = [-c for c in table[y]] + [0] * (j - len(table[y]))
        rels.append(rel + [m])
        gens.append(x)
        old = list(table.items())
        xi = x
        for i in range(1, m):
            for cls, vec in old:
                z = O.mul(cls, xi)
                if z in table:
                    raise ClassGroupError("coset collision: canonical forms are not unique")
                table[z] = vec + (0,) * (j - len(vec)) + (i,)
            xi = O.mul(xi, x)
        if len(table) > target_h:
            raise ClassGroupError(f"generated {len(table)} classes, more than the target {target_h}")
    r = len(gens)
    if r == 0:
        return AbelianStructure([], [], O, table, [], [])
    square = [row + [0] * (r - len(row)) for row in rels]
    divs, V, Vinv = _smith(square)
    generators = []
    divisors = []
    for i, d in enumerate(divs):
        if d == 1:
            continue
        g = O.identity
        for jj, c in enumerate(Vinv[i]):
            if c:
                g = O.mul(g, O.pow(gens[jj], c))
        generators.append(g)
        divisors.append(d)
    if math.prod(divisors) != target_h:
        raise ClassGroupError("Smith form disagrees with the enumerated order")
    return AbelianStructure(divisors, generators, O, table, V, divs)


def two_sylow(G: AbelianStructure) -> tuple[int, bool]:
    """(s, cyclic) where the 2-part of G has order 2^s."""
    s = 0
    even = 0
    for d in G.divisors:
        v = (d & -d).bit_length() - 1
        s += v
        even += v > 0
    return s, even <= 1


def least_alpha(F: Field, e: int) -> int:
    """Least alpha with alpha^2 - 4e a non-square, i.e. e X^2 + alpha XY + Y^2 irreducible."""
    four_e = F.mul(F.from_int(4), e)
    for a in range(F.q):
        if not F.is_square(F.sub(F.mul(a, a), four_e)):
            return a
    raise ClassGroupError("no alpha makes the norm form irreducible")  # unreachable for non-square e


def form_root(F: Field, e: int, alpha: int, ext: QuadraticExtension | None = None) -> int:
    """delta in F_{q^2}: the least root of e X^2 + alpha X + 1, so kappa = e(X - delta Y)(X - conj(delta) Y)."""
    ext = ext or quadratic_extension(F)
    E = ext.ext
    ee, aa = ext.embed(e), ext.embed(alpha)
    roots = [x for x in range(E.q) if E.add(E.add(E.mul(ee, E.mul(x, x)), E.mul(aa, x)), 1) == 0]
    if len(roots) != 2 or any(ext.in_base(r) for r in roots):
        raise ClassGroupError("norm form is reducible over F_q")
    return min(roots)


def kappa(order: QuadOrder, alpha: int, C: Poly, B: Poly) -> Poly:
    """e C^2 + alpha B C + B^2."""
    return C * C * order.e + B * C * alpha + B * B


def ambiguous_pair(order: QuadOrder, alpha: int) -> tuple[Poly, Poly]:
    """(B, C) with e*p = e C^2 + alpha B C + B^2, C monic of degree k/2 and deg B < deg C.

    Over F_{q^2}, p = u * pi * conj(pi); writing the least monic factor pi as
    C - delta*B with B, C over F_q gives the representation.
    """
    O, F = order, order.field
    if O.k % 2:
        raise ValueError("ambiguous pair needs even degree")
    if F.is_square(F.sub(F.mul(alpha, alpha), F.mul(F.from_int(4), O.e))):
        raise ClassGroupError(f"alpha = {alpha}: the form e X^2 + alpha XY + Y^2 is reducible")
    ext = quadratic_extension(F)
    E = ext.ext
    delta = form_root(F, O.e, alpha, ext)
    dbar = ext.conj(delta)
    u = O.p_poly.lead
    c = F.sqrt(u)  # non-square D lead forces u square
    pm = O.p_poly.monic()
    _, facs = factor(pm.map_coeffs(E, ext.embed))
    if len(facs) != 2 or any(m != 1 or g.degree != O.k // 2 for g, m in facs):
        raise ClassGroupError("p does not split into two conjugate factors over F_{q^2}")
    pi = facs[0][0]
    inv = E.inv(E.sub(dbar, delta))
    Bc, Cc = [], []
    for x in pi.coeffs:
        bi = E.mul(E.sub(x, ext.conj(x)), inv)
        ci = E.add(x, E.mul(delta, bi))
        Bc.append(ext.restrict(bi))
        Cc.append(ext.restrict(ci))
    B, C = Poly(F, Bc).scale(c), Poly(F, Cc).scale(c)
    if not (B.degree < C.degree == O.k // 2) or kappa(O, alpha, C, B) != O.D:
        raise ClassGroupError("decomposition of the prime factor failed the norm-form identity")
    return B, C


def ambiguous_class_order(order: QuadOrder, B: Poly, C: Poly, G: AbelianStructure) -> tuple[int, int]:
    """(order of the class of (C, B + sqrt D), largest j with that class in G^(2^j)).

    j is capped at the 2-adic valuation of h when the class is trivial.
    """
    O = order
    if O.k % 2:
        raise ValueError("no ambiguous ideal of norm degree k/2 for odd k")
    A = O.canonical(O.ideal(C, B))
    s, _ = two_sylow(G)
    j = 0
    while j < s and G.in_power_subgroup(A, 2 ** (j + 1)):
        j += 1
    return G.element_order(A), j

"""Point counts, L-polynomial and Jacobian data of y^2 = D(T), independent of ideal arithmetic."""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .classgroup import AbelianStructure, QuadOrder, two_sylow
from .ff import embedding, make_field
from .polyring import Poly, pgcd, pderiv

POINT_CAP = int(os.environ.get("HYPERCLASS_POINT_CAP", 2**20))


class CountingError(RuntimeError):
    pass


def curve_genus(D: Poly) -> int:
    k = D.degree
    return (k - 1) // 2 if k % 2 else (k - 2) // 2


def count_points(D: Poly, i: int, cap: int | None = None) -> int:
    """Points over F_{q^i} on the smooth projective model of y^2 = D(T)."""
    F = D.field
    cap = POINT_CAP if cap is None else cap
    if i < 1:
        raise ValueError("extension index must be at least 1")
    if F.q**i > cap:
        raise CountingError(f"q^i = {F.q}^{i} exceeds the enumeration cap {cap}")
    if len(pgcd(F, D.coeffs, pderiv(F, D.coeffs))) != 1:
        raise ValueError("D must be squarefree")
    E = make_field(F.p, F.n * i, max_size=cap)
    emb = embedding(F, E)
    coeffs = [emb(c) for c in reversed(D.coeffs)]
    log = E.log
    total = 0
    if E.n == 1:
        p = E.p
        for t in range(E.q):
            acc = 0
            for c in coeffs:
                acc = (acc * t + c) % p
            total += 1 if acc == 0 else (2 if log[acc] % 2 == 0 else 0)
    else:
        mul, add = E.mul, E.add
        for t in range(E.q):
            acc = 0
            for c in coeffs:
                acc = add(mul(acc, t), c)
            total += 1 if acc == 0 else (2 if log[acc] % 2 == 0 else 0)
    if D.degree % 2:
        total += 1
    elif E.is_square(emb(D.lead)):
        total += 2
    return total


@dataclass(frozen=True)
class LPolynomial:
    """L(u) = sum a_i u^i, the numerator of the zeta function."""

    coeffs: tuple[int, ...]
    q: int
    genus: int
    counts: tuple[int, ...]

    def __call__(self, u: int) -> int:
        return sum(a * u**i for i, a in enumerate(self.coeffs))

    @property
    def jacobian_order(self) -> int:
        return self(1)


def l_polynomial(D: Poly, cap: int | None = None) -> LPolynomial:
    """L-polynomial from N_1..N_g via Newton's identities and the functional equation."""
    q = D.field.q
    g = curve_genus(D)
    counts = []
    for i in range(1, g + 1):
        n = count_points(D, i, cap)
        if abs(n - (q**i + 1)) > 2 * g * q ** (i / 2) + 1e-9:
            raise CountingError(f"N_{i} = {n} violates the Weil bound")
        counts.append(n)
    s = [None] + [q**i + 1 - n for i, n in enumerate(counts, start=1)]
    a = [1]
    for i in range(1, g + 1):
        acc = -sum(s[j] * a[i - j] for j in range(1, i + 1))
        val = Fraction(acc, i)
        if val.denominator != 1:
            raise CountingError(f"non-integral L-coefficient a_{i} = {val}")
        a.append(int(val))
    full = a + [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
    L = LPolynomial(tuple(full), q, g, tuple(counts))
    for i, ai in enumerate(full[:g + 1]):
        if abs(ai) > _binom(2 * g, i) * q ** (i / 2) + 1e-9:
            raise CountingError(f"a_{i} = {ai} violates the Weil bound")
    if L(1) <= 0:
        raise CountingError("L(1) must be positive")
    return L


def _binom(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


def pic_order(order: QuadOrder, L: LPolynomial | None = None) -> int:
    """h = d_inf * L(1)."""
    L = L or l_polynomial(order.D)
    return order.d_inf * L(1)


def two_power_torsion(order: QuadOrder, G: AbelianStructure) -> tuple[int, bool]:
    """(|J[2^inf](F_q)|, whether J has a rational point of exact order 4).

    The 2-part of Pic(O) is cyclic of order 2^s and surjects onto Z/d_inf, so
    J[2^inf](F_q) is cyclic of order 2^s / (2-part of d_inf).
    """
    s, cyclic = two_sylow(G)
    if not cyclic:
        raise CountingError("2-Sylow subgroup is not cyclic")
    t = s - (1 if order.d_inf == 2 else 0)
    if t < 0:
        raise CountingError("even k with odd class number")
    return 2**t, t >= 2


def gekeler_term(q: int, k: int) -> int:
    """2 (q^k - 1)/(q^2 - 1) for even k."""
    if k % 2:
        raise ValueError("k must be even")
    return 2 * (q**k - 1) // (q * q - 1)


def gekeler_genus(order: QuadOrder, h: int) -> int:
    """g(p) with 4 g(p) = 2 (q^k - 1)/(q^2 - 1) + h."""
    total = gekeler_term(order.field.q, order.k) + h
    if total % 4:
        raise CountingError(f"4 does not divide 2(q^k-1)/(q^2-1) + h = {total}")
    return total // 4


def type_number_parity(order: QuadOrder, h: int) -> bool:
    """True when the type number g(p) is even; checks the 8 | h case rule for 4 | k."""
    k = order.k
    if k % 4:
        raise ValueError("type-number parity rule needs 4 | k")
    even = gekeler_genus(order, h) % 2 == 0
    expected = (h % 8 == 0) if k % 8 == 0 else (h % 8 != 0)
    if even != expected:
        raise CountingError(f"type number parity {even} contradicts the case rule (k={k}, h={h})")
    return even

"""Special discriminants e*p(B, C) with C = T^(l-2) Q(T), B = b0 T^(l-2) + b1.

Over F_{q^2} the prime splits as p = (C - delta B)(C - conj(delta) B), and
8 | h(e p) is decided by whether delta * B(lambda) is a square, lambda a root of Q.
"""
from __future__ import annotations

import itertools
from collections.abc import Iterator
from dataclasses import dataclass

from .classgroup import QuadOrder, kappa
from .ff import Field, QuadraticExtension, quadratic_extension
from .polyring import Poly, SearchExhausted, is_irreducible, roots_in_ext


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpecialDiscriminant:
    field: Field
    l: int
    Q: Poly
    lam: int
    B: Poly
    delta: int
    e: int
    alpha: int
    C: Poly
    p_poly: Poly

    @property
    def k(self) -> int:
        return 2 * self.l

    def order(self) -> QuadOrder:
        return QuadOrder(self.field, self.e, self.p_poly)

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(), "l": self.l, "k": self.k,
            "Q": str(self.Q), "lambda": self.lam, "B": str(self.B), "delta": self.delta,
            "e": self.e, "alpha": self.alpha, "C": str(self.C), "p_poly": str(self.p_poly),
        }


def _b_at(ext: QuadraticExtension, B: Poly, x: int) -> int:
    return B.map_coeffs(ext.ext, ext.embed)(x)


def find_special_Q(F: Field) -> tuple[Poly, int]:
    """Least monic irreducible T^2 + aT + b, a != 0, whose roots generate F_{q^2}^*."""
    ext = quadratic_extension(F)
    E = ext.ext
    for b, a in itertools.product(range(F.q), repeat=2):
        if a == 0:
            continue
        Q = Poly(F, (b, a, 1))
        if not is_irreducible(Q):
            continue
        lam = roots_in_ext(Q, ext)[0]
        if E.element_order(lam) == E.order:
            return Q, lam
    raise ConstructionError(f"no quadratic with a primitive root of nonzero trace over {F!r}")


def find_B(F: Field, Q: Poly, lam: int, l: int, want_square: bool) -> Poly:
    """Least B = b0 T^(l-2) + b1 (b0 b1 != 0) irreducible with B(lambda) != 0 of the requested squareness."""
    if l < 4 or l % 2:
        raise ValueError("l must be even and at least 4")
    if F.q + 1 <= l - 2:
        raise SearchExhausted(f"q+1 = {F.q + 1} <= l-2 = {l - 2}")
    ext = quadratic_extension(F)
    E = ext.ext
    for b0 in range(1, F.q):
        for b1 in range(1, F.q):
            B = Poly(F, [b1] + [0] * (l - 3) + [b0])
            v = _b_at(ext, B, lam)
            if v == 0 or E.is_square(v) != want_square:
                continue
            if is_irreducible(B):
                return B
    kind = "square" if want_square else "non-square"
    raise SearchExhausted(f"no irreducible b0*T^{l - 2}+b1 over {F!r} with B(lambda) a {kind}")


def delta_candidates(F: Field, Q: Poly, B: Poly, l: int) -> Iterator[int]:
    """Every delta (canonical order) with delta a non-square outside F_q and C - delta B irreducible over F_{q^2}."""
    ext = quadratic_extension(F)
    E = ext.ext
    C = Poly(F, [0] * (l - 2) + list(Q.coeffs)).map_coeffs(E, ext.embed)
    BE = B.map_coeffs(E, ext.embed)
    for d in range(E.q):
        if E.is_square(d) or ext.in_base(d):
            continue
        if is_irreducible(C - BE.scale(d)):
            yield d


def find_delta(F: Field, Q: Poly, B: Poly, l: int) -> int:
    d = next(delta_candidates(F, Q, B, l), None)
    if d is None:
        raise SearchExhausted(f"no delta for q = {F.q}, l = {l}: q is below the effective threshold")
    return d


def assemble_discriminant(F: Field, Q: Poly, lam: int, B: Poly, delta: int, l: int) -> SpecialDiscriminant:
    """e = 1/N(delta), alpha = -e Tr(delta), C = T^(l-2) Q, p = N(C - delta B); all invariants asserted."""
    ext = quadratic_extension(F)
    E = ext.ext
    nrm, dbar = ext.norm_conj(delta)
    tr = ext.trace(delta)
    e = F.inv(nrm)
    alpha = F.neg(F.mul(e, tr))
    C = Poly(F, [0] * (l - 2) + list(Q.coeffs))
    p_poly = C * C - B * C * tr + B * B * nrm
    sd = SpecialDiscriminant(F, l, Q, lam, B, delta, e, alpha, C, p_poly)
    check_special(sd)
    return sd


def check_special(sd: SpecialDiscriminant) -> None:
    F, l = sd.field, sd.l
    ext = quadratic_extension(F)
    E = ext.ext

    def need(cond, what):
        if not cond:
            raise ConstructionError(f"special discriminant invariant failed: {what}")

    need(sd.Q.degree == 2 and sd.Q.is_monic() and sd.Q.coeffs[1] != 0, "Q monic quadratic with a != 0")
    need(is_irreducible(sd.Q), "Q irreducible")
    need(sd.Q.map_coeffs(E, ext.embed)(sd.lam) == 0, "Q(lambda) = 0")
    need(sd.B.degree == l - 2 and sd.B.coeffs[0] != 0 and all(c == 0 for c in sd.B.coeffs[1:-1]),
         "B = b0 T^(l-2) + b1 with b0 b1 != 0")
    need(is_irreducible(sd.B), "B irreducible")
    need(_b_at(ext, sd.B, sd.lam) != 0, "B(lambda) != 0")
    need(not E.is_square(sd.delta) and not ext.in_base(sd.delta), "delta non-square outside F_q")
    need(not F.is_square(sd.e), "e non-square")
    need(F.mul(sd.e, ext.norm(sd.delta)) == 1, "e * N(delta) = 1")
    pi = sd.C.map_coeffs(E, ext.embed) - sd.B.map_coeffs(E, ext.embed).scale(sd.delta)
    need(is_irreducible(pi), "C - delta B irreducible over F_{q^2}")
    need(sd.p_poly.degree == 2 * l and sd.p_poly.is_monic(), "p monic of degree 2l")
    need(is_irreducible(sd.p_poly), "p irreducible over F_q")
    need(pi * sd.C.map_coeffs(E, ext.embed) - pi * sd.B.map_coeffs(E, ext.embed).scale(ext.conj(sd.delta))
         == sd.p_poly.map_coeffs(E, ext.embed), "p = (C - delta B)(C - conj(delta) B)")
    order = QuadOrder(F, sd.e, sd.p_poly)
    need(kappa(order, sd.alpha, sd.C, sd.B) == order.D, "e p = e C^2 + alpha B C + B^2")


def predict_8_divisibility(sd: SpecialDiscriminant) -> bool:
    """For 4 | l-2: 8 | h iff delta B(lambda) is a square; for 4 | l: iff it is not."""
    ext = quadratic_extension(sd.field)
    sq = ext.ext.is_square(ext.ext.mul(sd.delta, _b_at(ext, sd.B, sd.lam)))
    return sq if (sd.l - 2) % 4 == 0 else not sq


def special_discriminants(F: Field, l: int, want_square: bool, limit: int | None = None) -> Iterator[SpecialDiscriminant]:
    """Special discriminants from the canonical Q and B, one per admissible delta."""
    Q, lam = find_special_Q(F)
    B = find_B(F, Q, lam, l, want_square)
    for i, d in enumerate(delta_candidates(F, Q, B, l)):
        if limit is not None and i >= limit:
            return
        yield assemble_discriminant(F, Q, lam, B, d, l)


def theorem2_pair(F: Field, k: int) -> tuple[SpecialDiscriminant, SpecialDiscriminant]:
    """Two special discriminants of degree k, built from B(lambda) square and non-square.

    Returns (square case, non-square case); certification by class-group
    computation lives in :func:`hyperclass.verify.theorem2_witnesses`.
    """
    if k % 4:
        raise ValueError("k must be divisible by 4")
    l = k // 2
    Q, lam = find_special_Q(F)
    out = []
    for want in (True, False):
        B = find_B(F, Q, lam, l, want)
        out.append(assemble_discriminant(F, Q, lam, B, find_delta(F, Q, B, l), l))
    return out[0], out[1]

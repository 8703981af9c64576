"""Quadratic residue symbols (f/g) in F_Q[T], two independent ways."""
from __future__ import annotations

from .polyring import Poly, is_irreducible, pdivmod, pmonic, ppowmod, prem


def symbol_euler(f: Poly, g: Poly) -> int:
    """Legendre symbol (f/g) for irreducible g, by Euler's criterion in F_Q[T]/g."""
    if g.degree < 1 or not is_irreducible(g):
        raise ValueError("lower argument must be an irreducible non-constant polynomial")
    F = f.field
    m = pmonic(F, g.coeffs)
    r = prem(F, f.coeffs, m)
    if not r:
        return 0
    v = ppowmod(F, r, (F.q ** g.degree - 1) // 2, m)
    if v == [1]:
        return 1
    assert v == [F.neg(1)], v
    return -1


def symbol_reciprocity(f: Poly, g: Poly) -> int:
    """Jacobi symbol (f/g) for non-constant g, by the flip-and-reduce recursion.

    Law used for monic coprime a, b: (a/b)(b/a) = (-1)^((Q-1)/2 * deg a * deg b),
    and a constant u contributes chi(u)^deg b.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("symbol of the zero polynomial")
    if g.degree < 1:
        raise ValueError("lower argument must be non-constant")
    F = f.field
    half = (F.q - 1) // 2
    a = prem(F, f.coeffs, pmonic(F, g.coeffs))
    b = pmonic(F, g.coeffs)
    sign = 1
    while True:
        if not a:
            return 0
        u = a[-1]
        a = pmonic(F, a)
        db = len(b) - 1
        if F.chi(u) == -1 and db % 2:
            sign = -sign
        da = len(a) - 1
        if da == 0:
            return sign
        if half % 2 and da % 2 and db % 2:
            sign = -sign
        a, b = pdivmod(F, b, a)[1], a

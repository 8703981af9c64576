import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperclass.ff import FieldError, make_field, quadratic_extension
from hyperclass.polyring import (
    Poly, SearchExhausted, factor, find_binomial_irreducible, is_irreducible,
    monic_irreducibles, roots_in_ext, sqrt_mod,
)

F3, F5 = make_field(3), make_field(5)
P = Poly.parse


def _random_poly(F, rng, max_deg):
    while True:
        f = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(2, max_deg + 1))])
        if f.degree >= 1:
            return f


def test_arith_examples():
    assert P(F5, "4+0T+1T^2").gcd(P(F5, "4+1T")) == P(F5, "4+1T")
    assert P(F3, "1+0T+1T^2") % P(F3, "1+1T") == Poly.const(F3, 2)
    assert P(F3, "2+1T+0T^2+0T^3+1T^4")(0) == 2


def test_text_round_trip_and_grammar():
    f = P(F5, "2+0T+1T^2")
    assert str(f) == "2+0T+1T^2"
    assert P(F5, "T^2+2") == f
    assert P(F5, "0").is_zero()
    with pytest.raises(ValueError):
        P(F5, "2+xT")
    with pytest.raises(ValueError):
        P(F5, "7T")


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        divmod(P(F3, "1+T"), Poly(F3))


def test_is_irreducible_examples():
    assert is_irreducible(P(F3, "1+0T+1T^2"))
    assert not is_irreducible(P(F5, "1+0T+1T^2"))
    with pytest.raises(ValueError):
        is_irreducible(Poly.const(F3, 2))
    with pytest.raises(FieldError):
        make_field(2)


def test_irreducible_quadratics_by_root_search():
    for F in (F3, F5, make_field(7)):
        for a, b in itertools.product(range(F.q), repeat=2):
            f = Poly(F, (b, a, 1))
            has_root = any(f(t) == 0 for t in range(F.q))
            assert is_irreducible(f) == (not has_root)


def test_irreducible_counts_match_necklace_formula():
    # number of monic irreducibles of degree d over F_q: (1/d) sum_{m|d} mu(m) q^(d/m)
    mu = {1: 1, 2: -1, 3: -1, 4: 0, 5: -1, 6: 1}
    for F, d in [(F3, 4), (F3, 5), (F5, 3), (make_field(3, 2), 3)]:
        expected = sum(mu[m] * F.q ** (d // m) for m in range(1, d + 1) if d % m == 0) // d
        assert sum(1 for _ in monic_irreducibles(F, d)) == expected


def test_factor_examples():
    unit, facs = factor(P(F5, "1+0T+1T^2"))
    assert unit == 1 and facs == [(P(F5, "2+1T"), 1), (P(F5, "3+1T"), 1)]
    f = P(F3, "2+0T+0T^2+1T^3")  # irreducible? T^3 + 2 = (T+2)^3 in char 3
    assert factor(f)[1] == [(P(F3, "2+1T"), 3)]
    g = P(F3, "1+1T") ** 2
    assert factor(g)[1] == [(P(F3, "1+1T"), 2)]
    h = P(F3, "2+1T+0T^2+1T^3")
    if is_irreducible(h):
        assert factor(h)[1] == [(h.monic(), 1)]


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (3, 2)])
def test_factor_round_trip_and_irreducibility_agreement(p, n):
    F = make_field(p, n)
    rng = random.Random(1000 * p + n)
    for _ in range(1000):
        f = _random_poly(F, rng, 8)
        unit, facs = factor(f, seed=rng.randrange(100))
        prod = Poly.const(F, unit)
        for g, m in facs:
            assert g.is_monic() and is_irreducible(g)
            prod = prod * g**m
        assert prod == f
        assert is_irreducible(f) == (len(facs) == 1 and facs[0][1] == 1)
        assert facs == sorted(facs)


def test_factor_is_seed_independent():
    f = P(F5, "1+2T+3T^2+0T^3+1T^4+4T^5+1T^6")
    assert factor(f, seed=1) == factor(f, seed=99)


def test_roots_in_ext():
    for q in (3, 7, 11):
        F = make_field(q)
        assert q % 4 == 3
        g = F.multiplicative_generator()
        rts = roots_in_ext(Poly(F, (F.neg(g), 0, 1)), quadratic_extension(F))
        assert len(rts) == 2
    cubic = next(monic_irreducibles(F3, 3))
    assert roots_in_ext(cubic, quadratic_extension(F3)) == []
    ext = quadratic_extension(F5)
    assert roots_in_ext(P(F5, "3+1T"), ext) == [ext.embed(2)]


def test_irreducible_quadratic_has_two_roots_upstairs():
    ext = quadratic_extension(F5)
    for f in monic_irreducibles(F5, 2):
        assert len(roots_in_ext(f, ext)) == 2


def test_find_binomial_irreducible_examples():
    B = find_binomial_irreducible(F5, 4)
    b1, b0 = B.coeffs[0], B.coeffs[2]
    # least pair with -b1/b0 a non-square
    expected = min((x, y) for x in range(1, 5) for y in range(1, 5)
                   if not F5.is_square(F5.neg(F5.div(y, x))))
    assert (b0, b1) == expected
    B3 = find_binomial_irreducible(F3, 4, lambda b0, b1: b0 == b1)
    assert B3 == P(F3, "1+0T+1T^2")
    with pytest.raises(SearchExhausted):
        find_binomial_irreducible(F3, 10)


def test_sqrt_mod_against_residue_enumeration():
    m = P(F3, "1+2T+0T^2+1T^3")
    assert is_irreducible(m)
    squares = set()
    for c in itertools.product(range(3), repeat=3):
        r = Poly(F3, c)
        squares.add((r * r % m).coeffs)
    for c in itertools.product(range(3), repeat=3):
        a = Poly(F3, c)
        s = sqrt_mod(a, m)
        if a.coeffs in squares:
            assert s is not None and s * s % m == a
        else:
            assert s is None


coeff_lists = st.lists(st.integers(0, 8), min_size=0, max_size=8)


@settings(max_examples=200, deadline=None)
@given(coeff_lists, coeff_lists)
def test_divmod_identity(fa, ga):
    F = make_field(3, 2)
    f, g = Poly(F, fa), Poly(F, ga)
    if g.is_zero():
        return
    qt, r = divmod(f, g)
    assert qt * g + r == f
    assert r.degree < g.degree


@settings(max_examples=100, deadline=None)
@given(coeff_lists, coeff_lists)
def test_xgcd_bezout(fa, ga):
    F = make_field(3, 2)
    f, g = Poly(F, fa), Poly(F, ga)
    d, s, t = f.xgcd(g)
    assert s * f + t * g == d
    if not d.is_zero():
        assert d.is_monic() and (f % d).is_zero() and (g % d).is_zero()

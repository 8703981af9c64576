"""Acceptance criteria; each test prints one PASS/FAIL line in the terminal summary."""
import json
import random

import pytest

from hyperclass.classgroup import QuadOrder
from hyperclass.cli import main
from hyperclass.ff import make_field
from hyperclass.polyring import Poly, factor
from hyperclass.symbols import symbol_euler, symbol_reciprocity
from hyperclass.verify import analyze, gekeler_congruence, primes_up_to, reverify_certificate, verify_8crit

SWEEP_FIELDS = (3, 5)
SWEEP_DEGREE = 5
GRID = [(5, 1, 4), (7, 1, 4), (3, 2, 4), (11, 1, 4), (13, 1, 4), (5, 1, 6)]
PER_CASE = 3


@pytest.fixture(scope="module")
def sweep():
    rows = []
    for q in SWEEP_FIELDS:
        F = make_field(q)
        for e in F.nonsquares():
            for P in primes_up_to(F, SWEEP_DEGREE):
                rows.append(analyze(QuadOrder(F, e, P)))
    return rows


@pytest.fixture(scope="module")
def crit_sweep():
    return verify_8crit(GRID, PER_CASE)


@pytest.fixture(scope="module")
def witness(tmp_path_factory):
    path = tmp_path_factory.mktemp("witness") / "cert.json"
    for q in (3, 5, 7, 9, 11, 13):
        p = next(x for x in (3, 5, 7, 11, 13) if q % x == 0)
        n = 2 if q == 9 else 1
        code = main(["witness", "--p", str(p), "--n", str(n), "--k", "8", "--out", str(path)])
        if code == 0:
            return q, json.loads(path.read_text())
    return None, None


@pytest.mark.acceptance(1, "2 | h iff 2 | k and 4 | h iff 4 | k")
def test_parity_of_class_number_sweep(sweep, acceptance_detail):
    bad = [r for r in sweep
           if (r.h % 2 == 0) != (r.k % 2 == 0) or (r.h % 4 == 0) != (r.k % 4 == 0)]
    acceptance_detail.update(instances=len(sweep), failures=len(bad))
    assert len(sweep) > 800 and not bad


@pytest.mark.acceptance(2, "class group order equals d*L(1)")
def test_oracle_equivalence(sweep, acceptance_detail):
    bad = [r for r in sweep if not r.oracle_ok or r.problems]
    acceptance_detail.update(instances=len(sweep), failures=len(bad))
    assert not bad


@pytest.mark.acceptance(3, "cyclic 2-Sylow, ambiguous class of order 2")
def test_cyclicity_and_ambiguous_class(sweep, acceptance_detail):
    noncyclic = [r for r in sweep if not r.cyclic]
    amb = [r for r in sweep if r.h % 2 == 0 and r.ambiguous_order != 2]
    acceptance_detail.update(noncyclic=len(noncyclic), ambiguous_bad=len(amb))
    assert not noncyclic and not amb


@pytest.mark.acceptance(4, "8 | h predicted by delta*B(lambda)")
def test_eight_criterion(crit_sweep, acceptance_detail):
    inst = [r for r in crit_sweep.rows if "prediction" in r]
    cells = {(r["field"]["p"] ** r["field"]["n"], r["l"]) for r in inst}
    acceptance_detail.update(instances=len(inst), failures=crit_sweep.failures,
                             cells=len(cells), l6=sum(r["l"] == 6 for r in inst))
    assert crit_sweep.ok and len(inst) >= 20
    assert {(5, 4), (7, 4), (9, 4), (13, 4), (5, 6)} <= cells


@pytest.mark.acceptance(5, "k = 8 witness pair differing mod 8, re-verified")
def test_witness_pair_mod8(witness, acceptance_detail):
    q, cert = witness
    acceptance_detail.update(q=q)
    assert cert is not None and cert["certified"]
    hs = sorted(m["h"] % 8 for m in cert["members"])
    acceptance_detail.update(h=[m["h"] for m in cert["members"]])
    assert hs == [0, 4]
    assert reverify_certificate(json.loads(json.dumps(cert))) == []


@pytest.mark.acceptance(6, "Gekeler integrality and congruence")
def test_gekeler(sweep, crit_sweep, acceptance_detail):
    even = [r for r in sweep if r.k % 2 == 0]
    bad = [r for r in even if r.gekeler_genus is None or r.problems]
    special = [r for r in crit_sweep.rows if "prediction" in r]
    bad += [r for r in special if r["gekeler_genus"] is None]
    congr = [(q, k) for q in (3, 5, 7, 9, 13, 25) for k in range(2, 17, 2) if not gekeler_congruence(q, k)]
    acceptance_detail.update(instances=len(even) + len(special), failures=len(bad), congruence_failures=len(congr))
    assert not bad and not congr


@pytest.mark.acceptance(7, "rational 2-torsion iff 4 | k; witness order-4 and type parity differ")
def test_torsion_and_type_parity(sweep, witness, acceptance_detail):
    bad = [r for r in sweep if (r.torsion_order >= 2) != (r.k % 4 == 0)]
    v2 = [r for r in sweep if ((r.L1 & -r.L1).bit_length() - 1) != r.s - (r.k % 2 == 0)]
    _, cert = witness
    acceptance_detail.update(torsion_failures=len(bad), valuation_failures=len(v2))
    assert not bad and not v2
    assert cert is not None
    assert cert["checks"]["order4_differs"] and cert["checks"]["type_parity_differs"]


def _rand(F, rng, min_deg):
    while True:
        f = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(1, 9))])
        if not f.is_zero() and f.degree >= min_deg:
            return f


@pytest.mark.acceptance(8, "reciprocity symbol equals Euler symbol; no-sign flip over F_{q^2}")
def test_symbol_law(acceptance_detail):
    mismatches = flips = 0
    for p, n in [(3, 1), (5, 1), (3, 2), (5, 2)]:
        F = make_field(p, n)
        rng = random.Random(8000 + F.q)
        for _ in range(1000):
            f, g = _rand(F, rng, 0), _rand(F, rng, 1)
            want = 1
            for h, m in factor(g)[1]:
                want *= symbol_euler(f, h) ** m
            mismatches += symbol_reciprocity(f, g) != want
    for p in (3, 5):
        F = make_field(p, 2)
        rng = random.Random(p)
        for _ in range(300):
            f, g = _rand(F, rng, 1).monic(), _rand(F, rng, 1).monic()
            if f.gcd(g).degree == 0:
                flips += symbol_reciprocity(f, g) != symbol_reciprocity(g, f)
    acceptance_detail.update(mismatches=mismatches, flip_failures=flips)
    assert mismatches == 0 and flips == 0


@pytest.mark.acceptance(9, "deg(u^2 - D v^2) = max(2 deg u, k + 2 deg v)")
def test_degree_identity(acceptance_detail):
    rng = random.Random(9)
    bad = 0
    for _ in range(500):
        q = rng.choice([3, 5, 7, 9, 11, 13])
        p, n = (3, 2) if q == 9 else (q, 1)
        F = make_field(p, n)
        e = rng.choice(F.nonsquares())
        k = rng.randint(1, 8)
        D = Poly(F, [rng.randrange(F.q) for _ in range(k)] + [e])
        u = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 8))])
        v = Poly(F, [rng.randrange(F.q) for _ in range(rng.randint(0, 6))] + [rng.randrange(1, F.q)])
        expect = max(2 * u.degree if not u.is_zero() else -1, k + 2 * v.degree)
        bad += (u * u - D * v * v).degree != expect
    acceptance_detail.update(triples=500, failures=bad)
    assert bad == 0

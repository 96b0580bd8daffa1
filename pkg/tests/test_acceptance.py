"""End-to-end acceptance suite.

Each test below checks one headline guarantee of the package at its stated
tolerance and prints a single summary line (visible under ``pytest -s``).
Run ``pytest -v tests/test_acceptance.py`` to get one pass/fail line per
criterion.
"""

import itertools
import random
import time
from fractions import Fraction

import oracles
from turanlab.hypercore import (
    EdgeTypeSet,
    Hypergraph,
    SimplexPoint,
    Pattern,
    blow_up,
    chain_graph,
    complete,
    is_isomorphic,
    lubell,
    marked_clique,
)
from turanlab.jumpcert import build_certificate, classify12
from turanlab.lagrangian import (
    OptimizerConfig,
    certify_at,
    gradient,
    maximize,
    polynomial_form,
)
from turanlab.seqdensity import SequenceGenerator, sigma_t
from turanlab.turansearch import ForbiddenFamily, disjoint_type_union, pi_n

F = Fraction


def _ok(cid: str, detail: str) -> None:
    print(f"ACCEPT {cid} PASS: {detail}")


def test_c01_pair_clique_lagrangians():
    # lambda of the complete pair graph on t vertices is (t-1)/t
    worst = 0.0
    slowest = 0.0
    for t in range(2, 9):
        start = time.perf_counter()
        res = maximize(complete(t, (2,)))
        elapsed = time.perf_counter() - start
        err = abs(res.value - (t - 1) / t)
        worst = max(worst, err)
        slowest = max(slowest, elapsed)
        assert err <= 1e-8, f"t={t}: value {res.value} off by {err}"
        assert elapsed < 1.0, f"t={t} took {elapsed:.2f}s"
    _ok("c01", f"t=2..8 max err {worst:.2e}, slowest {slowest:.3f}s")


def test_c02_chain_certificate():
    start = time.perf_counter()
    res = maximize(chain_graph())
    elapsed = time.perf_counter() - start
    assert abs(res.value - 1.125) <= 1e-8
    assert res.certified_lower_bound == F(9, 8)
    assert res.certificate_point.weights == (F(3, 4), F(1, 4))
    assert elapsed < 1.0
    _ok("c02", f"certified 9/8 at (3/4, 1/4) in {elapsed:.3f}s")


def test_c03_mixed_pair_certificate():
    res = maximize(complete(2, (1, 2)))
    assert abs(res.value - 1.5) <= 1e-8
    assert res.certified_lower_bound == F(3, 2)
    assert res.certificate_point.weights == (F(1, 2), F(1, 2))
    _ok("c03", "certified 3/2 at (1/2, 1/2)")


def test_c04_mixed_clique_lagrangians():
    # lambda of the complete {1,2}-graph on t vertices is 2 - 1/t
    worst = 0.0
    for t in range(2, 7):
        res = maximize(complete(t, (1, 2)))
        err = abs(res.value - (2 - 1 / t))
        worst = max(worst, err)
        assert err <= 1e-8, f"t={t}: off by {err}"
    _ok("c04", f"t=2..6 max err {worst:.2e}")


def test_c05_marked_clique_values():
    # exact rational evaluation at the known optimum of the marked clique
    for t in range(3, 9):
        point = SimplexPoint((F(t + 1, 2 * t),) + (F(1, 2 * t),) * (t - 1))
        assert certify_at(marked_clique(t), point) == F(5, 4) - F(1, 4 * t)
    res = maximize(marked_clique(3))
    assert abs(res.value - 7 / 6) <= 1e-8
    grid = oracles.grid_lagrangian(marked_clique(3), steps=40, zooms=5)
    assert abs(grid - 7 / 6) <= 1e-6
    _ok("c05", "certify_at = 5/4 - 1/(4t) for t=3..8; optimizer and grid agree at 7/6")


def test_c06_classification_grid():
    start = time.perf_counter()
    for alpha in sorted(oracles.weak_jump_values(100)):
        assert classify12(alpha).verdict == "weak_jump", f"{alpha} not weak"
    weak = oracles.weak_jump_values(5000)
    strong = 0
    for i in range(10001):
        alpha = F(i, 5000)
        verdict = classify12(alpha).verdict
        expected = "weak_jump" if alpha in weak else "strong_jump"
        assert verdict == expected, f"{alpha}: {verdict} != {expected}"
        strong += verdict == "strong_jump"
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"grid took {elapsed:.2f}s"
    _ok("c06", f"10001-point grid ({strong} strong) + weak list k<=100 in {elapsed:.3f}s")


def test_c07_small_n_densities():
    triangle = ForbiddenFamily(EdgeTypeSet((2,)), (complete(3, (2,)),))
    rec = pi_n(triangle, 4)
    assert rec.pi_n == F(2, 3)
    balanced = blow_up(complete(2, (2,)), (2, 2))
    assert any(is_isomorphic(g, balanced) for g in rec.extremal)

    start = time.perf_counter()
    fam = ForbiddenFamily(EdgeTypeSet((1, 2)), (complete(2, (1, 2)),))
    values = [pi_n(fam, n).pi_n for n in range(2, 6)]
    elapsed = time.perf_counter() - start
    assert all(a >= b for a, b in zip(values, values[1:])), values
    assert all(v >= F(5, 4) for v in values), values
    assert elapsed < 300.0
    _ok("c07", f"triangle pi_4 = 2/3 with balanced extremal graph; "
               f"mixed-pair pi_2..pi_5 = {[str(v) for v in values]} in {elapsed:.1f}s")


def test_c08_blow_up_invariance():
    rng = random.Random(8)
    cfg = OptimizerConfig(restarts=12, seed=3)
    worst = 0.0
    checked = 0
    while checked < 25:
        n = rng.randint(1, 4)
        pool = [(v,) for v in range(n)] + list(itertools.combinations(range(n), 2))
        edges = tuple(e for e in pool if rng.random() < 0.4)
        if not edges:
            continue
        g = Hypergraph(n, edges)
        base = maximize(g, cfg).value
        doubled = maximize(blow_up(g, (2,) * n), cfg).value
        worst = max(worst, abs(base - doubled))
        assert abs(base - doubled) <= 1e-7, f"{g}: {base} vs {doubled}"
        checked += 1
    _ok("c08", f"25 random graphs, max |lambda(G) - lambda(G(2))| = {worst:.2e}")


def test_c09_gradient_consistency():
    rng = random.Random(9)
    worst = 0.0
    checked = 0
    while checked < 50:
        n = rng.randint(1, 5)
        rows = set()
        for _ in range(rng.randint(1, 4)):
            row = [0] * n
            for _ in range(rng.randint(1, 3)):
                row[rng.randrange(n)] += 1
            rows.add(tuple(row))
        try:
            p = Pattern(n, tuple(sorted(rows)))
        except Exception:
            continue
        weights = [rng.uniform(0.1, 1.0) for _ in range(n)]
        total = sum(weights)
        x = [w / total for w in weights]
        analytic = gradient(p, SimplexPoint(tuple(x)))
        form = polynomial_form(p)

        def raw(xs):
            value = 0.0
            for coeff, expo in form.terms:
                term = float(coeff)
                for v, k in enumerate(expo):
                    term *= xs[v] ** k
                value += term
            return value

        numeric = oracles.central_diff_gradient(raw, x, h=1e-6)
        err = max(abs(float(a) - b) for a, b in zip(analytic, numeric))
        worst = max(worst, err)
        assert err < 1e-6
        checked += 1
    _ok("c09", f"50 random forms, max gradient error {worst:.2e}")


def test_c10_strong_certificate():
    fam = ForbiddenFamily(EdgeTypeSet((1, 2)), (chain_graph(),))
    cert = build_certificate(F(11, 10), fam, strict=True)
    assert cert.kind == "strong_jump"
    assert cert.gap == F(1, 40)
    _ok("c10", "strict certificate at 11/10 with gap exactly 1/40")


def test_c11_upper_density_monotone():
    gen = SequenceGenerator.turan_generator(2, n_start=4, n_step=2)
    values = []
    for t in range(2, 7):
        report = sigma_t(gen, t, i_range=(0, 13))
        assert report.exhaustive
        # subset averaging forces sigma_t >= h for every member that is
        # actually large enough to contain a t-subset
        for i, h in enumerate(report.h_values):
            if gen.size(i) >= t:
                assert report.value >= h, (t, i, h)
        values.append(report.value)
    assert all(a >= b for a, b in zip(values, values[1:])), values
    assert values[2] == F(2, 3)  # t = 4
    _ok("c11", f"sigma_2..6 = {[str(v) for v in values]}, members up to n=30")


def test_c12_union_additivity():
    rng = random.Random(12)
    for _ in range(100):
        n = rng.randint(2, 5)
        singles = tuple((v,) for v in range(n) if rng.random() < 0.5)
        pairs = tuple(
            e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5
        )
        a = Hypergraph(n, singles)
        b = Hypergraph(n, pairs)
        u = disjoint_type_union(a, b)
        assert lubell(u) == lubell(a) + lubell(b)

    marks = SequenceGenerator.blow_up_generator(
        Hypergraph(1, ((0,),)), (1,), n_start=4, n_step=2
    )
    pairs_gen = SequenceGenerator.turan_generator(2, n_start=4, n_step=2)
    union = SequenceGenerator.union_generator(marks, pairs_gen)
    for t in range(2, 6):
        for i in range(6):  # member by member, exact
            if union.size(i) < t:
                continue
            su = sigma_t(union, t, i_range=(i, i)).value
            sa = sigma_t(marks, t, i_range=(i, i)).value
            sb = sigma_t(pairs_gen, t, i_range=(i, i)).value
            assert su <= sa + sb, f"t={t} member {i}: {su} > {sa} + {sb}"
    _ok("c12", "Lubell additivity on 100 unions; per-member sigma subadditivity t=2..5")

"""End-to-end acceptance checks, one test per criterion, each under its time bound.

conftest.py prints a PASS/FAIL line per criterion at the end of the run.
"""

import random
import time
from fractions import Fraction

import numpy as np
import pytest

import moonshine.exact_arith
import moonshine.fusion.affine
import moonshine.fusion.lr
import moonshine.lattice_theta
import moonshine.modular_forms
from moonshine.fusion import FusionRing, affine_fusion, aw_crosscheck, validate_fusion_ring
from moonshine.fusion.affine import fusion_monotonicity_check, integrable_weights, sl_tensor_product
from moonshine.fusion.partitions import from_dynkin
from moonshine.knots import count_colourings, count_homs, load_group, load_knot
from moonshine.lattice_theta import Lattice, s_transform_residual, theta_series
from moonshine.modular_data import (
    cyclic_data,
    s3_data,
    sl2z_relations_check,
    t_order,
    validate_axioms,
    verlinde,
)
from moonshine.modular_forms import eta, j_cuberoot, jay
from moonshine.moonshine_checks import load_dims, mckay_report, verify_decomposition

from oracles import sl2_quotient_fusion


def clear_caches():
    for mod in (moonshine.exact_arith, moonshine.fusion.affine, moonshine.fusion.lr,
                moonshine.lattice_theta, moonshine.modular_forms):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        clear_caches()
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.2f}s, bound {self.limit}s"


@pytest.mark.criterion(1)
def test_criterion_1_j_coefficients():
    with Timer(1.0):
        j = jay(64)
        got = [j.coefficient(e) for e in (-1, 0, 1, 2, 3)]
    assert got == [1, 744, 196884, 21493760, 864299970]


@pytest.mark.criterion(2)
def test_criterion_2_eta_two_ways():
    with Timer(1.0):
        a = eta(50, "theta_sum")
        b = eta(50, "discriminant")
    assert a.prec >= 50 and a == b
    assert a.valuation == Fraction(1, 24)


@pytest.mark.criterion(3)
def test_criterion_3_j_cuberoot():
    with Timer(1.0):
        got = j_cuberoot(64).relative_coefficients(4)
    assert got == [1, 248, 4124, 34752]


@pytest.mark.criterion(4)
def test_criterion_4_numeric_modularity():
    with Timer(5.0):
        j = jay(64)
        tau = complex(0.1, 1.2)
        j_gap = abs(j.eval(tau) - j.eval(-1 / tau))
        residuals = {
            (n, t): s_transform_residual(n, t, 64) for n in (2, 4, 6) for t in (1j, complex(0.2, 1.1))
        }
    assert j_gap < 1e-6
    assert max(residuals.values()) < 1e-8, residuals


@pytest.mark.criterion(5)
def test_criterion_5_theta_series():
    with Timer(2.0):
        tz = theta_series(Lattice.identity(1), 30)
        tz2 = theta_series(Lattice.identity(2), 30)
    in_x = tz.rescale(2).truncate(17).terms()
    assert in_x == {0: 1, 1: 2, 4: 2, 9: 2, 16: 2}
    assert tz2.agrees_with(tz * tz, 30)


@pytest.mark.criterion(6)
def test_criterion_6_modular_data():
    with Timer(10.0):
        reports = [validate_axioms(cyclic_data(n), tol=1e-6) for n in (2, 4, 6, 8)]
        s3 = s3_data()
        reports.append(validate_axioms(s3, tol=1e-6))
        order = t_order(s3)
        relations = [sl2z_relations_check(d) for d in (cyclic_data(2), cyclic_data(4), cyclic_data(6),
                                                       cyclic_data(8), s3)]
    assert all(r.M1 and r.M2 and r.M3 and r.M4 for r in reports)
    assert order == 6
    assert all(relations)


@pytest.mark.criterion(7)
def test_criterion_7_verlinde_cyclic():
    with Timer(5.0):
        results = []
        for n in (2, 4, 6, 8):
            N = verlinde(cyclic_data(n))
            idx = np.arange(n)
            expected = (idx[:, None, None] + idx[None, :, None]) % n == idx[None, None, :]
            rep = validate_fusion_ring(FusionRing.from_tensor(N, 0))
            results.append((np.array_equal(N, expected.astype(N.dtype)), rep))
    for same, rep in results:
        assert same
        assert rep.F1 and rep.F2 and rep.F3 and rep.associative


@pytest.mark.criterion(8)
def test_criterion_8_affine_fusion():
    rng = random.Random(2024)
    with Timer(60.0):
        mismatches = []
        for k in range(1, 5):
            for a in range(k + 1):
                for b in range(k + 1):
                    oracle = sl2_quotient_fusion(k, a, b)
                    for c in range(k + 1):
                        if affine_fusion(2, k, (a,), (b,), (c,)) != oracle[c]:
                            mismatches.append((k, a, b, c))
        failures = []
        for _ in range(200):
            k = rng.randint(1, 8)
            weights = integrable_weights(3, k)
            lam, mu = (from_dynkin(rng.choice(weights)) for _ in range(2))
            # draw nu from the tensor product so most triples are nontrivial
            support = [w for w in sl_tensor_product(3, lam, mu) if sum(w) <= 8]
            nu = from_dynkin(rng.choice(support or weights))
            if not fusion_monotonicity_check(3, 8, lam, mu, nu):
                failures.append((lam, mu, nu))
    assert not mismatches
    assert not failures


@pytest.mark.criterion(9)
def test_criterion_9_eigenphase_crosscheck():
    cases = [
        ("1/4,-1/4", "1/4,-1/4", "1/4,-1/4"),
        ("0,0", "0,0", "1/2,-1/2"),
        ("0,0", "0,0", "0,0"),
    ]
    with Timer(30.0):
        reports = [aw_crosscheck(*c, k_max=8, seed=0) for c in cases]
    assert all(r.verdict == "CONSISTENT" for r in reports)
    assert reports[0].least_nonzero_k == 4


@pytest.mark.criterion(10)
def test_criterion_10_knot_counts():
    pairs = [("unknot", "unknot_kink"), ("unknot", "unknot_twisted"), ("trefoil", "trefoil_kink")]
    with Timer(1.0):
        unknots = [count_colourings(load_knot(n)) for n in ("unknot_kink", "unknot_twisted")]
        trefoil = count_colourings(load_knot("trefoil"))
        groups = [load_group(g) for g in ("s3", "z3", "q8")]
        pair_counts = [
            (count_colourings(load_knot(a)), count_colourings(load_knot(b)))
            + tuple((count_homs(load_knot(a), g), count_homs(load_knot(b), g)) for g in groups)
            for a, b in pairs
        ]
    assert unknots == [3, 3]
    assert trefoil == 9
    for counts in pair_counts:
        assert counts[0] == counts[1]
        assert all(x == y for x, y in counts[2:])


@pytest.mark.criterion(11)
def test_criterion_11_moonshine_sums():
    with Timer(1.0):
        report = mckay_report()
        e8 = load_dims("e8")
    assert report.ok
    assert [c.value for c in report.monster] == [196884, 21493760, 864299970]
    assert verify_decomposition(4124, e8.prefix(3), [1, 1, 1])
    assert verify_decomposition(34752, e8, [1, 2, 1, 1])

import math

import pytest

from casimir_trace import verify
from casimir_trace.errors import DomainError
from casimir_trace.series import QSeries, as_frac
from casimir_trace.verify import (
    CHECKS,
    ZetaCheckParams,
    check_multiplicities,
    check_partial_thetas,
    check_table1,
    check_table2,
    check_theorem1,
    conjecture_pair,
    run_checks,
    zeta_mellin_check,
)


def test_theorem1_passes():
    r = check_theorem1(k_max=30)
    assert r.status == "pass"
    assert r.witness is None


def test_theorem1_perturbation_is_caught():
    # flip one matrix entry; the harness must localize the failure
    def perturb(k, entries):
        if k == 17:
            entries = [list(row) for row in entries]
            entries[0][1] += 1
            return entries
        return entries

    r = check_theorem1(k_max=30, _perturb=perturb)
    assert r.status == "fail"
    assert "k=17" in r.witness


def test_table1_small_orders():
    for l in (1, 2):
        r = check_table1(l, order=as_frac(16))
        assert r.status == "pass", r.witness


def test_table2_named_rows_only():
    r = check_table2(order=as_frac(12), samples=0)
    assert r.status == "pass", r.witness


def test_partial_thetas():
    r = check_partial_thetas(1, order=as_frac(16))
    assert r.status == "pass", r.witness


def test_multiplicities_check():
    r = check_multiplicities(samples=3, k_max=6)
    assert r.status == "pass", r.witness


def test_conjecture_pair_shapes():
    f, fp = conjecture_pair((0,), (0,), (1,))
    # F = P, F' = M0 + M-2
    import casimir_trace.rep as rep

    assert f == rep.BigP()
    assert fp == rep.DirectSum((rep.Verma(0), rep.Verma(-2)))


def test_conjecture_single_config():
    r = verify.test_conjecture1((0,), (0,), (1,), 1, as_frac(16))
    assert r.status == "pass", r.witness


def test_conjecture_gamma_zero_is_trivial():
    r = verify.test_conjecture1((1, 1), (1, 0), (0, 0), 1, as_frac(10))
    assert r.status == "pass"


def test_conjecture_rejects_empty_slot():
    with pytest.raises(DomainError):
        verify.test_conjecture1((0,), (0,), (0,), 1, as_frac(10))


def test_zeta_params_validation():
    with pytest.raises(DomainError):
        ZetaCheckParams(s=1.0)
    with pytest.raises(DomainError):
        ZetaCheckParams(t_min=0.0)
    with pytest.raises(DomainError):
        ZetaCheckParams(loops=0)
    with pytest.raises(DomainError):
        ZetaCheckParams(nodes=1)


def test_zeta_check_passes_at_defaults():
    r = zeta_mellin_check(s=2.0, loops=1)
    assert r.status == "pass"
    assert math.isclose(r.extras["reference"], math.pi / 24, rel_tol=1e-12)


def test_zeta_check_reports_inconclusive_when_budget_blows():
    # huge cut at the bottom of the window makes the bound exceed any
    # reasonable tolerance; the check must refuse to claim failure
    r = zeta_mellin_check(s=2.0, loops=1, t_min=1e-2, tol=1e-6)
    assert r.status == "inconclusive"
    assert "budget" in (r.witness or "")


def test_zeta_tail_formula():
    # sum_{n>N} n^-2 for N=50 against zeta(2) minus the head
    tail, rem = verify._euler_maclaurin_tail(2.0, 50)
    direct = math.pi ** 2 / 6 - sum(1.0 / (n * n) for n in range(1, 51))
    assert abs(tail - direct) < 1e-12
    assert rem < 1e-9


def test_run_checks_unknown_name():
    with pytest.raises(DomainError):
        run_checks(["theorems"], seed=1)


def test_run_checks_subset():
    reports = run_checks(["theorem1", "partial-thetas"], seed=1)
    names = {r.name for r in reports}
    assert "theorem1" in names
    assert any(n.startswith("partial-thetas") for n in names)
    assert all(r.status == "pass" for r in reports)


def test_checks_registry_complete():
    assert set(CHECKS) == {
        "theorem1",
        "table1",
        "table2",
        "partial-thetas",
        "multiplicities",
        "conjecture1",
        "zeta",
    }


def test_witness_series_localizes():
    a = QSeries({as_frac(0): as_frac(1)}, as_frac(5))
    b = QSeries({as_frac(0): as_frac(1), as_frac(3): as_frac(2)}, as_frac(5))
    w = verify._witness_series("here", a, b, as_frac(5))
    assert "q^3" in w and "here" in w

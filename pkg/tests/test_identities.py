import json

import pytest

from degstirling.identities import (
    CONSUMERS,
    FAULT_TABLES,
    Fault,
    Status,
    SuiteConfig,
    Tables,
    check_corollary3,
    check_inverse_pair,
    check_prop8_eq34,
    check_theorem1,
    check_theorem2,
    check_theorem4,
    check_theorems5_6,
    check_theorem7,
    parse_fault,
    run_all,
)


def all_pass(results):
    return results and all(r.status is Status.PASS for r in results)


def test_orthogonality_and_inverse_small():
    assert all_pass(check_theorem1(8, 2))
    assert all_pass(check_theorem2(8, 2, trials=10))
    assert all_pass(check_theorem1(0, 3))


def test_orthogonality_fault():
    tables = Tables(6, [Fault("brace", 3, 1)])
    failed = [r for r in check_theorem1(6, 0, tables) if r.status is Status.FAIL]
    assert failed and all(r.residual for r in failed)
    assert any(r.params == {"r": 0, "n": 3, "j": 1} for r in failed)


def test_bernoulli_closed_form_small_cases():
    results = {(r.identity_id, r.params["n"]): r for r in check_corollary3(3, 0)}
    assert results["cor3", 0].status is Status.PASS
    assert results["cor3", 1].status is Status.PASS


@pytest.mark.parametrize("check", [check_corollary3, check_theorem4, check_theorems5_6, check_theorem7])
def test_family_checks_pass(check):
    assert all_pass(check(6, 2))


def test_hyperharmonic_checks():
    assert all_pass(check_prop8_eq34(8, 3))
    with pytest.raises(ValueError):
        check_prop8_eq34(4, 0)


def test_inverse_pair():
    assert all_pass(check_inverse_pair(10))


def test_run_all_trivial():
    report = run_all(SuiteConfig(n_max=0, r_max=0, trials=2, series_order=2))
    assert report.ok
    assert {r.identity_id for r in report.results} >= {"thm1-first", "thm2-forward", "cor3", "thm7", "eq34"}


@pytest.mark.parametrize("table", FAULT_TABLES)
def test_fault_breaks_only_consumers(table):
    config = SuiteConfig(n_max=4, r_max=2, trials=3, series_order=4, faults=(Fault(table, 2, 1),))
    report = run_all(config)
    failing = {r.identity_id for r in report.failures}
    assert failing
    assert failing <= CONSUMERS[table]


def test_fault_parsing():
    assert parse_fault("thm1", 10) == Fault("brace", 2, 1)
    assert parse_fault("brack:4:0", 10) == Fault("brack", 4, 0)
    assert parse_fault("eq34", 0) == Fault("bernoulli2", 0, 0)
    with pytest.raises(ValueError):
        parse_fault("nope", 3)
    with pytest.raises(ValueError):
        parse_fault("brace:5:1", 3)


def test_report_determinism():
    config = SuiteConfig(n_max=3, r_max=1, trials=4, series_order=5)
    a, b = run_all(config), run_all(config)
    assert a.to_json(stable=True) == b.to_json(stable=True)
    assert a.to_text(stable=True) == b.to_text(stable=True)
    doc = json.loads(a.to_json())
    assert set(doc[0]) == {"identity_id", "params", "status", "residual", "elapsed_ms"}
    assert "elapsed_ms" not in json.loads(a.to_json(stable=True))[0]


def test_report_order():
    report = run_all(SuiteConfig(n_max=2, r_max=1, trials=2, series_order=3))
    keys = [r.sort_key() for r in report.results]
    assert keys == sorted(keys)


def test_parallel_matches_serial():
    config = SuiteConfig(n_max=3, r_max=2, trials=3, series_order=4)
    parallel = SuiteConfig(n_max=3, r_max=2, trials=3, series_order=4, jobs=2)
    assert run_all(config).to_json(stable=True) == run_all(parallel).to_json(stable=True)

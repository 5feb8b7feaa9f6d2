import pytest

from ideal_graphs import sweep
from ideal_graphs.models import IdealGraphError, OracleBudget, Signature
from ideal_graphs.sweep import (
    FAILED,
    SKIPPED,
    Check,
    Instance,
    check_signature,
    instances_for_signatures,
    instances_up_to,
    parse_signature_bounds,
    run_sweep,
)

def test_parse_signature_bounds():
    assert parse_signature_bounds("m<=4,exp<=3") == (4, 3)
    assert parse_signature_bounds(" m <= 5 , exp <= 4 ") == (5, 4)
    for bad in ("m<4,exp<=3", "exp<=3,m<=4", "m<=0,exp<=2", ""):
        with pytest.raises(IdealGraphError):
            parse_signature_bounds(bad)

def test_instances_up_to_groups_by_signature():
    instances = instances_up_to(12)
    assert [i.signature.exponents for i in instances] == [(1,), (2,), (1, 1), (3,), (1, 2)]
    assert instances[0].ns == (2, 3, 5, 7, 11)
    assert instances[4].ns == (12,)
    assert sum(i.weight for i in instances) == 11

def test_instances_for_signatures():
    instances = instances_for_signatures(2, 2)
    assert [i.signature.exponents for i in instances] == [(1,), (2,), (1, 1), (1, 2), (2, 2)]
    assert all(i.weight == 1 for i in instances)

def test_weakly_perfect_sweep():
    summary = run_sweep(instances_up_to(100), Check.WEAKLY_PERFECT, OracleBudget())
    assert summary.failed == 0
    assert summary.verified == 99

def test_formulas_sweep():
    summary = run_sweep(instances_for_signatures(3, 3), Check.FORMULAS, OracleBudget())
    assert summary.failed == 0
    assert summary.verified == len(instances_for_signatures(3, 3))

def test_edge_class_sweep():
    summary = run_sweep(instances_up_to(60), Check.EDGE_CLASS, OracleBudget())
    assert summary.failed == 0
    assert summary.verified + summary.undecided + summary.skipped == 59

def test_over_budget_instances_are_skipped():
    outcome = check_signature(Instance(Signature((2, 2, 2))), Check.WEAKLY_PERFECT, OracleBudget(max_vertices=10))
    assert outcome.status == SKIPPED
    edge = check_signature(Instance(Signature((2, 2, 2))), Check.EDGE_CLASS, OracleBudget())
    assert edge.status == SKIPPED

def test_failure_embeds_replayable_report(monkeypatch):
    monkeypatch.setitem(sweep.CHECKS, Check.FORMULAS, lambda s, budget: (FAILED, "forced"))
    summary = run_sweep(instances_up_to(12), Check.FORMULAS, OracleBudget())
    assert summary.failed == 11
    failure = summary.failures[-1]
    assert failure.detail == "forced"
    assert failure.report["n"] == 12
    assert failure.report["signature"] == [1, 2]

def test_callback_sees_every_outcome_in_order():
    seen = []
    instances = instances_for_signatures(2, 3)
    run_sweep(instances, Check.FORMULAS, OracleBudget(), on_result=lambda o: seen.append(o.instance))
    assert seen == instances

def test_parallel_sweep_keeps_instance_order():
    instances = instances_up_to(40)
    serial = run_sweep(instances, Check.WEAKLY_PERFECT, OracleBudget(), jobs=1)
    parallel = run_sweep(instances, Check.WEAKLY_PERFECT, OracleBudget(), jobs=2)
    assert [(o.instance, o.status, o.detail) for o in parallel.outcomes] == [
        (o.instance, o.status, o.detail) for o in serial.outcomes
    ]

@pytest.mark.slow
def test_weakly_perfect_acceptance_sweep():
    summary = run_sweep(instances_up_to(100_000), Check.WEAKLY_PERFECT, OracleBudget(max_vertices=40))
    assert summary.failed == 0
    assert summary.undecided == 0
    assert summary.verified > 0

@pytest.mark.slow
def test_formula_acceptance_sweep():
    summary = run_sweep(instances_for_signatures(5, 4), Check.FORMULAS, OracleBudget())
    assert summary.failed == 0
    assert summary.verified > 0

@pytest.mark.slow
def test_edge_class_acceptance_sweep():
    summary = run_sweep(instances_up_to(2000), Check.EDGE_CLASS, OracleBudget())
    assert summary.failed == 0
    assert summary.verified > 0
    assert summary.verified + summary.undecided + summary.skipped == 1999

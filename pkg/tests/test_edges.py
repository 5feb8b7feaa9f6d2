import pytest

from ideal_graphs.edges import (
    case1_precondition_check,
    case2_edge_deficit,
    case3_universal_check,
    classify,
    edge_certificate,
)
from ideal_graphs.lattice import build_graph
from ideal_graphs.models import CaseTag, EdgeClass, OracleBudget, Signature
from ideal_graphs.oracles import validate_edge_coloring

@pytest.mark.parametrize("exps,classification,reason,chromatic_index", [
    ((1,), EdgeClass.TRIVIAL, CaseTag.EMPTY_GRAPH, 0),
    ((2,), EdgeClass.TRIVIAL, CaseTag.EMPTY_GRAPH, 0),
    ((3,), EdgeClass.CLASS1, CaseTag.PRIME_POWER_ODD, 1),
    ((4,), EdgeClass.CLASS2, CaseTag.PRIME_POWER_EVEN, 3),
    ((5,), EdgeClass.CLASS1, CaseTag.PRIME_POWER_ODD, 3),
    ((6,), EdgeClass.CLASS2, CaseTag.PRIME_POWER_EVEN, 5),
    ((1, 1), EdgeClass.TRIVIAL, CaseTag.TWO_PRIMES_NULL, 0),
    ((1, 1, 1), EdgeClass.CLASS1, CaseTag.SQUAREFREE_CASE1, 4),
    ((2, 2), EdgeClass.CLASS1, CaseTag.ALL_EVEN_EXPONENTS_CASE2, 6),
    ((1, 2), EdgeClass.CLASS1, CaseTag.MIXED_CASE3, 3),
])
def test_classify(exps, classification, reason, chromatic_index):
    report = classify(Signature(exps))
    assert report.classification is classification
    assert report.reason is reason
    assert report.chromatic_index == chromatic_index

def test_trivial_cases_carry_notes():
    assert "null graph" in classify(Signature((1, 1))).notes[0]
    assert classify(Signature((2,))).notes
    assert not classify(Signature((1, 2))).notes

def test_case1_audit_on_three_primes():
    audit = case1_precondition_check(Signature((1, 1, 1)))
    assert audit.applicable
    assert audit.max_degree == 4
    assert audit.max_degree_vertices == 3
    assert audit.holds

def test_case1_audit_not_applicable():
    assert not case1_precondition_check(Signature((1, 2))).applicable
    assert not case1_precondition_check(Signature((1, 1))).applicable

def test_case2_edge_deficit():
    deficit = case2_edge_deficit(Signature((2, 2)))
    assert deficit.applicable
    assert deficit.vertex_count == 7
    assert deficit.s_bound == 3
    assert deficit.complete_size == 21
    assert deficit.edge_count == 17
    assert deficit.missing_edges == 4
    assert deficit.holds

def test_case2_edge_deficit_larger():
    for exps in [(2, 4), (2, 2, 2), (4, 4)]:
        assert case2_edge_deficit(Signature(exps)).holds, exps
    assert not case2_edge_deficit(Signature((2,))).applicable
    assert not case2_edge_deficit(Signature((1, 2))).applicable

def test_case3_universal_vertex():
    for exps in [(1, 2), (1, 1, 2), (1, 2, 2), (1, 3), (2, 3, 5)]:
        audit = case3_universal_check(Signature(exps))
        assert audit.applicable
        assert audit.holds, exps
    assert case3_universal_check(Signature((1, 1, 1))).holds is None
    assert case3_universal_check(Signature((2, 2))).holds is None

def test_edge_certificate_exact():
    s = Signature((1, 1, 1))
    g = build_graph(s)
    coloring, method = edge_certificate(g, classify(s))
    assert method == "exact:search"
    assert validate_edge_coloring(g, coloring)
    assert len(set(coloring.values())) == 4

def test_edge_certificate_falls_back_to_misra_gries():
    s = Signature((2, 2, 2))
    g = build_graph(s)
    coloring, method = edge_certificate(g, classify(s), OracleBudget(edge_max_vertices=10))
    assert method == "misra-gries"
    assert validate_edge_coloring(g, coloring)
    assert len(set(coloring.values())) <= g.max_degree() + 1

def test_edge_certificate_trivial():
    s = Signature((1, 1))
    coloring, method = edge_certificate(build_graph(s), classify(s))
    assert coloring == {}
    assert method == "empty"

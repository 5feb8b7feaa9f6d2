"""
Edge-chromatic class of G(Z_n) and audits of the degree arithmetic the
classification rests on.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .lattice import DEFAULT_MAX_VERTICES, Graph, build_graph, edge_count, max_degree, vertex_count
from .models import CaseTag, EdgeClass, EdgeClassReport, OracleBudget, Signature
from .oracles import EdgeColoring, edge_class_exact, greedy_edge_coloring

logger = logging.getLogger(__name__)

NOTE_NULL_GRAPH = (
    "convention: the two-vertex null graph of Z_pq is edgeless, so chi' = 0 = Delta "
    "is reported as trivial; listing n = pq as an exception would give Delta + 1"
)
NOTE_SINGLE_VERTEX = (
    "convention: Z_p^2 has a single vertex and no edges, so chi' = 0 = Delta "
    "is reported as trivial; the even prime-power rule would give Delta + 1"
)
NOTE_NO_VERTICES = "Z_p has no proper nontrivial ideals; the graph is empty"


def classify(s: Signature) -> EdgeClassReport:
    """chi'(G(Z_n)) = Delta except for complete graphs of odd order >= 3."""
    delta = max_degree(s)
    if s.m == 1:
        n1 = s[0]
        if n1 == 1:
            return EdgeClassReport(delta, EdgeClass.TRIVIAL, CaseTag.EMPTY_GRAPH, (NOTE_NO_VERTICES,))
        if n1 == 2:
            return EdgeClassReport(delta, EdgeClass.TRIVIAL, CaseTag.EMPTY_GRAPH, (NOTE_SINGLE_VERTEX,))
        if n1 % 2 == 0:
            # K_{n1-1} with n1 - 1 odd
            return EdgeClassReport(delta, EdgeClass.CLASS2, CaseTag.PRIME_POWER_EVEN)
        return EdgeClassReport(delta, EdgeClass.CLASS1, CaseTag.PRIME_POWER_ODD)

    if s.exponents == (1, 1):
        return EdgeClassReport(delta, EdgeClass.TRIVIAL, CaseTag.TWO_PRIMES_NULL, (NOTE_NULL_GRAPH,))
    if all(e == 1 for e in s):
        return EdgeClassReport(delta, EdgeClass.CLASS1, CaseTag.SQUAREFREE_CASE1)
    if all(e % 2 == 0 for e in s):
        return EdgeClassReport(delta, EdgeClass.CLASS1, CaseTag.ALL_EVEN_EXPONENTS_CASE2)
    return EdgeClassReport(delta, EdgeClass.CLASS1, CaseTag.MIXED_CASE3)


@dataclass(frozen=True)
class DegreeAudit:
    """
    For each vertex u of maximum degree, look for a neighbour v with
    Delta - d(v) + 2 above the number of maximum-degree vertices.
    """
    applicable: bool
    holds: Optional[bool] = None
    max_degree: int = 0
    max_degree_vertices: int = 0
    vertices_with_witness: int = 0


def _graph_for(s: Signature, graph: Optional[Graph]) -> Graph:
    return graph if graph is not None else build_graph(s)


def case1_precondition_check(s: Signature, graph: Optional[Graph] = None) -> DegreeAudit:
    if s.m < 3 or any(e != 1 for e in s):
        return DegreeAudit(applicable=False)
    g = _graph_for(s, graph)
    degrees = g.degrees()
    delta = int(degrees.max())
    top = [int(v) for v in np.flatnonzero(degrees == delta)]

    covered = sum(
        1 for u in top
        if any(delta - degrees[v] + 2 > len(top) for v in g.neighbors(u))
    )
    audit = DegreeAudit(True, covered == len(top), delta, len(top), covered)
    logger.debug(f"Case 1 audit for [{s}]: {audit}")
    return audit


@dataclass(frozen=True)
class EdgeDeficit:
    """An odd-order graph of order 2s+1 with Delta = 2s is class 1 once it misses more than s edges."""
    applicable: bool
    vertex_count: int = 0
    s_bound: int = 0
    complete_size: int = 0
    edge_count: int = 0
    missing_edges: int = 0
    holds: Optional[bool] = None


def case2_edge_deficit(s: Signature, graph: Optional[Graph] = None) -> EdgeDeficit:
    if s.m < 2 or any(e % 2 for e in s):
        return EdgeDeficit(applicable=False)
    order = vertex_count(s)
    half = (order - 1) // 2
    complete = 2 * half * half + half
    if graph is not None:
        edges = graph.edge_count
    elif order <= DEFAULT_MAX_VERTICES:
        edges = build_graph(s).edge_count
    else:
        edges = edge_count(s)
    missing = complete - edges
    return EdgeDeficit(True, order, half, complete, edges, missing, missing > half)


@dataclass(frozen=True)
class UniversalVertexAudit:
    """Even order plus a vertex adjacent to all others gives class 1."""
    applicable: bool
    even_order: Optional[bool] = None
    has_universal_vertex: Optional[bool] = None

    @property
    def holds(self) -> Optional[bool]:
        if not self.applicable:
            return None
        return bool(self.even_order and self.has_universal_vertex)


def case3_universal_check(s: Signature) -> UniversalVertexAudit:
    if s.m < 2 or all(e % 2 == 0 for e in s) or all(e == 1 for e in s):
        return UniversalVertexAudit(applicable=False)
    order = vertex_count(s)
    return UniversalVertexAudit(True, order % 2 == 0, max_degree(s) == order - 1)


def edge_certificate(
    g: Graph, report: EdgeClassReport, budget: Optional[OracleBudget] = None
) -> Tuple[EdgeColoring, str]:
    """
    An explicit edge coloring for the graph: the exact optimum when the
    oracle budget allows, else the Misra-Gries coloring (at most Delta + 1).
    """
    if report.classification is EdgeClass.TRIVIAL or g.edge_count == 0:
        return {}, "empty"
    result = edge_class_exact(g, budget)
    if result.decided:
        if result.edge_class is not report.classification:
            logger.error(f"Edge oracle says {result.edge_class.value}, classification says {report.classification.value}")
        return result.coloring, f"exact:{result.method}"
    return greedy_edge_coloring(g), "misra-gries"

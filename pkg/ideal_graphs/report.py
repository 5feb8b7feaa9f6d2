import json
import logging
from dataclasses import asdict
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from . import __version__
from .edges import case1_precondition_check, case2_edge_deficit, case3_universal_check, classify
from .factor import factorize, signature_of
from .families import build_clique_set, build_coloring, omega, validate
from .formulas import evaluate_all
from .lattice import (
    DEFAULT_MAX_VERTICES,
    Graph,
    build_graph,
    edge_count,
    is_complete_signature,
    is_connected_signature,
    max_degree,
    vertex_count,
)
from .models import (
    AnalysisReport,
    CertificateError,
    CliqueSet,
    ColoringCertificate,
    DomainError,
    EdgeClass,
    EdgeClassReport,
    IdealGraphError,
    OracleBudget,
    Signature,
)
from .oracles import EdgeClassResult, EdgeColoring, chromatic_exact, edge_class_exact, max_clique_exact

logger = logging.getLogger(__name__)

CERTIFICATE_KIND = "coloring-certificate"
GRAPH_KIND = "adjacency-list"


def resolve(n: Optional[int], signature: Optional[Signature]):
    """Turn CLI-style inputs into (n, factorization, signature)."""
    if n is None and signature is None:
        raise DomainError("give n or a signature")
    if n is None:
        return None, None, signature
    factorization = factorize(n)
    derived = signature_of(factorization)
    if signature is not None and signature != derived:
        raise DomainError(f"n={n} has signature [{derived}], not [{signature}]")
    return n, factorization, derived


def edge_classes_agree(report: EdgeClassReport, result: EdgeClassResult) -> bool:
    """An oracle's class 1 with chi' = 0 is the same verdict as 'trivial'."""
    if report.classification is EdgeClass.TRIVIAL:
        return result.edge_class is EdgeClass.CLASS1 and result.chromatic_index == 0
    return result.edge_class is report.classification


def _run_oracles(
    graph: Graph, cert: ColoringCertificate, edge: EdgeClassReport, budget: OracleBudget
) -> Tuple[Dict[str, Any], bool]:
    clique = max_clique_exact(graph, budget)
    lower = clique.value if clique.decided else len(cert.clique)
    chrom = chromatic_exact(graph, min(lower, cert.chi), cert.chi, budget, witness=cert.colors)
    edge_result = edge_class_exact(graph, budget)

    agrees = True
    if clique.decided and clique.value != cert.omega:
        agrees = False
    if chrom.decided and chrom.value != cert.chi:
        agrees = False
    if edge_result.decided and not edge_classes_agree(edge, edge_result):
        agrees = False

    section = {
        "budget": asdict(budget),
        "omega": {"status": clique.status.value, "value": clique.value},
        "chi": {
            "status": chrom.status.value,
            "value": chrom.value,
            "transcript": [[step.colors, step.colorable] for step in chrom.transcript],
        },
        "edge_class": {
            "status": edge_result.status.value,
            "value": edge_result.edge_class.value if edge_result.edge_class else None,
            "chromatic_index": edge_result.chromatic_index,
            "method": edge_result.method or None,
        },
        "agrees": agrees,
    }
    if not agrees:
        logger.error(f"Oracle disagreement for signature [{graph.signature}]: {section}")
    return section, agrees


def analyze(
    n: Optional[int] = None,
    signature: Optional[Signature] = None,
    oracle: bool = False,
    budget: Optional[OracleBudget] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> AnalysisReport:
    n, factorization, s = resolve(n, signature)
    budget = budget or OracleBudget()
    count = vertex_count(s)
    logger.info(f"Analyzing signature [{s}] (n={n}), {count} vertices")

    graph = build_graph(s, factorization) if count <= max_vertices else None
    cs = build_clique_set(s)
    om = omega(s)
    cert = build_coloring(s) if graph is not None else None
    edge = classify(s)
    formulas = evaluate_all(s)

    report = AnalysisReport(
        signature=s,
        vertex_count=count,
        edge_count=edge_count(s),
        max_degree=max_degree(s),
        omega=om,
        chi=cert.chi if cert else om,
        formulas=formulas,
        edge_class=edge,
        n=n,
        complete=is_complete_signature(s),
        connected=is_connected_signature(s),
        clique_set=cs,
        notes=list(edge.notes),
    )

    if cert and (cert.omega != om or cert.chi != om):
        report.failed = True
        report.notes.append(f"construction mismatch: omega={om}, clique={cert.omega}, colors={cert.chi}")
    for formula in formulas:
        if formula.applicable and formula.value != om:
            report.failed = True
            report.notes.append(f"{formula.name} gives {formula.value}, construction gives {om}")

    deficit = case2_edge_deficit(s, graph)
    universal = case3_universal_check(s)
    if deficit.applicable:
        report.diagnostics["case2_edge_deficit"] = asdict(deficit)
    if universal.applicable:
        report.diagnostics["case3_universal_vertex"] = {**asdict(universal), "holds": universal.holds}

    if graph is None:
        report.notes.append(f"graph not materialized: {count} vertices exceed the cap of {max_vertices}")
        if oracle:
            report.notes.append("oracle skipped: graph not materialized")
        return report

    audit = case1_precondition_check(s, graph)
    if audit.applicable:
        report.diagnostics["case1_precondition"] = asdict(audit)

    report.adjacency_sha256 = graph.adjacency_digest()
    if graph.is_complete() != report.complete or graph.is_connected() != report.connected:
        report.failed = True
        report.notes.append("structural predicates disagree with the built graph")
    if graph.edge_count != report.edge_count:
        report.failed = True
        report.notes.append(f"closed-form edge count {report.edge_count} != counted {graph.edge_count}")
    if not validate(cert, graph):
        report.failed = True
        report.notes.append("coloring certificate does not validate")

    report.witness = {
        "labels": list(graph.labels),
        "clique": [graph.label(v) for v in cert.clique],
        "coloring": {graph.label(v): c for v, c in enumerate(cert.colors)},
    }

    if oracle:
        report.oracle, agrees = _run_oracles(graph, cert, edge, budget)
        if not agrees:
            report.failed = True
    return report


def _support_indices(mask: int, m: int) -> List[int]:
    return [i + 1 for i in range(m) if mask >> i & 1]


def _clique_set_dict(cs: CliqueSet) -> Dict[str, Any]:
    return {
        "chosen": sorted(_support_indices(mask, cs.m) for mask in cs.chosen),
        "tie_pairs": [
            [_support_indices(winner, cs.m), _support_indices(loser, cs.m)] for winner, loser in cs.tie_pairs
        ],
    }


def report_to_dict(report: AnalysisReport) -> Dict[str, Any]:
    """Fixed key order; see report.md for the schema."""
    edge = report.edge_class
    return {
        "version": __version__,
        "n": report.n,
        "signature": list(report.signature.exponents),
        "status": "FAILED" if report.failed else "ok",
        "graph": {
            "vertex_count": report.vertex_count,
            "edge_count": report.edge_count,
            "max_degree": report.max_degree,
            "complete": report.complete,
            "connected": report.connected,
            "adjacency_sha256": report.adjacency_sha256,
        },
        "omega": report.omega,
        "chi": report.chi,
        "weakly_perfect": report.weakly_perfect,
        "clique_set": _clique_set_dict(report.clique_set) if report.clique_set else None,
        "formulas": [
            {"name": f.name, "applicable": f.applicable, "value": f.value, "detail": dict(f.detail)}
            for f in report.formulas
        ],
        "edge_class": {
            "delta": edge.delta,
            "classification": edge.classification.value,
            "reason": edge.reason.value,
            "chromatic_index": edge.chromatic_index,
        },
        "diagnostics": report.diagnostics,
        "oracle": report.oracle,
        "notes": list(report.notes),
        "witness": report.witness,
    }


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f'graph "{name}" {{']
    for v in range(g.order):
        lines.append(f'  {v} [label="{g.label(v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _source_fields(g: Graph) -> Dict[str, Any]:
    return {
        "n": g.factorization.value if g.factorization else None,
        "signature": list(g.signature.exponents) if g.signature else None,
    }


def graph_to_json(g: Graph) -> Dict[str, Any]:
    return {
        "version": __version__,
        "kind": GRAPH_KIND,
        **_source_fields(g),
        "vertex_count": g.order,
        "edge_count": g.edge_count,
        "vertices": [
            {
                "id": v,
                "label": g.label(v),
                "exponents": list(g.vertices[v].exponents) if g.vertices else None,
            }
            for v in range(g.order)
        ],
        "adjacency": [g.neighbors(v) for v in range(g.order)],
    }


def certificate_document(
    g: Graph,
    cert: ColoringCertificate,
    edge_coloring: Optional[EdgeColoring] = None,
    edge_method: Optional[str] = None,
) -> Dict[str, Any]:
    document = {
        "version": __version__,
        "kind": CERTIFICATE_KIND,
        **_source_fields(g),
        "labels": list(g.labels),
        "omega": cert.omega,
        "chi": cert.chi,
        "clique": [g.label(v) for v in cert.clique],
        "colors": {g.label(v): c for v, c in enumerate(cert.colors)},
        "edge_coloring": None,
    }
    if edge_coloring is not None:
        document["edge_coloring"] = {
            "method": edge_method,
            "colors_used": len(set(edge_coloring.values())),
            "edges": [[g.label(u), g.label(v), c] for (u, v), c in sorted(edge_coloring.items())],
        }
    return document


def load_certificate(path: Path) -> Tuple[Graph, ColoringCertificate, Optional[EdgeColoring]]:
    """Rebuild the graph a certificate was written for and map its labels back to vertex ids."""
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise CertificateError(f"cannot read certificate {path}: {e}") from e
    if document.get("kind") != CERTIFICATE_KIND:
        raise CertificateError(f"{path} is not a coloring certificate")

    try:
        n = document["n"]
        s = Signature.of(document["signature"])
        _, factorization, _ = resolve(n, s)
        graph = build_graph(s, factorization)
        if list(graph.labels) != document["labels"]:
            raise CertificateError(f"{path}: vertex labels do not match the graph of [{s}]")
        index = {label: v for v, label in enumerate(graph.labels)}
        cert = ColoringCertificate(
            omega=document["omega"],
            chi=document["chi"],
            clique=tuple(index[label] for label in document["clique"]),
            colors=tuple(document["colors"][label] for label in graph.labels),
        )
        edge_coloring = None
        if document.get("edge_coloring"):
            edge_coloring = {}
            for a, b, c in document["edge_coloring"]["edges"]:
                u, v = sorted((index[a], index[b]))
                edge_coloring[(u, v)] = c
    except CertificateError:
        raise
    except (KeyError, TypeError, ValueError, IdealGraphError) as e:
        raise CertificateError(f"{path}: malformed certificate ({e})") from e
    return graph, cert, edge_coloring

import itertools
import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from .edges import classify
from .factor import factorize, signature_of
from .families import build_coloring, omega, validate
from .formulas import evaluate_all
from .lattice import build_graph, edge_count, vertex_count
from .models import IdealGraphError, OracleBudget, Signature
from .oracles import chromatic_exact, edge_class_exact, max_clique_exact, validate_edge_coloring
from .report import analyze, edge_classes_agree, report_to_dict

logger = logging.getLogger(__name__)

VERIFIED = "verified"
UNDECIDED = "undecided"
FAILED = "FAILED"
SKIPPED = "skipped"


class Check(str, Enum):
    WEAKLY_PERFECT = "weakly-perfect"
    FORMULAS = "formulas"
    EDGE_CLASS = "edge-class"


@dataclass(frozen=True)
class Instance:
    """One signature, together with every swept n that has it."""
    signature: Signature
    ns: Tuple[int, ...] = ()

    @property
    def weight(self) -> int:
        return max(1, len(self.ns))

    @property
    def label(self) -> str:
        if self.ns:
            return f"n={self.ns[0]}" + (f" (+{len(self.ns) - 1} more)" if len(self.ns) > 1 else "")
        return f"[{self.signature}]"


@dataclass
class InstanceOutcome:
    instance: Instance
    status: str
    detail: str = ""
    report: Optional[dict] = None


@dataclass
class SweepSummary:
    check: Check
    outcomes: List[InstanceOutcome] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(o.instance.weight for o in self.outcomes if o.status == status)

    @property
    def verified(self) -> int:
        return self.count(VERIFIED)

    @property
    def undecided(self) -> int:
        return self.count(UNDECIDED)

    @property
    def failed(self) -> int:
        return self.count(FAILED)

    @property
    def skipped(self) -> int:
        return self.count(SKIPPED)

    @property
    def failures(self) -> List[InstanceOutcome]:
        return [o for o in self.outcomes if o.status == FAILED]


def parse_signature_bounds(text: str) -> Tuple[int, int]:
    """Parse "m<=4,exp<=3" into (4, 3)."""
    match = re.fullmatch(r"\s*m\s*<=\s*(\d+)\s*,\s*exp\s*<=\s*(\d+)\s*", text)
    if not match:
        raise IdealGraphError(f"expected bounds like 'm<=4,exp<=3', got {text!r}")
    max_m, max_exp = int(match.group(1)), int(match.group(2))
    if max_m < 1 or max_exp < 1:
        raise IdealGraphError(f"bounds must be positive: {text!r}")
    return max_m, max_exp


def instances_up_to(max_n: int) -> List[Instance]:
    """Every 2 <= n <= max_n, grouped by signature in order of first appearance."""
    grouped: Dict[Signature, List[int]] = {}
    for n in range(2, max_n + 1):
        grouped.setdefault(signature_of(factorize(n)), []).append(n)
    logger.info(f"{max_n - 1} values of n share {len(grouped)} signatures")
    return [Instance(s, tuple(ns)) for s, ns in grouped.items()]


def instances_for_signatures(max_m: int, max_exp: int) -> List[Instance]:
    return [
        Instance(Signature(combo))
        for m in range(1, max_m + 1)
        for combo in itertools.combinations_with_replacement(range(1, max_exp + 1), m)
    ]


def _within_budget(s: Signature, check: Check, budget: OracleBudget) -> bool:
    if check is Check.EDGE_CLASS:
        return vertex_count(s) <= budget.edge_max_vertices and edge_count(s) <= budget.edge_max_edges
    return vertex_count(s) <= budget.max_vertices


def _weakly_perfect(s: Signature, budget: OracleBudget) -> Tuple[str, str]:
    graph = build_graph(s)
    cert = build_coloring(s)
    if not validate(cert, graph):
        return FAILED, "constructed clique or coloring does not validate"
    clique = max_clique_exact(graph, budget)
    if not clique.decided:
        return UNDECIDED, f"clique oracle: {clique.reason}"
    if clique.value > cert.chi:
        return FAILED, f"oracle clique {clique.value} exceeds constructed coloring {cert.chi}"
    chrom = chromatic_exact(graph, clique.value, budget=budget)
    if not chrom.decided:
        return UNDECIDED, f"coloring oracle: {chrom.reason}"
    if not (cert.omega == cert.chi == clique.value == chrom.value):
        return FAILED, f"constructed {cert.omega}/{cert.chi}, oracle omega={clique.value} chi={chrom.value}"
    return VERIFIED, f"omega = chi = {cert.chi}"


def _formulas(s: Signature, budget: OracleBudget) -> Tuple[str, str]:
    om = omega(s)
    wrong = [f"{f.name}={f.value}" for f in evaluate_all(s) if f.applicable and f.value != om]
    if wrong:
        return FAILED, f"construction omega={om}, formulas {', '.join(wrong)}"
    clique = max_clique_exact(build_graph(s), budget)
    if not clique.decided:
        return UNDECIDED, f"clique oracle: {clique.reason}"
    if clique.value != om:
        return FAILED, f"construction omega={om}, oracle omega={clique.value}"
    return VERIFIED, f"omega = {om}"


def _edge_class(s: Signature, budget: OracleBudget) -> Tuple[str, str]:
    report = classify(s)
    graph = build_graph(s)
    result = edge_class_exact(graph, budget)
    if not result.decided:
        return UNDECIDED, f"edge oracle: {result.reason}"
    if not validate_edge_coloring(graph, result.coloring):
        return FAILED, "oracle edge coloring is not proper"
    if not edge_classes_agree(report, result):
        return FAILED, f"classified {report.classification.value}, oracle {result.edge_class.value}"
    return VERIFIED, f"{report.classification.value} ({report.reason.value})"


CHECKS: Dict[Check, Callable[[Signature, OracleBudget], Tuple[str, str]]] = {
    Check.WEAKLY_PERFECT: _weakly_perfect,
    Check.FORMULAS: _formulas,
    Check.EDGE_CLASS: _edge_class,
}


def check_signature(instance: Instance, check: Check, budget: OracleBudget) -> InstanceOutcome:
    s = instance.signature
    if not _within_budget(s, check, budget):
        return InstanceOutcome(instance, SKIPPED, "over budget")
    try:
        status, detail = CHECKS[check](s, budget)
    except IdealGraphError as e:
        status, detail = FAILED, f"error: {e}"

    outcome = InstanceOutcome(instance, status, detail)
    if status == FAILED:
        logger.error(f"{instance.label} [{s}] failed {check.value}: {detail}")
        n = instance.ns[0] if instance.ns else None
        try:
            replay = analyze(n, None if n else s, oracle=True, budget=budget)
            outcome.report = report_to_dict(replay)
        except IdealGraphError as e:
            outcome.report = {"error": str(e)}
    return outcome


def _check_task(task: Tuple[Instance, Check, OracleBudget]) -> InstanceOutcome:
    return check_signature(*task)


def run_sweep(
    instances: Iterable[Instance],
    check: Check,
    budget: OracleBudget,
    jobs: int = 1,
    on_result: Optional[Callable[[InstanceOutcome], None]] = None,
) -> SweepSummary:
    """Check every instance; results come back in instance order whatever the job count."""
    tasks = [(instance, check, budget) for instance in instances]
    summary = SweepSummary(check)
    logger.info(f"Sweeping {len(tasks)} instances for {check.value} with {jobs} job(s)")

    if jobs <= 1:
        results = map(_check_task, tasks)
        for outcome in results:
            summary.outcomes.append(outcome)
            if on_result:
                on_result(outcome)
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for outcome in pool.map(_check_task, tasks, chunksize=8):
                summary.outcomes.append(outcome)
                if on_result:
                    on_result(outcome)

    logger.info(
        f"Sweep done: {summary.verified} verified, {summary.undecided} undecided, "
        f"{summary.failed} failed, {summary.skipped} skipped"
    )
    return summary

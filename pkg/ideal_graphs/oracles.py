"""
Exact brute-force ground truth at desk scale.

Each oracle either decides its question exactly or answers "undecided" when
the instance exceeds its budget; it never falls back to a heuristic value.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .lattice import Graph, iter_bits
from .models import ContractViolation, EdgeClass, IdealGraphError, OracleBudget, OracleStatus

logger = logging.getLogger(__name__)

EdgeColoring = Dict[Tuple[int, int], int]


class _BudgetExhausted(Exception):
    pass


class _Deadline:
    def __init__(self, seconds: float):
        self.limit = time.perf_counter() + seconds
        self.ticks = 0

    def tick(self) -> None:
        self.ticks += 1
        if self.ticks & 1023 == 0 and time.perf_counter() > self.limit:
            raise _BudgetExhausted


@dataclass(frozen=True)
class CliqueResult:
    status: OracleStatus
    value: Optional[int] = None
    witness: Tuple[int, ...] = ()
    nodes: int = 0
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.status is OracleStatus.DECIDED


@dataclass(frozen=True)
class SearchStep:
    """One rung of the iterative deepening: is the graph k-colorable?"""
    colors: int
    colorable: bool
    nodes: int


@dataclass(frozen=True)
class ColoringResult:
    status: OracleStatus
    value: Optional[int] = None
    colors: Tuple[int, ...] = ()
    transcript: Tuple[SearchStep, ...] = ()
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.status is OracleStatus.DECIDED


@dataclass(frozen=True)
class EdgeClassResult:
    status: OracleStatus
    delta: int = 0
    edge_class: Optional[EdgeClass] = None
    chromatic_index: Optional[int] = None
    coloring: EdgeColoring = field(default_factory=dict)
    method: str = ""
    reason: str = ""

    @property
    def decided(self) -> bool:
        return self.status is OracleStatus.DECIDED


# --- maximum clique -------------------------------------------------------

def _color_sort(candidates: int, rows: Sequence[int]) -> Tuple[List[int], List[int]]:
    """Greedy coloring of the candidate set; color k bounds any clique through it."""
    order: List[int] = []
    bounds: List[int] = []
    color = 0
    remaining = candidates
    while remaining:
        color += 1
        available = remaining
        while available:
            v = (available & -available).bit_length() - 1
            bit = 1 << v
            order.append(v)
            bounds.append(color)
            remaining &= ~bit
            available &= ~bit & ~rows[v]
    return order, bounds


def max_clique_exact(g: Graph, budget: Optional[OracleBudget] = None) -> CliqueResult:
    """
    Exact clique number by branch and bound over bitset candidate sets,
    pruning with a greedy coloring bound. Vertices are searched in
    descending-degree order.
    """
    budget = budget or OracleBudget()
    n = g.order
    if n > budget.max_vertices:
        return CliqueResult(OracleStatus.UNDECIDED, reason=f"{n} vertices exceed budget of {budget.max_vertices}")
    if n == 0:
        return CliqueResult(OracleStatus.DECIDED, 0)

    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    position = {v: i for i, v in enumerate(order)}
    rows = [0] * n
    for v in range(n):
        for u in iter_bits(g.rows[v]):
            rows[position[v]] |= 1 << position[u]

    deadline = _Deadline(budget.time_limit)
    best_size = 0
    best_bits = 0

    def expand(size: int, clique: int, candidates: int) -> None:
        nonlocal best_size, best_bits
        deadline.tick()
        vertices, bounds = _color_sort(candidates, rows)
        for i in range(len(vertices) - 1, -1, -1):
            if size + bounds[i] <= best_size:
                return
            v = vertices[i]
            bit = 1 << v
            grown = clique | bit
            narrowed = candidates & rows[v]
            if narrowed:
                expand(size + 1, grown, narrowed)
            elif size + 1 > best_size:
                best_size, best_bits = size + 1, grown
            candidates &= ~bit

    try:
        expand(0, 0, (1 << n) - 1)
    except _BudgetExhausted:
        logger.warning(f"Clique search on {n} vertices ran out of time after {deadline.ticks} nodes")
        return CliqueResult(OracleStatus.UNDECIDED, nodes=deadline.ticks, reason="time limit reached")

    witness = tuple(sorted(order[i] for i in iter_bits(best_bits)))
    logger.debug(f"Clique number {best_size} found in {deadline.ticks} nodes")
    return CliqueResult(OracleStatus.DECIDED, best_size, witness, deadline.ticks)


# --- vertex coloring ------------------------------------------------------

def is_proper_coloring(g: Graph, colors: Sequence[int]) -> bool:
    if len(colors) != g.order or any(c < 0 for c in colors):
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


def dsatur_coloring(g: Graph) -> List[int]:
    """Greedy DSATUR coloring: an upper bound on chi."""
    n = g.order
    colors = [-1] * n
    seen = [0] * n
    uncolored = set(range(n))
    while uncolored:
        v = max(uncolored, key=lambda u: (seen[u].bit_count(), g.degree(u), -u))
        c = 0
        while seen[v] >> c & 1:
            c += 1
        colors[v] = c
        uncolored.remove(v)
        for u in iter_bits(g.rows[v]):
            seen[u] |= 1 << c
    return colors


def _k_coloring(g: Graph, k: int, deadline: _Deadline) -> Tuple[Optional[List[int]], int]:
    """DSATUR backtracking for a proper k-coloring; new colors are opened in order."""
    n = g.order
    rows = g.rows
    degree = [row.bit_count() for row in rows]
    full = (1 << k) - 1
    colors = [-1] * n
    forbidden = [0] * n
    uncolored = set(range(n))
    start = deadline.ticks

    def extend(opened: int) -> bool:
        deadline.tick()
        if not uncolored:
            return True
        v = max(uncolored, key=lambda u: (forbidden[u].bit_count(), degree[u], -u))
        allowed = ~forbidden[v] & full
        for c in range(min(k, opened + 1)):
            if not allowed >> c & 1:
                continue
            bit = 1 << c
            colors[v] = c
            uncolored.remove(v)
            touched = []
            wiped_out = False
            for u in iter_bits(rows[v]):
                if colors[u] == -1 and not forbidden[u] & bit:
                    forbidden[u] |= bit
                    touched.append(u)
                    if forbidden[u] & full == full:
                        wiped_out = True
            if not wiped_out and extend(max(opened, c + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~bit
            uncolored.add(v)
            colors[v] = -1
        return False

    found = extend(0)
    return (list(colors) if found else None), deadline.ticks - start


def chromatic_exact(
    g: Graph,
    lower: int,
    upper: Optional[int] = None,
    budget: Optional[OracleBudget] = None,
    witness: Optional[Sequence[int]] = None,
) -> ColoringResult:
    """
    Exact chromatic number by iterative deepening from `lower` to `upper`.
    A validated `witness` coloring with `upper` colors closes the search at
    once when the bounds already meet. Without `upper` the DSATUR coloring
    supplies both the bound and the witness.
    """
    if upper is not None and lower > upper:
        raise ContractViolation(f"lower bound {lower} exceeds upper bound {upper}")
    budget = budget or OracleBudget()
    n = g.order
    if n > budget.max_vertices:
        return ColoringResult(OracleStatus.UNDECIDED, reason=f"{n} vertices exceed budget of {budget.max_vertices}")
    if n == 0:
        return ColoringResult(OracleStatus.DECIDED, 0, transcript=(SearchStep(0, True, 0),))
    if upper is None:
        witness = dsatur_coloring(g)
        upper = len(set(witness))
        logger.debug(f"DSATUR upper bound {upper} on {n} vertices")
        if lower > upper:
            raise ContractViolation(f"lower bound {lower} exceeds the {upper} colors DSATUR found")

    if witness is not None and lower == upper:
        if is_proper_coloring(g, witness) and len(set(witness)) == upper:
            return ColoringResult(
                OracleStatus.DECIDED, upper, tuple(witness), (SearchStep(upper, True, 0),), "bounds meet"
            )
        logger.debug("supplied witness coloring does not validate; searching")

    deadline = _Deadline(budget.time_limit)
    transcript: List[SearchStep] = []
    try:
        for k in range(max(lower, 1), upper + 1):
            colors, nodes = _k_coloring(g, k, deadline)
            transcript.append(SearchStep(k, colors is not None, nodes))
            logger.debug(f"{k}-colorable: {colors is not None} ({nodes} nodes)")
            if colors is not None:
                return ColoringResult(OracleStatus.DECIDED, k, tuple(colors), tuple(transcript))
    except _BudgetExhausted:
        logger.warning(f"Coloring search on {n} vertices ran out of time")
        return ColoringResult(OracleStatus.UNDECIDED, transcript=tuple(transcript), reason="time limit reached")

    raise ContractViolation(f"upper bound {upper} is not achievable; it was not a valid bound")


# --- edge coloring --------------------------------------------------------

def _edge_key(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a < b else (b, a)


def validate_edge_coloring(g: Graph, coloring: EdgeColoring) -> bool:
    """Every edge colored once, and no two edges at a vertex share a color."""
    if set(coloring) != set(g.edges()):
        return False
    at: List[set] = [set() for _ in range(g.order)]
    for (u, v), c in coloring.items():
        if c < 0 or c in at[u] or c in at[v]:
            return False
        at[u].add(c)
        at[v].add(c)
    return True


def greedy_edge_coloring(g: Graph) -> EdgeColoring:
    """
    Misra-Gries fan rotation: a proper edge coloring with at most
    Delta + 1 colors.
    """
    palette = g.max_degree() + 1
    at: List[Dict[int, int]] = [{} for _ in range(g.order)]
    coloring: EdgeColoring = {}

    def is_free(c: int, x: int) -> bool:
        return c not in at[x]

    def free_color(x: int) -> int:
        return next(c for c in range(palette) if c not in at[x])

    def paint(a: int, b: int, c: int) -> None:
        coloring[_edge_key(a, b)] = c
        at[a][c] = b
        at[b][c] = a

    def erase(a: int, b: int) -> int:
        c = coloring.pop(_edge_key(a, b))
        del at[a][c]
        del at[b][c]
        return c

    for u, v in g.edges():
        fan = [v]
        in_fan = {v}
        grown = True
        while grown:
            grown = False
            for w in g.neighbors(u):
                c = coloring.get(_edge_key(u, w))
                if w not in in_fan and c is not None and is_free(c, fan[-1]):
                    fan.append(w)
                    in_fan.add(w)
                    grown = True
                    break

        c = free_color(u)
        d = free_color(fan[-1])

        # Swap c and d along the alternating path that starts at u.
        path = []
        x, want = u, d
        while want in at[x]:
            y = at[x][want]
            path.append((x, y, want))
            x, want = y, (c if want == d else d)
        for a, b, _ in path:
            erase(a, b)
        for a, b, col in path:
            paint(a, b, c if col == d else d)

        pivot = None
        for i, w in enumerate(fan):
            if i > 0:
                cw = coloring.get(_edge_key(u, w))
                if cw is None or not is_free(cw, fan[i - 1]):
                    break
            if is_free(d, w):
                pivot = i
                break
        if pivot is None:
            raise IdealGraphError(f"internal: no rotation point for edge ({u},{v})")

        for j in range(pivot):
            paint(u, fan[j], erase(u, fan[j + 1]))
        paint(u, fan[pivot], d)

    return coloring


def _exact_edge_coloring(
    g: Graph, edges: List[Tuple[int, int]], k: int, deadline: _Deadline
) -> Optional[EdgeColoring]:
    """Backtracking over edges, most constrained first, for a proper k-edge-coloring."""
    used = [0] * g.order
    assigned = [-1] * len(edges)
    remaining = set(range(len(edges)))
    full = (1 << k) - 1

    def extend(opened: int) -> bool:
        deadline.tick()
        if not remaining:
            return True
        pick, pick_free, pick_count = -1, 0, k + 1
        for e in sorted(remaining):
            a, b = edges[e]
            free = ~(used[a] | used[b]) & full
            count = free.bit_count()
            if count == 0:
                return False
            if count < pick_count:
                pick, pick_free, pick_count = e, free, count
        a, b = edges[pick]
        remaining.remove(pick)
        for c in range(min(k, opened + 1)):
            if not pick_free >> c & 1:
                continue
            bit = 1 << c
            assigned[pick] = c
            used[a] |= bit
            used[b] |= bit
            if extend(max(opened, c + 1)):
                return True
            used[a] &= ~bit
            used[b] &= ~bit
            assigned[pick] = -1
        remaining.add(pick)
        return False

    if not extend(0):
        return None
    return {edge: c for edge, c in zip(edges, assigned)}


def edge_class_exact(g: Graph, budget: Optional[OracleBudget] = None) -> EdgeClassResult:
    """
    Decide whether chi'(G) = Delta (class 1) or Delta + 1 (class 2).
    Edgeless graphs are class 1 with chi' = 0.
    """
    budget = budget or OracleBudget()
    edges = list(g.edges())
    delta = g.max_degree()
    if g.order > budget.edge_max_vertices or len(edges) > budget.edge_max_edges:
        return EdgeClassResult(
            OracleStatus.UNDECIDED, delta,
            reason=f"{g.order} vertices / {len(edges)} edges exceed budget "
                   f"{budget.edge_max_vertices} / {budget.edge_max_edges}",
        )
    if not edges:
        return EdgeClassResult(OracleStatus.DECIDED, 0, EdgeClass.CLASS1, 0, {}, "empty")

    # Every color class is a matching of at most floor(|V|/2) edges.
    if len(edges) > delta * (g.order // 2):
        return EdgeClassResult(
            OracleStatus.DECIDED, delta, EdgeClass.CLASS2, delta + 1, greedy_edge_coloring(g), "overfull"
        )

    deadline = _Deadline(budget.time_limit)
    try:
        coloring = _exact_edge_coloring(g, edges, delta, deadline)
    except _BudgetExhausted:
        logger.warning(f"Edge coloring search on {len(edges)} edges ran out of time")
        return EdgeClassResult(OracleStatus.UNDECIDED, delta, reason="time limit reached")

    if coloring is not None:
        return EdgeClassResult(OracleStatus.DECIDED, delta, EdgeClass.CLASS1, delta, coloring, "search")
    return EdgeClassResult(
        OracleStatus.DECIDED, delta, EdgeClass.CLASS2, delta + 1, greedy_edge_coloring(g), "search"
    )

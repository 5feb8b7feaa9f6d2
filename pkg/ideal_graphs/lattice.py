import hashlib
import itertools
import logging
import math
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .models import (
    ContractViolation,
    DomainError,
    Factorization,
    GraphTooLarge,
    IdealCode,
    Signature,
)

logger = logging.getLogger(__name__)

DEFAULT_MAX_VERTICES = 4096


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vertex_count(s: Signature) -> int:
    """|I(Z_n)^*| = prod(n_i + 1) - 2."""
    return math.prod(e + 1 for e in s) - 2


def support_population(support_mask: int, s: Signature) -> int:
    """Number of vertices whose support is exactly `support_mask`."""
    if support_mask == 0:
        return 0
    count = math.prod(s[i] for i in iter_bits(support_mask))
    if support_mask == s.full_support:
        count -= 1  # the unit ideal is not a vertex
    return count


def _check_code(code: IdealCode, s: Signature) -> None:
    if len(code) != s.m:
        raise DomainError(f"code {code.label()} has length {len(code)}, signature has {s.m}")
    for a, e in zip(code, s):
        if not 0 <= a <= e:
            raise DomainError(f"code {code.label()} is outside signature [{s}]")


def is_vertex(code: IdealCode, s: Signature) -> bool:
    _check_code(code, s)
    return any(code.exponents) and code.exponents != s.exponents


def support(code: IdealCode, s: Signature) -> int:
    """Bitmask of the non-zero components: bit i set iff a_i < n_i."""
    _check_code(code, s)
    mask = 0
    for i, (a, e) in enumerate(zip(code, s)):
        if a < e:
            mask |= 1 << i
    return mask


def enumerate_vertices(s: Signature) -> List[IdealCode]:
    """
    Proper nontrivial ideals in canonical (lexicographic) order.
    The first vector of the product is the unit ideal and the last is the
    zero ideal; both are dropped.
    """
    codes = itertools.product(*(range(e + 1) for e in s))
    return [IdealCode(t) for t in codes][1:-1]


def vertex_index(code: IdealCode, s: Signature) -> int:
    """Position of `code` in the canonical vertex order."""
    if not is_vertex(code, s):
        raise DomainError(f"{code.label()} is not a vertex of signature [{s}]")
    rank = 0
    for a, e in zip(code, s):
        rank = rank * (e + 1) + a
    return rank - 1


def intersect(a: IdealCode, b: IdealCode) -> IdealCode:
    """dZ_n ∩ eZ_n = lcm(d, e)Z_n, i.e. componentwise maximum of exponents."""
    if len(a) != len(b):
        raise DomainError(f"codes {a.label()} and {b.label()} have different lengths")
    return IdealCode(tuple(max(x, y) for x, y in zip(a, b)))


def adjacent(a: IdealCode, b: IdealCode, s: Signature) -> bool:
    """I ~ J iff I ∩ J != 0 iff their supports meet."""
    if a == b:
        raise ContractViolation(f"adjacency is irreflexive; got {a.label()} twice")
    return (support(a, s) & support(b, s)) != 0


def _degree_for_support(support_mask: int, s: Signature) -> int:
    outside = math.prod(s[i] + 1 for i in range(s.m) if not support_mask >> i & 1)
    # Non-neighbours are the vertices whose support avoids ours; the zero ideal is not a vertex.
    return vertex_count(s) - 1 - (outside - 1)


def degree_closed_form(code: IdealCode, s: Signature) -> int:
    if not is_vertex(code, s):
        raise DomainError(f"{code.label()} is not a vertex of signature [{s}]")
    return _degree_for_support(support(code, s), s)


def _populated_supports(s: Signature) -> Iterator[int]:
    for mask in range(1, s.full_support + 1):
        if support_population(mask, s) > 0:
            yield mask


def max_degree(s: Signature) -> int:
    return max((_degree_for_support(mask, s) for mask in _populated_supports(s)), default=0)


def edge_count(s: Signature) -> int:
    total = sum(support_population(mask, s) * _degree_for_support(mask, s) for mask in _populated_supports(s))
    return total // 2


def is_complete_signature(s: Signature) -> bool:
    return s.m == 1


def is_connected_signature(s: Signature) -> bool:
    # Only Z_pq splits into two isolated vertices.
    return s.exponents != (1, 1)


def divisor_of(code: IdealCode, f: Factorization) -> int:
    primes = f.primes_by_position()
    if len(primes) != len(code):
        raise DomainError(f"code {code.label()} does not match factorization of {f.value}")
    return math.prod(p ** a for p, a in zip(primes, code))


class Graph:
    """
    Simple undirected graph stored as one bitmask row per vertex.
    Immutable after construction; vertex ids are positions in canonical order.
    """

    def __init__(
        self,
        rows: Sequence[int],
        labels: Sequence[str],
        signature: Optional[Signature] = None,
        vertices: Sequence[IdealCode] = (),
        factorization: Optional[Factorization] = None,
    ):
        if len(rows) != len(labels):
            raise ContractViolation("one label per vertex is required")
        self._rows = tuple(rows)
        self._labels = tuple(labels)
        self.signature = signature
        self.vertices = tuple(vertices)
        self.factorization = factorization

    @property
    def rows(self) -> Tuple[int, ...]:
        return self._rows

    @property
    def labels(self) -> Tuple[str, ...]:
        return self._labels

    @property
    def order(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    def label(self, v: int) -> str:
        return self._labels[v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return list(iter_bits(self._rows[v]))

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def degrees(self) -> np.ndarray:
        return self.adjacency_matrix().sum(axis=1)

    def max_degree(self) -> int:
        return max((row.bit_count() for row in self._rows), default=0)

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self._rows) // 2

    def edges(self) -> Iterator[Tuple[int, int]]:
        for u, row in enumerate(self._rows):
            for v in iter_bits(row >> (u + 1)):
                yield u, u + 1 + v

    def adjacency_matrix(self) -> np.ndarray:
        n = self.order
        matrix = np.zeros((n, n), dtype=bool)
        for u, v in self.edges():
            matrix[u, v] = matrix[v, u] = True
        return matrix

    def adjacency_digest(self) -> str:
        return hashlib.sha256(self.adjacency_matrix().astype(np.uint8).tobytes()).hexdigest()

    def is_complete(self) -> bool:
        full = (1 << self.order) - 1
        return all(row | (1 << v) == full for v, row in enumerate(self._rows))

    def is_connected(self) -> bool:
        if self.order <= 1:
            return True
        seen = frontier = 1
        while frontier:
            reach = 0
            for v in iter_bits(frontier):
                reach |= self._rows[v]
            frontier = reach & ~seen
            seen |= frontier
        return seen == (1 << self.order) - 1


def build_graph(
    s: Signature,
    factorization: Optional[Factorization] = None,
    max_vertices: int = DEFAULT_MAX_VERTICES,
) -> Graph:
    """
    Build G(Z_n) for a signature. Labels are divisors when a factorization
    is attached, exponent vectors otherwise.
    """
    count = vertex_count(s)
    if count > max_vertices:
        raise GraphTooLarge(f"signature [{s}] has {count} vertices, above the cap of {max_vertices}")
    if factorization is not None and tuple(sorted(pp.exponent for pp in factorization)) != s.exponents:
        raise DomainError(f"factorization of {factorization.value} does not have signature [{s}]")

    vertices = enumerate_vertices(s)
    supports = [support(code, s) for code in vertices]

    members: Dict[int, int] = {}
    for i, mask in enumerate(supports):
        members[mask] = members.get(mask, 0) | (1 << i)
    reach = {
        mask: _union(bits for other, bits in members.items() if other & mask)
        for mask in members
    }
    rows = [reach[mask] & ~(1 << i) for i, mask in enumerate(supports)]

    if factorization is not None:
        labels = [str(divisor_of(code, factorization)) for code in vertices]
    else:
        labels = [code.label() for code in vertices]

    graph = Graph(rows, labels, signature=s, vertices=vertices, factorization=factorization)
    logger.info(f"Built graph for signature [{s}]: {graph.order} vertices, {graph.edge_count} edges")
    return graph


def _union(masks: Iterable[int]) -> int:
    result = 0
    for mask in masks:
        result |= mask
    return result


def graph_from_edges(order: int, edges: Iterable[Tuple[int, int]], labels: Optional[Sequence[str]] = None) -> Graph:
    """Hand-built graph, e.g. a 5-cycle for oracle negative controls."""
    rows = [0] * order
    for u, v in edges:
        if u == v:
            raise ContractViolation(f"self-loop at {u}")
        if not (0 <= u < order and 0 <= v < order):
            raise ContractViolation(f"edge ({u},{v}) out of bounds for order {order}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    if labels is None:
        labels = [str(v) for v in range(order)]
    return Graph(rows, labels)

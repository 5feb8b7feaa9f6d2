from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple


class IdealGraphError(Exception):
    """Base class for every error raised by ideal_graphs."""


class DomainError(IdealGraphError, ValueError):
    """Input outside the domain of the analysis (bad n, bad signature, ...)."""


class GraphTooLarge(DomainError):
    """The requested graph has more vertices than the configured cap."""


class ContractViolation(IdealGraphError):
    """A caller broke a documented precondition."""


class CertificateError(IdealGraphError):
    """A certificate file is unreadable or does not describe its graph."""


@dataclass(frozen=True)
class PrimePower:
    prime: int
    exponent: int


@dataclass(frozen=True)
class Factorization:
    """Prime factorization of n, primes strictly increasing."""
    factors: Tuple[PrimePower, ...]

    def __post_init__(self):
        if not self.factors:
            raise DomainError("a factorization needs at least one prime power")
        previous = 1
        for pp in self.factors:
            if pp.prime <= previous or pp.exponent < 1:
                raise DomainError(f"malformed factorization: {self.factors}")
            previous = pp.prime

    @property
    def value(self) -> int:
        result = 1
        for pp in self.factors:
            result *= pp.prime ** pp.exponent
        return result

    def primes_by_position(self) -> Tuple[int, ...]:
        """
        Primes aligned with the sorted signature: ordered by exponent,
        ties broken by the prime itself.
        """
        ordered = sorted(self.factors, key=lambda pp: (pp.exponent, pp.prime))
        return tuple(pp.prime for pp in ordered)

    def __iter__(self) -> Iterator[PrimePower]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)


@dataclass(frozen=True)
class Signature:
    """Sorted prime-exponent multiset n_1 <= ... <= n_m of n."""
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if not self.exponents:
            raise DomainError("a signature needs at least one exponent")
        if any(not isinstance(e, int) or e < 1 for e in self.exponents):
            raise DomainError(f"signature exponents must be positive integers: {self.exponents}")
        if list(self.exponents) != sorted(self.exponents):
            raise DomainError(f"signature must be sorted non-decreasing: {self.exponents}")

    @classmethod
    def of(cls, exponents) -> "Signature":
        """Build from any iterable of exponents, sorting it first."""
        return cls(tuple(sorted(int(e) for e in exponents)))

    @property
    def m(self) -> int:
        return len(self.exponents)

    @property
    def full_support(self) -> int:
        return (1 << self.m) - 1

    @property
    def last_index_bit(self) -> int:
        # Index m in 1-based terms, the position of the largest exponent.
        return 1 << (self.m - 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.exponents)

    def __len__(self) -> int:
        return len(self.exponents)

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]

    def __str__(self) -> str:
        return ",".join(str(e) for e in self.exponents)


@dataclass(frozen=True)
class IdealCode:
    """Exponent vector (a_1, ..., a_m) encoding the ideal d*Z_n, d = prod p_i^a_i."""
    exponents: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.exponents)

    def __iter__(self) -> Iterator[int]:
        return iter(self.exponents)

    def label(self) -> str:
        return "[" + ",".join(str(a) for a in self.exponents) + "]"


@dataclass(frozen=True)
class Family:
    """All vertices whose set of non-zero components is exactly `support`."""
    support: int
    signature: Signature
    weight: int
    vertex_count: int

    @property
    def m(self) -> int:
        return self.signature.m

    @property
    def indices(self) -> Tuple[int, ...]:
        """0-based component indices in the support."""
        return tuple(i for i in range(self.m) if self.support >> i & 1)

    @property
    def is_full(self) -> bool:
        return self.support == self.signature.full_support


@dataclass(frozen=True)
class CliqueSet:
    """
    Supports chosen for the maximum clique: every strict weight winner of a
    complementary pair, one member of every tied pair, and the full support.
    """
    m: int
    chosen: FrozenSet[int]
    tie_pairs: Tuple[Tuple[int, int], ...] = ()

    def __contains__(self, support: int) -> bool:
        return support in self.chosen


@dataclass
class ColoringCertificate:
    """Clique witness plus a proper vertex coloring; colors[v] is the color of vertex v."""
    omega: int
    chi: int
    clique: Tuple[int, ...]
    colors: Tuple[int, ...]

    @property
    def color_count(self) -> int:
        return len(set(self.colors))


@dataclass(frozen=True)
class FormulaResult:
    name: str
    applicable: bool
    value: Optional[int] = None
    detail: Dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.applicable != (self.value is not None):
            raise ContractViolation(f"formula {self.name}: value must be present iff applicable")


class EdgeClass(str, Enum):
    CLASS1 = "class1"
    CLASS2 = "class2"
    TRIVIAL = "trivial"


class CaseTag(str, Enum):
    PRIME_POWER_ODD = "prime_power_odd"
    PRIME_POWER_EVEN = "prime_power_even"
    TWO_PRIMES_NULL = "two_primes_null"
    SQUAREFREE_CASE1 = "squarefree_case1"
    ALL_EVEN_EXPONENTS_CASE2 = "all_even_exponents_case2"
    MIXED_CASE3 = "mixed_case3"
    EMPTY_GRAPH = "empty_graph"


@dataclass(frozen=True)
class EdgeClassReport:
    delta: int
    classification: EdgeClass
    reason: CaseTag
    notes: Tuple[str, ...] = ()

    @property
    def chromatic_index(self) -> int:
        if self.classification is EdgeClass.CLASS2:
            return self.delta + 1
        return self.delta


class OracleStatus(str, Enum):
    DECIDED = "decided"
    UNDECIDED = "undecided"


@dataclass(frozen=True)
class OracleBudget:
    """Size and time limits for the exact oracles."""
    max_vertices: int = 200
    edge_max_vertices: int = 24
    edge_max_edges: int = 80
    time_limit: float = 30.0

    def __post_init__(self):
        if min(self.max_vertices, self.edge_max_vertices, self.edge_max_edges) < 1 or self.time_limit <= 0:
            raise DomainError(f"oracle budgets must be positive: {self}")


@dataclass
class AnalysisReport:
    """Everything `analyze` knows about one signature (and optionally one n)."""
    signature: Signature
    vertex_count: int
    edge_count: int
    max_degree: int
    omega: int
    chi: int
    formulas: List[FormulaResult]
    edge_class: EdgeClassReport
    n: Optional[int] = None
    complete: Optional[bool] = None
    connected: Optional[bool] = None
    adjacency_sha256: Optional[str] = None
    clique_set: Optional[CliqueSet] = None
    diagnostics: Dict[str, dict] = field(default_factory=dict)
    oracle: Optional[dict] = None
    notes: List[str] = field(default_factory=list)
    witness: Optional[dict] = None
    failed: bool = False

    @property
    def weakly_perfect(self) -> bool:
        return self.omega == self.chi

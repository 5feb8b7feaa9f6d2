import itertools
import logging
import math
from typing import List, Set

from .lattice import Graph, is_vertex, support, support_population, vertex_count, vertex_index
from .models import (
    CliqueSet,
    ColoringCertificate,
    DomainError,
    Family,
    IdealCode,
    IdealGraphError,
    Signature,
)

logger = logging.getLogger(__name__)


def weight(support_mask: int, s: Signature) -> int:
    """W(S) = prod_{i in S} n_i; the empty support weighs 0."""
    if support_mask == 0:
        return 0
    return math.prod(s[i] for i in range(s.m) if support_mask >> i & 1)


def family_for_support(support_mask: int, s: Signature) -> Family:
    if not 0 < support_mask <= s.full_support:
        raise DomainError(f"support {support_mask:#b} is not a non-empty subset of {s.m} components")
    return Family(
        support=support_mask,
        signature=s,
        weight=weight(support_mask, s),
        vertex_count=support_population(support_mask, s),
    )


def family_of(code: IdealCode, s: Signature) -> Family:
    if not is_vertex(code, s):
        raise DomainError(f"{code.label()} is not a vertex of signature [{s}]")
    return family_for_support(support(code, s), s)


def complement(f: Family) -> Family:
    """F^c: the family on the complementary support. (F^c)^c = F."""
    if f.is_full:
        raise DomainError("the full support has an empty complement, which is not a family")
    return family_for_support(f.signature.full_support ^ f.support, f.signature)


def family_members(support_mask: int, s: Signature) -> List[IdealCode]:
    """Vertices of the family, in canonical order."""
    ranges = [range(s[i]) if support_mask >> i & 1 else (s[i],) for i in range(s.m)]
    members = [IdealCode(t) for t in itertools.product(*ranges)]
    if support_mask == s.full_support:
        members = members[1:]  # drop the unit ideal (all exponents zero)
    return members


def build_clique_set(s: Signature) -> CliqueSet:
    """
    Choose one support from every complementary pair: the heavier one, or on
    a tie the one containing the last component. The full support is always
    chosen.
    """
    full = s.full_support
    chosen: Set[int] = {full}
    ties = []
    for mask in range(1, full):
        other = full ^ mask
        if mask > other:
            continue
        w, w_other = weight(mask, s), weight(other, s)
        if w > w_other:
            chosen.add(mask)
        elif w_other > w:
            chosen.add(other)
        else:
            winner, loser = (mask, other) if mask & s.last_index_bit else (other, mask)
            chosen.add(winner)
            ties.append((winner, loser))
    logger.debug(f"Clique set for [{s}]: {len(chosen)} supports, {len(ties)} ties")
    return CliqueSet(m=s.m, chosen=frozenset(chosen), tie_pairs=tuple(ties))


def clique_members(cs: CliqueSet, s: Signature) -> List[IdealCode]:
    if cs.m != s.m:
        raise DomainError(f"clique set for m={cs.m} used with signature [{s}]")
    members = [code for mask in cs.chosen for code in family_members(mask, s)]
    members.sort(key=lambda code: code.exponents)
    return members


def omega(s: Signature) -> int:
    return sum(support_population(mask, s) for mask in build_clique_set(s).chosen)


def build_coloring(s: Signature) -> ColoringCertificate:
    """
    Color the clique C_1 with distinct colors, then give the k-th member of
    every unchosen family H the color of the k-th member of H^c.
    """
    cs = build_clique_set(s)
    colors = [-1] * vertex_count(s)

    clique = sorted(vertex_index(code, s) for code in clique_members(cs, s))
    for color, v in enumerate(clique):
        colors[v] = color

    full = s.full_support
    for mask in range(1, full):
        if mask in cs.chosen:
            continue
        other = full ^ mask
        if other not in cs.chosen:
            raise IdealGraphError(f"internal: neither {mask:#b} nor its complement was chosen")
        family = family_members(mask, s)
        partner = family_members(other, s)
        if len(family) > len(partner):
            raise IdealGraphError(f"internal: family {mask:#b} outweighs its chosen complement")
        for code, twin in zip(family, partner):
            colors[vertex_index(code, s)] = colors[vertex_index(twin, s)]

    if -1 in colors:
        raise IdealGraphError(f"internal: uncolored vertex in signature [{s}]")
    used = len(set(colors))
    return ColoringCertificate(omega=len(clique), chi=used, clique=tuple(clique), colors=tuple(colors))


def validate(cert: ColoringCertificate, g: Graph) -> bool:
    """Check the clique is a clique, the coloring is proper and the counts agree."""
    if len(cert.colors) != g.order:
        logger.debug(f"certificate colors {len(cert.colors)} vertices, graph has {g.order}")
        return False
    if any(not 0 <= c < cert.chi for c in cert.colors):
        logger.debug("color outside [0, chi)")
        return False

    clique = cert.clique
    if len(set(clique)) != len(clique) or any(not 0 <= v < g.order for v in clique):
        logger.debug("clique has repeated or unknown vertices")
        return False
    for i, u in enumerate(clique):
        for v in clique[i + 1:]:
            if not g.has_edge(u, v):
                logger.debug(f"clique members {g.label(u)} and {g.label(v)} are not adjacent")
                return False

    for u, v in g.edges():
        if cert.colors[u] == cert.colors[v]:
            logger.debug(f"adjacent {g.label(u)} and {g.label(v)} share color {cert.colors[u]}")
            return False

    return len(clique) == cert.omega == cert.chi == cert.color_count


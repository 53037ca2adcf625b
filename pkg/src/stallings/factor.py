"""Free-factor and primitivity decisions.

H is a free factor of J exactly when, after restricting J's core graph to
the image of H's, that image lies at distance rk(J') - rk(H) from H's core
graph in the immediate-quotient DAG.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core_graph import (
    CoreGraph,
    build_core_graph,
    find_morphism,
    image_subgraph,
    wedge_of_loops,
)
from .fringe import DEFAULT_NODE_CAP, FringeDag, distance_to
from .words import GeneratingSet, Word

__all__ = [
    "FactorReport",
    "NotContainedError",
    "is_free_factor",
    "is_primitive",
    "complementary_generator_count",
]


class NotContainedError(ValueError):
    """H is not a subgroup of J."""


@dataclass(frozen=True)
class FactorReport:
    contained: bool
    is_free_factor: bool
    intermediate: CoreGraph | None = None
    rho: int | None = None
    rank_gap: int | None = None
    complementary_generators_needed: int | None = None

    def __bool__(self) -> bool:
        return self.is_free_factor

    def to_json(self) -> dict:
        return {
            "contained": self.contained,
            "is_free_factor": self.is_free_factor,
            "intermediate": None if self.intermediate is None else self.intermediate.serialize(),
            "rho": self.rho,
            "rank_gap": self.rank_gap,
            "complementary_generators_needed": self.complementary_generators_needed,
        }


def _graph(x: GeneratingSet | CoreGraph) -> CoreGraph:
    return x if isinstance(x, CoreGraph) else build_core_graph(x)


def is_free_factor(
    h: GeneratingSet | CoreGraph,
    j: GeneratingSet | CoreGraph,
    cap: int = DEFAULT_NODE_CAP,
    fringe: FringeDag | None = None,
) -> FactorReport:
    """Decide whether H is a free factor of J; the report is truthy iff so.

    ``fringe`` may be a precomputed fringe of H; otherwise the distance is
    found by a search restricted to the fibers of the map onto J'.
    """
    gh, gj = _graph(h), _graph(j)
    m = find_morphism(gh, gj)
    if m is None:
        return FactorReport(contained=False, is_free_factor=False)
    inter = image_subgraph(m)
    if fringe is not None and fringe.root == gh:
        rho = fringe.distance(inter)
    else:
        rho = distance_to(gh, inter, cap=cap)
    assert rho is not None, "the image of a morphism is always a quotient"
    gap = inter.rank - gh.rank
    return FactorReport(
        contained=True,
        is_free_factor=rho == gap,
        intermediate=inter,
        rho=rho,
        rank_gap=gap,
        complementary_generators_needed=rho + gj.rank - inter.rank,
    )


def is_primitive(w: Word, ambient_rank: int, cap: int = DEFAULT_NODE_CAP) -> bool:
    """True iff ``w`` belongs to some basis of F_k."""
    if not w:
        raise ValueError("the identity is not primitive by convention; pass a nonempty word")
    h = build_core_graph([w], ambient_rank)
    return is_free_factor(h, wedge_of_loops(ambient_rank), cap=cap).is_free_factor


def complementary_generator_count(h, j, cap: int = DEFAULT_NODE_CAP) -> int:
    """Fewest extra elements t with J = <H, w_1, ..., w_t>."""
    report = is_free_factor(h, j, cap=cap)
    if not report.contained:
        raise NotContainedError("H is not contained in J")
    return report.complementary_generators_needed

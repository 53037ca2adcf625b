"""Primitivity rank, critical subgroups and algebraic extensions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core_graph import CoreGraph, build_core_graph
from .fringe import DEFAULT_NODE_CAP, FringeDag, enumerate_fringe
from .words import GeneratingSet, Word

__all__ = ["PrimitivityReport", "primitivity_report", "primitivity_rank", "critical_count_for_power"]


@dataclass(frozen=True)
class PrimitivityReport:
    """``pi`` is an int in 0..k or ``math.inf``.

    ``degenerate`` marks the trivial subgroup, reported with pi = 0 and the
    trivial graph as its only critical subgroup.
    """

    pi: int | float
    critical_subgroups: list[CoreGraph]
    algebraic_extensions: list[CoreGraph]
    degenerate: bool = False
    fringe: FringeDag | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        def entry(g: CoreGraph) -> dict:
            return {
                "canonical": g.serialize(),
                "rank": g.rank,
                "generators": [str(w) for w in g.generators()],
            }

        return {
            "pi": "infinity" if self.pi == math.inf else self.pi,
            "degenerate": self.degenerate,
            "critical_subgroups": [entry(g) for g in self.critical_subgroups],
            "algebraic_extensions": [entry(g) for g in self.algebraic_extensions],
        }


def primitivity_report(
    h: GeneratingSet | CoreGraph,
    cap: int = DEFAULT_NODE_CAP,
    fringe: FringeDag | None = None,
) -> PrimitivityReport:
    """Read pi(H), the H-critical subgroups and the algebraic extensions of H
    off the fringe: a quotient is an algebraic extension iff it is not an
    immediate quotient of a quotient of strictly smaller rank.
    """
    root = h if isinstance(h, CoreGraph) else build_core_graph(h)
    if fringe is None:
        fringe = enumerate_fringe(root, cap=cap)
    if root.edge_count == 0:
        return PrimitivityReport(0, [root], [root], degenerate=True, fringe=fringe)
    algebraic = [
        g
        for g in fringe.nodes
        if g == root or all(p.rank >= g.rank for p in fringe.predecessors(g))
    ]
    proper = [g for g in algebraic if g != root]
    if not proper:
        return PrimitivityReport(math.inf, [], algebraic, fringe=fringe)
    pi = min(g.rank for g in proper)
    critical = [g for g in proper if g.rank == pi]
    return PrimitivityReport(pi, critical, algebraic, fringe=fringe)


def primitivity_rank(w: Word, ambient_rank: int, cap: int = DEFAULT_NODE_CAP) -> int | float:
    return primitivity_report(build_core_graph([w], ambient_rank), cap=cap).pi


def critical_count_for_power(u: Word, d: int, ambient_rank: int | None = None, cap: int = DEFAULT_NODE_CAP) -> int:
    """Number of critical subgroups of <u^d>; u should not be a proper power."""
    if d < 2:
        raise ValueError("d must be at least 2")
    k = ambient_rank if ambient_rank is not None else max(u.max_generator(), 1)
    report = primitivity_report(build_core_graph([u ** d], k), cap=cap)
    return len(report.critical_subgroups)

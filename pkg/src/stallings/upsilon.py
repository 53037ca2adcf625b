"""The pair graph of a core graph.

Vertices are unordered pairs of distinct vertices of the core graph; each
unordered pair of distinct j-edges contributes one j-edge from the pair of
their origins to the pair of their termini.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core_graph import CoreGraph, merge_and_fold

__all__ = ["UpsilonGraph", "build_upsilon", "component_count", "verify_correspondence"]

Pair = tuple[int, int]


def _pair(a: int, b: int) -> Pair:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class UpsilonGraph:
    base: CoreGraph
    vertices: tuple[Pair, ...]
    edges: tuple[tuple[int, Pair, Pair], ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def _union_find(self) -> tuple[dict[Pair, Pair], bool]:
        parent = {p: p for p in self.vertices}

        def find(p: Pair) -> Pair:
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        cyclic = False
        for _, a, b in self.edges:
            ra, rb = find(a), find(b)
            if ra == rb:
                cyclic = True
            else:
                parent[ra] = rb
        return {p: find(p) for p in self.vertices}, cyclic

    def components(self) -> list[list[Pair]]:
        roots, _ = self._union_find()
        groups: dict[Pair, list[Pair]] = {}
        for p in self.vertices:
            groups.setdefault(roots[p], []).append(p)
        return list(groups.values())

    def component_count(self) -> int:
        return len(set(self._union_find()[0].values()))

    def is_forest(self) -> bool:
        """No cycles, where a loop or a doubled edge counts as a cycle."""
        return not self._union_find()[1]

    def to_dot(self) -> str:
        def name(p: Pair) -> str:
            return f'"{{v{p[0]},v{p[1]}}}"'

        lines = ["digraph upsilon {"]
        for p in self.vertices:
            lines.append(f"  {name(p)};")
        for j, a, b in self.edges:
            lines.append(f'  {name(a)} -> {name(b)} [label="{j}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_upsilon(g: CoreGraph) -> UpsilonGraph:
    vertices = tuple(combinations(range(g.vertex_count), 2))
    edges = []
    for j in range(1, g.ambient_rank + 1):
        arrows = [(u, v) for (label, u, v) in g.edges() if label == j]
        for (u1, v1), (u2, v2) in combinations(arrows, 2):
            edges.append((j, _pair(u1, u2), _pair(v1, v2)))
    return UpsilonGraph(g, vertices, tuple(edges))


def component_count(u: UpsilonGraph) -> int:
    return u.component_count()


def verify_correspondence(g: CoreGraph) -> bool:
    """Whether the number of distinct immediate quotients of ``g`` equals the
    number of connected components of its pair graph.

    Only expected to hold when pi(H) and phi(H) both exceed rk(H); no
    hypothesis is checked here.
    """
    quotients = {merge_and_fold(g, a, b) for a, b in combinations(range(g.vertex_count), 2)}
    return len(quotients) == build_upsilon(g).component_count()

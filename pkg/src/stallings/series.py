"""Exact fixed-point statistics of word maps on symmetric groups.

For a subgroup H with core graph Γ and n at least the largest per-label edge
count of Γ,

    Prob[every w in H fixes 1]  =  sum over quotients Δ of Γ of
        (n-1)(n-2)...(n-v_Δ+1) / prod_j n(n-1)...(n-e^j_Δ+1)

and Φ_H(n) is that probability minus n^-rk(H).  Expanding each summand in
u = 1/n gives integer coefficients a_i(H).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core_graph import CoreGraph, build_core_graph, wedge_of_loops
from .factor import is_free_factor
from .fringe import DEFAULT_NODE_CAP, FringeDag, enumerate_fringe
from .words import GeneratingSet, Word

__all__ = [
    "TruncatedSeries",
    "PhiReport",
    "BelowValidityError",
    "p_gamma_series",
    "phi_closed_form",
    "phi_series",
    "lower_rank_contribution",
    "average_fixed_points",
    "valid_from",
    "render_closed_form",
]


class BelowValidityError(ValueError):
    """n is too small for the closed form to hold."""


@dataclass(frozen=True)
class TruncatedSeries:
    """Integer power series a_0 + a_1 u + ... + a_I u^I in u = 1/n."""

    coefficients: tuple[int, ...]

    @classmethod
    def from_rationals(cls, coefficients: Sequence[Fraction]) -> "TruncatedSeries":
        ints = []
        for i, c in enumerate(coefficients):
            c = Fraction(c)
            if c.denominator != 1:
                raise ArithmeticError(f"coefficient {i} is {c}, not an integer")
            ints.append(c.numerator)
        return cls(tuple(ints))

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls((0,) * (order + 1))

    @classmethod
    def monomial(cls, index: int, order: int, coefficient: int = 1) -> "TruncatedSeries":
        c = [0] * (order + 1)
        if index <= order:
            c[index] = coefficient
        return cls(tuple(c))

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, i: int) -> int:
        return self.coefficients[i]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(len(self), len(other))
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coefficients[:n], other.coefficients[:n])))

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(len(self), len(other))
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coefficients[:n], other.coefficients[:n])))

    def first_nonzero(self) -> int | None:
        return next((i for i, c in enumerate(self.coefficients) if c), None)

    def evaluate(self, n: int) -> Fraction:
        """Value of the truncated polynomial at u = 1/n."""
        return sum((Fraction(c, n ** i) for i, c in enumerate(self.coefficients)), Fraction(0))

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mono = "" if i == 0 else ("/n" if i == 1 else f"/n^{i}")
            terms.append(f"{c}{mono}")
        body = " + ".join(terms).replace("+ -", "- ") or "0"
        return f"{body} + O(1/n^{self.order + 1})"


def _mul_truncated(a: list[Fraction], b: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j in range(order + 1 - i):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def p_gamma_series(g: CoreGraph, order: int) -> TruncatedSeries:
    """Expansion of the probability term of one quotient in u = 1/n.

    u^rank(g) * prod_{i<v}(1 - i u) / prod_j prod_{i<e^j}(1 - i u), each
    (1 - i u)^-1 expanded as sum_m i^m u^m.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    r = g.rank
    if r > order:
        return TruncatedSeries.zero(order)
    width = order - r
    acc = [Fraction(1)] + [Fraction(0)] * width
    for i in range(1, g.vertex_count):
        factor = [Fraction(1), Fraction(-i)] + [Fraction(0)] * max(width - 1, 0)
        acc = _mul_truncated(acc, factor[: width + 1], width)
    for e in g.edge_counts:
        for i in range(1, e):
            geometric = [Fraction(i) ** m for m in range(width + 1)]
            acc = _mul_truncated(acc, geometric, width)
    return TruncatedSeries.from_rationals([Fraction(0)] * r + acc)


def valid_from(g: CoreGraph) -> int:
    """Smallest n for which the closed form is exact."""
    return max(max(g.edge_counts, default=0), 1)


def _root_and_fringe(h, fringe: FringeDag | None, cap: int) -> tuple[CoreGraph, FringeDag]:
    root = h if isinstance(h, CoreGraph) else build_core_graph(h)
    if fringe is None:
        fringe = enumerate_fringe(root, cap=cap)
    elif fringe.root != root:
        raise ValueError("fringe was built for a different subgroup")
    return root, fringe


def _falling(n: int, m: int) -> int:
    """n (n-1) ... (n-m+1)."""
    return math.perm(n, m)


def _p_gamma_value(g: CoreGraph, n: int) -> Fraction:
    denom = 1
    for e in g.edge_counts:
        denom *= _falling(n, e)
    return Fraction(_falling(n - 1, g.vertex_count - 1), denom)


def phi_closed_form(
    h: GeneratingSet | CoreGraph,
    n: int,
    fringe: FringeDag | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> Fraction:
    """Exact Φ_H(n) as a rational number."""
    root, fringe = _root_and_fringe(h, fringe, cap)
    if n < valid_from(root):
        raise BelowValidityError(f"closed form needs n >= {valid_from(root)}, got n = {n}")
    total = sum((_p_gamma_value(g, n) for g in fringe.nodes), Fraction(0))
    return total - Fraction(1, n ** root.rank)


@dataclass(frozen=True)
class PhiReport:
    """``phi`` is the first index with a nonzero coefficient.

    When every computed coefficient vanishes, ``phi`` is ``math.inf`` if H
    is certified to be a free factor of F_k, and otherwise ``order + 1``
    with ``phi_is_lower_bound`` set.
    """

    series: TruncatedSeries
    phi: int | float
    valid_from: int
    phi_is_lower_bound: bool = False

    @property
    def coefficients(self) -> tuple[int, ...]:
        return self.series.coefficients

    def phi_text(self) -> str:
        if self.phi == math.inf:
            return "infinity"
        return f">= {self.phi}" if self.phi_is_lower_bound else str(self.phi)

    def to_json(self) -> dict:
        return {
            "coefficients": [str(c) for c in self.series.coefficients],
            "order": self.series.order,
            "phi": "infinity" if self.phi == math.inf else self.phi,
            "phi_is_lower_bound": self.phi_is_lower_bound,
            "valid_from": self.valid_from,
        }


def _fringe_series(root: CoreGraph, fringe: FringeDag, order: int, max_rank: int | None = None) -> TruncatedSeries:
    total = TruncatedSeries.zero(order)
    for g in fringe.nodes:
        if max_rank is not None and g.rank > max_rank:
            continue
        total = total + p_gamma_series(g, order)
    return total


def phi_series(
    h: GeneratingSet | CoreGraph,
    order: int | None = None,
    fringe: FringeDag | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> PhiReport:
    """Coefficients a_0..a_order of Φ_H and the resulting φ(H).

    The default order is rk(H) + 3.
    """
    root, fringe = _root_and_fringe(h, fringe, cap)
    if order is None:
        order = root.rank + 3
    series = _fringe_series(root, fringe, order) - TruncatedSeries.monomial(root.rank, order)
    phi = series.first_nonzero()
    if phi is not None:
        return PhiReport(series, phi, valid_from(root))
    if is_free_factor(root, wedge_of_loops(root.ambient_rank), fringe=fringe).is_free_factor:
        return PhiReport(series, math.inf, valid_from(root))
    return PhiReport(series, order + 1, valid_from(root), phi_is_lower_bound=True)


def lower_rank_contribution(
    h: GeneratingSet | CoreGraph,
    i: int,
    fringe: FringeDag | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> int:
    """Part of a_i(H) coming from quotients of rank < i and from -n^-rk(H)."""
    root, fringe = _root_and_fringe(h, fringe, cap)
    series = _fringe_series(root, fringe, i, max_rank=i - 1)
    return series[i] - (1 if root.rank == i else 0)


def average_fixed_points(
    w: Word,
    n: int,
    ambient_rank: int | None = None,
    cap: int = DEFAULT_NODE_CAP,
) -> Fraction:
    """Expected number of fixed points of the random permutation w(σ_1, ..., σ_k)."""
    if not w:
        return Fraction(n)
    k = ambient_rank if ambient_rank is not None else w.max_generator()
    return n * phi_closed_form(build_core_graph([w], k), n, cap=cap) + 1


def render_closed_form(fringe: FringeDag) -> str:
    """Φ_H(n) written as -1/n^rk plus one falling-factorial quotient per quotient graph."""

    def falling(m: int) -> str:
        factors = ["n" if i == 0 else f"(n-{i})" for i in range(m)]
        return "".join(factors) if factors else "1"

    r = fringe.root.rank
    terms = ["-1" if r == 0 else ("-1/n" if r == 1 else f"-1/n^{r}")]
    for g in fringe.nodes:
        num = "".join(f"(n-{i})" for i in range(1, g.vertex_count)) or "1"
        den = " * ".join(falling(e) for e in g.edge_counts if e) or "1"
        terms.append(f"{num}/[{den}]")
    return " + ".join(terms)

"""Permutation oracles: exhaustive enumeration of Hom(F_k, S_n) and Monte Carlo.

Points are 0-based here; point 0 plays the role of 1.  Words act on the
right: the leftmost letter is applied first.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

import numpy as np

from .words import GeneratingSet, Word

__all__ = [
    "Permutation",
    "EstimateReport",
    "BudgetExceeded",
    "PRNG_NAME",
    "DEFAULT_EXHAUSTIVE_BUDGET",
    "evaluate_word",
    "exhaustive_probability",
    "exhaustive_report",
    "monte_carlo_probability",
    "average_fixed_points_mc",
    "random_permutations",
]

PRNG_NAME = "numpy.PCG64"
# (5!)^2 tuples: n <= 5 with k = 2.
DEFAULT_EXHAUSTIVE_BUDGET = math.factorial(5) ** 2
_CHUNK = 100_000


class BudgetExceeded(ValueError):
    """Exhaustive enumeration would visit more tuples than allowed."""


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation of 0..{len(self.images) - 1}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        """Build from 1-based cycles, e.g. ``from_cycles(3, (1, 2))``."""
        images = list(range(n))
        for cycle in cycles:
            for a, b in zip(cycle, tuple(cycle[1:]) + (cycle[0],)):
                images[a - 1] = b - 1
        return cls(tuple(images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __len__(self) -> int:
        return len(self.images)

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self, then other."""
        return Permutation(tuple(other.images[i] for i in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def fixed_points(self) -> int:
        return sum(1 for i, j in enumerate(self.images) if i == j)


def evaluate_word(w: Word, sigmas: Sequence[Permutation]) -> Permutation:
    """Image of ``w`` under x_j -> sigmas[j-1]."""
    if not sigmas:
        raise ValueError("need at least one permutation")
    if w.max_generator() > len(sigmas):
        raise ValueError(f"{w} needs {w.max_generator()} permutations, got {len(sigmas)}")
    n = len(sigmas[0])
    inverses = [s.inverse() for s in sigmas]
    result = Permutation.identity(n)
    for a in w:
        result = result.then(sigmas[a - 1] if a > 0 else inverses[-a - 1])
    return result


@dataclass(frozen=True)
class EstimateReport:
    """Outcome of an oracle run.

    ``quantity`` is ``"probability"`` (all generators fix the point 1) or
    ``"mean_fixed_points"``.  Exhaustive runs carry the ``exact`` value and a
    zero standard error.
    """

    estimate: float
    standard_error: float
    trials: int
    seed: int | None
    exact: Fraction | None = None
    quantity: str = "probability"
    prng: str | None = PRNG_NAME

    @property
    def probability_estimate(self) -> float:
        return self.estimate

    def within(self, value: float, n_se: float = 5.0) -> bool:
        return abs(self.estimate - float(value)) <= n_se * self.standard_error

    def to_json(self) -> dict:
        return {
            "quantity": self.quantity,
            "estimate": self.estimate,
            "standard_error": self.standard_error,
            "trials": self.trials,
            "seed": self.seed,
            "prng": self.prng,
            "exact": None if self.exact is None else str(self.exact),
        }


def _gens(h: GeneratingSet | Sequence[Word]) -> tuple[int, list[Word]]:
    if isinstance(h, GeneratingSet):
        return h.ambient_rank, list(h.generators)
    words = list(h)
    return max((w.max_generator() for w in words), default=1) or 1, words


def exhaustive_probability(
    h: GeneratingSet,
    n: int,
    budget: int = DEFAULT_EXHAUSTIVE_BUDGET,
) -> Fraction:
    """Exact fraction of k-tuples in S_n^k under which every generator fixes 1."""
    k, words = _gens(h)
    total = math.factorial(n) ** k
    if total > budget:
        raise BudgetExceeded(f"(n!)^k = {total} tuples exceeds budget {budget}")
    perms = list(permutations(range(n)))
    inverses = []
    for p in perms:
        inv = [0] * n
        for i, j in enumerate(p):
            inv[j] = i
        inverses.append(tuple(inv))
    words = [w for w in words if w]
    hits = 0
    for idx in product(range(len(perms)), repeat=k):
        fwd = [perms[i] for i in idx]
        bwd = [inverses[i] for i in idx]
        for w in words:
            x = 0
            for a in w:
                x = fwd[a - 1][x] if a > 0 else bwd[-a - 1][x]
            if x != 0:
                break
        else:
            hits += 1
    return Fraction(hits, total)


def exhaustive_report(h: GeneratingSet, n: int, budget: int = DEFAULT_EXHAUSTIVE_BUDGET) -> EstimateReport:
    k, _ = _gens(h)
    p = exhaustive_probability(h, n, budget)
    return EstimateReport(float(p), 0.0, math.factorial(n) ** k, None, exact=p, prng=None)


def random_permutations(rng: np.random.Generator, n: int, size: int) -> np.ndarray:
    """``size`` uniform permutations of 0..n-1 as rows (Fisher-Yates per row)."""
    return rng.permuted(np.broadcast_to(np.arange(n), (size, n)), axis=1)


def _inverse_rows(perm: np.ndarray) -> np.ndarray:
    m, n = perm.shape
    inv = np.empty_like(perm)
    inv[np.arange(m)[:, None], perm] = np.arange(n)
    return inv


def _chunks(trials: int) -> list[int]:
    sizes = [_CHUNK] * (trials // _CHUNK)
    if trials % _CHUNK:
        sizes.append(trials % _CHUNK)
    return sizes


def _run_chunks(fn, trials: int, seed: int, workers: int) -> list:
    sizes = _chunks(trials)
    seeds = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, seeds))
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda job: fn(*job), jobs))
    return [fn(*job) for job in jobs]


def monte_carlo_probability(
    h: GeneratingSet,
    n: int,
    trials: int,
    seed: int,
    workers: int = 1,
) -> EstimateReport:
    """Seeded estimate of Prob[every generator of H fixes 1].

    Trials are split into chunks, each with a child seed spawned from
    ``seed``, so the result does not depend on ``workers``.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    k, words = _gens(h)
    words = [w for w in words if w]

    def run(size: int, seq: np.random.SeedSequence) -> int:
        rng = np.random.Generator(np.random.PCG64(seq))
        fwd = [random_permutations(rng, n, size) for _ in range(k)]
        bwd = [_inverse_rows(p) for p in fwd]
        rows = np.arange(size)
        ok = np.ones(size, dtype=bool)
        for w in words:
            x = np.zeros(size, dtype=np.intp)
            for a in w:
                x = (fwd[a - 1] if a > 0 else bwd[-a - 1])[rows, x]
            ok &= x == 0
        return int(ok.sum())

    hits = sum(_run_chunks(run, trials, seed, workers))
    p = hits / trials
    return EstimateReport(p, math.sqrt(p * (1 - p) / trials), trials, seed)


def average_fixed_points_mc(
    w: Word,
    n: int,
    trials: int,
    seed: int,
    ambient_rank: int | None = None,
    workers: int = 1,
) -> EstimateReport:
    """Seeded estimate of the mean number of fixed points of w(σ_1, ..., σ_k)."""
    if trials < 1:
        raise ValueError("trials must be positive")
    k = ambient_rank if ambient_rank is not None else max(w.max_generator(), 1)

    def run(size: int, seq: np.random.SeedSequence) -> tuple[float, float]:
        rng = np.random.Generator(np.random.PCG64(seq))
        fwd = [random_permutations(rng, n, size) for _ in range(k)]
        bwd = [_inverse_rows(p) for p in fwd]
        rows = np.arange(size)[:, None]
        images = np.broadcast_to(np.arange(n), (size, n)).copy()
        for a in w:
            images = (fwd[a - 1] if a > 0 else bwd[-a - 1])[rows, images]
        fixed = (images == np.arange(n)).sum(axis=1).astype(float)
        return float(fixed.sum()), float((fixed ** 2).sum())

    parts = _run_chunks(run, trials, seed, workers)
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / trials
    var = max(s2 / trials - mean ** 2, 0.0) * trials / max(trials - 1, 1)
    return EstimateReport(mean, math.sqrt(var / trials), trials, seed, quantity="mean_fixed_points")

import random

import pytest
from hypothesis import strategies as st

from stallings.words import GeneratingSet, Word, free_reduce


def reduced_words(k: int, min_size: int = 1, max_size: int = 6):
    letters = st.sampled_from([j for j in range(1, k + 1)] + [-j for j in range(1, k + 1)])
    return (
        st.lists(letters, min_size=min_size, max_size=max_size)
        .map(lambda xs: Word(free_reduce(xs)))
        .filter(lambda w: len(w) >= min_size)
    )


def generating_sets(k: int, max_gens: int = 3, max_size: int = 6):
    return st.lists(reduced_words(k, 1, max_size), min_size=1, max_size=max_gens).map(
        lambda ws: GeneratingSet(k, tuple(ws))
    )


def random_word(rng: random.Random, k: int, length: int) -> Word:
    letters: list[int] = []
    while len(letters) < length:
        a = rng.choice([j for j in range(1, k + 1)] + [-j for j in range(1, k + 1)])
        if letters and letters[-1] == -a:
            continue
        letters.append(a)
    return Word(tuple(letters))


def naive_fold(k: int, words) -> tuple[int, set[tuple[int, int, int]]]:
    """Fold a bouquet by repeatedly scanning for a pair of edges to identify.

    Deliberately slow and free of the library's union-find.  Returns the vertex
    count and the edge set with the basepoint relabelled 0.
    """
    edges: set[tuple[int, int, int]] = set()
    n = 1
    for w in words:
        cur = 0
        for i, a in enumerate(w):
            nxt = 0 if i == len(w) - 1 else n
            if nxt:
                n += 1
            j = abs(a)
            edges.add((j, cur, nxt) if a > 0 else (j, nxt, cur))
            cur = nxt
    alive = set(range(n)) if edges else {0}
    while True:
        found = None
        for e in edges:
            for f in edges:
                if e != f and e[0] == f[0] and (e[1] == f[1] or e[2] == f[2]):
                    found = (e[2], f[2]) if e[1] == f[1] else (e[1], f[1])
                    break
            if found:
                break
        if not found:
            break
        keep, drop = sorted(found)
        edges = {(j, keep if u == drop else u, keep if v == drop else v) for j, u, v in edges}
        alive.discard(drop)
    # prune hanging trees away from the basepoint
    while True:
        deg = {v: 0 for v in alive}
        for _, u, v in edges:
            deg[u] += 1
            deg[v] += 1
        leaves = [v for v in alive if v != 0 and deg[v] <= 1]
        if not leaves:
            break
        for v in leaves:
            alive.discard(v)
        edges = {e for e in edges if e[1] in alive and e[2] in alive}
    return len(alive), edges


def naive_accepts(edges, w: Word) -> bool:
    """Membership by reading w from 0 in an edge set, with no lookup tables."""
    cur = 0
    for a in w:
        j = abs(a)
        step = [v for (l, u, v) in edges if l == j and u == cur] if a > 0 else [
            u for (l, u, v) in edges if l == j and v == cur
        ]
        if not step:
            return False
        cur = step[0]
    return cur == 0


def set_partitions(items):
    items = list(items)
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


@pytest.fixture
def rng():
    return random.Random(20100101)


# criterion number -> list of (check, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def record(criterion: int, check: str, passed: bool, detail: str = "") -> bool:
    ACCEPTANCE.setdefault(criterion, []).append((check, bool(passed), detail))
    return bool(passed)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[criterion]
        failed = [f"{name} ({detail})" if detail else name for name, ok, detail in checks if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"criterion {criterion}: {status}  [{len(checks) - len(failed)}/{len(checks)} checks]"
        if failed:
            line += "  failing: " + "; ".join(failed)
        terminalreporter.write_line(line)

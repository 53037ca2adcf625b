import math

import pytest

from conftest import random_word
from stallings.algebraic import critical_count_for_power, primitivity_rank, primitivity_report
from stallings.core_graph import build_core_graph, trivial_graph, wedge_of_loops
from stallings.words import GeneratingSet, Word, parse_generating_set, parse_word


def divisors(d: int) -> int:
    return sum(1 for i in range(1, d + 1) if d % i == 0)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sum_of_squares(d):
    w = Word(tuple(j for i in range(1, d + 1) for j in (i, i)))
    report = primitivity_report(build_core_graph([w], 3))
    assert report.pi == d
    if d == 3:
        assert report.critical_subgroups == [wedge_of_loops(3)]


@pytest.mark.parametrize("d", [2, 3, 4, 6])
def test_power_words(d):
    u = parse_word("a b", 2)
    report = primitivity_report(build_core_graph([u ** d], 2))
    assert report.pi == 1
    assert len(report.critical_subgroups) == divisors(d) - 1
    if d <= 3:
        assert critical_count_for_power(u, d) == divisors(d) - 1


def test_power_critical_subgroups_are_roots():
    report = primitivity_report(build_core_graph([parse_word("a b", 2) ** 6], 2))
    expected = {build_core_graph([parse_word("a b", 2) ** e], 2) for e in (1, 2, 3)}
    assert set(report.critical_subgroups) == expected


def test_commutator():
    report = primitivity_report(parse_generating_set("a b A B", 2))
    assert report.pi == 2
    assert report.critical_subgroups == [wedge_of_loops(2)]
    js = report.to_json()
    assert js["pi"] == 2 and js["critical_subgroups"][0]["rank"] == 2


def test_primitive_and_trivial():
    assert primitivity_rank(parse_word("a b", 2), 2) == math.inf
    assert primitivity_report(parse_generating_set("a b", 2)).to_json()["pi"] == "infinity"
    trivial = primitivity_report(GeneratingSet(2))
    assert trivial.pi == 0 and trivial.degenerate
    assert trivial.critical_subgroups == [trivial_graph(2)]


def test_power_argument_checks():
    with pytest.raises(ValueError):
        critical_count_for_power(parse_word("a b", 2), 1)


def test_root_is_algebraic_and_critical_ranks(rng):
    for _ in range(20):
        g = build_core_graph([random_word(rng, 2, rng.randint(1, 7))], 2)
        report = primitivity_report(g)
        assert g in report.algebraic_extensions
        if report.pi != math.inf:
            assert 1 <= report.pi <= 2
            assert all(c.rank == report.pi for c in report.critical_subgroups)


def _is_proper_power(w: Word) -> bool:
    letters = list(w.letters)
    while len(letters) > 1 and letters[0] == -letters[-1]:
        letters = letters[1:-1]
    n = len(letters)
    return any(n % p == 0 and letters == letters[:p] * (n // p) for p in range(1, n))


def test_pi_one_iff_proper_power(rng):
    cases = [random_word(rng, 2, rng.randint(1, 4)) ** rng.randint(1, 3) for _ in range(40)]
    cases += [parse_word("b a a A A B", 2) * parse_word("a b a b", 2)]
    for w in cases:
        if not w:
            continue
        assert (primitivity_rank(w, 2) == 1) == _is_proper_power(w), w


def _shift(w: Word, by: int) -> Word:
    return Word(tuple(a + by if a > 0 else a - by for a in w))


def test_additivity_on_disjoint_words(rng):
    for _ in range(20):
        w1 = random_word(rng, 2, rng.randint(1, 4))
        w2 = _shift(random_word(rng, 2, rng.randint(1, 4)), 2)
        p1, p2 = primitivity_rank(w1, 4), primitivity_rank(w2, 4)
        assert primitivity_rank(w1 * w2, 4) == p1 + p2

from collections import Counter
from itertools import permutations

import pytest

from treechild import exact, words


def multiset_permutations(counts, length):
    """All distinct arrangements of the letter multiset, lexicographically."""
    if length == 0:
        yield ()
        return
    for x in sorted(counts):
        if counts[x] == 0:
            continue
        counts[x] -= 1
        for rest in multiset_permutations(counts, length - 1):
            yield (x,) + rest
        counts[x] += 1


def brute_force_members(d, n):
    """Independent oracle: filter all distinct multiset permutations."""
    counts = {i: d + 1 for i in range(1, n + 1)}
    return [
        w
        for w in multiset_permutations(counts, n * (d + 1))
        if words.is_member(w, d)
    ]


def test_membership_examples():
    assert words.is_member((1, 1, 2, 2, 1, 2), 2)
    assert not words.is_member((2, 2, 1, 1, 1, 2), 2)
    assert words.is_member(tuple([1] * 4), 3)  # single letter, d+1 copies


def test_membership_witness():
    pos, i, j = words.first_violation((2, 2, 1, 1, 1, 2), 2)
    assert (pos, i, j) == (3, 1, 2)
    # witness is checkable: after 3 letters, occ(1)=1 > d-2 but occ(2)=2
    prefix = (2, 2, 1)
    assert prefix[:pos].count(i) >= 2 - 1
    assert prefix[:pos].count(i) < prefix[:pos].count(j)


def test_malformed_words_rejected_distinctly():
    with pytest.raises(words.MalformedWordError):
        words.is_member((1, 1, 2), 2)  # bad length
    with pytest.raises(words.MalformedWordError):
        words.is_member((1, 1, 1, 1, 1, 1), 2)  # letter 2 missing
    with pytest.raises(words.MalformedWordError):
        words.is_member((1, 1, 1, 3, 3, 3), 2)  # letter out of range


def test_enumerate_words_d2_n2_exact_list():
    got = [words.word_to_str(w, 2) for w in words.enumerate_words(2, 2)]
    assert got == [
        "111222", "112122", "112212", "121122", "121212", "211122", "211212",
    ]


@pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (3, 1), (3, 2), (4, 2), (6, 2)])
def test_enumeration_matches_brute_force(d, n):
    enumerated = list(words.enumerate_words(d, n))
    assert enumerated == brute_force_members(d, n)
    assert len(enumerated) == words.c_count(d, n)


def test_enumeration_is_lexicographic_and_duplicate_free():
    stream = list(words.enumerate_words(2, 3))
    assert stream == sorted(set(stream))


def test_budget_exceeded():
    with pytest.raises(words.BudgetExceeded):
        list(words.enumerate_words(2, 6, budget=50))


def test_suffix_index_examples():
    assert words.suffix_index((1, 1, 1, 2, 2, 2), 2) == 2
    assert words.suffix_index((1, 1, 2, 2, 1, 2), 2) == 1
    assert words.suffix_index(tuple([1] * 4), 3) == 1
    with pytest.raises(ValueError):
        words.suffix_index((2, 2, 1, 1, 1, 2), 2)


@pytest.mark.parametrize("d,n", [(2, 2), (2, 3), (3, 2), (4, 2)])
def test_suffix_partition_matches_b_table(d, n):
    table = words.b_table_int(d, n)
    counts = Counter(
        words.suffix_index(w, d) for w in words.enumerate_words(d, n)
    )
    assert sum(counts.values()) == words.c_count(d, n)  # suffix_index is total
    for m in range(1, n + 1):
        assert counts.get(m, 0) == table.b(n, m)


def test_b_table_known_values():
    t2 = words.b_table_int(2, 2)
    assert (t2.b(1, 1), t2.b(2, 1), t2.b(2, 2)) == (1, 3, 4)
    t3 = words.b_table_int(3, 2)
    assert (t3.b(2, 1), t3.b(2, 2)) == (10, 15)
    assert t2.b(3, 5) == 0  # out of triangle


def test_b_table_rational_agrees_with_int():
    for d in (2, 3):
        n_max = 12 if d == 2 else 8
        assert words.b_table_int(d, n_max).rows == words.b_table_rational(d, n_max).rows


def test_c_count_examples():
    assert words.c_count(2, 2) == 7
    assert words.c_count(2, 3) == 106   # = TC(2) at (4,3) / 4!
    assert words.c_count(3, 2) == 25    # = TC(3) at (3,2) / 3!


@pytest.mark.parametrize(
    "d,n,expected",
    [(2, 8, 8485564550400), (4, 4, 1243704), (6, 3, 7524)],
)
def test_tc_max_count_against_fixtures(d, n, expected):
    assert words.tc_max_count(d, n) == expected
    assert exact.appendix_table(d)[(n, n - 1)] == expected


def test_bnn_identity():
    for d in (2, 3, 4, 5, 6):
        for n in range(2, 13):
            assert words.bnn_identity_check(d, n)


def test_prefix_closure_witnesses():
    # every non-member carries a checkable first violation, and the scan
    # up to just before it is clean
    d, n = 2, 2
    letters = (1, 1, 1, 2, 2, 2)
    for w in set(permutations(letters)):
        fv = words.first_violation(w, d)
        if fv is None:
            continue
        pos, i, j = fv
        prefix = w[:pos]
        assert j > i
        assert prefix.count(i) > d - 2
        assert prefix.count(i) < prefix.count(j)
        # one letter earlier there is no violation yet
        for p in range(1, pos):
            sub = w[:p]
            for a in range(1, n + 1):
                if sub.count(a) > d - 2:
                    assert all(
                        sub.count(a) >= sub.count(b) for b in range(a + 1, n + 1)
                    )


def test_cnk_words_count():
    assert words.cnk_words_count(1, 0) == 1
    assert words.cnk_words_count(3, 3) == words.c_count(2, 3)
    # frozen from exhaustive enumeration; feeds the exploratory report
    assert words.cnk_words_count(2, 1) == 7
    assert words.cnk_words_count(3, 0) == 15
    assert words.cnk_words_count(3, 1) == 57
    assert words.cnk_words_count(3, 2) == 106
    # tripling any other subset admits no words, so "any" agrees with "first"
    assert words.cnk_words_count(3, 1, tripled="any") == 57
    assert words.cnk_words_count(3, 1, tripled="last") == 0


def test_c_log_sequence_matches_exact():
    import math

    log_c = words.c_log_sequence(3, 30)
    for n in (1, 5, 17, 30):
        assert log_c[n] == pytest.approx(math.log(words.c_count(3, n)), rel=1e-12)


def test_word_to_str_formats():
    assert words.word_to_str((1, 2, 1), 2) == "121"
    assert words.word_to_str((10, 2), 10) == "10,2"


def test_btable_serialization():
    table = words.b_table_int(2, 3)
    assert "n,k,count" in table.to_csv()
    assert '"count": "4"' in table.to_json()

import math

import pytest

from treechild import exact


def test_factorial_basics():
    assert exact.factorial(0) == 1
    assert exact.factorial(5) == 120
    assert exact.factorial(8) == 40320
    with pytest.raises(ValueError):
        exact.factorial(-1)


def test_double_factorial_odd():
    assert exact.double_factorial_odd(-1) == 1
    assert exact.double_factorial_odd(0) == 1
    assert exact.double_factorial_odd(1) == 1
    assert exact.double_factorial_odd(5) == 15
    # (2n-3)!! at n=4 matches the k=0 column of every reference table
    assert exact.double_factorial_odd(2 * 4 - 3) == 15
    for d in exact.fixture_d_values():
        assert exact.appendix_table(d)[(4, 0)] == 15 or 4 not in exact.appendix_table(d).n_values
    with pytest.raises(ValueError):
        exact.double_factorial_odd(4)


def test_binomial():
    assert exact.binomial(4, 1) == 4
    assert exact.binomial(5, 2) == 10
    assert exact.binomial(3, 5) == 0
    assert exact.binomial(3, -1) == 0


@pytest.mark.parametrize(
    "d,n,k,expected",
    [
        (2, 2, 1, 2),
        (2, 4, 0, 15),
        (3, 4, 0, 15),
        (6, 4, 0, 15),
        (3, 3, 2, 60),   # C(3,2) * 6!/36
        (2, 3, 1, 18),   # C(3,1) * 4!/(2*2)
    ],
)
def test_otc_count_examples(d, n, k, expected):
    assert exact.otc_count(d, n, k) == expected


def test_otc_count_out_of_range_is_zero():
    assert exact.otc_count(2, 3, 3) == 0
    assert exact.otc_count(2, 3, -1) == 0
    assert exact.otc_count(5, 1, 1) == 0


def test_otc_count_exact_division_up_to_60():
    # the formula's numerator must be divisible by its denominator;
    # otc_count raises if not
    for d in (2, 3, 4, 5, 6):
        for n in range(1, 61):
            for k in range(n):
                exact.otc_count(d, n, k)


def test_otc_step_recurrence_identity():
    # k * OTC(n,k) = n * C(2n+(d-2)k-2, d) * OTC(n-1,k-1), the proof step
    for d in (2, 3, 4):
        for n in range(2, 30):
            for k in range(1, n):
                lhs = exact.otc_count(d, n, k) * k
                rhs = (
                    n
                    * exact.binomial(2 * n + (d - 2) * k - 2, d)
                    * exact.otc_count(d, n - 1, k - 1)
                )
                assert lhs == rhs


def test_otc_monotone_in_k_for_d3():
    for n in range(2, 40):
        row = [exact.otc_count(3, n, k) for k in range(n)]
        assert all(row[i] <= row[i + 1] for i in range(len(row) - 1))


def test_otc_total_examples():
    assert exact.otc_total(2, 2) == 3
    assert exact.otc_total(3, 2) == 3
    assert exact.otc_total(2, 1) == 1


def test_otc_dominated_by_tree_child_fixtures():
    for d in exact.fixture_d_values():
        table = exact.appendix_table(d)
        for (n, k), tc in table.entries.items():
            assert exact.otc_count(d, n, k) <= tc


@pytest.mark.parametrize(
    "d,n,k,expected",
    [(2, 4, 0, (3, 8)), (3, 3, 2, (6, 12)), (2, 2, 1, (2, 6))],
)
def test_node_counts(d, n, k, expected):
    assert exact.node_counts(d, n, k) == expected


def test_tc_upper_bound():
    bound, is_exact = exact.tc_upper_bound(2, 8, 6, 8485564550400)
    assert (bound, is_exact) == (4242782275200, True)
    # attained exactly at k = n-2 for d = 2
    assert exact.appendix_table(2)[(8, 6)] == bound

    bound, _ = exact.tc_upper_bound(3, 7, 5, 560319972030000)
    assert bound == 280159986015000
    assert exact.appendix_table(3)[(7, 5)] <= bound

    tc_max = 123456
    bound, is_exact = exact.tc_upper_bound(2, 5, 4, tc_max)
    assert bound == tc_max and is_exact  # k = n-1: empty product


def test_sandwich_and_step_inequalities_on_fixtures():
    sqrt_e = math.sqrt(math.e)
    for d in exact.fixture_d_values():
        table = exact.appendix_table(d)
        for n in table.n_values:
            tc_max = table[(n, n - 1)]
            total = table.row_sum(n)
            assert tc_max <= total <= sqrt_e * tc_max
            for k in range(n - 1):
                assert 2 * (n - k - 1) * table[(n, k)] <= table[(n, k + 1)]


def test_appendix_table_entries():
    assert exact.appendix_table(2)[(4, 3)] == 2544
    assert exact.appendix_table(3)[(3, 2)] == 150
    assert exact.appendix_table(6)[(5, 4)] == 483098464854720
    with pytest.raises(ValueError):
        exact.appendix_table(7)


def test_count_table_serialization():
    table = exact.appendix_table(2)
    csv = table.to_csv()
    assert csv.splitlines()[0] == "n,k,count"
    assert "4,3,2544" in csv
    parsed = exact.CountTable.from_json(table.to_json())
    assert parsed.entries == table.entries
    assert parsed.d == 2
    # counts are decimal strings in JSON
    assert '"count": "8485564550400"' in table.to_json()


def test_otc_count_log_matches_exact():
    for d in (2, 3, 5):
        for n in (5, 40, 200):
            for k in (0, n // 2, n - 1):
                log_exact = math.log(exact.otc_count(d, n, k))
                assert exact.otc_count_log(d, n, k) == pytest.approx(
                    log_exact, rel=1e-12
                )
    assert exact.otc_total_log(3, 50) == pytest.approx(
        math.log(exact.otc_total(3, 50)), rel=1e-12
    )

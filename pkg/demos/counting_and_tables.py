"""Walk through the exact counting layer.

Closed-form counts of one-component networks, the reference tables for
general tree-child networks, and the structural inequalities connecting
them.  Everything here is exact integer arithmetic.
"""

import math

from treechild import exact, words

print("One-component networks with n leaves and k reticulations (d = 3):")
for n in range(1, 7):
    row = [exact.otc_count(3, n, k) for k in range(n)]
    print(f"  n={n}: {row}  total={sum(row)}")

print()
print("The k=0 column is the phylogenetic tree count (2n-3)!!:")
for n in range(2, 7):
    print(f"  n={n}: {exact.otc_count(2, n, 0)} = {exact.double_factorial_odd(2 * n - 3)}")

print()
print("Reference table of general tree-child counts for d = 2:")
table = exact.appendix_table(2)
for n in table.n_values:
    print(f"  n={n}: {table.row(n)}")

print()
print("Maximally reticulated counts from the word recurrence (all tables):")
for d in exact.fixture_d_values():
    t = exact.appendix_table(d)
    n = max(t.n_values)
    print(f"  d={d}, n={n}: tc_max = {words.tc_max_count(d, n)} "
          f"(fixture {t[(n, n - 1)]})")

print()
print("Sandwich: the maximal column pins down the row sum within sqrt(e):")
for n in table.n_values:
    ratio = table.row_sum(n) / table[(n, n - 1)]
    print(f"  n={n}: row_sum / tc_max = {ratio:.6f}  (sqrt(e) = {math.sqrt(math.e):.6f})")

print()
print("The iterated free-edge bound, exact at k = n-2 for d = 2:")
for n in range(3, 9):
    bound, is_exact = exact.tc_upper_bound(2, n, n - 2, table[(n, n - 1)])
    print(f"  n={n}: TC(n, n-2) = {table[(n, n - 2)]}, bound = {bound}, "
          f"attained exactly: {table[(n, n - 2)] == bound}")

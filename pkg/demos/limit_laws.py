"""Limit behavior of the reticulation count of a random one-component network.

Three regimes in the multiplicity d: a central limit theorem after
centering at n - sqrt(n) for d = 2, a discrete Bessel law for the
deficiency n-1-R at d = 3, and full degeneracy for d >= 4.
"""

from treechild import distributions as dist

print("d = 2: standardized law approaches N(0,1):")
for n in (200, 500, 2000):
    moments, sup = dist.normal_limit_check(n)
    print(f"  n={n:5d}: mean={moments.mean:+.4f} var={moments.variance:.4f} "
          f"sup-CDF distance={sup:.4f}")

print()
print("d = 3: deficiency n-1-R approaches Bessel(1,2):")
print(f"  P(Bessel=0) = {dist.bessel_pmf(0):.6f}, "
      f"P(Bessel=1) = {dist.bessel_pmf(1):.6f}")
for n in (100, 1000, 10000):
    print(f"  n={n:5d}: total variation distance = {dist.bessel_limit_check(n):.2e}")

print()
print("d >= 4: the maximal reticulation count dominates outright:")
for d in (4, 5, 6):
    print(f"  d={d}: P(R = n-1) at n=100 is {dist.degenerate_check(d, 100):.6f}")

print()
print("The driving expansion: counts just below the maximum shrink by")
print("explicit factors (shown as prediction/exact ratios at n = 2000):")
import math

from treechild import exact

for d in (3, 4):
    for k in (0, 1, 2):
        pred = dist.otc_tail_expansion(d, 2000, k)
        true = exact.otc_count_log(d, 2000, 2000 - 1 - k)
        print(f"  d={d}, deficiency {k}: exact/predicted = {math.exp(true - pred):.5f}")

print()
print("Exploratory: the conjectured Poisson(1/2) limit for general tree-child")
print("networks against the n = 8 reference row (never asserted):")
report = dist.conjecture_poisson_report(exact.appendix_table(2))
for row in report["comparison"][:4]:
    print(f"  deficiency {row['deficiency']}: empirical {row['empirical']:.4f} "
          f"vs poisson {row['poisson_half']:.4f}")

"""Log-space evaluation of the asymptotic counting formulas.

Everything here works with natural logarithms in double precision: ln n!
comes from log-gamma, never from converting big integers to floats.  The
module covers the Airy function and its largest root, the linear recurrence
whose diagonal carries the stretched-exponential growth of the maximal
reticulation counts, the Theta-expression they satisfy, the first-order
asymptotics of the one-component totals, least-squares extraction of the
stretched-exponential coefficient, and numeric sweeps of the sub- and
super-solution inequalities.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext

import numpy as np

from .words import c_log_sequence

_LOG2 = math.log(2.0)


# ---------------------------------------------------------------------------
# Airy function.
# ---------------------------------------------------------------------------

_AIRY_WINDOW = 8.0
_SERIES_LOG_CUTOFF = 6.0

# standard values Ai(0) = 3^(-2/3)/Gamma(2/3) and -Ai'(0) = 3^(-1/3)/Gamma(1/3)
_AI0 = Decimal("0.355028053887817239260063186004183176397979")
_AIP0 = Decimal("0.258819403792806798405183560189203963479091")


def _airy_series(x: float) -> float:
    # float version of the Maclaurin pair, for the log branch where the
    # exponential cancellation stays below ~1e-9 relative
    c1 = float(_AI0)
    c2 = float(_AIP0)
    x3 = x * x * x
    f = t = 1.0
    g = u = x
    k = 0
    while (abs(t) > 1e-19 * abs(f) + 1e-300 or abs(u) > 1e-19 * abs(g) + 1e-300):
        t *= x3 / ((3 * k + 2) * (3 * k + 3))
        u *= x3 / ((3 * k + 3) * (3 * k + 4))
        f += t
        g += u
        k += 1
        if k > 200:
            break
    return c1 * f - c2 * g


def airy_ai(x: float) -> float:
    """Ai(x) from the two Maclaurin series; accurate on |x| <= 8.

    Ai(x) = Ai(0) f(x) + Ai'(0) g(x); the two series grow like e^(2|x|^1.5/3)
    before cancelling at positive x, so the sums run in 40-digit decimal
    arithmetic to keep the result accurate to ~1e-10 absolute at the window
    edge.
    """
    if abs(x) > _AIRY_WINDOW:
        raise ValueError(f"airy_ai series window is |x| <= {_AIRY_WINDOW}, got {x}")
    with localcontext() as ctx:
        ctx.prec = 40
        xd = Decimal(x)
        x3 = xd * xd * xd
        f = t = Decimal(1)
        g = u = xd
        tiny = Decimal("1e-42")
        for k in range(200):
            t = t * x3 / ((3 * k + 2) * (3 * k + 3))
            u = u * x3 / ((3 * k + 3) * (3 * k + 4))
            f += t
            g += u
            if abs(t) < tiny * (1 + abs(f)) and abs(u) < tiny * (1 + abs(g)):
                break
        return float(_AI0 * f - _AIP0 * g)


def _airy_ai_log(x: float) -> float:
    """ln Ai(x) for x > a1 (where Ai is positive), any magnitude.

    Series below the cancellation cutoff; beyond it the standard asymptotic
    expansion with adaptive truncation at the smallest term, whose error is
    ~e^(-2*zeta) and negligible at the crossover.
    """
    if x <= _SERIES_LOG_CUTOFF:
        v = _airy_series(x)
        if v <= 0.0:
            return -math.inf  # at (or numerically below) the largest root
        return math.log(v)
    zeta = (2.0 / 3.0) * x ** 1.5
    s = 1.0
    term = 1.0
    prev = math.inf
    k = 0
    while True:
        term *= (6 * k + 1) * (6 * k + 5) / (72.0 * (k + 1))
        k += 1
        contrib = term / zeta**k
        if contrib >= prev or contrib < 1e-18:
            break
        s += (-1) ** k * contrib
        prev = contrib
        if k > 60:
            break
    return -zeta - 0.25 * math.log(x) - math.log(2.0 * math.sqrt(math.pi)) + math.log(s)


def airy_root_a1() -> float:
    """Largest root of Ai, by bisection on [-3, -2]."""
    lo, hi = -3.0, -2.0
    flo = airy_ai(lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = airy_ai(mid)
        if fmid == 0.0:
            return mid
        if (flo < 0) == (fmid < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    return 0.5 * (lo + hi)


_A1_CACHE: list[float] = []


def _a1() -> float:
    if not _A1_CACHE:
        _A1_CACHE.append(airy_root_a1())
    return _A1_CACHE[0]


# ---------------------------------------------------------------------------
# Parameters of the Theta-result.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticParams:
    d: int
    lam: float      # (d+1)^(d-1)/(d-1)!
    gamma: float    # 4*lam
    alpha: float    # -d(3d-1)/(2(d+1))
    beta: float     # ((d-1)/(d+1))^(2/3)
    big_b: float    # 2(d-1)/(d+1)
    a1: float


def params(d: int) -> AsymptoticParams:
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    lam = (d + 1) ** (d - 1) / math.factorial(d - 1)
    return AsymptoticParams(
        d=d,
        lam=lam,
        gamma=4.0 * lam,
        alpha=-d * (3 * d - 1) / (2.0 * (d + 1)),
        beta=((d - 1) / (d + 1)) ** (2.0 / 3.0),
        big_b=2.0 * (d - 1) / (d + 1),
        a1=_a1(),
    )


def mu(d: int, n: int, m: int) -> float:
    den = (d + 1) * n + (d - 1) * m - 2 * (d + 1)
    if den == 0:
        raise ZeroDivisionError(f"mu pole at d={d}, n={n}, m={m}")
    return 1.0 + 2.0 * (d - 1) / den


def nu(d: int, n: int, m: int) -> float:
    if n + m == 0:
        raise ZeroDivisionError(f"nu pole at d={d}, n={n}, m={m}")
    out = 1.0
    for i in range(2, d + 1):
        out *= 1.0 - 2.0 * (m + i) / ((d + 1) * (n + m))
    return out


# ---------------------------------------------------------------------------
# The e-recurrence.
# ---------------------------------------------------------------------------

@dataclass
class ESequence:
    """Rows of the rescaled recurrence, kept as logarithms.

    log_rows[n, m] = ln e_{n,m} for m <= keep_m (-inf where the entry is
    zero, including odd n-m parity); rows are built one at a time with
    per-row rescaling, so absolute logs stay finite far beyond double range.
    """

    d: int
    n_max: int
    keep_m: int
    log_rows: np.ndarray = field(repr=False)

    def log_e(self, n: int, m: int) -> float:
        if not (2 <= n <= self.n_max and 0 <= m <= self.keep_m):
            raise ValueError(f"(n={n}, m={m}) outside stored range")
        return float(self.log_rows[n, m])

    def diagonal(self) -> tuple[np.ndarray, np.ndarray]:
        """(j, ln e_{2j,0}) for all stored even rows."""
        ns = np.arange(2, self.n_max + 1, 2)
        return ns // 2, self.log_rows[ns, 0]


def e_sequence(d: int, n_max: int, keep_m: int = 64) -> ESequence:
    """Run the recurrence from e_{2,0} = 1 up to row n_max.

    e_{n,m} = mu(n,m) e_{n-1,m+1} + nu(n,m) e_{n-1,m-1}; both coefficients
    are checked positive on the populated range (a negative one would mean
    the recurrence is being used outside its domain).
    """
    if d < 2 or n_max < 3:
        raise ValueError(f"need d >= 2 and n_max >= 3, got d={d}, n_max={n_max}")
    keep = min(keep_m, n_max)
    log_rows = np.full((n_max + 1, keep + 1), -np.inf)
    size = n_max + 2
    work = np.zeros(size)
    work[0] = 1.0  # e_{2,0} = 1; the Theta-constant absorbs the true scale
    log_scale = 0.0
    log_rows[2, 0] = 0.0
    for n in range(3, n_max + 1):
        hi = min(n, size - 2)
        m = np.arange(0, hi + 1)
        mu_v = 1.0 + 2.0 * (d - 1) / ((d + 1) * n + (d - 1) * m - 2 * (d + 1))
        nu_v = np.ones(hi + 1)
        for i in range(2, d + 1):
            nu_v *= 1.0 - 2.0 * (m + i) / ((d + 1) * (n + m))
        if np.any(nu_v[: max(n - 1, 1)] <= 0.0):
            raise ArithmeticError(f"negative coefficient in row n={n}")
        new = np.zeros(size)
        new[: hi + 1] = mu_v * work[1 : hi + 2]
        new[1 : hi + 1] += nu_v[1:] * work[:hi]
        top = new.max()
        new /= top
        log_scale += math.log(top)
        work = new
        lim = min(keep, hi)
        with np.errstate(divide="ignore"):
            log_rows[n, : lim + 1] = np.log(work[: lim + 1]) + log_scale
    return ESequence(d=d, n_max=n_max, keep_m=keep, log_rows=log_rows)


# ---------------------------------------------------------------------------
# Closed asymptotic expressions (logs, constants included where known).
# ---------------------------------------------------------------------------

def theta_tc_max(d: int, n: int, a1: float | None = None) -> float:
    """ln of (n!)^d gamma^n e^(3 a1 beta n^(1/3)) n^alpha (constant omitted)."""
    p = params(d)
    if a1 is None:
        a1 = p.a1
    return (
        d * math.lgamma(n + 1)
        + n * math.log(p.gamma)
        + 3.0 * a1 * p.beta * n ** (1.0 / 3.0)
        + p.alpha * math.log(n)
    )


def fixed_k_asymptotic(d: int, n: int, k: int) -> float:
    """ln of the fixed-k first-order term for general tree-child counts."""
    if k < 0:
        raise ValueError(f"k must be >= 0, got {k}")
    return (
        ((4 - d) * k - 1) * _LOG2
        - k * math.lgamma(d + 1)
        - math.lgamma(k + 1)
        - 0.5 * math.log(math.pi)
        + math.lgamma(n + 1)
        + n * _LOG2
        + ((4 - d) * k - 1.5) * math.log(n)
    )


def otc_total_asymptotic(d: int, n: int) -> float:
    """ln of the first-order asymptotics of the one-component total."""
    if d == 2:
        return (
            -math.log(4.0 * math.pi) - 0.5
            + 2.0 * math.lgamma(n + 1)
            + n * _LOG2
            + 2.0 * math.sqrt(n)
            - 2.25 * math.log(n)
        )
    if d == 3:
        const = _bessel_i1_at_2() * math.sqrt(3.0) / (9.0 * math.pi)
        return (
            math.log(const)
            + 3.0 * math.lgamma(n + 1)
            + n * math.log(4.5)
            - 3.0 * math.log(n)
        )
    const = (
        math.factorial(d)
        / (d ** (d - 0.5) * (2.0 * math.pi) ** ((d - 1) / 2.0))
    )
    return (
        math.log(const)
        + d * math.lgamma(n + 1)
        + n * (d * math.log(d) - math.lgamma(d + 1))
        - 1.5 * (d - 1) * math.log(n)
    )


def _bessel_i1_at_2() -> float:
    # I_1(2) = sum_k 1/(k! (k+1)!)
    s = 0.0
    term = 1.0
    for k in range(0, 40):
        if k:
            term /= k * (k + 1)
        s += term
    return s


# ---------------------------------------------------------------------------
# Stretched-exponential fitting.
# ---------------------------------------------------------------------------

@dataclass
class FitResult:
    c0: float
    c1: float
    c2: float
    target_c1: float | None = None

    @property
    def rel_err(self) -> float | None:
        if self.target_c1 is None:
            return None
        return abs(self.c1 - self.target_c1) / abs(self.target_c1)

    def to_json(self) -> str:
        payload = {"c0": self.c0, "c1": self.c1, "c2": self.c2}
        if self.target_c1 is not None:
            payload["target_c1"] = self.target_c1
            payload["rel_err"] = self.rel_err
        return json.dumps(payload)


def stretched_fit(
    ns: np.ndarray, log_values: np.ndarray, target_c1: float | None = None
) -> FitResult:
    """Least squares for ln v(n) = c0 + c1 n^(1/3) + c2 ln n.

    Fitted over the upper half of the window only, where the lower-order
    terms the model omits have died down.
    """
    ns = np.asarray(ns, dtype=float)
    log_values = np.asarray(log_values, dtype=float)
    keep = np.isfinite(log_values)
    ns, log_values = ns[keep], log_values[keep]
    if len(ns) < 50:
        raise ValueError(f"need at least 50 points, got {len(ns)}")
    cut = ns >= np.median(ns)
    ns, log_values = ns[cut], log_values[cut]
    design = np.column_stack(
        [np.ones_like(ns), ns ** (1.0 / 3.0), np.log(ns)]
    )
    sol, _, rank, _ = np.linalg.lstsq(design, log_values, rcond=None)
    if rank < 3:
        raise ValueError("singular system in stretched_fit")
    return FitResult(c0=float(sol[0]), c1=float(sol[1]), c2=float(sol[2]),
                     target_c1=target_c1)


def fit_e_diagonal(d: int, j_max: int, keep_m: int = 4) -> FitResult:
    """Fit the growth of e_{2j,0} 4^(-j); target coefficient 3 a1 beta."""
    seq = e_sequence(d, 2 * j_max, keep_m=keep_m)
    js, diag = seq.diagonal()
    series = diag - js * math.log(4.0)
    p = params(d)
    return stretched_fit(js, series, target_c1=3.0 * p.a1 * p.beta)


# ---------------------------------------------------------------------------
# Theta-residuals against the exact maximal-reticulation counts.
# ---------------------------------------------------------------------------

def theta_residual_window(
    d: int,
    lo: int,
    hi: int,
    a1: float | None = None,
    log_c: np.ndarray | None = None,
) -> dict:
    """Residual ln TC_{n,n-1} - theta over n in [lo, hi].

    Returns the residual array with its oscillation (max - min) and the
    dyadic differences |res(2n) - res(n)| for n = lo, 2lo, ... while 2n
    stays inside the window.
    """
    if not 2 <= lo < hi:
        raise ValueError(f"bad window [{lo}, {hi}]")
    if log_c is None:
        log_c = c_log_sequence(d, hi - 1)
    ns = np.arange(lo, hi + 1)
    res = np.array(
        [
            math.lgamma(n + 1) + float(log_c[n - 1]) - theta_tc_max(d, n, a1=a1)
            for n in ns
        ]
    )
    dyadic = []
    n = lo
    while 2 * n <= hi:
        dyadic.append(abs(res[2 * n - lo] - res[n - lo]))
        n *= 2
    return {
        "d": d,
        "lo": lo,
        "hi": hi,
        "residuals": res,
        "oscillation": float(res.max() - res.min()),
        "dyadic_differences": dyadic,
    }


# ---------------------------------------------------------------------------
# Sub- and super-solution sweeps.
# ---------------------------------------------------------------------------

@dataclass
class PropReport:
    d: int
    check: str
    q_coeff: int
    eps: float
    eta: float | None
    violations: list[tuple[int, int, float, float]]
    n_values: list[int]
    samples: int

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def n_threshold(self) -> int | None:
        """Smallest sampled n with no violations at or above it."""
        bad = {n for n, _, _, _ in self.violations}
        threshold = None
        for n in sorted(self.n_values, reverse=True):
            if n in bad:
                break
            threshold = n
        return threshold

    def to_json(self) -> str:
        return json.dumps(
            {
                "d": self.d,
                "check": self.check,
                "q_coeff": self.q_coeff,
                "eps": self.eps,
                "eta": self.eta,
                "samples": self.samples,
                "violations": [
                    {"n": n, "m": m, "lhs": lhs, "rhs": rhs}
                    for n, m, lhs, rhs in self.violations
                ],
                "n_threshold": self.n_threshold,
            }
        )


def default_q_coeff(d: int) -> int:
    """Literal reading of the printed prefactor coefficient: 3d^2 + 1."""
    return 3 * d * d + 1


def candidate_q_coeff(d: int) -> int:
    """Plausible intended form 3d^2 + d - 1 (same value 13 at d = 2)."""
    return 3 * d * d + d - 1


def resolved_q_coeff(d: int) -> int:
    """The coefficient that makes the 1/n terms of both inequalities cancel.

    Expanding both sides at m = 0 to order 1/n, the inequalities can only
    hold for large n in both directions if the 1/n contributions agree
    exactly, leaving the +-n^(-7/6) terms as the margin; solving the
    balance gives 3d^2 + 12d - 11 (confirmed in 50-digit arithmetic: the
    other candidates are violated at m = 0 for every n, with deficit
    ~ (q - (3d^2+12d-11))/(6(d+1)) * 2/n).
    """
    return 3 * d * d + 12 * d - 11


def default_prop_n_values() -> list[int]:
    return list(range(200, 1001, 50)) + list(range(1250, 5001, 250))


def _prop_sweep(
    d: int,
    n_values: list[int],
    eps: float,
    q_coeff: int,
    eta: float | None,
    m_exponent: float,
    super_side: bool,
) -> PropReport:
    p = params(d)
    a1 = p.a1
    b13 = p.big_b ** (1.0 / 3.0)
    b23 = p.big_b ** (2.0 / 3.0)
    quad = (2 * d - 1) / (3.0 * (d + 1))
    lin = q_coeff / (6.0 * (d + 1))
    mid = (3 * d * d - 5 * d + 4) / (3.0 * (d + 1))

    def prefactor(n: int, m: int) -> float:
        out = 1.0 - quad * m * m / n - lin * m / n
        if eta is not None:
            out += eta * m**4 / n**2
        return out

    def log_ai(n: int, m: int) -> float:
        return _airy_ai_log(a1 + b13 * (m + 1) / n ** (1.0 / 3.0))

    violations: list[tuple[int, int, float, float]] = []
    samples = 0
    for n in n_values:
        s_n = 2.0 + a1 * b23 / n ** (2.0 / 3.0) - mid / n
        s_n += n**-(7.0 / 6.0) if super_side else -(n ** -(7.0 / 6.0))
        m_cap = int(n**m_exponent)
        for m in range(0, m_cap):
            samples += 1
            la0 = log_ai(n, m)
            la_up = log_ai(n - 1, m + 1)
            la_dn = log_ai(n - 1, m - 1)  # m=0 hits ln Ai(a1) = -inf: term 0
            top = max(la0, la_up, la_dn)
            if top == -math.inf:
                continue
            lhs = prefactor(n, m) * s_n * math.exp(la0 - top)
            rhs = mu(d, n, m) * prefactor(n - 1, m + 1) * math.exp(la_up - top)
            if la_dn > -math.inf:
                rhs += nu(d, n, m) * prefactor(n - 1, m - 1) * math.exp(la_dn - top)
            slack = 1e-12 * max(abs(lhs), abs(rhs), 1.0)
            bad = lhs < rhs - slack if super_side else lhs > rhs + slack
            if bad:
                violations.append((n, m, lhs, rhs))
    return PropReport(
        d=d,
        check="supersolution" if super_side else "subsolution",
        q_coeff=q_coeff,
        eps=eps,
        eta=eta,
        violations=violations,
        n_values=list(n_values),
        samples=samples,
    )


def check_subsolution(
    d: int,
    n_values: list[int] | None = None,
    eps: float = 0.1,
    q_coeff: int | None = None,
) -> PropReport:
    """Sweep the sub-solution inequality over sampled n and 0 <= m < n^(2/3-eps)."""
    if n_values is None:
        n_values = default_prop_n_values()
    if q_coeff is None:
        q_coeff = default_q_coeff(d)
    return _prop_sweep(
        d, n_values, eps, q_coeff, eta=None,
        m_exponent=2.0 / 3.0 - eps, super_side=False,
    )


def check_supersolution(
    d: int,
    n_values: list[int] | None = None,
    eps: float = 0.1,
    eta: float | None = None,
    q_coeff: int | None = None,
) -> PropReport:
    """Sweep the super-solution inequality over sampled n and 0 <= m < n^(1-eps)."""
    if n_values is None:
        n_values = default_prop_n_values()
    if q_coeff is None:
        q_coeff = default_q_coeff(d)
    if eta is None:
        eta = (2 * d - 1) ** 2 / (18.0 * (d + 1) ** 2) + 0.01
    return _prop_sweep(
        d, n_values, eps, q_coeff, eta=eta,
        m_exponent=1.0 - eps, super_side=True,
    )


# ---------------------------------------------------------------------------
# The explicit lower-bound product.
# ---------------------------------------------------------------------------

def s_tilde(d: int, i: int) -> float:
    p = params(d)
    return (
        2.0
        + p.a1 * p.big_b ** (2.0 / 3.0) / i ** (2.0 / 3.0)
        - (3 * d * d - 5 * d + 4) / (3.0 * (d + 1) * i)
        - i ** -(7.0 / 6.0)
    )


def lower_bound_product(d: int, n: int, start: int | None = None) -> float:
    """ln of the product of s-tilde factors up to index 2n.

    The first couple of factors are negative (the bound only claims
    large-n behavior); start defaults to the first positive factor, and a
    non-positive factor after that raises.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if start is None:
        start = 1
        while s_tilde(d, start) <= 0.0:
            start += 1
    total = 0.0
    for i in range(start, 2 * n + 1):
        f = s_tilde(d, i)
        if f <= 0.0:
            raise ArithmeticError(f"non-positive factor s_tilde({d}, {i}) = {f}")
        total += math.log(f)
    return total


# ---------------------------------------------------------------------------
# Airy-shape profile of an e-row.
# ---------------------------------------------------------------------------

def airy_profile_deviation(seq: ESequence, n: int, count: int = 30) -> float:
    """Max relative deviation between a normalized e-row and the Airy shape.

    Compares e_{n,m}/e_{n,m0} with Ai(a1 + B^(1/3)(m+1)/n^(1/3)) normalized
    the same way, over the first `count` admissible m.
    """
    p = params(seq.d)
    parity = n % 2
    ms = [m for m in range(seq.keep_m + 1) if m % 2 == parity][:count]
    if len(ms) < count:
        raise ValueError(f"row does not hold {count} admissible entries")
    m0 = ms[0]
    base = seq.log_e(n, m0)
    ai_base = _airy_ai_log(p.a1 + p.big_b ** (1 / 3) * (m0 + 1) / n ** (1 / 3))
    worst = 0.0
    for m in ms:
        ratio_e = math.exp(seq.log_e(n, m) - base)
        ratio_ai = math.exp(
            _airy_ai_log(p.a1 + p.big_b ** (1 / 3) * (m + 1) / n ** (1 / 3))
            - ai_base
        )
        worst = max(worst, abs(ratio_e - ratio_ai) / ratio_ai)
    return worst

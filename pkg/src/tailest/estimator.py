"""Tail exponent estimators for samples restricted to a bounded domain.

The classical Hill estimator infers the tail exponent mu of a power-law-like
density from the largest order statistics, implicitly assuming the data
extends to infinity.  When the observations are confined to a finite interval
[L, R] (external cuts, saturated detectors, administrative limits) that
assumption breaks down and the Hill estimate can be badly biased.  This
module provides both the classical estimator and a bounded-domain estimator
that solves the exact mean-log identity for a truncated power law, either by
direct root finding or by the multiplicative fixed-point iteration seeded
with the Hill value.

Conventions: samples are held in descending order (X_1 is the largest value),
mu = alpha + 1, and a window (l, r) selects X_r >= ... >= X_l with 1-based
indices, so X_l is the smallest included observation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

__all__ = [
    "EstimationError",
    "WindowError",
    "DegenerateSampleError",
    "DegenerateBoundsError",
    "SingularityError",
    "SolverFailureError",
    "OrderedSample",
    "TailWindow",
    "SolverConfig",
    "DEFAULT_CONFIG",
    "EstimateResult",
    "HillPlotSeries",
    "mean_log",
    "mean_log_simpson",
    "hill_estimate",
    "correction",
    "correction_derivative",
    "gfun",
    "solve_direct",
    "solve_iterative",
    "improved_estimate",
    "hill_plot_series",
]


class EstimationError(ValueError):
    """Base class for all estimation failures."""


class WindowError(EstimationError):
    """Window indices are out of range or do not select >= 2 points."""


class DegenerateSampleError(EstimationError):
    """The selected observations carry no usable spread."""


class DegenerateBoundsError(EstimationError):
    """Domain bounds are non-positive or coincide."""


class SingularityError(EstimationError):
    """Evaluation requested exactly at a pole of the function."""


class SolverFailureError(EstimationError):
    """Root search or iteration could not proceed."""


class OrderedSample:
    """Strictly positive observations stored as reversed order statistics.

    The constructor accepts values in any order and sorts them descending,
    so estimates depend only on the multiset of observations.  Logarithms
    are cached because every estimator consumes them.
    """

    __slots__ = ("values", "log_values")

    def __init__(self, values):
        arr = np.asarray(values, dtype=float)
        if arr.ndim != 1:
            arr = arr.reshape(-1)
        if arr.size < 2:
            raise DegenerateSampleError("need at least 2 observations, got %d" % arr.size)
        if not np.all(np.isfinite(arr)):
            raise DegenerateSampleError("sample contains non-finite values")
        if np.any(arr <= 0.0):
            raise DegenerateSampleError("sample contains non-positive values")
        arr = np.sort(arr)[::-1].copy()
        arr.setflags(write=False)
        logs = np.log(arr)
        logs.setflags(write=False)
        self.values = arr
        self.log_values = logs

    def __len__(self) -> int:
        return self.values.size

    def __repr__(self) -> str:
        return "OrderedSample(n=%d, high=%g, low=%g)" % (
            len(self), self.values[0], self.values[-1])


@dataclass(frozen=True)
class TailWindow:
    """Index pair selecting the sub-sample X_r ... X_l (1-based, r < l)."""

    l: int  # index of the smallest included observation
    r: int  # index of the largest included observation

    def __post_init__(self):
        if self.r < 1 or self.l <= self.r:
            raise WindowError("need 1 <= r < l, got l=%d r=%d" % (self.l, self.r))

    @property
    def k(self) -> int:
        """Number of observations in the window."""
        return self.l - self.r + 1


def full_window(sample: OrderedSample) -> TailWindow:
    """Window covering the whole sample."""
    return TailWindow(l=len(sample), r=1)


def _check_window(sample: OrderedSample, window: TailWindow) -> None:
    if window.l > len(sample):
        raise WindowError(
            "window l=%d exceeds sample length %d" % (window.l, len(sample)))


@dataclass(frozen=True)
class SolverConfig:
    """Numerical knobs shared by the direct and iterative solvers."""

    alpha_tolerance: float = 1e-10
    residual_tolerance: float = 1e-10
    max_iterations: int = 100
    bracket_limit: float = 1e4  # |alpha| cap for the bracketing search

    def __post_init__(self):
        if self.alpha_tolerance <= 0 or self.residual_tolerance <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.bracket_limit <= 0:
            raise ValueError("bracket_limit must be positive")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True)
class EstimateResult:
    """One tail estimate with its method and convergence diagnostics."""

    alpha: float
    mu: float  # always alpha + 1
    method: str  # "hill" | "improved-direct" | "improved-iterative"
    iterations: int  # update steps taken; 0 for hill and improved-direct
    converged: bool
    window_low: float  # X_l, smallest included observation
    window_high: float  # X_r, largest included observation
    k: int  # window size; 0 for a bare solve_direct on explicit bounds
    mean_log: float


@dataclass
class HillPlotSeries:
    """Aligned per-l series of classical and bounded-domain estimates.

    Entries are None where the corresponding estimate was degenerate or the
    solver failed; the series itself is always complete in l.
    """

    l_values: list[int]
    mu_hill: list[float | None]
    mu_improved: list[float | None]

    def __len__(self) -> int:
        return len(self.l_values)


# --------------------------------------------------------------------------
# Mean-log statistics


def mean_log(sample: OrderedSample, window: TailWindow) -> float:
    """Plain average of ln(X_j) over the window, in [ln X_l, ln X_r]."""
    _check_window(sample, window)
    return float(np.mean(sample.log_values[window.r - 1:window.l]))


def mean_log_simpson(sample: OrderedSample, window: TailWindow) -> float:
    """Trapezoid-weighted average of ln(X_j): end points carry half weight.

    Requires at least three points.  The difference from :func:`mean_log`
    is bounded by (ln X_r - ln X_l) / (2 (k - 1)) and is negligible for
    windows of realistic size.
    """
    _check_window(sample, window)
    k = window.k
    if k < 3:
        raise WindowError("trapezoid-weighted mean needs k >= 3, got k=%d" % k)
    logs = sample.log_values[window.r - 1:window.l]
    return float((0.5 * (logs[0] + logs[-1]) + np.sum(logs[1:-1])) / (k - 1))


# --------------------------------------------------------------------------
# Classical Hill estimator


def hill_estimate(sample: OrderedSample, k: int) -> EstimateResult:
    """Classical Hill estimate from the k largest observations.

    H_k = mean(ln X_1 .. ln X_k) - ln X_k, alpha = 1 / H_k, mu = alpha + 1.
    """
    if k < 2 or k > len(sample):
        raise WindowError("k must be in [2, %d], got %d" % (len(sample), k))
    m = float(np.mean(sample.log_values[:k]))
    h = m - float(sample.log_values[k - 1])
    if h == 0.0:
        raise DegenerateSampleError("top-%d observations are all equal" % k)
    alpha = 1.0 / h
    return EstimateResult(
        alpha=alpha,
        mu=alpha + 1.0,
        method="hill",
        iterations=0,
        converged=True,
        window_low=float(sample.values[k - 1]),
        window_high=float(sample.values[0]),
        k=k,
        mean_log=m,
    )


# --------------------------------------------------------------------------
# Bounded-domain correction math
#
# All three functions below are evaluated through delta = alpha * ln(R / L).
# The textbook ratio forms overflow once |alpha| * ln(R/L) is large and lose
# every digit near alpha = 0; the expm1 rewrites are algebraically identical
# and stay accurate over the whole real line.

_SERIES_DELTA = 1e-6  # below this |delta| the Taylor forms are exact to 1 ulp


def _log_bounds(low: float, high: float) -> tuple[float, float]:
    if low <= 0.0 or high <= 0.0 or low == high:
        raise DegenerateBoundsError(
            "bounds must be positive and distinct, got L=%r R=%r" % (low, high))
    return math.log(low), math.log(high)


def correction(alpha: float, L: float, R: float) -> float:
    """Finite-domain correction C(alpha, L, R).

    C = (ln L * L^-alpha - ln R * R^-alpha) / (L^-alpha - R^-alpha),
    computed as ln L - (ln R - ln L) / expm1(delta).  Symmetric under
    exchanging L and R; diverges like -1/alpha at alpha = 0.
    """
    ln_l, ln_r = _log_bounds(L, R)
    if alpha == 0.0:
        raise SingularityError("correction has a pole at alpha = 0")
    span = ln_r - ln_l
    delta = alpha * span
    if abs(delta) < _SERIES_DELTA:
        # three-term Bernoulli series of delta / expm1(delta)
        return ln_l - 1.0 / alpha + span / 2.0 - delta * span / 12.0
    if delta > 700.0:  # expm1 overflows; the term is below 1e-300 anyway
        return ln_l - span * math.exp(-delta)
    return ln_l - span / math.expm1(delta)


def correction_derivative(alpha: float, L: float, R: float) -> float:
    """Derivative of :func:`correction` with respect to alpha.

    D = R^alpha L^alpha (ln L - ln R)^2 / (L^alpha - R^alpha)^2, an even
    function of delta, computed as span^2 * e^t / expm1(t)^2 with t = |delta|.
    D is strictly positive and diverges like 1/alpha^2 at alpha = 0.
    """
    ln_l, ln_r = _log_bounds(L, R)
    span = ln_r - ln_l
    t = abs(alpha * span)
    if t < _SERIES_DELTA:
        if alpha == 0.0:
            return math.inf
        return 1.0 / (alpha * alpha) - span * span / 12.0 + t * t * span * span / 240.0
    if t > 350.0:  # expm1(t)^2 would overflow; D ~ span^2 e^-t there
        return span * span * math.exp(-t)
    em = math.expm1(t)
    return span * span * (em + 1.0) / (em * em)


def gfun(alpha: float, L: float, R: float) -> float:
    """Theoretical mean of ln(x) under an exact power law x^-(alpha+1) on [L, R].

    G(alpha) = 1/alpha + C(alpha, L, R), extended continuously through the
    removable singularity at alpha = 0 where G(0) = (ln L + ln R) / 2.
    G is strictly decreasing with limits ln R at -inf and ln L at +inf.
    """
    if not (0.0 < L < R):
        raise DegenerateBoundsError("need 0 < L < R, got L=%r R=%r" % (L, R))
    ln_l = math.log(L)
    ln_r = math.log(R)
    span = ln_r - ln_l
    delta = alpha * span
    if abs(delta) < _SERIES_DELTA:
        # 1/alpha cancels against the pole of C; series of the remainder
        return 0.5 * (ln_l + ln_r) - delta * span / 12.0 + delta ** 3 * span / 720.0
    return 1.0 / alpha + correction(alpha, L, R)


def _iteration_denominator(delta: float) -> float:
    """alpha^2 * D(alpha, L, R) - 1 expressed in delta; lies in (-1, 0]."""
    t = abs(delta)
    if t < 0.01:  # below this the -1 cancellation costs digits; series instead
        d2 = delta * delta
        return -d2 / 12.0 * (1.0 - d2 / 20.0)
    if t > 350.0:
        return -1.0
    em = math.expm1(t)
    return t * t * (em + 1.0) / (em * em) - 1.0


# --------------------------------------------------------------------------
# Solvers


def solve_direct(mean_log: float, L: float, R: float,
                 config: SolverConfig = DEFAULT_CONFIG) -> EstimateResult:
    """Solve G(alpha) = mean_log for alpha by safeguarded bracketing.

    G is strictly decreasing, so any mean_log strictly inside
    (ln L, ln R) has exactly one root.  The bracket starts at [-1, 1] and
    grows geometrically up to ``config.bracket_limit``; refinement
    alternates secant and bisection steps until the bracket is narrower
    than ``config.alpha_tolerance``.
    """
    if not (0.0 < L < R):
        raise DegenerateBoundsError("need 0 < L < R, got L=%r R=%r" % (L, R))
    ln_l = math.log(L)
    ln_r = math.log(R)
    if not (ln_l < mean_log < ln_r):
        raise DegenerateSampleError(
            "mean log %r outside (ln L, ln R) = (%r, %r)" % (mean_log, ln_l, ln_r))

    def f(a: float) -> float:
        return gfun(a, L, R) - mean_log

    # Grow the bracket until f(lo) >= 0 >= f(hi) (f inherits G's monotonicity).
    lo, hi = -1.0, 1.0
    flo, fhi = f(lo), f(hi)
    while flo < 0.0:
        if lo <= -config.bracket_limit:
            raise SolverFailureError(
                "no bracket within |alpha| <= %g" % config.bracket_limit)
        lo = max(lo * 2.0, -config.bracket_limit)
        flo = f(lo)
    while fhi > 0.0:
        if hi >= config.bracket_limit:
            raise SolverFailureError(
                "no bracket within |alpha| <= %g" % config.bracket_limit)
        hi = min(hi * 2.0, config.bracket_limit)
        fhi = f(hi)

    best_x, best_f = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
    use_secant = True
    for _ in range(200):
        if hi - lo <= config.alpha_tolerance or best_f == 0.0:
            break
        x = None
        if use_secant and fhi != flo:
            x = hi - fhi * (hi - lo) / (fhi - flo)
            # reject secant points hugging an endpoint; bisection cleans up
            margin = 0.01 * (hi - lo)
            if not (lo + margin < x < hi - margin):
                x = None
        if x is None:
            x = 0.5 * (lo + hi)
        use_secant = not use_secant
        fx = f(x)
        if abs(fx) < abs(best_f):
            best_x, best_f = x, fx
        if fx > 0.0:
            lo, flo = x, fx
        elif fx < 0.0:
            hi, fhi = x, fx
        else:
            break

    alpha = best_x
    return EstimateResult(
        alpha=alpha,
        mu=alpha + 1.0,
        method="improved-direct",
        iterations=0,
        converged=abs(best_f) <= config.residual_tolerance,
        window_low=L,
        window_high=R,
        k=0,
        mean_log=mean_log,
    )


def improved_estimate(sample: OrderedSample, window: TailWindow,
                      config: SolverConfig = DEFAULT_CONFIG) -> EstimateResult:
    """Bounded-domain estimate over a window, solved directly.

    Equates the window's empirical mean log to G(alpha) with L = X_l and
    R = X_r and returns the unique root; mu = alpha + 1.
    """
    _check_window(sample, window)
    low = float(sample.values[window.l - 1])
    high = float(sample.values[window.r - 1])
    if low == high:
        raise DegenerateSampleError("window values are all equal to %g" % low)
    m = mean_log(sample, window)
    result = solve_direct(m, low, high, config)
    return replace(result, k=window.k)


def solve_iterative(sample: OrderedSample, window: TailWindow,
                    config: SolverConfig = DEFAULT_CONFIG) -> EstimateResult:
    """Bounded-domain estimate via the multiplicative fixed-point iteration.

    Starts from the Hill value alpha_1 = 1 / (mean_log - ln X_l) and applies

        alpha' = alpha * (1 + (alpha * (m - C) - 1) / (alpha^2 * D - 1))

    until successive iterates differ by less than ``config.alpha_tolerance``
    or ``config.max_iterations`` updates have been taken.  Fixed points
    coincide with the roots of G(alpha) = m.  Non-convergence is reported
    via ``converged=False``, not an exception, so callers can fall back to
    :func:`solve_direct`.
    """
    _check_window(sample, window)
    low = float(sample.values[window.l - 1])
    high = float(sample.values[window.r - 1])
    if low == high:
        raise DegenerateSampleError("window values are all equal to %g" % low)
    m = mean_log(sample, window)
    ln_low = math.log(low)
    span = math.log(high) - ln_low
    if m == ln_low:
        raise DegenerateSampleError("mean log equals ln X_l; Hill seed undefined")

    alpha = 1.0 / (m - ln_low)  # Hill seed
    iterations = 0
    converged = False
    for _ in range(config.max_iterations):
        denom = _iteration_denominator(alpha * span)
        if denom == 0.0:
            raise SolverFailureError(
                "iteration denominator alpha^2 D - 1 vanished at alpha=%r" % alpha)
        numer = alpha * (m - correction(alpha, low, high)) - 1.0
        alpha_next = alpha * (1.0 + numer / denom)
        iterations += 1
        if not math.isfinite(alpha_next):
            raise SolverFailureError("iteration diverged at step %d" % iterations)
        step = abs(alpha_next - alpha)
        alpha = alpha_next
        if step < config.alpha_tolerance:
            converged = True
            break
    if converged and abs(gfun(alpha, low, high) - m) > config.residual_tolerance:
        converged = False
    return EstimateResult(
        alpha=alpha,
        mu=alpha + 1.0,
        method="improved-iterative",
        iterations=iterations,
        converged=converged,
        window_low=low,
        window_high=high,
        k=window.k,
        mean_log=m,
    )


# --------------------------------------------------------------------------
# Generalised Hill plot


def hill_plot_series(sample: OrderedSample, r: int,
                     config: SolverConfig = DEFAULT_CONFIG) -> HillPlotSeries:
    """Per-l series of classical and bounded-domain estimates.

    For each l from r+1 to n the classical entry uses the top-l points
    (k = l) and the improved entry uses the window (l, r).  Degenerate
    windows and solver failures leave a None at that l.
    """
    n = len(sample)
    if r < 1 or r >= n:
        raise WindowError("r must be in [1, %d), got %d" % (n, r))
    l_values: list[int] = []
    hill_mu: list[float | None] = []
    improved_mu: list[float | None] = []
    for l in range(r + 1, n + 1):
        l_values.append(l)
        try:
            hill_mu.append(hill_estimate(sample, l).mu)
        except EstimationError:
            hill_mu.append(None)
        try:
            res = improved_estimate(sample, TailWindow(l=l, r=r), config)
            improved_mu.append(res.mu if res.converged else None)
        except EstimationError:
            improved_mu.append(None)
    return HillPlotSeries(l_values=l_values, mu_hill=hill_mu, mu_improved=improved_mu)

"""Brute-force iteration of both equations, with log-space magnitude tracking.

Solution magnitudes accumulate as log10 |x_n| (the ratio cycle with points
near 760 drives |x_n| across hundreds of orders of magnitude before any trend
is readable); direct-space values are reconstructed only on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .outcomes import (
    CONVERGES_TO_EQUILIBRIUM,
    CONVERGES_TO_TWO_CYCLE,
    CONVERGES_TO_ZERO,
    DIVERGES_TO_INFINITY,
    ITERATION_STOPS,
    UNDETERMINED,
)
from .ratio_map import Parameters

__all__ = [
    "RatioTrajectory",
    "SolutionTrajectory",
    "LimitReport",
    "iterate_ratio",
    "iterate_solution",
    "detect_ratio_limit",
    "empirical_class",
    "subsequence_monotonicity",
    "INCREASING",
    "DECREASING",
    "MIXED",
]

COMPLETED = "completed"
HIT_ZERO = "hit_zero"
ESCAPED_NEGATIVE = "escaped_negative_unrecoverable"
STOPPED_DIVISION_BY_ZERO = "stopped_division_by_zero"
OVERFLOWED_BUDGET = "overflowed_budget"

INCREASING = "increasing"
DECREASING = "decreasing"
MIXED = "mixed"

DEFAULT_ZERO_GUARD = 1e-300
#: log10 |x| thresholds for the empirical divergence / vanishing calls
THETA_UP = 12.0
THETA_DOWN = -12.0

_LOG10_TIE = 5e-15  # |delta log10| below this is a tie (1e-14 relative per step)


@dataclass(frozen=True)
class RatioTrajectory:
    values: list
    status: str


@dataclass(frozen=True)
class SolutionTrajectory:
    """Orbit of the second-order equation, stored as (sign, log10 |x|) pairs.

    Index 0 holds x_{-1}; index k holds x_{k-1}.  ``ratios[k]`` is t_k, so
    log_magnitudes[k + 1] = log_magnitudes[k] + log10 |t_k| for k >= 1.
    """

    log_magnitudes: list
    signs: list
    ratios: list
    status: str
    first_index: int = -1

    def __len__(self):
        return len(self.log_magnitudes)

    def value(self, n: int) -> float:
        """x_n in direct space; only representable while |log10| < 300."""
        i = n - self.first_index
        lm = self.log_magnitudes[i]
        if abs(lm) >= 300.0:
            raise OverflowError(f"|x_{n}| is 10^{lm:.1f}, not representable")
        return self.signs[i] * 10.0 ** lm


@dataclass(frozen=True)
class LimitReport:
    kind: str  # "equilibrium" | "two_cycle" | "none"
    values: tuple
    residual: float


def _phi_terms(params):
    return params.a, params.b, params.c, params.d


def iterate_ratio(
    params: Parameters,
    t0: float,
    n: int,
    zero_guard: float = DEFAULT_ZERO_GUARD,
) -> RatioTrajectory:
    """Iterate the ratio map up to n steps from t0.

    Stops with status ``hit_zero`` when |t| falls under zero_guard (the
    second-order iteration would divide by zero there).
    """
    if t0 == 0.0:
        raise ValueError("t0 must be nonzero")
    if zero_guard <= 0.0:
        raise ValueError("zero_guard must be positive")
    a, b, c, d = _phi_terms(params)
    values = [t0]
    t = t0
    status = COMPLETED
    for _ in range(n):
        if abs(t) < zero_guard:
            status = HIT_ZERO
            break
        t = (((a * t + b) * t + c) * t + d) / (t * t * t)
        values.append(t)
    else:
        # a long negative tail means the orbit is outside the recovery region
        trailing_neg = 0
        for v in reversed(values):
            if v < 0.0:
                trailing_neg += 1
            else:
                break
        if trailing_neg > 3:
            status = ESCAPED_NEGATIVE
    return RatioTrajectory(values=values, status=status)


def iterate_solution(
    params: Parameters,
    x_minus1: float,
    x0: float,
    n: int,
    zero_guard: float = DEFAULT_ZERO_GUARD,
) -> SolutionTrajectory:
    """Orbit of the second-order equation in log-magnitude + sign form."""
    if x_minus1 == 0.0 or x0 == 0.0:
        raise ValueError("initial conditions must be nonzero")
    t0 = x0 / x_minus1
    rt = iterate_ratio(params, t0, n, zero_guard)
    logs = [math.log10(abs(x_minus1)), math.log10(abs(x0))]
    signs = [1 if x_minus1 > 0 else -1, 1 if x0 > 0 else -1]
    status = COMPLETED
    for t in rt.values[1:]:
        lm = logs[-1] + math.log10(abs(t))
        if not math.isfinite(lm):
            status = OVERFLOWED_BUDGET
            break
        logs.append(lm)
        signs.append(signs[-1] * (1 if t > 0 else -1))
    if rt.status == HIT_ZERO:
        status = STOPPED_DIVISION_BY_ZERO
    return SolutionTrajectory(
        log_magnitudes=logs, signs=signs, ratios=rt.values, status=status
    )


def _spread_ok(tail, tol):
    m = sum(tail) / len(tail)
    return (max(tail) - min(tail)) <= tol * max(1.0, abs(m)), m


def detect_ratio_limit(traj: RatioTrajectory, tol: float = 1e-8, window: int = 64) -> LimitReport:
    """Classify the tail of a ratio orbit as equilibrium, 2-cycle, or neither.

    Equilibrium: the last ``window`` values agree to tol.  2-cycle: even and
    odd tails each agree to tol but sit more than 10 tol apart.  Reported
    values are tail means; the residual is the phi-closure defect.
    """
    if window < 4:
        raise ValueError("need window >= 4")
    vals = traj.values
    if len(vals) < window:
        return LimitReport(kind="none", values=(), residual=math.inf)
    tail = vals[-window:]
    ok, m = _spread_ok(tail, tol)
    if ok:
        return LimitReport(kind="equilibrium", values=(m,), residual=max(abs(v - m) for v in tail))
    even, odd = tail[0::2], tail[1::2]
    ok_e, me = _spread_ok(even, tol)
    ok_o, mo = _spread_ok(odd, tol)
    if ok_e and ok_o and abs(me - mo) > 10.0 * tol * max(1.0, abs(me), abs(mo)):
        lo, hi = sorted((me, mo))
        res = max(max(abs(v - me) for v in even), max(abs(v - mo) for v in odd))
        return LimitReport(kind="two_cycle", values=(lo, hi), residual=res)
    return LimitReport(kind="none", values=(), residual=math.inf)


def _trend(logs, frac=0.1):
    k = max(10, int(len(logs) * frac))
    k = min(k, len(logs) - 1)
    return logs[-1] - logs[-1 - k]


def _tail_values(logs, signs, count):
    if any(abs(lm) >= 300.0 for lm in logs[-count:]):
        return None
    return [s * 10.0 ** lm for s, lm in zip(signs[-count:], logs[-count:])]


def _stabilized(logs, signs, tol, window):
    xs = _tail_values(logs, signs, 2 * window)
    if xs is None:
        return None
    tail = xs[-window:]
    m = sum(tail) / len(tail)
    if m != 0.0 and (max(tail) - min(tail)) <= tol * abs(m):
        return CONVERGES_TO_EQUILIBRIUM
    even, odd = tail[0::2], tail[1::2]
    me, mo = sum(even) / len(even), sum(odd) / len(odd)
    scale = max(abs(me), abs(mo))
    if scale > 0.0 and (
        max(even) - min(even) <= tol * scale
        and max(odd) - min(odd) <= tol * scale
        and abs(me - mo) > 10.0 * tol * scale
    ):
        return CONVERGES_TO_TWO_CYCLE
    return None


def empirical_class(
    params: Parameters,
    x_minus1: float,
    x0: float,
    budget: int = 100000,
    theta_up: float = THETA_UP,
    theta_down: float = THETA_DOWN,
    tol: float = 1e-8,
    window: int = 64,
    zero_guard: float = DEFAULT_ZERO_GUARD,
) -> str:
    """Brute-force oracle: iterate and call the asymptotic class from evidence.

    Divergence / vanishing require crossing theta_up / theta_down decades with
    a confirming trend over the trailing 10% of steps; bounded orbits are
    called once their tail (or its even/odd split) stabilizes.
    """
    if budget < 1000:
        raise ValueError("need budget >= 1000")
    if x_minus1 == 0.0 or x0 == 0.0:
        raise ValueError("initial conditions must be nonzero")
    a, b, c, d = _phi_terms(params)
    t = x0 / x_minus1
    lm = math.log10(abs(x0))
    sign = 1 if x0 > 0 else -1
    logs = [lm]
    signs = [sign]
    check_every = max(window, 256)
    for step in range(1, budget + 1):
        if abs(t) < zero_guard:
            return ITERATION_STOPS
        t = (((a * t + b) * t + c) * t + d) / (t * t * t)
        lm += math.log10(abs(t))
        if not math.isfinite(lm):
            return DIVERGES_TO_INFINITY if lm > 0 else CONVERGES_TO_ZERO
        sign *= 1 if t > 0 else -1
        logs.append(lm)
        signs.append(sign)
        if step % check_every == 0 or step == budget:
            if lm > theta_up and _trend(logs) > 0.0:
                return DIVERGES_TO_INFINITY
            if lm < theta_down and _trend(logs) < 0.0:
                return CONVERGES_TO_ZERO
            if len(logs) >= 2 * window:
                verdict = _stabilized(logs, signs, tol, window)
                if verdict is not None:
                    return verdict
    return UNDETERMINED


def _cmp_step(s1, l1, s2, l2):
    """Direction from x1 to x2 given (sign, log10 |x|) pairs: 1, -1, or 0 (tie)."""
    if s1 != s2:
        return 1 if s2 > s1 else -1
    if abs(l2 - l1) <= _LOG10_TIE:
        return 0
    if l2 > l1:
        return s1
    return -s1


def subsequence_monotonicity(
    traj: SolutionTrajectory,
    stride: int,
    offset: int,
    tail_fraction: float = 0.25,
) -> str:
    """Strict-majority direction of x_{stride*k + offset} over its trailing part.

    Steps smaller than 1e-14 relative count as ties; a subsequence shorter
    than 8 elements reports ``mixed``.
    """
    if stride not in (1, 2, 4):
        raise ValueError("stride must be 1, 2, or 4")
    if not 0 <= offset < stride:
        raise ValueError("need 0 <= offset < stride")
    if not 0.0 < tail_fraction <= 1.0:
        raise ValueError("need 0 < tail_fraction <= 1")
    start = -traj.first_index + offset  # position of x_offset
    idx = list(range(start, len(traj.log_magnitudes), stride))
    if len(idx) < 8:
        return MIXED
    k = max(2, int(len(idx) * tail_fraction))
    idx = idx[-k:]
    inc = dec = 0
    for i, j in zip(idx, idx[1:]):
        step = _cmp_step(traj.signs[i], traj.log_magnitudes[i], traj.signs[j], traj.log_magnitudes[j])
        if step > 0:
            inc += 1
        elif step < 0:
            dec += 1
    pairs = len(idx) - 1
    if inc > dec and inc * 2 > pairs:
        return INCREASING
    if dec > inc and dec * 2 > pairs:
        return DECREASING
    return MIXED

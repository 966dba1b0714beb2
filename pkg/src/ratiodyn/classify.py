"""Decision trees mapping an identified ratio limit to a verdict for {x_n}.

The theorems only ever give sufficient conditions; every case they leave open
is reported as undetermined rather than guessed.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

from .criteria import S_second_at_q, R_second_at_1, kappa, l_quantity
from .cycles import TwoCycle, find_two_cycles
from .outcomes import (
    CONVERGES_TO_EQUILIBRIUM,
    CONVERGES_TO_TWO_CYCLE,
    CONVERGES_TO_ZERO,
    DIVERGES_TO_INFINITY,
    HYPOTHESIS_VIOLATED,
    ITERATION_STOPS,
    UNDETERMINED,
)
from .ratio_map import (
    Equilibrium,
    Parameters,
    classify_multiplier,
    critical_points,
    equilibria,
    phi,
    phi_prime,
)
from .simulate import (
    DECREASING,
    DEFAULT_ZERO_GUARD,
    INCREASING,
    RatioTrajectory,
    SolutionTrajectory,
    COMPLETED,
    detect_ratio_limit,
    empirical_class,
    subsequence_monotonicity,
)

__all__ = [
    "Verdict",
    "classify_equilibrium_limit",
    "classify_cycle_limit",
    "classify_remark",
    "classify",
]

# monotonic-structure descriptors attached to verdicts
EVEN_ODD_OPPOSITE = "one_of_even_odd_increasing_other_decreasing"
WHOLE_MONOTONE = "whole_sequence_monotone"
WHOLE_INCREASING = "whole_sequence_increasing"
WHOLE_DECREASING = "whole_sequence_decreasing"
EVEN_AND_ODD_INCREASING = "even_and_odd_increasing"
EVEN_AND_ODD_MONOTONE = "even_and_odd_monotone"
FOUR_PHASE_ALTERNATING = "four_phase_two_increasing_two_decreasing"
FOUR_PHASE_INCREASING = "four_phase_increasing"
FOUR_PHASE_DECREASING = "four_phase_decreasing"

#: the ratio orbit must land on the limit within this many steps (and stay)
#: for the exact-landing (preimage set) branch to fire
LANDING_STEPS = 50
LANDING_TOL = 1e-12


@dataclass(frozen=True)
class Verdict:
    asymptotic_class: str
    rule: str
    monotonic_structure: str | None = None
    conditional: bool = False
    notes: str = ""


def classify_equilibrium_limit(
    params: Parameters,
    eq: Equilibrium,
    orbit_evidence: str | None = None,
    band: float = 1e-9,
    eps_crit: float = 1e-9,
) -> Verdict:
    """Verdict for an orbit whose ratios converge to the equilibrium ``eq``.

    ``orbit_evidence`` ("increasing" / "decreasing") is only consulted in the
    neutral case sigma = -1, where the theorem branches on the eventual
    monotonicity of {x_n} itself.
    """
    t = eq.value
    if abs(phi(params, t) - t) > 1e-6 * max(1.0, abs(t)):
        raise ValueError(f"{t!r} is not an equilibrium of the ratio map")
    if t > 1.0 + band:
        return Verdict(DIVERGES_TO_INFINITY, "T1.a")
    if t < 1.0 - band:
        return Verdict(CONVERGES_TO_ZERO, "T1.b")
    a, b, c, d = params.a, params.b, params.c, params.d
    if abs(a + b + c + d - 1.0) > 1e-9:
        raise ValueError("equilibrium at 1 requires a + b + c + d = 1")
    sigma = b + 2.0 * c + 3.0 * d
    if abs(sigma) < 1.0 - eps_crit:
        structure = EVEN_ODD_OPPOSITE if sigma > 0.0 else WHOLE_MONOTONE
        return Verdict(CONVERGES_TO_EQUILIBRIUM, "T1.c1", structure)
    if abs(sigma + 1.0) <= eps_crit:
        if orbit_evidence == DECREASING:
            return Verdict(CONVERGES_TO_EQUILIBRIUM, "T1.c2", WHOLE_DECREASING)
        if orbit_evidence == INCREASING:
            if c > -3.0 * d:
                return Verdict(DIVERGES_TO_INFINITY, "T1.c2", WHOLE_INCREASING)
            return Verdict(
                UNDETERMINED, "T1.c2", WHOLE_INCREASING,
                notes="increasing with c <= -3d: outcome not covered",
            )
        return Verdict(UNDETERMINED, "T1.c2", notes="no orbit monotonicity evidence")
    if abs(sigma - 1.0) <= eps_crit:
        if R_second_at_1(params) > 0.0:
            return Verdict(DIVERGES_TO_INFINITY, "T1.c3", EVEN_AND_ODD_INCREASING)
        return Verdict(
            UNDETERMINED, "T1.c3", EVEN_AND_ODD_INCREASING,
            notes="R''(1) <= 0: outcome not covered",
        )
    return Verdict(
        HYPOTHESIS_VIOLATED, "T1.c",
        notes="|phi'(1)| > 1: ratios cannot converge to 1 off the preimage set",
    )


def _as_unit(cycle):
    if cycle.unit_product:
        return cycle
    return dataclasses.replace(cycle, unit_product=True)


def classify_cycle_limit(
    params: Parameters,
    cycle: TwoCycle,
    orbit_evidence: str | None = None,
    band: float = 1e-9,
    eps_crit: float = 1e-9,
) -> Verdict:
    """Verdict for an orbit whose ratios converge to the 2-cycle ``cycle``.

    ``orbit_evidence`` is only consulted when the multiplier equals 1, where
    the theorem branches on whether the even/odd subsequences increase."""
    p, q = cycle.p, cycle.q
    if (
        abs(phi(params, p) - q) > 1e-6 * max(1.0, q)
        or abs(phi(params, q) - p) > 1e-6 * max(1.0, p)
    ):
        raise ValueError(f"({p!r}, {q!r}) is not a 2-cycle of the ratio map")
    pq = cycle.product
    if pq > 1.0 + band:
        return Verdict(DIVERGES_TO_INFINITY, "T2.a")
    if pq < 1.0 - band:
        return Verdict(CONVERGES_TO_ZERO, "T2.b")
    mu = cycle.multiplier
    if abs(mu) < 1.0 - eps_crit:
        structure = FOUR_PHASE_ALTERNATING if mu < 0.0 else EVEN_AND_ODD_MONOTONE
        return Verdict(CONVERGES_TO_TWO_CYCLE, "T2.c1", structure)
    if abs(mu - 1.0) <= eps_crit:
        if orbit_evidence == DECREASING:
            return Verdict(CONVERGES_TO_TWO_CYCLE, "T2.c2", EVEN_AND_ODD_MONOTONE)
        if orbit_evidence == INCREASING:
            if kappa(params, _as_unit(cycle)) > 0.0:
                return Verdict(DIVERGES_TO_INFINITY, "T2.c2", EVEN_AND_ODD_MONOTONE)
            return Verdict(
                UNDETERMINED, "T2.c2", EVEN_AND_ODD_MONOTONE,
                notes="increasing with kappa <= 0: outcome not covered",
            )
        return Verdict(UNDETERMINED, "T2.c2", notes="no orbit monotonicity evidence")
    if abs(mu + 1.0) <= eps_crit:
        unit = _as_unit(cycle)
        l = l_quantity(params, unit)
        if l < 0.0:
            return Verdict(CONVERGES_TO_TWO_CYCLE, "T2.c3", FOUR_PHASE_DECREASING)
        if l > 0.0:
            if S_second_at_q(params, unit) > 0.0:
                return Verdict(DIVERGES_TO_INFINITY, "T2.c3", FOUR_PHASE_INCREASING)
            return Verdict(
                UNDETERMINED, "T2.c3", FOUR_PHASE_INCREASING,
                notes="l > 0 with S''(q) <= 0: outcome not covered",
            )
        return Verdict(UNDETERMINED, "T2.c3", notes="l = 0: outcome not covered")
    return Verdict(
        HYPOTHESIS_VIOLATED, "T2.c",
        notes="|phi'(p) phi'(q)| > 1: ratios cannot converge to the cycle off the preimage set",
    )


def classify_remark(params: Parameters, tol: float = 1e-9) -> Verdict | None:
    """Trapping-interval verdict for parameter regions where the ratio orbit
    need not converge; always conditional (its hypotheses come from results
    that cannot be checked here).

    Applies when positive critical points exist, every equilibrium sits below
    the minimum point x_m, and the trapping interval lies on the positive axis.
    """
    cps = critical_points(params)
    if cps is None:
        return None
    eqs = equilibria(params, tol)
    if any(e.value >= cps.x_m for e in eqs):
        return None
    f1 = phi(params, cps.x_m)
    if f1 <= 0.0:
        return None
    if f1 >= 1.0:
        return Verdict(
            DIVERGES_TO_INFINITY, "R1", conditional=True,
            notes=f"phi(x_m) = {f1!r} >= 1",
        )
    f2 = phi(params, f1)
    if f2 <= 1.0:
        return Verdict(
            CONVERGES_TO_ZERO, "R1", conditional=True,
            notes=f"phi^2(x_m) = {f2!r} <= 1",
        )
    return None


def _solution_from_ratios(x_minus1, x0, ratio_values):
    logs = [math.log10(abs(x_minus1)), math.log10(abs(x0))]
    signs = [1 if x_minus1 > 0 else -1, 1 if x0 > 0 else -1]
    for t in ratio_values[1:]:
        logs.append(logs[-1] + math.log10(abs(t)))
        signs.append(signs[-1] * (1 if t > 0 else -1))
    return SolutionTrajectory(
        log_magnitudes=logs, signs=signs, ratios=list(ratio_values), status=COMPLETED
    )


def _landing_index(values, points):
    """First step at which the orbit sits on the limit set (1e-12 relative)
    and never leaves; None if it leaves again or lands too late."""
    def on_limit(t):
        return any(abs(t - v) <= LANDING_TOL * max(1.0, abs(v)) for v in points)

    first = None
    for k, t in enumerate(values):
        if on_limit(t):
            first = k
            break
    if first is None or first > LANDING_STEPS or first > len(values) - 2:
        return None
    if all(on_limit(t) for t in values[first:]):
        return first
    return None


def _nearest_equilibrium(eqs, value):
    best = None
    for e in eqs:
        if abs(e.value - value) <= 1e-3 * max(1.0, abs(value)):
            if best is None or abs(e.value - value) < abs(best.value - value):
                best = e
    return best


def _nearest_cycle(cycles, lo, hi):
    for cyc in cycles:
        if (
            abs(cyc.p - lo) <= 1e-3 * max(1.0, abs(lo))
            and abs(cyc.q - hi) <= 1e-3 * max(1.0, abs(hi))
        ):
            return cyc
    return None


def _proximity_identify(values, eqs, cycles):
    """Identify a slowly-approached limit by shrinking distance to a known
    attractor; used when the tail-spread detector has not converged yet
    (neutral multipliers approach their limit only polynomially fast)."""
    n = len(values)
    if n < 64:
        return None
    quarter = n // 4
    early = values[n - 2 * quarter : n - quarter]
    late = values[n - quarter :]

    def errs(vals, pts):
        return sum(min(abs(t - v) for v in pts) for t in vals) / len(vals)

    best = None
    for obj, pts in [(e, (e.value,)) for e in eqs] + [
        (c, (c.p, c.q)) for c in cycles
    ]:
        scale = max(1.0, max(abs(v) for v in pts))
        e_early, e_late = errs(early, pts), errs(late, pts)
        if e_late < 0.02 * scale and e_late <= 0.95 * e_early:
            if best is None or e_late / scale < best[1]:
                best = (obj, e_late / scale)
    return None if best is None else best[0]


def classify(
    params: Parameters,
    x_minus1: float,
    x0: float,
    budget: int = 100000,
    tol: float = 1e-8,
    window: int = 64,
    zero_guard: float = DEFAULT_ZERO_GUARD,
    cross_check: bool = True,
) -> Verdict:
    """Simulate the ratio orbit, identify its limit, and apply the theorems.

    The ratio orbit is advanced in chunks and stops as soon as its tail
    stabilizes.  An orbit that lands exactly on the limit within a few steps
    (the preimage-set case) gets the exact-landing verdict.  If no limit can
    be identified within the budget the empirical oracle's class is returned.
    """
    if not (x_minus1 > 0.0 and x0 > 0.0):
        raise ValueError("initial conditions must be positive")
    if budget < 1:
        raise ValueError("need budget >= 1")
    a, b, c, d = params.a, params.b, params.c, params.d
    eqs = equilibria(params)
    cycles = find_two_cycles(params)

    t = x0 / x_minus1
    values = [t]
    det = None
    chunk = 1024
    stopped_at_zero = False
    while len(values) - 1 < budget:
        steps = min(chunk, budget - (len(values) - 1))
        for _ in range(steps):
            if abs(t) < zero_guard:
                stopped_at_zero = True
                break
            t = (((a * t + b) * t + c) * t + d) / (t * t * t)
            values.append(t)
        if stopped_at_zero:
            break
        det = detect_ratio_limit(RatioTrajectory(values, COMPLETED), tol, window)
        if det.kind != "none":
            break
    if stopped_at_zero:
        return Verdict(ITERATION_STOPS, "oracle", notes="ratio reached the zero guard")
    if det is None:
        det = detect_ratio_limit(RatioTrajectory(values, COMPLETED), tol, window)

    eq = cyc = None
    if det.kind == "equilibrium":
        eq = _nearest_equilibrium(eqs, det.values[0])
        if eq is None:
            m = phi_prime(params, det.values[0])
            eq = Equilibrium(det.values[0], m, classify_multiplier(m))
    elif det.kind == "two_cycle":
        cyc = _nearest_cycle(cycles, *det.values)
    else:
        hit = _proximity_identify(values, eqs, cycles)
        if isinstance(hit, Equilibrium):
            eq = hit
        elif isinstance(hit, TwoCycle):
            cyc = hit

    notes = []
    if cross_check:
        oracle = empirical_class(
            params, x_minus1, x0, max(budget, 1000), tol=tol, window=window,
            zero_guard=zero_guard,
        )
        notes.append(f"oracle={oracle}")

    if eq is not None:
        # the unit band is only trustworthy when the quartic actually has a
        # root at 1, i.e. the coefficients sum to 1
        band = 1e-6 if abs(a + b + c + d - 1.0) <= 1e-9 else 1e-9
        landed = _landing_index(values, (eq.value,))
        if landed is not None and abs(eq.value - 1.0) <= band:
            return Verdict(
                CONVERGES_TO_EQUILIBRIUM, "T1.cS",
                notes="; ".join([f"landed on the equilibrium at step {landed}"] + notes),
            )
        evidence = None
        sigma = b + 2.0 * c + 3.0 * d
        if abs(eq.value - 1.0) <= band and abs(abs(sigma) - 1.0) <= 1e-9:
            evidence = subsequence_monotonicity(
                _solution_from_ratios(x_minus1, x0, values), 1, 0
            )
        v = classify_equilibrium_limit(params, eq, evidence, band=band)
        return dataclasses.replace(v, notes="; ".join([v.notes] + notes).strip("; "))

    if cyc is not None:
        landed = _landing_index(values, (cyc.p, cyc.q))
        if landed is not None and abs(cyc.product - 1.0) <= 1e-6:
            return Verdict(
                CONVERGES_TO_TWO_CYCLE, "T2.cS",
                notes="; ".join([f"landed on the 2-cycle at step {landed}"] + notes),
            )
        evidence = None
        if abs(cyc.product - 1.0) <= 1e-6 and abs(abs(cyc.multiplier) - 1.0) <= 1e-6:
            straj = _solution_from_ratios(x_minus1, x0, values)
            ev0 = subsequence_monotonicity(straj, 2, 0)
            ev1 = subsequence_monotonicity(straj, 2, 1)
            evidence = ev0 if ev0 == ev1 else None
        v = classify_cycle_limit(params, cyc, evidence, band=1e-6, eps_crit=1e-6)
        return dataclasses.replace(v, notes="; ".join([v.notes] + notes).strip("; "))

    if not cross_check:
        oracle = empirical_class(
            params, x_minus1, x0, max(budget, 1000), tol=tol, window=window,
            zero_guard=zero_guard,
        )
        notes.append(f"oracle={oracle}")
    oracle = notes[-1].split("=", 1)[1]
    return Verdict(oracle, "oracle", notes="no ratio limit identified within budget")

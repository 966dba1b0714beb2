"""Self-checks against the two published worked examples.

Each check compares this package's analytic output (equilibria, cycles,
criterion values, orbit verdicts) with the values quoted in the source
article, at the precision the article prints them.
"""

from __future__ import annotations

from .classify import classify
from .criteria import R_second_at_1
from .cycles import find_two_cycles, unit_product_cycle
from .outcomes import CONVERGES_TO_TWO_CYCLE, DIVERGES_TO_INFINITY
from .ratio_map import Parameters, equilibria

__all__ = ["run_fixture_checks"]

# printed to four decimal places in the article, so compare at 1e-3
QUOTE_TOL = 1e-3

EXAMPLE_A = Parameters(0.2, 1.7, -2.0, 1.1)
EXAMPLE_A_CYCLES = ((0.2262, 63.6517), (0.5110, 4.1111))
EXAMPLE_B = Parameters(0.1, 1.79, -2.0, 1.0)
EXAMPLE_B_EQ = 0.9423
EXAMPLE_B_CYCLES = ((0.1024, 759.2585), (0.6021, 2.1370), (0.7298, 1.3702))


def _close(x, ref, tol=QUOTE_TOL):
    return abs(x - ref) <= tol * max(1.0, abs(ref))


def _check_cycles(params, refs):
    cycles = find_two_cycles(params)
    if len(cycles) != len(refs):
        return False, f"found {len(cycles)} cycles, expected {len(refs)}"
    for cyc, (p_ref, q_ref) in zip(cycles, refs):
        if not (_close(cyc.p, p_ref) and _close(cyc.q, q_ref)):
            return False, f"cycle ({cyc.p!r}, {cyc.q!r}) != ({p_ref}, {q_ref})"
    return True, ""


def run_fixture_checks():
    """Returns [(name, passed, detail)] for every published-value check."""
    checks = []

    def add(name, ok, detail=""):
        checks.append((name, bool(ok), detail))

    a = EXAMPLE_A
    eqs = equilibria(a)
    add(
        "neutral example: unique equilibrium at 1",
        len(eqs) == 1 and abs(eqs[0].value - 1.0) <= 1e-9,
        f"equilibria at {[e.value for e in eqs]!r}",
    )
    ok, detail = _check_cycles(a, EXAMPLE_A_CYCLES)
    add("neutral example: both quoted 2-cycles recovered", ok, detail)
    sigma = a.b + 2.0 * a.c + 3.0 * a.d
    add(
        "neutral example: a+b+c+d = 1 and sigma = 1",
        abs(a.a + a.b + a.c + a.d - 1.0) <= 1e-12 and abs(sigma - 1.0) <= 1e-12,
        f"sum = {a.a + a.b + a.c + a.d!r}, sigma = {sigma!r}",
    )
    r2 = R_second_at_1(a)
    add("neutral example: R''(1) = 3.62 > 0", abs(r2 - 3.62) <= 1e-9, f"R''(1) = {r2!r}")
    add(
        "neutral example: no unit-product cycle (boundary case)",
        unit_product_cycle(a) is None,
    )
    v = classify(a, 1.0, 1.5)
    add(
        "neutral example: orbit from ratio 1.5 diverges via the doubly-neutral branch",
        v.asymptotic_class == DIVERGES_TO_INFINITY and v.rule == "T1.c3",
        f"got {v.asymptotic_class} via {v.rule}",
    )

    b = EXAMPLE_B
    eqs = equilibria(b)
    add(
        "unit-cycle example: unique equilibrium near 0.9423",
        len(eqs) == 1 and _close(eqs[0].value, EXAMPLE_B_EQ),
        f"equilibria at {[e.value for e in eqs]!r}",
    )
    ok, detail = _check_cycles(b, EXAMPLE_B_CYCLES)
    add("unit-cycle example: all three quoted 2-cycles recovered", ok, detail)
    unit = unit_product_cycle(b)
    add(
        "unit-cycle example: closed-form unit cycle with multiplier in (0, 1)",
        unit is not None
        and abs(unit.product - 1.0) <= 1e-12
        and 0.0 < unit.multiplier < 1.0,
        "absent" if unit is None else f"product {unit.product!r}, multiplier {unit.multiplier!r}",
    )
    v = classify(b, 1.0, 1.0)
    add(
        "unit-cycle example: orbit from ratio 1 converges to the unit 2-cycle",
        v.asymptotic_class == CONVERGES_TO_TWO_CYCLE and v.rule == "T2.c1",
        f"got {v.asymptotic_class} via {v.rule}",
    )
    v = classify(b, 1.0, 3.0)
    add(
        "unit-cycle example: orbit from ratio 3 diverges via the outer 2-cycle",
        v.asymptotic_class == DIVERGES_TO_INFINITY and v.rule == "T2.a",
        f"got {v.asymptotic_class} via {v.rule}",
    )
    return checks

"""Labels for the asymptotic fate of a solution sequence."""

CONVERGES_TO_EQUILIBRIUM = "converges_to_equilibrium"
CONVERGES_TO_TWO_CYCLE = "converges_to_two_cycle"
CONVERGES_TO_ZERO = "converges_to_zero"
DIVERGES_TO_INFINITY = "diverges_to_infinity"
ITERATION_STOPS = "iteration_stops"
UNDETERMINED = "undetermined"
HYPOTHESIS_VIOLATED = "hypothesis_violated"

ALL_CLASSES = (
    CONVERGES_TO_EQUILIBRIUM,
    CONVERGES_TO_TWO_CYCLE,
    CONVERGES_TO_ZERO,
    DIVERGES_TO_INFINITY,
    ITERATION_STOPS,
    UNDETERMINED,
    HYPOTHESIS_VIOLATED,
)

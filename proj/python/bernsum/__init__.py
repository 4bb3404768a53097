"""Exact moments, PMFs and generating functions of Bernoulli-sum random variables.

Thin wrapper over the C++ core. Exact results come back as
`fractions.Fraction`; anything that went through floating point comes
back as `float`.
"""

from _bernsum import (
    __version__,
    bell,
    binom,
    expected_factorial,
    falling,
    gf,
    harmonic,
    moments,
    monte_carlo,
    pmf,
    run_cli,
    stirling1_signed,
    stirling2,
    surjections,
    tail,
    tail_factorial_moment,
    tail_moment,
    verify,
    weighted_falling_sum,
)

__all__ = [
    "__version__",
    "bell",
    "binom",
    "expected_factorial",
    "falling",
    "gf",
    "harmonic",
    "moments",
    "monte_carlo",
    "pmf",
    "run_cli",
    "stirling1_signed",
    "stirling2",
    "surjections",
    "tail",
    "tail_factorial_moment",
    "tail_moment",
    "verify",
    "weighted_falling_sum",
]

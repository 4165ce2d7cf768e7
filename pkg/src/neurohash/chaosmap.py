"""Piecewise linear chaotic map and modulo-1 arithmetic.

All signal values live in [0, 1] as IEEE-754 binary64. Determinism
contract: round-to-nearest-even, no fused multiply-add, operations
evaluated in the order written here. CPython arithmetic satisfies this
on every mainstream platform, so equal inputs give bit-equal outputs.

The map has four linear branches over [0, q), [q, 0.5), [0.5, 1-q) and
[1-q, 1], controlled by a parameter q in (0, 0.5). One caveat worth
knowing: at q = 0.25 (and only there) both branch divisors are powers
of two, every branch operation is exact, and all binary64 orbits
collapse to the fixed point 0.0 within ~28 iterations.
"""

import math
import random

__all__ = [
    "Q_MIN",
    "Q_MAX",
    "map_step",
    "map_iter",
    "mod1",
    "divergence_probe",
]

# Valid control-parameter range: strictly inside (0, 0.5).
Q_MIN = 2.0 ** -20
Q_MAX = 0.5 - 2.0 ** -20


def map_step(x: float, q: float) -> float:
    """One application of the four-branch map.

    The caller guarantees x in [0, 1] and Q_MIN <= q <= Q_MAX. The
    result is clamped to [0, 1] in case rounding lands a hair outside.
    """
    if x < q:            # [0, q)
        y = x / q
    elif x < 0.5:        # [q, 0.5)
        y = (x - q) / (0.5 - q)
    elif x < 1.0 - q:    # [0.5, 1-q)
        y = (1.0 - q - x) / (0.5 - q)
    else:                # [1-q, 1]
        y = (1.0 - x) / q
    if y < 0.0:
        return 0.0
    if y > 1.0:
        return 1.0
    return y


def map_iter(x: float, q: float, t: int) -> float:
    """t-fold composition of map_step; bit-equal to t separate calls.

    The branch arithmetic is inlined for speed, but the operations are
    the same ones map_step performs, so map_iter(x, q, a + b) ==
    map_iter(map_iter(x, q, a), q, b) holds bitwise.
    """
    if t < 0:
        raise ValueError("iteration count must be >= 0")
    half = 0.5 - q
    top = 1.0 - q
    for _ in range(t):
        if x < q:
            x = x / q
        elif x < 0.5:
            x = (x - q) / half
        elif x < top:
            x = (top - x) / half
        else:
            x = (1.0 - x) / q
        if x < 0.0:
            x = 0.0
        elif x > 1.0:
            x = 1.0
    return x


def mod1(a: float) -> float:
    """Fractional part a - floor(a) for finite a >= 0; result in [0, 1).

    Exact in binary64: subtracting the integer part of a float only
    shifts significance downward, so no rounding occurs.
    """
    return a - math.floor(a)


def divergence_probe(delta: float, q: float, t: int, trials: int, seed: int) -> float:
    """Fraction of random starts whose delta-shifted twin ends > 0.1 away.

    Draws `trials` uniform starting points x, iterates both x and
    mod1(x + delta) for t steps under q, and reports the fraction of
    pairs with |difference| > 0.1. Seeded and reproducible.
    """
    if not 0.0 <= delta < 1.0:
        raise ValueError("delta must be in [0, 1)")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    diverged = 0
    for _ in range(trials):
        x = rng.random()
        a = map_iter(x, q, t)
        b = map_iter(mod1(x + delta), q, t)
        if abs(a - b) > 0.1:
            diverged += 1
    return diverged / trials

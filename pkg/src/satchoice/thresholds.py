"""Closed-form threshold calculators.

Raising: the critical density of a biased random 2-SAT formula and its
value for the most-positive-of-t rule. Lowering: the density amplification
``gamma`` of the subcube rule, its maximiser, and the number of choices
that beats a given ratio of known threshold bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import positive_profile

# best known rigorous bounds on the 3-SAT threshold
ALPHA3_LOW = 3.52
ALPHA3_HIGH = 4.4898
GAMMA3 = ALPHA3_HIGH / ALPHA3_LOW

# cavity-method predictions, for reference only
ALPHA3_CAVITY = 4.267
ALPHA4_CAVITY = 9.931

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
A_MIN, A_MAX = 1e-6, 1.0 - 1e-6


def two_sat_threshold(p0: float, p1: float, p2: float) -> float:
    """Critical density ``1 / (p1 + 2 sqrt(p0 p2))`` of biased random 2-SAT.

    Infinite when the denominator vanishes (all clauses pure positive or
    pure negative, which is always satisfiable).
    """
    if min(p0, p1, p2) < 0 or abs(p0 + p1 + p2 - 1.0) > 1e-9:
        raise ValueError(f"(p0, p1, p2) must be a probability vector, got {(p0, p1, p2)}")
    denom = p1 + 2.0 * math.sqrt(p0 * p2)
    return 1.0 / denom if denom > 0 else math.inf


def choice_two_sat_alpha(k: int, t: int) -> float:
    """2-SAT critical density of most-positive-of-``t`` k-clauses cut to 2 literals."""
    if k < 2 or t < 1:
        raise ValueError("need k >= 2 and t >= 1")
    h = 2.0 ** (k * t / 2)
    return h / ((k + 1) ** t / h - 1.0 / h + 2.0 * math.sqrt(1.0 - ((k + 1) / 2.0**k) ** t))


def choice_two_sat_alpha_numeric(k: int, t: int) -> float:
    return two_sat_threshold(*positive_profile(k, t, 2).p)


def gamma(a: float, k: int, t: int) -> float:
    """Density amplification ``(1 - (1 - a^k)^t) / a`` of the subcube rule."""
    if not 0.0 < a <= 1.0:
        raise ValueError("need 0 < a <= 1")
    if k < 1 or t < 1:
        raise ValueError("need k >= 1 and t >= 1")
    return -math.expm1(t * math.log1p(-(a**k))) / a if a < 1.0 else 1.0


@dataclass(frozen=True)
class LoweringParams:
    k: int
    t: int
    a: float

    @property
    def gamma(self) -> float:
        return gamma(self.a, self.k, self.t)

    @property
    def q(self) -> float:
        """Probability the chosen clause lies entirely in the subcube."""
        return 1.0 - (1.0 - self.a**self.k) ** self.t


def optimal_a_closed_form(k: int) -> tuple[float, float]:
    """Maximiser of gamma for two choices and the maximum."""
    a = ((2 * k - 2) / (2 * k - 1)) ** (1.0 / k)
    g = 4 * k * (k - 1) / (2 * k - 1) ** 2 * ((2 * k - 1) / (2 * k - 2)) ** (1.0 / k)
    return a, g


def golden_max(fn, lo: float = A_MIN, hi: float = A_MAX, tol: float = 1e-8) -> float:
    """Argmax of a unimodal ``fn`` on ``[lo, hi]`` by golden-section search."""
    x1 = hi - GOLDEN * (hi - lo)
    x2 = lo + GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    while hi - lo > tol:
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + GOLDEN * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - GOLDEN * (hi - lo)
            f1 = fn(x1)
    return 0.5 * (lo + hi)


def optimal_a_numeric(k: int, t: int) -> tuple[float, float]:
    a = golden_max(lambda x: gamma(x, k, t))
    return a, gamma(a, k, t)


def optimal_a(k: int, t: int) -> tuple[float, float]:
    """``(a, gamma_max)``: closed form for ``t == 2``, golden-section otherwise."""
    if k < 2 or t < 1:
        raise ValueError("need k >= 2 and t >= 1")
    if t == 2:
        return optimal_a_closed_form(k)
    return optimal_a_numeric(k, t)


def min_choices_to_lower(k: int, gamma_k: float = GAMMA3, t_max: int = 10_000) -> int:
    """Smallest ``t`` whose best subcube amplification exceeds ``gamma_k``."""
    if gamma_k < 1.0:
        raise ValueError("need gamma_k >= 1")
    for t in range(1, t_max + 1):
        if optimal_a(k, t)[1] > gamma_k:
            return t
    raise RuntimeError(f"no t <= {t_max} beats gamma_k = {gamma_k}")

"""Density ODEs for biased unit-clause heuristics and their criticality.

State: ``s[i][j]`` is the density (count over n) of i-clauses with ``j``
positive literals, for ``2 <= i <= w``, at time ``t = T/n``. Unit clauses
form a two-type (negative, positive) branching process with mean matrix

    M = 1/(1-t) * [[s21, 2 s20], [2 s22, s21]]

and largest eigenvalue ``lambda = (s21 + 2 sqrt(s20 s22)) / (1-t)``. While
``lambda < 1`` a round (free step plus its forced cascade) sets on average
``b = (I - M)^-1 seed`` variables (false, true), which fixes the fraction
``q0, q1`` of variables set false/true and, for BSC, the free-step rate
``p_free = 1 / (b0 + b1)``.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend

DEFAULT_STEP = 1e-4
DEFAULT_T_END = 1.0 - 1e-3
DEFAULT_TOL = 1e-3


class SupercriticalError(ValueError):
    """The branching process has spectral radius >= 1."""


@dataclass(frozen=True)
class PositiveProfile:
    """Distribution of the number of positive literals in a chosen clause.

    ``p[j]`` for ``j < ell`` is the probability of exactly ``j``; ``p[ell]``
    aggregates ``j >= ell``. ``exact`` holds the same values as fractions.
    """

    k: int
    t: int
    ell: int
    exact: tuple[Fraction, ...]

    @property
    def p(self) -> tuple[float, ...]:
        return tuple(float(x) for x in self.exact)

    def __iter__(self):
        return iter(self.p)

    def __len__(self):
        return len(self.exact)

    def __getitem__(self, j):
        return self.p[j]


def positive_profile(k: int, t: int, ell: int | None = None) -> PositiveProfile:
    """Profile of the most positive of ``t`` uniform k-clauses, capped at ``ell``.

    With ``F(j)`` the probability that one uniform k-clause has at most
    ``j`` positive literals, the maximum of ``t`` draws is ``<= j`` with
    probability ``F(j)**t``.
    """
    ell = k if ell is None else ell
    if k < 1 or t < 1 or not 1 <= ell <= k:
        raise ValueError(f"need k >= 1, t >= 1, 1 <= ell <= k; got k={k}, t={t}, ell={ell}")
    cdf = []
    acc = 0
    for j in range(k + 1):
        acc += math.comb(k, j)
        cdf.append(Fraction(acc, 2**k))

    def F(j):
        return Fraction(0) if j < 0 else cdf[j]

    p = [F(j) ** t - F(j - 1) ** t for j in range(ell)]
    p.append(1 - F(ell - 1) ** t)
    return PositiveProfile(k, t, ell, tuple(p))


def max_eigenvalue(s20: float, s21: float, s22: float, t: float = 0.0) -> float:
    if t >= 1.0:
        raise ValueError("need t < 1")
    return (s21 + 2.0 * math.sqrt(s20 * s22)) / (1.0 - t)


def branching_matrix(s20: float, s21: float, s22: float, t: float = 0.0) -> np.ndarray:
    """Mean offspring matrix over (negative, positive) unit clauses."""
    if t >= 1.0:
        raise ValueError("need t < 1")
    return np.array([[s21, 2.0 * s20], [2.0 * s22, s21]]) / (1.0 - t)


def spectral_radius(M: np.ndarray) -> float:
    return float(np.max(np.abs(np.linalg.eigvals(M))))


def branching_response(M: np.ndarray, seed=(0.0, 1.0)) -> np.ndarray:
    """Expected total population ``(I - M)^-1 seed`` of a subcritical process."""
    M = np.asarray(M, dtype=float)
    if spectral_radius(M) >= 1.0:
        raise SupercriticalError("spectral radius >= 1: the series diverges")
    return np.linalg.solve(np.eye(2) - M, np.asarray(seed, dtype=float))


def round_statistics(s20: float, s21: float, s22: float, t: float, bsc: bool = False) -> dict:
    """``lambda, b0, b1, q0, q1, p_free`` at one state.

    The round seed is ``(0, 1)`` for BUC. For BSC it is the 2-clause mix
    ``(s20, s21 + s22) / total``, or ``(0, 1)`` when 2-clauses are absent.
    """
    M = branching_matrix(s20, s21, s22, t)
    tot = s20 + s21 + s22
    seed = (s20 / tot, (s21 + s22) / tot) if bsc and tot > 1e-9 else (0.0, 1.0)
    b0, b1 = branching_response(M, seed)
    return {
        "lambda": max_eigenvalue(s20, s21, s22, t),
        "b0": b0, "b1": b1,
        "q0": b0 / (b0 + b1), "q1": b1 / (b0 + b1),
        "p_free": 1.0 / (b0 + b1),
    }


def state_cells(w: int) -> list[tuple[int, int]]:
    """Flat state layout: ``(i, j)`` for ``i = 2..w`` and ``j = 0..i``."""
    return [(i, j) for i in range(2, w + 1) for j in range(i + 1)]


@dataclass
class Trajectory:
    """Recorded solution of the density system.

    ``s`` has one row per recorded time and columns in :func:`state_cells`
    order. ``lam``, ``q0``, ``q1``, ``p_free`` are per recorded time.
    ``critical_t`` is where lambda reached 1 (``None`` if it never did).
    """

    model: str
    w: int
    alpha: float
    t: np.ndarray
    s: np.ndarray
    lam: np.ndarray
    q0: np.ndarray
    q1: np.ndarray
    p_free: np.ndarray
    max_lambda: float
    critical_t: float | None

    @property
    def subcritical(self) -> bool:
        return self.critical_t is None

    def column(self, i: int, j: int) -> np.ndarray:
        return self.s[:, state_cells(self.w).index((i, j))]

    def at(self, t: float) -> dict[tuple[int, int], float]:
        """Densities at the recorded time nearest ``t``."""
        r = int(np.argmin(np.abs(self.t - t)))
        return dict(zip(state_cells(self.w), self.s[r].tolist()))

    def to_csv(self) -> str:
        cells = state_cells(self.w)
        cols = ["t"] + [f"s_{i}_{j}" for i, j in cells] + ["lambda", "q0", "q1"]
        bsc = self.model == "bsc"
        if bsc:
            cols.append("p_free")
        buf = io.StringIO()
        buf.write(",".join(cols) + "\n")
        for r in range(len(self.t)):
            row = [self.t[r], *self.s[r], self.lam[r], self.q0[r], self.q1[r]]
            if bsc:
                row.append(self.p_free[r])
            buf.write(",".join(repr(float(x)) for x in row) + "\n")
        return buf.getvalue()


def _integrate(model: str, w: int, profile, alpha: float, step: float, t_end: float,
               record_every: int, backend: str | None):
    p = list(profile)
    if len(p) != w + 1:
        raise ValueError(f"profile has {len(p)} entries, need w + 1 = {w + 1}")
    if w < 2:
        raise ValueError("need w >= 2")
    if alpha < 0:
        raise ValueError("need alpha >= 0")
    if not 0.0 < t_end < 1.0:
        raise ValueError("need 0 < t_end < 1")
    cells = state_cells(w)
    s0 = np.zeros(len(cells))
    top = cells.index((w, 0))
    s0[top : top + w + 1] = [alpha * x for x in p]
    nsteps = int(round(t_end / step))
    kern = _backend.kernels if backend is None else _backend.get(backend)
    return kern.integrate_ode(w, model == "bsc", s0, step, nsteps, record_every)


def _trajectory(model, w, profile, alpha, step, t_end, record_every, backend) -> Trajectory:
    steps, critical, max_lam, rt, rs, raux = _integrate(model, w, profile, alpha, step, t_end,
                                                        record_every, backend)
    return Trajectory(model, w, alpha, rt, rs, raux[:, 0], raux[:, 1], raux[:, 2], raux[:, 3],
                      max_lam, steps * step if critical else None)


def integrate_buc(w: int, profile, alpha: float, step: float = DEFAULT_STEP,
                  t_end: float = DEFAULT_T_END, record_every: int = 1,
                  backend: str | None = None) -> Trajectory:
    """Integrate the BUC system from ``s[w][j](0) = alpha * p[j]``.

    Classical RK4 with fixed ``step`` on ``[0, t_end]``. Integration stops
    where lambda reaches 1.
    """
    return _trajectory("buc", w, profile, alpha, step, t_end, record_every, backend)


def integrate_bsc(profile, alpha: float, step: float = DEFAULT_STEP,
                  t_end: float = DEFAULT_T_END, record_every: int = 1,
                  backend: str | None = None) -> Trajectory:
    """Integrate the BSC system (3-clauses and 2-clauses).

    Adds the free-step 2-clause sink ``-p_free * s2j / total``. Once the
    2-clause reservoir is exhausted (total below 1e-9), free steps absorb
    new 2-clauses as fast as they arrive, up to rate ``p_free``, and the
    2-clause layer is held at zero.
    """
    return _trajectory("bsc", 3, profile, alpha, step, t_end, record_every, backend)


def is_subcritical(model: str, w: int, profile, alpha: float, step: float = DEFAULT_STEP,
                   t_end: float = DEFAULT_T_END, backend: str | None = None) -> bool:
    """True iff lambda(t) < 1 at every grid point of the window."""
    _, critical, _, _, _, _ = _integrate(model, w, profile, alpha, step, t_end, 0, backend)
    return not critical


@dataclass
class CriticalAlpha:
    model: str
    k: int
    t: int
    ell: int
    alpha_star: float
    tolerance: float
    step: float

    def to_record(self) -> dict:
        return {"model": self.model, "k": self.k, "t": self.t, "ell": self.ell,
                "alpha_star": round(self.alpha_star, 3), "tolerance": self.tolerance}

    def to_json(self) -> str:
        return json.dumps(self.to_record())


def critical_alpha(model: str, k: int, t: int, ell: int | None = None, tol: float = DEFAULT_TOL,
                   step: float = DEFAULT_STEP, t_end: float = DEFAULT_T_END,
                   backend: str | None = None) -> CriticalAlpha:
    """Largest density whose trajectory keeps lambda below 1, to ``tol``.

    ``model`` is ``"buc"`` (integrated at width ``w = ell``; default
    ``ell = min(k, 3)``) or ``"bsc"`` (``ell = 3``). The formula is the
    most positive of ``t`` k-clauses reduced to ``ell`` literals.

    Doubles an upper bracket from 1, then bisects until the bracket is
    narrower than ``tol``; returns the feasible end.
    """
    if model not in ("buc", "bsc"):
        raise ValueError(f"unknown model {model!r}")
    if ell is None:
        ell = 3 if model == "bsc" else min(k, 3)
    if model == "bsc" and ell != 3:
        raise ValueError("BSC is analysed on 3-clauses: ell must be 3")
    profile = positive_profile(k, t, ell).p

    def ok(alpha):
        return is_subcritical(model, ell, profile, alpha, step, t_end, backend)

    lo, hi = 0.0, 1.0
    while ok(hi):
        lo, hi = hi, 2.0 * hi
        if hi > 1e12:
            raise RuntimeError("no supercritical density found below 1e12")
    while hi - lo >= tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return CriticalAlpha(model, k, t, ell, lo, tol, step)

"""Linear-time, no-backtracking satisfiability heuristics.

All four algorithms set one variable per step. A forced step satisfies a
uniformly chosen unit clause (units counted with multiplicity). Free steps
differ:

* UC: a uniform unset variable, value by fair coin.
* BUC: a uniform unset variable, set true.
* SC: a uniform 2-clause, satisfied through a uniform one of its literals;
  with no 2-clauses, a UC step.
* BSC: a uniform 2-clause, satisfied through a positive literal when it has
  one (uniform if both are positive), otherwise a uniform negative one;
  with no 2-clauses, a UC step.

A run gives up at the first empty clause. Randomness is consumed as two
pre-drawn uniforms per step, so the compiled and pure-Python kernels give
identical runs for the same generator state.
"""

from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .formula import AssignmentLike, Evaluation, Formula, as_assignment, evaluate, literal_values
from .rng import as_generator

ALGORITHMS = {
    "uc": _backend.MODE_UC,
    "buc": _backend.MODE_BUC,
    "sc": _backend.MODE_SC,
    "bsc": _backend.MODE_BSC,
}


class Outcome(enum.Enum):
    SUCCESS = "success"
    CONTRADICTION = "contradiction"
    INCOMPLETE = "incomplete"  # step limit reached


_STATUS = {
    _backend.STATUS_SUCCESS: Outcome.SUCCESS,
    _backend.STATUS_CONTRADICTION: Outcome.CONTRADICTION,
    _backend.STATUS_INCOMPLETE: Outcome.INCOMPLETE,
}


def census_columns(width: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(1, width + 1) for j in range(i + 1)]


@dataclass
class ClauseCensus:
    """Active (unsatisfied) clauses by current width ``i`` and positive count ``j``.

    ``S[i, j]`` for ``1 <= i <= width``; ``T`` variables have been set.
    """

    T: int
    S: np.ndarray

    @property
    def width(self) -> int:
        return self.S.shape[0] - 1

    @classmethod
    def from_flat(cls, T: int, row, width: int) -> "ClauseCensus":
        S = np.zeros((width + 1, width + 1), dtype=np.int64)
        for (i, j), v in zip(census_columns(width), row):
            S[i, j] = v
        return cls(int(T), S)

    def flat(self) -> np.ndarray:
        return np.array([self.S[i, j] for i, j in census_columns(self.width)], dtype=np.int64)

    def density(self, n: int) -> np.ndarray:
        return self.S / n

    @property
    def total(self) -> int:
        return int(self.S.sum())


def census(f: Formula, assignment: AssignmentLike | None = None) -> ClauseCensus:
    """Census of ``f`` under a partial assignment, computed from scratch."""
    width = int(f.widths.max()) if f.m else 0
    S = np.zeros((width + 1, width + 1), dtype=np.int64)
    if f.m == 0:
        return ClauseCensus(0, S)
    if assignment is None:
        lv = np.full(f.lits.size, -1, dtype=np.int8)
        T = 0
    else:
        lv = literal_values(f, assignment)
        T = int(np.count_nonzero(as_assignment(assignment, f.n)[1:] >= 0))
    starts = f.offsets[:-1]
    satisfied = np.maximum.reduceat(lv, starts) == 1
    unset = (lv < 0).astype(np.int64)
    L = np.add.reduceat(unset, starts)
    P = np.add.reduceat(unset * (f.lits > 0), starts)
    keep = ~satisfied & (L > 0)
    np.add.at(S, (L[keep], P[keep]), 1)
    return ClauseCensus(T, S)


@dataclass
class HeuristicResult:
    algorithm: str
    n: int
    outcome: Outcome
    step: int
    assignment: np.ndarray
    trace: list[ClauseCensus] = field(default_factory=list)

    @property
    def success(self) -> bool:
        return self.outcome is Outcome.SUCCESS

    def trace_csv(self) -> str:
        """Census trace as CSV: ``T`` then ``S_i_j`` in lexicographic order."""
        buf = io.StringIO()
        width = self.trace[0].width if self.trace else 0
        buf.write(",".join(["T"] + [f"S_{i}_{j}" for i, j in census_columns(width)]) + "\n")
        for c in self.trace:
            buf.write(",".join(map(str, [c.T, *c.flat().tolist()])) + "\n")
        return buf.getvalue()


def default_trace_interval(n: int) -> int:
    return max(1, n // 1000)


def run_heuristic(f: Formula, algorithm: str, rng=None, *, trace: bool = False,
                  trace_every: int | None = None, max_steps: int | None = None,
                  backend: str | None = None) -> HeuristicResult:
    """Run ``algorithm`` (``uc``, ``buc``, ``sc`` or ``bsc``) on ``f``.

    Args:
        f: Any CNF formula.
        rng: Generator or seed; exactly ``2 * f.n`` uniforms are drawn.
        trace: Record census snapshots at ``T = 0`` and every ``trace_every``
            steps (default ``max(1, n // 1000)``).
        max_steps: Stop after this many steps with outcome ``INCOMPLETE``.
        backend: Force ``"cython"`` or ``"python"`` kernels.
    """
    try:
        mode = ALGORITHMS[algorithm]
    except KeyError:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}") from None
    kern = _backend.kernels if backend is None else _backend.get(backend)
    g = as_generator(rng)
    uniforms = g.random(2 * f.n)
    every = 0
    if trace:
        every = trace_every or default_trace_interval(f.n)
    status, step, values, tT, tS = kern.run_heuristic(
        f.n, f.lits, f.offsets, mode, uniforms, every, -1 if max_steps is None else max_steps)
    outcome = _STATUS[status]
    width = int(f.widths.max()) if f.m else 0
    snaps = [ClauseCensus.from_flat(T, row, width) for T, row in zip(tT.tolist(), tS.tolist())]
    if outcome is Outcome.SUCCESS and evaluate(f, values) is not Evaluation.SATISFIED:
        raise RuntimeError(f"{algorithm} reported success with a non-satisfying assignment")
    return HeuristicResult(algorithm, f.n, outcome, int(step), values, snaps)


def run_uc(f: Formula, rng=None, **kw) -> HeuristicResult:
    return run_heuristic(f, "uc", rng, **kw)


def run_buc(f: Formula, rng=None, **kw) -> HeuristicResult:
    return run_heuristic(f, "buc", rng, **kw)


def run_sc(f: Formula, rng=None, **kw) -> HeuristicResult:
    return run_heuristic(f, "sc", rng, **kw)


def run_bsc(f: Formula, rng=None, **kw) -> HeuristicResult:
    return run_heuristic(f, "bsc", rng, **kw)

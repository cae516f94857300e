"""Complete solvers for desk-scale instances.

``dpll_sat`` handles general CNF; ``two_sat_scc`` decides formulas of width
at most 2 through strongly connected components of the implication graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import _backend
from .formula import Evaluation, Formula, empty_assignment, evaluate


class Status(enum.Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    BUDGET_EXHAUSTED = "BUDGET_EXHAUSTED"


@dataclass
class SolveResult:
    status: Status
    assignment: np.ndarray | None = None
    nodes: int = 0

    @property
    def sat(self) -> bool:
        return self.status is Status.SAT


def _verified(f: Formula, values: np.ndarray, nodes: int = 0) -> SolveResult:
    if evaluate(f, values) is not Evaluation.SATISFIED:
        raise RuntimeError("solver produced a non-satisfying assignment")
    return SolveResult(Status.SAT, values, nodes)


_DPLL_STATUS = {0: Status.SAT, 1: Status.UNSAT, 2: Status.BUDGET_EXHAUSTED}


def dpll_sat(f: Formula, max_nodes: int | None = None, backend: str | None = None) -> SolveResult:
    """Chronological-backtracking DPLL.

    Each node runs unit propagation and pure-literal elimination, then
    branches on the unassigned variable occurring in the most unsatisfied
    clauses, true first. ``max_nodes`` bounds the number of decisions;
    hitting it yields ``BUDGET_EXHAUSTED``, never a guess.
    """
    kern = _backend.kernels if backend is None else _backend.get(backend)
    code, nodes, values = kern.dpll(f.n, f.lits, f.offsets, -1 if max_nodes is None else max_nodes)
    status = _DPLL_STATUS[code]
    if status is Status.SAT:
        return _verified(f, values, nodes)
    return SolveResult(status, nodes=nodes)


@dataclass
class ImplicationGraph:
    """Implication digraph of a 2-CNF formula in CSR form.

    Node ``2*(v-1)`` is literal ``v`` and ``2*(v-1)+1`` is ``-v``. Clause
    ``(u or w)`` contributes ``-u -> w`` and ``-w -> u``; a unit ``(u)`` is
    the clause ``(u or u)``, giving the single edge ``-u -> u`` twice.
    """

    n: int
    indptr: np.ndarray
    indices: np.ndarray

    @staticmethod
    def node(lit: int) -> int:
        return 2 * (lit - 1) if lit > 0 else 2 * (-lit - 1) + 1

    @staticmethod
    def literal(node: int) -> int:
        v = node // 2 + 1
        return -v if node % 2 else v

    @classmethod
    def from_formula(cls, f: Formula) -> "ImplicationGraph":
        widths = f.widths
        if f.m and widths.max() > 2:
            raise ValueError("implication graph needs clauses of width <= 2")
        first = f.lits[f.offsets[:-1]].astype(np.int64)
        # second literal of a unit clause is the literal itself
        second = np.where(widths == 2, f.lits[np.minimum(f.offsets[:-1] + 1, f.lits.size - 1)], first)
        first_node = np.where(first > 0, 2 * (first - 1), 2 * (-first - 1) + 1)
        second_node = np.where(second > 0, 2 * (second - 1), 2 * (-second - 1) + 1)
        # edges  not(first) -> second,  not(second) -> first ; node ^ 1 negates
        src = np.concatenate([first_node ^ 1, second_node ^ 1])
        dst = np.concatenate([second_node, first_node])
        # interleave so clause order drives adjacency order
        src = np.stack([src[: f.m], src[f.m :]], axis=1).reshape(-1).astype(np.int64)
        dst = np.stack([dst[: f.m], dst[f.m :]], axis=1).reshape(-1).astype(np.int64)
        indptr, indices = _backend.kernels.csr_from_edges(2 * f.n, src, dst)
        return cls(f.n, indptr, indices)

    @property
    def num_nodes(self) -> int:
        return 2 * self.n

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.num_nodes):
            for e in range(self.indptr[u], self.indptr[u + 1]):
                out.append((u, int(self.indices[e])))
        return out

    def is_skew_symmetric(self) -> bool:
        fwd: dict[tuple[int, int], int] = {}
        for e in self.edges():
            fwd[e] = fwd.get(e, 0) + 1
        return all(fwd.get((v ^ 1, u ^ 1), 0) == c for (u, v), c in fwd.items())

    def components(self, backend: str | None = None) -> tuple[np.ndarray, int]:
        """SCC labels in reverse topological order (sink components first)."""
        kern = _backend.kernels if backend is None else _backend.get(backend)
        return kern.tarjan_scc(self.num_nodes, self.indptr, self.indices)


def two_sat_scc(f: Formula, backend: str | None = None) -> SolveResult:
    """Decide a formula of width <= 2.

    UNSAT iff some ``x`` and ``-x`` share a component. Otherwise ``x`` is set
    true iff its component comes later in topological order than that of
    ``-x``, i.e. has the smaller reverse-topological label.
    """
    g = ImplicationGraph.from_formula(f)
    comp, _ = g.components(backend)
    pos = comp[0::2]
    neg = comp[1::2]
    if np.any(pos == neg):
        return SolveResult(Status.UNSAT)
    values = empty_assignment(f.n)
    values[1:] = (pos < neg).astype(np.int8)
    return _verified(f, values)

"""Literals, clauses, formulas and assignments, plus DIMACS I/O.

Literals use the DIMACS convention: variable ``v`` is the integer ``v`` and
its negation is ``-v``. A clause is a tuple of literals over distinct
variables. A :class:`Formula` stores its clauses in a flat ``int32`` literal
array with ``offsets`` marking clause boundaries, which is what the compiled
kernels consume directly.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Mapping, Sequence
from typing import Union

import numpy as np

Literal = int
Clause = tuple[int, ...]

UNSET = -1


class Evaluation(enum.Enum):
    SATISFIED = "satisfied"
    UNSATISFIED = "unsatisfied"
    UNDETERMINED = "undetermined"


class DimacsError(ValueError):
    """Malformed DIMACS input. ``lineno`` is 1-based."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def positive_count(clause: Iterable[int]) -> int:
    return sum(1 for lit in clause if lit > 0)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


class Formula:
    """A CNF formula over variables ``1..n``.

    Clauses form a multiset (duplicates allowed). ``k`` is the declared
    uniform width, or 0 for mixed widths.

    Args:
        n: Number of variables.
        lits: Flat array of signed literals.
        offsets: Clause boundaries, length ``m + 1``.
        k: Declared width; inferred when ``None``.
        check: Validate variable ranges and distinctness.
    """

    __slots__ = ("n", "k", "lits", "offsets")

    def __init__(self, n: int, lits, offsets, k: int | None = None, check: bool = True):
        lits = np.ascontiguousarray(lits, dtype=np.int32)
        offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        if n < 0:
            raise ValueError("n must be non-negative")
        if offsets.ndim != 1 or offsets.size == 0 or offsets[0] != 0 or offsets[-1] != lits.size:
            raise ValueError("offsets must start at 0 and end at len(lits)")
        widths = np.diff(offsets)
        if k is None:
            k = int(widths[0]) if widths.size and np.all(widths == widths[0]) else 0
        if check:
            if widths.size and widths.min() < 1:
                raise ValueError("clauses must have width >= 1")
            if k and widths.size and np.any(widths != k):
                raise ValueError(f"declared width {k} but clauses of other widths present")
            if lits.size:
                v = np.abs(lits)
                if v.min() < 1 or v.max() > n:
                    raise ValueError(f"literal index out of range 1..{n}")
            _check_distinct(lits, offsets, k)
        self.n = int(n)
        self.k = int(k)
        self.lits = _readonly(lits)
        self.offsets = _readonly(offsets)

    @classmethod
    def from_clauses(cls, n: int, clauses: Iterable[Sequence[int]], k: int | None = None) -> "Formula":
        clauses = [tuple(int(x) for x in c) for c in clauses]
        offsets = np.zeros(len(clauses) + 1, dtype=np.int64)
        if clauses:
            offsets[1:] = np.cumsum([len(c) for c in clauses])
        lits = np.fromiter((x for c in clauses for x in c), dtype=np.int32, count=int(offsets[-1]))
        return cls(n, lits, offsets, k)

    @classmethod
    def from_array(cls, n: int, arr: np.ndarray, check: bool = True) -> "Formula":
        """Build a uniform-width formula from an ``(m, k)`` literal array."""
        arr = np.asarray(arr, dtype=np.int32)
        if arr.ndim != 2:
            raise ValueError("expected an (m, k) array")
        m, k = arr.shape
        offsets = np.arange(m + 1, dtype=np.int64) * k
        return cls(n, arr.reshape(-1), offsets, k, check=check)

    @property
    def m(self) -> int:
        return self.offsets.size - 1

    @property
    def density(self) -> float:
        return self.m / self.n if self.n else float("inf")

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.offsets)

    def as_array(self) -> np.ndarray:
        """``(m, k)`` view of the literals; uniform width only."""
        if self.m == 0:
            return np.zeros((0, self.k), dtype=np.int32)
        w = self.widths
        if not np.all(w == w[0]):
            raise ValueError("formula has mixed clause widths")
        return self.lits.reshape(self.m, int(w[0]))

    def clause(self, c: int) -> Clause:
        return tuple(self.lits[self.offsets[c] : self.offsets[c + 1]].tolist())

    @property
    def clauses(self) -> list[Clause]:
        flat = self.lits.tolist()
        off = self.offsets.tolist()
        return [tuple(flat[off[c] : off[c + 1]]) for c in range(self.m)]

    def positive_counts(self) -> np.ndarray:
        pos = (self.lits > 0).astype(np.int64)
        if self.m == 0:
            return np.zeros(0, dtype=np.int64)
        return np.add.reduceat(pos, self.offsets[:-1]) if pos.size else np.zeros(self.m, dtype=np.int64)

    def clause_multiset(self) -> dict[Clause, int]:
        """Clause multiset with literal order normalised away."""
        out: dict[Clause, int] = {}
        for c in self.clauses:
            key = tuple(sorted(c))
            out[key] = out.get(key, 0) + 1
        return out

    def same_clauses(self, other: "Formula") -> bool:
        return self.n == other.n and self.clause_multiset() == other.clause_multiset()

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"Formula(n={self.n}, m={self.m}, k={self.k})"


def _check_distinct(lits: np.ndarray, offsets: np.ndarray, k: int) -> None:
    m = offsets.size - 1
    if m == 0:
        return
    widths = np.diff(offsets)
    if k and np.all(widths == k):
        v = np.sort(np.abs(lits).reshape(m, k), axis=1)
        bad = np.nonzero(np.any(v[:, 1:] == v[:, :-1], axis=1))[0] if k > 1 else []
    else:
        v = np.abs(lits).tolist()
        off = offsets.tolist()
        bad = [c for c in range(m) if len(set(v[off[c] : off[c + 1]])) != off[c + 1] - off[c]]
    if len(bad):
        raise ValueError(f"clause {int(bad[0])} repeats a variable")


AssignmentLike = Union[np.ndarray, Mapping[int, bool]]


def empty_assignment(n: int) -> np.ndarray:
    """Assignment array of length ``n + 1``: 1 true, 0 false, -1 unset. Index 0 is unused."""
    return np.full(n + 1, UNSET, dtype=np.int8)


def as_assignment(a: AssignmentLike, n: int) -> np.ndarray:
    if isinstance(a, Mapping):
        out = empty_assignment(n)
        for v, val in a.items():
            if not 1 <= v <= n:
                raise ValueError(f"variable {v} outside 1..{n}")
            if val is not None:
                out[v] = 1 if val else 0
        return out
    arr = np.asarray(a, dtype=np.int8)
    if arr.shape != (n + 1,):
        raise ValueError(f"assignment array must have length n + 1 = {n + 1}")
    return arr


def literal_values(f: Formula, a: AssignmentLike) -> np.ndarray:
    """Per-literal truth value under ``a``: 1 true, 0 false, -1 unset."""
    arr = as_assignment(a, f.n)
    vals = arr[np.abs(f.lits)].astype(np.int8)
    neg = f.lits < 0
    flipped = np.where(vals >= 0, 1 - vals, vals).astype(np.int8)
    return np.where(neg, flipped, vals)


def evaluate(f: Formula, a: AssignmentLike) -> Evaluation:
    if f.m == 0:
        return Evaluation.SATISFIED
    lv = literal_values(f, a)
    starts = f.offsets[:-1]
    hi = np.maximum.reduceat(lv, starts)
    if np.all(hi == 1):
        return Evaluation.SATISFIED
    lo = np.minimum.reduceat(lv, starts)
    if np.any((hi == 0) & (lo == 0)):
        return Evaluation.UNSATISFIED
    return Evaluation.UNDETERMINED


def is_satisfying(f: Formula, a: AssignmentLike) -> bool:
    return evaluate(f, a) is Evaluation.SATISFIED


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text.

    Clauses may span lines and several may share one line; each ends at a
    ``0`` token. Comment lines start with ``c``; a ``%`` line (SATLIB
    trailer) ends the input.
    """
    n = m = None
    clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    current_line = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            if n is not None:
                raise DimacsError("duplicate header", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"malformed header {line!r}", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"malformed header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise DimacsError("negative counts in header", lineno)
            continue
        if n is None:
            raise DimacsError("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                if len({abs(x) for x in current}) != len(current):
                    raise DimacsError("clause repeats a variable", lineno)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > n:
                raise DimacsError(f"literal {lit} out of range 1..{n}", lineno)
            if not current:
                current_line = lineno
            current.append(lit)
    if n is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        raise DimacsError("unterminated clause", current_line)
    if len(clauses) != m:
        raise DimacsError(f"header declares {m} clauses, found {len(clauses)}")
    return Formula.from_clauses(n, clauses)


def emit_dimacs(f: Formula, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {f.n} {f.m}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in f.clauses)
    return "\n".join(lines) + "\n"


def model_line(a: AssignmentLike, n: int) -> str:
    """SAT-competition style ``v`` line; unset variables are reported false."""
    arr = as_assignment(a, n)
    return "v " + " ".join(str(v if arr[v] == 1 else -v) for v in range(1, n + 1)) + " 0"

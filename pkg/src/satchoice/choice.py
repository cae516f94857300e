"""The Achlioptas process for k-SAT.

Each step draws ``t`` independent uniformly random k-clauses and keeps one
of them according to a :class:`ChoiceRule`. The rules are non-adaptive, so
a whole formula can be generated in vectorised blocks while remaining an
on-line process: the clause kept at step ``i`` depends only on the ``t``
candidates offered at step ``i``.

Generation is split into blocks of :data:`CHUNK` steps; block ``b`` draws
from ``rng.stream(seed, rng.GEN, b)``.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field

import numpy as np

from . import rng as rngmod
from .formula import Clause, Formula

CHUNK = 1 << 16

MOST_POSITIVE = "most-positive"
SUBCUBE = "subcube"
UNIFORM = "uniform"


@dataclass(frozen=True)
class ChoiceRule:
    """How one clause is picked from the ``t`` candidates.

    ``most-positive`` keeps a candidate with the most positive literals,
    ties broken uniformly. ``subcube`` keeps, uniformly, a candidate whose
    variables all lie in ``U = {1..floor(a*n)}`` if one exists, otherwise a
    uniform candidate. ``uniform`` keeps the first candidate.
    """

    kind: str = MOST_POSITIVE
    a: float | None = None

    def __post_init__(self):
        if self.kind not in (MOST_POSITIVE, SUBCUBE, UNIFORM):
            raise ValueError(f"unknown choice rule {self.kind!r}")
        if self.kind == SUBCUBE:
            if self.a is None or not 0.0 < self.a < 1.0:
                raise ValueError("subcube rule needs 0 < a < 1")
        elif self.a is not None:
            raise ValueError(f"rule {self.kind!r} takes no parameter")

    @classmethod
    def most_positive(cls) -> "ChoiceRule":
        return cls(MOST_POSITIVE)

    @classmethod
    def subcube(cls, a: float) -> "ChoiceRule":
        return cls(SUBCUBE, float(a))

    @classmethod
    def uniform(cls) -> "ChoiceRule":
        return cls(UNIFORM)

    @classmethod
    def parse(cls, text: str) -> "ChoiceRule":
        """Parse ``most-positive``, ``uniform`` or ``subcube:<a>``."""
        text = text.strip()
        if text.startswith(SUBCUBE):
            _, _, a = text.partition(":")
            if not a:
                raise ValueError("subcube rule needs a fraction, e.g. subcube:0.93")
            return cls.subcube(float(a))
        return cls(text)

    def subcube_size(self, n: int) -> int:
        return math.floor(self.a * n)

    def __str__(self) -> str:
        return f"{SUBCUBE}:{self.a!r}" if self.kind == SUBCUBE else self.kind


@dataclass(frozen=True)
class GenConfig:
    """Parameters of one generated formula.

    Exactly one of ``m`` and ``alpha`` is set; with ``alpha`` the clause
    count is ``floor(alpha * n)``.
    """

    n: int
    k: int
    t: int = 2
    rule: ChoiceRule = field(default_factory=ChoiceRule.most_positive)
    seed: int = 0
    m: int | None = None
    alpha: float | None = None

    def __post_init__(self):
        if isinstance(self.rule, str):
            object.__setattr__(self, "rule", ChoiceRule.parse(self.rule))
        if self.k < 1 or self.k > self.n:
            raise ValueError(f"need 1 <= k <= n, got k={self.k}, n={self.n}")
        if self.t < 1:
            raise ValueError("need t >= 1")
        if (self.m is None) == (self.alpha is None):
            raise ValueError("give exactly one of m and alpha")
        if self.m is not None and self.m < 0:
            raise ValueError("need m >= 0")
        if self.alpha is not None and self.alpha < 0:
            raise ValueError("need alpha >= 0")

    @property
    def num_clauses(self) -> int:
        return self.m if self.m is not None else math.floor(self.alpha * self.n)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rule"] = str(self.rule)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GenConfig":
        fields = {"n", "k", "t", "rule", "seed", "m", "alpha"}
        extra = set(d) - fields
        if extra:
            raise ValueError(f"unknown config keys: {sorted(extra)}")
        return cls(**d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "GenConfig":
        return cls.from_dict(json.loads(text))


def random_clauses(n: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """``(count, k)`` array of independent uniform k-clauses over ``1..n``.

    Variables within a clause are distinct; each sign is a fair coin.
    """
    if k > n:
        raise ValueError(f"cannot draw {k} distinct variables from {n}")
    # Sequential sampling without replacement: the i-th draw is uniform over
    # the n - i unused variables, mapped past the ones already taken.
    out = np.empty((count, k), dtype=np.int64)
    for i in range(k):
        r = rng.integers(0, n - i, size=count)
        if i:
            taken = np.sort(out[:, :i], axis=1)
            for j in range(i):
                r += r >= taken[:, j]
        out[:, i] = r
    signs = rng.integers(0, 2, size=(count, k), dtype=np.int8)
    lits = out + 1
    lits[signs == 1] *= -1
    return lits.astype(np.int32)


def random_clause(n: int, k: int, rng: np.random.Generator) -> Clause:
    return tuple(random_clauses(n, k, 1, rng)[0].tolist())


def choose(candidates: Sequence[Sequence[int]], rule: ChoiceRule, rng: np.random.Generator,
           n: int | None = None) -> Clause:
    """Apply ``rule`` to one list of candidate clauses.

    ``n`` is needed only by the subcube rule.
    """
    if not candidates:
        raise ValueError("no candidate clauses")
    cands = [tuple(c) for c in candidates]
    if rule.kind == UNIFORM:
        return cands[0]
    if rule.kind == MOST_POSITIVE:
        scores = [sum(1 for x in c if x > 0) for c in cands]
    else:
        if n is None:
            raise ValueError("subcube rule needs n")
        size = rule.subcube_size(n)
        scores = [int(all(abs(x) <= size for x in c)) for c in cands]
    best = max(scores)
    ties = [c for c, s in zip(cands, scores) if s == best]
    return ties[int(rng.integers(len(ties)))]


def choose_batch(cands: np.ndarray, rule: ChoiceRule, n: int, rng: np.random.Generator) -> np.ndarray:
    """Vectorised :func:`choose` over a ``(steps, t, k)`` candidate array."""
    steps, t, _ = cands.shape
    if rule.kind == UNIFORM or t == 1:
        return cands[:, 0, :]
    if rule.kind == MOST_POSITIVE:
        score = (cands > 0).sum(axis=2).astype(np.float64)
    else:
        score = np.all(np.abs(cands) <= rule.subcube_size(n), axis=2).astype(np.float64)
    # integer score plus a uniform key in [0, 1): argmax is uniform among ties
    pick = np.argmax(score + rng.random((steps, t)), axis=1)
    return cands[np.arange(steps), pick, :]


def generate(cfg: GenConfig) -> Formula:
    m = cfg.num_clauses
    chosen = np.empty((m, cfg.k), dtype=np.int32)
    for b, start in enumerate(range(0, m, CHUNK)):
        stop = min(m, start + CHUNK)
        g = rngmod.stream(cfg.seed, rngmod.GEN, b)
        cands = random_clauses(cfg.n, cfg.k, (stop - start) * cfg.t, g).reshape(stop - start, cfg.t, cfg.k)
        chosen[start:stop] = choose_batch(cands, cfg.rule, cfg.n, g)
    return Formula(cfg.n, chosen.reshape(-1), np.arange(m + 1, dtype=np.int64) * cfg.k, cfg.k, check=False)


def _most_positive_keys(lits: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    return 2.0 * (lits > 0) + rng.random(lits.shape)


def reduce_most_positive(clause: Sequence[int], ell: int, rng: np.random.Generator) -> Clause:
    """Keep ``ell`` of the most positive literals of ``clause``.

    Positives are kept first (a uniform ``ell``-subset if there are enough);
    the remainder is a uniform subset of the negatives. Literal order is
    preserved.
    """
    lits = np.asarray(clause, dtype=np.int32)
    if not 1 <= ell <= lits.size:
        raise ValueError(f"need 1 <= ell <= {lits.size}")
    keep = np.sort(np.argsort(-_most_positive_keys(lits, rng), kind="stable")[:ell])
    return tuple(lits[keep].tolist())


def reduce_formula(f: Formula, ell: int, rng: np.random.Generator) -> Formula:
    """Apply :func:`reduce_most_positive` to every clause of a uniform-width formula."""
    arr = f.as_array()
    width = arr.shape[1] if f.m else f.k
    if not 1 <= ell <= width:
        raise ValueError(f"need 1 <= ell <= {width}")
    if f.m == 0:
        return Formula.from_array(f.n, np.zeros((0, ell), dtype=np.int32))
    keys = _most_positive_keys(arr, rng)
    # keys are distinct almost surely, so a partition picks the same set as a sort
    top = np.argpartition(-keys, ell - 1, axis=1)[:, :ell] if ell < width else np.argsort(-keys, axis=1)
    keep = np.sort(top, axis=1)
    out = np.take_along_axis(arr, keep, axis=1)
    return Formula(f.n, out.reshape(-1), np.arange(f.m + 1, dtype=np.int64) * ell, ell, check=False)


def subformula_in_subcube(f: Formula, a: float) -> Formula:
    """Clauses whose variables all lie in ``{1..floor(a*n)}``, over that many variables."""
    if not 0.0 < a <= 1.0:
        raise ValueError("need 0 < a <= 1")
    size = math.floor(a * f.n)
    if f.m == 0:
        return Formula(size, f.lits, f.offsets, f.k, check=False)
    inside = np.logical_and.reduceat(np.abs(f.lits) <= size, f.offsets[:-1])
    widths = f.widths
    offsets = np.concatenate([[0], np.cumsum(widths[inside])]).astype(np.int64)
    return Formula(size, f.lits[np.repeat(inside, widths)], offsets, f.k, check=False)


subformula_in_U = subformula_in_subcube

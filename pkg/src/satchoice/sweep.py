"""Monte Carlo sweeps over clause density.

Trial ``j`` at density index ``i`` draws all of its randomness from streams
keyed ``(SWEEP, i, j, purpose)`` under the master seed, so results do not
depend on the worker count or on scheduling order.
"""

from __future__ import annotations

import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import stats

from . import __version__, _backend
from . import rng as rngmod
from .analysis import PositiveProfile
from .choice import ChoiceRule, GenConfig, generate, reduce_formula
from .exact import Status, dpll_sat, two_sat_scc
from .formula import is_satisfying
from .heuristics import ALGORITHMS, run_heuristic

ENGINES = ("buc", "bsc", "uc", "sc", "dpll", "2sat")
WORKERS_ENV = "SATCHOICE_WORKERS"

SUCCESS, FAILURE, INDETERMINATE = "success", "failure", "indeterminate"


@dataclass(frozen=True)
class SweepConfig:
    k: int
    t: int
    engine: str
    n: int
    start: float
    stop: float
    step: float = 1.0
    trials: int = 100
    seed: int = 0
    rule: ChoiceRule = field(default_factory=ChoiceRule.most_positive)
    ell: int | None = None
    workers: int = 1
    max_nodes: int | None = None  # dpll decision budget

    def __post_init__(self):
        if isinstance(self.rule, str):
            object.__setattr__(self, "rule", ChoiceRule.parse(self.rule))
        if self.engine not in ENGINES:
            raise ValueError(f"unknown engine {self.engine!r}; expected one of {ENGINES}")
        if self.trials < 1:
            raise ValueError("need trials >= 1")
        if self.step <= 0 or self.stop < self.start:
            raise ValueError("density grid is empty")
        if self.ell is not None and not 1 <= self.ell <= self.k:
            raise ValueError("need 1 <= ell <= k")
        if self.engine == "2sat" and (self.ell or self.k) > 2:
            raise ValueError("engine 2sat needs clauses of width <= 2 (set ell = 2)")
        if self.k > self.n:
            raise ValueError("need k <= n")

    @property
    def densities(self) -> list[float]:
        count = math.floor((self.stop - self.start) / self.step + 1e-9) + 1
        return [float(round(self.start + i * self.step, 12)) for i in range(count)]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["rule"] = str(self.rule)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "SweepConfig":
        return cls(**d)


@dataclass
class DensityStats:
    alpha: float
    trials: int
    successes: int
    indeterminate: int
    ci_low: float
    ci_high: float

    @property
    def decided(self) -> int:
        return self.trials - self.indeterminate

    @property
    def rate(self) -> float:
        return self.successes / self.decided if self.decided else math.nan


@dataclass
class SweepResult:
    config: SweepConfig
    rows: list[DensityStats]
    version: str = __version__
    backend: str = _backend.BACKEND

    @property
    def alphas(self) -> list[float]:
        return [r.alpha for r in self.rows]

    @property
    def rates(self) -> list[float]:
        return [r.rate for r in self.rows]

    def to_csv(self) -> str:
        with_ind = any(r.indeterminate for r in self.rows)
        cols = ["alpha", "trials", "successes", "rate", "ci_low", "ci_high"]
        if with_ind:
            cols.append("indeterminate")
        buf = io.StringIO()
        buf.write(",".join(cols) + "\n")
        for r in self.rows:
            row = [repr(r.alpha), str(r.trials), str(r.successes), f"{r.rate:.6f}",
                   f"{r.ci_low:.6f}", f"{r.ci_high:.6f}"]
            if with_ind:
                row.append(str(r.indeterminate))
            buf.write(",".join(row) + "\n")
        return buf.getvalue()

    def metadata(self) -> dict:
        return {"config": self.config.to_dict(), "version": self.version, "backend": self.backend,
                "columns": "alpha,trials,successes,rate,ci_low,ci_high[,indeterminate]"}


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    if trials <= 0:
        return 0.0, 1.0
    ci = stats.binomtest(successes, trials).proportion_ci(confidence_level=confidence, method="wilson")
    return float(ci.low), float(ci.high)


def trial_seed(seed: int, i: int, j: int) -> int:
    """Generation seed for trial ``j`` at density index ``i``."""
    ss = np.random.SeedSequence(seed, spawn_key=(rngmod.SWEEP, i, j, rngmod.PURPOSE_GENERATE))
    return int(ss.generate_state(1, np.uint64)[0])


def run_trial(cfg: SweepConfig, i: int, j: int) -> str:
    alpha = cfg.densities[i]
    f = generate(GenConfig(n=cfg.n, k=cfg.k, t=cfg.t, rule=cfg.rule, seed=trial_seed(cfg.seed, i, j),
                           alpha=alpha))
    g = f
    if cfg.ell is not None and cfg.ell < cfg.k:
        g = reduce_formula(f, cfg.ell, rngmod.stream(cfg.seed, rngmod.SWEEP, i, j, rngmod.PURPOSE_REDUCE))
    engine_rng = rngmod.stream(cfg.seed, rngmod.SWEEP, i, j, rngmod.PURPOSE_ENGINE)
    if cfg.engine in ALGORITHMS:
        res = run_heuristic(g, cfg.engine, engine_rng)
        ok, values = res.success, res.assignment
    elif cfg.engine == "dpll":
        sol = dpll_sat(g, max_nodes=cfg.max_nodes)
        if sol.status is Status.BUDGET_EXHAUSTED:
            return INDETERMINATE
        ok, values = sol.sat, sol.assignment
    else:
        sol = two_sat_scc(g)
        ok, values = sol.sat, sol.assignment
    # the reduced clauses are sub-clauses, so a model of g satisfies f
    if ok and not is_satisfying(f, values):
        raise RuntimeError(f"unverified success at alpha={alpha}, trial {j}")
    return SUCCESS if ok else FAILURE


def _run_chunk(args):
    cfg, tasks = args
    return [(i, j, run_trial(cfg, i, j)) for i, j in tasks]


def resolve_workers(requested: int | None) -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return max(1, requested or 1)


def run_sweep(cfg: SweepConfig) -> SweepResult:
    dens = cfg.densities
    tasks = [(i, j) for i in range(len(dens)) for j in range(cfg.trials)]
    workers = resolve_workers(cfg.workers)
    if workers == 1:
        outcomes = _run_chunk((cfg, tasks))
    else:
        chunks = [tasks[w::workers] for w in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = [o for part in pool.map(_run_chunk, [(cfg, c) for c in chunks]) for o in part]
    succ = [0] * len(dens)
    ind = [0] * len(dens)
    for i, _, out in outcomes:
        if out == SUCCESS:
            succ[i] += 1
        elif out == INDETERMINATE:
            ind[i] += 1
    rows = []
    for i, a in enumerate(dens):
        lo, hi = wilson_interval(succ[i], cfg.trials - ind[i])
        rows.append(DensityStats(a, cfg.trials, succ[i], ind[i], lo, hi))
    return SweepResult(cfg, rows)


def estimate_transition(result_or_alphas, rates=None) -> float | None:
    """Density where the success rate first crosses 0.5, linearly interpolated.

    Accepts a :class:`SweepResult` or parallel sequences of densities and
    rates. Returns ``None`` when the rates never cross 0.5.
    """
    if rates is None:
        alphas, rates = result_or_alphas.alphas, result_or_alphas.rates
    else:
        alphas = result_or_alphas
    pts = [(a, r) for a, r in zip(alphas, rates) if not math.isnan(r)]
    for (a0, r0), (a1, r1) in zip(pts, pts[1:]):
        if r0 == 0.5:
            return a0
        if (r0 - 0.5) * (r1 - 0.5) < 0:
            return a0 + (0.5 - r0) / (r1 - r0) * (a1 - a0)
    if pts and pts[-1][1] == 0.5:
        return pts[-1][0]
    return None


def profile_check(samples, expected) -> tuple[float, float]:
    """Pearson chi-square of positive-literal counts against a profile.

    Counts above the cap are pooled into the last category. Degrees of
    freedom: the cap ``ell``. A zero-probability category with any
    observation fails outright: ``(inf, 0.0)``.
    """
    probs = np.asarray(expected.p if isinstance(expected, PositiveProfile) else expected, dtype=float)
    samples = np.asarray(samples)
    if samples.size < 1000:
        raise ValueError("profile_check needs at least 1000 samples")
    ell = probs.size - 1
    observed = np.bincount(np.minimum(samples, ell), minlength=ell + 1).astype(float)
    if np.any((probs == 0) & (observed > 0)):
        return math.inf, 0.0
    exp = probs * samples.size
    mask = probs > 0
    stat = float(np.sum((observed[mask] - exp[mask]) ** 2 / exp[mask]))
    return stat, float(stats.chi2.sf(stat, ell))


def write_outputs(result: SweepResult, path: str) -> None:
    """Write ``path`` (CSV) and ``path + '.json'`` (metadata sidecar)."""
    with open(path, "w") as fh:
        fh.write(result.to_csv())
    with open(path + ".json", "w") as fh:
        json.dump(result.metadata(), fh, indent=2, sort_keys=True)

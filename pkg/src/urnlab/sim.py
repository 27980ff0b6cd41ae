"""Seeded Monte Carlo simulation of the urn.

Random streams are NumPy ``Philox`` (a counter-based 64-bit generator) keyed
by ``SeedSequence(seed, spawn_key=(run,))``. Run ``j`` of a batch therefore
depends only on ``(seed, j)``. Each step consumes exactly ``k`` uniforms in
order, whether it is driven by :func:`step` or by the vectorized batch loop,
and the random-half start consumes one binomial draw before any step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .drift import computed_number
from .rule import Rule

__all__ = [
    "RANDOM_HALF",
    "SimConfig",
    "Trajectory",
    "ConcentrationSummary",
    "make_rng",
    "step",
    "run",
    "run_batch",
    "concentration_experiment",
]

RANDOM_HALF = "random-half"
_CHUNK = 4096


def make_rng(seed: int, run: int = 0) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(run,))))


@dataclass(frozen=True)
class SimConfig:
    rule: Rule
    n: int
    steps: int
    seed: int = 0
    initial: int | str = RANDOM_HALF
    record_stride: int | None = None

    def __post_init__(self) -> None:
        if self.rule.k > self.n:
            raise ValueError(f"k={self.rule.k} exceeds population n={self.n}")
        if self.steps < 0:
            raise ValueError("steps must be >= 0")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.initial != RANDOM_HALF:
            if not isinstance(self.initial, int) or not 0 <= self.initial <= self.n:
                raise ValueError(f"initial count must lie in [0, {self.n}], got {self.initial!r}")
        if self.record_stride is not None and self.record_stride < 1:
            raise ValueError("record_stride must be >= 1")

    @property
    def stride(self) -> int:
        if self.record_stride is not None:
            return self.record_stride
        return max(1, self.steps // 2048)


@dataclass
class Trajectory:
    n: int
    record_stride: int
    samples: list[tuple[int, int]] = field(default_factory=list)

    @property
    def endpoint(self) -> int:
        return self.samples[-1][1]

    def proportions(self) -> list[tuple[int, float]]:
        return [(s, c / self.n) for s, c in self.samples]

    def rescaled(self) -> list[tuple[float, float]]:
        """Samples as ``(t, x)`` with ``t = step / n``."""
        return [(s / self.n, c / self.n) for s, c in self.samples]


def step(m: int, r: Rule, n: int, rng: np.random.Generator) -> int:
    """One urn step from black count ``m`` using ``k`` sequential draws."""
    u = rng.random(r.k)
    i = 0
    for d in range(r.k):
        if u[d] < (m - i) / (n - d):
            i += 1
    return m - i + (r.k if i in r.E else 0)


def _initial_count(cfg: SimConfig, rng: np.random.Generator) -> int:
    if cfg.initial == RANDOM_HALF:
        return int(rng.binomial(cfg.n, 0.5))
    return int(cfg.initial)


def _advance(m: np.ndarray, r: Rule, n: int, u: np.ndarray, in_e: np.ndarray) -> np.ndarray:
    # u has shape (runs, k) for one step
    i = np.zeros_like(m)
    for d in range(r.k):
        i += u[:, d] < (m - i) / (n - d)
    return m - i + r.k * in_e[i]


def run_batch(cfg: SimConfig, runs: int = 1, first_run: int = 0) -> list[Trajectory]:
    """Simulate runs ``first_run .. first_run + runs - 1``; each on its own stream.

    Runs are advanced together step by step (vectorized over runs), but every
    run draws its uniforms from its own generator, so results do not depend on
    which other runs share the batch.
    """
    r, n = cfg.rule, cfg.n
    rngs = [make_rng(cfg.seed, first_run + j) for j in range(runs)]
    m = np.array([_initial_count(cfg, g) for g in rngs], dtype=np.int64)
    stride = cfg.stride
    in_e = np.zeros(r.k + 1, dtype=np.int64)
    in_e[list(r.E)] = 1
    trajs = [Trajectory(n, stride, [(0, int(c))]) for c in m]
    done = 0
    while done < cfg.steps:
        chunk = min(_CHUNK, cfg.steps - done)
        u = np.stack([g.random((chunk, r.k)) for g in rngs], axis=1)
        for t in range(chunk):
            m = _advance(m, r, n, u[t], in_e)
            s = done + t + 1
            if s % stride == 0 or s == cfg.steps:
                for tr, c in zip(trajs, m):
                    tr.samples.append((s, int(c)))
        done += chunk
    return trajs


def run(cfg: SimConfig, run_index: int = 0) -> Trajectory:
    return run_batch(cfg, 1, first_run=run_index)[0]


@dataclass(frozen=True)
class ConcentrationSummary:
    n: int
    steps: int
    runs: int
    epsilon: float
    alpha: float
    fraction_within: float
    mean_endpoint: float
    endpoints: tuple[int, ...]


def concentration_experiment(r: Rule, n: int, c, runs: int, epsilon: float,
                             seed: int = 0, initial: int | str = RANDOM_HALF) -> ConcentrationSummary:
    """Fraction of ``runs`` endpoints at step ``floor(c n)`` within ``epsilon`` of alpha."""
    steps = math.floor(Fraction(c) * n)
    alpha = float(computed_number(r))
    cfg = SimConfig(r, n, steps, seed, initial, record_stride=max(steps, 1))
    ends = tuple(t.endpoint for t in run_batch(cfg, runs))
    within = sum(1 for e in ends if abs(e / n - alpha) <= epsilon)
    return ConcentrationSummary(
        n=n,
        steps=steps,
        runs=runs,
        epsilon=epsilon,
        alpha=alpha,
        fraction_within=within / runs,
        mean_endpoint=sum(ends) / (runs * n),
        endpoints=ends,
    )

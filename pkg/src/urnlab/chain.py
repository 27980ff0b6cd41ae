"""Exact finite-population analysis of the urn chain.

States are black-ball counts ``0..n``. All probabilities are ``Fraction``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

import networkx as nx

from .rule import Rule

__all__ = [
    "ChainError",
    "MultipleRecurrentClassesError",
    "TransitionKernel",
    "StationaryResult",
    "hypergeometric_pmf",
    "finite_drift",
    "transition_kernel",
    "recurrent_classes",
    "stationary",
]


class ChainError(ValueError):
    pass


class MultipleRecurrentClassesError(ChainError):
    def __init__(self, classes: list[list[int]]):
        self.classes = classes
        super().__init__(
            f"chain has {len(classes)} recurrent classes: "
            + "; ".join(_describe(c) for c in classes)
        )


def _describe(states: list[int]) -> str:
    if len(states) > 6:
        return f"{{{states[0]}, ..., {states[-1]}}} ({len(states)} states)"
    return "{" + ", ".join(map(str, states)) + "}"


def _check_sizes(k: int, n: int, m: int | None = None) -> None:
    if not 1 <= k <= n:
        raise ChainError(f"need 1 <= k <= n, got k={k}, n={n}")
    if m is not None and not 0 <= m <= n:
        raise ChainError(f"need 0 <= m <= n, got m={m}, n={n}")


def hypergeometric_pmf(n: int, m: int, k: int, i: int) -> Fraction:
    """P(i black among k drawn without replacement from m black of n)."""
    _check_sizes(k, n, m)
    if not 0 <= i <= k:
        raise ChainError(f"need 0 <= i <= k, got i={i}, k={k}")
    if i > m or k - i > n - m:
        return Fraction(0)
    return Fraction(comb(m, i) * comb(n - m, k - i), comb(n, k))


def _draw_law(n: int, m: int, k: int) -> list[tuple[int, Fraction]]:
    total = comb(n, k)
    return [
        (i, Fraction(comb(m, i) * comb(n - m, k - i), total))
        for i in range(max(0, k - (n - m)), min(k, m) + 1)
    ]


def finite_drift(r: Rule, n: int, m: int) -> Fraction:
    """Expected one-step change of the black COUNT from state ``m``.

    Converges to ``b(m/n)`` at rate O(1/n). This is ``n`` times the expected
    change of the black proportion.
    """
    _check_sizes(r.k, n, m)
    return sum(
        ((r.k if i in r.E else 0) - i) * p for i, p in _draw_law(n, m, r.k)
    ) or Fraction(0)


@dataclass(frozen=True)
class TransitionKernel:
    """Sparse exact transition matrix; ``rows[m]`` maps next count to probability."""

    n: int
    rows: tuple[dict, ...]

    def __getitem__(self, m: int) -> dict:
        return self.rows[m]

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * (self.n + 1) for _ in range(self.n + 1)]
        for m, row in enumerate(self.rows):
            for j, p in row.items():
                out[m][j] = p
        return out


def transition_kernel(r: Rule, n: int) -> TransitionKernel:
    _check_sizes(r.k, n)
    rows = []
    for m in range(n + 1):
        row: dict[int, Fraction] = {}
        for i, p in _draw_law(n, m, r.k):
            nxt = m - i + (r.k if i in r.E else 0)
            row[nxt] = row.get(nxt, Fraction(0)) + p
        rows.append(row)
    return TransitionKernel(n, tuple(rows))


def recurrent_classes(kern: TransitionKernel) -> list[list[int]]:
    """Closed communicating classes of the kernel's support graph, sorted."""
    g = nx.DiGraph()
    g.add_nodes_from(range(kern.n + 1))
    g.add_edges_from((m, j) for m, row in enumerate(kern.rows) for j, p in row.items() if p)
    return sorted(sorted(c) for c in nx.attracting_components(g))


@dataclass(frozen=True)
class StationaryResult:
    distribution: tuple[Fraction, ...]
    mean: Fraction
    support: tuple[int, ...]


def stationary(kern: TransitionKernel) -> StationaryResult:
    """Unique invariant law by exact GTH state reduction on the recurrent class.

    Transient states get mass 0. Raises
    :class:`MultipleRecurrentClassesError` when the invariant law is not
    unique.
    """
    classes = recurrent_classes(kern)
    if len(classes) != 1:
        raise MultipleRecurrentClassesError(classes)
    states = classes[0]
    pi_c = _gth(kern, states)
    dist = [Fraction(0)] * (kern.n + 1)
    for s, p in zip(states, pi_c):
        dist[s] = p
    mean = sum((p * m for m, p in enumerate(dist)), Fraction(0)) / kern.n
    return StationaryResult(tuple(dist), mean, tuple(states))


def _gth(kern: TransitionKernel, states: list[int]) -> list[Fraction]:
    # Grassmann-Taksar-Heyman elimination; subtraction-free, so exact and
    # with banded fill-in for this chain (jumps are at most k).
    index = {s: j for j, s in enumerate(states)}
    size = len(states)
    P = [
        {index[t]: p for t, p in kern.rows[s].items() if p and t in index and index[t] != j}
        for j, s in enumerate(states)
    ]
    # incoming adjacency keeps the elimination sparse
    into: list[set[int]] = [set() for _ in range(size)]
    for i, row in enumerate(P):
        for j in row:
            into[j].add(i)
    for last in range(size - 1, 0, -1):
        out = {j: p for j, p in P[last].items() if j < last}
        s = sum(out.values(), Fraction(0))
        for i in into[last]:
            if i >= last:
                continue
            w = P[i][last] / s
            row = P[i]
            for j, p in out.items():
                if j == i:
                    continue
                if j in row:
                    row[j] += w * p
                else:
                    row[j] = w * p
                    into[j].add(i)
    pi = [Fraction(0)] * size
    pi[0] = Fraction(1)
    for j in range(1, size):
        pi[j] = sum((pi[i] * P[i][j] for i in into[j] if i < j and j in P[i]), Fraction(0)) / sum(
            (p for t, p in P[j].items() if t < j), Fraction(0)
        )
    total = sum(pi, Fraction(0))
    return [p / total for p in pi]

"""Mean-field limit ``x' = b(x)`` of the rescaled urn.

The limit value always comes from the exact drift module; the integrator
only corroborates it and supplies convergence times.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.integrate import solve_ivp

from .algebraic import AlgebraicNumber
from .drift import adjacent_root, drift_polynomial
from .rule import Rule

__all__ = [
    "OdeTrajectory",
    "NotCertifiedError",
    "integrate",
    "time_to_reach",
    "flow_field",
]

DEFAULT_TOL = 1e-10
T_MAX = 10**5


class NotCertifiedError(RuntimeError):
    """``time_to_reach`` gave up before certifying the target distance."""


@dataclass(frozen=True)
class OdeTrajectory:
    samples: list[tuple[float, float]]
    limit: AlgebraicNumber

    @property
    def final(self) -> float:
        return self.samples[-1][1]


def _rhs(r: Rule):
    coeffs = drift_polynomial(r).float_coefficients()[::-1] or [0.0]

    def f(t, x):
        return np.polyval(coeffs, x)

    return f


def integrate(r: Rule, x0=Fraction(1, 2), t_end=1.0, tol: float = DEFAULT_TOL,
              samples: int = 512) -> OdeTrajectory:
    """Integrate from ``x0`` to ``t_end`` with DOP853 (order 8, adaptive).

    Returns ``samples + 1`` equally spaced points. Steps are capped at the
    sample spacing and at ``2 / |b'(alpha)|``: near the limit an explicit
    method run at its stability edge jitters at the tolerance scale, and the
    cap keeps the discrete approach to ``alpha`` monotone. A start exactly on a root of
    ``b`` is an equilibrium and is returned as a constant without integrating,
    since float noise would otherwise push it off an unstable root.
    """
    x0 = Fraction(x0)
    if not 0 <= x0 <= 1:
        raise ValueError(f"x0 must lie in [0, 1], got {x0}")
    t_end = float(t_end)
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    b = drift_polynomial(r)
    limit = adjacent_root(b, x0)
    ts = np.linspace(0.0, t_end, samples + 1)
    if b(x0) == 0:
        return OdeTrajectory([(float(t), float(x0)) for t in ts], limit)
    with np.errstate(invalid="ignore"):  # DOP853 divides 0/0 once it sits on the root
        sol = solve_ivp(_rhs(r), (0.0, t_end), [float(x0)], method="DOP853", t_eval=ts,
                        rtol=tol, atol=tol, max_step=_max_step(b, limit, t_end / samples))
    if not sol.success:
        raise RuntimeError(sol.message)
    # b(0) >= 0 >= b(1), so [0, 1] is invariant; clip tolerance-sized overshoot
    xs = np.clip(sol.y[0], 0.0, 1.0)
    return OdeTrajectory(list(zip(sol.t.tolist(), xs.tolist())), limit)


def _max_step(b, limit: AlgebraicNumber, cap: float) -> float:
    slope = abs(float(b.derivative()(Fraction(limit.approx))))
    return min(cap, 2 / slope) if slope > 0 else cap


def _distance_bound(x: float, alpha: AlgebraicNumber) -> float:
    # upper bound on |x - alpha| from the isolating interval
    return max(abs(x - float(alpha.lo)), abs(x - float(alpha.hi)))


def time_to_reach(r: Rule, epsilon, x0=Fraction(1, 2), grid=Fraction(1, 64),
                  tol: float = DEFAULT_TOL, t_max: float = T_MAX) -> Fraction:
    """Smallest grid time ``c`` with ``|x_c - alpha| <= epsilon / 2``.

    ``alpha`` is the exact adjacent root; the integrated value must clear
    ``epsilon / 2`` by a margin covering the integration tolerance.
    """
    epsilon = float(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    x0, grid = Fraction(x0), Fraction(grid)
    b = drift_polynomial(r)
    alpha = adjacent_root(b, x0)
    half = epsilon / 2
    lo, hi = alpha.interval
    if max(abs(x0 - lo), abs(x0 - hi)) <= Fraction(half):
        return Fraction(0)
    if b(x0) == 0:
        raise NotCertifiedError("x0 is an equilibrium away from the target root")
    margin = max(1e-9, 100 * tol)
    f = _rhs(r)
    start, x = 0, float(x0)
    width = 512
    while start * grid < t_max:
        stop = start + width
        ts = [float(j * grid) for j in range(start, stop + 1)]
        with np.errstate(invalid="ignore"):
            sol = solve_ivp(f, (ts[0], ts[-1]), [x], method="DOP853", t_eval=ts,
                            rtol=tol, atol=tol)
        if not sol.success:
            raise RuntimeError(sol.message)
        for j, xj in enumerate(sol.y[0]):
            if _distance_bound(xj, alpha) + margin <= half:
                return (start + j) * grid
        start, x = stop, float(sol.y[0][-1])
        width *= 2
    raise NotCertifiedError(f"no certified time below t_max={t_max}")


def flow_field(r: Rule, points: int = 101) -> list[tuple[float, float]]:
    """``(x, b(x))`` on an even grid of ``[0, 1]``, for drawing the flow."""
    b = drift_polynomial(r)
    xs = [Fraction(j, points - 1) for j in range(points)]
    return [(float(x), float(b(x))) for x in xs]

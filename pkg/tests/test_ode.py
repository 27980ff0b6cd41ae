from fractions import Fraction as F
import math
import random

import pytest

from urnlab.drift import computed_number
from urnlab.ode import NotCertifiedError, flow_field, integrate, time_to_reach
from urnlab.rule import Rule

from conftest import random_rule


def test_equilibrium_start():
    tr = integrate(Rule(1, (0,)), F(1, 2), 5)
    assert {x for _, x in tr.samples} == {0.5}
    assert tr.limit.rational == F(1, 2)


def test_closed_form_ehrenfest():
    # x' = 1 - 2x, x(0) = 0  =>  x(t) = (1 - exp(-2t)) / 2
    tr = integrate(Rule(1, (0,)), 0, 1, tol=1e-10)
    for t, x in tr.samples:
        assert abs(x - (1 - math.exp(-2 * t)) / 2) < 1e-9
    assert abs(tr.final - 0.432332) < 1e-6


def test_sampling_density():
    tr = integrate(Rule(3, (1, 2)), F(1, 2), 7)
    ts = [t for t, _ in tr.samples]
    assert ts[0] == 0 and ts[-1] == pytest.approx(7)
    assert max(b - a for a, b in zip(ts, ts[1:])) <= 7 / 512 + 1e-12


def test_converges_to_two_thirds():
    tr = integrate(Rule(3, (1, 2)), F(1, 2), 200)
    assert abs(tr.final - 2 / 3) < 1e-9
    assert tr.limit == computed_number(Rule(3, (1, 2)))


def test_limit_monotone_containment_random_rules():
    rng = random.Random(37)
    for _ in range(40):
        r = random_rule(rng, k_max=10)
        tr = integrate(r, F(1, 2), 200)
        xs = [x for _, x in tr.samples]
        assert all(0 <= x <= 1 for x in xs)
        incs = [b - a for a, b in zip(xs, xs[1:])]
        assert not (max(incs) > 1e-10 and min(incs) < -1e-10)
        assert abs(xs[-1] - float(computed_number(r))) < 1e-6


def test_unstable_equilibrium_other_start():
    # 1 is a repelling root of this drift; from 0.99 the flow goes down to 1/2
    tr = integrate(Rule(8, (0, 4, 5, 8)), F(99, 100), 60)
    assert abs(tr.final - 0.5) < 1e-6
    assert tr.limit.rational == F(1, 2)


def test_time_to_reach_trivial():
    assert time_to_reach(Rule(1, (1,)), 0.1) == 0
    assert time_to_reach(Rule(1, (0,)), 1e-6) == 0


def test_time_to_reach_certified():
    r = Rule(3, (1, 2))
    c = time_to_reach(r, 0.02)
    assert c > 0 and c.denominator <= 64
    tr = integrate(r, F(1, 2), float(c), samples=1)
    assert abs(tr.final - 2 / 3) <= 0.01
    # one grid step earlier is not yet close enough
    before = integrate(r, F(1, 2), float(c - F(1, 64)), samples=1)
    assert abs(before.final - 2 / 3) > 0.01 - 1e-9


def test_time_to_reach_gives_up():
    # 0.475... is an unstable root; starting just above it the flow is slow
    with pytest.raises(NotCertifiedError):
        time_to_reach(Rule(8, (0, 4, 5, 8)), 1e-3, x0=F(47482, 100000), t_max=0.5)


def test_flow_field():
    pts = flow_field(Rule(1, (0,)), 5)
    assert pts == [(0.0, 1.0), (0.25, 0.5), (0.5, 0.0), (0.75, -0.5), (1.0, -1.0)]


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        integrate(Rule(1, (0,)), F(3, 2), 1)
    with pytest.raises(ValueError):
        integrate(Rule(1, (0,)), 0, 0)
    with pytest.raises(ValueError):
        time_to_reach(Rule(1, (0,)), 0)

import random

import pytest
from hypothesis import given

from urnlab.rule import NAMED_RULES, Rule, RuleError, RuleSyntaxError, dual, new_rule, parse_rule

from conftest import random_rule, rules


def test_new_rule_canonicalizes():
    r = new_rule(2, {1, 0, 1})
    assert r == Rule(2, (0, 1))
    assert r.E == (0, 1)
    assert new_rule(1, set()).E == ()


@pytest.mark.parametrize("k, E", [(0, ()), (3, (5,)), (2, (-1,))])
def test_new_rule_rejects(k, E):
    with pytest.raises(RuleError):
        new_rule(k, E)


def _dual_by_enumeration(r):
    # brute force over all candidate subsets of {0..k}
    k = r.k
    for mask in range(2 ** (k + 1)):
        cand = {i for i in range(k + 1) if mask >> i & 1}
        if all((i in cand) == ((k - i) not in r.E) for i in range(k + 1)):
            return Rule(k, tuple(cand))


@pytest.mark.parametrize(
    "rule, expected",
    [
        (Rule(2, (1,)), Rule(2, (0, 2))),
        (Rule(1, ()), Rule(1, (0, 1))),
        (Rule(3, (0, 3)), Rule(3, (1, 2))),
    ],
)
def test_dual_examples(rule, expected):
    assert dual(rule) == expected
    assert _dual_by_enumeration(rule) == expected


def test_dual_involution_500_random():
    rng = random.Random(7)
    for _ in range(500):
        r = random_rule(rng, k_max=12)
        assert dual(dual(r)) == r
        assert len(dual(r).E) == r.k + 1 - len(r.E)


@given(rules(k_max=12))
def test_dual_properties(r):
    assert dual(dual(r)) == r
    assert dual(r) == _dual_by_enumeration(r)


def test_json_roundtrip():
    r = Rule(8, (8, 0, 5, 4))
    assert r.to_json() == {"k": 8, "E": [0, 4, 5, 8]}
    assert Rule.from_json(r.to_json()) == r


@pytest.mark.parametrize(
    "text, expected",
    [
        ("8:0,4,5,8", Rule(8, (0, 4, 5, 8))),
        ("1:", Rule(1, ())),
        (" 3:2,1 ", Rule(3, (1, 2))),
        ("ehrenfest", Rule(1, (0,))),
    ],
)
def test_parse_rule(text, expected):
    assert parse_rule(text) == expected
    assert parse_rule(str(expected)) == expected


@pytest.mark.parametrize("text", ["8", "a:1", "3:1,,2", "3:x"])
def test_parse_rule_syntax_errors(text):
    with pytest.raises(RuleSyntaxError):
        parse_rule(text)


def test_parse_rule_validation_error_is_not_syntax():
    with pytest.raises(RuleError) as info:
        parse_rule("3:5")
    assert not isinstance(info.value, RuleSyntaxError)


def test_named_alias():
    assert NAMED_RULES["ehrenfest"] == Rule(1, (0,))

"""Protocol rules ``(k, E)``.

A rule draws ``k`` balls; when the number ``i`` of black balls among them is
in ``E`` all ``k`` are recolored black, otherwise white.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

__all__ = ["Rule", "RuleError", "new_rule", "dual", "parse_rule", "split_rule", "RuleSyntaxError", "NAMED_RULES"]


class RuleError(ValueError):
    """Raised for invalid rule parameters."""


class RuleSyntaxError(RuleError):
    """Raised for rule strings that do not parse."""


@dataclass(frozen=True, order=True)
class Rule:
    k: int
    E: tuple[int, ...]

    def __post_init__(self) -> None:
        if isinstance(self.k, bool) or not isinstance(self.k, int):
            raise RuleError(f"k must be an integer, got {self.k!r}")
        if self.k < 1:
            raise RuleError(f"k must be >= 1, got {self.k}")
        members = sorted(set(int(i) for i in self.E))
        bad = [i for i in members if i < 0 or i > self.k]
        if bad:
            raise RuleError(f"elements {bad} of E lie outside [0, {self.k}]")
        object.__setattr__(self, "E", tuple(members))

    def __contains__(self, i: int) -> bool:
        return i in self.E

    def blackens(self, i: int) -> bool:
        """True when drawing ``i`` black balls recolors the draw black."""
        return i in self.E

    def to_json(self) -> dict:
        return {"k": self.k, "E": list(self.E)}

    @classmethod
    def from_json(cls, data: dict) -> "Rule":
        return cls(int(data["k"]), tuple(data["E"]))

    def __str__(self) -> str:
        return f"{self.k}:" + ",".join(str(i) for i in self.E)


def new_rule(k: int, E: Iterable[int]) -> Rule:
    return Rule(k, tuple(E))


def dual(r: Rule) -> Rule:
    """Rule ``(k, E*)`` with ``i in E*`` iff ``k - i not in E``; computes ``1 - alpha``."""
    return Rule(r.k, tuple(i for i in range(r.k + 1) if (r.k - i) not in r.E))


NAMED_RULES = {
    "ehrenfest": Rule(1, (0,)),
}


def split_rule(text: str) -> tuple[int, list[int]]:
    """Syntactic half of :func:`parse_rule`; no range validation."""
    text = text.strip()
    if text in NAMED_RULES:
        r = NAMED_RULES[text]
        return r.k, list(r.E)
    head, sep, tail = text.partition(":")
    if not sep:
        raise RuleSyntaxError(f"rule {text!r} must look like 'k:i1,i2,...'")
    try:
        k = int(head)
        E = [int(tok) for tok in tail.split(",")] if tail.strip() else []
    except ValueError:
        raise RuleSyntaxError(f"rule {text!r} must look like 'k:i1,i2,...'") from None
    return k, E


def parse_rule(text: str) -> Rule:
    """Parse ``"k:i1,i2,..."`` (``"k:"`` for empty E) or a named alias."""
    k, E = split_rule(text)
    return Rule(k, tuple(E))

"""Rule synthesis for rational targets, rational exclusion, and rule catalogs."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor, gcd
from typing import Iterator

from .algebraic import AlgebraicNumber
from .drift import computed_number, drift_polynomial
from .rule import Rule

__all__ = [
    "SynthesisResult",
    "SynthesisFailed",
    "Verdict",
    "CatalogEntry",
    "Violation",
    "SearchReport",
    "KNOWN_RATIONAL_RULES",
    "residue_rule",
    "coupling_bound",
    "binomial_residue_probability",
    "synthesize",
    "exclusion_check",
    "exhaustive_search",
    "all_rules",
    "worker_count",
]


def residue_rule(a: int, b: int, k: int) -> Rule:
    """``(k, {i <= k : i mod b < a})``; its computed number tends to ``a/b`` as ``k`` grows."""
    if not 0 < a < b:
        raise ValueError(f"need 0 < a < b, got a={a}, b={b}")
    return Rule(k, tuple(i for i in range(k + 1) if i % b < a))


def coupling_bound(x: float, b: int, k: int) -> float:
    """``(1 - x^b (1-x)^b) ** floor(k/b)``, bounding ``|P(B(k,x) mod b < a) - a/b|``."""
    if not 0 < x < 1:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    if b < 1:
        raise ValueError("b must be >= 1")
    return (1 - x**b * (1 - x) ** b) ** floor(k / b)


def binomial_residue_probability(k: int, x, a: int, b: int) -> Fraction:
    x = Fraction(x)
    return sum(
        (comb(k, i) * x**i * (1 - x) ** (k - i) for i in range(k + 1) if i % b < a),
        Fraction(0),
    )


def _error_bound(alpha: AlgebraicNumber, target: Fraction) -> Fraction:
    return max(abs(alpha.lo - target), abs(alpha.hi - target))


@dataclass(frozen=True)
class SynthesisResult:
    rule: Rule
    alpha: AlgebraicNumber
    target: Fraction
    achieved_error: Fraction
    lemma_bound: float


class SynthesisFailed(RuntimeError):
    def __init__(self, message: str, best: SynthesisResult | None):
        super().__init__(message)
        self.best = best


def synthesize(a: int, b: int, epsilon, k_max: int) -> SynthesisResult:
    """First ``k`` in ``b, 2b, ... <= k_max`` whose residue rule is certified within ``epsilon``.

    Acceptance is decided from the exact computed number; the coupling bound at
    the target is attached for reference only.
    """
    target = Fraction(a, b)
    if not 0 < target < 1:
        raise ValueError(f"target {target} must lie strictly between 0 and 1")
    if target.numerator != a:
        raise ValueError(f"target {a}/{b} must be given in lowest terms")
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    best = None
    for k in range(b, k_max + 1, b):
        rule = residue_rule(a, b, k)
        alpha = computed_number(rule)
        err = _error_bound(alpha, target)
        result = SynthesisResult(rule, alpha, target, err, coupling_bound(float(target), b, k))
        if best is None or err < best.achieved_error:
            best = result
        if err <= epsilon:
            return result
    raise SynthesisFailed(
        f"no multiple of {b} up to k_max={k_max} reaches |alpha - {target}| <= {epsilon}", best
    )


KNOWN_RATIONAL_RULES = {
    Fraction(0): Rule(1, ()),
    Fraction(1): Rule(1, (0, 1)),
    Fraction(1, 2): Rule(2, (1,)),
    Fraction(1, 3): Rule(3, (0, 3)),
    Fraction(2, 3): Rule(3, (1, 2)),
}


@dataclass(frozen=True)
class Verdict:
    kind: str  # "ProvablyNotComputable" | "KnownComputable" | "Undecided"
    value: Fraction
    rule: Rule | None = None


def exclusion_check(p: int, q: int) -> Verdict:
    """Decide whether the rational ``p/q`` is computed by some rule.

    Reduced rationals with denominator at least 4 are never computed; the
    five remaining values in ``[0, 1]`` each have a known rule.
    """
    if q == 0:
        raise ZeroDivisionError("q must be nonzero")
    x = Fraction(p, q)
    if not 0 <= x <= 1:
        raise ValueError(f"{p}/{q} lies outside [0, 1]")
    if x.denominator >= 4:
        return Verdict("ProvablyNotComputable", x)
    if x in KNOWN_RATIONAL_RULES:
        return Verdict("KnownComputable", x, KNOWN_RATIONAL_RULES[x])
    return Verdict("Undecided", x)


@dataclass
class CatalogEntry:
    alpha: AlgebraicNumber
    rules: list[Rule] = field(default_factory=list)

    @property
    def rule(self) -> Rule:
        return self.rules[0]

    @property
    def is_rational(self) -> bool:
        return self.alpha.is_rational

    @property
    def rational(self) -> Fraction | None:
        return self.alpha.rational

    def to_json(self) -> dict:
        return {
            "rule": self.rule.to_json(),
            "rules": [r.to_json() for r in self.rules],
            "alpha_interval": [_fs(self.alpha.lo), _fs(self.alpha.hi)],
            "alpha_approx": self.alpha.approx,
            "rational": _fs(self.rational) if self.is_rational else None,
        }


@dataclass(frozen=True)
class Violation:
    rule: Rule
    root: Fraction


@dataclass
class SearchReport:
    k_max: int
    q_max: int
    rules_checked: int
    catalog: list[CatalogEntry]
    violations: list[Violation]
    zero_drift_rules: list[Rule]

    def rational_values(self) -> set[Fraction]:
        return {e.rational for e in self.catalog if e.is_rational}


def _fs(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def all_rules(k: int, start: int = 0, stop: int | None = None) -> Iterator[Rule]:
    """Every rule with this ``k``, E enumerated as bitmasks in increasing order."""
    stop = 2 ** (k + 1) if stop is None else stop
    for mask in range(start, stop):
        yield Rule(k, tuple(i for i in range(k + 1) if mask >> i & 1))


def _reduced_fractions(q_min: int, q_max: int) -> list[tuple[int, int]]:
    return [(p, q) for q in range(q_min, q_max + 1) for p in range(1, q) if gcd(p, q) == 1]


_BLOCK = 128


def _blocks(k_max: int) -> list[tuple[int, int, int]]:
    return [
        (k, lo, min(lo + _BLOCK, 2 ** (k + 1)))
        for k in range(1, k_max + 1)
        for lo in range(0, 2 ** (k + 1), _BLOCK)
    ]


def _scan_block(block: tuple[int, int, int], q_max: int):
    k, start, stop = block
    fracs = [Fraction(p, q) for p, q in _reduced_fractions(4, q_max)]
    found = []
    for rule in all_rules(k, start, stop):
        b = drift_polynomial(rule)
        alpha = computed_number(rule)
        if b.is_zero():
            found.append((rule, alpha, [], True))
            continue
        bad = [x for x in fracs if b.sign_at(x) == 0]
        found.append((rule, alpha, bad, False))
    return found


def worker_count() -> int:
    cap = os.environ.get("URNLAB_THREADS")
    cpus = os.cpu_count() or 1
    if cap:
        return max(1, min(cpus, int(cap)))
    return cpus


def exhaustive_search(k_max: int, q_max: int = 50, workers: int | None = None) -> SearchReport:
    """Enumerate every rule with ``k <= k_max`` and build the catalog.

    A violation is a rule whose drift polynomial, not identically zero, has a
    root ``p/q`` in lowest terms with ``4 <= q <= q_max``; none is expected.
    The single rule with zero drift, ``(1, {1})``, is reported separately: it
    fixes every state and computes 1/2.
    """
    if k_max < 1:
        raise ValueError("k_max must be >= 1")
    workers = worker_count() if workers is None else workers
    blocks = _blocks(k_max)
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(blocks))) as pool:
            per_block = list(pool.map(_scan_block, blocks, [q_max] * len(blocks)))
    else:
        per_block = [_scan_block(blk, q_max) for blk in blocks]

    catalog: list[CatalogEntry] = []
    buckets: dict[int, list[CatalogEntry]] = {}
    violations: list[Violation] = []
    zero: list[Rule] = []
    count = 0
    for found in per_block:
        for rule, alpha, bad, is_zero in found:
            count += 1
            if is_zero:
                zero.append(rule)
            violations.extend(Violation(rule, x) for x in bad)
            key = round(float(alpha) * 1e9)
            entry = next(
                (e for kk in (key - 1, key, key + 1) for e in buckets.get(kk, []) if e.alpha == alpha),
                None,
            )
            if entry is None:
                entry = CatalogEntry(alpha)
                catalog.append(entry)
                buckets.setdefault(key, []).append(entry)
            entry.rules.append(rule)
    catalog.sort(key=lambda e: float(e.alpha))
    return SearchReport(k_max, q_max, count, catalog, violations, zero)

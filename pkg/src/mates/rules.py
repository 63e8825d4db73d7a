"""Propositional production rules: ground facts, premise trees and IF-THEN rules.

The rule language is deliberately propositional. Every fact is ground
(identifier arguments only, no variables), premises combine facts with
AND/OR, and a rule's conclusion asserts one or more facts. Negation is
not part of the language; the engine relies on premises being monotone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Fact:
    """A ground atom, e.g. ``symptom(cough)`` or ``flag(needs_urine_test)``.

    Equality and hashing are structural: two facts are the same iff their
    predicate and argument tuples are equal.
    """

    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.predicate}({', '.join(self.args)})"


@dataclass(frozen=True)
class Atom:
    fact: Fact


@dataclass(frozen=True)
class And:
    children: tuple["PremiseExpr", ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("AND needs at least two operands")


@dataclass(frozen=True)
class Or:
    children: tuple["PremiseExpr", ...]

    def __post_init__(self) -> None:
        if len(self.children) < 2:
            raise ValueError("OR needs at least two operands")


PremiseExpr = Union[Atom, And, Or]


@dataclass(frozen=True)
class Rule:
    """A named production: IF premise THEN fact [AND fact ...]."""

    name: str
    premise: PremiseExpr
    conclusion: tuple[Fact, ...]

    def __post_init__(self) -> None:
        if not self.conclusion:
            raise ValueError(f"rule {self.name!r} has an empty conclusion")


def premise_facts(expr: PremiseExpr) -> Iterator[Fact]:
    """Yield every fact mentioned in a premise, left to right."""
    if isinstance(expr, Atom):
        yield expr.fact
    else:
        for child in expr.children:
            yield from premise_facts(child)


def is_self_loop(rule: Rule) -> bool:
    """True when the rule's premise is a single atom that the rule itself
    concludes, i.e. the rule can only ever re-assert its own trigger."""
    return isinstance(rule.premise, Atom) and rule.premise.fact in rule.conclusion

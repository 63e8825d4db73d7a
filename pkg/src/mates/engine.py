"""Forward-chaining inference: working memory and saturation to fixpoint.

The engine is data driven. Starting from seed facts it repeatedly fires
every enabled rule, adding conclusion facts that are not already present,
until a full cycle adds nothing new. Facts are never retracted and premises
contain no negation, so working memory only grows and the final fact set is
the same whatever order the rules are declared in; only the firing trace
depends on order.

Each rule fires at most once per run (refraction). Rules are propositional,
so a second firing could only re-assert facts the duplicate-free working
memory already holds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import AbstractSet, Iterable, Iterator, NamedTuple, Sequence, Union

from .rules import And, Atom, Fact, PremiseExpr, Rule


class WorkingMemory:
    """A duplicate-free set of ground facts, with insertion order recorded.

    Order is kept for reporting only; membership semantics are pure set
    semantics. A working memory belongs to a single consultation session
    and must not be shared between sessions.
    """

    def __init__(self, facts: Iterable[Fact] = ()):
        self._facts: dict[Fact, None] = {}
        for fact in facts:
            self._facts[fact] = None

    def add(self, fact: Fact) -> bool:
        """Insert a fact; returns True iff it was not already present."""
        if fact in self._facts:
            return False
        self._facts[fact] = None
        return True

    def snapshot(self) -> frozenset[Fact]:
        return frozenset(self._facts)

    @property
    def facts(self) -> tuple[Fact, ...]:
        """All facts in insertion order."""
        return tuple(self._facts)

    def __contains__(self, fact: object) -> bool:
        return fact in self._facts

    def __len__(self) -> int:
        return len(self._facts)

    def __iter__(self) -> Iterator[Fact]:
        return iter(self._facts)

    def __repr__(self) -> str:
        return f"WorkingMemory({len(self._facts)} facts)"


@dataclass(frozen=True)
class FiringRecord:
    """One productive rule firing: the cycle it happened in and the facts
    it newly asserted (re-assertions of known facts are not recorded)."""

    cycle: int
    rule_name: str
    asserted: tuple[Fact, ...]


def eval_premise(expr: PremiseExpr, facts: Union[WorkingMemory, AbstractSet[Fact]]) -> bool:
    """Atom holds iff its fact is present; AND needs all children, OR any."""
    if isinstance(expr, Atom):
        return expr.fact in facts
    if isinstance(expr, And):
        return all(eval_premise(child, facts) for child in expr.children)
    return any(eval_premise(child, facts) for child in expr.children)


def step(rules: Sequence[Rule], wm: WorkingMemory, fired: set[str],
         cycle: int = 0) -> list[FiringRecord]:
    """Run one match-fire cycle, mutating ``wm`` and ``fired``.

    Every rule not yet fired is evaluated against the working memory as it
    stood when the cycle began, in declaration order. Each enabled rule
    fires exactly once: its name joins ``fired`` and its conclusion facts
    are asserted. Only firings that added at least one new fact produce a
    FiringRecord.
    """
    at_cycle_start = wm.snapshot()
    records: list[FiringRecord] = []
    for rule in rules:
        if rule.name in fired:
            continue
        if not eval_premise(rule.premise, at_cycle_start):
            continue
        fired.add(rule.name)
        added = tuple(fact for fact in rule.conclusion if wm.add(fact))
        if added:
            records.append(FiringRecord(cycle, rule.name, added))
    return records


class FixpointRun(NamedTuple):
    memory: WorkingMemory
    firings: tuple[FiringRecord, ...]
    converged: bool


def run_to_fixpoint(rules: Sequence[Rule], wm: WorkingMemory,
                    max_cycles: int | None = None) -> FixpointRun:
    """Saturate working memory, cycling until no new fact appears.

    ``converged`` is True when a cycle added nothing, False when
    ``max_cycles`` ran out first. The default cap is ``len(rules) + 1``,
    which always suffices: every cycle before the last productive one fires
    at least one previously unfired rule. Callers may pass a lower cap as a
    defensive limit.
    """
    if max_cycles is None:
        max_cycles = len(rules) + 1
    if max_cycles < 1:
        raise ValueError("max_cycles must be at least 1")

    fired: set[str] = set()
    firings: list[FiringRecord] = []
    converged = False
    for cycle in range(max_cycles):
        before = len(wm)
        firings.extend(step(rules, wm, fired, cycle))
        if len(wm) == before:
            converged = True
            break
    return FixpointRun(wm, tuple(firings), converged)

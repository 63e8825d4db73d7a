"""Knowledge-base model: symptoms, disease records and structural validation.

A knowledge base declares an ordered symptom catalogue, an ordered list of
disease records (each holding its symptom set plus care/treatment and
if-untreated guidance texts), and any user-authored rules. The disease by
symptom incidence relation is derived from the records: entry (d, s) is 1
iff disease d lists symptom s.

Instances are immutable after construction and safe to share between any
number of concurrent consultations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .rules import Fact, Rule, is_self_loop, premise_facts

ID_PATTERN = re.compile(r"[a-z][a-z0-9_]*\Z")

# Predicates whose first argument must name a declared symptom / disease.
SYMPTOM_PREDICATE = "symptom"
DISEASE_PREDICATE = "disease"


class UnknownIdError(ValueError):
    """Raised when a lookup names symptom or disease ids that are not declared."""

    def __init__(self, namespace: str, offending_ids: tuple[str, ...]):
        self.namespace = namespace
        self.offending_ids = offending_ids
        ids = ", ".join(offending_ids)
        super().__init__(f"unknown {namespace} id(s): {ids}")


@dataclass(frozen=True)
class Symptom:
    id: str
    display_name: str


@dataclass(frozen=True)
class DiseaseRecord:
    id: str
    display_name: str
    symptoms: frozenset[str]
    care_treatment: str
    if_untreated: str


@dataclass(frozen=True)
class Violation:
    """One broken knowledge-base invariant, named by the offending id."""

    kind: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


@dataclass(frozen=True)
class KnowledgeBase:
    symptoms: tuple[Symptom, ...] = ()
    diseases: tuple[DiseaseRecord, ...] = ()
    rules: tuple[Rule, ...] = field(default=())

    @cached_property
    def symptom_ids(self) -> frozenset[str]:
        return frozenset(s.id for s in self.symptoms)

    @cached_property
    def disease_ids(self) -> frozenset[str]:
        return frozenset(d.id for d in self.diseases)

    @cached_property
    def _symptoms_by_id(self) -> dict[str, Symptom]:
        return {s.id: s for s in self.symptoms}

    @cached_property
    def _diseases_by_id(self) -> dict[str, DiseaseRecord]:
        return {d.id: d for d in self.diseases}

    def symptom(self, symptom_id: str) -> Symptom:
        try:
            return self._symptoms_by_id[symptom_id]
        except KeyError:
            raise UnknownIdError("symptom", (symptom_id,)) from None

    def disease(self, disease_id: str) -> DiseaseRecord:
        try:
            return self._diseases_by_id[disease_id]
        except KeyError:
            raise UnknownIdError("disease", (disease_id,)) from None


def incidence(kb: KnowledgeBase, disease_id: str, symptom_id: str) -> int:
    """Return 1 iff the disease lists the symptom, else 0.

    Both ids must be declared in the knowledge base; an undeclared id
    raises UnknownIdError rather than silently scoring 0.
    """
    disease = kb.disease(disease_id)
    if symptom_id not in kb.symptom_ids:
        raise UnknownIdError("symptom", (symptom_id,))
    return 1 if symptom_id in disease.symptoms else 0


def _check_fact_ids(fact: Fact, kb: KnowledgeBase, rule_name: str, where: str) -> list[Violation]:
    """Facts with the reserved symptom()/disease() predicates must reference
    declared ids; any other predicate is free-form."""
    violations = []
    if fact.predicate == SYMPTOM_PREDICATE:
        for arg in fact.args:
            if arg not in kb.symptom_ids:
                violations.append(Violation(
                    "unknown_symptom", arg,
                    f"rule {rule_name!r} {where} references undeclared symptom {arg!r}"))
    elif fact.predicate == DISEASE_PREDICATE:
        for arg in fact.args:
            if arg not in kb.disease_ids:
                violations.append(Violation(
                    "unknown_disease", arg,
                    f"rule {rule_name!r} {where} references undeclared disease {arg!r}"))
    return violations


def validate(kb: KnowledgeBase) -> list[Violation]:
    """Check every knowledge-base invariant, returning one Violation per break.

    An empty list means the knowledge base is well formed. Violations are
    values, not exceptions: callers decide whether a broken KB is fatal.
    """
    violations: list[Violation] = []

    seen_symptoms: set[str] = set()
    for symptom in kb.symptoms:
        if not ID_PATTERN.match(symptom.id):
            violations.append(Violation(
                "bad_id", symptom.id,
                f"symptom id {symptom.id!r} is not a lowercase identifier"))
        if symptom.id in seen_symptoms:
            violations.append(Violation(
                "duplicate_id", symptom.id,
                f"symptom id {symptom.id!r} is declared more than once"))
        seen_symptoms.add(symptom.id)
        if not symptom.display_name:
            violations.append(Violation(
                "empty_display_name", symptom.id,
                f"symptom {symptom.id!r} has an empty display name"))

    seen_diseases: set[str] = set()
    for disease in kb.diseases:
        if not ID_PATTERN.match(disease.id):
            violations.append(Violation(
                "bad_id", disease.id,
                f"disease id {disease.id!r} is not a lowercase identifier"))
        if disease.id in seen_diseases:
            violations.append(Violation(
                "duplicate_id", disease.id,
                f"disease id {disease.id!r} is declared more than once"))
        seen_diseases.add(disease.id)
        if not disease.symptoms:
            violations.append(Violation(
                "empty_symptoms", disease.id,
                f"disease {disease.id!r} lists no symptoms"))
        for symptom_id in sorted(disease.symptoms):
            if symptom_id not in kb.symptom_ids:
                violations.append(Violation(
                    "unknown_symptom", symptom_id,
                    f"disease {disease.id!r} references undeclared symptom {symptom_id!r}"))
        if not disease.care_treatment:
            violations.append(Violation(
                "empty_text", disease.id,
                f"disease {disease.id!r} has an empty care/treatment text"))
        if not disease.if_untreated:
            violations.append(Violation(
                "empty_text", disease.id,
                f"disease {disease.id!r} has an empty if-untreated text"))

    seen_rules: set[str] = set()
    for rule in kb.rules:
        if rule.name in seen_rules:
            violations.append(Violation(
                "duplicate_rule_name", rule.name,
                f"rule name {rule.name!r} is declared more than once"))
        seen_rules.add(rule.name)
        if is_self_loop(rule):
            violations.append(Violation(
                "self_loop", rule.name,
                f"rule {rule.name!r} concludes the sole fact of its own premise"))
        for fact in premise_facts(rule.premise):
            violations.extend(_check_fact_ids(fact, kb, rule.name, "premise"))
        for fact in rule.conclusion:
            violations.extend(_check_fact_ids(fact, kb, rule.name, "conclusion"))

    return violations


@lru_cache(maxsize=1)
def default_kb() -> KnowledgeBase:
    """Load the bundled maternal-care knowledge base.

    The returned instance is validated once and cached; it covers the ten
    major diseases that complicate pregnancy in Sub-Saharan Africa and the
    forty-symptom catalogue they draw on.
    """
    from importlib.resources import files

    from .dsl import parse_kb

    text = files("mates").joinpath("data/maternal_care.kb").read_text("utf-8")
    kb = parse_kb(text)
    problems = validate(kb)
    if problems:
        raise RuntimeError(f"bundled knowledge base is invalid: {problems[0]}")
    return kb

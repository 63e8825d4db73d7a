"""Consultation flows: disease lookup through the rule engine, and
symptom-driven disease suggestion.

Two entry points mirror how a health worker consults the system:

* ``consult_by_disease``: the disease is already known; retrieve its care
  and treatment guidance plus the consequences if it goes untreated. The
  retrieval runs through the forward-chaining engine over compiled
  productions rather than a direct dictionary lookup, so the inference
  path is genuinely exercised and auditable.
* ``rank``: only symptoms are known; every disease is scored by how many
  query symptoms it lists, and all diseases matching at least one symptom
  are suggested in descending score order, each carrying the same guidance
  payload the disease lookup would return.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .engine import WorkingMemory, run_to_fixpoint
from .kb import DISEASE_PREDICATE, KnowledgeBase, UnknownIdError
from .rules import Atom, Fact, Rule

TREATMENT_MARKER = "has_treatment"
UNTREATED_MARKER = "has_untreated"


@dataclass(frozen=True)
class Query:
    """The set of symptom ids a user poses in one consultation."""

    symptoms: frozenset[str]

    @classmethod
    def of(cls, symptom_ids: Iterable[str]) -> "Query":
        return cls(frozenset(symptom_ids))


@dataclass(frozen=True)
class Suggestion:
    disease: str
    score: int
    matched: frozenset[str]
    care_treatment: str
    if_untreated: str


@dataclass(frozen=True)
class ConsultationResult:
    """Ranked suggestions, scores non-increasing, ties in ascending id order."""

    suggestions: tuple[Suggestion, ...]
    query_echo: Query


class CareAdvice(NamedTuple):
    disease: str
    care_treatment: str
    if_untreated: str


def compile_disease_rules(kb: KnowledgeBase) -> list[Rule]:
    """Emit the retrieval productions, two per disease in declaration order.

    ``disease(d)`` enables both ``has_treatment(d)`` and ``has_untreated(d)``;
    those marker facts key the lookup of the stored guidance texts. When
    running the engine the compiled rules go after any user-authored rules.
    """
    compiled: list[Rule] = []
    for disease in kb.diseases:
        trigger = Atom(Fact(DISEASE_PREDICATE, (disease.id,)))
        compiled.append(Rule(f"treatment_for_{disease.id}", trigger,
                             (Fact(TREATMENT_MARKER, (disease.id,)),)))
        compiled.append(Rule(f"untreated_for_{disease.id}", trigger,
                             (Fact(UNTREATED_MARKER, (disease.id,)),)))
    return compiled


def _require_known(kb: KnowledgeBase, namespace: str, ids: Iterable[str]) -> None:
    declared = kb.disease_ids if namespace == "disease" else kb.symptom_ids
    unknown: list[str] = []
    for identifier in ids:
        if identifier not in declared and identifier not in unknown:
            unknown.append(identifier)
    if unknown:
        raise UnknownIdError(namespace, tuple(unknown))


def consult_by_disease(kb: KnowledgeBase,
                       disease_ids: Sequence[str]) -> list[CareAdvice]:
    """Retrieve guidance for the requested diseases via the rule engine.

    Seeds a fresh working memory with ``disease(d)`` for every requested id,
    saturates over user rules plus the compiled retrieval productions, then
    reads the guidance texts back off the marker facts. Duplicate request
    ids collapse to one entry; order follows the request. Should user rules
    derive further diseases, their guidance is appended in knowledge-base
    declaration order.

    Raises UnknownIdError (naming every offending id) before any inference
    runs; a partial result is never returned.
    """
    if not disease_ids:
        raise ValueError("disease_ids must be nonempty")
    _require_known(kb, "disease", disease_ids)

    requested = list(dict.fromkeys(disease_ids))
    wm = WorkingMemory(Fact(DISEASE_PREDICATE, (d,)) for d in requested)
    rules = list(kb.rules) + compile_disease_rules(kb)
    run = run_to_fixpoint(rules, wm)

    def retrieved(disease_id: str) -> bool:
        return (Fact(TREATMENT_MARKER, (disease_id,)) in run.memory
                or Fact(UNTREATED_MARKER, (disease_id,)) in run.memory)

    ordering = requested + [d.id for d in kb.diseases if d.id not in requested]
    advice: list[CareAdvice] = []
    for disease_id in ordering:
        if retrieved(disease_id):
            record = kb.disease(disease_id)
            advice.append(CareAdvice(disease_id, record.care_treatment,
                                     record.if_untreated))
    return advice


def score(kb: KnowledgeBase, query: Query) -> dict[str, int]:
    """Count, per disease, how many query symptoms its record lists.

    Every declared disease appears in the result, zero scores included.
    Unknown symptom ids raise UnknownIdError naming each offender.
    """
    _require_known(kb, "symptom", sorted(query.symptoms))
    return {d.id: len(d.symptoms & query.symptoms) for d in kb.diseases}


def rank(kb: KnowledgeBase, query: Query) -> ConsultationResult:
    """Suggest diseases matching at least one query symptom, best first.

    Sorted by score descending with ties broken by ascending disease id.
    Each suggestion carries its matched symptom set and the guidance texts
    obtained through ``consult_by_disease``, so a suggestion can be acted
    on without a second lookup.
    """
    scores = score(kb, query)
    ranked = sorted((d for d, s in scores.items() if s >= 1),
                    key=lambda d: (-scores[d], d))
    if not ranked:
        return ConsultationResult((), query)

    advice = {a.disease: a for a in consult_by_disease(kb, ranked)}
    suggestions = tuple(
        Suggestion(
            disease=d,
            score=scores[d],
            matched=kb.disease(d).symptoms & query.symptoms,
            care_treatment=advice[d].care_treatment,
            if_untreated=advice[d].if_untreated,
        )
        for d in ranked
    )
    return ConsultationResult(suggestions, query)

"""Forward-chaining expert system for maternal care consultation.

The package bundles a symptom/disease knowledge base with a rule DSL, a
production-rule inference engine, disease ranking from reported symptoms,
and an HTTP/CLI service surface over all of it.
"""

from .diagnosis import (
    CareAdvice,
    ConsultationResult,
    Query,
    Suggestion,
    compile_disease_rules,
    consult_by_disease,
    rank,
    score,
)
from .dsl import ParseError, parse_kb, parse_premise, render_kb, render_premise
from .engine import (
    FiringRecord,
    FixpointRun,
    WorkingMemory,
    eval_premise,
    run_to_fixpoint,
    step,
)
from .kb import (
    DiseaseRecord,
    KnowledgeBase,
    Symptom,
    UnknownIdError,
    Violation,
    default_kb,
    incidence,
    validate,
)
from .rules import And, Atom, Fact, Or, PremiseExpr, Rule
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "And",
    "Atom",
    "CareAdvice",
    "ConsultationResult",
    "DiseaseRecord",
    "Fact",
    "FiringRecord",
    "FixpointRun",
    "KnowledgeBase",
    "Or",
    "ParseError",
    "PremiseExpr",
    "Query",
    "Rule",
    "Suggestion",
    "Symptom",
    "UnknownIdError",
    "Violation",
    "WorkingMemory",
    "compile_disease_rules",
    "consult_by_disease",
    "create_app",
    "default_kb",
    "eval_premise",
    "incidence",
    "parse_kb",
    "parse_premise",
    "rank",
    "render_kb",
    "render_premise",
    "run_to_fixpoint",
    "score",
    "step",
    "validate",
]

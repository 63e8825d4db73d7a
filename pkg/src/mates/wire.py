"""Wire-format serialization for the consultation API.

Every JSON body the service emits is produced here, so the HTTP layer and
any other caller (the CLI, tests) agree byte for byte. Dict key order is
the schema field order; `to_json_bytes` is the single canonical encoder.
"""

from __future__ import annotations

import json
from typing import Any, Iterable

from .diagnosis import CareAdvice, ConsultationResult
from .kb import KnowledgeBase

ERROR_CODES = frozenset({"unknown_id", "bad_request", "kb_invalid"})


def to_json_bytes(payload: Any) -> bytes:
    """Encode a wire payload as compact UTF-8 JSON."""
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")).encode("utf-8")


def symptom_catalog(kb: KnowledgeBase) -> list[dict[str, str]]:
    return [{"id": s.id, "display_name": s.display_name} for s in kb.symptoms]


def disease_catalog(kb: KnowledgeBase) -> list[dict[str, str]]:
    return [{"id": d.id, "display_name": d.display_name} for d in kb.diseases]


def consult_disease_body(kb: KnowledgeBase, advice: Iterable[CareAdvice]) -> dict[str, Any]:
    results = [
        {
            "disease_id": a.disease,
            "display_name": kb.disease(a.disease).display_name,
            "care_treatment": a.care_treatment,
            "if_untreated": a.if_untreated,
        }
        for a in advice
    ]
    return {"results": results}


def consult_symptoms_body(kb: KnowledgeBase, result: ConsultationResult) -> dict[str, Any]:
    declaration_order = {s.id: i for i, s in enumerate(kb.symptoms)}
    suggestions = [
        {
            "disease_id": s.disease,
            "display_name": kb.disease(s.disease).display_name,
            "score": s.score,
            "matched_symptom_ids": sorted(s.matched, key=declaration_order.__getitem__),
            "care_treatment": s.care_treatment,
            "if_untreated": s.if_untreated,
        }
        for s in result.suggestions
    ]
    return {"suggestions": suggestions}


def error_body(code: str, message: str, offending_ids: Iterable[str] = ()) -> dict[str, Any]:
    if code not in ERROR_CODES:
        raise ValueError(f"unknown error code: {code!r}")
    return {"code": code, "message": message, "offending_ids": list(offending_ids)}

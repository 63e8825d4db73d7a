import random

import pytest

from mates.diagnosis import (
    Query,
    compile_disease_rules,
    consult_by_disease,
    rank,
    score,
)
from mates.dsl import parse_kb
from mates.kb import UnknownIdError
from mates.rules import Atom, Fact

from oracles import brute_ranking, brute_scores
from randgen import random_kb, random_query_ids

ORACLE_SEED = 0xD1A6
ORACLE_CASES = 200

SCENARIO = ["cough", "weight_loss", "night_sweat", "fever"]


def test_query_of_dedupes():
    q = Query.of(["fever", "cough", "fever"])
    assert q.symptoms == frozenset({"fever", "cough"})


def test_query_of_empty():
    assert Query.of([]).symptoms == frozenset()


# --- scoring -------------------------------------------------------------

def test_score_counts_shared_symptoms(kb):
    scores = score(kb, Query.of(SCENARIO))
    assert scores["tb"] == 4
    assert scores["hiv_aids"] == 3
    assert scores["mental_health_conditions"] == 0


def test_score_covers_every_disease(kb):
    scores = score(kb, Query.of(["cough"]))
    assert set(scores) == {d.id for d in kb.diseases}


def test_score_empty_query_is_all_zero(kb):
    assert set(score(kb, Query.of([])).values()) == {0}


def test_score_bounded_by_query_and_disease_size(kb):
    rng = random.Random(ORACLE_SEED + 2)
    for _ in range(50):
        ids = random_query_ids(rng, kb)
        for disease_id, n in score(kb, Query.of(ids)).items():
            assert 0 <= n <= min(len(ids), len(kb.disease(disease_id).symptoms))


def test_score_unknown_symptoms_collected(kb):
    with pytest.raises(UnknownIdError) as exc_info:
        score(kb, Query.of(["cough", "zzz", "aaa"]))
    assert exc_info.value.offending_ids == ("aaa", "zzz")


def test_score_matches_brute_force(kb):
    rng = random.Random(ORACLE_SEED)
    for _ in range(ORACLE_CASES):
        ids = random_query_ids(rng, kb)
        assert score(kb, Query.of(ids)) == brute_scores(kb, set(ids))


# --- ranking -------------------------------------------------------------

def test_rank_paper_scenario(kb):
    result = rank(kb, Query.of(SCENARIO))
    top = result.suggestions[0]
    assert top.disease == "tb"
    assert top.score == 4
    assert top.matched == frozenset(SCENARIO)
    assert top.care_treatment == kb.disease("tb").care_treatment
    assert top.if_untreated == kb.disease("tb").if_untreated


def test_rank_excludes_zero_scores(kb):
    result = rank(kb, Query.of(["jaundice"]))
    ids = [s.disease for s in result.suggestions]
    assert set(ids) == {"hepatitis_b", "hepatitis_c"}


def test_rank_empty_query(kb):
    result = rank(kb, Query.of([]))
    assert result.suggestions == ()
    assert result.query_echo == Query.of([])


def test_rank_ties_break_by_ascending_id():
    kb = parse_kb(
        'SYMPTOM s1 "S1"\n'
        'SYMPTOM s2 "S2"\n'
        'DISEASE zeta "Z" SYMPTOMS: s1 TREATMENT: "t" IF_UNTREATED: "u"\n'
        'DISEASE alpha "A" SYMPTOMS: s1 TREATMENT: "t" IF_UNTREATED: "u"\n'
        'DISEASE mid "M" SYMPTOMS: s1, s2 TREATMENT: "t" IF_UNTREATED: "u"\n'
    )
    result = rank(kb, Query.of(["s1", "s2"]))
    assert [s.disease for s in result.suggestions] == ["mid", "alpha", "zeta"]


def test_rank_matched_is_intersection(kb):
    result = rank(kb, Query.of(["fever", "jaundice", "back_pain"]))
    for s in result.suggestions:
        assert s.matched == kb.disease(s.disease).symptoms & {"fever", "jaundice", "back_pain"}
        assert s.score == len(s.matched)


def test_rank_matches_brute_force(kb):
    rng = random.Random(ORACLE_SEED + 1)
    for _ in range(ORACLE_CASES):
        ids = random_query_ids(rng, kb)
        got = [(s.disease, s.score) for s in rank(kb, Query.of(ids)).suggestions]
        assert got == brute_ranking(kb, set(ids))


def test_rank_matches_brute_force_on_random_kbs():
    rng = random.Random(ORACLE_SEED + 3)
    for _ in range(60):
        kb = random_kb(rng, max_symptoms=25, max_diseases=8, with_rules=True)
        ids = random_query_ids(rng, kb)
        got = [(s.disease, s.score) for s in rank(kb, Query.of(ids)).suggestions]
        assert got == brute_ranking(kb, set(ids))


# --- compiled retrieval rules ---------------------------------------------

def test_compile_disease_rules_shape(kb):
    rules = compile_disease_rules(kb)
    assert len(rules) == 2 * len(kb.diseases)
    first, second = rules[0], rules[1]
    assert first.name == "treatment_for_hiv_aids"
    assert first.premise == Atom(Fact("disease", ("hiv_aids",)))
    assert first.conclusion == (Fact("has_treatment", ("hiv_aids",)),)
    assert second.name == "untreated_for_hiv_aids"
    assert second.conclusion == (Fact("has_untreated", ("hiv_aids",)),)


# --- retrieval -----------------------------------------------------------

def test_consult_returns_stored_texts(kb):
    for d in kb.diseases:
        advice = consult_by_disease(kb, [d.id])
        assert advice[0].disease == d.id
        assert advice[0].care_treatment == d.care_treatment
        assert advice[0].if_untreated == d.if_untreated


def test_consult_preserves_request_order(kb):
    advice = consult_by_disease(kb, ["malaria", "tb"])
    assert [a.disease for a in advice] == ["malaria", "tb"]


def test_consult_collapses_duplicates(kb):
    advice = consult_by_disease(kb, ["tb", "tb", "tb"])
    assert [a.disease for a in advice] == ["tb"]


def test_consult_rejects_empty_request(kb):
    with pytest.raises(ValueError):
        consult_by_disease(kb, [])


def test_consult_collects_unknown_ids(kb):
    with pytest.raises(UnknownIdError) as exc_info:
        consult_by_disease(kb, ["dragonpox", "tb", "scurvy", "dragonpox"])
    assert exc_info.value.offending_ids == ("dragonpox", "scurvy")


def test_consult_includes_rule_derived_diseases():
    kb = parse_kb(
        'SYMPTOM s "S"\n'
        'DISEASE primary "P" SYMPTOMS: s TREATMENT: "tp" IF_UNTREATED: "up"\n'
        'DISEASE secondary "Q" SYMPTOMS: s TREATMENT: "tq" IF_UNTREATED: "uq"\n'
        'RULE escalate: IF disease(primary) THEN disease(secondary)\n'
    )
    advice = consult_by_disease(kb, ["primary"])
    assert [a.disease for a in advice] == ["primary", "secondary"]
    assert advice[1].care_treatment == "tq"


def test_consult_ignores_symptom_rules_without_symptom_facts(kb):
    # tb_screen needs symptom() facts; a disease consultation seeds none.
    advice = consult_by_disease(kb, ["hypertension"])
    assert [a.disease for a in advice] == ["hypertension"]


def test_rank_and_consult_agree_on_payloads(kb):
    result = rank(kb, Query.of(["fever", "headache"]))
    ids = [s.disease for s in result.suggestions]
    by_id = {a.disease: a for a in consult_by_disease(kb, ids)}
    for s in result.suggestions:
        assert s.care_treatment == by_id[s.disease].care_treatment
        assert s.if_untreated == by_id[s.disease].if_untreated

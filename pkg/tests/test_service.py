import random

import pytest
from fastapi.testclient import TestClient

from mates import wire
from mates.diagnosis import Query, consult_by_disease, rank
from mates.dsl import parse_kb
from mates.service import create_app

from randgen import random_query_ids

CONTRACT_SEED = 0xAB1E


@pytest.fixture(scope="module")
def client(kb):
    with TestClient(create_app(kb)) as c:
        yield c


def post_symptoms(client, ids):
    return client.post("/api/v1/consult/symptoms", json={"symptom_ids": ids})


def post_diseases(client, ids):
    return client.post("/api/v1/consult/disease", json={"disease_ids": ids})


# --- catalogs ------------------------------------------------------------

def test_symptom_catalog(kb, client):
    resp = client.get("/api/v1/symptoms")
    assert resp.status_code == 200
    assert resp.headers["content-type"] == "application/json"
    body = resp.json()
    assert [entry["id"] for entry in body] == [s.id for s in kb.symptoms]
    assert body[0] == {"id": "cough", "display_name": "Cough"}
    assert {"id": "back_pain", "display_name": "Back Pain"} in body


def test_disease_catalog(kb, client):
    resp = client.get("/api/v1/diseases")
    assert resp.status_code == 200
    body = resp.json()
    assert len(body) == 10
    assert [entry["id"] for entry in body] == [d.id for d in kb.diseases]
    assert {"id": "hepatitis_b", "display_name": "Hepatitis B"} in body


def test_catalogs_byte_equal_serialization(kb, client):
    assert client.get("/api/v1/symptoms").content == wire.to_json_bytes(wire.symptom_catalog(kb))
    assert client.get("/api/v1/diseases").content == wire.to_json_bytes(wire.disease_catalog(kb))


def test_empty_kb_catalogs():
    with TestClient(create_app(parse_kb(""))) as c:
        assert c.get("/api/v1/symptoms").json() == []
        assert c.get("/api/v1/diseases").json() == []


# --- consultation endpoints -----------------------------------------------

def test_consult_disease_payload(kb, client):
    resp = post_diseases(client, ["tb"])
    assert resp.status_code == 200
    results = resp.json()["results"]
    assert len(results) == 1
    assert results[0]["disease_id"] == "tb"
    assert results[0]["display_name"] == "TB"
    assert results[0]["care_treatment"].startswith("Ethambutol, isoniazid, rifampicin")


def test_consult_disease_request_order(client):
    resp = post_diseases(client, ["malaria", "tb", "malaria"])
    assert [r["disease_id"] for r in resp.json()["results"]] == ["malaria", "tb"]


def test_consult_disease_byte_equal(kb, client):
    for ids in (["tb"], ["tb", "malaria"], ["hypertension", "anemia", "uti"]):
        expected = wire.to_json_bytes(
            wire.consult_disease_body(kb, consult_by_disease(kb, ids)))
        assert post_diseases(client, ids).content == expected


def test_consult_symptoms_scenario(client):
    resp = post_symptoms(client, ["cough", "weight_loss", "night_sweat", "fever"])
    assert resp.status_code == 200
    first = resp.json()["suggestions"][0]
    assert first["disease_id"] == "tb"
    assert first["score"] == 4
    assert first["matched_symptom_ids"] == ["cough", "fever", "weight_loss", "night_sweat"]


def test_consult_symptoms_byte_equal(kb, client):
    rng = random.Random(CONTRACT_SEED)
    for _ in range(25):
        ids = random_query_ids(rng, kb)
        expected = wire.to_json_bytes(
            wire.consult_symptoms_body(kb, rank(kb, Query.of(ids))))
        assert post_symptoms(client, ids).content == expected


def test_consult_symptoms_empty_is_ok(client):
    resp = post_symptoms(client, [])
    assert resp.status_code == 200
    assert resp.content == b'{"suggestions":[]}'


def test_consult_symptoms_scores_non_increasing(kb, client):
    rng = random.Random(CONTRACT_SEED + 1)
    for _ in range(25):
        ids = random_query_ids(rng, kb)
        scores = [s["score"] for s in post_symptoms(client, ids).json()["suggestions"]]
        assert scores == sorted(scores, reverse=True)


def test_repeated_requests_are_identical(client):
    first = post_symptoms(client, ["fever", "headache"])
    second = post_symptoms(client, ["fever", "headache"])
    assert first.content == second.content
    assert client.get("/api/v1/symptoms").content == client.get("/api/v1/symptoms").content


# --- error contract --------------------------------------------------------

def test_unknown_disease_ids_404(client):
    resp = post_diseases(client, ["tb", "dragonpox", "scurvy"])
    assert resp.status_code == 404
    body = resp.json()
    assert body["code"] == "unknown_id"
    assert body["offending_ids"] == ["dragonpox", "scurvy"]
    assert resp.headers["content-type"] == "application/json"


def test_unknown_symptom_ids_404(client):
    resp = post_symptoms(client, ["cough", "zzz"])
    assert resp.status_code == 404
    assert resp.json()["offending_ids"] == ["zzz"]


def test_empty_disease_list_is_400(client):
    resp = post_diseases(client, [])
    assert resp.status_code == 400
    assert resp.json()["code"] == "bad_request"


@pytest.mark.parametrize("content", [
    b"not json at all",
    b'{"wrong_key": []}',
    b'{"symptom_ids": "cough"}',
    b'{"symptom_ids": [1, 2]}',
])
def test_malformed_consult_bodies_are_400(client, content):
    resp = client.post("/api/v1/consult/symptoms", content=content,
                       headers={"content-type": "application/json"})
    assert resp.status_code == 400
    body = resp.json()
    assert body["code"] == "bad_request"
    assert set(body) == {"code", "message", "offending_ids"}


def test_unknown_api_path_carries_error_body(client):
    resp = client.get("/api/v1/nope")
    assert resp.status_code == 404
    assert set(resp.json()) == {"code", "message", "offending_ids"}


def test_wrong_method_carries_error_body(client):
    resp = client.get("/api/v1/consult/disease")
    assert resp.status_code == 405
    assert set(resp.json()) == {"code", "message", "offending_ids"}


def test_invalid_kb_answers_500_everywhere():
    broken = parse_kb(
        'SYMPTOM s "S"\n'
        'DISEASE d "D" SYMPTOMS: ghost TREATMENT: "t" IF_UNTREATED: "u"\n'
    )
    with TestClient(create_app(broken)) as c:
        for resp in (
            c.get("/api/v1/symptoms"),
            c.get("/api/v1/diseases"),
            c.post("/api/v1/consult/disease", json={"disease_ids": ["d"]}),
            c.post("/api/v1/consult/symptoms", json={"symptom_ids": []}),
        ):
            assert resp.status_code == 500
            assert resp.json()["code"] == "kb_invalid"
            assert "unknown_symptom" in resp.json()["message"]


# --- static UI slot ---------------------------------------------------------

def test_placeholder_page_without_ui(client):
    resp = client.get("/")
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/html")


def test_mounted_ui_dir_is_served(kb, tmp_path):
    (tmp_path / "index.html").write_text("<h1>console</h1>")
    (tmp_path / "app.js").write_text("// bundle")
    with TestClient(create_app(kb, ui_dir=tmp_path)) as c:
        assert "console" in c.get("/").text
        assert c.get("/app.js").status_code == 200
        assert c.get("/api/v1/symptoms").status_code == 200

import json

from fastapi.testclient import TestClient

from main import app

client = TestClient(app)

DOCUMENT = {
    "algebras": {"S": {"atoms": 2, "adjacency": [[True, False], [False, True]]}},
    "commands": ["check-axioms S LCA", "roundtrip S"],
}


def test_root():
    assert client.get("/").status_code == 200


def test_run_document():
    response = client.post("/run", json={"document": DOCUMENT, "seed": 5})
    assert response.status_code == 200
    body = response.json()
    assert body["exit_code"] == 0
    assert body["seed"] == 5
    assert [r["status"] for r in body["results"]] == ["holds", "holds"]


def test_bad_document_is_unprocessable():
    bad = {"algebras": {"T": {"atoms": 2, "adjacency": [[True, True], [False, True]]}}, "commands": []}
    response = client.post("/run", json={"document": bad})
    assert response.status_code == 422
    assert response.json()["detail"].startswith("ParseError")


def test_dot_endpoint():
    response = client.post("/dot", json={"document": DOCUMENT, "target": "dual-space"})
    assert response.status_code == 200
    assert response.text.count("label=") == 2


def test_run_takes_the_document_as_an_object():
    response = client.post("/run", json={"document": json.dumps(DOCUMENT)})
    assert response.status_code == 422

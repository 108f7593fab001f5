import warnings

import pytest

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from fastapi.testclient import TestClient

from superyangian.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    assert client.get("/health").json() == {"status": "ok"}


def test_cartan_endpoint(client):
    r = client.post("/api/cartan", json={"diagram": "EEO"})
    assert r.status_code == 200
    assert r.json() == {"diagram": "EEO", "cartan": [[2, -1], [-1, 0]]}
    r = client.post("/api/cartan", json={"diagram": "EOE"})
    assert r.json()["cartan"] == [[0, 1], [1, 0]]


def test_diagram_endpoints(client):
    r = client.post("/api/diagram/distinguished", json={"n_even": 2, "n_odd": 1})
    assert r.json()["diagram"] == "EEO"
    r = client.post("/api/diagram", json={"diagram": "0110"})
    assert r.json()["diagram"] == "EOOE"
    r = client.post("/api/cartan", json={"diagram": "EEE"})
    assert r.status_code == 422
    r = client.post("/api/diagram/distinguished", json={"n_even": 0, "n_odd": 1})
    assert r.status_code == 422


def test_roots_endpoint(client):
    r = client.post("/api/roots", json={"diagram": "EO"})
    body = r.json()
    assert body["positive_roots"] == ["1"]
    assert body["parities"] == [1]


def test_weyl_endpoint(client):
    r = client.post("/api/weyl", json={"n_even": 2, "n_odd": 2})
    body = r.json()
    assert body["group_order"] == 4
    assert body["complete_order"] == 24
    assert body["passed"]


def test_series_endpoint_deterministic(client):
    a = client.post("/api/series", json={"kind": "G", "order": 6}).json()
    b = client.post("/api/series", json={"kind": "G", "order": 6}).json()
    assert a == b
    assert a["text"] == "-1/24 v^2 + 1/2880 v^4 - 1/181440 v^6"
    r = client.post("/api/series", json={"kind": "qnumber", "order": 4, "n": 2})
    assert r.json()["terms"] == {"1": "2", "hb^2": "1/4", "hb^4": "1/192"}
    r = client.post("/api/series", json={"kind": "qnumber", "order": 4})
    assert r.status_code == 422


def test_ge_endpoint(client):
    r = client.post("/api/check/ge", json={"a": "1", "sign": "plus", "order": 6})
    assert r.json()["passed"]
    r = client.post("/api/check/ge", json={"a": "-1/2", "sign": "minus",
                    "order": 6})
    assert r.json()["passed"]
    r = client.post("/api/check/ge", json={"a": "1", "parity": -1})
    body = r.json()
    assert body["refused"] and not body["passed"]


def test_verify_endpoint(client):
    r = client.post("/api/verify", json={"suite": "lie", "diagram": "EOE",
                                         "cap": 2, "length": 3})
    body = r.json()
    assert body["passed"]
    assert body["counts"]["fail"] == 0
    r = client.post("/api/verify", json={"suite": "hopf", "diagram": "EOE",
                                         "cap": 2, "length": 3})
    body = r.json()
    assert body["passed"]  # skipped checks do not fail the suite
    assert body["checks"][0]["status"] == "skip"
    assert "constraint" in body["checks"][0]["detail"]
    r = client.post("/api/verify", json={"suite": "nope", "diagram": "EEO"})
    assert r.status_code == 422


def test_classify_endpoint(client):
    r = client.post("/api/classify", json={"n_even": 2, "n_odd": 1,
                                           "mode": "hopf"})
    assert r.json()["classes"] == [["EEO", "OEE"], ["EOE"]]
    r = client.post("/api/classify/distinguish",
                    json={"first": "EEO", "second": "OEE"})
    assert r.json()["verdict"] == "same-class"


def test_element_endpoints(client):
    r = client.post("/api/delta", json={"diagram": "EEO", "generator": "h:1:0",
                                        "cap": 2})
    assert r.json()["text"] == "1 (x) h[1,0] + h[1,0] (x) 1"
    r = client.post("/api/phi", json={"diagram": "EEO", "generator": "H:1:0",
                                      "cap": 2})
    assert r.json()["text"] == "h[1,0]"
    r = client.post("/api/delta", json={"diagram": "EOE", "generator": "h:1:1",
                                        "cap": 2})
    assert r.status_code == 422  # constraint refusal
    r = client.post("/api/phi", json={"diagram": "EOE", "generator": "E:1:0",
                                      "cap": 2})
    assert r.status_code == 422

import json
import sys

import pytest
from fastapi.testclient import TestClient

import mzvassoc.service.app  # noqa: F401  (the submodule, not the app attribute)
from mzvassoc.errors import RankDeficientError
from mzvassoc.scalars import render_scalar, scalar_from_terms
from mzvassoc.service import ServiceState, create_app
from mzvassoc.words import Composition

app_module = sys.modules["mzvassoc.service.app"]


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(ServiceState(max_weight=8)))


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok", "max_weight": 8}


def test_reduce_endpoint(client):
    resp = client.post("/mzv/reduce", json={"composition": "4,2"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["rendered"] == "ζ(3)^2 - 32/105 ζ(2)^3"
    assert body["composition"] == [4, 2]
    assert body["weight"] == 6
    assert {"rational": "-32/105", "atoms": ["z2", "z2", "z2"]} in body["terms"]


def test_reduce_rejects_nonadmissible(client):
    resp = client.post("/mzv/reduce", json={"composition": "1,2"})
    assert resp.status_code == 400
    assert resp.json()["kind"] == "usage"


def test_shuffle_endpoint(client):
    resp = client.post("/mzv/shuffle", json={"u": "xy", "v": "xy"})
    assert resp.status_code == 200
    assert resp.json()["rendered"] == "4 x^2y^2 + 2 xyxy"


def test_stuffle_endpoint(client):
    resp = client.post("/mzv/stuffle", json={"u": "2,3", "v": "5"})
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["terms"]) == 5
    assert {"rational": "1", "composition": [7, 3]} in body["terms"]


def test_check_table_endpoint(client):
    resp = client.post("/mzv/check-table", json={"max_weight": 6})
    assert resp.status_code == 200
    body = resp.json()
    assert body["ok"] is True
    assert body["max_abs_deviation"] < 1e-6
    assert body["entries"] > 0


def test_coeff_record_and_roundtrip(client):
    resp = client.post("/assoc/coeff", json={"which": "half", "word": "x^2yx^4y"})
    assert resp.status_code == 200
    body = resp.json()
    assert body["rendered"] == "(2ζ(3,5)-7ζ(3)ζ(5))/(512π^8)"
    assert body["word"] == "x^2yx^4y"
    # structured terms reconstruct the scalar; rendered matches its renderer
    scalar = scalar_from_terms(body["terms"])
    assert render_scalar(scalar, "pi_power") == body["rendered"]
    assert json.loads(json.dumps(body)) == body


def test_coeff_style_override(client):
    resp = client.post("/assoc/coeff",
                       json={"which": "kz", "word": "xy", "style": "two_pi_i"})
    assert resp.json()["rendered"] == "-ζ(2)/(2πi)^2"
    resp = client.post("/assoc/coeff", json={"which": "kz", "word": "xy"})
    assert resp.json()["rendered"] == "1/24"


def test_coeff_at_family(client):
    resp = client.post("/assoc/coeff", json={"which": "at", "word": "x^2yx^4y"})
    assert resp.json()["rendered"] == "(2048ζ(3,5)-6293ζ(3)ζ(5))/(524288π^8)"
    resp = client.post("/assoc/coeff", json={"which": "at", "word": "x^2yxy"})
    assert resp.json()["rendered"] == "0"


def test_coeff_usage_errors(client):
    assert client.post("/assoc/coeff",
                       json={"which": "kz", "word": "x^0y"}).status_code == 400
    assert client.post("/assoc/coeff",
                       json={"which": "kz", "word": "x^9y"}).status_code == 400
    assert client.post("/assoc/coeff",
                       json={"which": "nope", "word": "xy"}).status_code == 422
    assert client.post("/assoc/coeff", json={}).status_code == 422


def test_table_endpoint(client):
    resp = client.post("/assoc/table", json={"which": "kz", "max_len": 3})
    assert resp.status_code == 200
    records = resp.json()["records"]
    assert [r["word"] for r in records] == ["xy", "yx", "x^2y", "xyx", "xy^2",
                                            "yx^2", "yxy", "y^2x"]
    resp = client.post("/assoc/table", json={"which": "kz", "max_len": 9})
    assert resp.status_code == 400


def test_at_solve_endpoint(client):
    resp = client.post("/at/solve", json={"n": 1})
    assert resp.status_code == 200
    body = resp.json()
    assert body["c2n_rendered"] == "60ζ(3)/(2πi)^3"
    assert body["cab"] == [{"alpha": 0, "beta": 1,
                            "terms": [{"rational": "60", "atoms": ["z3"],
                                       "twoPiIPower": 3}],
                            "rendered": "60ζ(3)/(2πi)^3"}]


def test_at_solve_gating(client):
    assert client.post("/at/solve", json={"n": 9}).status_code == 400
    resp = client.post("/at/solve", json={"n": 4})
    assert resp.status_code == 400
    assert "extended" in resp.json()["detail"]
    resp = client.post("/at/solve", json={"n": 4, "extended": True})
    assert resp.status_code == 200
    assert resp.json()["c2n_rendered"] == "437580ζ(9)/(2πi)^9"


def test_at_integrals_endpoint(client):
    resp = client.post("/at/integrals", json={"n": 2})
    assert resp.status_code == 200
    values = {item["name"]: item["value"] for item in resp.json()["values"]}
    assert values["J2(2,1)"] == "1199/154828800"
    assert values["I1(1)"] == "1/30"
    assert values["J1(2)"] == "1/1260"


def test_verify_theorems_endpoint(client):
    resp = client.post("/assoc/verify-theorems")
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    names = {c["name"] for c in body["checks"]}
    assert "half_theorem" in names and "at_theorem" in names
    assert all(c["passed"] for c in body["checks"])


def test_math_failure_maps_to_409(monkeypatch):
    def exploding(*args, **kwargs):
        raise RankDeficientError(8, [Composition((6, 2))])

    monkeypatch.setattr(app_module, "build_reduction_table", exploding)
    client = TestClient(create_app(ServiceState(max_weight=8)))
    resp = client.post("/mzv/check-table", json={"max_weight": 8})
    assert resp.status_code == 409
    body = resp.json()
    assert body["kind"] == "math"
    assert body["unreduced"] == ["(6,2)"]


def test_env_var_controls_default_weight(monkeypatch):
    monkeypatch.setenv("ASSOC_MAX_WEIGHT", "6")
    client = TestClient(create_app())
    assert client.get("/health").json()["max_weight"] == 6
    assert client.post("/assoc/coeff",
                       json={"which": "kz", "word": "x^6y"}).status_code == 400
    monkeypatch.setenv("ASSOC_MAX_WEIGHT", "not-a-number")
    from mzvassoc.errors import UsageError

    with pytest.raises(UsageError):
        create_app()

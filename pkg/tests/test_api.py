import math

import pytest
from fastapi.testclient import TestClient

from app.main import app

client = TestClient(app)
API = "/api/v1/periods"


def test_root_and_health():
    assert client.get("/").status_code == 200
    response = client.get(f"{API}/health")
    assert response.status_code == 200
    assert response.json()["status"] == "healthy"


def test_bound():
    response = client.post(f"{API}/bound", json={"expr": "pi_log2"})
    assert response.status_code == 200
    body = response.json()
    assert body["value"] == 3
    assert body["provenance"] == "registry"
    assert body["max_cell_dim"] == 3
    assert "X-Response-Time" in response.headers


def test_eval():
    response = client.post(f"{API}/eval", json={"expr": "log(2)", "samples": 20000, "seed": 1})
    assert response.status_code == 200
    re = response.json()["re"]
    assert abs(re["mean"] - math.log(2)) <= 4 * re["stderr"]


def test_zeta():
    response = client.post(f"{API}/zeta", json={"expr": "pi", "t": 0.5, "terms": 8})
    assert response.status_code == 200
    body = response.json()
    assert body["power_bounds"] == [2, 3, 5, 6, 8, 9, 11, 12]
    assert body["closed_bound"] == pytest.approx(math.exp(2))


def test_ratint():
    payload = {"num": ["1"], "den": ["1", "0", "1"], "from": "0", "to": "1"}
    response = client.post(f"{API}/ratint", json=payload)
    assert response.status_code == 200
    assert response.json()["float_value"] == pytest.approx(math.pi / 4)

    factored = {"num": ["1"], "factored": {"linear": [["0", 1], ["-1", 1]]}, "from": "1", "to": "2"}
    response = client.post(f"{API}/ratint", json=factored)
    assert response.status_code == 200
    assert response.json()["float_value"] == pytest.approx(math.log(4 / 3))


def test_report_and_gallery():
    response = client.post(f"{API}/report", json={"expr1": "pi", "expr2": "pi_log2"})
    assert response.status_code == 200
    assert response.json()["conditional"] is True

    response = client.get(f"{API}/gallery")
    assert response.status_code == 200
    assert len(response.json()) == 11


def test_witness():
    response = client.post(f"{API}/witness", json={"expr": "scale(0 + 1i, pi)"})
    assert response.status_code == 200
    body = response.json()
    assert body["signature"] == "(0 + 1i)*pi"
    assert len(body["buckets"]["im_pos"]) == 1


def test_errors():
    response = client.post(f"{API}/bound", json={"expr": "mul(pi"})
    assert response.status_code == 422
    assert response.json()["detail"]["error"] == "syntax_error"

    payload = {"num": ["1"], "den": ["-2", "0", "1"], "from": "0", "to": "2"}
    response = client.post(f"{API}/ratint", json=payload)
    assert response.status_code == 400
    assert response.json()["detail"]["error"] == "pole_in_interval"

    both = {"num": ["1"], "den": ["1"], "factored": {}, "from": "0", "to": "1"}
    assert client.post(f"{API}/ratint", json=both).status_code == 400

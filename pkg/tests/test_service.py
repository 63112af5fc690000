import math

import pytest
from fastapi.testclient import TestClient

from entlab.service import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    assert resp.json()["status"] == "ok"


def test_trajectory_endpoint(client):
    resp = client.post(
        "/api/trajectory",
        json={
            "env": {"model": "strong-t0", "lambda_over_gamma": 0.1},
            "r": 1.0,
            "alpha_sq": 0.5,
            "grid": {"tmax_gamma": 5.0, "steps": 16},
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["gamma_t"]) == 16
    assert body["c_phi"][0] == 1.0
    assert body["csv"].splitlines()[-1].count(",") == 2
    assert body["config"]["env"] == "strong-t0"


def test_trajectory_accepts_inf_x_as_string(client):
    resp = client.post(
        "/api/trajectory",
        json={
            "env": {"model": "markovian", "x": "inf"},
            "r": 1.0,
            "alpha_sq": 0.5,
            "grid": {"tmax_gamma": 2.0, "steps": 8},
        },
    )
    assert resp.status_code == 200
    assert resp.json()["config"]["x"] == "inf"


def test_esd_endpoint_matches_high_t(client):
    resp = client.post(
        "/api/esd",
        json={
            "env": {"model": "markovian", "x": 0.1},
            "family": "psi",
            "r": 1.0,
            "alpha_sq": 0.5,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["terminal"] is True
    assert body["onset_gamma_t"] == pytest.approx(0.88 * 0.1 / 2.0, rel=0.01)


def test_sweep_endpoint(client):
    resp = client.post(
        "/api/sweep",
        json={
            "env": {"model": "markovian", "x": 10.0},
            "r": 1.0,
            "alpha_sq": 0.5,
            "grid": {"tmax_gamma": 4.0, "steps": 8},
            "param": "r",
            "param_min": 0.0,
            "param_max": 1.0,
            "param_points": 3,
        },
    )
    assert resp.status_code == 200
    body = resp.json()
    assert body["param_name"] == "r"
    assert len(body["c_phi"]) == 3 and len(body["c_phi"][0]) == 8


def test_figure_endpoint_returns_csv(client):
    resp = client.get("/api/figures/1", params={"steps": 20})
    assert resp.status_code == 200
    assert resp.headers["content-type"].startswith("text/csv")
    lines = [l for l in resp.text.splitlines() if not l.startswith("#")]
    assert lines[0] == "gamma_t,c_phi,c_psi"
    assert len(lines) == 21


def test_figure_endpoint_rejects_bad_id(client):
    resp = client.get("/api/figures/9")
    assert resp.status_code == 422  # pydantic range check


def test_domain_error_maps_to_400(client):
    resp = client.post(
        "/api/trajectory",
        json={
            "env": {"model": "strong-t0"},  # missing lambda_over_gamma
            "r": 1.0,
            "alpha_sq": 0.5,
        },
    )
    assert resp.status_code == 400
    assert "lambda_over_gamma" in resp.json()["detail"]


def test_validation_error_maps_to_422(client):
    resp = client.post(
        "/api/trajectory",
        json={"env": {"model": "markovian", "x": 1.0}, "r": 2.0, "alpha_sq": 0.5},
    )
    assert resp.status_code == 422


def test_validate_endpoint_subset(client):
    resp = client.post("/api/validate", json={"checks": ["env_identity_at_t0"]})
    assert resp.status_code == 200
    body = resp.json()
    assert body["passed"] is True
    assert body["checks"][0]["name"] == "env_identity_at_t0"


def test_cli_against_live_server(tmp_path):
    # byte-identical output through the HTTP path and the in-process path
    import threading
    import time

    import uvicorn

    from entlab.cli import main

    config = uvicorn.Config(create_app(), host="127.0.0.1", port=8731, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        for _ in range(100):
            if server.started:
                break
            time.sleep(0.05)
        assert server.started
        args = [
            "trajectory", "--env", "markovian", "--x", "5",
            "--r", "0.8", "--alpha-sq", "0.5", "--tmax-gamma", "4", "--steps", "32",
        ]
        local = tmp_path / "local.csv"
        remote = tmp_path / "remote.csv"
        assert main(args + ["--out", str(local)]) == 0
        assert main(args + ["--out", str(remote), "--server", "http://127.0.0.1:8731"]) == 0
        assert local.read_bytes() == remote.read_bytes()
    finally:
        server.should_exit = True
        thread.join(timeout=5)

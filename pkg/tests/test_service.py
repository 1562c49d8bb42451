import pytest
from fastapi.testclient import TestClient

from helpers import TWO_BIT_BENCH

from fsmforge import __version__
from fsmforge.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def test_health_and_version(client):
    assert client.get("/health").json() == {"status": "ok"}
    assert client.get("/version").json() == {"version": __version__}


def test_parse_endpoint(client):
    response = client.post("/parse", json={"bench": TWO_BIT_BENCH, "name": "demo"})
    assert response.status_code == 200
    summary = response.json()["summary"]
    assert summary == {
        "name": "demo",
        "nets": 6,
        "gates": 3,
        "registers": 2,
        "inputs": 1,
        "outputs": 2,
    }


def test_parse_error_carries_location(client):
    response = client.post("/parse", json={"bench": "INPUT(a)\nb = AND(a\n"})
    assert response.status_code == 400
    body = response.json()
    assert body["kind"] == "parse"
    assert body["line"] == 2


def test_cut_endpoint(client):
    response = client.post(
        "/cut", json={"bench": TWO_BIT_BENCH, "state_registers": ["U2", "U4"]}
    )
    assert response.status_code == 200
    body = response.json()
    assert body["stats"] == {"inputs": 1, "regs": 2, "gates": 3}
    assert "U5 = NOT(I0)" in body["bench"]


def test_cut_unknown_register(client):
    response = client.post(
        "/cut", json={"bench": TWO_BIT_BENCH, "state_registers": ["NOPE"]}
    )
    assert response.status_code == 400
    assert response.json()["kind"] == "unknown_register"


def test_enum_both_engines_agree(client):
    payload = {
        "bench": TWO_BIT_BENCH,
        "state_registers": ["U2", "U4"],
        "reset": "11",
        "engine": "sat",
    }
    sat = client.post("/enum", json=payload).json()
    payload["engine"] = "brute"
    brute = client.post("/enum", json=payload).json()
    assert sat["dot"] == brute["dot"]
    assert sat["graph"]["states"] == brute["graph"]["states"]
    assert sat["graph"]["edges"] == brute["graph"]["edges"]
    assert sat["report"]["acpt"] is None
    assert brute["report"]["acpt"] == 1.0
    assert sat["report"]["version"] == __version__
    assert sat["graph"]["solve_calls"] == len(sat["graph"]["states"]) + len(sat["graph"]["edges"])


def test_enum_conditions_included_on_request(client):
    payload = {
        "bench": TWO_BIT_BENCH,
        "state_registers": ["U2", "U4"],
        "reset": "11",
        "engine": "brute",
        "include_conditions": True,
    }
    body = client.post("/enum", json=payload).json()
    assert body["conditions"]["11->01"] == [{"I0": 0}]
    assert body["conditions"]["00->00"] == [{}]


def test_enum_reset_width_mismatch(client):
    payload = {
        "bench": TWO_BIT_BENCH,
        "state_registers": ["U2", "U4"],
        "reset": "1",
    }
    response = client.post("/enum", json=payload)
    assert response.status_code == 400
    assert response.json()["kind"] == "usage"


def test_enum_validates_reset_characters(client):
    payload = {
        "bench": TWO_BIT_BENCH,
        "state_registers": ["U2", "U4"],
        "reset": "1x",
    }
    assert client.post("/enum", json=payload).status_code == 422


def test_enum_no_cut_matches_cut(client):
    payload = {
        "bench": TWO_BIT_BENCH,
        "state_registers": ["U2", "U4"],
        "reset": "11",
        "use_cut": False,
    }
    full = client.post("/enum", json=payload).json()
    payload["use_cut"] = True
    cut = client.post("/enum", json=payload).json()
    assert full["dot"] == cut["dot"]
    assert full["report"]["cut_used"] is False


def test_generate_deterministic(client):
    a = client.post("/generate", json={"seed": 9, "n_states": 6, "n_inputs": 1}).json()
    b = client.post("/generate", json={"seed": 9, "n_states": 6, "n_inputs": 1}).json()
    assert a == b
    assert a["truth"]["n_states"] == 6
    assert a["reset"] == a["truth"]["encoding"][0]


def test_generate_xor_profile(client):
    body = client.post("/generate", json={"seed": 2, "profile": "xor"}).json()
    assert body["truth"] is None
    assert body["reset"] == "00"
    assert "XOR" in body["bench"]


def test_generate_padded(client):
    plain = client.post("/generate", json={"seed": 3, "n_states": 4, "n_inputs": 1}).json()
    padded = client.post(
        "/generate",
        json={"seed": 3, "n_states": 4, "n_inputs": 1, "pad_gates": 50, "pad_regs": 5},
    ).json()
    assert len(padded["bench"]) > len(plain["bench"])
    assert padded["state_registers"] == plain["state_registers"]

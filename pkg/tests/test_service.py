"""Session service: undo restores bytes, previews are side-effect-free."""

import json

import pytest
from fastapi.testclient import TestClient

from gencluster import io as gio
from gencluster.gca import Seed
from gencluster.pathalg import QP, CyclicWord
from gencluster.quiver import Arrow, LoopedQuiver
from gencluster.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def _seed_payload(d=(2, 1)):
    return gio.seed_to_dict(Seed.initial([[0, 1], [-1, 0]], d))


def _qp_payload():
    quiver = LoopedQuiver.from_pairs(3, (1, 1, 1), [(1, 2), (2, 3), (3, 1)])
    from fractions import Fraction

    a, b, c = Arrow(1, 2, 0), Arrow(2, 3, 0), Arrow(3, 1, 0)
    qp = QP.make(quiver, {CyclicWord.make((c, b, a), (0, 0, 0)): Fraction(1)})
    return gio.qp_to_dict(qp)


def test_session_lifecycle(client):
    created = client.post("/session", json={"data": _seed_payload()})
    assert created.status_code == 200
    sid = created.json()["id"]
    state = client.get(f"/session/{sid}/state").json()
    assert state["kind"] == "seed"
    assert state["view"]["d"] == [2, 1]
    mutated = client.post(f"/session/{sid}/mutate", json={"k": 1})
    assert mutated.status_code == 200
    assert mutated.json()["path"] == [1]


def test_mutate_undo_restores_bytes(client):
    sid = client.post("/session", json={"data": _seed_payload()}).json()["id"]
    before = client.get(f"/session/{sid}/state").json()
    client.post(f"/session/{sid}/mutate", json={"k": 1})
    client.post(f"/session/{sid}/mutate", json={"k": 2})
    client.post(f"/session/{sid}/undo")
    after_one_undo = client.get(f"/session/{sid}/state").json()
    assert after_one_undo["path"] == [1]
    client.post(f"/session/{sid}/undo")
    restored = client.get(f"/session/{sid}/state").json()
    assert restored["data"] == before["data"]
    assert restored["state_hash"] == before["state_hash"]


def test_undo_empty_stack_conflicts(client):
    sid = client.post("/session", json={"data": _seed_payload()}).json()["id"]
    assert client.post(f"/session/{sid}/undo").status_code == 409


def test_preview_leaves_state_unchanged(client):
    sid = client.post("/session", json={"data": _seed_payload()}).json()["id"]
    before = client.get(f"/session/{sid}/state").json()["state_hash"]
    first = client.get(f"/session/{sid}/preview", params={"k": 1}).json()
    second = client.get(f"/session/{sid}/preview", params={"k": 1}).json()
    assert first == second
    assert first["diff"]["new_x"].startswith("1*x1^-1")
    after = client.get(f"/session/{sid}/state").json()["state_hash"]
    assert before == after


def test_qp_session_mutation_and_preview(client):
    sid = client.post("/session", json={"data": _qp_payload()}).json()["id"]
    preview = client.get(f"/session/{sid}/preview", params={"k": 2}).json()
    assert preview["diff"]["cancelled_two_cycles"] == 1
    state = client.post(f"/session/{sid}/mutate", json={"k": 2}).json()
    assert state["view"]["reduced"] is True
    inv = client.get(f"/session/{sid}/invariants").json()
    assert all(c["passed"] for c in inv["checks"])


def test_qp_mutation_precondition_conflict(client):
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(1, 2), (2, 1)])
    payload = gio.qp_to_dict(QP.make(quiver, {}))
    sid = client.post("/session", json={"data": payload}).json()["id"]
    assert client.post(f"/session/{sid}/mutate", json={"k": 1}).status_code == 409


def test_graph_endpoint(client):
    payload = gio.seed_to_dict(Seed.initial([[0, 1], [-1, 0]], (1, 1)))
    sid = client.post("/session", json={"data": payload}).json()["id"]
    out = client.get(f"/session/{sid}/graph",
                     params={"depth": 8, "mode": "unlabeled"}).json()
    assert len(out["graph"]["nodes"]) == 5


def test_unknown_session_404(client):
    assert client.get("/session/zzz/state").status_code == 404


def test_persistence_round_trip(tmp_path):
    app = create_app(str(tmp_path))
    client = TestClient(app)
    sid = client.post("/session", json={"data": _seed_payload()}).json()["id"]
    client.post(f"/session/{sid}/mutate", json={"k": 1})
    saved = client.get(f"/session/{sid}/state").json()
    # a fresh app instance reloads persisted sessions from disk
    app2 = create_app(str(tmp_path))
    client2 = TestClient(app2)
    reloaded = client2.get(f"/session/{sid}/state").json()
    assert reloaded["data"] == saved["data"]
    assert reloaded["history_length"] == 1
    undone = client2.post(f"/session/{sid}/undo").json()
    assert undone["path"] == []


def test_concurrent_mutations_serialize(tmp_path):
    """Parallel mutate requests on one session leave a consistent history."""
    import threading

    app = create_app(str(tmp_path))
    local = TestClient(app)
    sid = local.post("/session", json={"data": _seed_payload((1, 1))}).json()["id"]
    errors = []

    def worker(k):
        try:
            for _ in range(5):
                local.post(f"/session/{sid}/mutate", json={"k": k})
        except Exception as exc:  # pragma: no cover - surfaced via assertion
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(k,)) for k in (1, 2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    state = local.get(f"/session/{sid}/state").json()
    assert state["history_length"] == 10
    assert len(state["path"]) == 10
    # undo all the way back to the initial bytes
    for _ in range(10):
        local.post(f"/session/{sid}/undo")
    fresh = local.get(f"/session/{sid}/state").json()
    assert fresh["history_length"] == 0 and fresh["path"] == []

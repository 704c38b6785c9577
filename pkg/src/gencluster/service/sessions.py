"""Session store: live seeds/QPs with undo stacks and file persistence.

Every state transition is serialized canonically; undo restores the exact
previous bytes.  Per-session operations are serialized by a lock so
concurrent clients cannot interleave mutations.
"""

from __future__ import annotations

import hashlib
import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .. import io as gio
from ..gca import Seed, SeedError, explore, mutate_seed
from ..pathalg import DegeneratePotential, mutate_qp, premutate_qp, split_reduce
from ..quiver import TwoCycleError


class SessionError(ValueError):
    pass


class UnknownSession(KeyError):
    pass


@dataclass
class Session:
    id: str
    kind: str                      # "seed" | "qp"
    current: str                   # canonical JSON of the live object
    undo_stack: List[str] = field(default_factory=list)
    path: List[int] = field(default_factory=list)
    rng_seed: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def state_hash(self) -> str:
        return hashlib.sha256(self.current.encode()).hexdigest()[:16]


def _serialize(kind: str, obj) -> str:
    if kind == "seed":
        return gio.dumps_canonical(gio.seed_to_dict(obj))
    return gio.dumps_canonical(gio.qp_to_dict(obj))


def _deserialize(kind: str, text: str):
    data = json.loads(text)
    if kind == "seed":
        return gio.seed_from_dict(data)
    return gio.qp_from_dict(data)


class SessionStore:
    def __init__(self, state_dir: Optional[str] = None):
        self.state_dir = Path(state_dir) if state_dir else None
        if self.state_dir:
            self.state_dir.mkdir(parents=True, exist_ok=True)
        self._sessions: Dict[str, Session] = {}
        self._global_lock = threading.Lock()
        if self.state_dir:
            for file in self.state_dir.glob("*.json"):
                try:
                    payload = json.loads(file.read_text())
                    session = Session(
                        id=payload["id"],
                        kind=payload["kind"],
                        current=payload["current"],
                        undo_stack=list(payload.get("undo", [])),
                        path=list(payload.get("path", [])),
                        rng_seed=payload.get("rng_seed", 0),
                    )
                    self._sessions[session.id] = session
                except (KeyError, ValueError):
                    continue

    def _persist(self, session: Session) -> None:
        if not self.state_dir:
            return
        payload = {
            "id": session.id,
            "kind": session.kind,
            "current": session.current,
            "undo": session.undo_stack,
            "path": session.path,
            "rng_seed": session.rng_seed,
        }
        (self.state_dir / f"{session.id}.json").write_text(
            json.dumps(payload, sort_keys=True)
        )

    def create(self, data: dict, rng_seed: int = 0) -> Session:
        kind = gio.detect_kind(data)
        if kind == "seed":
            obj = gio.seed_from_dict(data)
        elif kind == "qp":
            obj = gio.qp_from_dict(data)
        elif kind == "quiver":
            # promote a bare quiver to a coefficient-free seed
            quiver = gio.quiver_from_dict(data)
            obj = Seed.initial(quiver.b_matrix(), quiver.datum.d,
                               {i: list(row) for i, row in enumerate(quiver.datum.z, 1)})
            kind = "seed"
        else:
            raise SessionError(f"cannot open a session on payload kind {kind}")
        session = Session(id=uuid.uuid4().hex[:12], kind=kind,
                          current=_serialize(kind, obj), rng_seed=rng_seed)
        with self._global_lock:
            self._sessions[session.id] = session
        self._persist(session)
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id)

    def mutate(self, session_id: str, k: int) -> Session:
        session = self.get(session_id)
        with session.lock:
            obj = _deserialize(session.kind, session.current)
            new_obj = _mutate_object(session.kind, obj, k)
            session.undo_stack.append(session.current)
            session.current = _serialize(session.kind, new_obj)
            session.path.append(k)
            self._persist(session)
        return session

    def undo(self, session_id: str) -> Session:
        session = self.get(session_id)
        with session.lock:
            if not session.undo_stack:
                raise SessionError("nothing to undo")
            session.current = session.undo_stack.pop()
            if session.path:
                session.path.pop()
            self._persist(session)
        return session

    def preview(self, session_id: str, k: int) -> Tuple[Session, dict]:
        session = self.get(session_id)
        with session.lock:
            obj = _deserialize(session.kind, session.current)
            diff = _preview_diff(session.kind, obj, k)
        return session, diff

    def object_of(self, session: Session):
        return _deserialize(session.kind, session.current)


def _mutate_object(kind: str, obj, k: int):
    if kind == "seed":
        if not 1 <= k <= obj.n:
            raise SessionError(f"vertex {k} out of range 1..{obj.n}")
        return mutate_seed(obj, k)
    try:
        return mutate_qp(obj, k)
    except (TwoCycleError, DegeneratePotential, ValueError) as exc:
        raise SessionError(str(exc))


def _preview_diff(kind: str, obj, k: int) -> dict:
    if kind == "seed":
        if not 1 <= k <= obj.n:
            raise SessionError(f"vertex {k} out of range 1..{obj.n}")
        new_obj = mutate_seed(obj, k)
        return {
            "new_x": new_obj.x[k - 1].canonical(),
            "old_x": obj.x[k - 1].canonical(),
            "b_before": [list(r) for r in obj.b],
            "b_after": [list(r) for r in new_obj.b],
        }
    try:
        pre = premutate_qp(obj, k)
        split = split_reduce(pre.qp)
    except (TwoCycleError, DegeneratePotential, ValueError) as exc:
        raise SessionError(str(exc))
    return {
        "composite_arrows": len(pre.composite),
        "cancelled_two_cycles": len(split.pairs),
        "b_before": obj.quiver.b_matrix(),
        "b_after": split.reduced.quiver.b_matrix(),
        "reduced_potential_terms": len(split.reduced.potential.terms),
    }


def state_view(session: Session, store: SessionStore) -> dict:
    obj = store.object_of(session)
    if session.kind == "seed":
        counts: Dict[Tuple[int, int], int] = {}
        for i in range(1, obj.n + 1):
            for j in range(1, obj.n + 1):
                v = obj.b[i - 1][j - 1]
                if v > 0:
                    counts[(j, i)] = v
        return {
            "n": obj.n,
            "d": list(obj.datum.d),
            "arrows": [[t, h, c] for (t, h), c in sorted(counts.items())],
            "x": [p.canonical() for p in obj.x],
            "y": [list(t.exponents) for t in obj.y],
            "b": [list(r) for r in obj.b],
        }
    quiver = obj.quiver
    counts2: Dict[Tuple[int, int], int] = {}
    for a in quiver.arrows:
        counts2[(a.tail, a.head)] = counts2.get((a.tail, a.head), 0) + 1
    return {
        "n": quiver.n,
        "d": list(quiver.datum.d),
        "arrows": [[t, h, c] for (t, h), c in sorted(counts2.items())],
        "b": quiver.b_matrix(),
        "potential": repr(obj.potential),
        "reduced": obj.is_reduced(),
    }

"""Pydantic request/response models for the session service."""

from __future__ import annotations

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class CreateSessionRequest(BaseModel):
    data: Dict[str, Any]
    rng_seed: int = 0


class CreateSessionResponse(BaseModel):
    id: str
    kind: str


class StateResponse(BaseModel):
    id: str
    kind: str
    data: Dict[str, Any]
    path: List[int]
    history_length: int
    view: Dict[str, Any]
    state_hash: str


class MutateRequest(BaseModel):
    k: int = Field(ge=1)


class PreviewResponse(BaseModel):
    k: int
    kind: str
    diff: Dict[str, Any]
    state_hash: str


class InvariantCheck(BaseModel):
    name: str
    passed: bool
    details: str = ""


class InvariantsResponse(BaseModel):
    id: str
    checks: List[InvariantCheck]


class GraphResponse(BaseModel):
    id: str
    depth: int
    mode: str
    graph: Dict[str, Any]


class ErrorResponse(BaseModel):
    detail: str

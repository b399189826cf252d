"""Pydantic request/response models for the service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

FamilyName = Literal["kz", "akz", "psi", "half_psi", "half", "at"]
StyleName = Literal["two_pi_i", "pi_power"]


class HealthResponse(BaseModel):
    status: str
    max_weight: int


class ScalarTerm(BaseModel):
    rational: str
    atoms: list[str]
    twoPiIPower: int


class ExprTerm(BaseModel):
    rational: str
    atoms: list[str]


class ReduceRequest(BaseModel):
    composition: str = Field(description='comma-separated parts, e.g. "4,2"')


class ReduceResponse(BaseModel):
    composition: list[int]
    weight: int
    terms: list[ExprTerm]
    rendered: str


class ShuffleRequest(BaseModel):
    u: str
    v: str


class WordTerm(BaseModel):
    rational: str
    word: str


class ShuffleResponse(BaseModel):
    terms: list[WordTerm]
    rendered: str


class StuffleRequest(BaseModel):
    u: str
    v: str


class CompositionTerm(BaseModel):
    rational: str
    composition: list[int]


class StuffleResponse(BaseModel):
    terms: list[CompositionTerm]
    rendered: str


class CheckTableRequest(BaseModel):
    max_weight: Optional[int] = None
    tolerance: float = 1e-6


class CheckTableResponse(BaseModel):
    max_weight: int
    entries: int
    max_abs_deviation: float
    tolerance: float
    ok: bool


class CoeffRequest(BaseModel):
    which: FamilyName
    word: str
    style: Optional[StyleName] = None


class OutputRecord(BaseModel):
    word: str
    family: str
    terms: list[ScalarTerm]
    rendered: str


class TableRequest(BaseModel):
    which: FamilyName
    max_len: int = Field(ge=2)
    style: Optional[StyleName] = None


class TableResponse(BaseModel):
    which: str
    max_len: int
    records: list[OutputRecord]


class VerifyCheck(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[VerifyCheck]


class AtSolveRequest(BaseModel):
    n: int
    extended: bool = False


class CabEntry(BaseModel):
    alpha: int
    beta: int
    terms: list[ScalarTerm]
    rendered: str


class AtSolveResponse(BaseModel):
    n: int
    c2n_terms: list[ScalarTerm]
    c2n_rendered: str
    cab: list[CabEntry]


class AtIntegralsRequest(BaseModel):
    n: int


class NamedValue(BaseModel):
    name: str
    value: str


class AtIntegralsResponse(BaseModel):
    n: int
    values: list[NamedValue]


class ErrorBody(BaseModel):
    detail: str
    kind: Literal["usage", "math"]
    unreduced: list[str] = []

"""Pydantic request/response models for the computation service."""

from __future__ import annotations

from typing import Any, Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class SystemRequest(BaseModel):
    type: str = Field(description="A1, A2, B2, G2 or A3")
    affine: bool = False


class KLRequest(SystemRequest):
    max_length: int = Field(ge=0, le=64)
    x: Optional[str] = None  # hyphen-joined word; None = whole ball
    cache_dir: Optional[str] = None


class KLResponse(BaseModel):
    type: str
    affine: bool
    L: int
    basis: dict[str, dict[str, Any]]  # x -> {y -> {lo, coeffs}}


class AsphRequest(BaseModel):
    type: str
    max_length: int = Field(ge=0, le=64)
    spherical: bool = False
    cross_validate: bool = False
    bound_check: bool = False


class AsphResponse(BaseModel):
    type: str
    L: int
    basis_tag: str
    basis: dict[str, dict[str, Any]]
    bound_report: Optional[dict] = None


class BoundRequest(BaseModel):
    type: str
    max_length: int = Field(ge=0, le=64)


class CellsRequest(BaseModel):
    type: str
    affine: bool = False
    side: str = "twosided"
    max_length: int = Field(default=0, ge=0, le=32)
    diagnostic: bool = False


class CellsResponse(BaseModel):
    type: str
    side: str
    stability_margin: Optional[int]
    classes: list[list[str]]
    preorder: list[tuple[int, int]]
    provisional: list[str]
    diagnostic: Optional[dict] = None


class DufloRequest(BaseModel):
    type: str


class DufloResponse(BaseModel):
    duflo: list[str]
    P: str
    a_values: dict[str, int]


class TiltHomRequest(BaseModel):
    type: str
    ell: int
    x: str
    y: str


class TiltHomResponse(BaseModel):
    type: str
    ell: int
    x: str
    y: str
    poly: dict
    degree: Optional[int]
    constant_term: int


class CensusRequest(BaseModel):
    type: str
    ell: int
    max_length: int = Field(ge=0, le=40)


class NilpotenceRequest(BaseModel):
    type: str
    max_length: int = Field(ge=0, le=32)


class LatticeA2Request(BaseModel):
    ell: Optional[int] = None  # certify Hom data when given


class B2FamilyRequest(BaseModel):
    ell: int
    i_min: int = 3
    i_max: int = 4


class OrbitsRequest(BaseModel):
    algebra: str


class OrbitsResponse(BaseModel):
    algebra: str
    nodes: list[str]
    covers: list[tuple[str, str]]
    ideals: list[dict]
    primes: list[dict]
    unique_cover: dict
    dot: str


class CyclicDecomposeRequest(BaseModel):
    p: int
    n: int
    fgl: Any = "multiplicative"
    a: Optional[int] = None
    b: Optional[int] = None


class CyclicClassifyRequest(BaseModel):
    p: int
    n: int
    fgl: Any = "multiplicative"


class CheckResponse(BaseModel):
    """Envelope for check-style results: exit status plus the full report."""

    passed: bool
    report: dict

"""Request/response schemas for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field

MAX_INPUT = 1 << 62


class HealthResponse(BaseModel):
    status: str
    version: str
    primality_bound: int
    factor_bound: int


class EtaResponse(BaseModel):
    eta: float


# -- symmetry ----------------------------------------------------------


class CountRequest(BaseModel):
    x: int = Field(ge=0, le=MAX_INPUT)
    include_two: bool = True
    partner_cap: Optional[int] = Field(default=None, ge=0)
    threads: int = Field(default=1, ge=1, le=256)


class CountResponse(BaseModel):
    x: int
    include_two: bool
    count: int


class TabulateRequest(BaseModel):
    max_n: int = Field(ge=1, le=10**12)
    include_two: bool = True
    threads: int = Field(default=1, ge=1, le=256)


class SurveyRowModel(BaseModel):
    n: int
    p_n: int
    s: int
    ratio: float
    model: float


class TabulateResponse(BaseModel):
    include_two: bool
    rows: list[SurveyRowModel]


class PairRequest(BaseModel):
    p: int = Field(ge=2, le=MAX_INPUT)
    q: int = Field(ge=2, le=MAX_INPUT)
    include_two: bool = True


class PairResponse(BaseModel):
    p: int
    q: int
    include_two: bool
    symmetric: bool


class PartnersRequest(BaseModel):
    p: int = Field(ge=2, le=MAX_INPUT)
    include_two: bool = True


class CertificateModel(BaseModel):
    p: int
    d: int
    q: int
    direction: Literal["above", "below"]


class PartnersResponse(BaseModel):
    p: int
    include_two: bool
    certificates: list[CertificateModel]


class SymmetricResponse(BaseModel):
    p: int
    include_two: bool
    symmetric: bool
    certificate: Optional[CertificateModel]


class BoundaryReportRequest(BaseModel):
    n: int = Field(ge=1, le=10**12)
    include_two: bool = True


class BoundaryReportResponse(BaseModel):
    n: int
    p_n: int
    include_two: bool
    count_unrestricted: int
    count_restricted: int
    primes_only_certified_above: int


class EisensteinRequest(BaseModel):
    q: int = Field(ge=3)
    p: int = Field(ge=3)


class EisensteinResponse(BaseModel):
    q: int
    p: int
    count: int


class LegendreRequest(BaseModel):
    a: int
    p: int = Field(ge=3)


class LegendreResponse(BaseModel):
    a: int
    p: int
    symbol: int


# -- graph -------------------------------------------------------------


class GraphRequest(BaseModel):
    limit: int = Field(ge=2, le=MAX_INPUT)
    include_two: bool = True


class ComponentModel(BaseModel):
    representative: int
    size: int
    min: int
    max: int
    is_boundary_touching: bool


class ComponentsResponse(BaseModel):
    limit: int
    include_two: bool
    vertex_count: int
    edge_count: int
    components: list[ComponentModel]
    least_prime_outside_component_of_3: Optional[int]
    caveat: str


class EdgesResponse(BaseModel):
    limit: int
    include_two: bool
    edges: list[tuple[int, int]]


class CliquesRequest(BaseModel):
    m: int = Field(ge=2)
    limit: int = Field(ge=2, le=MAX_INPUT)
    include_two: bool = True
    maximal_only: bool = False


class CliquesResponse(BaseModel):
    m: int
    limit: int
    include_two: bool
    cliques: list[list[int]]


class MSymmetricRequest(BaseModel):
    m: int = Field(ge=2)
    x: int = Field(ge=0, le=MAX_INPUT)
    include_two: bool = True


class MSymmetricResponse(BaseModel):
    m: int
    x: int
    include_two: bool
    count: int


# -- gcd-difference sets -----------------------------------------------


class SetSearchRequest(BaseModel):
    k: int = Field(ge=2)
    max_element: int = Field(ge=1, le=10**9)


class SetSearchResponse(BaseModel):
    k: int
    max_element: int
    elements: Optional[list[int]]


class PrimeSetSearchRequest(BaseModel):
    k: int = Field(ge=2)
    min_element: int = Field(default=2, ge=0)
    prime_bound: Optional[int] = Field(default=None, ge=2, le=MAX_INPUT)


class PrimeSetSearchResponse(BaseModel):
    k: int
    min_element: int
    elements: Optional[list[int]]


class SetVerifyRequest(BaseModel):
    elements: list[int] = Field(min_length=1)


class SetVerifyResponse(BaseModel):
    elements: list[int]
    valid: bool


class FormModel(BaseModel):
    g: int
    h: int


class AdmissibilityRequest(BaseModel):
    forms: list[FormModel] = Field(min_length=1)


class PrimeWitnessModel(BaseModel):
    prime: int
    avoiding_residue: Optional[int]
    covered: bool


class AdmissibilityResponse(BaseModel):
    admissible: bool
    witnesses: list[PrimeWitnessModel]
    skipped_note: str


class MaynardTaoRequest(BaseModel):
    forms: list[FormModel] = Field(min_length=1)


class MaynardTaoResponse(BaseModel):
    all_positive: bool
    nonpositive_indices: list[int]
    determinants_nonzero: bool
    vanishing_pairs: list[tuple[int, int]]
    admissibility: Optional[AdmissibilityResponse]
    passed: bool


class BftbRequest(BaseModel):
    b: list[int] = Field(min_length=1)
    g: int = Field(ge=1)


class BftbResponse(BaseModel):
    distinct: bool
    duplicate_values: list[int]
    admissibility: AdmissibilityResponse
    coprime: bool
    common_factors: list[tuple[int, int]]
    passed: bool


class CoprimalityRequest(BaseModel):
    b: list[int] = Field(min_length=2)


class CoprimalityResponse(BaseModel):
    b: list[int]
    coprime: bool


# -- diagnostics ---------------------------------------------------------


class ProfileRequest(BaseModel):
    x: int = Field(ge=16, le=MAX_INPUT)
    include_smooth_exceptions: bool = False


class ProfileResponse(BaseModel):
    x: int
    L: int
    E: float
    smooth_threshold: float
    s1_count: int
    s2_count: int
    prime_count: int
    omega_histogram: dict[int, int]
    smooth_exceptions: Optional[list[int]] = None


class DecomposeRequest(BaseModel):
    p: int = Field(ge=3, le=MAX_INPUT)


class DecomposeResponse(BaseModel):
    p: int
    a: int
    r: int

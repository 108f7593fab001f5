"""Request and response models for the computation service.

These models are the JSON schema of the wire format; the CLI is a thin
client over them.  All numeric payloads are exact: rationals travel as
"p/q" strings, never as floats.
"""

from __future__ import annotations

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, Field


class DiagramRequest(BaseModel):
    diagram: str = Field(..., description="parity string, e.g. EEO (also 0/1)")


class DistinguishedRequest(BaseModel):
    n_even: int = Field(..., ge=1)
    n_odd: int = Field(..., ge=1)


class DiagramResponse(BaseModel):
    diagram: str
    n_even: int
    n_odd: int
    simple_root_parities: List[int]


class CartanResponse(BaseModel):
    diagram: str
    cartan: List[List[int]]


class RootsResponse(BaseModel):
    diagram: str
    positive_roots: List[str]
    parities: List[int]
    heights: List[int]


class WeylRequest(BaseModel):
    n_even: int = Field(..., ge=1)
    n_odd: int = Field(..., ge=1)


class WeylCheck(BaseModel):
    name: str
    status: str
    detail: str = ""


class WeylResponse(BaseModel):
    diagram: str
    group_order: int
    complete_order: int
    generator_grades: List[int]
    checks: List[WeylCheck]
    passed: bool


class SeriesRequest(BaseModel):
    kind: Literal["G", "qnumber", "unit", "sqrt-unit"]
    order: int = Field(8, ge=2)
    n: Optional[int] = Field(None, description="integer for the quantum number")


class SeriesResponse(BaseModel):
    kind: str
    order: int
    text: str
    terms: Dict[str, str]


class GECheckRequest(BaseModel):
    a: str = Field("1", description="rational shift, e.g. 1 or -1/2")
    sign: Literal["plus", "minus"] = "plus"
    parity: int = Field(1, description="parity factor; only +1 is admissible")
    order: int = Field(8, ge=2)


class GECheckResponse(BaseModel):
    passed: bool
    refused: bool = False
    detail: str = ""


class VerifyRequest(BaseModel):
    suite: str
    diagram: Optional[str] = None
    n_even: Optional[int] = None
    n_odd: Optional[int] = None
    cap: int = Field(4, ge=1)
    length: int = Field(6, ge=1)
    max_level: int = Field(2, ge=0)
    words: int = Field(200, ge=1)
    jobs: int = Field(1, ge=1)


class CheckRecord(BaseModel):
    name: str
    status: Literal["pass", "fail", "skip"]
    detail: str = ""


class VerifyResponse(BaseModel):
    suite: str
    diagram: Optional[str]
    cap: int
    length: int
    checks: List[CheckRecord]
    passed: bool
    counts: Dict[str, int]


class ClassifyRequest(BaseModel):
    n_even: int = Field(..., ge=1)
    n_odd: int = Field(..., ge=1)
    mode: Literal["hopf", "super"] = "hopf"


class WitnessModel(BaseModel):
    kind: str
    source: str
    target: str
    index_map: Dict[str, int]
    flip: bool


class ClassifyResponse(BaseModel):
    mode: str
    classes: List[List[str]]
    witnesses: List[WitnessModel]


class DistinguishRequest(BaseModel):
    first: str
    second: str


class DistinguishResponse(BaseModel):
    verdict: str
    reason: str = ""
    witnesses: List[WitnessModel] = []


class PhiRequest(BaseModel):
    diagram: str
    generator: str = Field(..., description="E:i:r, F:i:r or H:i:r")
    cap: int = Field(3, ge=1)


class ElementResponse(BaseModel):
    diagram: str
    cap: int
    text: str


class DeltaRequest(BaseModel):
    diagram: str
    generator: str = Field(..., description="h:i:r, x+:i:r or x-:i:r")
    cap: int = Field(3, ge=1)


class ErrorResponse(BaseModel):
    detail: str

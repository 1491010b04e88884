from typing import Any, Optional, Union

from pydantic import BaseModel, Field


class Report(BaseModel):
    tool: str
    input: str
    verdict: Union[bool, str]
    reason: Optional[str] = None
    witness: Optional[Any] = None
    evidence: dict[str, Any] = Field(default_factory=dict)
    timing_ms: float = 0.0


class LeafReport(BaseModel):
    graph6: str
    kind: str
    n: int
    m: int


class TraceReport(BaseModel):
    graph6: str
    shore: Optional[list[int]] = None
    children: list["TraceReport"] = Field(default_factory=list)


class DecompositionReport(BaseModel):
    tool: str = "decompose"
    input: str
    leaves: list[LeafReport]
    trace: TraceReport
    timing_ms: float = 0.0


class MismatchReport(BaseModel):
    graph6: str
    recognizer: str
    recognizer_verdict: bool
    oracle_verdict: bool


class CensusReport(BaseModel):
    tool: str = "census"
    min_n: int
    max_n: int
    constraints: dict[str, Any] = Field(default_factory=dict)
    class_counts: dict[str, int] = Field(default_factory=dict)
    cycle_conformal_braces: list[str] = Field(default_factory=list)
    counterexamples: list[str] = Field(default_factory=list)
    mismatches: list[MismatchReport] = Field(default_factory=list)
    timing_ms: float = 0.0

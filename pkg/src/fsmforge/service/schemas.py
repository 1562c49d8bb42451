"""Pydantic request/response models for the analysis service.

The CLI speaks exactly these models too (it is a thin client of the service
layer), so the JSON a remote caller sees and the files the CLI writes stay
in lockstep.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class NetlistSummary(BaseModel):
    name: str
    nets: int
    gates: int
    registers: int
    inputs: int
    outputs: int


class ParseRequest(BaseModel):
    bench: str
    name: str = "netlist"


class ParseResponse(BaseModel):
    summary: NetlistSummary
    netlist: dict


class CutStatsModel(BaseModel):
    inputs: int
    regs: int
    gates: int


class CutRequest(BaseModel):
    bench: str
    state_registers: list[str] = Field(min_length=1)
    name: str = "netlist"


class CutResponse(BaseModel):
    stats: CutStatsModel
    bench: str
    netlist: dict


class PhaseTimings(BaseModel):
    parse_ms: float
    cut_ms: float
    enumerate_ms: float


class GraphModel(BaseModel):
    reset: str
    states: list[str]
    edges: list[list[str]]
    solve_calls: int
    wall_time_ms: float
    complete: bool


class RunReport(BaseModel):
    """Everything one enumeration run reports besides the graph itself."""

    netlist_name: str
    engine: Literal["sat", "brute"]
    cut_used: bool
    cut_stats: CutStatsModel
    states: int
    edges: int
    acpt: Optional[float] = None
    timings: PhaseTimings
    version: str
    config: dict


class EnumRequest(BaseModel):
    bench: str
    state_registers: list[str] = Field(min_length=1)
    reset: str = Field(pattern=r"^[01]+$")
    engine: Literal["sat", "brute"] = "sat"
    use_cut: bool = True
    max_states: int = Field(default=1 << 20, gt=0)
    input_guard: int = Field(default=24, gt=0)
    threads: int = Field(default=1, ge=1)
    conflict_budget: Optional[int] = Field(default=None, gt=0)
    include_conditions: bool = False
    extra_starts: list[str] = Field(default_factory=list)
    name: str = "netlist"


class EnumResponse(BaseModel):
    graph: GraphModel
    dot: str
    report: RunReport
    # brute engine only: "src->dst" -> list of {input name: bit} cubes
    conditions: Optional[dict[str, list[dict[str, int]]]] = None


class GenerateRequest(BaseModel):
    seed: int
    n_states: int = Field(default=8, ge=1, le=64)
    n_inputs: int = Field(default=2, ge=0, le=6)
    density: float = Field(default=1.0, gt=0.0, le=1.0)
    profile: Literal["random", "xor"] = "random"
    pad_gates: int = Field(default=0, ge=0)
    pad_regs: int = Field(default=0, ge=0)


class GenerateResponse(BaseModel):
    name: str
    bench: str
    state_registers: list[str]
    reset: str
    truth: Optional[dict] = None  # absent for the xor profile


class ErrorInfo(BaseModel):
    kind: str
    message: str
    line: Optional[int] = None
    col: Optional[int] = None

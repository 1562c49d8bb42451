"""Orchestration behind the service endpoints (and the in-process CLI).

Each function takes a request model and returns a response model; domain
exceptions are translated to ServiceError with a stable ``kind`` string so
HTTP handlers and the CLI can map them uniformly:

    parse            malformed or structurally invalid netlist
    usage            inconsistent request (e.g. reset width mismatch)
    unknown_register state register name not found
    input_guard      too many relevant inputs for the brute engine
    budget           solver conflict budget exhausted
"""

from __future__ import annotations

import time

from .. import __version__
from ..brute_enum import InputGuardError, enumerate_with_conditions
from ..cut import FsmSpec, UnknownRegisterError, cut_stats, fsm_cut, identity_cut
from ..netlist import NetlistError, netlist_to_dict, parse_bench, to_bench
from ..sat_enum import enumerate_topology
from ..solver import BudgetExceededError
from ..synth import generate, generate_xor_heavy, pad_with_noise, synthesize, truth_to_dict
from ..topology import StateWord, graph_to_dict, to_dot
from .schemas import (
    CutRequest,
    CutResponse,
    CutStatsModel,
    EnumRequest,
    EnumResponse,
    GenerateRequest,
    GenerateResponse,
    GraphModel,
    NetlistSummary,
    ParseRequest,
    ParseResponse,
    PhaseTimings,
    RunReport,
)


class ServiceError(Exception):
    def __init__(
        self,
        kind: str,
        message: str,
        status: int = 400,
        line: int | None = None,
        col: int | None = None,
    ):
        super().__init__(message)
        self.kind = kind
        self.message = message
        self.status = status
        self.line = line
        self.col = col


def _parse(bench: str):
    try:
        return parse_bench(bench)
    except NetlistError as exc:
        raise ServiceError("parse", exc.message, line=exc.line, col=exc.col) from exc


def run_parse(req: ParseRequest) -> ParseResponse:
    netlist = _parse(req.bench)
    return ParseResponse(
        summary=NetlistSummary(
            name=req.name,
            nets=len(netlist.nets),
            gates=len(netlist.gates),
            registers=len(netlist.registers),
            inputs=len(netlist.primary_inputs),
            outputs=len(netlist.primary_outputs),
        ),
        netlist=netlist_to_dict(netlist),
    )


def run_cut(req: CutRequest) -> CutResponse:
    netlist = _parse(req.bench)
    try:
        cut = fsm_cut(netlist, FsmSpec(state_registers=tuple(req.state_registers)))
    except UnknownRegisterError as exc:
        raise ServiceError("unknown_register", str(exc)) from exc
    except ValueError as exc:
        raise ServiceError("usage", str(exc)) from exc
    stats = cut_stats(cut)
    return CutResponse(
        stats=CutStatsModel(inputs=stats.inputs, regs=stats.regs, gates=stats.gates),
        bench=to_bench(cut.netlist),
        netlist=netlist_to_dict(cut.netlist),
    )


def run_enum(req: EnumRequest) -> EnumResponse:
    t0 = time.perf_counter()
    netlist = _parse(req.bench)
    t1 = time.perf_counter()
    try:
        spec = FsmSpec(
            state_registers=tuple(req.state_registers),
            reset_state=StateWord.from_string(req.reset),
        )
        extra = tuple(StateWord.from_string(s) for s in req.extra_starts)
        for word in extra:
            if word.width != spec.width:
                raise ValueError(f"extra start '{word}' has width {word.width}, expected {spec.width}")
    except ValueError as exc:
        raise ServiceError("usage", str(exc)) from exc
    try:
        cut = (fsm_cut if req.use_cut else identity_cut)(netlist, spec)
    except UnknownRegisterError as exc:
        raise ServiceError("unknown_register", str(exc)) from exc
    t2 = time.perf_counter()

    conditions = None
    acpt = None
    try:
        if req.engine == "sat":
            graph = enumerate_topology(
                cut,
                spec,
                max_states=req.max_states,
                threads=req.threads,
                conflict_budget=req.conflict_budget,
                extra_starts=extra,
            )
        else:
            conditioned = enumerate_with_conditions(
                cut,
                spec,
                input_guard=req.input_guard,
                max_states=req.max_states,
                threads=req.threads,
                extra_starts=extra,
            )
            graph = conditioned.base
            acpt = float(conditioned.acpt)
            if req.include_conditions:
                conditions = {
                    f"{src}->{dst}": [cube.named(cut) for cube in cubes]
                    for (src, dst), cubes in sorted(conditioned.conditions.items())
                }
    except InputGuardError as exc:
        raise ServiceError("input_guard", str(exc)) from exc
    except BudgetExceededError as exc:
        raise ServiceError("budget", str(exc)) from exc
    t3 = time.perf_counter()

    stats = cut_stats(cut)
    report = RunReport(
        netlist_name=req.name,
        engine=req.engine,
        cut_used=req.use_cut,
        cut_stats=CutStatsModel(inputs=stats.inputs, regs=stats.regs, gates=stats.gates),
        states=len(graph.states),
        edges=len(graph.edges),
        acpt=acpt,
        timings=PhaseTimings(
            parse_ms=(t1 - t0) * 1000.0,
            cut_ms=(t2 - t1) * 1000.0,
            enumerate_ms=(t3 - t2) * 1000.0,
        ),
        version=__version__,
        config={
            "reset": req.reset,
            "state_registers": list(req.state_registers),
            "max_states": req.max_states,
            "input_guard": req.input_guard,
            "threads": req.threads,
            "conflict_budget": req.conflict_budget,
            "extra_starts": list(req.extra_starts),
        },
    )
    return EnumResponse(
        graph=GraphModel(**graph_to_dict(graph)),
        dot=to_dot(graph),
        report=report,
        conditions=conditions,
    )


def run_generate(req: GenerateRequest) -> GenerateResponse:
    if req.profile == "xor":
        netlist, spec = generate_xor_heavy(req.seed)
        truth = None
    else:
        fsm = generate(req.seed, req.n_states, req.n_inputs, req.density)
        netlist, spec = synthesize(fsm)
        truth = truth_to_dict(fsm)
    if req.pad_gates or req.pad_regs:
        netlist = pad_with_noise(netlist, req.pad_gates, req.pad_regs, req.seed)
    return GenerateResponse(
        name=f"gen{req.seed}",
        bench=to_bench(netlist),
        state_registers=list(spec.state_registers),
        reset=str(spec.reset_state),
        truth=truth,
    )

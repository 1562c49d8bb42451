"""Extraction of the FSM-implementing sub-netlist.

The cut is the union of the state registers' fan-in cones: a breadth-first
walk backward from each state register's D net through gate fan-ins,
stopping at primary inputs and at any register output. Non-state registers
on the boundary are demoted to free inputs of the cut (their Q nets become
primary inputs named after the original net), realizing the assumption that
non-state registers can take arbitrary values. Gates that only read the
state machine's outputs never enter the cut, so the cut implements exactly
the transitions of the FSM in the full design.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .netlist import Netlist, NetlistBuilder, Register
from .topology import StateWord


class UnknownRegisterError(Exception):
    """A state-register name that does not resolve to a DFF in the netlist."""

    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown state register '{name}'")


@dataclass(frozen=True)
class FsmSpec:
    """State-register order (bit i of the state word) plus the reset word.

    ``reset_state`` may be omitted for operations that only need the
    register list (cut extraction).
    """

    state_registers: tuple[str, ...]
    reset_state: StateWord | None = None

    def __post_init__(self):
        if not self.state_registers:
            raise ValueError("at least one state register is required")
        if len(set(self.state_registers)) != len(self.state_registers):
            raise ValueError("duplicate state register names")
        if self.reset_state is not None and self.reset_state.width != len(self.state_registers):
            raise ValueError(
                f"reset width {self.reset_state.width} does not match "
                f"{len(self.state_registers)} state register(s)"
            )

    @property
    def width(self) -> int:
        return len(self.state_registers)


@dataclass(frozen=True)
class Cut:
    """A self-contained sub-netlist around the state registers.

    ``free_inputs`` are net ids of the cut netlist: the original primary
    inputs that reached the cone plus demoted non-state register outputs.
    ``state_registers`` are the retained registers in spec order.
    """

    netlist: Netlist
    free_inputs: frozenset[int]
    state_registers: tuple[Register, ...]

    @property
    def q_nets(self) -> tuple[int, ...]:
        return tuple(r.q_net for r in self.state_registers)

    @property
    def d_nets(self) -> tuple[int, ...]:
        return tuple(r.d_net for r in self.state_registers)

    @property
    def width(self) -> int:
        return len(self.state_registers)


@dataclass(frozen=True)
class CutStats:
    inputs: int
    regs: int
    gates: int


def _resolve_spec(netlist: Netlist, spec: FsmSpec) -> list[Register]:
    by_name = {r.name: r for r in netlist.registers}
    regs = []
    for name in spec.state_registers:
        reg = by_name.get(name)
        if reg is None:
            raise UnknownRegisterError(name)
        regs.append(reg)
    return regs


def _assemble(
    source: Netlist,
    free_input_ids: set[int],
    state_regs: list[Register],
    gate_ids: set[int],
) -> Cut:
    """Build the cut netlist, preserving names and relative net order."""
    builder = NetlistBuilder()
    for nid in sorted(free_input_ids):
        builder.add_input(source.net_name(nid))
    for reg in state_regs:
        builder.add_register(reg.name, source.net_name(reg.d_net))
        builder.add_output(reg.name)
    for out_id in sorted(gate_ids):
        gate = source.gate_of_output[out_id]
        builder.add_gate(
            gate.kind,
            [source.net_name(i) for i in gate.inputs],
            source.net_name(gate.output),
        )
    netlist = builder.build()
    return Cut(
        netlist=netlist,
        free_inputs=frozenset(netlist.name_to_id[source.net_name(i)] for i in free_input_ids),
        state_registers=tuple(netlist.register_of_q[netlist.name_to_id[r.name]] for r in state_regs),
    )


def fsm_cut(netlist: Netlist, spec: FsmSpec) -> Cut:
    """Extract the union of the state registers' fan-in cones (BFS, O(V+E))."""
    state_regs = _resolve_spec(netlist, spec)
    state_q = {r.q_net for r in state_regs}

    visited: set[int] = set()
    free: set[int] = set()
    gates: set[int] = set()
    work = deque(r.d_net for r in state_regs)
    while work:
        nid = work.popleft()
        if nid in visited:
            continue
        visited.add(nid)
        reg = netlist.register_of_q.get(nid)
        if reg is not None:
            if nid not in state_q:
                free.add(nid)  # non-state register: boundary, arbitrary value
            continue
        if nid in netlist.primary_inputs:
            free.add(nid)
            continue
        gate = netlist.gate_of_output[nid]
        gates.add(nid)
        work.extend(gate.inputs)
    return _assemble(netlist, free, state_regs, gates)


def identity_cut(netlist: Netlist, spec: FsmSpec) -> Cut:
    """Wrap a full netlist in the Cut interface without pruning any gate.

    Non-state registers are still demoted to free inputs so both enumeration
    engines see the same next-state function they would on a real cut; all
    combinational logic is kept.
    """
    state_regs = _resolve_spec(netlist, spec)
    state_q = {r.q_net for r in state_regs}
    free = set(netlist.primary_inputs)
    free.update(r.q_net for r in netlist.registers if r.q_net not in state_q)
    return _assemble(netlist, free, state_regs, {g.output for g in netlist.gates})


def cut_stats(cut: Cut) -> CutStats:
    return CutStats(
        inputs=len(cut.free_inputs),
        regs=len(cut.state_registers),
        gates=len(cut.netlist.gates),
    )

"""Condition-enumerating baseline engine.

Where the SAT engine asks only "which next states exist", this engine
recovers, per transition, the full set of input conditions causing it: start
with every free input at X, simulate three-valued, and as long as any next
state bit is still X, split on the lowest-indexed unassigned input. When all
D bits resolve, the currently assigned inputs form one condition cube; the
unassigned rest are don't-cares. Controlled gates collapse X, so an input
that cannot matter any more is never split on -- this is the culling that
keeps the search below the 2^inputs worst case on most designs.

The per-transition cube lists and the acpt statistic (average conditions per
transition) come out of the same walk. Topology-wise this engine must agree
exactly with the SAT engine; the test suite holds both to that.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .cut import Cut, FsmSpec
from .netlist import evaluate_plan
from .topology import DEFAULT_MAX_STATES, StateWord, TransitionGraph, explore

DEFAULT_INPUT_GUARD = 24


class InputGuardError(Exception):
    """Too many relevant free inputs for exhaustive condition search."""

    def __init__(self, n_inputs: int, guard: int):
        self.n_inputs = n_inputs
        self.guard = guard
        super().__init__(
            f"{n_inputs} relevant free inputs exceed the guard of {guard}; "
            "raise the guard or use the sat engine"
        )


@dataclass(frozen=True)
class ConditionCube:
    """A partial assignment of free inputs; unassigned inputs are don't-care.

    Every completion of the cube drives the machine to the cube's next
    state. Pairs are (net id, bit), ascending by net id.
    """

    assignments: tuple[tuple[int, int], ...]

    def as_dict(self) -> dict[int, int]:
        return dict(self.assignments)

    def named(self, cut: Cut) -> dict[str, int]:
        return {cut.netlist.net_name(nid): bit for nid, bit in self.assignments}

    def __len__(self) -> int:
        return len(self.assignments)


@dataclass
class ConditionedGraph:
    base: TransitionGraph
    conditions: dict[tuple[StateWord, StateWord], list[ConditionCube]]
    acpt: Fraction

    @property
    def total_cubes(self) -> int:
        return sum(len(cubes) for cubes in self.conditions.values())


def support_inputs(cut: Cut) -> list[int]:
    """Free inputs that can reach some state register's D net, ascending.

    On a proper fan-in-cone cut this is all free inputs; on an unpruned
    netlist it excludes inputs that only feed logic outside the cones, which
    is what makes exhaustive condition search viable there at all.
    """
    netlist = cut.netlist
    relevant: set[int] = set()
    work = deque(cut.d_nets)
    seen: set[int] = set()
    q_nets = set(cut.q_nets)
    while work:
        nid = work.popleft()
        if nid in seen:
            continue
        seen.add(nid)
        if nid in q_nets:
            continue
        if nid in cut.free_inputs:
            relevant.add(nid)
            continue
        gate = netlist.gate_of_output.get(nid)
        if gate is not None:
            work.extend(gate.inputs)
    return sorted(relevant)


def enumerate_conditions(
    cut: Cut,
    current: StateWord,
    *,
    input_guard: int = DEFAULT_INPUT_GUARD,
) -> dict[StateWord, list[ConditionCube]]:
    """Map each next state to its condition cubes, by recursive splitting.

    The input split order is fixed (ascending net id) so results are
    reproducible; cube lists come out in depth-first order with the 0 branch
    first. Raises InputGuardError if more than ``input_guard`` free inputs
    can affect the next state.
    """
    if current.width != cut.width:
        raise ValueError(
            f"state width {current.width} does not match {cut.width} register(s)"
        )
    support = support_inputs(cut)
    if len(support) > input_guard:
        raise InputGuardError(len(support), input_guard)

    netlist = cut.netlist
    plan = netlist._plan
    d_nets = cut.d_nets
    base = [2] * len(netlist.nets)
    for q, bit in zip(cut.q_nets, current.bits):
        base[q] = bit
    assigned: list[int] = []  # values of support[:depth]
    out: dict[StateWord, list[ConditionCube]] = {}

    def walk(depth: int) -> None:
        values = base[:]
        for k in range(depth):
            values[support[k]] = assigned[k]
        evaluate_plan(plan, values)
        for d in d_nets:
            if values[d] == 2:
                break
        else:
            word = StateWord(tuple(values[d] for d in d_nets))
            cube = ConditionCube(tuple(zip(support[:depth], assigned)))
            out.setdefault(word, []).append(cube)
            return
        # some D bit is still X; the support covers every net feeding D,
        # so there is always an input left to split on
        for bit in (0, 1):
            assigned.append(bit)
            walk(depth + 1)
            assigned.pop()

    walk(0)
    return out


def enumerate_with_conditions(
    cut: Cut,
    spec: FsmSpec,
    *,
    input_guard: int = DEFAULT_INPUT_GUARD,
    max_states: int = DEFAULT_MAX_STATES,
    threads: int = 1,
    extra_starts: Iterable[StateWord] = (),
) -> ConditionedGraph:
    """Breadth-first enumeration carrying condition cubes and acpt."""
    if spec.reset_state is None:
        raise ValueError("spec.reset_state is required for enumeration")
    if spec.reset_state.width != cut.width:
        raise ValueError(
            f"reset width {spec.reset_state.width} does not match {cut.width} register(s)"
        )
    started = time.perf_counter()
    per_state: dict[StateWord, dict[StateWord, list[ConditionCube]]] = {}

    def expand(state: StateWord) -> set[StateWord]:
        found = enumerate_conditions(cut, state, input_guard=input_guard)
        per_state[state] = found
        return set(found)

    states, edges, complete = explore(
        spec.reset_state,
        expand,
        max_states=max_states,
        threads=threads,
        extra_starts=extra_starts,
    )
    conditions = {
        (src, dst): cubes
        for src, found in per_state.items()
        for dst, cubes in found.items()
        if (src, dst) in edges
    }
    total_cubes = sum(len(cubes) for cubes in conditions.values())
    base = TransitionGraph(
        reset=spec.reset_state,
        states=states,
        edges=edges,
        solve_calls=0,
        wall_time_ms=(time.perf_counter() - started) * 1000.0,
        complete=complete,
    )
    acpt = Fraction(total_cubes, len(edges)) if edges else Fraction(0)
    return ConditionedGraph(base=base, conditions=conditions, acpt=acpt)


def conditioned_graph_to_dict(graph: ConditionedGraph, cut: Cut) -> dict:
    """The transition-graph JSON form extended with cubes and acpt."""
    from .topology import graph_to_dict

    data = graph_to_dict(graph.base)
    data["conditions"] = {
        f"{src}->{dst}": [cube.named(cut) for cube in cubes]
        for (src, dst), cubes in sorted(graph.conditions.items())
    }
    data["acpt"] = float(graph.acpt)
    data["total_cubes"] = graph.total_cubes
    return data


def stats_csv_row(name: str, graph: ConditionedGraph) -> str:
    """One `netlist,states,edges,cubes,acpt` stats line."""
    return (
        f"{name},{len(graph.base.states)},{len(graph.base.edges)},"
        f"{graph.total_cubes},{float(graph.acpt):.6g}"
    )

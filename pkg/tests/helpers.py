"""Independent oracles and shared fixtures for the test suite.

Everything here deliberately avoids the code paths it is used to check:
the SAT oracle is a bit-parallel truth table, the topology oracle is plain
two-valued exhaustive simulation with its own gate semantics.
"""

from __future__ import annotations

import random

from fsmforge.cut import Cut
from fsmforge.netlist import GateKind, Netlist
from fsmforge.topology import StateWord, TransitionGraph

TWO_BIT_BENCH = """\
# two-register controller; U5 couples both AND gates to the same input
INPUT(I0)
OUTPUT(U2)
OUTPUT(U4)
U2 = DFF(U1)
U4 = DFF(U3)
U1 = AND(I0, U4)
U5 = NOT(I0)
U3 = AND(U2, U5)
"""

# Same machine with the inverter replaced by an unrelated free input: the
# two next-state bits are no longer mutually exclusive.
TWO_BIT_UNDERCONSTRAINED = """\
INPUT(I0)
INPUT(F)
U2 = DFF(U1)
U4 = DFF(U3)
U1 = AND(I0, U4)
U3 = AND(U2, F)
"""


def brute_force_sat(n_vars: int, clauses) -> tuple[bool, ...] | None:
    """Exhaustive SAT oracle via bit-parallel truth-table columns.

    Row i of the table is the assignment whose bit v (0-based) is
    (i >> v) & 1. Returns the lexicographically first model or None.
    Practical up to ~20 variables.
    """
    width = 1 << n_vars
    full = (1 << width) - 1
    cols = {}
    for v in range(1, n_vars + 1):
        block = 1 << (v - 1)
        col = (full // ((1 << block) + 1)) << block  # rows where var v is 1
        cols[v] = col
        cols[-v] = full ^ col
    formula = full
    for clause in clauses:
        acc = 0
        for lit in clause:
            acc |= cols[lit]
        formula &= acc
        if formula == 0:
            return None
    row = (formula & -formula).bit_length() - 1
    return tuple(bool((row >> v) & 1) for v in range(n_vars))


def bool_simulate(netlist: Netlist, inputs: dict[int, int]) -> dict[int, int]:
    """Plain two-valued reference simulation with independent gate semantics."""
    values = dict(inputs)
    for gate in netlist.topo_gates:
        ins = [values[i] for i in gate.inputs]
        kind = gate.kind
        if kind is GateKind.AND:
            out = int(all(ins))
        elif kind is GateKind.NAND:
            out = int(not all(ins))
        elif kind is GateKind.OR:
            out = int(any(ins))
        elif kind is GateKind.NOR:
            out = int(not any(ins))
        elif kind is GateKind.NOT:
            out = 1 - ins[0]
        elif kind is GateKind.BUFF:
            out = ins[0]
        elif kind is GateKind.XOR:
            out = sum(ins) & 1
        elif kind is GateKind.XNOR:
            out = 1 - (sum(ins) & 1)
        elif kind is GateKind.MUX:
            out = ins[2] if ins[0] else ins[1]
        elif kind is GateKind.CONST0:
            out = 0
        else:
            out = 1
        values[gate.output] = out
    return values


def exhaustive_next_states(cut: Cut, current: StateWord) -> set[StateWord]:
    """Third-opinion successor sets: iterate every full input assignment."""
    free = sorted(cut.free_inputs)
    q_nets = cut.q_nets
    d_nets = cut.d_nets
    found = set()
    for pattern in range(1 << len(free)):
        values = {q: b for q, b in zip(q_nets, current.bits)}
        for k, nid in enumerate(free):
            values[nid] = (pattern >> k) & 1
        values = bool_simulate(cut.netlist, values)
        found.add(StateWord(tuple(values[d] for d in d_nets)))
    return found


def exhaustive_topology(cut: Cut, reset: StateWord) -> TransitionGraph:
    """BFS over exhaustive_next_states; usable while free inputs stay small."""
    states = {reset}
    edges = set()
    frontier = [reset]
    while frontier:
        nxt = []
        for state in frontier:
            for succ in sorted(exhaustive_next_states(cut, state)):
                edges.add((state, succ))
                if succ not in states:
                    states.add(succ)
                    nxt.append(succ)
        frontier = nxt
    return TransitionGraph(reset=reset, states=states, edges=edges)


def suite_params(seed: int) -> tuple[int, int, float]:
    """Deterministic per-seed sizes for the 100-FSM acceptance suite.

    Sizes span the full 2..64-state / 0..6-input envelope while keeping
    states * 2**inputs bounded, so the exhaustive baseline stays fast
    enough to run the whole suite in well under a minute.
    """
    rng = random.Random(seed)
    n_states = rng.randint(2, 64)
    cap = max(0, 8 - (n_states - 1).bit_length())
    n_inputs = rng.randint(0, min(6, cap))
    density = rng.choice([0.25, 0.5, 0.75, 1.0])
    return n_states, n_inputs, density


def php_clauses(pigeons: int, holes: int) -> tuple[int, list[tuple[int, ...]]]:
    """Pigeonhole principle CNF: unsatisfiable whenever pigeons > holes.

    Variable p*holes + h + 1 means "pigeon p sits in hole h".
    """
    def var(p: int, h: int) -> int:
        return p * holes + h + 1

    clauses: list[tuple[int, ...]] = []
    for p in range(pigeons):
        clauses.append(tuple(var(p, h) for h in range(holes)))
    for h in range(holes):
        for p1 in range(pigeons):
            for p2 in range(p1 + 1, pigeons):
                clauses.append((-var(p1, h), -var(p2, h)))
    return pigeons * holes, clauses


def random_3cnf(rng: random.Random, n_vars: int, n_clauses: int) -> list[tuple[int, ...]]:
    clauses = []
    for _ in range(n_clauses):
        vs = rng.sample(range(1, n_vars + 1), 3)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return clauses

"""Seeded synthetic FSMs with ground-truth topologies.

The generator draws a random transition map whose states are all reachable
from state 0, then realizes it as a gate-level netlist in two-level
sum-of-products form: one minterm AND per (state, input-word) row feeding an
OR per state bit, with a binary-encoded register bank. No logic minimization
is attempted -- the point is a trustworthy oracle and wide gates that stress
the enumeration engines, not area.

All randomness comes from ``random.Random(seed)`` (Mersenne Twister), whose
sequence is stable across Python versions, so seeds reproduce everywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .netlist import GateKind, Netlist, NetlistBuilder
from .cut import FsmSpec
from .topology import StateWord, TransitionGraph

MAX_STATES = 64
MAX_INPUTS = 6


@dataclass(frozen=True)
class FsmTruth:
    """A concrete transition map plus its state encoding."""

    n_states: int
    n_inputs: int
    transition: tuple[tuple[int, ...], ...]  # transition[state][input_word]
    encoding: tuple[tuple[int, ...], ...]  # state -> bit vector, MSB first
    seed: int

    @property
    def width(self) -> int:
        return len(self.encoding[0])

    def encode(self, state: int) -> StateWord:
        return StateWord(self.encoding[state])

    def successor_sets(self) -> dict[int, set[int]]:
        return {s: set(row) for s, row in enumerate(self.transition)}

    def topology(self) -> TransitionGraph:
        """Ground-truth graph: BFS over successor sets from state 0."""
        succ = self.successor_sets()
        seen = {0}
        frontier = [0]
        edges = set()
        while frontier:
            nxt = []
            for s in frontier:
                for t in sorted(succ[s]):
                    edges.add((self.encode(s), self.encode(t)))
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
            frontier = nxt
        return TransitionGraph(
            reset=self.encode(0),
            states={self.encode(s) for s in seen},
            edges=edges,
        )


def generate(seed: int, n_states: int, n_inputs: int, density: float = 1.0) -> FsmTruth:
    """Draw a random FSM; every state is reachable from state 0.

    ``density`` scales how many distinct successors each state gets,
    relative to min(n_states, 2**n_inputs). The same seed always produces
    the same machine.
    """
    if not 1 <= n_states <= MAX_STATES:
        raise ValueError(f"n_states must be in 1..{MAX_STATES}, got {n_states}")
    if not 0 <= n_inputs <= MAX_INPUTS:
        raise ValueError(f"n_inputs must be in 0..{MAX_INPUTS}, got {n_inputs}")
    if not 0 < density <= 1:
        raise ValueError(f"density must be in (0, 1], got {density}")
    rng = random.Random(seed)
    n_words = 1 << n_inputs
    trans: list[list[int | None]] = [[None] * n_words for _ in range(n_states)]
    free_words = {s: list(range(n_words)) for s in range(n_states)}

    # spanning arborescence: each state is attached under an already
    # reachable parent through one fresh input word
    order = list(range(1, n_states))
    rng.shuffle(order)
    reached = [0]
    for s in order:
        parents = [p for p in reached if free_words[p]]
        parent = rng.choice(parents)
        word = free_words[parent].pop(rng.randrange(len(free_words[parent])))
        trans[parent][word] = s
        reached.append(s)

    # fill the remaining rows, steering the distinct-successor count
    max_succ = min(n_states, n_words)
    for s in range(n_states):
        have = sorted({t for t in trans[s] if t is not None})
        target = max(1, len(have), round(density * max_succ))
        target = min(target, n_words, n_states)
        pool = list(have)
        extras = target - len(pool)
        if extras > 0:
            others = [t for t in range(n_states) if t not in set(pool)]
            pool += rng.sample(others, min(extras, len(others)))
        words = free_words[s]
        rng.shuffle(words)
        for t in pool[len(have):]:  # every pool member must actually occur
            trans[s][words.pop()] = t
        for w in words:
            trans[s][w] = rng.choice(pool)
        free_words[s] = []

    width = max(1, (n_states - 1).bit_length())
    encoding = tuple(
        tuple((s >> (width - 1 - i)) & 1 for i in range(width)) for s in range(n_states)
    )
    return FsmTruth(
        n_states=n_states,
        n_inputs=n_inputs,
        transition=tuple(tuple(row) for row in trans),  # type: ignore[arg-type]
        encoding=encoding,
        seed=seed,
    )


def synthesize(truth: FsmTruth) -> tuple[Netlist, FsmSpec]:
    """Realize the transition map as a gate-level netlist.

    Registers FF0..FFn hold the binary-encoded state (FF0 is the MSB);
    inputs are IN0..INk. Single-literal minterms and single-minterm sums
    collapse to plain nets, so e.g. a two-state toggle comes out as one
    register plus one inverter. Enumerating the result reproduces
    ``truth.topology()`` exactly.
    """
    width = truth.width
    n_words = 1 << truth.n_inputs
    builder = NetlistBuilder()
    for j in range(truth.n_inputs):
        builder.add_input(f"IN{j}")

    inverted: dict[str, str] = {}

    def literal(net: str, positive: bool) -> str:
        if positive:
            return net
        inv = inverted.get(net)
        if inv is None:
            inv = f"{net}_N"
            builder.add_gate(GateKind.NOT, [net], inv)
            inverted[net] = inv
        return inv

    minterms: dict[tuple[int, int], str] = {}

    def minterm(state: int, word: int) -> str:
        net = minterms.get((state, word))
        if net is not None:
            return net
        lits = [
            literal(f"FF{i}", bool(truth.encoding[state][i]))
            for i in range(width)
        ]
        lits += [
            literal(f"IN{j}", bool((word >> j) & 1))
            for j in range(truth.n_inputs)
        ]
        if len(lits) == 1:
            net = lits[0]
        else:
            net = f"M{state}_{word}"
            builder.add_gate(GateKind.AND, lits, net)
        minterms[(state, word)] = net
        return net

    d_nets: list[str] = []
    for bit in range(width):
        ones = [
            minterm(s, w)
            for s in range(truth.n_states)
            for w in range(n_words)
            if truth.encoding[truth.transition[s][w]][bit]
        ]
        if not ones:
            net = f"D{bit}"
            builder.add_gate(GateKind.CONST0, [], net)
        elif len(ones) == 1:
            net = ones[0]
        else:
            net = f"D{bit}"
            builder.add_gate(GateKind.OR, ones, net)
        d_nets.append(net)

    for i in range(width):
        builder.add_register(f"FF{i}", d_nets[i])
        builder.add_output(f"FF{i}")
    netlist = builder.build()
    spec = FsmSpec(
        state_registers=tuple(f"FF{i}" for i in range(width)),
        reset_state=StateWord(truth.encoding[0]),
    )
    return netlist, spec


_NOISE_KINDS = (
    GateKind.AND,
    GateKind.OR,
    GateKind.NAND,
    GateKind.NOR,
    GateKind.XOR,
    GateKind.XNOR,
    GateKind.NOT,
    GateKind.BUFF,
    GateKind.MUX,
)


def pad_with_noise(
    netlist: Netlist, n_extra_gates: int, n_extra_regs: int, seed: int
) -> Netlist:
    """Append random logic whose fan-out never re-enters the original nets.

    Noise gates may read any existing net (that is ordinary fan-out) but
    only ever drive fresh nets, so no fan-in cone of the original design
    changes: cuts and topologies are invariant under padding. With zero
    counts the input netlist is returned unchanged.
    """
    if n_extra_gates == 0 and n_extra_regs == 0:
        return netlist
    if not netlist.nets:
        raise ValueError("cannot pad an empty netlist")
    rng = random.Random(seed)
    builder = NetlistBuilder()
    builder.absorb(netlist)

    def fresh(stem: str) -> str:
        name = stem
        while name in builder:
            name += "x"
        return name

    pool = [n.name for n in netlist.nets]
    reg_q = [fresh(f"NZQ{i}") for i in range(n_extra_regs)]
    pool += reg_q
    for i in range(n_extra_gates):
        kind = _NOISE_KINDS[rng.randrange(len(_NOISE_KINDS))]
        arity = {GateKind.NOT: 1, GateKind.BUFF: 1, GateKind.MUX: 3}.get(kind) or rng.randint(2, 4)
        if arity > len(pool):  # degenerate source netlists
            kind, arity = GateKind.BUFF, 1
        ins = rng.sample(pool, arity)
        out = fresh(f"NZG{i}")
        builder.add_gate(kind, ins, out)
        pool.append(out)
    for q in reg_q:
        builder.add_register(q, rng.choice(pool))
    return builder.build()


def generate_xor_heavy(
    seed: int, n_inputs: int = 16, taps_per_bit: int = 14, n_bits: int = 2
) -> tuple[Netlist, FsmSpec]:
    """A worst case for condition search: every next-state bit is a wide XOR.

    XOR never collapses X, so the condition enumerator must assign every
    relevant input before a next state resolves -- conditions per transition
    are forced to 2**n_inputs / 2**n_bits. Each bit XORs a different window
    of ``taps_per_bit`` inputs (windows chosen by seed, pairwise distinct),
    which keeps the bits independent so all 2**n_bits states are reachable.
    """
    if taps_per_bit > n_inputs:
        raise ValueError("taps_per_bit cannot exceed n_inputs")
    if n_bits > n_inputs - taps_per_bit + 1:
        raise ValueError("not enough distinct tap windows for that many bits")
    rng = random.Random(seed)
    offsets = rng.sample(range(n_inputs - taps_per_bit + 1), n_bits)
    builder = NetlistBuilder()
    for j in range(n_inputs):
        builder.add_input(f"IN{j}")
    for b, off in enumerate(offsets):
        taps = [f"IN{j}" for j in range(off, off + taps_per_bit)]
        builder.add_gate(GateKind.XOR, taps, f"D{b}")
        builder.add_register(f"FF{b}", f"D{b}")
        builder.add_output(f"FF{b}")
    netlist = builder.build()
    spec = FsmSpec(
        state_registers=tuple(f"FF{b}" for b in range(n_bits)),
        reset_state=StateWord((0,) * n_bits),
    )
    return netlist, spec


def truth_to_dict(truth: FsmTruth) -> dict:
    """JSON form consumed by the test harness alongside the .bench file."""
    return {
        "seed": truth.seed,
        "n_states": truth.n_states,
        "n_inputs": truth.n_inputs,
        "transition": [list(row) for row in truth.transition],
        "encoding": ["".join(str(b) for b in bits) for bits in truth.encoding],
        "reset": "".join(str(b) for b in truth.encoding[0]),
    }


def truth_from_dict(data: dict) -> FsmTruth:
    return FsmTruth(
        n_states=data["n_states"],
        n_inputs=data["n_inputs"],
        transition=tuple(tuple(row) for row in data["transition"]),
        encoding=tuple(tuple(int(c) for c in bits) for bits in data["encoding"]),
        seed=data["seed"],
    )

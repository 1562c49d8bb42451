"""Gate-level netlists: parsing, validation, serialization, ternary simulation.

The on-disk format is the ISCAS89 ``.bench`` dialect extended with MUX,
CONST0/CONST1 and ``#`` comments::

    # one statement per line
    INPUT(rx_ready)
    OUTPUT(state0)
    state0 = DFF(next0)
    next0  = AND(rx_ready, state1)

Keywords are case-insensitive, net names are case-sensitive. DFFs take a
single data input and share an implicit global clock; the format has no
reset pin (reset values are supplied out of band). Nets may be referenced
before they are defined. Every net must have exactly one driver -- a gate
output, a DFF output, or an INPUT declaration -- and the combinational
part of the circuit must be acyclic.
"""

from __future__ import annotations

import enum
import heapq
from dataclasses import dataclass
from typing import Mapping, Sequence


class NetlistError(Exception):
    """Base class for netlist construction and parse failures."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.message = message
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f"line {line}: " if col is None else f"line {line}, col {col}: "
        super().__init__(where + message)


class BenchParseError(NetlistError):
    """Raised for malformed ``.bench`` text (syntax level)."""


class NetlistValidationError(NetlistError):
    """Raised when statements are well-formed but the circuit is not.

    Covers duplicate drivers, undefined nets, arity mismatches and
    combinational cycles.
    """


class GateKind(enum.Enum):
    AND = "AND"
    NAND = "NAND"
    OR = "OR"
    NOR = "NOR"
    NOT = "NOT"
    BUFF = "BUFF"
    XOR = "XOR"
    XNOR = "XNOR"
    MUX = "MUX"
    CONST0 = "CONST0"
    CONST1 = "CONST1"


# (min, max) input count per kind; None means unbounded.
_ARITY: dict[GateKind, tuple[int, int | None]] = {
    GateKind.NOT: (1, 1),
    GateKind.BUFF: (1, 1),
    GateKind.MUX: (3, 3),  # (select, in0, in1); select=1 picks in1
    GateKind.CONST0: (0, 0),
    GateKind.CONST1: (0, 0),
    GateKind.AND: (2, None),
    GateKind.NAND: (2, None),
    GateKind.OR: (2, None),
    GateKind.NOR: (2, None),
    GateKind.XOR: (2, None),
    GateKind.XNOR: (2, None),
}


class Ternary(enum.IntEnum):
    """Three-valued signal levels. X is "unknown / don't care"."""

    ZERO = 0
    ONE = 1
    X = 2


@dataclass(frozen=True)
class Net:
    id: int
    name: str


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    inputs: tuple[int, ...]
    output: int


@dataclass(frozen=True)
class Register:
    """A D flip-flop. Its name is the name of its Q (output) net."""

    name: str
    d_net: int
    q_net: int


# Condensed gate codes for the simulation plan; complemented kinds share a
# scan loop with their base kind.
_SIM_AND, _SIM_NAND, _SIM_OR, _SIM_NOR = 0, 1, 2, 3
_SIM_XOR, _SIM_XNOR, _SIM_NOT, _SIM_BUFF = 4, 5, 6, 7
_SIM_MUX, _SIM_C0, _SIM_C1 = 8, 9, 10

_SIM_CODE = {
    GateKind.AND: _SIM_AND,
    GateKind.NAND: _SIM_NAND,
    GateKind.OR: _SIM_OR,
    GateKind.NOR: _SIM_NOR,
    GateKind.XOR: _SIM_XOR,
    GateKind.XNOR: _SIM_XNOR,
    GateKind.NOT: _SIM_NOT,
    GateKind.BUFF: _SIM_BUFF,
    GateKind.MUX: _SIM_MUX,
    GateKind.CONST0: _SIM_C0,
    GateKind.CONST1: _SIM_C1,
}


class Netlist:
    """A validated, immutable netlist.

    Instances are produced by :class:`NetlistBuilder` (or :func:`parse_bench`)
    and are safe to share between threads; nothing here mutates after
    construction.
    """

    __slots__ = (
        "nets",
        "gates",
        "registers",
        "primary_inputs",
        "primary_outputs",
        "name_to_id",
        "topo_gates",
        "register_of_q",
        "gate_of_output",
        "_plan",
    )

    def __init__(
        self,
        nets: tuple[Net, ...],
        gates: tuple[Gate, ...],
        registers: tuple[Register, ...],
        primary_inputs: frozenset[int],
        primary_outputs: frozenset[int],
        topo_gates: tuple[Gate, ...],
    ):
        self.nets = nets
        self.gates = gates
        self.registers = registers
        self.primary_inputs = primary_inputs
        self.primary_outputs = primary_outputs
        self.topo_gates = topo_gates
        self.name_to_id = {n.name: n.id for n in nets}
        self.register_of_q = {r.q_net: r for r in registers}
        self.gate_of_output = {g.output: g for g in gates}
        self._plan = tuple((_SIM_CODE[g.kind], g.inputs, g.output) for g in topo_gates)

    @property
    def n_nets(self) -> int:
        return len(self.nets)

    def net_name(self, net_id: int) -> str:
        return self.nets[net_id].name

    def __repr__(self) -> str:
        return (
            f"Netlist(nets={len(self.nets)}, gates={len(self.gates)}, "
            f"registers={len(self.registers)}, inputs={len(self.primary_inputs)})"
        )


class NetlistBuilder:
    """Incremental construction with the same validation as the parser.

    Net ids are assigned in first-reference order, which fixes all
    downstream orderings (CNF variables, serialization) for reproducibility.
    """

    def __init__(self):
        self._names: dict[str, int] = {}
        self._nets: list[Net] = []
        self._gates: list[Gate] = []
        self._registers: list[Register] = []
        self._inputs: set[int] = set()
        self._outputs: set[int] = set()
        # net id -> (kind, line) where kind is "input" | "gate" | "register"
        self._driver: dict[int, tuple[str, int | None]] = {}
        self._first_ref: dict[int, int | None] = {}

    def net(self, name: str, line: int | None = None) -> int:
        nid = self._names.get(name)
        if nid is None:
            nid = len(self._nets)
            self._names[name] = nid
            self._nets.append(Net(nid, name))
            self._first_ref[nid] = line
        return nid

    def __contains__(self, name: str) -> bool:
        return name in self._names

    def _claim_driver(self, nid: int, kind: str, line: int | None):
        prev = self._driver.get(nid)
        if prev is not None:
            msg = f"net '{self._nets[nid].name}' has more than one driver ({prev[0]}"
            if prev[1] is not None:
                msg += f" at line {prev[1]}"
            msg += f", then {kind})"
            raise NetlistValidationError(msg, line)
        self._driver[nid] = (kind, line)

    def add_input(self, name: str, line: int | None = None) -> int:
        nid = self.net(name, line)
        self._claim_driver(nid, "input", line)
        self._inputs.add(nid)
        return nid

    def add_output(self, name: str, line: int | None = None) -> int:
        nid = self.net(name, line)
        self._outputs.add(nid)
        return nid

    def add_gate(
        self,
        kind: GateKind,
        inputs: Sequence[str],
        output: str,
        line: int | None = None,
    ) -> Gate:
        lo, hi = _ARITY[kind]
        if len(inputs) < lo or (hi is not None and len(inputs) > hi):
            expect = str(lo) if hi == lo else (f"{lo}+" if hi is None else f"{lo}..{hi}")
            raise NetlistValidationError(
                f"{kind.value} expects {expect} input(s), got {len(inputs)}", line
            )
        out = self.net(output, line)
        self._claim_driver(out, "gate", line)
        gate = Gate(kind, tuple(self.net(n, line) for n in inputs), out)
        self._gates.append(gate)
        return gate

    def add_register(self, q_name: str, d_name: str, line: int | None = None) -> Register:
        q = self.net(q_name, line)
        self._claim_driver(q, "register", line)
        reg = Register(q_name, self.net(d_name, line), q)
        self._registers.append(reg)
        return reg

    def absorb(self, netlist: Netlist) -> None:
        """Replay an existing netlist, preserving its net ids exactly."""
        for net in netlist.nets:  # intern first so ids survive verbatim
            self.net(net.name)
        for nid in sorted(netlist.primary_inputs):
            self.add_input(netlist.net_name(nid))
        for reg in netlist.registers:
            self.add_register(reg.name, netlist.net_name(reg.d_net))
        for gate in netlist.gates:
            self.add_gate(gate.kind, [netlist.net_name(i) for i in gate.inputs], netlist.net_name(gate.output))
        for nid in sorted(netlist.primary_outputs):
            self.add_output(netlist.net_name(nid))

    def build(self) -> Netlist:
        for nid, net in enumerate(self._nets):
            if nid not in self._driver:
                raise NetlistValidationError(
                    f"net '{net.name}' is referenced but never driven "
                    "(not a gate output, register output, or INPUT)",
                    self._first_ref.get(nid),
                )
        topo = self._topo_sort()
        return Netlist(
            nets=tuple(self._nets),
            gates=tuple(self._gates),
            registers=tuple(self._registers),
            primary_inputs=frozenset(self._inputs),
            primary_outputs=frozenset(self._outputs),
            topo_gates=topo,
        )

    def _topo_sort(self) -> tuple[Gate, ...]:
        # Kahn over gate-to-gate edges only; register Q nets break the loop.
        # Ties resolved by ascending output net id so the order is stable.
        gate_idx = {g.output: i for i, g in enumerate(self._gates)}
        indeg = [0] * len(self._gates)
        fanout: list[list[int]] = [[] for _ in self._gates]
        for i, g in enumerate(self._gates):
            for inp in g.inputs:
                j = gate_idx.get(inp)
                if j is not None:
                    indeg[i] += 1
                    fanout[j].append(i)
        ready = [g.output for i, g in enumerate(self._gates) if indeg[i] == 0]
        heapq.heapify(ready)
        order: list[Gate] = []
        while ready:
            out = heapq.heappop(ready)
            i = gate_idx[out]
            order.append(self._gates[i])
            for j in fanout[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(ready, self._gates[j].output)
        if len(order) != len(self._gates):
            raise NetlistValidationError(
                "combinational cycle through nets: " + " -> ".join(self._find_cycle(gate_idx, indeg))
            )
        return tuple(order)

    def _find_cycle(self, gate_idx: dict[int, int], indeg: list[int]) -> list[str]:
        # Walk predecessors inside the residual (cyclic) subgraph until a net repeats.
        stuck = [i for i, d in enumerate(indeg) if d > 0]
        cur = stuck[0]
        seen: dict[int, int] = {}
        path: list[int] = []
        while cur not in seen:
            seen[cur] = len(path)
            path.append(cur)
            cur = next(
                gate_idx[inp]
                for inp in self._gates[cur].inputs
                if inp in gate_idx and indeg[gate_idx[inp]] > 0
            )
        cycle = path[seen[cur]:] + [cur]
        return [self._nets[self._gates[i].output].name for i in cycle]


_NAME_STOP = set(" \t(),=#")
_KIND_ALIASES = {"BUF": "BUFF", "DFF": "DFF"}


def _read_name(line: str, pos: int, lineno: int) -> tuple[str, int]:
    start = pos
    while pos < len(line) and line[pos] not in _NAME_STOP:
        pos += 1
    if pos == start:
        raise BenchParseError("expected a name", lineno, start + 1)
    return line[start:pos], pos


def _skip_ws(line: str, pos: int) -> int:
    while pos < len(line) and line[pos] in " \t":
        pos += 1
    return pos


def _expect(line: str, pos: int, ch: str, lineno: int) -> int:
    pos = _skip_ws(line, pos)
    if pos >= len(line) or line[pos] != ch:
        raise BenchParseError(f"expected '{ch}'", lineno, pos + 1)
    return pos + 1


def _parse_args(line: str, pos: int, lineno: int) -> tuple[list[str], int]:
    pos = _expect(line, pos, "(", lineno)
    args: list[str] = []
    pos = _skip_ws(line, pos)
    if pos < len(line) and line[pos] == ")":
        return args, pos + 1
    while True:
        pos = _skip_ws(line, pos)
        name, pos = _read_name(line, pos, lineno)
        args.append(name)
        pos = _skip_ws(line, pos)
        if pos < len(line) and line[pos] == ",":
            pos += 1
            continue
        pos = _expect(line, pos, ")", lineno)
        return args, pos


def parse_bench(text: str) -> Netlist:
    """Parse ``.bench`` text into a validated :class:`Netlist`.

    Raises :class:`BenchParseError` for syntax problems (with line/column)
    and :class:`NetlistValidationError` for structural ones: undefined nets,
    duplicate drivers, arity mismatches, combinational cycles.
    """
    builder = NetlistBuilder()
    for lineno, raw in enumerate(text.splitlines(), 1):
        hash_pos = raw.find("#")
        line = raw if hash_pos < 0 else raw[:hash_pos]
        pos = _skip_ws(line, 0)
        if pos >= len(line):
            continue
        head, pos = _read_name(line, pos, lineno)
        pos = _skip_ws(line, pos)
        if pos < len(line) and line[pos] == "(" and head.upper() in ("INPUT", "OUTPUT"):
            args, pos = _parse_args(line, pos, lineno)
            if len(args) != 1:
                raise BenchParseError(f"{head.upper()} takes exactly one name", lineno, pos)
            if head.upper() == "INPUT":
                builder.add_input(args[0], lineno)
            else:
                builder.add_output(args[0], lineno)
        else:
            pos = _expect(line, pos, "=", lineno)
            pos = _skip_ws(line, pos)
            kind_col = pos + 1
            kind_name, pos = _read_name(line, pos, lineno)
            keyword = _KIND_ALIASES.get(kind_name.upper(), kind_name.upper())
            args, pos = _parse_args(line, pos, lineno)
            if keyword == "DFF":
                if len(args) != 1:
                    raise NetlistValidationError(
                        f"DFF expects 1 input, got {len(args)}", lineno
                    )
                builder.add_register(head, args[0], lineno)
            else:
                try:
                    kind = GateKind(keyword)
                except ValueError:
                    raise BenchParseError(
                        f"unknown gate kind '{kind_name}'", lineno, kind_col
                    ) from None
                builder.add_gate(kind, args, head, lineno)
        pos = _skip_ws(line, pos)
        if pos < len(line):
            raise BenchParseError("trailing characters after statement", lineno, pos + 1)
    return builder.build()


def to_bench(netlist: Netlist) -> str:
    """Serialize back to ``.bench``. Reparsing yields an isomorphic netlist."""
    lines: list[str] = []
    for nid in sorted(netlist.primary_inputs):
        lines.append(f"INPUT({netlist.net_name(nid)})")
    for nid in sorted(netlist.primary_outputs):
        lines.append(f"OUTPUT({netlist.net_name(nid)})")
    for reg in netlist.registers:
        lines.append(f"{reg.name} = DFF({netlist.net_name(reg.d_net)})")
    for gate in netlist.gates:
        args = ", ".join(netlist.net_name(i) for i in gate.inputs)
        lines.append(f"{netlist.net_name(gate.output)} = {gate.kind.value}({args})")
    return "\n".join(lines) + "\n"


def netlist_to_dict(netlist: Netlist) -> dict:
    """JSON-friendly form (nets, gates, registers arrays) for interchange."""
    return {
        "nets": [n.name for n in netlist.nets],
        "inputs": [netlist.net_name(i) for i in sorted(netlist.primary_inputs)],
        "outputs": [netlist.net_name(i) for i in sorted(netlist.primary_outputs)],
        "registers": [
            {"name": r.name, "d": netlist.net_name(r.d_net)} for r in netlist.registers
        ],
        "gates": [
            {
                "kind": g.kind.value,
                "output": netlist.net_name(g.output),
                "inputs": [netlist.net_name(i) for i in g.inputs],
            }
            for g in netlist.gates
        ],
    }


def netlist_from_dict(data: Mapping) -> Netlist:
    """Inverse of :func:`netlist_to_dict` (isomorphic, ids re-derived)."""
    builder = NetlistBuilder()
    for name in data.get("nets", ()):
        builder.net(name)
    for name in data["inputs"]:
        builder.add_input(name)
    for reg in data["registers"]:
        builder.add_register(reg["name"], reg["d"])
    for gate in data["gates"]:
        builder.add_gate(GateKind(gate["kind"]), gate["inputs"], gate["output"])
    for name in data["outputs"]:
        builder.add_output(name)
    return builder.build()


def topo_order(netlist: Netlist) -> tuple[Gate, ...]:
    """Gates ordered so every gate follows all gates driving its inputs."""
    return netlist.topo_gates


def evaluate_plan(plan, values: list[int]) -> None:
    """Run one ternary evaluation pass over a compiled gate plan, in place.

    ``values`` is indexed by net id and uses the :class:`Ternary` int coding
    (0, 1, 2=X). Hot path for the condition enumerator: no allocation beyond
    the caller's array, gates visited in topological order.
    """
    for code, ins, out in plan:
        if code <= _SIM_NOR:  # AND/NAND/OR/NOR share a controlled-value scan
            ctrl = 0 if code <= _SIM_NAND else 1
            r = 1 - ctrl
            for i in ins:
                v = values[i]
                if v == ctrl:
                    r = ctrl
                    break
                if v == 2:
                    r = 2
            if (code == _SIM_NAND or code == _SIM_NOR) and r != 2:
                r ^= 1
            values[out] = r
        elif code <= _SIM_XNOR:  # XOR/XNOR: any X poisons the parity
            r = 0
            for i in ins:
                v = values[i]
                if v == 2:
                    r = 2
                    break
                r ^= v
            if code == _SIM_XNOR and r != 2:
                r ^= 1
            values[out] = r
        elif code == _SIM_NOT:
            v = values[ins[0]]
            values[out] = 2 if v == 2 else v ^ 1
        elif code == _SIM_BUFF:
            values[out] = values[ins[0]]
        elif code == _SIM_MUX:
            s = values[ins[0]]
            if s == 0:
                values[out] = values[ins[1]]
            elif s == 1:
                values[out] = values[ins[2]]
            else:
                a = values[ins[1]]
                b = values[ins[2]]
                values[out] = a if a == b else 2
        else:
            values[out] = 0 if code == _SIM_C0 else 1


def simulate_ternary(netlist: Netlist, assignment: Mapping[int, int]) -> list[int]:
    """Three-valued simulation of the combinational part.

    ``assignment`` must cover exactly the primary inputs and every register Q
    net (values may be X). Returns a dense list indexed by net id; entries
    compare equal to :class:`Ternary` members. The caller is responsible for
    the precondition -- this is a hot path and does not validate.
    """
    values = [2] * len(netlist.nets)
    for nid, val in assignment.items():
        values[nid] = int(val)
    evaluate_plan(netlist._plan, values)
    return values

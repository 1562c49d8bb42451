"""CNF encoding of a cut's combinational logic.

Every net gets one SAT variable (net id + 1, so variables are contiguous
from 1) and every gate contributes the standard consistency clauses tying
its output variable to its input variables. Free inputs and register Q nets
stay unconstrained, so models of the formula are exactly the consistent
signal assignments of the cut. Register variables come in Q/D pairs: the Q
variable is the register's output net (current state bit), the D variable is
its input net (next state bit), read directly off the combinational logic.

Multi-input XOR/XNOR are the only gates that introduce auxiliary variables
(a chain of two-input stages); everything else encodes over net variables
alone, keeping the formula aligned with the circuit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cut import Cut
from .netlist import GateKind

Clause = tuple[int, ...]


@dataclass(frozen=True)
class VarMap:
    """Net-to-variable mapping plus the ordered state Q/D variable lists."""

    net_to_var: tuple[int, ...]
    q_vars: tuple[int, ...]
    d_vars: tuple[int, ...]


class CnfProblem:
    """A growing clause set; clause addition is append-only."""

    __slots__ = ("var_count", "clauses", "varmap")

    def __init__(self, var_count: int, varmap: VarMap):
        self.var_count = var_count
        self.clauses: list[Clause] = []
        self.varmap = varmap

    def new_var(self) -> int:
        self.var_count += 1
        return self.var_count

    def add_clause(self, literals: Sequence[int]) -> Clause:
        """Normalize (dedup) and append. Tautologies and empties are rejected."""
        clause = _normalize(literals)
        if clause is None:
            raise ValueError(f"clause {tuple(literals)} is tautological")
        if not clause:
            raise ValueError("empty clause")
        for lit in clause:
            if not 1 <= abs(lit) <= self.var_count:
                raise ValueError(f"literal {lit} outside variable range 1..{self.var_count}")
        self.clauses.append(clause)
        return clause

    def copy(self) -> "CnfProblem":
        dup = CnfProblem(self.var_count, self.varmap)
        dup.clauses = list(self.clauses)
        return dup


def _normalize(literals: Sequence[int]) -> Clause | None:
    """Drop duplicate literals; None signals a tautology."""
    seen: set[int] = set()
    out: list[int] = []
    for lit in literals:
        if -lit in seen:
            return None
        if lit not in seen:
            seen.add(lit)
            out.append(lit)
    return tuple(out)


def _emit(problem: CnfProblem, literals: Sequence[int]) -> None:
    # Gates with repeated input nets can produce tautological clauses
    # (e.g. XOR(a, a)); those are vacuous and simply skipped.
    clause = _normalize(literals)
    if clause:
        problem.clauses.append(clause)


def _xor_stage(problem: CnfProblem, out: int, a: int, b: int, invert: bool) -> None:
    o = -out if invert else out
    _emit(problem, (-o, a, b))
    _emit(problem, (-o, -a, -b))
    _emit(problem, (o, -a, b))
    _emit(problem, (o, a, -b))


def encode(cut: Cut) -> CnfProblem:
    """Encode the cut's gates; deterministic for identical cuts."""
    netlist = cut.netlist
    net_to_var = tuple(i + 1 for i in range(len(netlist.nets)))
    varmap = VarMap(
        net_to_var=net_to_var,
        q_vars=tuple(net_to_var[q] for q in cut.q_nets),
        d_vars=tuple(net_to_var[d] for d in cut.d_nets),
    )
    problem = CnfProblem(len(netlist.nets), varmap)
    for gate in netlist.gates:
        o = net_to_var[gate.output]
        ins = [net_to_var[i] for i in gate.inputs]
        kind = gate.kind
        if kind is GateKind.AND:
            for a in ins:
                _emit(problem, (-o, a))
            _emit(problem, (o, *(-a for a in ins)))
        elif kind is GateKind.NAND:
            for a in ins:
                _emit(problem, (o, a))
            _emit(problem, (-o, *(-a for a in ins)))
        elif kind is GateKind.OR:
            for a in ins:
                _emit(problem, (o, -a))
            _emit(problem, (-o, *ins))
        elif kind is GateKind.NOR:
            for a in ins:
                _emit(problem, (-o, -a))
            _emit(problem, (o, *ins))
        elif kind is GateKind.NOT:
            _emit(problem, (-o, -ins[0]))
            _emit(problem, (o, ins[0]))
        elif kind is GateKind.BUFF:
            _emit(problem, (-o, ins[0]))
            _emit(problem, (o, -ins[0]))
        elif kind in (GateKind.XOR, GateKind.XNOR):
            invert = kind is GateKind.XNOR
            if len(ins) == 2:
                _xor_stage(problem, o, ins[0], ins[1], invert)
            else:
                acc = ins[0]
                for a in ins[1:-1]:
                    t = problem.new_var()
                    _xor_stage(problem, t, acc, a, False)
                    acc = t
                _xor_stage(problem, o, acc, ins[-1], invert)
        elif kind is GateKind.MUX:
            s, a, b = ins
            _emit(problem, (s, -a, o))
            _emit(problem, (s, a, -o))
            _emit(problem, (-s, -b, o))
            _emit(problem, (-s, b, -o))
        elif kind is GateKind.CONST0:
            _emit(problem, (-o,))
        else:  # CONST1
            _emit(problem, (o,))
    return problem


def set_equal(problem: CnfProblem, variables: Sequence[int], value: Sequence[int]) -> list[Clause]:
    """Pin each variable to the corresponding bit via a unit clause."""
    if len(variables) != len(value):
        raise ValueError(f"{len(variables)} variables vs {len(value)} bits")
    return [
        problem.add_clause((var,) if bit else (-var,))
        for var, bit in zip(variables, value)
    ]


def set_not_equal(problem: CnfProblem, variables: Sequence[int], value: Sequence[int]) -> Clause | None:
    """Exclude one joint value: at least one variable must differ.

    Returns the added clause. If two entries share a variable with opposite
    required bits the excluded value is unproducible and the constraint is
    vacuous; nothing is added and None is returned.
    """
    if len(variables) != len(value):
        raise ValueError(f"{len(variables)} variables vs {len(value)} bits")
    if not variables:
        raise ValueError("cannot exclude the unique zero-width value")
    literals = _normalize([-var if bit else var for var, bit in zip(variables, value)])
    if literals is None:
        return None
    problem.clauses.append(literals)
    return literals


def to_dimacs(problem: CnfProblem, net_names: Sequence[str] | None = None) -> str:
    """DIMACS CNF dump with a comment block mapping variables to net names."""
    lines = []
    if net_names is not None:
        for nid, name in enumerate(net_names):
            lines.append(f"c var {problem.varmap.net_to_var[nid]} net {name}")
        for var in range(len(net_names) + 1, problem.var_count + 1):
            lines.append(f"c var {var} aux")
    lines.append(f"p cnf {problem.var_count} {len(problem.clauses)}")
    for clause in problem.clauses:
        lines.append(" ".join(str(lit) for lit in clause) + " 0")
    return "\n".join(lines) + "\n"

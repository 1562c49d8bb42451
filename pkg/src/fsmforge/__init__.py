"""fsmforge: FSM cut extraction and topology enumeration for gate-level netlists."""

__version__ = "0.1.0"

from .netlist import (
    BenchParseError,
    GateKind,
    Netlist,
    NetlistError,
    NetlistValidationError,
    Ternary,
    parse_bench,
    simulate_ternary,
    to_bench,
    topo_order,
)
from .cut import Cut, CutStats, FsmSpec, UnknownRegisterError, cut_stats, fsm_cut, identity_cut
from .cnf import CnfProblem, encode, set_equal, set_not_equal, to_dimacs
from .solver import BudgetExceededError, SatResult, Solver
from .topology import StateWord, TransitionGraph, graph_to_dict, to_dot
from .sat_enum import enumerate_topology, next_states
from .brute_enum import (
    ConditionCube,
    ConditionedGraph,
    InputGuardError,
    enumerate_conditions,
    enumerate_with_conditions,
)
from .synth import FsmTruth, generate, generate_xor_heavy, pad_with_noise, synthesize

__all__ = [
    "__version__",
    "BenchParseError",
    "BudgetExceededError",
    "CnfProblem",
    "ConditionCube",
    "ConditionedGraph",
    "Cut",
    "CutStats",
    "FsmSpec",
    "FsmTruth",
    "GateKind",
    "InputGuardError",
    "Netlist",
    "NetlistError",
    "NetlistValidationError",
    "SatResult",
    "Solver",
    "StateWord",
    "Ternary",
    "TransitionGraph",
    "UnknownRegisterError",
    "cut_stats",
    "encode",
    "enumerate_conditions",
    "enumerate_topology",
    "enumerate_with_conditions",
    "fsm_cut",
    "generate",
    "generate_xor_heavy",
    "graph_to_dict",
    "identity_cut",
    "next_states",
    "pad_with_noise",
    "parse_bench",
    "set_equal",
    "set_not_equal",
    "simulate_ternary",
    "synthesize",
    "to_bench",
    "to_dimacs",
    "to_dot",
    "topo_order",
]

"""SAT-driven topology enumeration.

For each explored state the cut's logic is encoded to CNF, the Q variables
are pinned to the state with unit clauses, and the solver is invoked
repeatedly: every model yields a next state (the D variables), which is then
excluded with a blocking clause until the formula goes unsatisfiable. A
breadth-first worklist from the reset state covers the reachable graph. The
solver is called exactly |successors| + 1 times per state, so a complete run
satisfies solve_calls == |edges| + |states|.
"""

from __future__ import annotations

import time
from typing import Iterable

from .cnf import CnfProblem, encode, set_equal, set_not_equal
from .cut import Cut, FsmSpec
from .solver import BudgetExceededError, Solver
from .topology import DEFAULT_MAX_STATES, StateWord, TransitionGraph, explore


def next_states(
    cut: Cut,
    current: StateWord,
    *,
    conflict_budget: int | None = None,
    base_problem: CnfProblem | None = None,
) -> set[StateWord]:
    """All states reachable from ``current`` in one clock cycle.

    ``base_problem`` may hold a problem previously returned by
    ``encode(cut)`` to skip re-encoding; it is copied, never mutated. On a
    blown conflict budget the partial successor set found so far is attached
    to the raised BudgetExceededError.
    """
    if current.width != cut.width:
        raise ValueError(
            f"state width {current.width} does not match {cut.width} register(s)"
        )
    problem = encode(cut) if base_problem is None else base_problem.copy()
    set_equal(problem, problem.varmap.q_vars, current.bits)
    solver = Solver(problem.var_count, conflict_budget)
    solver.load(problem.clauses)
    d_vars = problem.varmap.d_vars
    found: set[StateWord] = set()
    while True:
        try:
            result = solver.solve()
        except BudgetExceededError as exc:
            raise BudgetExceededError(str(exc), partial=found) from None
        if not result.satisfiable:
            return found
        model = result.model
        bits = tuple(1 if model[v - 1] else 0 for v in d_vars)
        nxt = StateWord(bits)
        found.add(nxt)
        blocking = set_not_equal(problem, d_vars, bits)
        if blocking is None:  # duplicated D net: value space already exhausted
            return found
        solver.add_clause(blocking)


def enumerate_topology(
    cut: Cut,
    spec: FsmSpec,
    *,
    max_states: int = DEFAULT_MAX_STATES,
    threads: int = 1,
    conflict_budget: int | None = None,
    extra_starts: Iterable[StateWord] = (),
) -> TransitionGraph:
    """Breadth-first enumeration of the transition graph from reset.

    The result is flagged incomplete if the state cap is hit or a solver
    budget runs out; states and edges found so far are kept either way.
    """
    if spec.reset_state is None:
        raise ValueError("spec.reset_state is required for enumeration")
    if spec.reset_state.width != cut.width:
        raise ValueError(
            f"reset width {spec.reset_state.width} does not match {cut.width} register(s)"
        )
    started = time.perf_counter()
    base = encode(cut)
    counters = {"solve_calls": 0, "budget_ok": True}

    def expand(state: StateWord) -> set[StateWord]:
        try:
            successors = next_states(
                cut, state, conflict_budget=conflict_budget, base_problem=base
            )
        except BudgetExceededError as exc:
            counters["budget_ok"] = False
            successors = exc.partial or set()
            counters["solve_calls"] += len(successors) + 1
            return successors
        counters["solve_calls"] += len(successors) + 1
        return successors

    states, edges, complete = explore(
        spec.reset_state,
        expand,
        max_states=max_states,
        threads=threads,
        extra_starts=extra_starts,
    )
    return TransitionGraph(
        reset=spec.reset_state,
        states=states,
        edges=edges,
        solve_calls=counters["solve_calls"],
        wall_time_ms=(time.perf_counter() - started) * 1000.0,
        complete=complete and counters["budget_ok"],
    )

"""A self-contained CDCL SAT solver.

Conflict-driven clause learning with two-watched-literal propagation,
first-UIP conflict analysis, exponential VSIDS activity decay, restarts on
a fixed Luby sequence, and phase saving with a negative default polarity
(an unconstrained formula solves to the all-false model). Clauses may be
added between solve() calls and learned clauses are kept -- the intended
workload only ever grows a problem, it never retracts anything.

Everything is deterministic: identical clause sequences produce identical
answers and identical models, which the enumeration layers rely on.

No clause deletion, no assumptions, no preprocessing: enumeration rebuilds
a fresh solver per state, so instances stay small and disposable.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from typing import Iterable, Sequence

_RESTART_BASE = 100
_ACTIVITY_DECAY = 0.95
_ACTIVITY_RESCALE = 1e100


class BudgetExceededError(Exception):
    """Solve exceeded its conflict budget. Never conflated with UNSAT."""

    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial


@dataclass(frozen=True)
class SatResult:
    """SAT with a total model (model[v-1] is variable v) or UNSAT."""

    satisfiable: bool
    model: tuple[bool, ...] | None = None

    def __bool__(self) -> bool:
        return self.satisfiable


def _luby(i: int) -> int:
    # 1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8, ...
    while True:
        k = (i + 1).bit_length() - 1
        if (i + 1) == (1 << k):
            return 1 << (k - 1)
        i -= (1 << k) - 1


class Solver:
    """CDCL solver over variables 1..var_count."""

    def __init__(self, var_count: int, conflict_budget: int | None = None):
        if var_count < 1:
            raise ValueError("at least one variable must be declared")
        n = var_count
        self.var_count = n
        self.conflict_budget = conflict_budget
        self.ok = True
        self.assigns = [0] * (n + 1)  # 0 unassigned, 1 true, -1 false
        self.level = [0] * (n + 1)
        self.reason: list[list[int] | None] = [None] * (n + 1)
        self.saved_phase = [False] * (n + 1)
        self.activity = [0.0] * (n + 1)
        self.var_inc = 1.0
        self.watches: dict[int, list[list[int]]] = {}
        for v in range(1, n + 1):
            self.watches[v] = []
            self.watches[-v] = []
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.current_level = 0
        self.clauses: list[list[int]] = []
        self.conflicts = 0
        self._seen = bytearray(n + 1)
        self._heap = [(0.0, v) for v in range(1, n + 1)]

    # -- clause management ---------------------------------------------------

    def add_clause(self, literals: Iterable[int]) -> None:
        """Add a clause (called at decision level 0, i.e. between solves).

        Duplicate literals are merged, tautologies are accepted and dropped,
        literals already false at level 0 are removed. Raises ValueError for
        out-of-range variables.
        """
        seen: set[int] = set()
        lits: list[int] = []
        for lit in literals:
            v = lit if lit > 0 else -lit
            if not 1 <= v <= self.var_count:
                raise ValueError(f"literal {lit} outside variable range 1..{self.var_count}")
            if -lit in seen:
                return  # tautology: trivially satisfied
            if lit not in seen:
                seen.add(lit)
                lits.append(lit)
        if not self.ok:
            return
        assigns = self.assigns
        simplified: list[int] = []
        for lit in lits:
            a = assigns[lit if lit > 0 else -lit]
            if a == 0:
                simplified.append(lit)
            elif (a == 1) == (lit > 0):
                return  # satisfied at level 0 forever
        if not simplified:
            self.ok = False
            return
        if len(simplified) == 1:
            lit = simplified[0]
            v = lit if lit > 0 else -lit
            assigns[v] = 1 if lit > 0 else -1
            self.level[v] = 0  # permanent; clear any stale level from a past solve
            self.trail.append(lit)
            return
        clause = simplified
        self.clauses.append(clause)
        self.watches[clause[0]].append(clause)
        self.watches[clause[1]].append(clause)

    def load(self, clauses: Iterable[Sequence[int]]) -> None:
        """Bulk-attach pre-normalized clauses (e.g. a CnfProblem's list).

        Trusts the input to be deduplicated, non-tautological and in range,
        skipping the per-literal rescans of add_clause. Pending units are
        only recorded on the trail; propagation happens at the next solve.
        """
        assigns = self.assigns
        watches = self.watches
        database = self.clauses
        for cl in clauses:
            if len(cl) == 1:
                lit = cl[0]
                v = lit if lit > 0 else -lit
                a = assigns[v]
                if a == 0:
                    assigns[v] = 1 if lit > 0 else -1
                    self.level[v] = 0
                    self.trail.append(lit)
                elif (a == 1) != (lit > 0):
                    self.ok = False
                    return
            else:
                c = list(cl)
                database.append(c)
                watches[c[0]].append(c)
                watches[c[1]].append(c)

    # -- propagation ---------------------------------------------------------

    def _propagate(self) -> list[int] | None:
        trail = self.trail
        assigns = self.assigns
        level = self.level
        reason = self.reason
        watches = self.watches
        cur_level = self.current_level
        while self.qhead < len(trail):
            p = trail[self.qhead]
            self.qhead += 1
            fl = -p
            ws = watches[fl]
            i = j = 0
            end = len(ws)
            while i < end:
                c = ws[i]
                i += 1
                if c[0] == fl:
                    c[0] = c[1]
                    c[1] = fl
                first = c[0]
                fv = first if first > 0 else -first
                fa = assigns[fv]
                if fa != 0 and (fa == 1) == (first > 0):
                    ws[j] = c  # clause already satisfied via c[0]
                    j += 1
                    continue
                for k in range(2, len(c)):
                    lk = c[k]
                    la = assigns[lk if lk > 0 else -lk]
                    if la == 0 or (la == 1) == (lk > 0):
                        c[1] = lk
                        c[k] = fl
                        watches[lk].append(c)
                        break
                else:
                    ws[j] = c
                    j += 1
                    if fa != 0:  # c[0] false too: conflict
                        while i < end:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return c
                    assigns[fv] = 1 if first > 0 else -1
                    level[fv] = cur_level
                    reason[fv] = c
                    trail.append(first)
            del ws[j:]
        return None

    # -- conflict analysis ---------------------------------------------------

    def _bump(self, v: int) -> None:
        act = self.activity[v] + self.var_inc
        self.activity[v] = act
        if act > _ACTIVITY_RESCALE:
            scale = 1.0 / _ACTIVITY_RESCALE
            for u in range(1, self.var_count + 1):
                self.activity[u] *= scale
            self.var_inc *= scale
            assigns = self.assigns
            self._heap = [(-self.activity[u], u) for u in range(1, self.var_count + 1) if assigns[u] == 0]
            heapify(self._heap)

    def _analyze(self, confl: list[int]) -> tuple[list[int], int]:
        """First-UIP learning. Returns (learnt, backtrack_level); the
        asserting literal is learnt[0] and learnt[1] (if any) carries the
        backtrack level."""
        seen = self._seen
        level = self.level
        trail = self.trail
        cur_level = self.current_level
        learnt: list[int] = [0]
        counter = 0
        p = 0
        idx = len(trail) - 1
        c = confl
        while True:
            for k in range(0 if p == 0 else 1, len(c)):
                q = c[k]
                v = q if q > 0 else -q
                if not seen[v] and level[v] > 0:
                    seen[v] = 1
                    self._bump(v)
                    if level[v] == cur_level:
                        counter += 1
                    else:
                        learnt.append(q)
            while True:
                p = trail[idx]
                idx -= 1
                v = p if p > 0 else -p
                if seen[v]:
                    break
            seen[v] = 0
            counter -= 1
            if counter == 0:
                break
            c = self.reason[v]
        learnt[0] = -p
        if len(learnt) == 1:
            bt_level = 0
        else:
            best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            bt_level = level[abs(learnt[1])]
        for q in learnt[1:]:
            seen[abs(q)] = 0
        return learnt, bt_level

    def _backtrack(self, target: int) -> None:
        if self.current_level <= target:
            return
        bound = self.trail_lim[target]
        trail = self.trail
        assigns = self.assigns
        heap = self._heap
        activity = self.activity
        for k in range(len(trail) - 1, bound - 1, -1):
            lit = trail[k]
            v = lit if lit > 0 else -lit
            self.saved_phase[v] = lit > 0
            assigns[v] = 0
            self.reason[v] = None
            heappush(heap, (-activity[v], v))
        del trail[bound:]
        del self.trail_lim[target:]
        self.qhead = len(trail)
        self.current_level = target

    def _decide(self) -> int:
        heap = self._heap
        assigns = self.assigns
        while heap:
            _, v = heappop(heap)
            if assigns[v] == 0:
                return v
        return 0

    # -- main loop -------------------------------------------------------------

    def solve(self) -> SatResult:
        """Decide satisfiability of everything added so far.

        Raises BudgetExceededError if the conflict budget (per call) runs
        out; the solver stays usable afterwards.
        """
        if not self.ok:
            return SatResult(False)
        budget = self.conflict_budget
        conflicts_here = 0
        since_restart = 0
        restarts = 0
        assigns = self.assigns
        while True:
            confl = self._propagate()
            if confl is not None:
                if self.current_level == 0:
                    self.ok = False
                    return SatResult(False)
                self.conflicts += 1
                conflicts_here += 1
                since_restart += 1
                if budget is not None and conflicts_here > budget:
                    self._backtrack(0)
                    raise BudgetExceededError(
                        f"conflict budget of {budget} exhausted"
                    )
                learnt, bt_level = self._analyze(confl)
                self._backtrack(bt_level)
                lit = learnt[0]
                v = lit if lit > 0 else -lit
                if len(learnt) == 1:
                    assigns[v] = 1 if lit > 0 else -1
                    self.level[v] = 0
                    self.trail.append(lit)
                else:
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(learnt)
                    self.watches[learnt[1]].append(learnt)
                    assigns[v] = 1 if lit > 0 else -1
                    self.level[v] = self.current_level
                    self.reason[v] = learnt
                    self.trail.append(lit)
                self.var_inc /= _ACTIVITY_DECAY
                if since_restart >= _luby(restarts + 1) * _RESTART_BASE:
                    restarts += 1
                    since_restart = 0
                    self._backtrack(0)
            else:
                v = self._decide()
                if v == 0:
                    model = tuple(a == 1 for a in assigns[1:])
                    self._backtrack(0)
                    return SatResult(True, model)
                self.current_level += 1
                self.trail_lim.append(len(self.trail))
                lit = v if self.saved_phase[v] else -v
                assigns[v] = 1 if lit > 0 else -1
                self.level[v] = self.current_level
                self.trail.append(lit)


def solve_clauses(
    var_count: int,
    clauses: Sequence[Sequence[int]],
    conflict_budget: int | None = None,
) -> SatResult:
    """One-shot convenience: build a solver, add everything, solve."""
    solver = Solver(var_count, conflict_budget)
    for clause in clauses:
        solver.add_clause(clause)
    return solver.solve()

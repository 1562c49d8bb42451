"""State words, transition graphs, and their DOT/JSON renderings.

A transition graph is the successor-set view of an FSM: nodes are encoded
states, an edge (s, t) means some input takes the machine from s to t in one
clock cycle. Both enumeration engines produce this structure; serializations
sort states and edges so equal graphs render byte-identically regardless of
which engine (or how many worker threads) produced them.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

DEFAULT_MAX_STATES = 1 << 20


@dataclass(frozen=True, order=True)
class StateWord:
    """A fixed-width bit-vector; bit 0 renders leftmost."""

    bits: tuple[int, ...]

    @classmethod
    def from_string(cls, text: str) -> "StateWord":
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"state word must be a nonempty 0/1 string, got {text!r}")
        return cls(tuple(int(c) for c in text))

    @classmethod
    def from_int(cls, value: int, width: int) -> "StateWord":
        """Encode an integer MSB-first into ``width`` bits."""
        return cls(tuple((value >> (width - 1 - i)) & 1 for i in range(width)))

    @property
    def width(self) -> int:
        return len(self.bits)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


@dataclass
class TransitionGraph:
    reset: StateWord
    states: set[StateWord] = field(default_factory=set)
    edges: set[tuple[StateWord, StateWord]] = field(default_factory=set)
    solve_calls: int = 0
    wall_time_ms: float = 0.0
    complete: bool = True

    def successors(self, state: StateWord) -> set[StateWord]:
        return {t for (s, t) in self.edges if s == state}


def explore(
    reset: StateWord,
    expand: Callable[[StateWord], Iterable[StateWord]],
    *,
    max_states: int = DEFAULT_MAX_STATES,
    threads: int = 1,
    extra_starts: Iterable[StateWord] = (),
) -> tuple[set[StateWord], set[tuple[StateWord, StateWord]], bool]:
    """Breadth-first worklist over ``expand``, shared by both engines.

    Each state is expanded at most once. The frontier is processed
    level-synchronously; with ``threads > 1`` expansions of one level run in
    a thread pool, but results are merged in deterministic (sorted) order so
    the returned sets never depend on scheduling. ``max_states`` caps the
    state set; hitting the cap stops exploration and marks the result
    incomplete.
    """
    starts = [reset] + [s for s in sorted(set(extra_starts)) if s != reset]
    states: set[StateWord] = set(starts)
    edges: set[tuple[StateWord, StateWord]] = set()
    complete = True
    frontier = starts
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while frontier:
            if pool is not None:
                expansions = list(pool.map(expand, frontier))
            else:
                expansions = [expand(s) for s in frontier]
            next_frontier: list[StateWord] = []
            for state, successors in zip(frontier, expansions):
                for nxt in sorted(successors):
                    if nxt not in states:
                        if len(states) >= max_states:
                            complete = False
                            continue
                        states.add(nxt)
                        next_frontier.append(nxt)
                    edges.add((state, nxt))
            if not complete:
                break
            frontier = next_frontier
    finally:
        if pool is not None:
            pool.shutdown(wait=False)
    return states, edges, complete


def to_dot(graph: TransitionGraph) -> str:
    """Render sorted DOT; the reset state gets a double border."""
    lines = ["digraph fsm {"]
    for state in sorted(graph.states):
        attr = " [peripheries=2]" if state == graph.reset else ""
        lines.append(f'  "{state}"{attr};')
    for src, dst in sorted(graph.edges):
        lines.append(f'  "{src}" -> "{dst}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dict(graph: TransitionGraph) -> dict:
    return {
        "reset": str(graph.reset),
        "states": [str(s) for s in sorted(graph.states)],
        "edges": [[str(s), str(t)] for s, t in sorted(graph.edges)],
        "solve_calls": graph.solve_calls,
        "wall_time_ms": graph.wall_time_ms,
        "complete": graph.complete,
    }


def graph_to_json(graph: TransitionGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=2) + "\n"

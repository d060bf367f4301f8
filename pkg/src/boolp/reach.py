"""Explicit-state reachability for Boolean P systems.

Breadth-first search from each start configuration over the full
successor relation. Successors are expanded in order of their sorted
rule-id tuples, so the first witness found is the lexicographically
smallest among the shortest ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .core import Bps, ModeSpec, check_mode, step, step_mask
from .formula import Formula, compile_mask

DEFAULT_SYMBOL_LIMIT = 22


class SearchLimitError(ValueError):
    pass


@dataclass(frozen=True)
class ReachProblem:
    bps: Bps
    mode: ModeSpec
    start: tuple
    target: Union[frozenset, Formula]

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(frozenset(s) for s in self.start))
        if isinstance(self.target, (set, frozenset, list, tuple)):
            object.__setattr__(self, "target", frozenset(frozenset(t) for t in self.target))


@dataclass(frozen=True)
class Witness:
    start: frozenset
    steps: tuple = ()  # ((rule ids, state), ...)
    reached: bool = True

    @property
    def states(self) -> list:
        return [self.start] + [s for _, s in self.steps]

    def to_json(self, bps: Bps) -> dict:
        return {
            "start": bps.bits(self.start),
            "steps": [{"rules": sorted(rs), "state": bps.bits(s)} for rs, s in self.steps],
            "reached": self.reached,
        }


@dataclass(frozen=True)
class ReachResult:
    answer: bool
    witnesses: tuple
    explored: int = 0

    def __iter__(self):
        return iter((self.answer, self.witnesses))


def _target_predicate(bps: Bps, target):
    if isinstance(target, (frozenset, set)):
        masks = {bps.encode(t) for t in target}
        return masks.__contains__
    return compile_mask(target, bps.index)


def _check_limit(bps: Bps, limit: Optional[int]):
    if limit is not None and len(bps.alphabet) > limit:
        raise SearchLimitError(
            f"alphabet has {len(bps.alphabet)} symbols, above the explicit-search limit of {limit}; "
            "raise the limit to search anyway"
        )


def shortest_evolution(
    bps: Bps,
    mode: ModeSpec,
    sources: Iterable[Iterable[str]],
    target,
    limit: Optional[int] = DEFAULT_SYMBOL_LIMIT,
    require_halting: bool = False,
) -> tuple:
    """BFS from several sources at once.

    Returns ``(witness or None, number of explored configurations)``.
    With `require_halting` a target only counts if it has no successor.
    """
    _check_limit(bps, limit)
    check_mode(bps, mode)
    is_target = _target_predicate(bps, target)
    parent: dict = {}
    queue = deque()
    for s in sources:
        m = bps.encode(s)
        if m not in parent:
            parent[m] = None
            queue.append(m)
    explored = 0
    while queue:
        cur = queue.popleft()
        explored += 1
        succ = step_mask(bps, mode, cur)
        if is_target(cur) and (not require_halting or not succ):
            return _rebuild(bps, parent, cur), explored
        for ids, nxt in succ:
            if nxt not in parent:
                parent[nxt] = (cur, ids)
                queue.append(nxt)
    return None, explored


def _rebuild(bps: Bps, parent: dict, end: int) -> Witness:
    steps = []
    cur = end
    while parent[cur] is not None:
        prev, ids = parent[cur]
        steps.append((frozenset(ids), bps.decode(cur)))
        cur = prev
    steps.reverse()
    return Witness(bps.decode(cur), tuple(steps), True)


def solve_reach(
    problem: ReachProblem,
    limit: Optional[int] = DEFAULT_SYMBOL_LIMIT,
    all_witnesses: bool = False,
    require_halting: bool = False,
) -> ReachResult:
    """Decide whether every start configuration reaches the target.

    A start that already satisfies the target counts with an empty
    witness. The first failing start ends the search unless
    `all_witnesses` is set.
    """
    witnesses = []
    answer = True
    explored = 0
    for s in problem.start:
        w, n = shortest_evolution(problem.bps, problem.mode, [s], problem.target, limit, require_halting)
        explored += n
        if w is None:
            answer = False
            witnesses.append(Witness(s, (), False))
            if not all_witnesses:
                break
        else:
            witnesses.append(w)
    return ReachResult(answer, tuple(witnesses), explored)


def replay_witness(bps: Bps, mode: ModeSpec, w: Witness, target=None) -> bool:
    """Re-check a witness step by step through the core semantics."""
    if not w.reached:
        return True
    cur = w.start
    for rs, nxt in w.steps:
        if (nxt, rs) not in step(bps, mode, cur):
            return False
        cur = nxt
    if target is None:
        return True
    return bool(_target_predicate(bps, target)(bps.encode(cur)))


# -- state graphs ---------------------------------------------------------

@dataclass
class StateGraph:
    bps: Bps
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)  # (src, rule ids, dst)

    def edge_set(self) -> set:
        return {(a, b) for a, _, b in self.edges}

    def to_dot(self, name: str = "states") -> str:
        lines = [f"digraph {name} {{"]
        for n in self.nodes:
            bits = self.bps.bits(n)
            lines.append(f'  "{bits}";')
        for a, ids, b in self.edges:
            label = ",".join(sorted(ids))
            lines.append(f'  "{self.bps.bits(a)}" -> "{self.bps.bits(b)}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def export_state_graph(
    bps: Bps, mode: ModeSpec, roots: Iterable[Iterable[str]], limit: Optional[int] = DEFAULT_SYMBOL_LIMIT
) -> StateGraph:
    """All configurations reachable from `roots` with rule-set-labelled edges."""
    _check_limit(bps, limit)
    check_mode(bps, mode)
    seen = set()
    order = []
    queue = deque()
    for r in sorted((bps.encode(r) for r in roots), key=lambda m: bps.bits(bps.decode(m))):
        if r not in seen:
            seen.add(r)
            queue.append(r)
    edges = []
    while queue:
        cur = queue.popleft()
        order.append(cur)
        for ids, nxt in step_mask(bps, mode, cur):
            edges.append((cur, ids, nxt))
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    key = lambda m: bps.bits(bps.decode(m))
    g = StateGraph(bps)
    g.nodes = [bps.decode(m) for m in sorted(order, key=key)]
    edges.sort(key=lambda e: (key(e[0]), key(e[2]), e[1]))
    g.edges = [(bps.decode(a), frozenset(ids), bps.decode(b)) for a, ids, b in edges]
    return g

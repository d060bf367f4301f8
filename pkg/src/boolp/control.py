"""Controllability of Boolean control networks.

CoFaSe lets the control change freely at every synchronous step.
SeqControl constrains consecutive controls by a relation on control
sets (a control mode). Both are decided by breadth-first search;
SeqControl searches product states ``(s, mu)`` where `mu` is the
control that governs the next network step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .bnet import (
    SYNC,
    Bcn,
    BooleanMode,
    ControlMode,
    NetworkError,
    bcn_apply,
    bn_step,
    control_mode_pairs,
    state_bits,
)
from .formula import disj, exact_set_formula
from .reach import SearchLimitError, shortest_evolution
from .translate import GuardStyle, seqcontrol_composite

DEFAULT_X_LIMIT = 20
DEFAULT_U_LIMIT = 12


def _states(items) -> tuple:
    return tuple(frozenset(s) for s in items)


@dataclass(frozen=True)
class CofaseProblem:
    bcn: Bcn
    start: tuple
    target: tuple

    def __post_init__(self):
        object.__setattr__(self, "start", _states(self.start))
        object.__setattr__(self, "target", _states(self.target))


@dataclass(frozen=True)
class SeqControlProblem:
    bcn: Bcn
    mode: BooleanMode
    control_mode: Union[ControlMode, tuple]
    start: tuple
    target: tuple

    def __post_init__(self):
        object.__setattr__(self, "start", _states(self.start))
        object.__setattr__(self, "target", _states(self.target))

    def pairs(self) -> list:
        """The relation as explicit pairs of admissible controls."""
        b = self.bcn
        cm = self.control_mode
        if not isinstance(cm, ControlMode):
            cm = ControlMode.explicit(cm)
        pairs = control_mode_pairs(cm, b.controls, b.is_admissible)
        return [(a, c) for a, c in pairs if b.is_admissible(a) and b.is_admissible(c)]


@dataclass(frozen=True)
class ControlWitness:
    start: frozenset
    steps: tuple = ()  # ((control governing the step, resulting state), ...)
    reached: bool = True

    @property
    def states(self) -> list:
        return [self.start] + [s for _, s in self.steps]

    @property
    def controls(self) -> list:
        return [mu for mu, _ in self.steps]

    def to_json(self, variables: Sequence[str], controls: Sequence[str]) -> dict:
        return {
            "start": state_bits(self.start, variables),
            "steps": [
                {"control": [u for u in controls if u in mu], "state": state_bits(s, variables)}
                for mu, s in self.steps
            ],
            "reached": self.reached,
        }


@dataclass(frozen=True)
class ControlResult:
    answer: bool
    witnesses: tuple
    diagnostic: str = ""

    def __iter__(self):
        return iter((self.answer, self.witnesses))


def _check_limits(b: Bcn, x_limit: Optional[int], u_limit: Optional[int]):
    if x_limit is not None and len(b.variables) > x_limit:
        raise SearchLimitError(f"{len(b.variables)} variables exceed the limit of {x_limit}")
    if u_limit is not None and len(b.controls) > u_limit:
        raise SearchLimitError(f"{len(b.controls)} control inputs exceed the limit of {u_limit}")


def _check_states(b: Bcn, states: Iterable[frozenset]):
    known = set(b.variables)
    for s in states:
        if not s <= known:
            raise NetworkError(f"state mentions unknown variables {sorted(s - known)}")


# -- CoFaSe ---------------------------------------------------------------

def solve_cofase(
    p: CofaseProblem,
    x_limit: Optional[int] = DEFAULT_X_LIMIT,
    u_limit: Optional[int] = DEFAULT_U_LIMIT,
    all_witnesses: bool = False,
) -> ControlResult:
    """Synchronous steps, any admissible control at every step."""
    b = p.bcn
    _check_limits(b, x_limit, u_limit)
    _check_states(b, p.start + p.target)
    controls = b.admissible_controls()
    networks = [(mu, bcn_apply(b, mu)) for mu in controls]
    targets = set(p.target)
    witnesses = []
    answer = True
    for s0 in p.start:
        parent = {s0: None}
        queue = deque([s0])
        found = None
        while queue:
            s = queue.popleft()
            if s in targets:
                found = s
                break
            for mu, f in networks:
                for nxt in sorted(bn_step(f, SYNC, s), key=lambda t: state_bits(t, b.variables)):
                    if nxt not in parent:
                        parent[nxt] = (s, mu)
                        queue.append(nxt)
        if found is None:
            answer = False
            witnesses.append(ControlWitness(s0, (), False))
            if not all_witnesses:
                break
            continue
        steps = []
        cur = found
        while parent[cur] is not None:
            prev, mu = parent[cur]
            steps.append((mu, cur))
            cur = prev
        witnesses.append(ControlWitness(s0, tuple(reversed(steps)), True))
    return ControlResult(answer, tuple(witnesses))


# -- SeqControl -----------------------------------------------------------

def solve_seqcontrol(
    p: SeqControlProblem,
    x_limit: Optional[int] = DEFAULT_X_LIMIT,
    u_limit: Optional[int] = DEFAULT_U_LIMIT,
    all_witnesses: bool = False,
) -> ControlResult:
    """Product-state search over ``(state, next control)``.

    The first control must be a left element of the relation, and a step
    under `mu` is only possible if the relation lets `mu` be followed by
    some next control. A start state already in the target needs no
    control at all.
    """
    b = p.bcn
    _check_limits(b, x_limit, u_limit)
    _check_states(b, p.start + p.target)
    pairs = p.pairs()
    follow: dict = {}
    for a, c in pairs:
        follow.setdefault(a, []).append(c)
    order = {u: i for i, u in enumerate(b.controls)}
    ckey = lambda mu: sum(1 << order[u] for u in mu)
    for a in follow:
        follow[a].sort(key=ckey)
    initial = sorted(follow, key=ckey)
    targets = set(p.target)
    diagnostic = ""
    if not pairs and not set(p.start) <= targets:
        diagnostic = "control mode relation is empty: no trajectory can take a step"

    def skey(s):
        return state_bits(s, b.variables)

    witnesses = []
    answer = True
    for s0 in p.start:
        found = None
        if s0 in targets:
            witnesses.append(ControlWitness(s0, (), True))
            continue
        parent = {}
        queue = deque()
        for mu in initial:
            parent[(s0, mu)] = None
            queue.append((s0, mu))
        while queue and found is None:
            s, mu = queue.popleft()
            f = bcn_apply(b, mu)
            for nxt in sorted(bn_step(f, p.mode, s), key=skey):
                for nu in follow.get(mu, ()):
                    node = (nxt, nu)
                    if node in parent:
                        continue
                    parent[node] = ((s, mu), mu)
                    if nxt in targets:
                        found = node
                        break
                    queue.append(node)
                if found is not None:
                    break
        if found is None:
            answer = False
            witnesses.append(ControlWitness(s0, (), False))
            if not all_witnesses:
                break
            continue
        steps = []
        cur = found
        while parent[cur] is not None:
            prev, mu = parent[cur]
            steps.append((mu, cur[0]))
            cur = prev
        witnesses.append(ControlWitness(s0, tuple(reversed(steps)), True))
    return ControlResult(answer, tuple(witnesses), diagnostic)


# -- replay ---------------------------------------------------------------

def replay_cofase_witness(b: Bcn, w: ControlWitness, target: Iterable[frozenset]) -> bool:
    if not w.reached:
        return True
    cur = w.start
    for mu, nxt in w.steps:
        if not b.is_admissible(mu) or nxt not in bn_step(bcn_apply(b, mu), SYNC, cur):
            return False
        cur = nxt
    return cur in set(_states(target))


def replay_seqcontrol_witness(p: SeqControlProblem, w: ControlWitness) -> bool:
    """Check states against bnet, consecutive controls against the relation."""
    if not w.reached:
        return True
    pairs = set(p.pairs())
    lefts = {a for a, _ in pairs}
    cur = w.start
    ctrls = w.controls
    if ctrls and ctrls[0] not in lefts:
        return False
    for i, (mu, nxt) in enumerate(w.steps):
        if nxt not in bn_step(bcn_apply(p.bcn, mu), p.mode, cur):
            return False
        if i + 1 < len(ctrls):
            if (mu, ctrls[i + 1]) not in pairs:
                return False
        elif not any(a == mu for a, _ in pairs):
            return False
        cur = nxt
    return cur in set(p.target)


# -- cross-check through the composite P system ---------------------------

@dataclass(frozen=True)
class CrossCheck:
    direct: bool
    composite: bool
    per_start: tuple  # ((start, direct answer, composite answer), ...)

    @property
    def agree(self) -> bool:
        return self.direct == self.composite and all(d == c for _, d, c in self.per_start)


def crosscheck_via_composite(
    p: SeqControlProblem, guard_style: GuardStyle = GuardStyle.EXACT, limit: Optional[int] = 22
) -> CrossCheck:
    """Decide `p` both directly and as reachability in ``Π ∪ Π_U``."""
    b = p.bcn
    pairs = p.pairs()
    comp = seqcontrol_composite(b, p.mode, pairs, guard_style)
    target = disj(exact_set_formula(t, b.variables) for t in p.target)
    lefts = sorted({a for a, _ in pairs}, key=lambda mu: comp.bps.bits(mu))
    rows = []
    for s in p.start:
        direct = solve_seqcontrol(SeqControlProblem(b, p.mode, tuple(pairs), (s,), p.target)).answer
        sources = [s | mu for mu in lefts] or [s]
        w, _ = shortest_evolution(comp.bps, comp.mode, sources, target, limit)
        rows.append((s, direct, w is not None))
    return CrossCheck(all(r[1] for r in rows), all(r[2] for r in rows), tuple(rows))


# -- gluing ---------------------------------------------------------------

@dataclass(frozen=True)
class GluedEvolution:
    """States paired with the control that governs the following step."""

    configs: tuple  # ((state, control), ...)
    change_points: tuple  # indices where the control differs from the previous one

    def composite_configs(self) -> list:
        return [s | mu for s, mu in self.configs]


def _glue(configs: list) -> GluedEvolution:
    changes = tuple(i for i in range(1, len(configs)) if configs[i][1] != configs[i - 1][1])
    return GluedEvolution(tuple(configs), changes)


def glue_segments(segments: Sequence[tuple]) -> GluedEvolution:
    """Glue per-control trajectories ``(mu, [s0, s1, ...])`` end to start.

    The shared state between two segments already carries the next
    segment's control, since that control governs the step out of it.
    """
    configs = []
    for k, (mu, states) in enumerate(segments):
        states = [frozenset(s) for s in states]
        if not states:
            raise ValueError("empty segment")
        if k > 0:
            if configs[-1][0] != states[0]:
                raise ValueError(f"segment {k} does not start where segment {k - 1} ends")
            configs.pop()
        configs.extend((s, frozenset(mu)) for s in states)
    return _glue(configs)


def glue_witness(w: ControlWitness) -> GluedEvolution:
    """Label each state of a witness with the control that acts on it."""
    if not w.steps:
        return GluedEvolution(((w.start, frozenset()),), ())
    states = w.states
    ctrls = w.controls
    configs = [(states[i], ctrls[i]) for i in range(len(ctrls))]
    configs.append((states[-1], ctrls[-1]))
    return _glue(configs)

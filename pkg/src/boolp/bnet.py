"""Boolean networks, Boolean control networks and control modes.

States and controls are frozensets of the variables (resp. control
inputs) set to 1.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .formula import (
    Formula,
    Not,
    Var,
    conj,
    disj,
    evaluate,
    exact_set_formula,
    free_vars,
    substitute,
)


class NetworkError(ValueError):
    pass


def subsets(items: Sequence[str]) -> list:
    """All subsets of `items`, by increasing bitmask in the given order."""
    items = tuple(items)
    return [
        frozenset(s for i, s in enumerate(items) if k >> i & 1) for k in range(1 << len(items))
    ]


def state_bits(s: Iterable[str], order: Sequence[str]) -> str:
    s = frozenset(s)
    return "".join("1" if x in s else "0" for x in order)


def bits_state(bits: str, order: Sequence[str]) -> frozenset:
    if len(bits) != len(order) or set(bits) - {"0", "1"}:
        raise NetworkError(f"expected a {len(order)}-digit bitstring, got {bits!r}")
    return frozenset(x for x, b in zip(order, bits) if b == "1")


@dataclass(frozen=True)
class BoolNetwork:
    variables: tuple
    update: Mapping[str, Formula]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "update", dict(self.update))
        if len(set(self.variables)) != len(self.variables):
            raise NetworkError("duplicate variables")
        if set(self.update) != set(self.variables):
            missing = set(self.variables) - set(self.update)
            extra = set(self.update) - set(self.variables)
            raise NetworkError(f"update functions mismatch: missing {sorted(missing)}, extra {sorted(extra)}")
        known = set(self.variables)
        for x, f in self.update.items():
            unknown = free_vars(f) - known
            if unknown:
                raise NetworkError(f"f_{x} uses unknown symbols {sorted(unknown)}")

    def __hash__(self):
        return hash((self.variables, tuple(self.update[x] for x in self.variables)))

    def states(self) -> list:
        return subsets(self.variables)

    def next_value(self, x: str, s: Iterable[str]) -> bool:
        return evaluate(self.update[x], frozenset(s))


class ModeKind(enum.Enum):
    SYNC = "sync"
    ASYNC = "async"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class BooleanMode:
    """A set of sets of variables updated together in one step."""

    kind: ModeKind
    sets: frozenset = frozenset()

    @classmethod
    def explicit(cls, sets: Iterable[Iterable[str]]) -> "BooleanMode":
        return cls(ModeKind.EXPLICIT, frozenset(frozenset(m) for m in sets))

    def elements(self, variables: Sequence[str]) -> list:
        """The mode as a list of variable sets, in a stable order."""
        if self.kind is ModeKind.SYNC:
            return [frozenset(variables)]
        if self.kind is ModeKind.ASYNC:
            return [frozenset((x,)) for x in variables]
        order = {x: i for i, x in enumerate(variables)}
        return sorted(self.sets, key=lambda m: sorted(order.get(x, len(order)) for x in m))


SYNC = BooleanMode(ModeKind.SYNC)
ASYNC = BooleanMode(ModeKind.ASYNC)


def bn_step(f: BoolNetwork, m: BooleanMode, s: Iterable[str]) -> frozenset:
    """Successors of `s`: one per mode element, updating exactly its variables."""
    s = frozenset(s)
    if not s <= set(f.variables):
        raise NetworkError(f"state mentions unknown variables {sorted(s - set(f.variables))}")
    values = {x: evaluate(f.update[x], s) for x in f.variables}
    out = set()
    for elem in m.elements(f.variables):
        nxt = set(s)
        for x in elem:
            if values[x]:
                nxt.add(x)
            else:
                nxt.discard(x)
        out.add(frozenset(nxt))
    return frozenset(out)


# -- control networks -----------------------------------------------------

class Polarity(enum.Enum):
    # u = 1 leaves the variable alone; removing u_i^0 freezes to 0
    INACTIVE_HIGH = "inactive"
    # u = 1 activates the freeze; u_i^1 present freezes to 1
    ACTIVE_HIGH = "active"


@dataclass(frozen=True)
class Bcn:
    """A Boolean control network with update formulas over X ∪ U.

    `freeze` maps controllable variables to their ``(u^0, u^1)`` inputs
    when the network was built by :func:`make_freeze_bcn`.
    """

    variables: tuple
    controls: tuple
    update: Mapping[str, Formula]
    freeze: Mapping[str, tuple] = field(default_factory=dict)
    polarity: Optional[Polarity] = None

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "controls", tuple(self.controls))
        object.__setattr__(self, "update", dict(self.update))
        object.__setattr__(self, "freeze", dict(self.freeze))
        clash = set(self.variables) & set(self.controls)
        if clash:
            raise NetworkError(f"variables and controls overlap: {sorted(clash)}")
        if len(set(self.controls)) != len(self.controls):
            raise NetworkError("duplicate controls")
        # validates the update map over X ∪ U
        BoolNetwork(self.variables + self.controls, {**self.update, **{u: Var(u) for u in self.controls}})
        if set(self.update) != set(self.variables):
            raise NetworkError("every variable needs exactly one update function")

    def __hash__(self):
        return hash((self.variables, self.controls, tuple(self.update[x] for x in self.variables)))

    @cached_property
    def _applied(self) -> dict:
        return {}

    def is_admissible(self, mu: Iterable[str]) -> bool:
        """False for a control that sets both freeze inputs of a variable to 'freeze'."""
        if self.polarity is None:
            return True
        mu = frozenset(mu)
        for u0, u1 in self.freeze.values():
            both = u0 in mu and u1 in mu
            neither = u0 not in mu and u1 not in mu
            if (self.polarity is Polarity.ACTIVE_HIGH and both) or (
                self.polarity is Polarity.INACTIVE_HIGH and neither
            ):
                return False
        return True

    def admissible_controls(self, allow_conflicting: bool = False) -> list:
        return [mu for mu in subsets(self.controls) if allow_conflicting or self.is_admissible(mu)]


def bcn_apply(b: Bcn, mu: Iterable[str], allow_conflicting: bool = False) -> BoolNetwork:
    """The Boolean network obtained by fixing the control inputs to `mu`."""
    mu = frozenset(mu)
    if not mu <= set(b.controls):
        raise NetworkError(f"control mentions unknown inputs {sorted(mu - set(b.controls))}")
    if not allow_conflicting and not b.is_admissible(mu):
        raise NetworkError(f"control {sorted(mu)} freezes a variable both ways")
    cached = b._applied.get(mu)
    if cached is None:
        values = {u: u in mu for u in b.controls}
        cached = BoolNetwork(b.variables, {x: substitute(f, values) for x, f in b.update.items()})
        b._applied[mu] = cached
    return cached


def freeze_control_names(x: str) -> tuple:
    """Control input names for freezing `x`: ``x1 -> (u1_0, u1_1)``, ``x -> (ux0, ux1)``."""
    m = re.fullmatch(r"[A-Za-z]+(\d+)", x)
    if m:
        return f"u{m.group(1)}_0", f"u{m.group(1)}_1"
    return f"u{x}0", f"u{x}1"


def make_freeze_bcn(f: BoolNetwork, controllable: Iterable[str], polarity: Polarity) -> Bcn:
    """Add freeze-to-0 / freeze-to-1 control inputs to the controllable variables.

    INACTIVE_HIGH wraps f_i as ``(f_i & u_i^0) | !u_i^1``;
    ACTIVE_HIGH wraps it as ``(f_i | u_i^1) & !u_i^0``.
    """
    wanted = set(controllable)
    unknown = wanted - set(f.variables)
    if unknown:
        raise NetworkError(f"unknown variables {sorted(unknown)}")
    controllable = [x for x in f.variables if x in wanted]
    freeze = {}
    controls = []
    update = dict(f.update)
    for x in controllable:
        u0, u1 = freeze_control_names(x)
        if u0 in controls or u1 in controls or u0 in f.variables or u1 in f.variables:
            u0, u1 = f"u_{x}_0", f"u_{x}_1"
        freeze[x] = (u0, u1)
        controls += [u0, u1]
        fx = f.update[x]
        if polarity is Polarity.INACTIVE_HIGH:
            update[x] = disj([conj([fx, Var(u0)]), Not(Var(u1))])
        else:
            update[x] = conj([disj([fx, Var(u1)]), Not(Var(u0))])
    return Bcn(f.variables, tuple(controls), update, freeze, polarity)


def bcn_expand(networks: Mapping[frozenset, BoolNetwork], controls: Sequence[str]) -> Bcn:
    """Build a BCN from one network per control.

    Each variable gets ``OR_mu (exact(mu) & F(mu)_x)``; with no controls the
    single network's formulas are kept as they are.
    """
    controls = tuple(controls)
    wanted = subsets(controls)
    networks = {frozenset(k): v for k, v in networks.items()}
    missing = [sorted(mu) for mu in wanted if mu not in networks]
    if missing:
        raise NetworkError(f"no network given for controls {missing}")
    variables = networks[frozenset()].variables
    if not controls:
        return Bcn(variables, (), dict(networks[frozenset()].update))
    update = {}
    for x in variables:
        update[x] = disj([conj([exact_set_formula(mu, controls), networks[mu].update[x]]) for mu in wanted])
    return Bcn(variables, controls, update)


def bcn_trajectory_step(
    b: Bcn, m: BooleanMode, s: Iterable[str], mu: Iterable[str], allow_conflicting: bool = False
) -> frozenset:
    return bn_step(bcn_apply(b, mu, allow_conflicting), m, s)


# -- control modes --------------------------------------------------------

class ControlModeKind(enum.Enum):
    ANY = "any"
    TCS = "tcs"
    ACS = "acs"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class ControlMode:
    """A relation on controls constraining consecutive controls."""

    kind: ControlModeKind
    pairs: frozenset = frozenset()

    @classmethod
    def explicit(cls, pairs: Iterable[tuple]) -> "ControlMode":
        return cls(ControlModeKind.EXPLICIT, frozenset((frozenset(a), frozenset(b)) for a, b in pairs))


ANY = ControlMode(ControlModeKind.ANY)
TCS = ControlMode(ControlModeKind.TCS)
ACS = ControlMode(ControlModeKind.ACS)


def freeze_index(controls: Sequence[str]) -> dict:
    """Map each control input to the variable key it freezes.

    Inputs must come in pairs whose names differ only in a final 0/1
    (``u1_0``/``u1_1`` or ``ux0``/``ux1``).
    """
    groups: dict = {}
    for u in controls:
        if not u or u[-1] not in "01":
            raise NetworkError(f"control {u!r} is not a freeze input (must end in 0 or 1)")
        key = u[:-1].rstrip("_")
        groups.setdefault(key, {})[u[-1]] = u
    for key, g in groups.items():
        if set(g) != {"0", "1"}:
            raise NetworkError(f"freeze inputs for {key!r} are incomplete: {sorted(g.values())}")
    return {u: key for key, g in groups.items() for u in g.values()}


def idx(mu: Iterable[str], index: Mapping[str, str]) -> frozenset:
    return frozenset(index[u] for u in mu)


def control_mode_pairs(
    cm: ControlMode,
    controls: Sequence[str],
    admissible: Optional[Callable[[frozenset], bool]] = None,
) -> list:
    """Explicit, sorted list of the pairs of the relation denoted by `cm`.

    For TCS and ACS a control never holds both inputs of one variable.
    `admissible` filters controls for ANY, TCS and ACS.
    """
    controls = tuple(controls)
    order = {u: i for i, u in enumerate(controls)}

    def key(mu):
        return sum(1 << order[u] for u in mu)

    if cm.kind is ControlModeKind.EXPLICIT:
        for a, b in cm.pairs:
            bad = (a | b) - set(controls)
            if bad:
                raise NetworkError(f"control mode uses unknown inputs {sorted(bad)}")
        return sorted(cm.pairs, key=lambda p: (key(p[0]), key(p[1])))

    domain = subsets(controls)
    if admissible is not None:
        domain = [mu for mu in domain if admissible(mu)]
    if cm.kind is ControlModeKind.ANY:
        return [(a, b) for a in domain for b in domain]

    index = freeze_index(controls)
    full = frozenset(index.values())

    def single(mu):
        keys = [index[u] for u in mu]
        return len(keys) == len(set(keys))

    domain = [mu for mu in domain if single(mu)]
    if cm.kind is ControlModeKind.TCS:
        domain = [mu for mu in domain if idx(mu, index) == full]
        return [(a, b) for a in domain for b in domain]
    return [(a, b) for a in domain for b in domain if idx(a, index) <= idx(b, index)]

"""Constructions that turn other formalisms into Boolean P systems."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .bnet import Bcn, BooleanMode, BoolNetwork
from .core import (
    Bps,
    BpsError,
    DottedProduct,
    Explicit,
    FromQuasimode,
    ModeSpec,
    PowersetOf,
    ProductMode,
    QuasiMode,
    Reading,
    Rule,
    Singleton,
    union_bps,
)
from .formula import TRUE, Not, Var, conj, exact_set_formula


def set_rule_id(x: str) -> str:
    return f"set_{x}"


def clr_rule_id(x: str) -> str:
    return f"clr_{x}"


def _update_rules(variables: Sequence[str], update) -> list:
    rules = []
    for x in variables:
        f = update[x]
        rules.append(Rule(set_rule_id(x), frozenset(), frozenset((x,)), f))
        rules.append(Rule(clr_rule_id(x), frozenset((x,)), frozenset(), Not(f)))
    return rules


def bn_to_bps(f: BoolNetwork) -> Bps:
    """``Π(F)``: rules ``∅ → {x} | f_x`` and ``{x} → ∅ | !f_x`` per variable."""
    return Bps(f.variables, _update_rules(f.variables, f.update))


def boolean_mode_to_quasimode(m: BooleanMode, variables: Sequence[str]) -> Explicit:
    """One rule-set per mode element: both rules of every selected variable.

    Meant to run under the maximal reading.
    """
    return Explicit(
        frozenset(r for x in elem for r in (set_rule_id(x), clr_rule_id(x)))
        for elem in m.elements(variables)
    )


def bn_mode(f: BoolNetwork, m: BooleanMode) -> ModeSpec:
    return FromQuasimode(boolean_mode_to_quasimode(m, f.variables), Reading.MAXIMAL)


@dataclass(frozen=True)
class CompositeBps:
    """``Π ∪ Π_U`` together with the mode it runs under."""

    bps: Bps
    quasimode: QuasiMode
    mode: ModeSpec
    x_symbols: tuple
    u_symbols: tuple

    def split(self, w: Iterable[str]) -> tuple:
        w = frozenset(w)
        return w & frozenset(self.x_symbols), w & frozenset(self.u_symbols)


def _network_part(b: Bcn) -> Bps:
    return Bps(b.variables + b.controls, _update_rules(b.variables, b.update))


def bcn_to_composite(b: Bcn, m: BooleanMode) -> CompositeBps:
    """Composite system where the control may change freely at every step.

    Each step removes the present control inputs and re-adds any subset.
    """
    removal = [Rule(f"u_del_{u}", frozenset((u,)), frozenset(), TRUE) for u in b.controls]
    addition = [Rule(f"u_add_{u}", frozenset(), frozenset((u,)), TRUE) for u in b.controls]
    pu = Bps(b.controls, removal + addition)
    bps = union_bps(_network_part(b), pu)
    q_u = DottedProduct(Singleton(r.id for r in removal), PowersetOf(r.id for r in addition))
    q = DottedProduct(boolean_mode_to_quasimode(m, b.variables), q_u)
    return CompositeBps(bps, q, FromQuasimode(q, Reading.MAXIMAL), b.variables, b.controls)


class GuardStyle(enum.Enum):
    EXACT = "exact"
    LITERAL = "paper"  # guard 1 on every relation rule


def control_mode_to_pu(
    pairs: Iterable[tuple], controls: Sequence[str], guard_style: GuardStyle = GuardStyle.EXACT
) -> tuple:
    """Rules ``mu1 → mu2`` for a control relation, with singleton quasimode.

    EXACT guards each rule with "control part equals mu1"; LITERAL uses 1,
    which also fires when the control part only contains mu1.
    """
    controls = tuple(controls)
    rules = []
    for k, (a, b) in enumerate(pairs):
        guard = exact_set_formula(a, controls) if guard_style is GuardStyle.EXACT else TRUE
        rules.append(Rule(f"cm_{k}", frozenset(a), frozenset(b), guard))
    return Bps(controls, rules), Explicit(frozenset((r.id,)) for r in rules)


def seqcontrol_composite(
    b: Bcn, m: BooleanMode, pairs: Iterable[tuple], guard_style: GuardStyle = GuardStyle.EXACT
) -> CompositeBps:
    """Composite system for a control relation.

    The network part runs under the maximal reading and the control part
    under the strict one: a step happens only through a relation pair.
    """
    pu, q_u = control_mode_to_pu(pairs, b.controls, guard_style)
    q_x = boolean_mode_to_quasimode(m, b.variables)
    bps = union_bps(_network_part(b), pu)
    mode = ProductMode((FromQuasimode(q_x, Reading.MAXIMAL), FromQuasimode(q_u, Reading.STRICT)))
    return CompositeBps(bps, DottedProduct(q_x, q_u), mode, b.variables, b.controls)


def rs_to_bps(reactions: Sequence[tuple], species: Sequence[str]) -> Bps:
    """Reaction system as a Boolean P system to run maximally parallel.

    `reactions` holds ``(reactants, inhibitors, products)`` triples.
    """
    species = tuple(species)
    rules = []
    for k, (reactants, inhibitors, products) in enumerate(reactions):
        reactants, inhibitors = frozenset(reactants), frozenset(inhibitors)
        if reactants & inhibitors:
            raise BpsError(f"reaction {k} has species both reactant and inhibitor: {sorted(reactants & inhibitors)}")
        guard = conj([Var(s) for s in species if s in reactants] + [Not(Var(s)) for s in species if s in inhibitors])
        rules.append(Rule(f"rx_{k}", frozenset(), frozenset(products), guard))
    rules += [Rule(f"deg_{s}", frozenset((s,)), frozenset(), TRUE) for s in species]
    return Bps(species, rules)

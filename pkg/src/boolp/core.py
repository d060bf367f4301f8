"""Boolean P systems: guarded set-rewriting rules, modes and quasimodes.

A configuration is a subset of the alphabet. Public functions take and
return ``frozenset`` configurations; the search code works on bitmasks
through :meth:`Bps.encode` / :meth:`Bps.decode`.

Quasimodes are turned into modes in one of two readings:

``strict``
    ``M(W) = {m ∈ M̃ | every rule of m is applicable to W}``.
``maximal``
    ``M(W) = {m ∩ A(W) | m ∈ M̃}`` where ``A(W)`` is the set of rules
    applicable to W: each advised set fires the part of it that applies.
    This is the reading under which a Boolean network translated with
    ``M̃_syn = {R}`` steps at all, since the two rules of one variable are
    never applicable together.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .formula import TRUE, Formula, compile_mask, evaluate, free_vars

RuleSet = frozenset  # frozenset of rule ids
Config = frozenset  # frozenset of symbol names


class BpsError(ValueError):
    pass


class InapplicableRuleError(BpsError):
    def __init__(self, rule_id: str):
        super().__init__(f"rule {rule_id!r} is not applicable")
        self.rule_id = rule_id


@dataclass(frozen=True)
class Rule:
    id: str
    lhs: frozenset
    rhs: frozenset
    guard: Formula = TRUE

    def __post_init__(self):
        object.__setattr__(self, "lhs", frozenset(self.lhs))
        object.__setattr__(self, "rhs", frozenset(self.rhs))

    def symbols(self) -> frozenset:
        return self.lhs | self.rhs | free_vars(self.guard)


@dataclass(frozen=True)
class Bps:
    """A Boolean P system ``(V, R)`` with ordered alphabet and rules."""

    alphabet: tuple
    rules: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "rules", tuple(self.rules))
        if len(set(self.alphabet)) != len(self.alphabet):
            raise BpsError("duplicate symbols in alphabet")
        seen = set()
        known = set(self.alphabet)
        for r in self.rules:
            if r.id in seen:
                raise BpsError(f"duplicate rule id {r.id!r}")
            seen.add(r.id)
            unknown = r.symbols() - known
            if unknown:
                raise BpsError(f"rule {r.id!r} uses symbols outside the alphabet: {sorted(unknown)}")

    @cached_property
    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.alphabet)}

    @cached_property
    def rule_map(self) -> dict:
        return {r.id: r for r in self.rules}

    @cached_property
    def _compiled(self) -> tuple:
        out = []
        for r in self.rules:
            out.append((r.id, self.encode(r.lhs), self.encode(r.rhs), compile_mask(r.guard, self.index)))
        return tuple(out)

    @cached_property
    def _masks(self) -> dict:
        return {rid: (lhs, rhs) for rid, lhs, rhs, _ in self._compiled}

    def rule(self, rule_id: str) -> Rule:
        try:
            return self.rule_map[rule_id]
        except KeyError:
            raise BpsError(f"unknown rule {rule_id!r}") from None

    def encode(self, w: Iterable[str]) -> int:
        mask = 0
        for s in w:
            try:
                mask |= 1 << self.index[s]
            except KeyError:
                raise BpsError(f"symbol {s!r} not in alphabet") from None
        return mask

    def decode(self, mask: int) -> Config:
        return frozenset(s for i, s in enumerate(self.alphabet) if mask >> i & 1)

    def bits(self, w: Iterable[str]) -> str:
        """Bitstring of `w` in alphabet order."""
        w = frozenset(w)
        return "".join("1" if s in w else "0" for s in self.alphabet)

    def from_bits(self, bits: str) -> Config:
        if len(bits) != len(self.alphabet) or set(bits) - {"0", "1"}:
            raise BpsError(f"expected a {len(self.alphabet)}-digit bitstring, got {bits!r}")
        return frozenset(s for s, b in zip(self.alphabet, bits) if b == "1")

    def applicable_mask(self, mask: int) -> frozenset:
        return frozenset(rid for rid, lhs, _, guard in self._compiled if lhs & mask == lhs and guard(mask))

    def apply_mask(self, mask: int, rule_ids: Iterable[str]) -> int:
        removed = added = 0
        for rid in rule_ids:
            try:
                lhs, rhs = self._masks[rid]
            except KeyError:
                raise BpsError(f"unknown rule {rid!r}") from None
            removed |= lhs
            added |= rhs
        return (mask & ~removed) | added


def is_applicable(r: Rule, w: Iterable[str]) -> bool:
    w = frozenset(w)
    return r.lhs <= w and evaluate(r.guard, w)


def applicable_rules(p: Bps, w: Iterable[str]) -> frozenset:
    """Ids of the rules of `p` that are individually applicable to `w`."""
    return p.applicable_mask(p.encode(w))


def apply_rule_set(w: Iterable[str], rules: Iterable[Rule]) -> Config:
    """Apply a set of individually applicable rules: ``(W ∖ ∪A) ∪ ∪B``."""
    w = frozenset(w)
    rules = list(rules)
    for r in rules:
        if not is_applicable(r, w):
            raise InapplicableRuleError(r.id)
    removed = frozenset().union(*(r.lhs for r in rules))
    added = frozenset().union(*(r.rhs for r in rules))
    return (w - removed) | added


# -- quasimodes -----------------------------------------------------------

class QuasiMode:
    """A finite set of rule-sets, possibly given as a symbolic family."""

    def expand(self) -> frozenset:
        raise NotImplementedError

    def rule_ids(self) -> frozenset:
        raise NotImplementedError

    @cached_property
    def _expansion(self) -> tuple:
        return tuple(sorted(self.expand(), key=lambda m: sorted(m)))

    def __iter__(self) -> Iterator[frozenset]:
        return iter(self._expansion)

    def __len__(self) -> int:
        return len(self._expansion)


def _ruleset(ids: Iterable[str]) -> frozenset:
    return frozenset(ids)


@dataclass(frozen=True, eq=True)
class Explicit(QuasiMode):
    sets: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "sets", frozenset(_ruleset(m) for m in self.sets))

    def expand(self):
        return self.sets

    def rule_ids(self):
        return frozenset().union(*self.sets)


@dataclass(frozen=True, eq=True)
class Singleton(QuasiMode):
    rules: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", _ruleset(self.rules))

    def expand(self):
        return frozenset((self.rules,))

    def rule_ids(self):
        return self.rules


@dataclass(frozen=True, eq=True)
class PowersetOf(QuasiMode):
    rules: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "rules", _ruleset(self.rules))

    def expand(self):
        items = sorted(self.rules)
        return frozenset(
            frozenset(c) for k in range(len(items) + 1) for c in itertools.combinations(items, k)
        )

    def rule_ids(self):
        return self.rules


@dataclass(frozen=True, eq=True)
class DottedProduct(QuasiMode):
    left: QuasiMode
    right: QuasiMode

    def expand(self):
        return frozenset(a | b for a in self.left.expand() for b in self.right.expand())

    def rule_ids(self):
        return self.left.rule_ids() | self.right.rule_ids()


@dataclass(frozen=True, eq=True)
class UnionOfFamilies(QuasiMode):
    parts: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def expand(self):
        return frozenset().union(*(p.expand() for p in self.parts))

    def rule_ids(self):
        return frozenset().union(*(p.rule_ids() for p in self.parts))


def dotted_product(a: QuasiMode, b: QuasiMode) -> QuasiMode:
    """``A ×̇ B = {a ∪ b | a ∈ A, b ∈ B}``."""
    return DottedProduct(a, b)


# -- modes ----------------------------------------------------------------

class Reading(enum.Enum):
    STRICT = "strict"
    MAXIMAL = "maximal"


class ModeSpec:
    def derive(self, p: Bps, applicable: frozenset) -> frozenset:
        """The mode's rule-sets at a configuration with these applicable rules."""
        raise NotImplementedError

    def rule_ids(self) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True)
class MaxParallel(ModeSpec):
    """Apply every applicable rule; halts where no rule applies."""

    def derive(self, p, applicable):
        return frozenset((applicable,)) if applicable else frozenset()

    def rule_ids(self):
        return frozenset()


@dataclass(frozen=True)
class FromQuasimode(ModeSpec):
    quasimode: QuasiMode
    reading: Reading = Reading.STRICT

    def derive(self, p, applicable):
        if self.reading is Reading.STRICT:
            return frozenset(m for m in self.quasimode if m <= applicable)
        return frozenset(m & applicable for m in self.quasimode)

    def rule_ids(self):
        return self.quasimode.rule_ids()


@dataclass(frozen=True)
class ProductMode(ModeSpec):
    """``(M1 × M2)(W) = M1(W) ×̇ M2(W)``, generalised to any number of factors."""

    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    def derive(self, p, applicable):
        out = frozenset((frozenset(),))
        for m in self.factors:
            out = frozenset(a | b for a in out for b in m.derive(p, applicable))
        return out

    def rule_ids(self):
        return frozenset().union(*(m.rule_ids() for m in self.factors))


def derive_mode(q: QuasiMode, p: Bps, w: Iterable[str], reading: Reading = Reading.STRICT) -> frozenset:
    """Rule-sets of quasimode `q` selected at configuration `w`."""
    return FromQuasimode(q, reading).derive(p, applicable_rules(p, w))


def check_mode(p: Bps, m: ModeSpec) -> None:
    unknown = m.rule_ids() - p.rule_map.keys()
    if unknown:
        raise BpsError(f"mode refers to unknown rules: {sorted(unknown)}")


def step_mask(p: Bps, m: ModeSpec, mask: int) -> list:
    """Successors of a bitmask configuration as sorted ``(rule ids, mask)`` pairs."""
    chosen = m.derive(p, p.applicable_mask(mask))
    out = [(tuple(sorted(rs)), p.apply_mask(mask, rs)) for rs in chosen]
    out.sort()
    return out


def step(p: Bps, m: ModeSpec, w: Iterable[str]) -> set:
    """All ``(successor, rule-set)`` pairs of `w` under `m`."""
    return {(p.decode(nxt), frozenset(ids)) for ids, nxt in step_mask(p, m, p.encode(w))}


# -- composition ----------------------------------------------------------

def union_bps(p1: Bps, p2: Bps) -> Bps:
    """``Π1 ∪ Π2``: alphabet and rule union; p1's order first."""
    alphabet = list(p1.alphabet) + [s for s in p2.alphabet if s not in p1.index]
    rules = list(p1.rules)
    for r in p2.rules:
        other = p1.rule_map.get(r.id)
        if other is None:
            rules.append(r)
        elif other != r:
            raise BpsError(f"conflicting definitions of rule {r.id!r}")
    return Bps(tuple(alphabet), tuple(rules))

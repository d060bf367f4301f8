"""Randomized instance checks shared by the unit and acceptance suites.

Each function builds one random instance from `rng`, compares the library
against an oracle and returns True on agreement.
"""

from boolp.bnet import Bcn, BooleanMode, BoolNetwork, bcn_apply, bn_step, subsets
from boolp.core import (
    DottedProduct,
    Explicit,
    FromQuasimode,
    MaxParallel,
    Reading,
    applicable_rules,
    derive_mode,
    step,
    union_bps,
)
from boolp.reach import ReachProblem, solve_reach
from boolp.translate import bcn_to_composite, bn_mode, bn_to_bps, rs_to_bps

from oracles import (
    all_subsets,
    bn_successors,
    random_quasimode,
    random_system,
    random_table,
    rs_result,
    truth_table_formula,
)

SYMBOLS = ("a", "b", "c", "d", "e")


def random_network(rng, n):
    xs = tuple(f"x{i}" for i in range(1, n + 1))
    tables = {x: random_table(rng, xs) for x in xs}
    return BoolNetwork(xs, {x: truth_table_formula(tables[x], xs) for x in xs}), tables


def random_boolean_mode(rng, xs):
    kind = rng.random()
    if kind < 0.2:
        return BooleanMode.explicit([xs]), [frozenset(xs)]
    if kind < 0.4:
        return BooleanMode.explicit([{x} for x in xs]), [frozenset({x}) for x in xs]
    sets = [frozenset(x for x in xs if rng.random() < 0.5) for _ in range(rng.randint(0, 4))]
    return BooleanMode.explicit(sets), sets


def network_bisimulation(rng) -> bool:
    """Labelled transitions of (F, M) against those of (Π(F), M̃), both inclusions."""
    f, tables = random_network(rng, rng.randint(1, 4))
    m, sets = random_boolean_mode(rng, f.variables)
    p = bn_to_bps(f)
    mode = bn_mode(f, m)
    for s in all_subsets(f.variables):
        direct = {(elem, t) for elem in sets for t in bn_successors(tables, f.variables, [elem], s)}
        if {t for _, t in direct} != bn_step(f, m, s):
            return False
        translated = step(p, mode, s)
        if {t for _, t in direct} != {t for t, _ in translated}:
            return False
        # each fired rule-set stems from a mode element with the same successor
        for t, rs in translated:
            touched = {r.split("_", 1)[1] for r in rs}
            if not any(touched <= elem and (elem, t) in direct for elem, _ in direct):
                return False
    return True


def product_lemma(rng) -> bool:
    """Derived mode of a dotted-product quasimode against the product of derived modes."""
    n1 = rng.randint(1, 3)
    v1 = SYMBOLS[:n1]
    v2 = SYMBOLS[rng.randint(0, n1): rng.randint(n1 + 1, 5)]
    s1 = random_system(rng, v1, rng.randint(0, 3), "p")
    s2 = random_system(rng, v2, rng.randint(0, 3), "q")
    q1 = random_quasimode(rng, [r[0] for r in s1.raw])
    q2 = random_quasimode(rng, [r[0] for r in s2.raw])
    u = union_bps(s1.bps, s2.bps)
    for rd in Reading:
        joint = FromQuasimode(DottedProduct(Explicit(q1), Explicit(q2)), rd)
        for w in all_subsets(u.alphabet):
            d1 = derive_mode(Explicit(q1), s1.bps, w & set(v1), rd)
            d2 = derive_mode(Explicit(q2), s2.bps, w & set(v2), rd)
            # expansion of the product straight from the definitions
            a1 = s1.applicable(w & set(v1))
            a2 = s2.applicable(w & set(v2))
            if rd is Reading.STRICT:
                o1 = {m for m in q1 if m <= a1}
                o2 = {m for m in q2 if m <= a2}
            else:
                o1 = {m & a1 for m in q1}
                o2 = {m & a2 for m in q2}
            expected = {a | b for a in o1 for b in o2}
            if set(d1) != o1 or set(d2) != o2:
                return False
            if joint.derive(u, applicable_rules(u, w)) != expected:
                return False
    return True


def reaction_system(rng) -> bool:
    species = SYMBOLS[: rng.randint(1, 5)]
    reactions = []
    for _ in range(rng.randint(0, 4)):
        r = frozenset(s for s in species if rng.random() < 0.35)
        i = frozenset(s for s in species if s not in r and rng.random() < 0.3)
        p = frozenset(s for s in species if rng.random() < 0.4)
        reactions.append((r, i, p))
    bps = rs_to_bps(reactions, species)
    for w in all_subsets(species):
        succ = {t for t, _ in step(bps, MaxParallel(), w)}
        want = rs_result(reactions, w)
        # a configuration where nothing applies halts; its result is itself (only ∅)
        if succ != {want} and not (not succ and want == w):
            return False
    return True


def degenerate_quasimode(rng) -> bool:
    sys_ = random_system(rng, SYMBOLS[: rng.randint(1, 4)], rng.randint(0, 4))
    states = all_subsets(sys_.alphabet)
    start = rng.sample(states, rng.randint(1, min(3, len(states))))
    target = frozenset(rng.sample(states, rng.randint(0, len(states))))
    if rng.random() < 0.3:
        target = target | frozenset(start)
    res = solve_reach(ReachProblem(sys_.bps, FromQuasimode(Explicit()), start, target))
    return res.answer == set(start).issubset(target)


def random_bcn(rng, nx, nu):
    xs = tuple(f"x{i}" for i in range(1, nx + 1))
    us = tuple(f"v{i}" for i in range(1, nu + 1))
    joint = xs + us
    update = {x: truth_table_formula(random_table(rng, joint), joint) for x in xs}
    return Bcn(xs, us, update)


def composite_bisimulation(rng) -> bool:
    """Every BCN step lifts for every next control, every composite step projects."""
    nx = rng.randint(1, 3)
    b = random_bcn(rng, nx, rng.randint(0, 6 - nx))
    m, _ = random_boolean_mode(rng, b.variables)
    comp = bcn_to_composite(b, m)
    for mu in subsets(b.controls):
        f = bcn_apply(b, mu)
        for s in all_subsets(b.variables):
            got = {t for t, _ in step(comp.bps, comp.mode, s | mu)}
            want = {t | nu for t in bn_step(f, m, s) for nu in subsets(b.controls)}
            if got != want:
                return False
    return True

import itertools

import pytest

from boolp.core import applicable_rules, step
from boolp.lba import (
    Lba,
    LbaConfig,
    LbaError,
    a_sym,
    c_sym,
    config_to_symbols,
    initial_config,
    lba_accepts,
    lba_rules,
    lba_run,
    lba_step,
    lba_to_bps,
    symbols_to_config,
)
from boolp.reach import solve_reach

from models import TOY_LBAS, eraser, expected_acceptance, parity

S = frozenset


def words(alphabet, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def test_moves():
    m = eraser()
    c = LbaConfig(("Zl", "a", "b", "Zr"), 1, "q0")
    assert lba_step(m, c) == LbaConfig(("Zl", "B", "b", "Zr"), 2, "q0")
    c = LbaConfig(("Zl", "a", "b", "Zr"), 1, "q1")
    assert lba_step(m, c) == c
    c = LbaConfig(("Zl", "B", "Zr"), 1, "qb")
    assert lba_step(m, c) == LbaConfig(("Zl", "B", "Zr"), 0, "qb")
    c = LbaConfig(("Zl", "a", "Zr"), 0, "q0")
    assert lba_step(m, c) == LbaConfig(("Zl", "a", "Zr"), 1, "q0")


def test_malformed_configurations():
    m = eraser()
    with pytest.raises(LbaError):
        lba_step(m, LbaConfig(("a", "Zr"), 0, "q0"))
    with pytest.raises(LbaError):
        lba_step(m, LbaConfig(("Zl", "Zr"), 5, "q0"))


def test_validation():
    m = eraser()
    delta = dict(m.delta)
    delta[("q0", "Zl")] = ("q0", "Zl", "L")
    with pytest.raises(LbaError):
        Lba(m.states, m.tape, m.input, m.output, delta, m.init, m.final)
    delta = dict(m.delta)
    delta[("q0", "Zr")] = ("q0", "B", "L")
    with pytest.raises(LbaError):
        Lba(m.states, m.tape, m.input, m.output, delta, m.init, m.final)
    delta = dict(m.delta)
    del delta[("q0", "a")]
    with pytest.raises(LbaError):
        Lba(m.states, m.tape, m.input, m.output, delta, m.init, m.final)
    with pytest.raises(LbaError):
        Lba(m.states, m.tape, ("B",), m.output, m.delta, m.init, m.final)


@pytest.mark.parametrize("name", sorted(TOY_LBAS))
def test_direct_simulation(name):
    m = TOY_LBAS[name]()
    for w in words(m.input, 6):
        assert lba_accepts(m, w) == expected_acceptance(name, w), w


def test_even_and_odd():
    m = parity()
    assert lba_accepts(m, "aa")
    assert not lba_accepts(m, "aaa")


def test_input_outside_alphabet():
    with pytest.raises(LbaError):
        initial_config(parity(), "ab")


def test_rule_shapes():
    m = eraser()
    rules = {r.id: r for r in lba_rules(m, 3)}
    r = rules["r_q0_a_2"]
    assert r.lhs == {a_sym("a", 2), c_sym("q0", 2)}
    assert r.rhs == {a_sym("B", 2), c_sym("q0", 3)}
    # right moves for j = 0..n, stays for 0..n+1, left moves for 1..n+1
    assert "r_q0_a_3" in rules and "r_q0_a_4" not in rules
    assert "r_q1_a_4" in rules and "r_q1_a_0" in rules
    assert "r_qb_a_4" in rules and "r_qb_a_0" not in rules


def test_empty_input_target_and_start():
    m = eraser()
    prob = lba_to_bps(m, ())
    assert prob.target == {S({c_sym("q1", 0), a_sym("Zl", 0), a_sym("Zr", 1)})}
    assert prob.start == (S({a_sym("Zl", 0), a_sym("Zr", 1), c_sym("q0", 1)}),)
    assert solve_reach(prob, limit=None).answer


@pytest.mark.parametrize("name", sorted(TOY_LBAS))
def test_alphabet_size(name):
    m = TOY_LBAS[name]()
    for n in range(6):
        prob = lba_to_bps(m, [m.input[0]] * n)
        assert len(prob.bps.alphabet) == (n + 2) * (len(m.tape) + len(m.states))


@pytest.mark.parametrize("name", sorted(TOY_LBAS))
def test_lockstep_with_the_direct_run(name):
    m = TOY_LBAS[name]()
    for w in words(m.input, 3):
        prob = lba_to_bps(m, w)
        (cur,) = prob.start
        _, trace = lba_run(m, w)
        for c, nxt in zip(trace, trace[1:]):
            assert config_to_symbols(c) == cur
            assert len(applicable_rules(prob.bps, cur)) == 1
            (succ,) = step(prob.bps, prob.mode, cur)
            cur = succ[0]
            assert symbols_to_config(m, len(w), cur) == nxt


@pytest.mark.parametrize("name", sorted(TOY_LBAS))
def test_reduction_agrees_with_direct_run(name):
    m = TOY_LBAS[name]()
    for w in words(m.input, 4):
        assert solve_reach(lba_to_bps(m, w), limit=None).answer == lba_accepts(m, w)

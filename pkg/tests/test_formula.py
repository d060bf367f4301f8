import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolp.formula import (
    FALSE,
    TRUE,
    And,
    Const,
    FormulaError,
    Not,
    Or,
    Var,
    compile_mask,
    conj,
    disj,
    evaluate,
    exact_set_formula,
    free_vars,
    parse_formula,
    substitute,
    to_text,
)

NAMES = ["x", "y", "ux0", "u1_1", "A_B_3"]


def formulas():
    leaves = st.one_of(st.sampled_from([TRUE, FALSE]), st.sampled_from(NAMES).map(Var))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Not),
            st.lists(sub, min_size=2, max_size=4).map(lambda xs: And(tuple(xs))),
            st.lists(sub, min_size=2, max_size=4).map(lambda xs: Or(tuple(xs))),
        ),
        max_leaves=12,
    )


def test_precedence_and_left_nesting():
    f = parse_formula("(!x & y) & ux0 | !ux1")
    assert f == Or((And((And((Not(Var("x")), Var("y"))), Var("ux0"))), Not(Var("ux1"))))


def test_constants():
    assert parse_formula("1") == TRUE
    assert parse_formula("0") == FALSE
    assert parse_formula(" ! 0 ") == Not(FALSE)


def test_flat_chains():
    assert parse_formula("a & b & c") == And((Var("a"), Var("b"), Var("c")))
    assert parse_formula("a | b & c") == Or((Var("a"), And((Var("b"), Var("c")))))
    assert parse_formula("!!a") == Not(Not(Var("a")))


@pytest.mark.parametrize(
    "text, pos",
    [("x &", 3), ("(x | y", 6), ("x ) y", 2), ("x # y", 2), ("", 0), ("x y", 2)],
)
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(FormulaError) as e:
        parse_formula(text)
    assert e.value.position == pos


def test_unknown_identifier_is_named():
    with pytest.raises(FormulaError, match="'z'"):
        parse_formula("x & z", alphabet={"x", "y"})


def test_digits_glued_to_letters_are_rejected():
    with pytest.raises(FormulaError):
        parse_formula("1x")


@settings(max_examples=300, deadline=None)
@given(formulas())
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) == f


@settings(max_examples=200, deadline=None)
@given(formulas(), st.sets(st.sampled_from(NAMES)))
def test_compiled_predicate_matches_evaluation(f, w):
    index = {n: i for i, n in enumerate(NAMES)}
    mask = sum(1 << index[n] for n in w)
    assert compile_mask(f, index)(mask) == evaluate(f, w)


@settings(max_examples=200, deadline=None)
@given(formulas(), st.sets(st.sampled_from(NAMES)), st.dictionaries(st.sampled_from(NAMES), st.booleans()))
def test_substitute_agrees_with_evaluation(f, w, values):
    fixed = {n for n, v in values.items() if v}
    world = (set(w) - set(values)) | fixed
    g = substitute(f, values)
    assert not (free_vars(g) & set(values))
    assert evaluate(g, w) == evaluate(f, world)


def test_evaluate_truth_tables():
    f = parse_formula("x & !y | !x & y")
    for x, y in itertools.product([0, 1], repeat=2):
        w = {n for n, v in (("x", x), ("y", y)) if v}
        assert evaluate(f, w) == (x != y)


def test_conj_disj_edge_cases():
    assert conj([]) == TRUE
    assert disj([]) == FALSE
    assert conj([Var("a")]) == Var("a")
    with pytest.raises(ValueError):
        And((Var("a"),))


def test_exact_set_formula():
    universe = ["u", "v", "w"]
    f = exact_set_formula({"v"}, universe)
    assert to_text(f) == "!u & v & !w"
    for k in range(8):
        w = {s for i, s in enumerate(universe) if k >> i & 1}
        assert evaluate(f, w | {"other"}) == (w == {"v"})
    assert exact_set_formula(set(), []) == TRUE
    with pytest.raises(ValueError):
        exact_set_formula({"z"}, universe)


def test_free_vars():
    assert free_vars(parse_formula("x & !(y | 1)")) == {"x", "y"}
    assert free_vars(Const(True)) == frozenset()

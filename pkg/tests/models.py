"""Models taken from the worked examples, shared by several test files."""

from boolp.bnet import ANY, BoolNetwork, ControlMode, Polarity, freeze_index, idx, make_freeze_bcn
from boolp.core import Bps, Rule
from boolp.formula import parse_formula
from boolp.lba import Lba


def example_bn():
    """Two-variable network: f_x = !x & y, f_y = x & !y."""
    return BoolNetwork(("x", "y"), {"x": parse_formula("!x & y"), "y": parse_formula("x & !y")})


def example_bcn():
    return make_freeze_bcn(example_bn(), ["x", "y"], Polarity.INACTIVE_HIGH)


def three_var_bn():
    return BoolNetwork(
        ("x1", "x2", "x3"),
        {
            "x1": parse_formula("!x1 & x2 & x3 | x1 & !x2 & x3 | x1 & x2 & !x3"),
            "x2": parse_formula("!x2 & x3 | x1 & x2 & !x3"),
            "x3": parse_formula("x1 & x2 | x3"),
        },
    )


def three_var_bcn():
    return make_freeze_bcn(three_var_bn(), ["x1", "x2"], Polarity.ACTIVE_HIGH)


THREE_VAR_SYNC = {
    "000": "000",
    "001": "011",
    "010": "000",
    "011": "101",
    "100": "000",
    "101": "111",
    "110": "111",
    "111": "001",
}

TWO_VAR_SYNC = {("00", "00"), ("01", "10"), ("10", "01"), ("11", "00")}
TWO_VAR_ASYNC = {
    ("00", "00"),
    ("01", "00"),
    ("01", "11"),
    ("10", "00"),
    ("10", "11"),
    ("11", "01"),
    ("11", "10"),
}


def ab_system():
    """r1: {a,b} -> {a} | 1 and r2: {a} -> {} | !b."""
    return Bps(
        ("a", "b"),
        (
            Rule("r1", {"a", "b"}, {"a"}),
            Rule("r2", {"a"}, set(), parse_formula("!b")),
        ),
    )


# -- toy LBAs ------------------------------------------------------------

def _lba(states, tape, inp, rows, init="q0", final="q1"):
    delta = {}
    for row in rows:
        q, v, p, w, d = row.split()
        delta[(q, v)] = (p, w, d)
    return Lba(states, tape, inp, inp, delta, init, final)


def eraser():
    """Blanks the input left to right, walks back and accepts."""
    rows = []
    for v in ("a", "b", "B"):
        rows += [f"q0 {v} q0 B R", f"qb {v} qb {v} L", f"q1 {v} q1 {v} S"]
    rows += ["q0 Zl q0 Zl R", "q0 Zr qb Zr L", "qb Zl q1 Zl S", "qb Zr qb Zr L", "q1 Zl q1 Zl S", "q1 Zr q1 Zr S"]
    return _lba(("q0", "qb", "q1"), ("Zl", "B", "Zr", "a", "b"), ("a", "b"), rows)


def parity():
    """Accepts unary words of even length; loops on odd ones."""
    rows = [
        "q0 a qo B R", "qo a q0 B R", "q0 B q0 B R", "qo B qo B R",
        "q0 Zr qb Zr L", "qo Zr qr Zr S",
        "q0 Zl q0 Zl R", "qo Zl qo Zl R",
        "qb a qb a L", "qb B qb B L", "qb Zl q1 Zl S", "qb Zr qb Zr L",
        "qr a qr a S", "qr B qr B S", "qr Zl qr Zl S", "qr Zr qr Zr S",
        "q1 a q1 a S", "q1 B q1 B S", "q1 Zl q1 Zl S", "q1 Zr q1 Zr S",
    ]
    return _lba(("q0", "qo", "qb", "qr", "q1"), ("Zl", "B", "Zr", "a"), ("a",), rows)


def has_b():
    """Accepts words over {a,b} that contain at least one b."""
    rows = []
    for v in ("a", "B"):
        rows += [f"q0 {v} q0 B R", f"qf {v} qf B R"]
    rows += ["q0 b qf B R", "qf b qf B R", "q0 Zr qr Zr S", "qf Zr qb Zr L", "q0 Zl q0 Zl R", "qf Zl qf Zl R"]
    for v in ("a", "b", "B"):
        rows += [f"qb {v} qb {v} L", f"qr {v} qr {v} S", f"q1 {v} q1 {v} S"]
    rows += ["qb Zl q1 Zl S", "qb Zr qb Zr L", "qr Zl qr Zl S", "qr Zr qr Zr S", "q1 Zl q1 Zl S", "q1 Zr q1 Zr S"]
    return _lba(("q0", "qf", "qb", "qr", "q1"), ("Zl", "B", "Zr", "a", "b"), ("a", "b"), rows)


def lazy():
    """Walks to the right end and back in the final state without erasing.

    Reaches the final state at cell 0 on every input, but only the empty
    input leaves an all-blank tape.
    """
    rows = []
    for v in ("a", "B"):
        rows += [f"q0 {v} q0 {v} R", f"q1 {v} q1 {v} L"]
    rows += ["q0 Zl q0 Zl R", "q0 Zr q1 Zr L", "q1 Zl q1 Zl S", "q1 Zr q1 Zr L"]
    return _lba(("q0", "q1"), ("Zl", "B", "Zr", "a"), ("a",), rows)


TOY_LBAS = {"eraser": eraser, "parity": parity, "has_b": has_b, "lazy": lazy}


def expected_acceptance(name, word):
    word = list(word)
    if name == "eraser":
        return True
    if name == "parity":
        return len(word) % 2 == 0
    if name == "has_b":
        return "b" in word
    return not word


MU110 = frozenset({"u1_1", "u2_1"})


def scenario_relations():
    b = three_var_bcn()
    adm = b.admissible_controls()
    index = freeze_index(b.controls)
    single = [mu for mu in adm if len(idx(mu, index)) <= 1]
    return {
        "any": ANY,
        "minimal": ControlMode.explicit([(MU110, MU110), (MU110, frozenset()), (frozenset(), frozenset())]),
        "single": ControlMode.explicit([(a, c) for a in single for c in single]),
        "permanent": ControlMode.explicit([(a, c) for a in adm for c in adm if a != MU110 or c == MU110]),
    }

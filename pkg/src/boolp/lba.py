"""Deterministic linear bounded automata and their encoding as a Boolean P system.

The tape holds the input between the two boundary markers: cell 0 is the
left marker, cell n+1 the right one. Computation starts in the initial
state with the head on cell 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Bps, FromQuasimode, Reading, Rule, Singleton
from .reach import ReachProblem

MOVES = ("L", "R", "S")


class LbaError(ValueError):
    pass


@dataclass(frozen=True)
class Lba:
    states: tuple
    tape: tuple
    input: tuple
    output: tuple
    delta: Mapping[tuple, tuple]  # (q, v) -> (p, w, move)
    init: str
    final: str
    left: str = "Zl"
    blank: str = "B"
    right: str = "Zr"

    def __post_init__(self):
        for name in ("states", "tape", "input", "output"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        object.__setattr__(self, "delta", dict(self.delta))
        self._validate()

    def __hash__(self):
        return hash((self.states, self.tape, tuple(sorted(self.delta.items()))))

    @property
    def markers(self) -> tuple:
        return (self.left, self.blank, self.right)

    def _validate(self):
        if len(set(self.states)) != len(self.states) or len(set(self.tape)) != len(self.tape):
            raise LbaError("duplicate states or tape symbols")
        if len(set(self.markers)) != 3:
            raise LbaError("the three markers must be distinct")
        for m in self.markers:
            if m not in self.tape:
                raise LbaError(f"marker {m!r} is not a tape symbol")
        plain = set(self.tape) - {self.left, self.blank, self.right}
        for name in ("input", "output"):
            bad = set(getattr(self, name)) - plain
            if bad:
                raise LbaError(f"{name} alphabet must avoid markers and stay in the tape alphabet: {sorted(bad)}")
        for q in (self.init, self.final):
            if q not in self.states:
                raise LbaError(f"unknown state {q!r}")
        for q in self.states:
            for v in self.tape:
                if (q, v) not in self.delta:
                    raise LbaError(f"transition missing for ({q}, {v})")
        for (q, v), (p, w, d) in self.delta.items():
            if q not in self.states or v not in self.tape:
                raise LbaError(f"transition from unknown pair ({q}, {v})")
            if p not in self.states or w not in self.tape or d not in MOVES:
                raise LbaError(f"bad transition ({q}, {v}) -> ({p}, {w}, {d})")
            if v == self.left and (w != self.left or d == "L"):
                raise LbaError(f"({q}, {v}) must keep the left marker and not move left")
            if v == self.right and (w != self.right or d == "R"):
                raise LbaError(f"({q}, {v}) must keep the right marker and not move right")
            if v not in (self.left, self.right) and w in (self.left, self.right):
                raise LbaError(f"({q}, {v}) writes a boundary marker inside the tape")


@dataclass(frozen=True)
class LbaConfig:
    tape: tuple
    head: int
    state: str

    def __str__(self):
        cells = list(self.tape)
        if not 0 <= self.head < len(cells):
            return " ".join(cells) + f" ({self.state} at {self.head})"
        cells[self.head] = f"{self.state}[{cells[self.head]}]"
        return " ".join(cells)


def initial_config(m: Lba, x: Sequence[str]) -> LbaConfig:
    bad = [v for v in x if v not in m.input]
    if bad:
        raise LbaError(f"input symbols outside the input alphabet: {bad}")
    return LbaConfig((m.left,) + tuple(x) + (m.right,), 1, m.init)


def lba_step(m: Lba, c: LbaConfig) -> LbaConfig:
    n2 = len(c.tape)
    if n2 < 2 or c.tape[0] != m.left or c.tape[-1] != m.right or not 0 <= c.head < n2:
        raise LbaError(f"malformed configuration {c}")
    if c.state not in m.states:
        raise LbaError(f"unknown state {c.state!r}")
    p, w, d = m.delta[(c.state, c.tape[c.head])]
    tape = list(c.tape)
    tape[c.head] = w
    head = c.head + {"L": -1, "R": 1, "S": 0}[d]
    return LbaConfig(tuple(tape), head, p)


def is_accepting(m: Lba, c: LbaConfig) -> bool:
    return c.state == m.final and c.head == 0 and all(v == m.blank for v in c.tape[1:-1])


def lba_run(m: Lba, x: Sequence[str]) -> tuple:
    """Run until acceptance or a repeated configuration.

    Returns ``(accepted, configurations visited)``.
    """
    c = initial_config(m, x)
    seen = set()
    trace = []
    while c not in seen:
        seen.add(c)
        trace.append(c)
        if is_accepting(m, c):
            return True, trace
        c = lba_step(m, c)
    return False, trace


def lba_accepts(m: Lba, x: Sequence[str]) -> bool:
    return lba_run(m, x)[0]


# -- reduction to Boolean P system reachability --------------------------

def a_sym(v: str, j: int) -> str:
    return f"A_{v}_{j}"


def c_sym(q: str, j: int) -> str:
    return f"C_{q}_{j}"


def lba_alphabet(m: Lba, n: int) -> tuple:
    return tuple(a_sym(v, j) for j in range(n + 2) for v in m.tape) + tuple(
        c_sym(q, j) for j in range(n + 2) for q in m.states
    )


def lba_rules(m: Lba, n: int) -> list:
    rules = []
    for (q, v), (p, w, d) in sorted(m.delta.items()):
        if d == "R":
            js, shift = range(0, n + 1), 1
        elif d == "S":
            js, shift = range(0, n + 2), 0
        else:
            js, shift = range(1, n + 2), -1
        for j in js:
            rules.append(
                Rule(
                    f"r_{q}_{v}_{j}",
                    {a_sym(v, j), c_sym(q, j)},
                    {a_sym(w, j), c_sym(p, j + shift)},
                )
            )
    return rules


def config_to_symbols(c: LbaConfig) -> frozenset:
    return frozenset(a_sym(v, j) for j, v in enumerate(c.tape)) | {c_sym(c.state, c.head)}


def lba_to_bps(m: Lba, x: Sequence[str]) -> ReachProblem:
    """Reachability instance that has a solution iff `m` accepts `x`.

    The single rule-set quasimode ``{R}`` runs under the maximal reading,
    so each step fires the one applicable rule. Cells 0 and n+1 hold the
    boundary markers from the start.
    """
    x = tuple(x)
    start = config_to_symbols(initial_config(m, x))
    n = len(x)
    bps = Bps(lba_alphabet(m, n), lba_rules(m, n))
    mode = FromQuasimode(Singleton(r.id for r in bps.rules), Reading.MAXIMAL)
    goal = frozenset(a_sym(m.blank, j) for j in range(1, n + 1)) | {
        c_sym(m.final, 0),
        a_sym(m.left, 0),
        a_sym(m.right, n + 1),
    }
    return ReachProblem(bps, mode, (start,), frozenset((goal,)))


def symbols_to_config(m: Lba, n: int, w: Iterable[str]) -> LbaConfig:
    """Inverse of config_to_symbols; raises if `w` is not a well-formed encoding."""
    cells: dict = {}
    heads = []
    for v in m.tape:
        for j in range(n + 2):
            if a_sym(v, j) in w:
                if j in cells:
                    raise LbaError(f"cell {j} holds two symbols")
                cells[j] = v
    for q in m.states:
        for j in range(n + 2):
            if c_sym(q, j) in w:
                heads.append((q, j))
    if len(cells) != n + 2 or len(heads) != 1:
        raise LbaError("not an encoded configuration")
    q, j = heads[0]
    return LbaConfig(tuple(cells[i] for i in range(n + 2)), j, q)

"""Plain-text formats for P systems, networks, control modes, LBAs and reaction systems.

All formats are line based. Blank lines and lines starting with ``#``
are ignored; sets are written ``{a,b}`` with ``{}`` for the empty set.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .bnet import (
    ACS,
    ANY,
    ASYNC,
    SYNC,
    TCS,
    Bcn,
    BooleanMode,
    BoolNetwork,
    ControlMode,
    Polarity,
    make_freeze_bcn,
)
from .core import (
    Bps,
    BpsError,
    DottedProduct,
    Explicit,
    FromQuasimode,
    MaxParallel,
    ModeSpec,
    PowersetOf,
    ProductMode,
    QuasiMode,
    Reading,
    Rule,
    Singleton,
    UnionOfFamilies,
)
from .formula import TRUE, FormulaError, parse_formula, to_text
from .lba import Lba


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _split_key(line: str, no: int) -> tuple:
    if ":" not in line:
        raise FormatError(f"expected 'key: value', got {line!r}", no)
    key, _, rest = line.partition(":")
    return key.strip(), rest.strip()


_SET = re.compile(r"\{([^{}]*)\}")


def parse_set(text: str, no: Optional[int] = None) -> frozenset:
    m = _SET.fullmatch(text.strip())
    if m is None:
        raise FormatError(f"expected a set like {{a,b}}, got {text!r}", no)
    items = [s.strip() for s in m.group(1).split(",")]
    if items == [""]:
        return frozenset()
    if "" in items:
        raise FormatError(f"empty item in set {text!r}", no)
    return frozenset(items)


def parse_sets(text: str, no: Optional[int] = None) -> list:
    text = text.strip()
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _SET.match(text, pos)
        if m is None:
            raise FormatError(f"expected a set at {text[pos:]!r}", no)
        out.append(parse_set(m.group(0), no))
        pos = m.end()
    return out


def format_set(s, order: Sequence[str]) -> str:
    s = frozenset(s)
    pos = {x: i for i, x in enumerate(order)}
    return "{" + ",".join(sorted(s, key=lambda x: (pos.get(x, len(pos)), x))) + "}"


# -- quasimode expressions ------------------------------------------------

_QTOKEN = re.compile(r"\s*(?:(powerset|singleton|union|maxparallel)\b|([A-Za-z][A-Za-z0-9_]*)|([{}(),;]))")


def _qtokens(text: str, no) -> list:
    out = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _QTOKEN.match(text, pos)
        if m is None:
            raise FormatError(f"cannot read quasimode at {text[pos:]!r}", no)
        if m.group(1):
            out.append(("kw", m.group(1)))
        elif m.group(2):
            out.append(("id", m.group(2)))
        else:
            out.append(("op", m.group(3)))
        pos = m.end()
    out.append(("end", ""))
    return out


def parse_quasimode(text: str, no: Optional[int] = None) -> QuasiMode:
    """Grammar: ``qexpr := qterm { "x" qterm }``; terms are an explicit
    family ``{ {r1,r2} {r3} }``, ``powerset(ids)``, ``singleton(ids)``,
    ``union(q; q ...)`` or a parenthesised expression."""
    toks = _qtokens(text, no)
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, val=None):
        nonlocal pos
        tok = toks[pos]
        if (kind and tok[0] != kind) or (val is not None and tok[1] != val):
            want = val if val is not None else kind
            raise FormatError(f"expected {want!r} in quasimode, got {tok[1] or 'end'!r}", no)
        pos += 1
        return tok

    def ids_until(close: str) -> list:
        ids = []
        if peek() == ("op", close):
            return ids
        ids.append(take("id")[1])
        while peek() == ("op", ","):
            take()
            ids.append(take("id")[1])
        return ids

    def expr() -> QuasiMode:
        q = term()
        while peek() == ("id", "x"):
            take()
            q = DottedProduct(q, term())
        return q

    def term() -> QuasiMode:
        kind, val = peek()
        if (kind, val) == ("op", "("):
            take()
            q = expr()
            take("op", ")")
            return q
        if (kind, val) == ("op", "{"):
            take()
            sets = []
            while peek() == ("op", "{"):
                take()
                sets.append(frozenset(ids_until("}")))
                take("op", "}")
            take("op", "}")
            return Explicit(frozenset(sets))
        if kind == "kw" and val in ("powerset", "singleton"):
            take()
            take("op", "(")
            ids = ids_until(")")
            take("op", ")")
            return PowersetOf(ids) if val == "powerset" else Singleton(ids)
        if (kind, val) == ("kw", "union"):
            take()
            take("op", "(")
            parts = [expr()]
            while peek() == ("op", ";"):
                take()
                parts.append(expr())
            take("op", ")")
            return UnionOfFamilies(parts)
        raise FormatError(f"unexpected {val or 'end'!r} in quasimode", no)

    q = expr()
    if peek()[0] != "end":
        raise FormatError(f"trailing {peek()[1]!r} in quasimode", no)
    return q


def format_quasimode(q: QuasiMode, rule_order: Sequence[str] = ()) -> str:
    pos = {r: i for i, r in enumerate(rule_order)}

    def ids(rs):
        return ",".join(sorted(rs, key=lambda r: (pos.get(r, len(pos)), r)))

    if isinstance(q, Explicit):
        sets = sorted(q.sets, key=lambda m: sorted((pos.get(r, len(pos)), r) for r in m))
        return "{ " + " ".join("{" + ids(m) + "}" for m in sets) + (" }" if sets else "}")
    if isinstance(q, Singleton):
        return f"singleton({ids(q.rules)})"
    if isinstance(q, PowersetOf):
        return f"powerset({ids(q.rules)})"
    if isinstance(q, DottedProduct):
        right = format_quasimode(q.right, rule_order)
        if isinstance(q.right, DottedProduct):
            right = f"({right})"
        return f"{format_quasimode(q.left, rule_order)} x {right}"
    if isinstance(q, UnionOfFamilies):
        return "union(" + "; ".join(format_quasimode(p, rule_order) for p in q.parts) + ")"
    raise TypeError(f"cannot format quasimode {q!r}")


# -- .bps -----------------------------------------------------------------

@dataclass(frozen=True)
class BpsFile:
    bps: Bps
    mode: ModeSpec
    start: tuple = ()
    target: object = None  # frozenset of configurations, a Formula, or None


_RULE = re.compile(r"rule\s+([A-Za-z][A-Za-z0-9_]*)\s*:\s*(\{[^{}]*\})\s*->\s*(\{[^{}]*\})\s*(?:\|\s*(.*))?\Z")


def parse_bps(text: str) -> BpsFile:
    alphabet = None
    rule_lines = []
    modes = []
    start = ()
    target = None
    target_line = None
    for no, line in _lines(text):
        if line.startswith("rule ") or line.startswith("rule\t"):
            rule_lines.append((no, line))
            continue
        key, rest = _split_key(line, no)
        if key == "alphabet":
            if alphabet is not None:
                raise FormatError("alphabet given twice", no)
            alphabet = rest.split()
        elif key in ("quasimode", "quasimode[strict]", "quasimode[maximal]"):
            if rest == "maxparallel":
                if key != "quasimode":
                    raise FormatError("maxparallel takes no reading", no)
                modes.append(MaxParallel())
            else:
                reading = Reading.MAXIMAL if key.endswith("[maximal]") else Reading.STRICT
                modes.append(FromQuasimode(parse_quasimode(rest, no), reading))
        elif key == "start":
            start = tuple(parse_sets(rest, no))
        elif key == "target":
            target_line = (no, rest)
        else:
            raise FormatError(f"unknown key {key!r}", no)
    if alphabet is None:
        raise FormatError("missing 'alphabet:' line")
    rules = []
    for no, line in rule_lines:
        m = _RULE.fullmatch(line)
        if m is None:
            raise FormatError(f"malformed rule {line!r}", no)
        rid, lhs, rhs, guard = m.groups()
        try:
            g = parse_formula(guard, alphabet) if guard else TRUE
        except FormulaError as e:
            raise FormatError(str(e), no) from None
        rules.append(Rule(rid, parse_set(lhs, no), parse_set(rhs, no), g))
    try:
        bps = Bps(tuple(alphabet), tuple(rules))
    except BpsError as e:
        raise FormatError(str(e)) from None
    if target_line is not None:
        no, rest = target_line
        if rest.startswith("formula:"):
            try:
                target = parse_formula(rest[len("formula:"):], alphabet)
            except FormulaError as e:
                raise FormatError(str(e), no) from None
        else:
            target = frozenset(parse_sets(rest, no))
    if not modes:
        mode = MaxParallel()
    elif len(modes) == 1:
        mode = modes[0]
    else:
        mode = ProductMode(tuple(modes))
    unknown = mode.rule_ids() - bps.rule_map.keys()
    if unknown:
        raise FormatError(f"quasimode refers to unknown rules {sorted(unknown)}")
    return BpsFile(bps, mode, start, target)


def _format_mode(mode: ModeSpec, rule_order) -> list:
    if isinstance(mode, MaxParallel):
        return ["quasimode: maxparallel"]
    if isinstance(mode, FromQuasimode):
        key = "quasimode" if mode.reading is Reading.STRICT else "quasimode[maximal]"
        return [f"{key}: {format_quasimode(mode.quasimode, rule_order)}"]
    if isinstance(mode, ProductMode):
        out = []
        for m in mode.factors:
            if isinstance(m, ProductMode):
                raise TypeError("nested product modes cannot be written")
            out += _format_mode(m, rule_order)
        return out
    raise TypeError(f"cannot format mode {mode!r}")


def format_bps(bps: Bps, mode: Optional[ModeSpec] = None, start=(), target=None) -> str:
    order = bps.alphabet
    out = ["alphabet: " + " ".join(bps.alphabet)]
    for r in bps.rules:
        out.append(f"rule {r.id}: {format_set(r.lhs, order)} -> {format_set(r.rhs, order)} | {to_text(r.guard)}")
    out += _format_mode(mode if mode is not None else MaxParallel(), [r.id for r in bps.rules])
    if start:
        out.append("start: " + " ".join(format_set(s, order) for s in start))
    if target is not None:
        if isinstance(target, (frozenset, set)):
            key = lambda s: bps.bits(s)
            out.append("target: " + " ".join(format_set(s, order) for s in sorted(target, key=key)))
        else:
            out.append("target: formula: " + to_text(target))
    return "\n".join(out) + "\n"


# -- .bn / .bcn -----------------------------------------------------------

def _parse_network_lines(text: str) -> tuple:
    keys: dict = {}
    fns: dict = {}
    for no, line in _lines(text):
        key, rest = _split_key(line, no)
        if key.startswith("fn "):
            name = key[3:].strip()
            if name in fns:
                raise FormatError(f"second update function for {name!r}", no)
            fns[name] = (no, rest)
        elif key in ("vars", "controls", "freeze"):
            if key in keys:
                raise FormatError(f"{key!r} given twice", no)
            keys[key] = (no, rest)
        else:
            raise FormatError(f"unknown key {key!r}", no)
    if "vars" not in keys:
        raise FormatError("missing 'vars:' line")
    return keys, fns


def _formulas(fns: dict, variables, symbols) -> dict:
    out = {}
    for x in variables:
        if x not in fns:
            raise FormatError(f"missing update function for {x!r}")
    for name, (no, body) in fns.items():
        if name not in variables:
            raise FormatError(f"update function for unknown variable {name!r}", no)
        try:
            out[name] = parse_formula(body, symbols)
        except FormulaError as e:
            raise FormatError(str(e), no) from None
    return out


def parse_bn(text: str) -> BoolNetwork:
    keys, fns = _parse_network_lines(text)
    if set(keys) != {"vars"}:
        raise FormatError("a .bn file only takes 'vars:' and 'fn' lines")
    variables = keys["vars"][1].split()
    return BoolNetwork(variables, _formulas(fns, variables, set(variables)))


def format_bn(f: BoolNetwork) -> str:
    out = ["vars: " + " ".join(f.variables)]
    out += [f"fn {x}: {to_text(f.update[x])}" for x in f.variables]
    return "\n".join(out) + "\n"


def parse_polarity(text: str) -> Polarity:
    try:
        return Polarity(text)
    except ValueError:
        raise FormatError(f"polarity must be 'active' or 'inactive', got {text!r}") from None


def parse_bcn(text: str, polarity: Optional[Polarity] = None) -> Bcn:
    """`polarity` overrides or supplies the polarity of a ``freeze:`` line."""
    keys, fns = _parse_network_lines(text)
    variables = keys["vars"][1].split()
    if "freeze" in keys:
        if "controls" in keys:
            raise FormatError("use either 'controls:' or 'freeze:', not both")
        no, rest = keys["freeze"]
        names = []
        for item in rest.split():
            if item.startswith("polarity="):
                if polarity is None:
                    polarity = parse_polarity(item.split("=", 1)[1])
            else:
                names.append(item)
        if polarity is None:
            raise FormatError("freeze generation needs a polarity", no)
        f = BoolNetwork(variables, _formulas(fns, variables, set(variables)))
        return make_freeze_bcn(f, names, polarity)
    if polarity is not None:
        raise FormatError("a polarity only applies to 'freeze:' generation")
    controls = keys["controls"][1].split() if "controls" in keys else []
    return Bcn(variables, controls, _formulas(fns, variables, set(variables) | set(controls)))


def format_bcn(b: Bcn) -> str:
    out = ["vars: " + " ".join(b.variables)]
    if b.controls:
        out.append("controls: " + " ".join(b.controls))
    out += [f"fn {x}: {to_text(b.update[x])}" for x in b.variables]
    return "\n".join(out) + "\n"


# -- control modes and Boolean modes -------------------------------------

_PAIR = re.compile(r"(\{[^{}]*\})\s*->\s*(\{[^{}]*\})\Z")


def parse_control_mode(text: str) -> ControlMode:
    pairs = None
    for no, line in _lines(text):
        if pairs is not None:
            m = _PAIR.fullmatch(line)
            if m is None:
                raise FormatError(f"expected '{{..}} -> {{..}}', got {line!r}", no)
            pairs.append((parse_set(m.group(1), no), parse_set(m.group(2), no)))
            continue
        key, rest = _split_key(line, no)
        if key == "mode":
            named = {"any": ANY, "tcs": TCS, "acs": ACS}.get(rest)
            if named is None:
                raise FormatError(f"unknown control mode {rest!r}", no)
            return named
        if key == "pairs":
            pairs = []
            if rest:
                raise FormatError("pairs go on the following lines", no)
            continue
        raise FormatError(f"unknown key {key!r}", no)
    if pairs is None:
        raise FormatError("expected 'mode:' or 'pairs:'")
    return ControlMode.explicit(pairs)


def format_control_pairs(pairs, controls: Sequence[str]) -> str:
    out = ["pairs:"]
    out += [f"{format_set(a, controls)} -> {format_set(b, controls)}" for a, b in pairs]
    return "\n".join(out) + "\n"


def parse_boolean_mode(text: str) -> BooleanMode:
    """One variable set per line (or several on one line)."""
    sets = []
    for no, line in _lines(text):
        if line.startswith("mode:"):
            name = line[len("mode:"):].strip()
            if name in ("sync", "async"):
                return SYNC if name == "sync" else ASYNC
            line = name
        sets += parse_sets(line, no)
    return BooleanMode.explicit(sets)


# -- .lba -----------------------------------------------------------------

_TRANS = re.compile(r"(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s+([LRS])\Z")


def parse_lba(text: str) -> Lba:
    fields: dict = {}
    delta = {}
    for no, line in _lines(text):
        m = _TRANS.fullmatch(line)
        if m is not None and ":" not in line:
            q, v, p, w, d = m.groups()
            if (q, v) in delta:
                raise FormatError(f"second transition for ({q}, {v})", no)
            delta[(q, v)] = (p, w, d)
            continue
        key, rest = _split_key(line, no)
        if key not in ("states", "tape", "input", "output", "markers", "init", "final"):
            raise FormatError(f"unknown key {key!r}", no)
        if key in fields:
            raise FormatError(f"{key!r} given twice", no)
        fields[key] = rest.split()
    for key in ("states", "tape", "input", "markers", "init", "final"):
        if key not in fields:
            raise FormatError(f"missing '{key}:' line")
    if len(fields["markers"]) != 3:
        raise FormatError("markers: needs left marker, blank and right marker")
    if len(fields["init"]) != 1 or len(fields["final"]) != 1:
        raise FormatError("init: and final: take one state each")
    left, blank, right = fields["markers"]
    return Lba(
        fields["states"],
        fields["tape"],
        fields["input"],
        fields.get("output", []),
        delta,
        fields["init"][0],
        fields["final"][0],
        left,
        blank,
        right,
    )


def format_lba(m: Lba) -> str:
    out = [
        "states: " + " ".join(m.states),
        "tape: " + " ".join(m.tape),
        "input: " + " ".join(m.input),
        "output: " + " ".join(m.output),
        f"markers: {m.left} {m.blank} {m.right}",
        f"init: {m.init}",
        f"final: {m.final}",
    ]
    for (q, v), (p, w, d) in sorted(m.delta.items()):
        out.append(f"{q} {v} -> {p} {w} {d}")
    return "\n".join(out) + "\n"


# -- .rs ------------------------------------------------------------------

_REACTION = re.compile(r"R\s*=\s*(\{[^{}]*\})\s+I\s*=\s*(\{[^{}]*\})\s+P\s*=\s*(\{[^{}]*\})\Z")


def parse_rs(text: str) -> tuple:
    """Returns ``(species, [(reactants, inhibitors, products), ...])``."""
    species = None
    reactions = []
    for no, line in _lines(text):
        key, rest = _split_key(line, no)
        if key == "species":
            species = rest.split()
        elif key == "reaction":
            m = _REACTION.fullmatch(rest)
            if m is None:
                raise FormatError("expected 'reaction: R={..} I={..} P={..}'", no)
            reactions.append(tuple(parse_set(g, no) for g in m.groups()))
        else:
            raise FormatError(f"unknown key {key!r}", no)
    if species is None:
        raise FormatError("missing 'species:' line")
    known = set(species)
    for k, r in enumerate(reactions):
        bad = set().union(*r) - known
        if bad:
            raise FormatError(f"reaction {k} uses unknown species {sorted(bad)}")
    return species, reactions

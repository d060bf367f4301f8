"""Command-line interface: ``boolp <command> ...``.

Exit codes: 0 for success (reachable, controllable, accepted), 1 for a
negative answer, 2 for usage, parse or validation errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bnet import ASYNC, SYNC, Bcn, BooleanMode, ControlMode, subsets, state_bits
from .control import (
    CofaseProblem,
    SeqControlProblem,
    crosscheck_via_composite,
    replay_cofase_witness,
    replay_seqcontrol_witness,
    solve_cofase,
    solve_seqcontrol,
)
from .core import Bps, MaxParallel
from .formats import (
    format_bps,
    parse_bcn,
    parse_bn,
    parse_boolean_mode,
    parse_control_mode,
    parse_lba,
    parse_polarity,
    parse_rs,
    parse_set,
    parse_bps,
)
from .formula import compile_mask, parse_formula
from .lba import lba_run, lba_to_bps
from .reach import ReachProblem, export_state_graph, replay_witness, solve_reach
from .translate import GuardStyle, bcn_to_composite, bn_mode, bn_to_bps, rs_to_bps, seqcontrol_composite


class CliError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}") from None


# -- state specifications -------------------------------------------------

def _is_bits(text: str, n: int) -> bool:
    return len(text) == n and set(text) <= {"0", "1"}


def _one_state(text: str, order: Sequence[str]) -> frozenset:
    text = text.strip()
    if text.startswith("{"):
        s = parse_set(text)
        bad = s - set(order)
        if bad:
            raise CliError(f"unknown symbols {sorted(bad)} in {text!r}")
        return s
    if not _is_bits(text, len(order)):
        raise CliError(f"expected a {len(order)}-digit bitstring or a set, got {text!r}")
    return frozenset(x for x, b in zip(order, text) if b == "1")


def _expand_formula(text: str, order: Sequence[str]) -> list:
    f = parse_formula(text, order)
    pred = compile_mask(f, {x: i for i, x in enumerate(order)})
    return [s for k, s in enumerate(subsets(order)) if pred(k)]


def parse_states(specs: Sequence[str], order: Sequence[str]) -> list:
    """States from ``--from``/``--to`` values: bitstrings, sets, ``@file`` or ``formula:...``."""
    out = []
    for spec in specs:
        if spec.startswith("@"):
            for line in _read(spec[1:]).splitlines():
                line = line.strip()
                if line and not line.startswith("#"):
                    out += parse_states([line], order)
        elif spec.startswith("formula:"):
            out += _expand_formula(spec[len("formula:"):], order)
        else:
            out.append(_one_state(spec, order))
    seen = set()
    return [s for s in out if not (s in seen or seen.add(s))]


def parse_target(specs: Sequence[str], order: Sequence[str]):
    """A formula stays symbolic when it is the only target spec."""
    if len(specs) == 1 and specs[0].startswith("formula:"):
        return parse_formula(specs[0][len("formula:"):], order)
    return frozenset(parse_states(specs, order))


def _boolean_mode(spec: str) -> BooleanMode:
    if spec == "sync":
        return SYNC
    if spec == "async":
        return ASYNC
    if spec.startswith("explicit:"):
        return parse_boolean_mode(_read(spec[len("explicit:"):]))
    raise CliError(f"--mode must be sync, async or explicit:<file>, got {spec!r}")


def _control_mode(spec: str) -> ControlMode:
    if spec in ("any", "tcs", "acs"):
        return parse_control_mode(f"mode: {spec}")
    return parse_control_mode(_read(spec))


def _load_bcn(args) -> Bcn:
    polarity = parse_polarity(args.polarity) if args.polarity else None
    return parse_bcn(_read(args.bcn), polarity)


def _lba_input(text: str, symbols) -> list:
    if "," in text or " " in text:
        return [s for s in text.replace(",", " ").split() if s]
    if text in symbols:
        return [text]
    return list(text)


# -- output ---------------------------------------------------------------

def _emit(out, text: str):
    out.write(text if text.endswith("\n") else text + "\n")


def _reach_text(bps: Bps, result) -> str:
    lines = [f"answer: {'true' if result.answer else 'false'}"]
    for w in result.witnesses:
        if not w.reached:
            lines.append(f"start {bps.bits(w.start)}: unreachable")
            continue
        parts = [bps.bits(w.start)]
        for rs, s in w.steps:
            parts.append(f"-[{','.join(sorted(rs))}]-> {bps.bits(s)}")
        lines.append(f"start {bps.bits(w.start)}: {len(w.steps)} step(s): " + " ".join(parts))
    return "\n".join(lines)


def _control_text(b: Bcn, result) -> str:
    lines = [f"answer: {'true' if result.answer else 'false'}"]
    if result.diagnostic:
        lines.append(f"note: {result.diagnostic}")
    for w in result.witnesses:
        start = state_bits(w.start, b.variables)
        if not w.reached:
            lines.append(f"start {start}: unreachable")
            continue
        parts = [start]
        for mu, s in w.steps:
            ctrl = ",".join(u for u in b.controls if u in mu)
            parts.append(f"-[{ctrl}]-> {state_bits(s, b.variables)}")
        lines.append(f"start {start}: {len(w.steps)} step(s): " + " ".join(parts))
    return "\n".join(lines)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- commands -------------------------------------------------------------

def cmd_reach(args, out) -> int:
    f = parse_bps(_read(args.bps))
    order = f.bps.alphabet
    start = parse_states(args.start, order) if args.start else list(f.start)
    target = parse_target(args.to, order) if args.to else f.target
    if not start or target is None:
        raise CliError("reach needs start states and a target (--from/--to or start:/target: lines)")
    problem = ReachProblem(f.bps, f.mode, tuple(start), target)
    result = solve_reach(
        problem, args.limit_symbols, all_witnesses=args.witness == "all", require_halting=args.halting
    )
    for w in result.witnesses:
        if not replay_witness(f.bps, f.mode, w, target):
            raise CliError("internal error: witness failed to replay")
    if args.format == "json":
        _emit(out, _dump({"answer": result.answer, "witnesses": [w.to_json(f.bps) for w in result.witnesses]}))
    else:
        _emit(out, _reach_text(f.bps, result))
    return 0 if result.answer else 1


def cmd_cofase(args, out) -> int:
    b = _load_bcn(args)
    start = parse_states(args.start, b.variables)
    target = parse_states(args.to, b.variables)
    p = CofaseProblem(b, start, target)
    result = solve_cofase(p, args.limit_vars, args.limit_controls, all_witnesses=args.witness == "all")
    for w in result.witnesses:
        if not replay_cofase_witness(b, w, target):
            raise CliError("internal error: witness failed to replay")
    return _control_output(args, out, b, result)


def _control_output(args, out, b, result, extra=None) -> int:
    if args.format == "json":
        obj = {
            "answer": result.answer,
            "witnesses": [w.to_json(b.variables, b.controls) for w in result.witnesses],
        }
        if result.diagnostic:
            obj["diagnostic"] = result.diagnostic
        if extra:
            obj.update(extra)
        _emit(out, _dump(obj))
    else:
        text = _control_text(b, result)
        if extra:
            text += "\n" + "\n".join(f"{k}: {v}" for k, v in extra.items())
        _emit(out, text)
    return 0 if result.answer else 1


def cmd_seqcontrol(args, out) -> int:
    b = _load_bcn(args)
    start = parse_states(args.start, b.variables)
    target = parse_states(args.to, b.variables)
    p = SeqControlProblem(b, _boolean_mode(args.mode), _control_mode(args.control_mode), start, target)
    result = solve_seqcontrol(p, args.limit_vars, args.limit_controls, all_witnesses=args.witness == "all")
    for w in result.witnesses:
        if not replay_seqcontrol_witness(p, w):
            raise CliError("internal error: witness failed to replay")
    extra = None
    if args.crosscheck:
        cc = crosscheck_via_composite(p, GuardStyle(args.guard_style), args.limit_symbols)
        extra = {"composite_answer": cc.composite, "routes_agree": cc.agree}
    return _control_output(args, out, b, result, extra)


def cmd_translate(args, out) -> int:
    kind = args.kind
    start, target = (), None
    if kind == "bn":
        f = parse_bn(_read(args.bn))
        bps, mode = bn_to_bps(f), bn_mode(f, _boolean_mode(args.mode))
    elif kind == "bcn":
        b = _load_bcn(args)
        m = _boolean_mode(args.mode)
        if args.control_mode:
            pairs = SeqControlProblem(b, m, _control_mode(args.control_mode), (), ()).pairs()
            comp = seqcontrol_composite(b, m, pairs, GuardStyle(args.guard_style))
        else:
            comp = bcn_to_composite(b, m)
        bps, mode = comp.bps, comp.mode
    elif kind == "rs":
        species, reactions = parse_rs(_read(args.rs))
        bps, mode = rs_to_bps(reactions, species), MaxParallel()
    else:
        m = parse_lba(_read(args.lba))
        problem = lba_to_bps(m, _lba_input(args.input, m.tape))
        bps, mode, start, target = problem.bps, problem.mode, problem.start, problem.target
    text = format_bps(bps, mode, start, target)
    if args.output:
        Path(args.output).write_text(text)
    else:
        _emit(out, text)
    return 0


def cmd_graph(args, out) -> int:
    if args.bps:
        f = parse_bps(_read(args.bps))
        bps, mode = f.bps, f.mode
    elif args.bn:
        net = parse_bn(_read(args.bn))
        bps, mode = bn_to_bps(net), bn_mode(net, _boolean_mode(args.mode))
    else:
        raise CliError("graph needs --bps or --bn")
    if args.limit_symbols is not None and len(bps.alphabet) > args.limit_symbols:
        raise CliError(f"alphabet has {len(bps.alphabet)} symbols, above --limit-symbols {args.limit_symbols}")
    roots = parse_states(args.start, bps.alphabet) if args.start else subsets(bps.alphabet)
    g = export_state_graph(bps, mode, roots, args.limit_symbols)
    _emit(out, g.to_dot())
    return 0


def cmd_lba(args, out) -> int:
    m = parse_lba(_read(args.lba))
    accepted, trace = lba_run(m, _lba_input(args.input, m.tape))
    if args.format == "json":
        _emit(out, _dump({"accepted": accepted, "steps": len(trace) - 1}))
    else:
        lines = [str(c) for c in trace] if args.trace else []
        lines.append("accepted" if accepted else "rejected")
        _emit(out, "\n".join(lines))
    return 0 if accepted else 1


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="boolp", description="Boolean P systems, networks and controllability.")
    p.add_argument("--seed", type=int, default=0, help="accepted for reproducible scripting; the solvers are deterministic")
    sub = p.add_subparsers(dest="command", required=True)

    def states(sp, required=False):
        sp.add_argument("--from", dest="start", action="append", default=[], required=required,
                        help="start state: bitstring, {a,b}, @file or formula:...; repeatable")
        sp.add_argument("--to", action="append", default=[], required=required,
                        help="target state(s), same syntax as --from")

    def fmt(sp, choices=("text", "json")):
        sp.add_argument("--format", choices=choices, default=choices[0])

    def witness(sp):
        sp.add_argument("--witness", choices=("first", "all"), default="first",
                        help="'all' keeps searching after a failing start state")

    def bcn(sp):
        sp.add_argument("--bcn", required=True)
        sp.add_argument("--polarity", choices=("active", "inactive"), help="polarity for 'freeze:' generation")

    def limits(sp):
        sp.add_argument("--limit-vars", type=int, default=20)
        sp.add_argument("--limit-controls", type=int, default=12)

    r = sub.add_parser("reach", help="reachability in a Boolean P system")
    r.add_argument("--bps", required=True)
    states(r)
    r.add_argument("--limit-symbols", type=int, default=22)
    r.add_argument("--halting", action="store_true", help="only count target states without successors")
    witness(r)
    fmt(r)
    r.set_defaults(func=cmd_reach)

    c = sub.add_parser("cofase", help="control sequence problem with freely changing controls")
    bcn(c)
    states(c, required=True)
    limits(c)
    witness(c)
    fmt(c)
    c.set_defaults(func=cmd_cofase)

    s = sub.add_parser("seqcontrol", help="controllability under a control mode")
    bcn(s)
    s.add_argument("--mode", default="sync")
    s.add_argument("--control-mode", default="any", help="any, tcs, acs or a control-mode file")
    states(s, required=True)
    limits(s)
    s.add_argument("--crosscheck", action="store_true", help="also decide through the composite P system")
    s.add_argument("--guard-style", choices=("exact", "paper"), default="exact")
    s.add_argument("--limit-symbols", type=int, default=22)
    witness(s)
    fmt(s)
    s.set_defaults(func=cmd_seqcontrol)

    t = sub.add_parser("translate", help="emit a .bps file")
    tsub = t.add_subparsers(dest="kind", required=True)
    tb = tsub.add_parser("bn")
    tb.add_argument("--bn", required=True)
    tb.add_argument("--mode", default="sync")
    tc = tsub.add_parser("bcn")
    bcn(tc)
    tc.add_argument("--mode", default="sync")
    tc.add_argument("--control-mode", help="build the control-mode composite instead of free control changes")
    tc.add_argument("--guard-style", choices=("exact", "paper"), default="exact")
    tr = tsub.add_parser("rs")
    tr.add_argument("--rs", required=True)
    tl = tsub.add_parser("lba")
    tl.add_argument("--lba", required=True)
    tl.add_argument("--input", required=True)
    for sp in (tb, tc, tr, tl):
        sp.add_argument("-o", "--output", help="write to a file instead of stdout")
        sp.set_defaults(func=cmd_translate)

    g = sub.add_parser("graph", help="state graph in DOT format")
    g.add_argument("--bps")
    g.add_argument("--bn")
    g.add_argument("--mode", default="sync")
    g.add_argument("--from", dest="start", action="append", default=[], help="roots (default: every configuration)")
    g.add_argument("--limit-symbols", type=int, default=22)
    g.add_argument("--format", choices=("dot",), default="dot")
    g.set_defaults(func=cmd_graph)

    lb = sub.add_parser("lba", help="run a linear bounded automaton")
    lsub = lb.add_subparsers(dest="lba_command", required=True)
    lr = lsub.add_parser("run")
    lr.add_argument("--lba", required=True)
    lr.add_argument("--input", required=True)
    lr.add_argument("--trace", action="store_true")
    fmt(lr)
    lr.set_defaults(func=cmd_lba)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else 0
    try:
        return args.func(args, out)
    except (CliError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())

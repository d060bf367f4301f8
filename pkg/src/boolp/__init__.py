"""Boolean P systems, Boolean (control) networks and their reachability problems."""

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
    bcn_apply,
    bn_step,
    make_freeze_bcn,
)
from .control import CofaseProblem, SeqControlProblem, solve_cofase, solve_seqcontrol
from .core import (
    Bps,
    DottedProduct,
    Explicit,
    FromQuasimode,
    MaxParallel,
    PowersetOf,
    ProductMode,
    Reading,
    Rule,
    Singleton,
    derive_mode,
    step,
)
from .formula import evaluate, parse_formula, to_text
from .reach import ReachProblem, export_state_graph, solve_reach
from .translate import bcn_to_composite, bn_mode, bn_to_bps, rs_to_bps, seqcontrol_composite

__version__ = "0.1.0"

__all__ = [
    "ACS",
    "ANY",
    "ASYNC",
    "SYNC",
    "TCS",
    "Bcn",
    "BooleanMode",
    "BoolNetwork",
    "ControlMode",
    "Polarity",
    "bcn_apply",
    "bn_step",
    "make_freeze_bcn",
    "CofaseProblem",
    "SeqControlProblem",
    "solve_cofase",
    "solve_seqcontrol",
    "Bps",
    "DottedProduct",
    "Explicit",
    "FromQuasimode",
    "MaxParallel",
    "PowersetOf",
    "ProductMode",
    "Reading",
    "Rule",
    "Singleton",
    "derive_mode",
    "step",
    "evaluate",
    "parse_formula",
    "to_text",
    "ReachProblem",
    "export_state_graph",
    "solve_reach",
    "bcn_to_composite",
    "bn_mode",
    "bn_to_bps",
    "rs_to_bps",
    "seqcontrol_composite",
]

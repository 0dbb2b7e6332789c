"""CTL fragment model checking: general and fragment-specialized engines,
alternating-graph reductions, and Boolean-clone complexity fingerprints."""

from .altgraph import AltSliceGraph, apath, flat, gen_random, sharp
from .classify import clone_of, fingerprint, fingerprint_dual, mc_stronger
from .fastcheck import atomic_right_form, check_eg_frag, check_ef_frag, check_er, route
from .kripke import CheckInstance, KripkeModel, load_model, store_model, validate
from .semantics import check, sat_set
from .syntax import Formula, FragmentSignature, dualize, parse_formula, signature

__all__ = [
    "AltSliceGraph",
    "CheckInstance",
    "Formula",
    "FragmentSignature",
    "KripkeModel",
    "apath",
    "atomic_right_form",
    "check",
    "check_eg_frag",
    "check_ef_frag",
    "check_er",
    "clone_of",
    "dualize",
    "fingerprint",
    "fingerprint_dual",
    "flat",
    "gen_random",
    "load_model",
    "mc_stronger",
    "parse_formula",
    "route",
    "sat_set",
    "sharp",
    "signature",
    "store_model",
    "validate",
]

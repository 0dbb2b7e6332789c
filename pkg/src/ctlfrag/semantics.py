"""The general model checker: bottom-up fixpoint labeling over the full syntax.

This is the ground-truth oracle every specialized engine and every
reduction is tested against.  Satisfaction sets are computed per
subformula; the temporal cases are the standard fixpoint
characterizations:

    EX f        pre(Sat(f))
    E[g U f]    least Z  = Sat(f) | (Sat(g) & pre(Z))
    EF f        least Z  = Sat(f) | pre(Z)
    EG f        greatest Z = Sat(f) & pre(Z)
    E[g R f]    greatest Z = Sat(f) & (Sat(g) | pre(Z))

Universal operators are reduced to their negated existential duals.
Unknown atoms hold nowhere.
"""

from __future__ import annotations

from .kripke import KripkeModel
from .syntax import And, Atom, Binary, Formula, Not, Or, Top, Unary, Xor, dual_step


def sat_set(model: KripkeModel, formula: Formula, _memo=None) -> frozenset:
    """The set of states satisfying `formula`."""
    memo = {} if _memo is None else _memo

    def go(f):
        cached = memo.get(f)
        if cached is not None:
            return cached
        result = _compute(model, f, go)
        memo[f] = result
        return result

    return go(formula)


def check(model: KripkeModel, state: str, formula: Formula) -> bool:
    """Does `model`, `state` satisfy `formula`?"""
    if state not in model.index:
        raise KeyError(f"unknown state {state!r}")
    return state in sat_set(model, formula)


def _compute(model, f, go):
    if isinstance(f, Top):
        return model.all_states
    if isinstance(f, Atom):
        return model.states_with(f.name)
    if isinstance(f, Not):
        return model.all_states - go(f.sub)
    if isinstance(f, And):
        return go(f.left) & go(f.right)
    if isinstance(f, Or):
        return go(f.left) | go(f.right)
    if isinstance(f, Xor):
        return go(f.left) ^ go(f.right)
    if isinstance(f, Unary):
        if f.op == "EX":
            return model.pre_exists(go(f.sub))
        if f.op == "EF":
            return _lfp_reach(model, go(f.sub))
        if f.op == "EG":
            return _gfp_invariant(model, go(f.sub))
        return go(dual_step(f))
    if isinstance(f, Binary):
        if f.op == "EU":
            return _lfp_until(model, go(f.left), go(f.right))
        if f.op == "ER":
            return _gfp_release(model, go(f.left), go(f.right))
        return go(dual_step(f))
    raise TypeError(f"not a formula: {f!r}")


def _lfp_reach(model, goal):
    z = goal
    while True:
        step = goal | model.pre_exists(z)
        if step == z:
            return z
        z = step


def _lfp_until(model, hold, goal):
    z = goal
    while True:
        step = goal | (hold & model.pre_exists(z))
        if step == z:
            return z
        z = step


def _gfp_invariant(model, keep):
    z = keep
    while True:
        step = keep & model.pre_exists(z)
        if step == z:
            return z
        z = step


def _gfp_release(model, release, keep):
    z = keep
    while True:
        step = keep & (release | model.pre_exists(z))
        if step == z:
            return z
        z = step

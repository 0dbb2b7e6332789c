"""Independent oracles the implementation is tested against.

These deliberately avoid the package's fixpoint, search, and closure
machinery: satisfaction is decided by enumerating ultimately periodic
paths, alternating accessibility by plain recursion, reachability by BFS,
and Boolean clones by truth-table closure.
"""

from __future__ import annotations

from ctlfrag.syntax import And, Atom, Binary, Not, Or, Top, Unary, Xor, dual_step


# ---------------------------------------------------------------------------
# lasso-enumeration model checking

def _minimal_lassos(model, start):
    """All walks from `start` that stop at their first repeated state,
    yielded as (stem, cycle) with stem + cycle the visited prefix."""
    out = []

    def extend(path, seen):
        w = path[-1]
        for v in sorted(model.successors[w], key=model.index.__getitem__):
            if v in seen:
                cut = path.index(v)
                out.append((path[:cut], path[cut:]))
            else:
                extend(path + [v], seen | {v})

    extend([start], {start})
    return out


def lasso_check(model, state, formula) -> bool:
    """Path-enumeration semantics: existential operators search the minimal
    lassos from the state; path conditions are evaluated on the first
    unrolling stem+cycle, which suffices for every operator."""
    memo = {}

    def holds(w, f):
        key = (w, f)
        if key in memo:
            return memo[key]
        memo[key] = result = _eval(w, f)
        return result

    def _eval(w, f):
        if isinstance(f, Top):
            return True
        if isinstance(f, Atom):
            return f.name in model.labels[w]
        if isinstance(f, Not):
            return not holds(w, f.sub)
        if isinstance(f, And):
            return holds(w, f.left) and holds(w, f.right)
        if isinstance(f, Or):
            return holds(w, f.left) or holds(w, f.right)
        if isinstance(f, Xor):
            return holds(w, f.left) != holds(w, f.right)
        if isinstance(f, Unary):
            if f.op == "EX":
                return any(holds(v, f.sub) for v in model.successors[w])
            if f.op in ("EF", "EG"):
                return any(
                    _path_unary(f.op, stem + cycle, f.sub)
                    for stem, cycle in _minimal_lassos(model, w)
                )
            return holds(w, dual_step(f))
        if isinstance(f, Binary):
            if f.op in ("EU", "ER"):
                return any(
                    _path_binary(f.op, stem + cycle, f.left, f.right)
                    for stem, cycle in _minimal_lassos(model, w)
                )
            return holds(w, dual_step(f))
        raise TypeError(f"not a formula: {f!r}")

    def _path_unary(op, positions, sub):
        values = [holds(x, sub) for x in positions]
        return any(values) if op == "EF" else all(values)

    def _path_binary(op, positions, left, right):
        if op == "EU":
            for k, x in enumerate(positions):
                if holds(x, right):
                    return all(holds(positions[i], left) for i in range(k))
            return False
        # ER: the right argument must hold until the left has held strictly
        # earlier; checking one unrolling decides the infinite path
        released = False
        for x in positions:
            if released:
                return True
            if not holds(x, right):
                return False
            if holds(x, left):
                released = True
        return True

    return holds(state, formula)


# ---------------------------------------------------------------------------
# alternating accessibility by plain recursion (no memo)

def apath_recursive(g, node=None, targets=None) -> bool:
    node = g.start if node is None else node
    targets = g.targets if targets is None else frozenset(targets)
    if g.slice_of[node] == g.depth:
        return node in targets
    succ = g.successors[node]
    if g.slice_of[node] % 2 == 0:
        return any(apath_recursive(g, z, targets) for z in succ)
    return all(apath_recursive(g, z, targets) for z in succ)


# ---------------------------------------------------------------------------
# reachability by BFS over the raw edge set

def bfs_path_exists(nodes, edges, source, target) -> bool:
    succ = {}
    for (u, v) in edges:
        succ.setdefault(u, set()).add(v)
    seen = {source}
    frontier = [source]
    while frontier:
        u = frontier.pop()
        if u == target:
            return True
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return target in seen


# ---------------------------------------------------------------------------
# Boolean clone closure over arity-3 truth tables, constants included

_ARITY = 3
_ROWS = 2 ** _ARITY


def _projection(i):
    return tuple((row >> (_ARITY - 1 - i)) & 1 for row in range(_ROWS))


def clone_closure(ops) -> frozenset:
    """All arity-3 truth tables generated by `ops` together with both
    constants, closed under pointwise composition (which covers variable
    identification and permutation because all projections seed the set)."""
    tables = {_projection(i) for i in range(_ARITY)}
    tables.add(tuple(0 for _ in range(_ROWS)))
    tables.add(tuple(1 for _ in range(_ROWS)))
    while True:
        fresh = set()
        for f in tables:
            if "!" in ops:
                fresh.add(tuple(1 - x for x in f))
            for h in tables:
                if "&" in ops:
                    fresh.add(tuple(a & b for a, b in zip(f, h)))
                if "|" in ops:
                    fresh.add(tuple(a | b for a, b in zip(f, h)))
                if "^" in ops:
                    fresh.add(tuple(a ^ b for a, b in zip(f, h)))
        if fresh <= tables:
            return frozenset(tables)
        tables |= fresh

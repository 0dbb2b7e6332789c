"""Alternating slice graphs: the apath predicate, validators, transforms.

An alternating slice graph is a layered and/or DAG: nodes are partitioned
into slices V_0..V_m, edges only go from slice i to slice i+1, even slices
are existential and odd slices universal.  `apath` is the alternating
accessibility predicate; `sharp` and `flat` turn a slice graph into a
total graph suitable as the transition relation of a Kripke model.

Slice-graph file format::

    slice 0: a b
    slice 1: c
    edges:
    a -> c
    start: a
    targets: a

`#` starts a comment.
"""

from __future__ import annotations

import math
import random


class AltSliceGraph:
    def __init__(self, slices, edges, start, targets):
        self.slices = tuple(tuple(sl) for sl in slices)
        self.edges = frozenset((u, v) for (u, v) in edges)
        self.start = start
        self.targets = frozenset(targets)
        self.nodes = tuple(n for sl in self.slices for n in sl)
        self.slice_of = {}
        for i, sl in enumerate(self.slices):
            for n in sl:
                self.slice_of.setdefault(n, i)
        succ = {n: [] for n in self.nodes}
        pred = {n: [] for n in self.nodes}
        for (u, v) in sorted(self.edges):
            if u in succ and v in pred:
                succ[u].append(v)
                pred[v].append(u)
        # successor lists are sorted by node id; constructions rely on this
        # to pick the "first" and "second" successor deterministically
        self.successors = {n: tuple(s) for n, s in succ.items()}
        self.predecessors = {n: tuple(p) for n, p in pred.items()}

    @property
    def depth(self) -> int:
        """m, the index of the last slice."""
        return len(self.slices) - 1

    def is_existential(self, node) -> bool:
        return self.slice_of[node] % 2 == 0

    def __repr__(self):
        return f"AltSliceGraph({len(self.slices)} slices, {len(self.nodes)} nodes)"


def validate_slice_graph(g: AltSliceGraph) -> list:
    """Base invariants: slice-respecting edges, positive outdegree, start/targets."""
    problems = []
    seen = set()
    for i, sl in enumerate(g.slices):
        if not sl:
            problems.append(f"slice {i} is empty")
        for n in sl:
            if n in seen:
                problems.append(f"duplicate node id {n!r}")
            seen.add(n)
    for (u, v) in sorted(g.edges):
        if u not in g.slice_of or v not in g.slice_of:
            problems.append(f"edge ({u!r}, {v!r}) uses an unknown node")
        elif g.slice_of[v] != g.slice_of[u] + 1:
            problems.append(f"edge ({u!r}, {v!r}) does not go to the next slice")
    for i, sl in enumerate(g.slices[:-1]):
        for n in sl:
            if not g.successors.get(n):
                problems.append(f"node {n!r} in slice {i} has no successor")
    if g.start not in g.slice_of or g.slice_of.get(g.start) != 0:
        problems.append(f"start node {g.start!r} is not in slice 0")
    for t in sorted(g.targets):
        if g.slice_of.get(t) != g.depth:
            problems.append(f"target {t!r} is not in the last slice")
    return problems


def validate_asagap(g: AltSliceGraph) -> list:
    """Accessibility-instance shape: base invariants plus an even slice count m."""
    problems = validate_slice_graph(g)
    if g.depth % 2 != 0:
        problems.append(f"slice count m = {g.depth} is odd; last slice must be existential")
    return problems


def validate_restricted(g: AltSliceGraph) -> list:
    """Degree-restricted shape: every universal node has outdegree 2 and
    every existential node outside slice 0 has indegree 1."""
    problems = validate_slice_graph(g)
    for i, sl in enumerate(g.slices):
        if i % 2 == 1:
            for n in sl:
                if len(g.successors[n]) != 2:
                    problems.append(f"universal node {n!r} has outdegree {len(g.successors[n])}, need 2")
        elif i > 0:
            for n in sl:
                if len(g.predecessors[n]) != 1:
                    problems.append(f"existential node {n!r} has indegree {len(g.predecessors[n])}, need 1")
    return problems


def validate_logdepth(g: AltSliceGraph) -> list:
    """Logarithmic-depth shape: m <= floor(log2 n) with n the node count."""
    problems = validate_slice_graph(g)
    n = len(g.nodes)
    bound = int(math.log2(n)) if n > 0 else 0
    if g.depth > bound:
        problems.append(f"depth m = {g.depth} exceeds log2({n}) = {bound}")
    return problems


def apath(g: AltSliceGraph, node=None, targets=None) -> bool:
    """The alternating-path predicate: membership in the last slice's target
    set at the bottom, some good successor at existential nodes, all good
    successors at universal nodes.  Successors are taken from the edge
    relation regardless of the quantifier the next slice nominally carries.
    """
    node = g.start if node is None else node
    targets = g.targets if targets is None else frozenset(targets)
    last = g.depth
    memo = {}

    def eval_node(x):
        if x in memo:
            return memo[x]
        if g.slice_of[x] == last:
            result = x in targets
        elif g.slice_of[x] % 2 == 0:
            result = any(eval_node(z) for z in g.successors[x])
        else:
            result = all(eval_node(z) for z in g.successors[x])
        memo[x] = result
        return result

    return eval_node(node)


class TotalGraph:
    """A total directed graph derived from a slice graph.

    `slices` keeps the slice view (for `flat`, slice i holds the originals
    of V_i followed by their copies).  For `flat` outputs, `copy_of` maps
    each original node to its copy and `pair_of` maps each universal node
    to its ordered successor pair.  For `sharp` outputs, `sink` names the
    appended trap node.
    """

    def __init__(self, nodes, edges, slices, copy_of=None, pair_of=None, sink=None):
        self.nodes = tuple(nodes)
        self.edges = frozenset(edges)
        self.slices = tuple(tuple(sl) for sl in slices)
        self.copy_of = dict(copy_of or {})
        self.pair_of = dict(pair_of or {})
        self.sink = sink

    def has_loop(self, node) -> bool:
        return (node, node) in self.edges


def sharp(g: AltSliceGraph) -> TotalGraph:
    """Append a looping sink slice {e} fed by the last slice."""
    problems = validate_slice_graph(g)
    if problems:
        raise ValueError("invalid slice graph: " + "; ".join(problems))
    if "e" in g.slice_of:
        raise ValueError("node id 'e' is reserved for the sink")
    edges = set(g.edges)
    for n in g.slices[-1]:
        edges.add((n, "e"))
    edges.add(("e", "e"))
    return TotalGraph(
        nodes=g.nodes + ("e",),
        edges=edges,
        slices=g.slices + (("e",),),
        sink="e",
    )


def flat(g: AltSliceGraph) -> TotalGraph:
    """Serialize universal branching: each universal node keeps only the edge
    to its first successor; the second is reached through a copy chain
    v1 -> v1^ -> v2 -> v2^ with a loop on v2^.  Universal and slice-0 nodes
    get a looping copy of their own.  Requires the degree-restricted shape.
    """
    problems = validate_restricted(g)
    if problems:
        raise ValueError("invalid degree-restricted slice graph: " + "; ".join(problems))
    for n in g.nodes:
        if n.endswith("^"):
            raise ValueError(f"node id {n!r} collides with the copy naming scheme")
    copy_of = {n: n + "^" for n in g.nodes}
    slices = tuple(tuple(sl) + tuple(copy_of[n] for n in sl) for sl in g.slices)
    edges = set()
    pair_of = {}
    for i, sl in enumerate(g.slices):
        for u in sl:
            if i % 2 == 0 and i < g.depth:
                for v in g.successors[u]:
                    edges.add((u, v))
            if i % 2 == 1:
                v1, v2 = g.successors[u]
                pair_of[u] = (v1, v2)
                edges.add((u, v1))
                edges.add((v1, copy_of[v1]))
                edges.add((copy_of[v1], v2))
                edges.add((v2, copy_of[v2]))
                edges.add((copy_of[v2], copy_of[v2]))
            if i % 2 == 1 or i == 0:
                edges.add((u, copy_of[u]))
                edges.add((copy_of[u], copy_of[u]))
    nodes = tuple(n for sl in slices for n in sl)
    return TotalGraph(nodes, edges, slices, copy_of=copy_of, pair_of=pair_of)


def gen_random(n_slices, width, seed, restricted=False, min_nodes=0) -> AltSliceGraph:
    """Deterministic random instance with `n_slices` slices of width <= `width`.

    With `restricted`, the output passes `validate_restricted` (universal
    outdegree exactly 2, private successor pairs).  `min_nodes` inflates
    slice 0 until the node count reaches the bound, which is how log-depth
    instances are produced.
    """
    if n_slices < 1 or width < 1:
        raise ValueError("n_slices and width must be positive")
    m = n_slices - 1
    if restricted and m % 2 != 0:
        raise ValueError("degree-restricted instances need an even slice count m")
    rng = random.Random(seed)
    sizes = []
    for i in range(n_slices):
        if i == 0:
            sizes.append(rng.randint(1, width))
        elif restricted and i % 2 == 0:
            sizes.append(2 * sizes[i - 1])
        else:
            sizes.append(rng.randint(1, width))
    if min_nodes:
        sizes[0] += max(0, min_nodes - sum(sizes))
    slices = [tuple(f"n{i}_{k}" for k in range(sizes[i])) for i in range(n_slices)]
    edges = set()
    for i in range(m):
        src, dst = slices[i], slices[i + 1]
        if restricted and i % 2 == 1:
            for j, u in enumerate(src):
                edges.add((u, dst[2 * j]))
                edges.add((u, dst[2 * j + 1]))
        else:
            for u in src:
                k = rng.randint(1, min(width, len(dst)))
                for v in rng.sample(dst, k):
                    edges.add((u, v))
    targets = [n for n in slices[-1] if rng.random() < 0.5]
    return AltSliceGraph(slices, edges, start=slices[0][0], targets=targets)


# ---------------------------------------------------------------------------
# file format

class SliceGraphFormatError(ValueError):
    """Slice-graph file malformed; message includes the 1-based line number."""


def load_slice_graph(text: str) -> AltSliceGraph:
    slices = []
    known = set()
    edges = []
    start = None
    targets = []
    in_edges = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("slice "):
            head, _, body = line.partition(":")
            try:
                idx = int(head[len("slice "):])
            except ValueError:
                raise SliceGraphFormatError(f"line {lineno}: bad slice header")
            if idx != len(slices):
                raise SliceGraphFormatError(f"line {lineno}: expected slice {len(slices)}")
            ids = tuple(body.split())
            for n in ids:
                if n in known:
                    raise SliceGraphFormatError(f"line {lineno}: duplicate node {n!r}")
                known.add(n)
            slices.append(ids)
            in_edges = False
        elif line == "edges:":
            in_edges = True
        elif line.startswith("start:"):
            start = line[len("start:"):].strip()
            in_edges = False
        elif line.startswith("targets:"):
            targets = line[len("targets:"):].split()
            in_edges = False
        elif in_edges:
            parts = line.split("->")
            if len(parts) != 2:
                raise SliceGraphFormatError(f"line {lineno}: expected 'src -> dst'")
            u, v = parts[0].strip(), parts[1].strip()
            for w in (u, v):
                if w not in known:
                    raise SliceGraphFormatError(f"line {lineno}: undeclared node {w!r}")
            edges.append((u, v))
        else:
            raise SliceGraphFormatError(f"line {lineno}: unrecognized line")
    if not slices:
        raise SliceGraphFormatError("line 1: no slices declared")
    if start is None:
        raise SliceGraphFormatError("line 1: missing start node")
    return AltSliceGraph(slices, edges, start, targets)


def store_slice_graph(g: AltSliceGraph) -> str:
    out = []
    for i, sl in enumerate(g.slices):
        out.append(f"slice {i}: " + " ".join(sl))
    out.append("edges:")
    order = {n: i for i, n in enumerate(g.nodes)}
    out.extend(f"{u} -> {v}" for (u, v) in sorted(g.edges, key=lambda e: (order[e[0]], order[e[1]])))
    out.append("start: " + g.start)
    out.append("targets: " + " ".join(n for n in g.slices[-1] if n in g.targets))
    return "\n".join(out) + "\n"

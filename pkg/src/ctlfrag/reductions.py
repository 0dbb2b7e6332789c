"""Reductions from alternating-graph accessibility to CTL model checking.

Each `reduce_*` function turns a slice-graph instance (or, for the plain
reachability reductions, a digraph) into a Kripke model, a start state,
and a formula family phi_0..phi_m such that checking the emitted formula
at the start state decides the source problem.  State naming is
deterministic: original node ids are kept, copies get the suffix ``^``,
the sink of the sharp transform is ``e``, chain states are ``a_i``/``b_i``
and padding states get the suffix ``'``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .altgraph import (
    AltSliceGraph,
    TotalGraph,
    flat,
    sharp,
    validate_asagap,
    validate_logdepth,
    validate_restricted,
)
from .kripke import CheckInstance, KripkeModel
from .syntax import Atom, Binary, Formula, Not, Or, Unary, Xor, xor_chain


class ReductionInputError(ValueError):
    """The input graph does not have the shape the construction requires."""


@dataclass
class ReductionOutput:
    """A constructed model-checking instance plus its building blocks.

    `formulas` is the family phi_0..phi_m (phi_0..phi_l for the EF-xor
    construction, whose emitted formula is the last one instead of the
    first).  `graph` is the underlying total graph where one exists, and
    `layers` the layer partition of the EF-xor model.
    """

    name: str
    instance: CheckInstance
    formulas: tuple
    graph: TotalGraph | None = None
    layers: tuple = ()
    meta: dict = field(default_factory=dict)


def _require(problems, name):
    if problems:
        raise ReductionInputError(f"{name}: " + "; ".join(problems))


def _s(i):
    return Atom(f"s_{i}")


def _sh(i):
    return Atom(f"sh_{i}")


def _eh(i):
    return Atom(f"eh_{i}")


def _er(release, keep):
    return Binary("ER", release, keep)


def _eu(hold, goal):
    return Binary("EU", hold, goal)


# ---------------------------------------------------------------------------
# EU: flat transform, single-operator formulas

def reduce_eu(g: AltSliceGraph) -> ReductionOutput:
    """Until-only instance over the serialized graph: slice atoms s_i on the
    originals, sh_i on chain copies and eh_i on looping copies, with

        phi_m = t,    phi_i = s_i EU ((sh_{i+1} EU phi_{i+1}) EU eh_{i+1}).
    """
    _require(validate_restricted(g), "reduce_eu")
    fg = flat(g)
    m = g.depth
    labels = {}

    def mark(node, atom):
        labels.setdefault(node, set()).add(atom)

    for v in g.targets:
        mark(v, "t")
    for i, sl in enumerate(g.slices):
        for v in sl:
            mark(v, f"s_{i}")
            copy = fg.copy_of[v]
            mark(copy, f"eh_{i}" if fg.has_loop(copy) else f"sh_{i}")
    phi = [None] * (m + 1)
    phi[m] = Atom("t")
    for i in range(m - 1, -1, -1):
        phi[i] = _eu(_s(i), _eu(_eu(_sh(i + 1), phi[i + 1]), _eh(i + 1)))
    model = KripkeModel(fg.nodes, fg.edges, labels)
    instance = CheckInstance(model, g.start, phi[0])
    return ReductionOutput("eu", instance, tuple(phi), graph=fg)


# ---------------------------------------------------------------------------
# ER with disjunction: flat transform

def reduce_er_or(g: AltSliceGraph) -> ReductionOutput:
    """Release/or instance over the serialized graph:

        phi_m = t
        phi_i = phi_{i+1} ER s_i                        (even i)
        phi_i = t_i ER ((phi_{i+1} ER s_i) | sh_i)      (odd i)

    where t_i marks second universal successors and sh_i the copy of the
    first one.
    """
    _require(validate_restricted(g), "reduce_er_or")
    fg = flat(g)
    m = g.depth
    labels = {}

    def mark(node, atom):
        labels.setdefault(node, set()).add(atom)

    for v in g.targets:
        mark(v, "t")
    for i, sl in enumerate(g.slices):
        for v in sl:
            mark(v, f"s_{i}")
            if i > 0:
                mark(v, f"s_{i - 1}")
    for i, sl in enumerate(g.slices):
        if i % 2 == 1:
            for u in sl:
                v1, v2 = fg.pair_of[u]
                mark(v2, f"t_{i}")
                mark(fg.copy_of[v1], f"sh_{i}")
    phi = [None] * (m + 1)
    phi[m] = Atom("t")
    for i in range(m - 1, -1, -1):
        if i % 2 == 0:
            phi[i] = _er(phi[i + 1], _s(i))
        else:
            phi[i] = _er(Atom(f"t_{i}"), Or(_er(phi[i + 1], _s(i)), _sh(i)))
    model = KripkeModel(fg.nodes, fg.edges, labels)
    instance = CheckInstance(model, g.start, phi[0])
    return ReductionOutput("er-or", instance, tuple(phi), graph=fg)


# ---------------------------------------------------------------------------
# ER with negation: sharp transform

def reduce_er_neg(g: AltSliceGraph) -> ReductionOutput:
    """Release/negation instance over the sink-augmented graph:

        phi_m = t
        phi_i = phi_{i+1} ER s_i            (even i)
        phi_i = !(!phi_{i+1} ER s_i)        (odd i)

    Labels: s_{i-1}, s_i and s_{i+1} on slice i, t on the targets and on
    the whole next-to-last slice, nothing on the sink.  The widened s-band
    and the t-band on slice m-1 make phi_{i+1} hold at slice i exactly
    when the release literal must stay quiet there, so each phi_i decides
    the alternating step of its slice.
    """
    _require(validate_asagap(g), "reduce_er_neg")
    sg = sharp(g)
    m = g.depth
    labels = {}

    def mark(node, atom):
        labels.setdefault(node, set()).add(atom)

    for v in g.targets:
        mark(v, "t")
    for i, sl in enumerate(g.slices):
        for v in sl:
            mark(v, f"s_{i}")
            if i > 0:
                mark(v, f"s_{i - 1}")
            if i < m:
                mark(v, f"s_{i + 1}")
            if i == m - 1:
                mark(v, "t")
    phi = [None] * (m + 1)
    phi[m] = Atom("t")
    for i in range(m - 1, -1, -1):
        if i % 2 == 0:
            phi[i] = _er(phi[i + 1], _s(i))
        else:
            phi[i] = Not(_er(Not(phi[i + 1]), _s(i)))
    model = KripkeModel(sg.nodes, sg.edges, labels)
    instance = CheckInstance(model, g.start, phi[0])
    return ReductionOutput("er-neg", instance, tuple(phi), graph=sg)


# ---------------------------------------------------------------------------
# ER only: sharp transform, log-depth degree-restricted input

def reduce_er_only(g: AltSliceGraph) -> ReductionOutput:
    """Pure-release instance over the sink-augmented graph:

        phi_m = t
        phi_i = phi_{i+1} ER s_i                            (even i)
        phi_i = (phi_{i+1} ER sr_i) ER (phi_{i+1} ER sl_i)  (odd i)

    with sl_i/sr_i splitting each universal node's private successor pair.
    """
    problems = validate_restricted(g)
    problems += [p for p in validate_logdepth(g) if p not in problems]
    _require(problems, "reduce_er_only")
    sg = sharp(g)
    m = g.depth
    labels = {}

    def mark(node, atom):
        labels.setdefault(node, set()).add(atom)

    for v in g.targets:
        mark(v, "t")
    for i, sl in enumerate(g.slices):
        if i % 2 == 0:
            for v in sl:
                mark(v, f"s_{i}")
        else:
            for u in sl:
                mark(u, f"s_{i - 1}")
                mark(u, f"sl_{i}")
                mark(u, f"sr_{i}")
                vl, vr = g.successors[u]
                mark(vl, f"sl_{i}")
                mark(vr, f"sr_{i}")
    phi = [None] * (m + 1)
    phi[m] = Atom("t")
    for i in range(m - 1, -1, -1):
        if i % 2 == 0:
            phi[i] = _er(phi[i + 1], _s(i))
        else:
            phi[i] = _er(_er(phi[i + 1], Atom(f"sr_{i}")), _er(phi[i + 1], Atom(f"sl_{i}")))
    model = KripkeModel(sg.nodes, sg.edges, labels)
    instance = CheckInstance(model, g.start, phi[0])
    return ReductionOutput("er-only", instance, tuple(phi), graph=sg)


# ---------------------------------------------------------------------------
# EG with xor: flat transform

def reduce_eg_xor(g: AltSliceGraph) -> ReductionOutput:
    """Globally/xor instance over the serialized graph:

        phi_m = t
        phi_i = EG(s_i ^ s_{i+2} ^ sh_i ^ sh_{i+1} ^ phi_{i+1})

    with s_i on the whole widened slice i (originals and copies) and sh_i
    on the copies only.  Out-of-range atoms such as s_{m+1} stay in the
    formula and simply hold nowhere.
    """
    _require(validate_restricted(g), "reduce_eg_xor")
    fg = flat(g)
    m = g.depth
    labels = {}

    def mark(node, atom):
        labels.setdefault(node, set()).add(atom)

    for v in g.targets:
        mark(v, "t")
    for i, sl in enumerate(g.slices):
        for v in sl:
            mark(v, f"s_{i}")
            mark(fg.copy_of[v], f"s_{i}")
            mark(fg.copy_of[v], f"sh_{i}")
    phi = [None] * (m + 1)
    phi[m] = Atom("t")
    for i in range(m - 1, -1, -1):
        body = xor_chain([_s(i), _s(i + 2), _sh(i), _sh(i + 1), phi[i + 1]])
        phi[i] = Unary("EG", body)
    model = KripkeModel(fg.nodes, fg.edges, labels)
    instance = CheckInstance(model, g.start, phi[0])
    return ReductionOutput("eg-xor", instance, tuple(phi), graph=fg)


# ---------------------------------------------------------------------------
# EF with xor: layered model with chain states

def _alpha(i: int):
    """Index set of the z-atoms appearing in the i-th EF-xor formula."""
    members = []
    for j in range(i + 1):
        if j >= i - 1:
            count = sum(1 for x in range(0, i - 1) if x % 2 == 1)
            member = count % 2 == 1
        else:
            count = sum(1 for x in range(0, j) if x % 2 == 1)
            count += sum(1 for x in range(j + 2, i) if x % 2 == 0)
            member = count % 2 == 1 if i % 2 == 1 else count % 2 == 0
        if member:
            members.append(j)
    return tuple(members)


def _ag_encoded(body: Formula) -> Formula:
    """AG body, spelled s ^ EF (s ^ body) with s the everywhere-atom."""
    s = Atom("s")
    return Xor(s, Unary("EF", Xor(s, body)))


def ef_xor_formulas(depth: int):
    """The formula family phi_0..phi_depth of the EF-xor construction."""
    phi = [Atom("t")]
    for i in range(1, depth + 1):
        parts = [Atom(f"z_{j}") for j in _alpha(i)] + phi[:i]
        body = xor_chain(parts)
        phi.append(Unary("EF", body) if i % 2 == 1 else _ag_encoded(body))
    return tuple(phi)


def reduce_ef_xor(g: AltSliceGraph) -> ReductionOutput:
    """Future/xor instance.  The input (an accessibility instance of
    logarithmic depth) is first padded with one pass-through slice so the
    last slice is universal, then rebuilt with layers in reverse order,
    a-/b-chains, loops on layer 0, and layer atoms z_i plus the
    everywhere-atom s.  The emitted formula is phi_l at the start node.
    """
    problems = validate_asagap(g)
    problems += [p for p in validate_logdepth(g) if p not in problems]
    _require(problems, "reduce_ef_xor")

    # pad: a private universal successor per last-slice node keeps apath
    pad_of = {v: v + "'" for v in g.slices[-1]}
    taken = set(g.nodes)
    for padded in pad_of.values():
        if padded in taken:
            raise ReductionInputError(f"node id {padded!r} collides with the padding scheme")
    slices = g.slices + (tuple(pad_of[v] for v in g.slices[-1]),)
    edges = set(g.edges) | {(v, pad_of[v]) for v in g.slices[-1]}
    targets = {pad_of[v] for v in g.targets}
    depth = len(slices) - 1

    layers = []
    for i in range(depth + 1):
        a, b = f"a_{i}", f"b_{i}"
        if a in taken or b in taken:
            raise ReductionInputError("node ids a_i/b_i collide with the chain scheme")
        layers.append(tuple(slices[depth - i]) + (a, b))
    model_edges = set()
    for (u, v) in edges:
        model_edges.add((u, v))
    for u in layers[0]:
        model_edges.add((u, u))
    for i in range(1, depth + 1):
        model_edges.add((f"a_{i}", f"a_{i - 1}"))
        model_edges.add((f"b_{i}", f"b_{i - 1}"))
        for u in layers[i]:
            if i % 2 == 1:
                model_edges.add((u, f"a_{i - 1}"))
            else:
                model_edges.add((u, f"b_{i - 1}"))
    labels = {}
    for i, layer in enumerate(layers):
        for w in layer:
            labels.setdefault(w, set()).update({f"z_{i}", "s"})
    for w in targets | {"b_0"}:
        labels[w].add("t")

    phi = ef_xor_formulas(depth)
    nodes = tuple(w for layer in layers for w in layer)
    model = KripkeModel(nodes, model_edges, labels)
    instance = CheckInstance(model, g.start, phi[depth])
    return ReductionOutput(
        "ef-xor",
        instance,
        phi,
        layers=tuple(layers),
        meta={"alpha": {i: _alpha(i) for i in range(1, depth + 1)}},
    )


# ---------------------------------------------------------------------------
# plain reachability reductions

@dataclass(frozen=True)
class Digraph:
    """A directed graph with two distinguished nodes, for reachability input."""

    nodes: tuple
    edges: frozenset
    source: str
    target: str

    def __post_init__(self):
        for w in (self.source, self.target):
            if w not in self.nodes:
                raise ValueError(f"distinguished node {w!r} is not a graph node")


def reduce_gap_eg(g: Digraph) -> ReductionOutput:
    """Reachability as EG: |V| layered copies of the reflexive closure, the
    path atom `a` on every layer but the last and on copies of the target,
    loops on the last layer, formula EG a.
    """
    n = len(g.nodes)
    closure = set(g.edges) | {(u, u) for u in g.nodes}
    nodes = []
    edges = set()
    labels = {}
    for i in range(1, n + 1):
        for u in g.nodes:
            w = f"{u}@{i}"
            nodes.append(w)
            if i < n or u == g.target:
                labels[w] = {"a"}
    for (u, v) in closure:
        for i in range(1, n):
            edges.add((f"{u}@{i}", f"{v}@{i + 1}"))
    for u in g.nodes:
        edges.add((f"{u}@{n}", f"{u}@{n}"))
    model = KripkeModel(nodes, edges, labels)
    formula = Unary("EG", Atom("a"))
    instance = CheckInstance(model, f"{g.source}@1", formula)
    return ReductionOutput("gap-eg", instance, (formula,))


def reduce_gap_ef(g: Digraph) -> ReductionOutput:
    """Reachability as EF: reflexive closure, atom p only on the target."""
    closure = set(g.edges) | {(u, u) for u in g.nodes}
    labels = {g.target: {"p"}}
    model = KripkeModel(g.nodes, closure, labels)
    formula = Unary("EF", Atom("p"))
    instance = CheckInstance(model, g.source, formula)
    return ReductionOutput("gap-ef", instance, (formula,))


# ---------------------------------------------------------------------------
# digraph file format (for the CLI's gap constructions)

class DigraphFormatError(ValueError):
    """Digraph file malformed; message includes the 1-based line number."""


def load_digraph(text: str) -> Digraph:
    """Format: `nodes:` ids one per line, `edges:` lines `src -> dst`,
    `s:` and `t:` one id each; `#` comments."""
    nodes = []
    known = set()
    edges = []
    source = target = None
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("nodes:", "edges:", "s:", "t:"):
            section = line[:-1]
            continue
        if section == "nodes":
            if line in known:
                raise DigraphFormatError(f"line {lineno}: duplicate node {line!r}")
            nodes.append(line)
            known.add(line)
        elif section == "edges":
            parts = line.split("->")
            if len(parts) != 2:
                raise DigraphFormatError(f"line {lineno}: expected 'src -> dst'")
            u, v = parts[0].strip(), parts[1].strip()
            for w in (u, v):
                if w not in known:
                    raise DigraphFormatError(f"line {lineno}: undeclared node {w!r}")
            edges.append((u, v))
        elif section == "s":
            source = line
        elif section == "t":
            target = line
        else:
            raise DigraphFormatError(f"line {lineno}: content before a section header")
    if source is None or target is None:
        raise DigraphFormatError("line 1: missing s: or t: section")
    if source not in known or target not in known:
        raise DigraphFormatError("line 1: s/t must be declared nodes")
    return Digraph(tuple(nodes), frozenset(edges), source, target)


CONSTRUCTIONS = {
    "eu": reduce_eu,
    "er-or": reduce_er_or,
    "er-neg": reduce_er_neg,
    "er-only": reduce_er_only,
    "eg-xor": reduce_eg_xor,
    "ef-xor": reduce_ef_xor,
    "gap-eg": reduce_gap_eg,
    "gap-ef": reduce_gap_ef,
}

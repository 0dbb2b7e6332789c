"""Random corpora and the comparison/benchmark suites behind the CLI.

Everything here is deterministic in the seed, so CI runs and bug reports
reproduce exactly.
"""

from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass

from . import fastcheck, semantics
from .altgraph import AltSliceGraph, apath, gen_random
from .kripke import KripkeModel
from .reductions import (
    Digraph,
    ReductionOutput,
    reduce_ef_xor,
    reduce_eg_xor,
    reduce_er_neg,
    reduce_er_only,
    reduce_er_or,
    reduce_eu,
    reduce_gap_ef,
    reduce_gap_eg,
)
from .syntax import And, Atom, Binary, Formula, Not, Or, Unary, Xor

SLICE_CONSTRUCTIONS = ("eu", "er-or", "er-neg", "er-only", "eg-xor", "ef-xor")
GAP_CONSTRUCTIONS = ("gap-eg", "gap-ef")


def stable_seed(*parts) -> int:
    """Process-independent seed derived from the given labels/numbers."""
    return zlib.crc32("/".join(str(p) for p in parts).encode())


# ---------------------------------------------------------------------------
# random inputs

def random_model(rng: random.Random, n_states: int, atoms=("p", "q", "r"), max_out=3) -> KripkeModel:
    states = [f"w{i}" for i in range(n_states)]
    edges = set()
    for w in states:
        out = rng.randint(1, min(max_out, n_states))
        for v in rng.sample(states, out):
            edges.add((w, v))
    labels = {w: {a for a in atoms if rng.random() < 0.5} for w in states}
    return KripkeModel(states, edges, labels)


_BOOL_NODES = {"!": Not, "&": And, "|": Or, "^": Xor}


def random_formula(rng: random.Random, depth: int, atoms=("p", "q", "r"),
                   temporal=("EX", "EF", "EG", "AX", "AF", "AG", "EU", "ER", "AU", "AR"),
                   boolean=("!", "&", "|", "^")) -> Formula:
    """A random formula of the given depth over the given operator sets."""
    if depth <= 0:
        return Atom(rng.choice(atoms))
    kinds = ["atom"] + list(boolean) + [op for op in temporal]
    kind = rng.choice(kinds)
    if kind == "atom":
        return Atom(rng.choice(atoms))
    if kind == "!":
        return Not(random_formula(rng, depth - 1, atoms, temporal, boolean))
    if kind in ("&", "|", "^"):
        node = _BOOL_NODES[kind]
        return node(
            random_formula(rng, depth - 1, atoms, temporal, boolean),
            random_formula(rng, depth - 1, atoms, temporal, boolean),
        )
    if kind in ("EU", "ER", "AU", "AR"):
        return Binary(
            kind,
            random_formula(rng, depth - 1, atoms, temporal, boolean),
            random_formula(rng, depth - 1, atoms, temporal, boolean),
        )
    return Unary(kind, random_formula(rng, depth - 1, atoms, temporal, boolean))


def random_slice_instance(rng: random.Random, construction: str) -> AltSliceGraph:
    """A random valid input for one of the slice-graph constructions,
    within the acceptance envelope (at most 6 slices, at most 30 nodes)."""
    n_slices = rng.choice((1, 3, 5))
    width = rng.randint(1, 3)
    restricted = construction in ("eu", "er-or", "er-only", "eg-xor")
    min_nodes = 0
    if construction in ("er-only", "ef-xor"):
        min_nodes = 2 ** (n_slices - 1)
    return gen_random(
        n_slices,
        width,
        seed=rng.randrange(2**31),
        restricted=restricted,
        min_nodes=min_nodes,
    )


def random_digraph(rng: random.Random, max_nodes=8) -> Digraph:
    n = rng.randint(1, max_nodes)
    nodes = tuple(f"v{i}" for i in range(n))
    edges = set()
    for u in nodes:
        for v in nodes:
            if rng.random() < 0.25:
                edges.add((u, v))
    return Digraph(nodes, frozenset(edges), rng.choice(nodes), rng.choice(nodes))


def bfs_reachable(g: Digraph) -> bool:
    seen = {g.source}
    frontier = [g.source]
    while frontier:
        u = frontier.pop()
        if u == g.target:
            return True
        for (a, b) in g.edges:
            if a == u and b not in seen:
                seen.add(b)
                frontier.append(b)
    return g.target in seen


_REDUCERS = {
    "eu": reduce_eu,
    "er-or": reduce_er_or,
    "er-neg": reduce_er_neg,
    "er-only": reduce_er_only,
    "eg-xor": reduce_eg_xor,
    "ef-xor": reduce_ef_xor,
}


def build_instance(construction: str, g: AltSliceGraph) -> ReductionOutput:
    return _REDUCERS[construction](g)


# ---------------------------------------------------------------------------
# comparison suites

@dataclass
class Mismatch:
    suite: str
    case: str
    expected: bool
    got: bool

    def __str__(self):
        return f"[{self.suite}] {self.case}: expected {self.expected}, got {self.got}"


def reduction_suite(per_construction=50, seed=0, constructions=None):
    """Check every construction against its independent oracle on random
    inputs; returns (counts per construction, mismatches)."""
    chosen = constructions or SLICE_CONSTRUCTIONS + GAP_CONSTRUCTIONS
    counts = {}
    mismatches = []
    for name in chosen:
        rng = random.Random(stable_seed(seed, name))
        counts[name] = 0
        for k in range(per_construction):
            if name in GAP_CONSTRUCTIONS:
                g = random_digraph(rng)
                out = reduce_gap_eg(g) if name == "gap-eg" else reduce_gap_ef(g)
                expected = bfs_reachable(g)
                case = f"digraph {len(g.nodes)} nodes seed {seed}/{k}"
            else:
                g = random_slice_instance(rng, name)
                out = build_instance(name, g)
                expected = apath(g)
                case = f"slice graph {len(g.nodes)} nodes depth {g.depth} seed {seed}/{k}"
            got = semantics.check(out.instance.model, out.instance.start, out.instance.formula)
            counts[name] += 1
            if got != expected:
                mismatches.append(Mismatch(name, case, expected, got))
    return counts, mismatches


_ENGINE_FRAGMENTS = (
    ("er", ("ER",), ()),
    ("eg-frag", ("EG",), ()),
    ("eg-frag", ("EG",), ("&",)),
    ("eg-frag", ("EG",), ("|",)),
    ("eg-frag", ("EG",), ("!",)),
    ("ef-frag", ("EF",), ()),
    ("ef-frag", ("EF",), ("|",)),
    ("ef-frag", ("EF",), ("!",)),
    ("ef-frag", ("EF",), ("&",)),
)


def engine_suite(cases_per_fragment=200, seed=0, max_states=8, depth=4):
    """Check each fragment engine against the generic checker on random
    in-fragment instances; returns (counts per fragment, mismatches)."""
    counts = {}
    mismatches = []
    for engine, temporal, boolean in _ENGINE_FRAGMENTS:
        label = f"{engine}:{''.join(boolean) or 'pure'}"
        rng = random.Random(stable_seed(seed, label))
        counts[label] = 0
        for k in range(cases_per_fragment):
            model = random_model(rng, rng.randint(2, max_states))
            phi = random_formula(rng, rng.randint(1, depth), temporal=temporal, boolean=boolean)
            state = rng.choice(model.states)
            expected = semantics.check(model, state, phi)
            got, routed = fastcheck.route(model, state, phi)
            counts[label] += 1
            if got != expected:
                mismatches.append(
                    Mismatch(label, f"{phi} at {state} seed {seed}/{k} (engine {routed})", expected, got)
                )
    # mixed corpus through the router
    rng = random.Random(seed ^ 0x5EED)
    counts["route:mixed"] = 0
    for k in range(cases_per_fragment):
        model = random_model(rng, rng.randint(2, max_states))
        phi = random_formula(rng, rng.randint(1, depth))
        state = rng.choice(model.states)
        expected = semantics.check(model, state, phi)
        got, routed = fastcheck.route(model, state, phi)
        counts["route:mixed"] += 1
        if got != expected:
            mismatches.append(
                Mismatch("route:mixed", f"{phi} at {state} seed {seed}/{k} (engine {routed})", expected, got)
            )
    return counts, mismatches


def bench_engines(cases=100, seed=0, max_states=8, depth=4):
    """Time each specialized engine against the generic checker on its own
    fragment; returns rows (fragment, cases, engine seconds, generic seconds)."""
    rows = []
    for engine, temporal, boolean in _ENGINE_FRAGMENTS:
        label = f"{engine}:{''.join(boolean) or 'pure'}"
        rng = random.Random(stable_seed(seed, label))
        instances = []
        for _ in range(cases):
            model = random_model(rng, rng.randint(2, max_states))
            phi = random_formula(rng, rng.randint(1, depth), temporal=temporal, boolean=boolean)
            instances.append((model, rng.choice(model.states), phi))
        t0 = time.perf_counter()
        for model, state, phi in instances:
            fastcheck.route(model, state, phi)
        t1 = time.perf_counter()
        for model, state, phi in instances:
            semantics.check(model, state, phi)
        t2 = time.perf_counter()
        rows.append((label, cases, t1 - t0, t2 - t1))
    return rows

"""Acceptance suite: every criterion at its stated scale, one summary line
per criterion (run with ``pytest tests/test_acceptance.py -s`` to see them).

Two sub-claims are marked strict-xfail because they are mathematically
unattainable as stated; the suite documents the exact failure mode:

* the release/negation construction's sink never satisfies the
  release-headed (even-index) formulas, but the negation-headed
  (odd-index) ones are vacuously true at an unlabeled sink;
* the third worked future/xor formula must not contain z_1: including it
  (as the worked list does) breaks equivalence with the alternating-path
  predicate, while the parity rules that generate the family exclude it.
"""

import itertools
import random
import time

import pytest

from ctlfrag import semantics
from ctlfrag.classify import CLONES, Cell, clone_of, fingerprint_dual, mc_stronger
from ctlfrag.fastcheck import route
from ctlfrag.harness import (
    GAP_CONSTRUCTIONS,
    SLICE_CONSTRUCTIONS,
    bfs_reachable,
    build_instance,
    random_digraph,
    random_formula,
    random_model,
    random_slice_instance,
    stable_seed,
)
from ctlfrag.altgraph import apath
from ctlfrag.reductions import (
    ef_xor_formulas,
    reduce_gap_ef,
    reduce_gap_eg,
    _ag_encoded,
)
from ctlfrag.syntax import (
    Atom,
    Unary,
    atom_occurrences,
    parse_formula,
    signature,
    xor_chain,
)

from oracles import clone_closure

REDUCTION_CASES = 200
ENGINE_CASES = 1000
MODEL_CASES = 100
TIME_BUDGET_S = 120.0


@pytest.fixture(scope="module")
def checked_corpus():
    """Criterion 1's corpus: >=200 random valid inputs per construction,
    reduced, model checked, and compared with the independent oracle."""
    outputs = {name: [] for name in SLICE_CONSTRUCTIONS}
    mismatches = []
    t0 = time.perf_counter()
    for name in SLICE_CONSTRUCTIONS:
        rng = random.Random(stable_seed("acceptance", name))
        for k in range(REDUCTION_CASES):
            g = random_slice_instance(rng, name)
            assert len(g.slices) <= 6 and len(g.nodes) <= 30
            out = build_instance(name, g)
            got = semantics.check(out.instance.model, out.instance.start, out.instance.formula)
            expected = apath(g)
            if got != expected:
                mismatches.append((name, k, expected, got))
            outputs[name].append((g, out))
    gap_counts = {}
    for name in GAP_CONSTRUCTIONS:
        rng = random.Random(stable_seed("acceptance", name))
        build = reduce_gap_eg if name == "gap-eg" else reduce_gap_ef
        gap_counts[name] = 0
        for k in range(REDUCTION_CASES):
            g = random_digraph(rng)
            out = build(g)
            got = semantics.check(out.instance.model, out.instance.start, out.instance.formula)
            if got != bfs_reachable(g):
                mismatches.append((name, k, bfs_reachable(g), got))
            gap_counts[name] += 1
    elapsed = time.perf_counter() - t0
    return outputs, gap_counts, mismatches, elapsed


def test_criterion_1_reduction_correctness(checked_corpus):
    outputs, gap_counts, mismatches, elapsed = checked_corpus
    for name in SLICE_CONSTRUCTIONS:
        assert len(outputs[name]) >= REDUCTION_CASES
    for name in GAP_CONSTRUCTIONS:
        assert gap_counts[name] >= REDUCTION_CASES
    assert mismatches == []
    assert elapsed < TIME_BUDGET_S
    print(
        f"criterion 1 (reduction correctness): PASS — "
        f"{REDUCTION_CASES} instances x {len(SLICE_CONSTRUCTIONS) + len(GAP_CONSTRUCTIONS)} "
        f"constructions, 0 mismatches, {elapsed:.1f}s"
    )


_FRAGMENTS = (
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


def test_criterion_2_engine_equivalence():
    total = 0
    for engine, temporal, boolean in _FRAGMENTS:
        rng = random.Random(stable_seed("acceptance2", engine, *boolean))
        for k in range(ENGINE_CASES):
            model = random_model(rng, rng.randint(2, 8))
            phi = random_formula(rng, rng.randint(1, 4), temporal=temporal, boolean=boolean)
            state = rng.choice(model.states)
            got, used = route(model, state, phi)
            expected_engine = engine if signature(phi).temporal_ops else "generic"
            assert used == expected_engine
            assert got == semantics.check(model, state, phi), (engine, str(phi), state)
            total += 1
    print(f"criterion 2 (engine equivalence): PASS — {total} instances, 0 mismatches")


_REWRITES = (
    ("EG(a & EG b) == EG(a & b)", "EG ({a} & EG {b})", "EG ({a} & {b})"),
    ("EG EG a == EG a", "EG EG {a}", "EG {a}"),
    ("AF AF a == AF a", "AF AF {a}", "AF {a}"),
    ("EG AF EG a == AF EG a", "EG AF EG {a}", "AF EG {a}"),
    ("AF EG AF a == EG AF a", "AF EG AF {a}", "EG AF {a}"),
    ("EF(a | EF b) == EF(a | b)", "EF ({a} | EF {b})", "EF ({a} | {b})"),
    ("EF a | EF b == EF(a | b)", "EF {a} | EF {b}", "EF ({a} | {b})"),
    ("EF EF a == EF a", "EF EF {a}", "EF {a}"),
    ("AG AG a == AG a", "AG AG {a}", "AG {a}"),
    ("EF AG EF AG a == EF AG a", "EF AG EF AG {a}", "EF AG {a}"),
)


def test_criterion_3_rewrite_soundness():
    checked = 0
    for label, lhs_tpl, rhs_tpl in _REWRITES:
        rng = random.Random(stable_seed("acceptance3", label))
        for _ in range(MODEL_CASES):
            model = random_model(rng, rng.randint(2, 7))
            a = str(random_formula(rng, rng.randint(0, 2)))
            b = str(random_formula(rng, rng.randint(0, 2)))
            lhs = parse_formula(lhs_tpl.format(a=f"({a})", b=f"({b})"))
            rhs = parse_formula(rhs_tpl.format(a=f"({a})", b=f"({b})"))
            assert semantics.sat_set(model, lhs) == semantics.sat_set(model, rhs), label
            checked += 1
    print(f"criterion 3 (rewrite soundness): PASS — {len(_REWRITES)} equivalences x "
          f"{MODEL_CASES} models, {checked} checks")


def test_criterion_4_structural_claims(checked_corpus):
    outputs, _, _, _ = checked_corpus
    # until model: slice formulas of deeper slices never hold lower down
    for g, out in outputs["eu"]:
        memo = {}
        semantics.sat_set(out.instance.model, out.formulas[0], _memo=memo)
        for i in range(g.depth):
            for j in range(i + 1, g.depth + 1):
                sat_j = semantics.sat_set(out.instance.model, out.formulas[j], _memo=memo)
                assert not sat_j & frozenset(out.graph.slices[i])
    # globally/xor model: the three structural facts about slices and copies
    for g, out in outputs["eg-xor"]:
        model = out.instance.model
        memo = {}
        semantics.sat_set(model, out.formulas[0], _memo=memo)
        sat = [semantics.sat_set(model, f, _memo=memo) for f in out.formulas]
        for i in range(g.depth + 1):
            for j in range(i + 1, g.depth + 1):
                assert not sat[j] & frozenset(out.graph.slices[i])
            for v in g.slices[i]:
                copy = out.graph.copy_of[v]
                assert copy not in sat[i]
                if i >= 1 and out.graph.has_loop(copy):
                    assert copy in sat[i - 1]
    # release/negation model: the sink never satisfies a release-headed formula
    for g, out in outputs["er-neg"]:
        memo = {}
        semantics.sat_set(out.instance.model, out.formulas[0], _memo=memo)
        for i in range(0, g.depth + 1, 2):
            assert "e" not in semantics.sat_set(out.instance.model, out.formulas[i], _memo=memo)
    print("criterion 4 (structural claims): PASS — slice/copy facts and "
          "even-index sink emptiness on the whole corpus")


@pytest.mark.xfail(
    strict=True,
    reason="a negation-headed formula is vacuously true at the unlabeled sink, "
    "so odd-index formulas always hold there; only the release-headed half "
    "of the sink claim is attainable",
)
def test_criterion_4_sink_satisfies_no_formula_at_all(checked_corpus):
    outputs, _, _, _ = checked_corpus
    for g, out in outputs["er-neg"]:
        if g.depth == 0:
            continue
        memo = {}
        semantics.sat_set(out.instance.model, out.formulas[0], _memo=memo)
        for f in out.formulas:
            assert "e" not in semantics.sat_set(out.instance.model, f, _memo=memo)


def test_criterion_5_worked_example_and_size_bound(checked_corpus):
    from ctlfrag.reductions import _alpha
    from ctlfrag.syntax import subformulas

    phi = ef_xor_formulas(3)
    assert phi[0] == Atom("t")
    assert phi[1] == Unary("EF", Atom("t"))
    assert phi[2] == _ag_encoded(xor_chain([Atom("z_0"), phi[0], phi[1]]))
    assert phi[3] == Unary(
        "EF",
        xor_chain([Atom("z_0"), Atom("z_2"), Atom("z_3"), phi[0], phi[1], phi[2]]),
    )
    outputs, _, _, _ = checked_corpus
    for _, out in outputs["ef-xor"]:
        # the exact size recurrence, its provable per-step growth bound, and
        # the doubling bound on distinct atoms; together these keep the
        # formula polynomial in the graph at logarithmic depth
        sizes = [atom_occurrences(f) for f in out.formulas]
        for i in range(1, len(sizes)):
            encoding = 2 if i % 2 == 0 else 0
            assert sizes[i] == encoding + len(_alpha(i)) + sum(sizes[:i])
            assert sizes[i] <= 2 * sizes[i - 1] + i + 4
        distinct = [
            len({g.name for g in subformulas(f) if isinstance(g, Atom)})
            for f in out.formulas
        ]
        for small, big in zip(distinct, distinct[1:]):
            assert big <= 2 * small + 1
    print("criterion 5 (worked example + size bound): PASS — family matches the "
          "parity rules; exact size recurrence and doubling bounds hold")


@pytest.mark.xfail(
    strict=True,
    reason="counting atom occurrences, the family itself violates the stated "
    "per-step bound: the third formula carries three z-atoms plus the "
    "xor-sum of all earlier formulas, giving 8 > 2*3+1 already in the "
    "operator-primitive view; the bound does hold for distinct atoms, and "
    "the exact recurrence keeps the formula polynomial at log depth",
)
def test_criterion_5_occurrence_count_doubling_bound(checked_corpus):
    outputs, _, _, _ = checked_corpus
    for _, out in outputs["ef-xor"]:
        sizes = [atom_occurrences(f) for f in out.formulas]
        for small, big in zip(sizes, sizes[1:]):
            assert big <= 2 * small + 1


@pytest.mark.xfail(
    strict=True,
    reason="the worked list's third formula also carries z_1, which the "
    "defining parity rules exclude; the z_1 variant provably breaks the "
    "equivalence with the alternating-path predicate (machine checked), so "
    "the generated family must differ from the worked list here",
)
def test_criterion_5_printed_third_formula_variant():
    phi = ef_xor_formulas(3)
    printed = Unary(
        "EF",
        xor_chain([Atom("z_0"), Atom("z_1"), Atom("z_2"), Atom("z_3"),
                   phi[0], phi[1], phi[2]]),
    )
    assert phi[3] == printed


_DUALITIES = (
    ("AG {a}", "!EF !{a}"),
    ("AF {a}", "!EG !{a}"),
    ("AX {a}", "!EX !{a}"),
    ("A[{a} R {b}]", "!E[!{a} U !{b}]"),
    ("A[{a} U {b}]", "!E[!{a} R !{b}]"),
)


def test_criterion_6_dualities():
    for lhs_tpl, rhs_tpl in _DUALITIES:
        rng = random.Random(stable_seed("acceptance6", lhs_tpl))
        for _ in range(MODEL_CASES):
            model = random_model(rng, rng.randint(2, 7))
            a = f"({random_formula(rng, rng.randint(0, 2))})"
            b = f"({random_formula(rng, rng.randint(0, 2))})"
            lhs = parse_formula(lhs_tpl.format(a=a, b=b))
            rhs = parse_formula(rhs_tpl.format(a=a, b=b))
            assert semantics.sat_set(model, lhs) == semantics.sat_set(model, rhs)
    assert fingerprint_dual("AX", CLONES["V"]) == Cell("LOGCFL", "complete")
    assert fingerprint_dual("AG", CLONES["L"]) == Cell("AC1", "hard-only", upper="P")
    print(f"criterion 6 (duality): PASS — 5 dualities x {MODEL_CASES} models, "
          "dual fingerprint cells as stated")


def test_criterion_7_classification():
    subsets = [frozenset(c) for r in range(5)
               for c in itertools.combinations(("!", "&", "|", "^"), r)]
    assert len(subsets) == 16
    for ops in subsets:
        clone = clone_of(ops)
        assert clone_closure(ops) == clone_closure(clone.base)
    assert mc_stronger("EG", "ER")
    assert mc_stronger("EX", "EU")
    for op in ("EX", "EF", "EG", "EU", "ER"):
        assert mc_stronger(op, "EU")
    print("criterion 7 (classification): PASS — 16/16 clone assignments match "
          "the closure oracle; EG ≼ ER, EX ≼ EU, EU maximal")

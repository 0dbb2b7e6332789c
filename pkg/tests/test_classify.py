import itertools

import pytest

from ctlfrag.classify import (
    CLONES,
    Cell,
    clone_of,
    dual_clone,
    fingerprint,
    fingerprint_dual,
    mc_stronger,
    operator_cell,
)

from oracles import clone_closure

ALL_OPS = ("!", "&", "|", "^")
SUBSETS = [frozenset(c) for r in range(5) for c in itertools.combinations(ALL_OPS, r)]


def test_clone_of_matches_closure_oracle_on_all_subsets():
    assert len(SUBSETS) == 16
    for ops in SUBSETS:
        clone = clone_of(ops)
        assert clone_closure(ops) == clone_closure(clone.base), sorted(ops)


def test_clone_of_examples():
    assert clone_of(set()).name == "id"
    assert clone_of({"&", "^"}).name == "BF"
    assert clone_of({"!", "|"}).name == "BF"
    assert clone_of({"^"}).name == "L"
    assert clone_of({"!", "^"}).name == "L"
    assert clone_of({"&", "|"}).name == "M"


def test_clone_of_rejects_unknown_operators():
    with pytest.raises(ValueError):
        clone_of({"->"})


def test_seven_clones_have_distinct_closures():
    closures = {name: clone_closure(c.base) for name, c in CLONES.items()}
    names = sorted(closures)
    for a, b in itertools.combinations(names, 2):
        assert closures[a] != closures[b]


def test_fingerprint_cells():
    assert fingerprint("EU", "id") == Cell("P", "complete")
    assert all(fingerprint("EU", c) == Cell("P", "complete") for c in CLONES)
    assert fingerprint("EF", "M") == Cell("LOGCFL", "complete")
    assert fingerprint("EG", "L") == Cell("P", "complete")
    assert fingerprint("EX", "V") == Cell("NL", "complete")
    assert fingerprint("ER", "id") == Cell("LOGCFL", "complete")
    assert fingerprint("ER", "E") == Cell("LOGCFL", "hard-only", upper="P")
    assert fingerprint("EF", "L") == Cell("AC1", "hard-only", upper="P")


def test_fingerprint_rejects_universal_operators():
    with pytest.raises(ValueError):
        fingerprint("AG", "id")
    with pytest.raises(ValueError):
        fingerprint_dual("EF", "id")


def test_dual_cells():
    assert fingerprint_dual("AX", "V") == Cell("LOGCFL", "complete")
    assert fingerprint_dual("AG", "L") == Cell("AC1", "hard-only", upper="P")
    assert fingerprint_dual("AR", "id") == Cell("P", "complete")
    assert fingerprint_dual("AU", "V") == Cell("LOGCFL", "hard-only", upper="P")


def test_clone_duality_is_an_involution():
    for clone in CLONES.values():
        assert dual_clone(dual_clone(clone)) == clone
    assert dual_clone(CLONES["V"]) == CLONES["E"]
    assert dual_clone(CLONES["M"]) == CLONES["M"]


def test_fingerprint_monotone_in_clone_inclusion():
    rank = {"NL": 0, "LOGCFL": 1, "AC1": 2, "P": 3}
    closures = {name: clone_closure(c.base) for name, c in CLONES.items()}
    for op in ("EX", "EF", "EG", "EU", "ER"):
        for a in CLONES.values():
            for b in CLONES.values():
                if closures[a.name] <= closures[b.name]:
                    assert rank[fingerprint(op, a).cls] <= rank[fingerprint(op, b).cls]


def test_mc_stronger_quoted_relations():
    assert mc_stronger("EG", "ER")
    assert mc_stronger("EX", "EU")


def test_mc_stronger_reflexive_and_eu_maximal():
    ops = ("EX", "EF", "EG", "EU", "ER", "AX", "AG", "AF", "AU", "AR")
    for op in ops:
        assert mc_stronger(op, op)
        assert mc_stronger(op, "EU")
        assert mc_stronger(op, "AR")


def test_mc_stronger_is_a_preorder_and_proper_somewhere():
    ops = ("EX", "EF", "EG", "EU", "ER", "AX", "AG", "AF", "AU", "AR")
    rel = {(a, b) for a in ops for b in ops if mc_stronger(a, b)}
    for a, b in rel:
        for c in ops:
            if (b, c) in rel:
                assert (a, c) in rel
    assert not mc_stronger("EU", "ER")
    assert not mc_stronger("ER", "EG")


def test_operator_cell_covers_all_ten():
    for op in ("EX", "EF", "EG", "EU", "ER", "AX", "AG", "AF", "AU", "AR"):
        for clone in CLONES.values():
            cell = operator_cell(op, clone)
            assert cell.cls in ("NL", "LOGCFL", "AC1", "P")

"""Boolean-clone classification, complexity fingerprints, and mc-strength.

Only seven Boolean clones matter for model checking, identified here by
their standard bases: id (no operator), V = [|], E = [&], M = [&,|],
N = [!], L = [^], BF = [&,^].  Classification closes the operator set
under composition with both constants available (the model-checking
setting supplies them through `true` and duplicated atoms), so for
example {!,|} lands on BF while {!,^} stays linear.

The fingerprint table assigns each (existential operator, clone) pair its
complexity cell; the two cells without matching bounds (ER with E, EF
with L) carry their hardness class, qualifier "hard-only", and the known
P upper bound.  Universal operators are classified through their duals:
the dual of a clone swaps & and |, the four classes are closed under
complement, so class and qualifier carry over unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

CLASSES = ("NL", "LOGCFL", "AC1", "P")
_RANK = {c: i for i, c in enumerate(CLASSES)}

EXISTENTIAL_OPS = ("EX", "EF", "EG", "EU", "ER")
UNIVERSAL_OPS = ("AX", "AG", "AF", "AR", "AU")
DUAL_OP = {"AX": "EX", "AG": "EF", "AF": "EG", "AR": "EU", "AU": "ER"}


@dataclass(frozen=True)
class Clone:
    name: str
    base: frozenset

    def __str__(self):
        return self.name


CLONES = {
    "id": Clone("id", frozenset()),
    "V": Clone("V", frozenset({"|"})),
    "E": Clone("E", frozenset({"&"})),
    "M": Clone("M", frozenset({"&", "|"})),
    "N": Clone("N", frozenset({"!"})),
    "L": Clone("L", frozenset({"^"})),
    "BF": Clone("BF", frozenset({"&", "^"})),
}

_DUAL_CLONE = {"id": "id", "V": "E", "E": "V", "M": "M", "N": "N", "L": "L", "BF": "BF"}


def clone_of(ops) -> Clone:
    """The clone generated (with constants) by a set of Boolean operators."""
    ops = frozenset(ops)
    unknown = ops - {"!", "&", "|", "^"}
    if unknown:
        raise ValueError(f"unknown Boolean operators: {sorted(unknown)}")
    lattice = "&" in ops or "|" in ops
    if "^" in ops and lattice:
        return CLONES["BF"]
    if "!" in ops and lattice:
        return CLONES["BF"]
    if "^" in ops:
        return CLONES["L"]
    if "!" in ops:
        return CLONES["N"]
    if "&" in ops and "|" in ops:
        return CLONES["M"]
    if "&" in ops:
        return CLONES["E"]
    if "|" in ops:
        return CLONES["V"]
    return CLONES["id"]


def dual_clone(clone: Clone) -> Clone:
    return CLONES[_DUAL_CLONE[clone.name]]


@dataclass(frozen=True)
class Cell:
    """One fingerprint cell: a complexity class plus a completeness
    qualifier; open cells carry their best known upper bound."""

    cls: str
    qualifier: str  # "complete" | "hard-only"
    upper: str | None = None

    def __str__(self):
        if self.qualifier == "complete":
            return f"{self.cls}-complete"
        return f"{self.cls}-hard (in {self.upper})"


def _c(cls):
    return Cell(cls, "complete")


_FINGERPRINT = {
    "EU": {name: _c("P") for name in CLONES},
    "EX": {
        "id": _c("NL"), "V": _c("NL"),
        "E": _c("LOGCFL"), "M": _c("LOGCFL"),
        "N": _c("P"), "L": _c("P"), "BF": _c("P"),
    },
    "ER": {
        "id": _c("LOGCFL"),
        "E": Cell("LOGCFL", "hard-only", upper="P"),
        "V": _c("P"), "M": _c("P"), "N": _c("P"), "L": _c("P"), "BF": _c("P"),
    },
    "EG": {
        "id": _c("NL"), "V": _c("NL"), "E": _c("NL"), "N": _c("NL"),
        "M": _c("P"), "L": _c("P"), "BF": _c("P"),
    },
    "EF": {
        "id": _c("NL"), "V": _c("NL"), "N": _c("NL"),
        "E": _c("LOGCFL"), "M": _c("LOGCFL"),
        "L": Cell("AC1", "hard-only", upper="P"),
        "BF": _c("P"),
    },
}


def _as_clone(clone) -> Clone:
    if isinstance(clone, Clone):
        return clone
    return CLONES[clone]


def fingerprint(op: str, clone) -> Cell:
    """The complexity cell of model checking one existential operator
    combined with one clone of Boolean operators."""
    if op not in EXISTENTIAL_OPS:
        raise ValueError(f"not an existential operator: {op!r}")
    return _FINGERPRINT[op][_as_clone(clone).name]


def fingerprint_dual(op: str, clone) -> Cell:
    """The cell of a universal operator, via its existential dual and the
    dual clone; the classes are complement-closed, so the cell transfers."""
    if op not in UNIVERSAL_OPS:
        raise ValueError(f"not a universal operator: {op!r}")
    return fingerprint(DUAL_OP[op], dual_clone(_as_clone(clone)))


def operator_cell(op: str, clone) -> Cell:
    """Fingerprint cell for any of the ten operators."""
    if op in EXISTENTIAL_OPS:
        return fingerprint(op, clone)
    return fingerprint_dual(op, clone)


def mc_stronger(weaker: str, stronger: str) -> bool:
    """True when for every clone the `weaker` operator's class is at most
    the `stronger` one's, comparing open cells by their hardness class."""
    for op in (weaker, stronger):
        if op not in EXISTENTIAL_OPS and op not in UNIVERSAL_OPS:
            raise ValueError(f"not a CTL operator: {op!r}")
    return all(
        _RANK[operator_cell(weaker, clone).cls] <= _RANK[operator_cell(stronger, clone).cls]
        for clone in CLONES.values()
    )

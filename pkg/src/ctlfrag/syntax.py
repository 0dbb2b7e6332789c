"""CTL formulas: abstract syntax, parser, printer, and fragment utilities.

The grammar (ASCII):

    atoms       [a-zA-Z_][a-zA-Z0-9_]*   (reserved words excluded)
    constants   true
    boolean     !f    f & g    f | g    f ^ g
    unary       EX f  AX f  EF f  AG f  EG f  AF f
    binary      E[f U g]  A[f U g]  E[f R g]  A[f R g]

Precedence: unary (!, temporal) > & > | > ^, with &, | and ^ associating
to the left.  Bracketed binary operators are self-delimiting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

EXISTENTIAL_UNARY = ("EX", "EF", "EG")
UNIVERSAL_UNARY = ("AX", "AF", "AG")
UNARY_OPS = ("EX", "AX", "EF", "AG", "EG", "AF")
EXISTENTIAL_BINARY = ("EU", "ER")
UNIVERSAL_BINARY = ("AU", "AR")
BINARY_OPS = ("EU", "AU", "ER", "AR")
TEMPORAL_OPS = UNARY_OPS + BINARY_OPS

NOT, AND, OR, XOR = "!", "&", "|", "^"
BOOLEAN_OPS = (NOT, AND, OR, XOR)

_RESERVED = frozenset({"true", "E", "A", "U", "R", *UNARY_OPS})
_ATOM_RE = re.compile(r"[a-zA-Z_][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class of formula nodes.  Nodes are immutable and hashable."""

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str

    def __post_init__(self):
        if not _ATOM_RE.match(self.name) or self.name in _RESERVED:
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Xor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Unary(Formula):
    op: str
    sub: Formula

    def __post_init__(self):
        if self.op not in UNARY_OPS:
            raise ValueError(f"unknown unary temporal operator {self.op!r}")


@dataclass(frozen=True)
class Binary(Formula):
    op: str
    left: Formula
    right: Formula

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown binary temporal operator {self.op!r}")


@dataclass(frozen=True)
class FragmentSignature:
    """The temporal and Boolean operators occurring in a formula."""

    temporal_ops: frozenset
    boolean_ops: frozenset


def xor_chain(parts) -> Formula:
    """Left-nested ^-combination of one or more formulas."""
    parts = list(parts)
    if not parts:
        raise ValueError("xor_chain needs at least one formula")
    acc = parts[0]
    for p in parts[1:]:
        acc = Xor(acc, p)
    return acc


def subformulas(phi: Formula):
    """Yield every node of the tree, parents before children."""
    stack = [phi]
    while stack:
        node = stack.pop()
        yield node
        if isinstance(node, Not):
            stack.append(node.sub)
        elif isinstance(node, (And, Or, Xor)):
            stack.append(node.right)
            stack.append(node.left)
        elif isinstance(node, Unary):
            stack.append(node.sub)
        elif isinstance(node, Binary):
            stack.append(node.right)
            stack.append(node.left)


def atom_occurrences(phi: Formula) -> int:
    """Number of atom (and `true`) occurrences; the leaf-count formula size."""
    return sum(1 for f in subformulas(phi) if isinstance(f, (Atom, Top)))


def signature(phi: Formula) -> FragmentSignature:
    temporal = set()
    boolean = set()
    for node in subformulas(phi):
        if isinstance(node, (Unary, Binary)):
            temporal.add(node.op)
        elif isinstance(node, Not):
            boolean.add(NOT)
        elif isinstance(node, And):
            boolean.add(AND)
        elif isinstance(node, Or):
            boolean.add(OR)
        elif isinstance(node, Xor):
            boolean.add(XOR)
    return FragmentSignature(frozenset(temporal), frozenset(boolean))


def dual_step(phi: Formula) -> Formula:
    """Rewrite one universal operator at the root into negated existential form."""
    if isinstance(phi, Unary) and phi.op in UNIVERSAL_UNARY:
        dual = {"AX": "EX", "AF": "EG", "AG": "EF"}[phi.op]
        return Not(Unary(dual, Not(phi.sub)))
    if isinstance(phi, Binary) and phi.op in UNIVERSAL_BINARY:
        dual = {"AR": "EU", "AU": "ER"}[phi.op]
        return Not(Binary(dual, Not(phi.left), Not(phi.right)))
    return phi


def dualize(phi: Formula) -> Formula:
    """Eliminate all universal operators via AX f = !EX!f and its companions."""
    if isinstance(phi, (Atom, Top)):
        return phi
    if isinstance(phi, Not):
        return Not(dualize(phi.sub))
    if isinstance(phi, (And, Or, Xor)):
        return type(phi)(dualize(phi.left), dualize(phi.right))
    if isinstance(phi, Unary):
        if phi.op in UNIVERSAL_UNARY:
            dual = {"AX": "EX", "AF": "EG", "AG": "EF"}[phi.op]
            return Not(Unary(dual, Not(dualize(phi.sub))))
        return Unary(phi.op, dualize(phi.sub))
    if isinstance(phi, Binary):
        if phi.op in UNIVERSAL_BINARY:
            dual = {"AR": "EU", "AU": "ER"}[phi.op]
            return Not(Binary(dual, Not(dualize(phi.left)), Not(dualize(phi.right))))
        return Binary(phi.op, dualize(phi.left), dualize(phi.right))
    raise TypeError(f"not a formula: {phi!r}")


# ---------------------------------------------------------------------------
# printing

_PREC_XOR, _PREC_OR, _PREC_AND, _PREC_UNARY, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(phi: Formula) -> int:
    if isinstance(phi, Xor):
        return _PREC_XOR
    if isinstance(phi, Or):
        return _PREC_OR
    if isinstance(phi, And):
        return _PREC_AND
    if isinstance(phi, (Not, Unary)):
        return _PREC_UNARY
    return _PREC_ATOM


def _render(phi: Formula, min_prec: int) -> str:
    if _prec(phi) < min_prec:
        return "(" + _render(phi, _PREC_XOR) + ")"
    if isinstance(phi, Atom):
        return phi.name
    if isinstance(phi, Top):
        return "true"
    if isinstance(phi, Not):
        return "!" + _render(phi.sub, _PREC_UNARY)
    if isinstance(phi, Unary):
        return phi.op + " " + _render(phi.sub, _PREC_UNARY)
    if isinstance(phi, And):
        return _render(phi.left, _PREC_AND) + " & " + _render(phi.right, _PREC_UNARY)
    if isinstance(phi, Or):
        return _render(phi.left, _PREC_OR) + " | " + _render(phi.right, _PREC_AND)
    if isinstance(phi, Xor):
        return _render(phi.left, _PREC_XOR) + " ^ " + _render(phi.right, _PREC_OR)
    if isinstance(phi, Binary):
        quant, temp = phi.op[0], phi.op[1]
        left = _render(phi.left, _PREC_XOR)
        right = _render(phi.right, _PREC_XOR)
        return f"{quant}[{left} {temp} {right}]"
    raise TypeError(f"not a formula: {phi!r}")


def format_formula(phi: Formula) -> str:
    return _render(phi, _PREC_XOR)


# ---------------------------------------------------------------------------
# parsing

class FormulaSyntaxError(ValueError):
    """Malformed formula text; `position` is the 0-based offset of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(r"\s*(?:([a-zA-Z_][a-zA-Z0-9_]*)|([!&|^()\[\]]))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", at)
        word, punct = match.group(1), match.group(2)
        tokens.append((word or punct, match.start(1) if word else match.start(2)))
        pos = match.end()
    tokens.append((None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i][0]

    def pos(self):
        return self.tokens[self.i][1]

    def advance(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        tok, pos = self.advance()
        if tok != value:
            raise FormulaSyntaxError(f"expected {value!r}, found {tok!r}", pos)

    def parse(self) -> Formula:
        phi = self.xor()
        tok, pos = self.tokens[self.i]
        if tok is not None:
            raise FormulaSyntaxError(f"trailing input {tok!r}", pos)
        return phi

    def xor(self) -> Formula:
        phi = self.or_()
        while self.peek() == "^":
            self.advance()
            phi = Xor(phi, self.or_())
        return phi

    def or_(self) -> Formula:
        phi = self.and_()
        while self.peek() == "|":
            self.advance()
            phi = Or(phi, self.and_())
        return phi

    def and_(self) -> Formula:
        phi = self.unary()
        while self.peek() == "&":
            self.advance()
            phi = And(phi, self.unary())
        return phi

    def unary(self) -> Formula:
        tok, pos = self.advance()
        if tok == "!":
            return Not(self.unary())
        if tok in UNARY_OPS:
            return Unary(tok, self.unary())
        if tok in ("E", "A"):
            self.expect("[")
            left = self.xor()
            sep, sep_pos = self.advance()
            if sep not in ("U", "R"):
                raise FormulaSyntaxError(f"expected 'U' or 'R', found {sep!r}", sep_pos)
            right = self.xor()
            self.expect("]")
            return Binary(tok + sep, left, right)
        if tok == "(":
            phi = self.xor()
            self.expect(")")
            return phi
        if tok == "true":
            return Top()
        if tok is not None and _ATOM_RE.match(tok) and tok not in _RESERVED:
            return Atom(tok)
        raise FormulaSyntaxError(f"expected a formula, found {tok!r}", pos)


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()

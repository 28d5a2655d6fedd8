"""A small expression language for states, operators and scalars.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | atom
    atom   := NUMBER ['/' NUMBER] | 'i' | 'I' | '(' expr ')'
            | 'th(' INT ')' | 'd(' INT ')' | 'P(' INT ')' | 'eps(' INT ',' INT ')'
            | 's(' [INT (',' INT)*] ')'
            | 'T(' expr ')' | 'conj(' expr ')'
            | 'col(' list ')' | 'row(' list ')' | 'mat(' list (';' list)* ')'

``s(1, 2)`` is the basis state ``theta^1 theta^2`` and ``s()`` the unit
state.  ``*`` composes operators, applies an operator to a state and scales
by scalars.  Constant scalar subexpressions are folded while parsing, so
``print(parse(s))`` is a fixed point of ``print . parse``.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .grassmann import AlgebraSignature, State, conjugate_state
from .matrix_iso import MatrixDense, embed_column, embed_matrix, embed_row
from .operators import (
    Operator,
    op_generator_deriv,
    op_generator_theta,
    op_identity,
    projector,
)
from .scalars import JetScalar, QQi, format_fraction

__all__ = [
    "DslError",
    "DslTypeError",
    "Node",
    "Num",
    "Eps",
    "Gen",
    "Proj",
    "Ident",
    "StateAtom",
    "Col",
    "Row",
    "Mat",
    "Sum",
    "Product",
    "Scale",
    "Transpose",
    "Conj",
    "parse",
    "to_source",
    "evaluate",
    "random_expression",
]


class DslError(ValueError):
    """Syntax or range error, with 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class DslTypeError(TypeError):
    """Operands of incompatible kinds (e.g. a state applied to a state)."""


# -- AST -------------------------------------------------------------------------

class Node:
    __slots__ = ()


@dataclass(frozen=True)
class Num(Node):
    value: QQi


@dataclass(frozen=True)
class Eps(Node):
    upper: int
    lower: int


@dataclass(frozen=True)
class Gen(Node):
    kind: str  # "th" or "d"
    index: int


@dataclass(frozen=True)
class Proj(Node):
    rank: int


@dataclass(frozen=True)
class Ident(Node):
    pass


@dataclass(frozen=True)
class StateAtom(Node):
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class Col(Node):
    entries: Tuple[Node, ...]


@dataclass(frozen=True)
class Row(Node):
    entries: Tuple[Node, ...]


@dataclass(frozen=True)
class Mat(Node):
    rows: Tuple[Tuple[Node, ...], ...]


@dataclass(frozen=True)
class Sum(Node):
    terms: Tuple[Node, ...]


@dataclass(frozen=True)
class Product(Node):
    factors: Tuple[Node, ...]


@dataclass(frozen=True)
class Scale(Node):
    coef: QQi
    body: Node


@dataclass(frozen=True)
class Transpose(Node):
    body: Node


@dataclass(frozen=True)
class Conj(Node):
    body: Node


# -- normalizing constructors -------------------------------------------------------

def _make_product(factors: List[Node]) -> Node:
    coef = QQi(1)
    rest: List[Node] = []
    for f in factors:
        if isinstance(f, Num):
            coef = coef * f.value
        elif isinstance(f, Scale):
            coef = coef * f.coef
            rest.extend(f.body.factors if isinstance(f.body, Product) else [f.body])
        elif isinstance(f, Product):
            rest.extend(f.factors)
        else:
            rest.append(f)
    if not rest:
        return Num(coef)
    body = rest[0] if len(rest) == 1 else Product(tuple(rest))
    return body if coef == 1 else Scale(coef, body)


def _make_sum(terms: List[Node]) -> Node:
    flat: List[Node] = []
    for t in terms:
        flat.extend(t.terms if isinstance(t, Sum) else [t])
    if all(isinstance(t, Num) for t in flat):
        total = QQi(0)
        for t in flat:
            total = total + t.value
        return Num(total)
    return flat[0] if len(flat) == 1 else Sum(tuple(flat))


def _negate(node: Node) -> Node:
    return _make_product([Num(QQi(-1)), node])


# -- tokenizer ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    pos: int


def _tokenize(source: str) -> List[_Tok]:
    toks = []
    pos = 0
    while True:
        m = _TOKEN.match(source, pos)
        if not m:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(_Tok("num", num, start))
        elif name is not None:
            toks.append(_Tok("name", name, start))
        else:
            if op not in "+-*/(),;":
                raise DslError(f"unexpected character {op!r}", *_linecol(source, start))
            toks.append(_Tok("op", op, start))
        pos = m.end()
    toks.append(_Tok("end", "", len(source)))
    return toks


def _linecol(source: str, pos: int) -> Tuple[int, int]:
    line = source.count("\n", 0, pos) + 1
    col = pos - (source.rfind("\n", 0, pos) + 1) + 1
    return line, col


# -- parser -------------------------------------------------------------------------

class _Parser:
    def __init__(self, source: str, sig: AlgebraSignature):
        self.source = source
        self.sig = sig
        self.toks = _tokenize(source)
        self.i = 0

    def error(self, message: str, tok: Optional[_Tok] = None):
        tok = tok or self.peek()
        return DslError(message, *_linecol(self.source, tok.pos))

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.peek()
        if tok.text != text or tok.kind == "num":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected {text!r}, found {found}")
        return self.take()

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok.kind == "op" and tok.text == text

    def parse(self) -> Node:
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self) -> Node:
        terms = [self.term()]
        while self.at("+") or self.at("-"):
            op = self.take().text
            t = self.term()
            terms.append(t if op == "+" else _negate(t))
        return _make_sum(terms)

    def term(self) -> Node:
        factors = [self.factor()]
        while self.at("*"):
            self.take()
            factors.append(self.factor())
        return _make_product(factors) if len(factors) > 1 else factors[0]

    def factor(self) -> Node:
        if self.at("-"):
            self.take()
            return _negate(self.factor())
        return self.atom()

    def integer(self, what: str) -> Tuple[int, _Tok]:
        tok = self.peek()
        if tok.kind != "num":
            raise self.error(f"expected {what}")
        self.take()
        return int(tok.text), tok

    def index(self) -> int:
        value, tok = self.integer("a generator index")
        if not 1 <= value <= self.sig.n_total:
            raise self.error(f"generator index {value} outside 1..{self.sig.n_total}", tok)
        return value

    def entry_list(self, closers: str) -> List[Node]:
        items = [self.expr()]
        while self.at(","):
            self.take()
            items.append(self.expr())
        if self.peek().text not in closers or self.peek().kind != "op":
            raise self.error(f"expected one of {', '.join(repr(c) for c in closers)}")
        return items

    def atom(self) -> Node:
        tok = self.peek()
        if tok.kind == "num":
            self.take()
            value = Fraction(int(tok.text))
            if self.at("/"):
                self.take()
                den, dtok = self.integer("a denominator")
                if den == 0:
                    raise self.error("zero denominator", dtok)
                value = value / den
            return Num(QQi(value))
        if tok.kind == "op" and tok.text == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind != "name":
            found = "end of input" if tok.kind == "end" else repr(tok.text)
            raise self.error(f"expected an expression, found {found}")
        name = tok.text
        self.take()
        if name == "i":
            return Num(QQi(0, 1))
        if name == "I":
            return Ident()
        if name in ("th", "d"):
            self.expect("(")
            a = self.index()
            self.expect(")")
            return Gen(name, a)
        if name == "P":
            self.expect("(")
            k, ktok = self.integer("a rank")
            if not 0 <= k <= self.sig.n_total:
                raise self.error(f"rank {k} outside 0..{self.sig.n_total}", ktok)
            self.expect(")")
            return Proj(k)
        if name == "eps":
            self.expect("(")
            u = self.index()
            self.expect(",")
            l = self.index()
            self.expect(")")
            return Eps(u, l)
        if name == "s":
            self.expect("(")
            idx: List[int] = []
            if not self.at(")"):
                idx.append(self.index())
                while self.at(","):
                    self.take()
                    here = self.peek()
                    idx.append(self.index())
                    if idx[-1] <= idx[-2]:
                        raise self.error("state indices must be strictly increasing", here)
            self.expect(")")
            return StateAtom(tuple(idx))
        if name in ("T", "conj"):
            self.expect("(")
            body = self.expr()
            self.expect(")")
            return Transpose(body) if name == "T" else Conj(body)
        if name in ("col", "row"):
            self.expect("(")
            items = self.entry_list(")")
            if len(items) != self.sig.n_total:
                raise self.error(f"{name} needs {self.sig.n_total} entries, got {len(items)}")
            self.expect(")")
            return Col(tuple(items)) if name == "col" else Row(tuple(items))
        if name == "mat":
            self.expect("(")
            rows = [self.entry_list(";)")]
            while self.at(";"):
                self.take()
                rows.append(self.entry_list(";)"))
            n = self.sig.n_total
            if len(rows) != n or any(len(r) != n for r in rows):
                raise self.error(f"mat needs {n}x{n} entries")
            self.expect(")")
            return Mat(tuple(tuple(r) for r in rows))
        raise self.error(f"unknown symbol {name!r}", tok)


def parse(source: str, sig: AlgebraSignature) -> Node:
    """Parse ``source`` into a normalized AST; raises :class:`DslError`."""
    return _Parser(source, sig).parse()


# -- printer ------------------------------------------------------------------------

def _num_source(v: QQi) -> str:
    if not v.im:
        return format_fraction(v.re)
    if v.im == 1:
        imag = "i"
    elif v.im == -1:
        imag = "-i"
    else:
        imag = f"{format_fraction(v.im)}*i"
    if not v.re:
        return imag
    sep = " - " if imag.startswith("-") else " + "
    return f"({format_fraction(v.re)}{sep}{imag.lstrip('-')})"


def to_source(node: Node) -> str:
    """Canonical text for an AST."""
    if isinstance(node, Num):
        return _num_source(node.value)
    if isinstance(node, Eps):
        return f"eps({node.upper},{node.lower})"
    if isinstance(node, Gen):
        return f"{node.kind}({node.index})"
    if isinstance(node, Proj):
        return f"P({node.rank})"
    if isinstance(node, Ident):
        return "I"
    if isinstance(node, StateAtom):
        return "s(" + ",".join(str(a) for a in node.indices) + ")"
    if isinstance(node, Col):
        return "col(" + ", ".join(to_source(e) for e in node.entries) + ")"
    if isinstance(node, Row):
        return "row(" + ", ".join(to_source(e) for e in node.entries) + ")"
    if isinstance(node, Mat):
        return "mat(" + "; ".join(", ".join(to_source(e) for e in r) for r in node.rows) + ")"
    if isinstance(node, Sum):
        return " + ".join(to_source(t) for t in node.terms)
    if isinstance(node, Product):
        return "*".join(_factor_source(f) for f in node.factors)
    if isinstance(node, Scale):
        return f"{_num_source(node.coef)}*{_factor_source(node.body)}"
    if isinstance(node, Transpose):
        return f"T({to_source(node.body)})"
    if isinstance(node, Conj):
        return f"conj({to_source(node.body)})"
    raise TypeError(f"not an AST node: {node!r}")


def _factor_source(node: Node) -> str:
    text = to_source(node)
    return f"({text})" if isinstance(node, (Sum, Scale)) else text


# -- evaluation ---------------------------------------------------------------------

Value = Union[Operator, State, JetScalar]


def _kind(v: Value) -> str:
    if isinstance(v, Operator):
        return "operator"
    if isinstance(v, State):
        return "state"
    return "scalar"


def _scalar(node: Node, sig) -> JetScalar:
    v = evaluate(node, sig)
    if not isinstance(v, JetScalar):
        raise DslTypeError(f"expected a scalar entry, got {_kind(v)} {to_source(node)}")
    return v


def _mul(a: Value, b: Value) -> Value:
    ka, kb = _kind(a), _kind(b)
    if ka == "scalar":
        return a * b if kb == "scalar" else b.scale(a)
    if kb == "scalar":
        return a.scale(b)
    if ka == "operator":
        return a @ b
    raise DslTypeError(f"cannot multiply a state by {'a state' if kb == 'state' else 'an operator'}")


def evaluate(node: Node, sig: AlgebraSignature) -> Value:
    """Evaluate an AST exactly; the result kind follows from the root."""
    if isinstance(node, Num):
        return JetScalar(node.value)
    if isinstance(node, Eps):
        return JetScalar.eps(f"e_{node.upper}_{node.lower}")
    if isinstance(node, Gen):
        return (op_generator_theta if node.kind == "th" else op_generator_deriv)(sig, node.index)
    if isinstance(node, Proj):
        return projector(sig, node.rank)
    if isinstance(node, Ident):
        return op_identity(sig)
    if isinstance(node, StateAtom):
        return State.basis_state(sig, *node.indices)
    if isinstance(node, Col):
        return embed_column([_scalar(e, sig) for e in node.entries], sig)
    if isinstance(node, Row):
        return embed_row([_scalar(e, sig) for e in node.entries], sig)
    if isinstance(node, Mat):
        return embed_matrix(MatrixDense.from_rows([[_scalar(e, sig) for e in r] for r in node.rows]), sig)
    if isinstance(node, Sum):
        values = [evaluate(t, sig) for t in node.terms]
        kinds = {_kind(v) for v in values}
        if len(kinds) > 1:
            raise DslTypeError(f"cannot add {' and '.join(sorted(kinds))}")
        total = values[0]
        for v in values[1:]:
            total = total + v
        return total
    if isinstance(node, Product):
        value = evaluate(node.factors[0], sig)
        for f in node.factors[1:]:
            value = _mul(value, evaluate(f, sig))
        return value
    if isinstance(node, Scale):
        return _mul(JetScalar(node.coef), evaluate(node.body, sig))
    if isinstance(node, Transpose):
        v = evaluate(node.body, sig)
        if isinstance(v, State):
            raise DslTypeError("cannot transpose a state")
        return v.transpose() if isinstance(v, Operator) else v
    if isinstance(node, Conj):
        v = evaluate(node.body, sig)
        if isinstance(v, State):
            return conjugate_state(v)
        return v.conjugate()
    raise TypeError(f"not an AST node: {node!r}")


# -- random expressions ---------------------------------------------------------------

def _random_num(rng: random.Random) -> Num:
    re_ = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    im = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.3 else Fraction(0)
    return Num(QQi(re_, im))


def random_expression(rng: random.Random, sig: AlgebraSignature, depth: int = 3) -> Node:
    """A random well-formed operator expression (normalized like parser output)."""
    n = sig.n_total
    if depth <= 0 or rng.random() < 0.3:
        choice = rng.randrange(5)
        if choice == 0:
            return Gen("th", rng.randint(1, n))
        if choice == 1:
            return Gen("d", rng.randint(1, n))
        if choice == 2:
            return Proj(rng.randint(0, n))
        if choice == 3:
            return Ident()
        if rng.random() < 0.5:
            return Col(tuple(_random_num(rng) for _ in range(n)))
        return Mat(tuple(tuple(_random_num(rng) for _ in range(n)) for _ in range(n)))
    choice = rng.randrange(5)
    if choice == 0:
        return _make_sum([random_expression(rng, sig, depth - 1) for _ in range(rng.randint(2, 3))])
    if choice == 1:
        return _make_product([random_expression(rng, sig, depth - 1) for _ in range(rng.randint(2, 3))])
    if choice == 2:
        scalar = Eps(rng.randint(1, n), rng.randint(1, n)) if rng.random() < 0.3 else _random_num(rng)
        return _make_product([scalar, random_expression(rng, sig, depth - 1)])
    if choice == 3:
        return Transpose(random_expression(rng, sig, depth - 1))
    return Conj(random_expression(rng, sig, depth - 1))

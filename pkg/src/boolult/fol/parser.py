"""Text syntax for formulas.

Grammar (loosest binding first)::

    formula     := implication [ "@Vcheck" ]
    implication := disjunction [ "->" implication ]
    disjunction := conjunction { "|" conjunction }
    conjunction := unary { "&" unary }
    unary       := "!" unary
                 | ("exists" | "forall") IDENT "." implication
                 | primary
    primary     := "(" formula ")" [ "@Vcheck" ] | "true" | "false" | atomic
    atomic      := IDENT "(" [ IDENT { "," IDENT } ] ")"          relation
                 | IDENT "=" IDENT "(" [ args ] ")"                 y = f(s...)
                 | IDENT "=" IDENT                                  equality
                 | IDENT "in" "V"                                   the V̌ predicate
                 | IDENT "in" IDENT                                 membership

Quantifier bodies extend as far right as possible.  ``@Vcheck`` bounds
every quantifier of the preceding formula by the V̌ predicate.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (
    SET_THEORY, And, Atom, Const, Eq, Exists, Forall, FuncEq, Implies, Not, Or,
    Signature, SignatureError, relativize,
)


class FormulaSyntaxError(ValueError):
    def __init__(self, msg: str, position: int):
        super().__init__(f"{msg} at position {position}")
        self.position = position


KEYWORDS = {"exists", "forall", "in", "true", "false"}
_TOKEN = re.compile(r"\s*(?:(?P<arrow>->)|(?P<vcheck>@Vcheck)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[&|!().,=]))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    out = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise FormulaSyntaxError(f"unexpected character {src[i]!r}", i)
        start = m.start(m.lastgroup)
        kind = m.lastgroup
        text = m.group(kind)
        if kind == "ident" and text in KEYWORDS:
            kind = "kw"
        out.append(Token(kind, text, start))
        i = m.end()
    out.append(Token("eof", "", n))
    return out


class _Parser:
    def __init__(self, src: str, sig: Signature):
        self.toks = tokenize(src)
        self.k = 0
        self.sig = sig

    def peek(self) -> Token:
        return self.toks[self.k]

    def take(self) -> Token:
        t = self.toks[self.k]
        self.k += 1
        return t

    def accept(self, text: str) -> bool:
        if self.peek().text == text and self.peek().kind != "ident":
            self.k += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        t = self.peek()
        if t.text != text or t.kind == "ident":
            raise FormulaSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.take()

    def ident(self) -> Token:
        t = self.peek()
        if t.kind != "ident":
            raise FormulaSyntaxError(f"expected an identifier, found {t.text or 'end of input'!r}", t.pos)
        if t.text == "V":
            raise FormulaSyntaxError("'V' is reserved for the V-check predicate", t.pos)
        return self.take()

    # grammar
    def formula(self):
        f = self.implication()
        if self.peek().kind == "vcheck":
            self.take()
            f = relativize(f)
        return f

    def implication(self):
        left = self.disjunction()
        if self.peek().kind == "arrow":
            self.take()
            return Implies(left, self.implication())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.accept("|"):
            f = Or(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.accept("&"):
            f = And(f, self.unary())
        return f

    def unary(self):
        t = self.peek()
        if t.text == "!" and t.kind == "sym":
            self.take()
            return Not(self.unary())
        if t.kind == "kw" and t.text in ("exists", "forall"):
            self.take()
            v = self.ident().text
            self.expect(".")
            body = self.implication()
            return Exists(v, body) if t.text == "exists" else Forall(v, body)
        return self.primary()

    def primary(self):
        t = self.peek()
        if t.text == "(" and t.kind == "sym":
            self.take()
            f = self.formula()
            self.expect(")")
            if self.peek().kind == "vcheck":
                self.take()
                f = relativize(f)
            return f
        if t.kind == "kw" and t.text in ("true", "false"):
            self.take()
            return Const(t.text == "true")
        return self.atomic()

    def args(self) -> tuple:
        self.expect("(")
        out = []
        if not self.accept(")"):
            out.append(self.ident().text)
            while self.accept(","):
                out.append(self.ident().text)
            self.expect(")")
        return tuple(out)

    def atomic(self):
        t = self.peek()
        if t.kind != "ident":
            raise FormulaSyntaxError(f"expected a formula, found {t.text or 'end of input'!r}", t.pos)
        if t.text == "V":
            raise FormulaSyntaxError("'V' is reserved for the V-check predicate", t.pos)
        self.take()
        nxt = self.peek()
        if nxt.text == "(" and nxt.kind == "sym":
            args = self.args()
            self._check_rel(t, len(args))
            return Atom(t.text, args)
        if nxt.text == "=" and nxt.kind == "sym":
            self.take()
            rhs = self.peek()
            if rhs.kind != "ident" or rhs.text == "V":
                raise FormulaSyntaxError("expected a variable or function after '='", rhs.pos)
            self.take()
            if self.peek().text == "(" and self.peek().kind == "sym":
                args = self.args()
                ar = self.sig.function_arity(rhs.text)
                if ar is None:
                    raise SignatureError(f"unknown function symbol {rhs.text!r}", rhs.pos)
                if ar != len(args):
                    raise SignatureError(f"{rhs.text} expects {ar} arguments, got {len(args)}", rhs.pos)
                return FuncEq(t.text, rhs.text, args)
            return Eq(t.text, rhs.text)
        if nxt.kind == "kw" and nxt.text == "in":
            self.take()
            rhs = self.peek()
            if rhs.kind == "ident" and rhs.text == "V":
                self.take()
                self._check_rel(Token("ident", "V", nxt.pos), 1)
                return Atom("V", (t.text,))
            y = self.ident().text
            self._check_rel(Token("ident", "in", nxt.pos), 2)
            return Atom("in", (t.text, y))
        raise FormulaSyntaxError(f"expected '(', '=' or 'in' after {t.text!r}", nxt.pos)

    def _check_rel(self, t: Token, n: int):
        ar = self.sig.relation_arity(t.text)
        if ar is None:
            raise SignatureError(f"unknown relation symbol {t.text!r}", t.pos)
        if ar != n:
            raise SignatureError(f"{t.text} expects {ar} arguments, got {n}", t.pos)


def parse(source: str, sig: Signature = SET_THEORY):
    p = _Parser(source, sig)
    f = p.formula()
    t = p.peek()
    if t.kind != "eof":
        raise FormulaSyntaxError(f"unexpected {t.text!r}", t.pos)
    return f


def to_text(phi) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(phi, Atom):
        if phi.pred == "in":
            return f"{phi.args[0]} in {phi.args[1]}"
        if phi.pred == "V":
            return f"{phi.args[0]} in V"
        return f"{phi.pred}({','.join(phi.args)})"
    if isinstance(phi, Eq):
        return f"{phi.left} = {phi.right}"
    if isinstance(phi, FuncEq):
        return f"{phi.target} = {phi.func}({','.join(phi.args)})"
    if isinstance(phi, Const):
        return "true" if phi.value else "false"
    if isinstance(phi, Not):
        return "!" + _wrap(phi.body)
    if isinstance(phi, And):
        return f"{_wrap(phi.left)} & {_wrap(phi.right)}"
    if isinstance(phi, Exists):
        return f"exists {phi.var}. {_wrap(phi.body)}"
    raise TypeError(phi)


def _wrap(phi) -> str:
    s = to_text(phi)
    if isinstance(phi, (Atom, Const, Not)) and not (isinstance(phi, Atom) and phi.pred == "in"):
        return s
    return f"({s})"

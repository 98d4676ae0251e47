"""Surface syntax: lexer, parser, elaborator and canonical printer.

Declarations take the form::

    coh name (x1 : A1) ... (xn : An) : A ;

Types are ``*`` optionally extended by arrow segments ``| t -> u``; terms are
identifiers or applications of a declared coherence to the full argument list
(parenthesized when nested, bare in arrow positions where juxtaposition binds
tighter than ``->``).  ``#`` starts a comment running to the end of the line.
Parameter order is significant: it is the order in which the context is
checked to be a pasting scheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import CheckError, ErrorKind, ParseError
from .kernel import CohDef, Environment
from .syntax import (
    OBJ,
    Coh,
    Context,
    Hom,
    Tm,
    Ty,
    Var,
    alpha_normalize_binding,
    format_term,
    format_type,
)

_IDENT_CHARS = set(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_'"
)
_PUNCT = {"(": "LPAR", ")": "RPAR", ":": "COLON", "*": "STAR", "|": "BAR", ";": "SEMI"}


@dataclass(frozen=True)
class Token:
    kind: str  # COH, IDENT, LPAR, RPAR, COLON, STAR, BAR, ARROW, SEMI, EOF
    text: str
    line: int
    col: int


def lex(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch == "-":
            if i + 1 < n and text[i + 1] == ">":
                tokens.append(Token("ARROW", "->", line, col))
                i += 2
                col += 2
                continue
            raise ParseError("'-' is only valid as part of '->'", line, col)
        if ch in _IDENT_CHARS:
            start = i
            start_col = col
            while i < n and text[i] in _IDENT_CHARS:
                i += 1
                col += 1
            word = text[start:i]
            kind = "COH" if word == "coh" else "IDENT"
            tokens.append(Token(kind, word, line, start_col))
            continue
        raise ParseError(f"illegal character {ch!r}", line, col)
    tokens.append(Token("EOF", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# surface AST


@dataclass(frozen=True)
class STerm:
    head: str
    args: tuple["STerm", ...]
    line: int
    col: int


@dataclass(frozen=True)
class SType:
    # base is always *; each segment is one (source, target) arrow level
    segments: tuple[tuple[STerm, STerm], ...]
    line: int
    col: int


@dataclass(frozen=True)
class CohDecl:
    name: str
    params: tuple[tuple[str, SType], ...]
    ret: SType
    line: int
    col: int


class _Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(
                f"expected {kind}, found {tok.text!r}" if tok.kind != "EOF"
                else f"expected {kind}, found end of input",
                tok.line,
                tok.col,
            )
        return self.next()

    def parse_file(self) -> list[CohDecl]:
        decls = []
        while self.peek().kind != "EOF":
            decls.append(self.parse_decl())
        return decls

    def parse_decl(self) -> CohDecl:
        start = self.expect("COH")
        name = self.expect("IDENT").text
        params = []
        while self.peek().kind == "LPAR":
            self.next()
            pname = self.expect("IDENT").text
            self.expect("COLON")
            pty = self.parse_type()
            self.expect("RPAR")
            params.append((pname, pty))
        self.expect("COLON")
        ret = self.parse_type()
        self.expect("SEMI")
        return CohDecl(name, tuple(params), ret, start.line, start.col)

    def parse_type(self) -> SType:
        star = self.expect("STAR")
        segments = []
        while self.peek().kind == "BAR":
            self.next()
            src = self.parse_term()
            self.expect("ARROW")
            tgt = self.parse_term()
            segments.append((src, tgt))
        return SType(tuple(segments), star.line, star.col)

    def parse_term(self) -> STerm:
        atoms = [self.parse_atom()]
        while self.peek().kind in ("IDENT", "LPAR"):
            atoms.append(self.parse_atom())
        head = atoms[0]
        rest = tuple(atoms[1:])
        if not rest:
            return head
        # a parenthesized application in head position is flattened,
        # curried-style: (f x) y == f x y
        return STerm(head.head, head.args + rest, head.line, head.col)

    def parse_atom(self) -> STerm:
        tok = self.peek()
        if tok.kind == "IDENT":
            self.next()
            return STerm(tok.text, (), tok.line, tok.col)
        if tok.kind == "LPAR":
            self.next()
            term = self.parse_term()
            self.expect("RPAR")
            return term
        raise ParseError(
            f"expected a term, found {tok.text!r}" if tok.kind != "EOF"
            else "expected a term, found end of input",
            tok.line,
            tok.col,
        )


def parse(text: str) -> list[CohDecl]:
    return _Parser(lex(text)).parse_file()


# ---------------------------------------------------------------------------
# elaboration


def elaborate_term(st: STerm, params: frozenset[str], env: Environment) -> Tm:
    if not st.args:
        if st.head in params:
            return Var(st.head)
        definition = env.lookup(st.head)
        if definition is not None:
            raise CheckError(
                ErrorKind.ARITY_MISMATCH,
                f"coherence '{st.head}' expects {len(definition.ctx)} "
                "arguments, got 0",
                st.line,
                st.col,
            )
        # let the kernel report an unknown variable with full context
        return Var(st.head)
    if st.head in params:
        raise CheckError(
            ErrorKind.UNKNOWN_COHERENCE,
            f"'{st.head}' is a variable and cannot take arguments",
            st.line,
            st.col,
        )
    definition = env.lookup(st.head)
    if definition is None:
        raise CheckError(
            ErrorKind.UNKNOWN_COHERENCE,
            f"unknown coherence '{st.head}'",
            st.line,
            st.col,
        )
    if len(st.args) != len(definition.ctx):
        raise CheckError(
            ErrorKind.ARITY_MISMATCH,
            f"coherence '{st.head}' expects {len(definition.ctx)} "
            f"arguments, got {len(st.args)}",
            st.line,
            st.col,
        )
    args = tuple(elaborate_term(a, params, env) for a in st.args)
    return Coh(definition.ctx, definition.ty, args)


def elaborate_type(sty: SType, params: frozenset[str], env: Environment) -> Ty:
    ty: Ty = OBJ
    for src, tgt in sty.segments:
        ty = Hom(ty, elaborate_term(src, params, env), elaborate_term(tgt, params, env))
    return ty


def elaborate(decl: CohDecl, env: Environment) -> tuple[Context, Ty]:
    """Turn a declaration into a kernel context and result type.

    Name resolution and arities are settled here; scoping, pasting and side
    conditions belong to the kernel.
    """
    names = frozenset(name for name, _ in decl.params)
    ctx = tuple(
        (name, elaborate_type(sty, names, env)) for name, sty in decl.params
    )
    ret = elaborate_type(decl.ret, names, env)
    return ctx, ret


# ---------------------------------------------------------------------------
# canonical printing


class Printer:
    """Prints kernel objects back to surface syntax, resolving coherence
    bodies to their registered names (up to alpha equivalence)."""

    def __init__(self, env: Environment) -> None:
        self._names = {
            alpha_normalize_binding(d.ctx, d.ty): d.name for d in env
        }

    def _name_of(self, coh: Coh) -> Optional[str]:
        return self._names.get(alpha_normalize_binding(coh.ctx, coh.ty))

    def term(self, tm: Tm) -> str:
        text = format_term(tm, self._name_of)
        if "(coh " in text:
            raise ValueError("term mentions a coherence with no registered name")
        return text

    def type(self, ty: Ty) -> str:
        text = format_type(ty, self._name_of)
        if "(coh " in text:
            raise ValueError("type mentions a coherence with no registered name")
        return text

    def decl(self, definition: CohDef) -> str:
        params = " ".join(
            f"({name} : {self.type(ty)})" for name, ty in definition.ctx
        )
        return f"coh {definition.name} {params} : {self.type(definition.ty)} ;"

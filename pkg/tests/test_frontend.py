from __future__ import annotations

import pytest

from cattc import (
    OBJ,
    CheckError,
    Coh,
    Environment,
    ErrorKind,
    Hom,
    Mode,
    ParseError,
    Printer,
    Var,
    check_coherence,
    elaborate,
    lex,
    parse,
    terms_equal,
    types_equal,
)
from cattc.frontend import Token, elaborate_term, elaborate_type
from helpers import base_env

ID_DECL = "coh id (x : *) : * | x -> x ;"


# --- lexer -------------------------------------------------------------------


def test_lexer_token_count_and_kinds():
    tokens = lex(ID_DECL)
    assert len(tokens) == 15  # 14 tokens plus EOF
    assert [t.kind for t in tokens[:5]] == ["COH", "IDENT", "LPAR", "IDENT", "COLON"]
    assert tokens[-1].kind == "EOF"


def test_lexer_empty_input():
    assert [t.kind for t in lex("")] == ["EOF"]


def test_lexer_primed_identifier_is_one_token():
    assert lex("f'")[0] == Token("IDENT", "f'", 1, 1)


def test_lexer_comments_and_whitespace():
    tokens = lex("# a comment\n  coh # trailing\nx")
    assert [t.text for t in tokens[:-1]] == ["coh", "x"]
    assert tokens[0].line == 2


def test_lexer_rejects_illegal_characters():
    with pytest.raises(ParseError) as excinfo:
        lex("coh bad@ : * ;")
    assert (excinfo.value.line, excinfo.value.col) == (1, 8)
    with pytest.raises(ParseError):
        lex("a - b")


# --- parser ------------------------------------------------------------------


def test_parse_composition_declaration():
    text = (
        "coh comp (x : *) (y : *) (f : * | x -> y)"
        " (z : *) (g : * | y -> z) : * | x -> z ;"
    )
    (decl,) = parse(text)
    assert decl.name == "comp"
    assert [name for name, _ in decl.params] == ["x", "y", "f", "z", "g"]
    assert len(decl.ret.segments) == 1


def test_parse_unitor_declaration_has_nested_application():
    text = (
        "coh unitl (x : *) (y : *) (f : * | x -> y)"
        " : * | x -> y | comp x x (id x) y f -> f ;"
    )
    (decl,) = parse(text)
    assert len(decl.ret.segments) == 2
    src, tgt = decl.ret.segments[1]
    assert src.head == "comp"
    assert [a.head for a in src.args] == ["x", "x", "id", "y", "f"]
    assert src.args[2].args[0].head == "x"
    assert tgt.head == "f" and tgt.args == ()


def test_grammar_accepts_ill_typed_declarations():
    (decl,) = parse("coh bad (x : *) : * ;")
    assert decl.name == "bad"


def test_parse_errors_have_positions():
    with pytest.raises(ParseError) as excinfo:
        parse("coh id (x : *) : * | x -> x")  # no semicolon
    assert excinfo.value.line == 1
    with pytest.raises(ParseError):
        parse("coh (x : *) : * ;")  # missing name
    with pytest.raises(ParseError):
        parse("coh id (x : ) : * ;")


def test_head_parenthesization_flattens():
    (a,) = parse("coh t (x : *) : * | (id) x -> ((comp x) y) f ;")
    src, tgt = a.ret.segments[0]
    assert (src.head, [arg.head for arg in src.args]) == ("id", ["x"])
    assert (tgt.head, [arg.head for arg in tgt.args]) == ("comp", ["x", "y", "f"])


# --- elaboration ---------------------------------------------------------------


def test_elaborate_single_application():
    env = base_env()
    (decl,) = parse("coh t (x : *) : * | x -> x ;")
    st, _ = parse("coh u (x : *) : * | id x -> x ;")[0].ret.segments[0]
    tm = elaborate_term(st, frozenset({"x"}), env)
    ident = env.lookup("id")
    assert tm == Coh(ident.ctx, ident.ty, (Var("x"),))
    assert decl.name == "t"


def test_elaborate_chain_builds_nested_arrows():
    env = Environment()
    sty = parse("coh t (x : *) : * | x -> y | f -> g ;")[0].ret
    ty = elaborate_type(sty, frozenset({"x", "y", "f", "g"}), env)
    assert ty == Hom(Hom(OBJ, Var("x"), Var("y")), Var("f"), Var("g"))


def test_elaborate_full_composite():
    env = base_env()
    sty = parse("coh t (q : *) : * | comp x x (id x) y f -> f ;")[0].ret
    ty = elaborate_type(sty, frozenset({"x", "y", "f"}), env)
    comp, ident = env.lookup("comp"), env.lookup("id")
    id_x = Coh(ident.ctx, ident.ty, (Var("x"),))
    expected = Hom(
        OBJ,
        Coh(comp.ctx, comp.ty, (Var("x"), Var("x"), id_x, Var("y"), Var("f"))),
        Var("f"),
    )
    assert ty == expected


def test_elaborate_unknown_and_arity_errors():
    env = base_env()
    with pytest.raises(CheckError) as excinfo:
        elaborate(parse("coh t (x : *) : * | woop x -> x ;")[0], env)
    assert excinfo.value.kind == ErrorKind.UNKNOWN_COHERENCE
    with pytest.raises(CheckError) as excinfo:
        elaborate(parse("coh t (x : *) : * | comp x x -> x ;")[0], env)
    assert excinfo.value.kind == ErrorKind.ARITY_MISMATCH
    assert excinfo.value.line == 1 and excinfo.value.col is not None
    with pytest.raises(CheckError) as excinfo:
        elaborate(parse("coh t (x : *) : * | x x -> x ;")[0], env)
    assert excinfo.value.kind == ErrorKind.UNKNOWN_COHERENCE


def test_bare_coherence_name_reports_arity():
    env = base_env()
    with pytest.raises(CheckError) as excinfo:
        elaborate(parse("coh t (x : *) : * | id -> x ;")[0], env)
    assert excinfo.value.kind == ErrorKind.ARITY_MISMATCH


def test_parameters_shadow_coherence_names():
    env = base_env()
    ctx, ty = elaborate(parse("coh t (id : *) : * | id -> id ;")[0], env)
    assert ty == Hom(OBJ, Var("id"), Var("id"))
    assert ctx == (("id", OBJ),)


# --- full corpus and printing ----------------------------------------------------


def _check_source(text: str, mode: Mode = Mode.CAT) -> Environment:
    env = Environment(mode)
    for decl in parse(text):
        ctx, ty = elaborate(decl, env)
        check_coherence(env, decl.name, ctx, ty)
    return env


def test_corpus_parses_and_checks(corpus_text):
    env = _check_source(corpus_text)
    assert [d.name for d in env] == [
        "id",
        "comp",
        "unitl",
        "unitl'",
        "assoc",
        "vcomp",
        "hcomp",
        "ichg",
    ]


def test_print_parse_round_trip(corpus_text):
    env = _check_source(corpus_text)
    printer = Printer(env)
    printed = "\n".join(printer.decl(d) for d in env)
    env2 = _check_source(printed)
    printer2 = Printer(env2)
    assert printed == "\n".join(printer2.decl(d) for d in env2)
    for d1, d2 in zip(env, env2):
        assert d1.ctx == d2.ctx
        assert types_equal(d1.ty, d2.ty)


def test_printer_round_trips_terms(corpus_text):
    env = _check_source(corpus_text)
    printer = Printer(env)
    comp, ident = env.lookup("comp"), env.lookup("id")
    id_x = Coh(ident.ctx, ident.ty, (Var("x"),))
    tm = Coh(comp.ctx, comp.ty, (Var("x"), Var("x"), id_x, Var("y"), Var("f")))
    assert printer.term(tm) == "comp x x (id x) y f"
    st = parse(f"coh t (q : *) : * | {printer.term(tm)} -> f ;")[0].ret.segments[0][0]
    assert terms_equal(elaborate_term(st, frozenset({"x", "y", "f"}), env), tm)

"""Syntactic core: types, terms, substitutions and contexts.

Types are either the base type ``*`` (`Obj`) or an arrow type ``A | t -> u``
(`Hom`), terms are variables or coherence constants applied to a substitution
(`Coh`).  Contexts are ordered tuples of ``(name, type)`` pairs and
substitutions are ordered tuples of terms; position ``i`` of a substitution
always instantiates variable ``i`` of the context it targets.

Everything in this module is immutable and purely structural; scoping and
typing are enforced by :mod:`cattc.kernel`, not here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Union


@dataclass(frozen=True)
class Obj:
    """The base type, written ``*``."""


@dataclass(frozen=True)
class Hom:
    """Arrow type ``base | src -> tgt``; one dimension above its base."""

    base: "Ty"
    src: "Tm"
    tgt: "Tm"


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("variable name must be non-empty")
        if self.name == "coh":
            raise ValueError("'coh' is a reserved keyword")


@dataclass(frozen=True)
class Coh:
    """A coherence constant over a bound context, applied to a substitution.

    ``ctx`` is a binder: its variables scope over ``ty`` only.  The
    substitution has one term per context entry (a bare constant is stored
    applied to the identity substitution).
    """

    ctx: "Context"
    ty: "Ty"
    sub: "Sub"

    def __post_init__(self) -> None:
        if len(self.sub) != len(self.ctx):
            raise ValueError(
                f"coherence over {len(self.ctx)} variables applied to "
                f"{len(self.sub)} arguments"
            )


Ty = Union[Obj, Hom]
Tm = Union[Var, Coh]
Entry = tuple[str, Ty]
Context = tuple[Entry, ...]
Sub = tuple[Tm, ...]

OBJ = Obj()


# ---------------------------------------------------------------------------
# dimension


def dim_type(ty: Ty) -> int:
    d = 0
    while isinstance(ty, Hom):
        d += 1
        ty = ty.base
    return d


def dim_context(ctx: Context) -> int:
    if not ctx:
        raise ValueError("the dimension of the empty context is undefined")
    return max(dim_type(ty) for _, ty in ctx)


# ---------------------------------------------------------------------------
# variables


def ctx_vars(ctx: Context) -> tuple[str, ...]:
    return tuple(name for name, _ in ctx)


def ctx_var_set(ctx: Context) -> frozenset[str]:
    return frozenset(name for name, _ in ctx)


def ctx_lookup(ctx: Context, name: str) -> Optional[Ty]:
    for x, ty in ctx:
        if x == name:
            return ty
    return None


def fv_term(tm: Tm) -> frozenset[str]:
    if isinstance(tm, Var):
        return frozenset((tm.name,))
    # The bound context captures the variables of the result type; anything
    # escaping it is free, alongside the substitution's variables.
    return (fv_type(tm.ty) - ctx_var_set(tm.ctx)) | fv_sub(tm.sub)


def fv_type(ty: Ty) -> frozenset[str]:
    if isinstance(ty, Obj):
        return frozenset()
    return fv_type(ty.base) | fv_term(ty.src) | fv_term(ty.tgt)


def fv_sub(sub: Sub) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for tm in sub:
        out |= fv_term(tm)
    return out


def fv_context(ctx: Context) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for name, ty in ctx:
        out |= frozenset((name,)) | fv_type(ty)
    return out


def fv(e: Union[Tm, Ty, Sub, Context]) -> frozenset[str]:
    """Free variables of a term, type, substitution or context."""
    if isinstance(e, (Var, Coh)):
        return fv_term(e)
    if isinstance(e, (Obj, Hom)):
        return fv_type(e)
    if not e:
        return frozenset()
    if isinstance(e[0], tuple):
        return fv_context(e)  # type: ignore[arg-type]
    return fv_sub(e)  # type: ignore[arg-type]


# ---------------------------------------------------------------------------
# substitution application


def _mapping(sub: Sub, ctx: Context) -> dict[str, Tm]:
    if len(sub) != len(ctx):
        raise ValueError(
            f"substitution of length {len(sub)} applied over a context of "
            f"length {len(ctx)}"
        )
    return {name: tm for (name, _), tm in zip(ctx, sub)}


def apply_sub_term(tm: Tm, sub: Sub, ctx: Context) -> Tm:
    return _subst_term(tm, _mapping(sub, ctx))


def apply_sub_type(ty: Ty, sub: Sub, ctx: Context) -> Ty:
    return _subst_type(ty, _mapping(sub, ctx))


def _subst_term(tm: Tm, mapping: dict[str, Tm]) -> Tm:
    if isinstance(tm, Var):
        try:
            return mapping[tm.name]
        except KeyError:
            raise ValueError(f"variable '{tm.name}' not bound by the context")
    # The bound context and result type are untouched; the outer substitution
    # acts on the coherence's own argument list.
    return Coh(tm.ctx, tm.ty, tuple(_subst_term(t, mapping) for t in tm.sub))


def _subst_type(ty: Ty, mapping: dict[str, Tm]) -> Ty:
    if isinstance(ty, Obj):
        return ty
    return Hom(
        _subst_type(ty.base, mapping),
        _subst_term(ty.src, mapping),
        _subst_term(ty.tgt, mapping),
    )


def compose_sub(sigma: Sub, tau: Sub, ctx: Context) -> Sub:
    """``sigma . tau``: apply ``tau`` (over ``ctx``) to each term of ``sigma``."""
    mapping = _mapping(tau, ctx)
    return tuple(_subst_term(t, mapping) for t in sigma)


def identity_sub(ctx: Context) -> Sub:
    return tuple(Var(name) for name, _ in ctx)


# ---------------------------------------------------------------------------
# alpha normalization
#
# Every coherence binds its context variables in its result type.  Two
# expressions differing only in those bound names must compare equal, so
# comparisons go through a canonical renaming: bound variables are renamed
# positionally to "%0", "%1", ... using one counter threaded through the whole
# expression (a De Bruijn *level* scheme).  "%" is not a legal identifier
# character, so canonical names can never collide with user variables, and the
# strictly increasing counter keeps nested binders from capturing outer ones.


def alpha_normalize(e: Union[Tm, Ty]) -> Union[Tm, Ty]:
    counter = itertools.count()
    if isinstance(e, (Var, Coh)):
        return _norm_term(e, {}, counter)
    return _norm_type(e, {}, counter)


def alpha_normalize_term(tm: Tm) -> Tm:
    return _norm_term(tm, {}, itertools.count())


def alpha_normalize_type(ty: Ty) -> Ty:
    return _norm_type(ty, {}, itertools.count())


def alpha_normalize_binding(ctx: Context, ty: Ty) -> tuple[Context, Ty]:
    """Canonical form of a coherence body ``(ctx, ty)`` seen as a binder."""
    counter = itertools.count()
    ren: dict[str, str] = {}
    entries = []
    for name, a in ctx:
        a2 = _norm_type(a, ren, counter)
        fresh = f"%{next(counter)}"
        ren[name] = fresh
        entries.append((fresh, a2))
    return tuple(entries), _norm_type(ty, ren, counter)


def _norm_term(tm: Tm, ren: dict[str, str], counter: Iterator[int]) -> Tm:
    if isinstance(tm, Var):
        return Var(ren.get(tm.name, tm.name))
    sub = tuple(_norm_term(t, ren, counter) for t in tm.sub)
    inner = dict(ren)
    entries = []
    for name, a in tm.ctx:
        a2 = _norm_type(a, inner, counter)
        fresh = f"%{next(counter)}"
        inner[name] = fresh
        entries.append((fresh, a2))
    return Coh(tuple(entries), _norm_type(tm.ty, inner, counter), sub)


def _norm_type(ty: Ty, ren: dict[str, str], counter: Iterator[int]) -> Ty:
    if isinstance(ty, Obj):
        return ty
    return Hom(
        _norm_type(ty.base, ren, counter),
        _norm_term(ty.src, ren, counter),
        _norm_term(ty.tgt, ren, counter),
    )


def types_equal(a: Ty, b: Ty) -> bool:
    """Equality of types up to renaming of coherence-bound variables."""
    return a == b or alpha_normalize_type(a) == alpha_normalize_type(b)


def terms_equal(a: Tm, b: Tm) -> bool:
    return a == b or alpha_normalize_term(a) == alpha_normalize_term(b)


# ---------------------------------------------------------------------------
# coherence depth


def coherence_depth(e: Union[Tm, Ty, Sub]) -> int:
    """Nesting count of coherence constants: variables have depth 0 and a
    coherence is one deeper than its result type (or as deep as its
    arguments, whichever dominates)."""
    if isinstance(e, Var):
        return 0
    if isinstance(e, Coh):
        return max(coherence_depth(e.ty) + 1, coherence_depth(e.sub))
    if isinstance(e, Obj):
        return 0
    if isinstance(e, Hom):
        return max(
            coherence_depth(e.base),
            coherence_depth(e.src),
            coherence_depth(e.tgt),
        )
    return max((coherence_depth(t) for t in e), default=0)


# ---------------------------------------------------------------------------
# printing
#
# `name_of` resolves a coherence body to a user-facing name; without one,
# coherences print in a structural (non-reparseable) form good enough for
# diagnostics.

Namer = Callable[[Coh], Optional[str]]


def format_term(tm: Tm, name_of: Optional[Namer] = None, atom: bool = False) -> str:
    if isinstance(tm, Var):
        return tm.name
    name = name_of(tm) if name_of is not None else None
    if name is None:
        body = f"coh {format_context(tm.ctx, name_of)} : {format_type(tm.ty, name_of)}"
        args = ", ".join(format_term(t, name_of) for t in tm.sub)
        return f"({body})[{args}]"
    if not tm.sub:
        return name
    args = " ".join(format_term(t, name_of, atom=True) for t in tm.sub)
    text = f"{name} {args}"
    return f"({text})" if atom else text


def format_type(ty: Ty, name_of: Optional[Namer] = None) -> str:
    if isinstance(ty, Obj):
        return "*"
    base = format_type(ty.base, name_of)
    src = format_term(ty.src, name_of)
    tgt = format_term(ty.tgt, name_of)
    return f"{base} | {src} -> {tgt}"


def format_context(ctx: Context, name_of: Optional[Namer] = None) -> str:
    return " ".join(f"({x} : {format_type(ty, name_of)})" for x, ty in ctx)

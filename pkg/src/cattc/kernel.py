"""Typing judgments and coherence introduction.

The checker decides four judgments: context well-formedness, type
well-formedness, term typing and substitution typing.  On top of those it
validates coherence constants according to the environment's mode:

``cat``
    The context must be a pasting scheme and the result type must satisfy one
    of two free-variable side conditions: either the type covers the whole
    context (a *coherence*, e.g. unitors and associators), or it is an arrow
    type whose source and target each cover and typecheck in the corresponding
    default boundary of the context (an *operation*, e.g. compositions).
    Together these rule out inverses and partial compositions.

``ps-gpd``
    Pasting-scheme context, no side condition.  Every cell over a pasting
    scheme becomes invertible, giving groupoid-style coherences.

``br-gpd``
    Like ``ps-gpd`` but over the weaker class of contractible contexts, which
    permit gluing in both orientations.

Acceptance is monotone along cat -> ps-gpd -> br-gpd.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

from .errors import CheckError, ErrorKind, fmt_var_set
from .pasting import (
    check_ps,
    contractibility_failure,
    source_context,
    target_context,
)
from .syntax import (
    Coh,
    Context,
    Hom,
    Obj,
    Sub,
    Tm,
    Ty,
    Var,
    alpha_normalize_binding,
    apply_sub_type,
    coherence_depth,
    ctx_lookup,
    ctx_var_set,
    dim_context,
    dim_type,
    format_context,
    format_type,
    fv_term,
    fv_type,
    types_equal,
)


class Mode(enum.Enum):
    CAT = "cat"
    PS_GPD = "ps-gpd"
    BR_GPD = "br-gpd"


RULE_OPERATION = "operation"
RULE_COHERENCE = "coherence"
RULE_GROUPOID = "groupoid"


@dataclass(frozen=True)
class CohDef:
    """An accepted top-level coherence: its binder, the rule that admitted it,
    and bookkeeping for reports (cell dimension and coherence depth)."""

    name: str
    ctx: Context
    ty: Ty
    rule: str
    dim: int
    depth: int


class Environment:
    """Named coherences in declaration order, plus the checking mode.

    Built single-threaded while a file is checked; safe to share read-only
    afterwards.  Also memoizes which coherence bodies already validated, keyed
    by their canonical (alpha-normalized) form.
    """

    def __init__(self, mode: Mode = Mode.CAT) -> None:
        self.mode = mode
        self._defs: dict[str, CohDef] = {}
        self._validated: dict[tuple[Context, Ty], str] = {}

    def __contains__(self, name: str) -> bool:
        return name in self._defs

    def __iter__(self):
        return iter(self._defs.values())

    def lookup(self, name: str) -> Optional[CohDef]:
        return self._defs.get(name)

    def register(self, definition: CohDef) -> None:
        if definition.name in self._defs:
            raise CheckError(
                ErrorKind.DUPLICATE_NAME,
                f"coherence '{definition.name}' is already defined",
            )
        self._defs[definition.name] = definition


# ---------------------------------------------------------------------------
# the four judgments


def check_context(env: Environment, ctx: Context) -> None:
    seen: set[str] = set()
    for i, (name, ty) in enumerate(ctx):
        if name in seen:
            raise CheckError(
                ErrorKind.DUPLICATE_VARIABLE,
                f"variable '{name}' is declared twice",
            )
        check_type(env, ctx[:i], ty)
        seen.add(name)


def check_type(env: Environment, ctx: Context, ty: Ty) -> None:
    if isinstance(ty, Obj):
        return
    check_type(env, ctx, ty.base)
    for label, tm in (("source", ty.src), ("target", ty.tgt)):
        actual = check_term(env, ctx, tm)
        if not types_equal(actual, ty.base):
            raise CheckError(
                ErrorKind.TYPE_MISMATCH,
                f"{label} of an arrow type has type {format_type(actual)}, "
                f"expected {format_type(ty.base)}",
            )


def check_term(env: Environment, ctx: Context, tm: Tm) -> Ty:
    """Return the type of ``tm`` in ``ctx`` (which must be well-formed)."""
    if isinstance(tm, Var):
        ty = ctx_lookup(ctx, tm.name)
        if ty is None:
            raise CheckError(
                ErrorKind.UNKNOWN_VARIABLE,
                f"variable '{tm.name}' is not in scope",
            )
        return ty
    validate_coherence_body(env, tm.ctx, tm.ty)
    check_sub(env, ctx, tm.sub, tm.ctx)
    return apply_sub_type(tm.ty, tm.sub, tm.ctx)


def check_sub(env: Environment, delta: Context, sub: Sub, gamma: Context) -> None:
    """Check ``delta |- sub : gamma`` positionally: term ``i`` must have the
    type of variable ``i`` instantiated by the preceding terms."""
    if len(sub) != len(gamma):
        raise CheckError(
            ErrorKind.ARITY_MISMATCH,
            f"substitution has {len(sub)} terms for a context of "
            f"{len(gamma)} variables",
        )
    for i, (tm, (name, ty)) in enumerate(zip(sub, gamma)):
        expected = apply_sub_type(ty, sub[:i], gamma[:i])
        actual = check_term(env, delta, tm)
        if not types_equal(actual, expected):
            raise CheckError(
                ErrorKind.TYPE_MISMATCH,
                f"argument {i + 1} (for '{name}') has type "
                f"{format_type(actual)}, expected {format_type(expected)}",
            )


# ---------------------------------------------------------------------------
# coherence introduction


def _support(tm: Tm, ty: Ty) -> frozenset[str]:
    # A term is only meaningful together with its type: the variables it
    # provides to a boundary include those of its source/target tower.
    return fv_term(tm) | fv_type(ty)


def validate_coherence_body(env: Environment, ctx: Context, ty: Ty) -> str:
    """Check that ``(ctx, ty)`` may introduce a coherence in the environment's
    mode; return the rule that admitted it.  Results are memoized up to alpha
    equivalence."""
    key = alpha_normalize_binding(ctx, ty)
    cached = env._validated.get(key)
    if cached is not None:
        return cached

    if env.mode is Mode.BR_GPD:
        reason = contractibility_failure(ctx)
        if reason is not None:
            raise CheckError(ErrorKind.NOT_CONTRACTIBLE, reason)
    else:
        check_ps(ctx)
    check_context(env, ctx)
    check_type(env, ctx, ty)

    if env.mode is not Mode.CAT:
        rule = RULE_GROUPOID
    elif fv_type(ty) == ctx_var_set(ctx):
        rule = RULE_COHERENCE
    else:
        rule = _check_operation_rule(env, ctx, ty)
    env._validated[key] = rule
    return rule


def _check_operation_rule(env: Environment, ctx: Context, ty: Ty) -> str:
    if not isinstance(ty, Hom) or dim_context(ctx) == 0:
        raise CheckError(
            ErrorKind.SIDE_CONDITION_FULL,
            f"type uses variables {fmt_var_set(fv_type(ty))} but the context "
            f"declares {fmt_var_set(ctx_var_set(ctx))}; a composition must "
            "use them all",
        )
    src_ctx = source_context(ctx)
    tgt_ctx = target_context(ctx)
    src_support = _support(ty.src, ty.base)
    tgt_support = _support(ty.tgt, ty.base)
    if src_support != ctx_var_set(src_ctx):
        raise CheckError(
            ErrorKind.SIDE_CONDITION_SRC,
            f"source uses variables {fmt_var_set(src_support)} but the source "
            f"boundary {format_context(src_ctx)} declares "
            f"{fmt_var_set(ctx_var_set(src_ctx))}",
        )
    if tgt_support != ctx_var_set(tgt_ctx):
        raise CheckError(
            ErrorKind.SIDE_CONDITION_TGT,
            f"target uses variables {fmt_var_set(tgt_support)} but the target "
            f"boundary {format_context(tgt_ctx)} declares "
            f"{fmt_var_set(ctx_var_set(tgt_ctx))}",
        )
    for boundary_ctx, tm, label in (
        (src_ctx, ty.src, "source"),
        (tgt_ctx, ty.tgt, "target"),
    ):
        actual = check_term(env, boundary_ctx, tm)
        if not types_equal(actual, ty.base):
            raise CheckError(
                ErrorKind.TYPE_MISMATCH,
                f"{label} has type {format_type(actual)} in the {label} "
                f"boundary, expected {format_type(ty.base)}",
            )
    return RULE_OPERATION


def check_coherence(env: Environment, name: str, ctx: Context, ty: Ty) -> CohDef:
    """Validate and register a named coherence declaration."""
    if name in env:
        raise CheckError(
            ErrorKind.DUPLICATE_NAME, f"coherence '{name}' is already defined"
        )
    rule = validate_coherence_body(env, ctx, ty)
    definition = CohDef(
        name=name,
        ctx=ctx,
        ty=ty,
        rule=rule,
        dim=dim_type(ty),
        depth=coherence_depth(ty) + 1,
    )
    env.register(definition)
    return definition

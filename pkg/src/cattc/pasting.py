"""The pasting-scheme judgment on contexts, boundaries, and contractibility.

A context is a pasting scheme exactly when it replays through a deterministic
focus machine: the judgment carries a single focused variable (the "dangling
output"), every new entry pair either attaches two fresh cells to the focus or
is rejected, and attachment is only possible after lowering the focus to the
right dimension by walking to targets.  Determinism means no search: each
context admits at most one derivation, which `check_ps` reconstructs and
returns as a trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .errors import CheckError, ErrorKind
from .syntax import (
    OBJ,
    Context,
    Hom,
    Obj,
    Ty,
    Var,
    ctx_lookup,
    dim_context,
    dim_type,
    format_type,
)

Side = Literal["source", "target"]


@dataclass(frozen=True)
class PsStep:
    """One rule application; ``var``/``ty`` is the focus after the step."""

    rule: Literal["start", "extend", "drop", "close"]
    var: str
    ty: Ty


@dataclass(frozen=True)
class PsTrace:
    steps: tuple[PsStep, ...]

    def focus_vars(self) -> tuple[str, ...]:
        """Focused variables in visit order (the final close revisits the
        last focus and is skipped)."""
        return tuple(s.var for s in self.steps if s.rule != "close")


def _ps_error(msg: str) -> CheckError:
    return CheckError(ErrorKind.NOT_A_PS_CONTEXT, msg)


def check_ps(ctx: Context) -> PsTrace:
    """Decide the pasting-scheme judgment by deterministic replay.

    Well-formedness is re-derived along the way rather than assumed; on
    success the context is in particular a valid context.
    """
    if not ctx:
        raise _ps_error("the empty context is not a pasting scheme")
    if len(ctx) % 2 == 0:
        raise _ps_error(
            f"a pasting-scheme context has odd length, got {len(ctx)} entries"
        )
    first_var, first_ty = ctx[0]
    if not isinstance(first_ty, Obj):
        raise _ps_error(
            f"the first entry must have type *, but {first_var} has type "
            f"{format_type(first_ty)}"
        )

    steps = [PsStep("start", first_var, first_ty)]
    declared = {first_var}
    focus_var, focus_ty = first_var, first_ty

    for i in range(1, len(ctx), 2):
        (y, b_ty), (f, c_ty) = ctx[i], ctx[i + 1]
        for name in (y, f):
            if name in declared:
                raise CheckError(
                    ErrorKind.DUPLICATE_VARIABLE,
                    f"variable '{name}' is declared twice",
                )
            declared.add(name)

        # Lower the focus until its dimension matches the incoming pair.
        while dim_type(focus_ty) > dim_type(b_ty):
            assert isinstance(focus_ty, Hom)
            tgt = focus_ty.tgt
            assert isinstance(tgt, Var)
            focus_var, focus_ty = tgt.name, focus_ty.base
            steps.append(PsStep("drop", focus_var, focus_ty))
        if b_ty != focus_ty:
            raise _ps_error(
                f"entry {y} : {format_type(b_ty)} does not attach to the "
                f"focus {focus_var} : {format_type(focus_ty)}"
            )
        expected = Hom(focus_ty, Var(focus_var), Var(y))
        if c_ty != expected:
            raise _ps_error(
                f"entry {f} : {format_type(c_ty)} should have type "
                f"{format_type(expected)}"
            )
        focus_var, focus_ty = f, c_ty
        steps.append(PsStep("extend", focus_var, focus_ty))

    while dim_type(focus_ty) > 0:
        assert isinstance(focus_ty, Hom)
        tgt = focus_ty.tgt
        assert isinstance(tgt, Var)
        focus_var, focus_ty = tgt.name, focus_ty.base
        steps.append(PsStep("drop", focus_var, focus_ty))
    steps.append(PsStep("close", focus_var, focus_ty))
    return PsTrace(tuple(steps))


def is_ps(ctx: Context) -> bool:
    try:
        check_ps(ctx)
        return True
    except CheckError:
        return False


# ---------------------------------------------------------------------------
# boundaries


def boundary(ctx: Context, side: Side, level: Optional[int] = None) -> Context:
    """The level-``i`` source or target of a pasting-scheme context.

    With ``level=None`` the default ``dim(ctx) - 1`` is used, which requires a
    context of dimension at least 1.  The result is itself a pasting-scheme
    context.
    """
    check_ps(ctx)
    if level is None:
        dim = dim_context(ctx)
        if dim == 0:
            raise CheckError(
                ErrorKind.NOT_A_PS_CONTEXT,
                "a 0-dimensional pasting scheme has no default boundary level",
            )
        level = dim - 1
    if level < 0:
        raise ValueError("boundary level must be non-negative")

    out = [ctx[0]]
    for i in range(1, len(ctx), 2):
        (y, b_ty), (f, c_ty) = ctx[i], ctx[i + 1]
        d = dim_type(b_ty)
        if side == "source":
            if d >= level:
                continue
            out.append((y, b_ty))
            out.append((f, c_ty))
        else:
            if d > level:
                continue
            if d == level:
                assert out, "target boundary dropped past the base point"
                out[-1] = (y, b_ty)
            else:
                out.append((y, b_ty))
                out.append((f, c_ty))
    return tuple(out)


def source_context(ctx: Context) -> Context:
    return boundary(ctx, "source")


def target_context(ctx: Context) -> Context:
    return boundary(ctx, "target")


# ---------------------------------------------------------------------------
# contractible contexts
#
# The groupoid-flavoured shape class: starting from a point, each step glues a
# fresh cell f between an existing variable and a fresh one, in either
# orientation.  Every pasting-scheme context is contractible; the converse
# fails (branching is allowed here).


def contractibility_failure(ctx: Context) -> Optional[str]:
    """None if the context is contractible, else a human-readable reason."""
    if not ctx:
        return "the empty context is not contractible"
    if len(ctx) % 2 == 0:
        return f"a contractible context has odd length, got {len(ctx)} entries"
    first_var, first_ty = ctx[0]
    if not isinstance(first_ty, Obj):
        return (
            f"the first entry must have type *, but {first_var} has type "
            f"{format_type(first_ty)}"
        )
    declared = {first_var}
    for i in range(1, len(ctx), 2):
        (y, b_ty), (f, c_ty) = ctx[i], ctx[i + 1]
        if y in declared or f in declared or y == f:
            dup = y if (y in declared or y == f) else f
            return f"variable '{dup}' is declared twice"
        if not isinstance(c_ty, Hom) or c_ty.base != b_ty:
            return (
                f"entry {f} : {format_type(c_ty)} does not glue a cell "
                f"onto {y} : {format_type(b_ty)}"
            )
        src, tgt = c_ty.src, c_ty.tgt
        if not (isinstance(src, Var) and isinstance(tgt, Var)):
            return f"entry {f} : {format_type(c_ty)} has non-variable endpoints"
        if src.name == y:
            anchor = tgt.name
        elif tgt.name == y:
            anchor = src.name
        else:
            return (
                f"entry {f} : {format_type(c_ty)} does not have {y} as an "
                "endpoint"
            )
        prefix = ctx[:i]
        if ctx_lookup(prefix, anchor) != b_ty:
            return (
                f"endpoint '{anchor}' of {f} is not declared with type "
                f"{format_type(b_ty)} before it"
            )
        declared.update((y, f))
    return None


def check_contractible(ctx: Context) -> bool:
    return contractibility_failure(ctx) is None

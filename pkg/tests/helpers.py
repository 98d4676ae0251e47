"""Shared builders for the test suite: standard contexts, a seeded generator
of well-typed chain substitutions, and a brute-force enumerator of globular
morphisms."""

from __future__ import annotations

import random
from typing import Iterator, Optional

from cattc import (
    OBJ,
    Coh,
    Context,
    Environment,
    GlobularSet,
    Hom,
    Mode,
    Sub,
    Tm,
    Var,
    check_coherence,
)


def pt_ctx() -> Context:
    return (("x", OBJ),)


def arr_ctx() -> Context:
    return (("x", OBJ), ("y", OBJ), ("f", Hom(OBJ, Var("x"), Var("y"))))


def comp_ctx() -> Context:
    return (
        ("x", OBJ),
        ("y", OBJ),
        ("f", Hom(OBJ, Var("x"), Var("y"))),
        ("z", OBJ),
        ("g", Hom(OBJ, Var("y"), Var("z"))),
    )


def whisk_ctx() -> Context:
    """A 2-cell between parallel arrows, whiskered by a following arrow."""
    xy = Hom(OBJ, Var("x"), Var("y"))
    return (
        ("x", OBJ),
        ("y", OBJ),
        ("f", xy),
        ("f'", xy),
        ("a", Hom(xy, Var("f"), Var("f'"))),
        ("z", OBJ),
        ("g", Hom(OBJ, Var("y"), Var("z"))),
    )


def branching_ctx() -> Context:
    """Three 0-cells, parallel arrows f,g: x -> y with a 2-cell, plus an arrow
    h: z -> y running against the flow.  A valid context, not a pasting
    scheme."""
    xy = Hom(OBJ, Var("x"), Var("y"))
    return (
        ("x", OBJ),
        ("y", OBJ),
        ("z", OBJ),
        ("f", xy),
        ("g", xy),
        ("h", Hom(OBJ, Var("z"), Var("y"))),
        ("a", Hom(xy, Var("f"), Var("g"))),
    )


def contractible_not_ps_ctx() -> Context:
    return (
        ("x", OBJ),
        ("y", OBJ),
        ("f", Hom(OBJ, Var("x"), Var("y"))),
        ("y'", OBJ),
        ("f'", Hom(OBJ, Var("x"), Var("y'"))),
    )


def three_arrows_ctx() -> Context:
    return (
        ("x", OBJ),
        ("y", OBJ),
        ("f", Hom(OBJ, Var("x"), Var("y"))),
        ("z", OBJ),
        ("g", Hom(OBJ, Var("y"), Var("z"))),
        ("w", OBJ),
        ("h", Hom(OBJ, Var("z"), Var("w"))),
    )


def base_env(mode: Mode = Mode.CAT) -> Environment:
    """An environment holding `id` and `comp`, built through the kernel."""
    env = Environment(mode)
    check_coherence(env, "id", pt_ctx(), Hom(OBJ, Var("x"), Var("x")))
    check_coherence(env, "comp", comp_ctx(), Hom(OBJ, Var("x"), Var("z")))
    return env


# ---------------------------------------------------------------------------
# chains of composable arrows and monotone substitutions between them


def chain_ctx(arrows: int, prefix: str = "c") -> Context:
    """A spine of ``arrows`` composable 1-cells (a 1-dimensional pasting
    scheme; the degenerate case is a single point)."""
    entries: list[tuple[str, object]] = [(f"{prefix}0", OBJ)]
    for i in range(1, arrows + 1):
        entries.append((f"{prefix}{i}", OBJ))
        entries.append(
            (
                f"{prefix}e{i}",
                Hom(OBJ, Var(f"{prefix}{i - 1}"), Var(f"{prefix}{i}")),
            )
        )
    return tuple(entries)  # type: ignore[return-value]


def chain_path(env: Environment, prefix: str, i: int, j: int) -> Tm:
    """A term of type ``c_i -> c_j`` over a chain context, as a left-nested
    composite (or an identity when i == j)."""
    assert i <= j
    ident = env.lookup("id")
    comp = env.lookup("comp")
    assert ident is not None and comp is not None
    if i == j:
        return Coh(ident.ctx, ident.ty, (Var(f"{prefix}{i}"),))
    term: Tm = Var(f"{prefix}e{i + 1}")
    for m in range(i + 1, j):
        term = Coh(
            comp.ctx,
            comp.ty,
            (
                Var(f"{prefix}{i}"),
                Var(f"{prefix}{m}"),
                term,
                Var(f"{prefix}{m + 1}"),
                Var(f"{prefix}e{m + 1}"),
            ),
        )
    return term


def monotone_sub(
    env: Environment, src_arrows: int, src_prefix: str, dst_prefix: str, image: list[int]
) -> Sub:
    """The substitution sending chain ``src`` into chain ``dst`` along a
    monotone vertex map (``image[i]`` is the destination of vertex i)."""
    assert len(image) == src_arrows + 1
    terms: list[Tm] = [Var(f"{dst_prefix}{image[0]}")]
    for i in range(1, src_arrows + 1):
        terms.append(Var(f"{dst_prefix}{image[i]}"))
        terms.append(chain_path(env, dst_prefix, image[i - 1], image[i]))
    return tuple(terms)


def random_monotone(rng: random.Random, src_arrows: int, dst_arrows: int) -> list[int]:
    points = sorted(rng.randint(0, dst_arrows) for _ in range(src_arrows + 1))
    return points


def random_chain_sub(
    rng: random.Random,
    env: Environment,
    src_arrows: int,
    dst_arrows: int,
    src_prefix: str,
    dst_prefix: str,
) -> tuple[Context, Sub, Context]:
    """(gamma, sub, delta) with delta |- sub : gamma, both chain contexts."""
    gamma = chain_ctx(src_arrows, src_prefix)
    delta = chain_ctx(dst_arrows, dst_prefix)
    image = random_monotone(rng, src_arrows, dst_arrows)
    return gamma, monotone_sub(env, src_arrows, src_prefix, dst_prefix, image), delta


# ---------------------------------------------------------------------------
# brute-force globular morphisms


def globular_morphisms(a: GlobularSet, b: GlobularSet) -> Iterator[dict[str, str]]:
    """Every dimension-preserving cell map commuting with source and target."""
    cells = [c for layer in a.cells for c in layer]

    def candidates(c: str, assignment: dict[str, str]) -> list[str]:
        d = a.dim_of(c)
        if d > b.top_dim:
            return []
        if d == 0:
            return list(b.cells[0])
        return [
            e
            for e in b.cells[d]
            if b.src[e] == assignment[a.src[c]] and b.tgt[e] == assignment[a.tgt[c]]
        ]

    def backtrack(i: int, assignment: dict[str, str]) -> Iterator[dict[str, str]]:
        if i == len(cells):
            yield dict(assignment)
            return
        c = cells[i]
        for e in candidates(c, assignment):
            assignment[c] = e
            yield from backtrack(i + 1, assignment)
            del assignment[c]

    yield from backtrack(0, {})

"""Semantic oracle: globular sets, the before-order, and Batanin trees.

Contexts built from variables denote finite globular sets (one cell per
entry).  On a globular set, the strict *before* relation is the transitive
closure of "source comes before a cell, which comes before its target".  A
non-empty finite globular set is a pasting diagram exactly when that relation
is linear, which gives an independent check of the syntactic pasting-scheme
judgment: a context passes `check_ps` iff its globular set is linear *and* the
context lists its cells in the one canonical order (`canonical_ps_context`).

Batanin trees are a third presentation: the sectors of a finite planar rooted
tree form a globular set, and walking the tree's contour enumerates the
sectors exactly in the before-order.  Enumerating all trees up to a size bound
therefore enumerates all pasting diagrams up to that size, which drives the
cross-validation suite (`run_oracle`).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .errors import CheckError
from .pasting import Side, boundary, check_ps
from .syntax import (
    OBJ,
    Context,
    Hom,
    Ty,
    Var,
    dim_context,
    dim_type,
    format_context,
)


@dataclass
class GlobularSet:
    """Finite globular set: cells per dimension plus source/target maps.

    ``cells[n]`` lists the n-cells in a fixed (but semantically irrelevant)
    order; ``src``/``tgt`` send each cell of dimension >= 1 to a cell one
    dimension below.  The globular identities are asserted on construction.
    """

    cells: tuple[tuple[str, ...], ...]
    src: dict[str, str] = field(default_factory=dict)
    tgt: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        while self.cells and not self.cells[-1]:
            self.cells = self.cells[:-1]
        dims: dict[str, int] = {}
        for n, layer in enumerate(self.cells):
            for c in layer:
                if c in dims:
                    raise ValueError(f"cell '{c}' occurs twice")
                dims[c] = n
        for c, n in dims.items():
            if n == 0:
                if c in self.src or c in self.tgt:
                    raise ValueError(f"0-cell '{c}' has a boundary")
                continue
            for mapping, label in ((self.src, "source"), (self.tgt, "target")):
                if c not in mapping:
                    raise ValueError(f"cell '{c}' has no {label}")
                if dims.get(mapping[c]) != n - 1:
                    raise ValueError(
                        f"{label} of '{c}' is not a cell one dimension below"
                    )
        for mapping in (self.src, self.tgt):
            for c in mapping:
                if c not in dims:
                    raise ValueError(f"boundary map defined on unknown cell '{c}'")
        # globular identities: ss = st and ts = tt
        for c, n in dims.items():
            if n >= 2:
                s, t = self.src[c], self.tgt[c]
                if self.src[s] != self.src[t] or self.tgt[s] != self.tgt[t]:
                    raise ValueError(f"globular identities fail at cell '{c}'")
        self._dims = dims

    def dim_of(self, cell: str) -> int:
        return self._dims[cell]

    def all_cells(self) -> tuple[str, ...]:
        return tuple(c for layer in self.cells for c in layer)

    @property
    def top_dim(self) -> int:
        return len(self.cells) - 1

    def size(self) -> int:
        return sum(len(layer) for layer in self.cells)


@dataclass(frozen=True)
class TriangleOrder:
    """The strict before-relation of a globular set, transitively closed."""

    cells: tuple[str, ...]
    pairs: frozenset[tuple[str, str]]

    def holds(self, a: str, b: str) -> bool:
        return (a, b) in self.pairs

    def is_linear(self) -> bool:
        if not self.cells:
            return False
        for a in self.cells:
            if (a, a) in self.pairs:
                return False
        for a, b in itertools.combinations(self.cells, 2):
            if (a, b) not in self.pairs and (b, a) not in self.pairs:
                return False
        return True

    def maximal(self) -> tuple[str, ...]:
        return tuple(
            a for a in self.cells if not any((a, b) in self.pairs for b in self.cells)
        )


def triangle(gs: GlobularSet) -> TriangleOrder:
    cells = gs.all_cells()
    succ: dict[str, set[str]] = {c: set() for c in cells}
    for c in cells:
        if gs.dim_of(c) >= 1:
            succ[gs.src[c]].add(c)
            succ[c].add(gs.tgt[c])
    pairs: set[tuple[str, str]] = set()
    for a in cells:
        # depth-first reachability from a through the generating edges
        stack = list(succ[a])
        reached: set[str] = set()
        while stack:
            b = stack.pop()
            if b in reached:
                continue
            reached.add(b)
            stack.extend(succ[b])
        pairs.update((a, b) for b in reached)
    return TriangleOrder(cells, frozenset(pairs))


def is_linear(gs: GlobularSet) -> bool:
    if gs.size() == 0:
        return False
    return triangle(gs).is_linear()


def linear_order(gs: GlobularSet) -> list[str]:
    """Cells sorted by the before-order; raises on non-linear input."""
    order = triangle(gs)
    if not order.is_linear():
        raise ValueError("globular set is not linear in the before-order")
    cells = gs.all_cells()
    below = {c: sum(1 for d in cells if order.holds(d, c)) for c in cells}
    return sorted(cells, key=below.__getitem__)


# ---------------------------------------------------------------------------
# contexts <-> globular sets


def to_globular(ctx: Context) -> GlobularSet:
    """The globular set of a well-formed context whose types are built from
    variables (one cell per entry, boundaries read off the arrow types)."""
    layers: dict[int, list[str]] = {}
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    for name, ty in ctx:
        d = dim_type(ty)
        layers.setdefault(d, []).append(name)
        if isinstance(ty, Hom):
            if not (isinstance(ty.src, Var) and isinstance(ty.tgt, Var)):
                raise ValueError(
                    f"entry '{name}' has non-variable endpoints; no globular "
                    "set corresponds to it"
                )
            src[name] = ty.src.name
            tgt[name] = ty.tgt.name
    top = max(layers) if layers else -1
    cells = tuple(tuple(layers.get(d, ())) for d in range(top + 1))
    return GlobularSet(cells, src, tgt)


def canonical_ps_context(gs: GlobularSet) -> Context:
    """The unique pasting-scheme context presenting a linear globular set.

    Replays the cells in before-order through the focus machine: the first
    cell starts the context, each cell one dimension above the focus attaches
    a fresh pair, and each cell one dimension below walks to the target.  Cell
    identifiers are kept as variable names, so a context round-trips exactly.
    """
    order = linear_order(gs)
    first = order[0]
    if gs.dim_of(first) != 0:
        raise ValueError("minimal cell of a linear globular set must be 0-dimensional")
    entries: list[tuple[str, Ty]] = [(first, OBJ)]
    declared = {first}
    focus_var, focus_ty = first, OBJ

    for cell in order[1:]:
        d = gs.dim_of(cell)
        fd = dim_type(focus_ty)
        if d == fd + 1 and gs.src[cell] == focus_var:
            y = gs.tgt[cell]
            if y in declared or cell in declared:
                raise ValueError("linear order revisits a declared cell")
            edge_ty = Hom(focus_ty, Var(focus_var), Var(y))
            entries.append((y, focus_ty))
            entries.append((cell, edge_ty))
            declared.update((y, cell))
            focus_var, focus_ty = cell, edge_ty
        elif (
            d + 1 == fd
            and isinstance(focus_ty, Hom)
            and Var(cell) == focus_ty.tgt
        ):
            focus_var, focus_ty = cell, focus_ty.base
        else:
            raise ValueError(
                f"cell '{cell}' does not continue the pasting replay at focus "
                f"'{focus_var}'"
            )
    if dim_type(focus_ty) != 0:
        raise ValueError("pasting replay did not finish on a 0-cell")
    return tuple(entries)


def disk_context(n: int) -> Context:
    """The n-disk as a pasting-scheme context (2n+1 entries)."""
    if n < 0:
        raise ValueError("disk dimension must be non-negative")
    if n == 0:
        return (("x0", OBJ),)
    entries: list[tuple[str, Ty]] = [("x0m", OBJ)]
    edge: str = "x0m"
    edge_ty: Ty = OBJ
    for k in range(1, n + 1):
        y = f"x{k - 1}p"
        f = f"x{k}m" if k < n else f"x{k}"
        f_ty = Hom(edge_ty, Var(edge), Var(y))
        entries.append((y, edge_ty))
        entries.append((f, f_ty))
        edge, edge_ty = f, f_ty
    return tuple(entries)


def disk_globular(n: int) -> GlobularSet:
    return to_globular(disk_context(n))


# ---------------------------------------------------------------------------
# Batanin trees


@dataclass(frozen=True)
class BataninTree:
    """Finite planar rooted tree; children are ordered left to right."""

    children: tuple["BataninTree", ...] = ()

    def n_vertices(self) -> int:
        return 1 + sum(c.n_vertices() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def vertices_per_level(self) -> list[int]:
        counts = [1]
        for child in self.children:
            for i, k in enumerate(child.vertices_per_level(), start=1):
                if i == len(counts):
                    counts.append(0)
                counts[i] += k
        return counts


def _forests(total: int) -> Iterator[tuple[BataninTree, ...]]:
    if total == 0:
        yield ()
        return
    for first_size in range(1, total + 1):
        for first in _trees_exactly(first_size):
            for rest in _forests(total - first_size):
                yield (first,) + rest


def _trees_exactly(n: int) -> Iterator[BataninTree]:
    for forest in _forests(n - 1):
        yield BataninTree(forest)


def trees_with_vertices(n: int) -> list[BataninTree]:
    """All planar rooted trees with exactly n vertices (a Catalan number)."""
    if n < 1:
        raise ValueError("a tree has at least one vertex")
    return list(_trees_exactly(n))


def enumerate_trees(max_vertices: int) -> Iterator[BataninTree]:
    """All planar rooted trees with up to ``max_vertices`` vertices, smallest
    first, each exactly once (the tuple encoding is canonical)."""
    if max_vertices < 1:
        raise ValueError("max_vertices must be at least 1")
    for n in range(1, max_vertices + 1):
        yield from _trees_exactly(n)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def tree_to_globular(tree: BataninTree) -> GlobularSet:
    """The globular set of sectors of a tree.

    A vertex with k children has k+1 sectors (the gaps around its children,
    including the two outer ones); a sector of a level-(n+1) vertex is an
    (n+1)-cell whose source and target are the two sectors of the parent
    adjacent to that vertex.
    """
    layers: dict[int, list[str]] = {}
    src: dict[str, str] = {}
    tgt: dict[str, str] = {}
    counters: dict[int, int] = {}

    def new_cell(level: int) -> str:
        i = counters.get(level, 0)
        counters[level] = i + 1
        return f"c{level}_{i}"

    def visit(node: BataninTree, level: int, parent: Optional[tuple[str, str]]) -> None:
        sectors = [new_cell(level) for _ in range(len(node.children) + 1)]
        layers.setdefault(level, []).extend(sectors)
        if parent is not None:
            left, right = parent
            for s in sectors:
                src[s] = left
                tgt[s] = right
        for j, child in enumerate(node.children):
            visit(child, level + 1, (sectors[j], sectors[j + 1]))

    visit(tree, 0, None)
    top = max(layers)
    cells = tuple(tuple(layers.get(d, ())) for d in range(top + 1))
    return GlobularSet(cells, src, tgt)


def globular_to_tree(gs: GlobularSet) -> BataninTree:
    """Inverse of `tree_to_globular` up to cell naming (linear input only).

    In the before-order, the 0-cells split the sequence into slabs of higher
    cells; each slab, shifted down a dimension, is again linear and yields one
    child subtree.
    """
    return _segment_tree(gs, linear_order(gs), 0)


def _segment_tree(gs: GlobularSet, order: list[str], level: int) -> BataninTree:
    if not order:
        raise ValueError("empty slab while rebuilding a tree")
    marks = [i for i, c in enumerate(order) if gs.dim_of(c) == level]
    if not marks or marks[0] != 0 or marks[-1] != len(order) - 1:
        raise ValueError("slab is not delimited by cells of its base dimension")
    children = tuple(
        _segment_tree(gs, order[a + 1 : b], level + 1)
        for a, b in zip(marks, marks[1:])
    )
    return BataninTree(children)


# ---------------------------------------------------------------------------
# boundaries, computed on the globular side


def globular_boundary(gs: GlobularSet, level: int, side: Side) -> GlobularSet:
    """Collapse a linear globular set above ``level``.

    Cells of dimension > level are removed; cells of dimension == level are
    clustered by being connected through higher cells, and each cluster keeps
    its first (source side) or last (target side) member in the before-order.
    """
    if level < 0:
        raise ValueError("boundary level must be non-negative")
    order = linear_order(gs)
    position = {c: i for i, c in enumerate(order)}
    if level >= gs.top_dim:
        return GlobularSet(gs.cells, dict(gs.src), dict(gs.tgt))

    # union-find over the level-cells, glued by (level+1)-cells
    parent: dict[str, str] = {c: c for c in gs.cells[level]}

    def find(c: str) -> str:
        while parent[c] != c:
            parent[c] = parent[parent[c]]
            c = parent[c]
        return c

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    if level + 1 <= gs.top_dim:
        for c in gs.cells[level + 1]:
            union(gs.src[c], gs.tgt[c])

    clusters: dict[str, list[str]] = {}
    for c in gs.cells[level]:
        clusters.setdefault(find(c), []).append(c)
    pick = min if side == "source" else max
    keep = {
        pick(members, key=position.__getitem__) for members in clusters.values()
    }

    cells = gs.cells[:level] + (
        tuple(c for c in gs.cells[level] if c in keep),
    )
    kept = {c for layer in cells for c in layer}
    src = {c: s for c, s in gs.src.items() if c in kept}
    tgt = {c: t for c, t in gs.tgt.items() if c in kept}
    return GlobularSet(cells, src, tgt)


def gset_equal(a: GlobularSet, b: GlobularSet) -> bool:
    """Equality on the nose (same cell names), ignoring per-layer listing order."""
    if len(a.cells) != len(b.cells):
        return False
    for la, lb in zip(a.cells, b.cells):
        if set(la) != set(lb):
            return False
    return a.src == b.src and a.tgt == b.tgt


def gset_isomorphic_linear(a: GlobularSet, b: GlobularSet) -> bool:
    """Isomorphism of linear globular sets: align the before-orders."""
    order_a, order_b = linear_order(a), linear_order(b)
    if len(order_a) != len(order_b):
        return False
    rename = dict(zip(order_a, order_b))
    for c in order_a:
        if a.dim_of(c) != b.dim_of(rename[c]):
            return False
        if a.dim_of(c) >= 1:
            if rename[a.src[c]] != b.src[rename[c]]:
                return False
            if rename[a.tgt[c]] != b.tgt[rename[c]]:
                return False
    return True


# ---------------------------------------------------------------------------
# cross-validation of the syntactic checker against the oracle


def context_order_mutations(ctx: Context) -> list[Context]:
    """Deterministic reorderings of a context's entries.

    Reordering never changes the underlying globular set, so every mutation
    stays linear in the before-order; the canonical-form property says the
    syntactic judgment must reject all of them.  Small contexts yield every
    non-identity permutation; longer ones yield all adjacent transpositions
    plus the full reversal.
    """
    n = len(ctx)
    out: list[Context] = []
    if n <= 5:
        for perm in itertools.permutations(range(n)):
            if perm == tuple(range(n)):
                continue
            out.append(tuple(ctx[i] for i in perm))
        return out
    for i in range(n - 1):
        swapped = list(ctx)
        swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
        out.append(tuple(swapped))
    out.append(tuple(reversed(ctx)))
    return out


@dataclass
class SizeStats:
    vertices: int
    trees: int = 0
    contexts_ok: int = 0
    mutations_rejected: int = 0
    boundary_checks: int = 0


@dataclass
class OracleReport:
    max_vertices: int
    sizes: list[SizeStats] = field(default_factory=list)
    mismatches: list[str] = field(default_factory=list)

    @property
    def contexts_checked(self) -> int:
        return sum(s.contexts_ok for s in self.sizes)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def run_oracle(max_vertices: int = 6) -> OracleReport:
    """Cross-validate `check_ps` against the before-order oracle on every
    pasting diagram with up to ``max_vertices`` tree vertices."""
    report = OracleReport(max_vertices)
    for n in range(1, max_vertices + 1):
        stats = SizeStats(vertices=n)
        report.sizes.append(stats)
        for tree in trees_with_vertices(n):
            stats.trees += 1
            gs = tree_to_globular(tree)
            if not is_linear(gs):
                report.mismatches.append(
                    f"tree {tree} has a non-linear globular set"
                )
                continue
            ctx = canonical_ps_context(gs)
            try:
                trace = check_ps(ctx)
            except CheckError as err:
                report.mismatches.append(
                    f"canonical context rejected: {format_context(ctx)} ({err})"
                )
                continue
            if list(trace.focus_vars()) != linear_order(gs):
                report.mismatches.append(
                    f"trace order differs from before-order for "
                    f"{format_context(ctx)}"
                )
            if canonical_ps_context(to_globular(ctx)) != ctx:
                report.mismatches.append(
                    f"context does not round-trip: {format_context(ctx)}"
                )
            if globular_to_tree(gs) != tree:
                report.mismatches.append(
                    f"tree does not round-trip through its globular set: {tree}"
                )
            stats.contexts_ok += 1

            for mutated in context_order_mutations(ctx):
                if not is_linear(to_globular(mutated)):
                    report.mismatches.append(
                        f"mutation lost linearity: {format_context(mutated)}"
                    )
                    continue
                try:
                    check_ps(mutated)
                except CheckError:
                    stats.mutations_rejected += 1
                else:
                    report.mismatches.append(
                        f"non-canonical order accepted: {format_context(mutated)}"
                    )

            dim = dim_context(ctx)
            for level in range(dim):
                for side in ("source", "target"):
                    b_ctx = boundary(ctx, side, level)
                    if not gset_equal(
                        to_globular(b_ctx), globular_boundary(gs, level, side)
                    ):
                        report.mismatches.append(
                            f"boundary mismatch at level {level} ({side}) for "
                            f"{format_context(ctx)}"
                        )
                    stats.boundary_checks += 1
    return report

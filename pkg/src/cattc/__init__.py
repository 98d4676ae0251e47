"""cattc: a typechecker for coherences in weak omega-categories.

The library decides which contexts are pasting schemes, validates coherence
declarations under three modes (category, pasting-scheme groupoid, and the
weaker contractible-context groupoid), and cross-checks the syntactic pasting
judgment against an independent globular-set oracle based on linearity of the
before-order.
"""

from __future__ import annotations

from .errors import CheckError, ErrorKind, ParseError
from .frontend import CohDecl, Printer, elaborate, lex, parse
from .globular import (
    BataninTree,
    GlobularSet,
    OracleReport,
    TriangleOrder,
    canonical_ps_context,
    catalan,
    context_order_mutations,
    disk_context,
    disk_globular,
    enumerate_trees,
    globular_boundary,
    globular_to_tree,
    gset_equal,
    gset_isomorphic_linear,
    is_linear,
    linear_order,
    run_oracle,
    to_globular,
    tree_to_globular,
    trees_with_vertices,
    triangle,
)
from .kernel import (
    CohDef,
    Environment,
    Mode,
    check_coherence,
    check_context,
    check_sub,
    check_term,
    check_type,
    validate_coherence_body,
)
from .pasting import (
    PsStep,
    PsTrace,
    boundary,
    check_contractible,
    check_ps,
    contractibility_failure,
    is_ps,
    source_context,
    target_context,
)
from .syntax import (
    OBJ,
    Coh,
    Context,
    Hom,
    Obj,
    Sub,
    Tm,
    Ty,
    Var,
    alpha_normalize,
    alpha_normalize_binding,
    apply_sub_term,
    apply_sub_type,
    coherence_depth,
    compose_sub,
    ctx_var_set,
    ctx_vars,
    dim_context,
    dim_type,
    format_context,
    format_term,
    format_type,
    fv,
    identity_sub,
    terms_equal,
    types_equal,
)

__version__ = "0.1.0"

__all__ = [
    "OBJ",
    "BataninTree",
    "CheckError",
    "Coh",
    "CohDecl",
    "CohDef",
    "Context",
    "Environment",
    "ErrorKind",
    "GlobularSet",
    "Hom",
    "Mode",
    "Obj",
    "OracleReport",
    "ParseError",
    "Printer",
    "PsStep",
    "PsTrace",
    "Sub",
    "Tm",
    "TriangleOrder",
    "Ty",
    "Var",
    "alpha_normalize",
    "alpha_normalize_binding",
    "apply_sub_term",
    "apply_sub_type",
    "boundary",
    "canonical_ps_context",
    "catalan",
    "check_coherence",
    "check_context",
    "check_contractible",
    "check_ps",
    "check_sub",
    "check_term",
    "check_type",
    "coherence_depth",
    "compose_sub",
    "context_order_mutations",
    "contractibility_failure",
    "ctx_var_set",
    "ctx_vars",
    "dim_context",
    "dim_type",
    "disk_context",
    "disk_globular",
    "elaborate",
    "enumerate_trees",
    "format_context",
    "format_term",
    "format_type",
    "fv",
    "globular_boundary",
    "globular_to_tree",
    "gset_equal",
    "gset_isomorphic_linear",
    "identity_sub",
    "is_linear",
    "is_ps",
    "lex",
    "linear_order",
    "parse",
    "run_oracle",
    "source_context",
    "target_context",
    "terms_equal",
    "to_globular",
    "tree_to_globular",
    "trees_with_vertices",
    "triangle",
    "types_equal",
    "validate_coherence_body",
]

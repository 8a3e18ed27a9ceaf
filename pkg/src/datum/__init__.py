"""Finite data types: alphabets, computable operations, R/P-subtyping and type graphs."""

from .curry import CurriedOp, ResidualFunction, apply_curried, curry, curry_over, restrict_curried
from .errors import DatumError
from .hierarchy import (
    CastPath,
    TypeGraph,
    add_edge,
    check_dimension_acyclicity,
    detect_cycles,
    export_graph,
    find_cast_path,
    verify_order,
)
from .kernel import (
    Alphabet,
    NatSegment,
    Operation,
    StepBudget,
    builtin_op,
    closure_enumerate,
    compose,
    evaluate,
    make_alphabet,
    mu_rec,
    prim_rec,
    table_op,
)
from .report import Check, VerificationReport
from .subtyping import (
    Projection,
    SubtypeEdge,
    check_contains_restricted,
    check_substitutability,
    derive_extension,
    derive_restriction,
    make_projection,
    p_cast,
    r_cast,
    validate_projection,
)
from .typesys import DataType, ProductSpec, datum_check, make_type, product_type

__version__ = "0.1.0"

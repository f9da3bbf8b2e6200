"""Exact construction and certification of Poisson pencils admitting a
prescribed family of functions in involution.

The pipeline: declare variables and an anchor structure (symplectic or
cosymplectic), prescribe the family with its partition into Casimir
polynomials, supply or solve for the two 2-forms sigma0, sigma1, assemble
the bivector pencil, then certify every claimed property independently.
All arithmetic is exact over the rationals.
"""

from . import errors
from .errors import (
    ConditionFailed,
    Degenerate,
    DegenerateLeading,
    DegenerateTrailing,
    DegenerateVolume,
    DegreeError,
    DimensionMismatch,
    DivisionByZero,
    ForbiddenVariable,
    ForgeError,
    Inconsistent,
    NegativeExponent,
    NonExactDivision,
    NotReducible,
    NotSemiBasic,
    OddDimension,
    ParseError,
    PoleAtPoint,
    RankDrop,
    RankTooSmall,
    SamplingExhausted,
    SpecError,
    TableMismatch,
    UnknownFixture,
    UnknownVariable,
    UnsupportedDegrees,
)
from .anchor import (
    CosymplecticAnchor,
    LiftedAnchor,
    SymplecticAnchor,
    bivector_sharp,
    build_cosymplectic,
    build_symplectic,
    codifferential,
    flat,
    full_matrix,
    hamiltonian_vf,
    lift,
    poisson_bracket,
    reduce_bivector,
    sharp,
    star,
)
from .cli import SpecFile, main, parse_spec, run
from .exterior import (
    Form,
    MultiVector,
    differential,
    exterior_derivative,
    from_records,
    interior,
    pairing,
    schouten,
    wedge,
    wedge_power,
)
from .fixtures import FIXTURE_NAMES, FixtureSpec, load_fixture
from .pencil import (
    AnsatzSolution,
    CasimirPolynomial,
    FunctionFamily,
    Pencil,
    SigmaPair,
    assemble_pencil,
    bracket_closed_form,
    build_family,
    casimir_function,
    closed_form_interior,
    jacobian_bracket,
    solve_recursion_ansatz,
)
from .report import Report, Verdict
from .symexpr import (
    Polynomial,
    RationalFunction,
    RationalPoint,
    VarKind,
    VarTable,
    migrate_ratfun,
    parse_ratfun,
    sample_point,
)
from .verify import (
    PencilCertificate,
    casimir_check,
    certify,
    compatibility_check,
    involution_table,
    jacobi_check,
    lenard_magri_check,
    rank_at_point,
    rank_at_sample,
)

__version__ = "0.1.0"

__all__ = [
    "AnsatzSolution",
    "CasimirPolynomial",
    "ConditionFailed",
    "CosymplecticAnchor",
    "Degenerate",
    "DegenerateLeading",
    "DegenerateTrailing",
    "DegenerateVolume",
    "DegreeError",
    "DimensionMismatch",
    "DivisionByZero",
    "FIXTURE_NAMES",
    "FixtureSpec",
    "ForbiddenVariable",
    "ForgeError",
    "Form",
    "FunctionFamily",
    "Inconsistent",
    "LiftedAnchor",
    "MultiVector",
    "NegativeExponent",
    "NonExactDivision",
    "NotReducible",
    "NotSemiBasic",
    "OddDimension",
    "ParseError",
    "Pencil",
    "PencilCertificate",
    "PoleAtPoint",
    "Polynomial",
    "RankDrop",
    "RankTooSmall",
    "RationalFunction",
    "RationalPoint",
    "Report",
    "SamplingExhausted",
    "SigmaPair",
    "SpecError",
    "SpecFile",
    "SymplecticAnchor",
    "TableMismatch",
    "UnknownFixture",
    "UnknownVariable",
    "UnsupportedDegrees",
    "VarKind",
    "VarTable",
    "Verdict",
    "assemble_pencil",
    "bivector_sharp",
    "bracket_closed_form",
    "build_cosymplectic",
    "build_family",
    "build_symplectic",
    "casimir_check",
    "casimir_function",
    "certify",
    "closed_form_interior",
    "codifferential",
    "compatibility_check",
    "differential",
    "errors",
    "exterior_derivative",
    "flat",
    "from_records",
    "full_matrix",
    "hamiltonian_vf",
    "interior",
    "involution_table",
    "jacobi_check",
    "jacobian_bracket",
    "lenard_magri_check",
    "lift",
    "load_fixture",
    "main",
    "migrate_ratfun",
    "pairing",
    "parse_ratfun",
    "parse_spec",
    "poisson_bracket",
    "rank_at_point",
    "rank_at_sample",
    "reduce_bivector",
    "run",
    "schouten",
    "sharp",
    "solve_recursion_ansatz",
    "star",
    "wedge",
    "wedge_power",
]

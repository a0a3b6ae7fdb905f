"""Exact norm-preserving directions of 2x2 and 3x3 rational matrices.

The package answers, entirely in exact rational arithmetic: which lines
through the origin keep their Euclidean length under a given matrix?
It solves the planar case completely, classifies the solution cone in
three dimensions, reduces the hunt for integer solution lines to binary
quadratic Diophantine equations (with a 2-adic impossibility certificate
and a two-parameter solution family from any seed), applies the machinery
to hyperbolic torus automorphisms with exact quadratic-field arithmetic,
and renders deterministic figures.  The ``normlines`` command line tool
exposes every piece with canonical JSON output.
"""

from .core import (
    BinaryForm,
    GramForm2,
    Matrix2,
    Matrix3,
    PrimitiveDirection,
    TernaryForm,
    evaluate_form,
    gram2,
    gram3,
    normalize_direction,
    rat,
    verify_norm_preserving,
)
from .planar import (
    FAMILY_VARIANTS,
    FamilyVariant,
    IrrationalSlope,
    LineSolution2,
    PlanarLine,
    SolutionKind,
    existence_condition,
    family_k,
    family_matrix,
    family_solutions,
    integer_lines2,
    is_eigenline,
    pythagorean_family,
    solve_lines2,
)
from .cone import (
    PARAMETRIC_MATRIX,
    ConeClassification,
    ConeKind,
    PivotReduction,
    classify_cone,
    cone_form,
    default_pivot,
    existence3,
    integer_line_search3,
    parametric_lines,
    pivot_reduce,
    plane_integer_basis,
)
from .diophantine import (
    IntBinaryForm,
    PiezasFamily,
    SquareRepInstance,
    integer_sqrt,
    lift_to_lines,
    piezas_family,
    square_rep_bruteforce,
    two_adic_obstruction,
)
from .torus import (
    QuadElement,
    TorusMatrix,
    autom_family,
    matrix_power,
    solution_lines_for_autom,
    stable_iterate,
    unstable_iterate,
)
from .render import (
    ellipse_points,
    fmt6,
    render_scene2,
    render_scene3,
)

__version__ = "0.1.0"

__all__ = [
    "BinaryForm",
    "ConeClassification",
    "ConeKind",
    "FAMILY_VARIANTS",
    "FamilyVariant",
    "GramForm2",
    "IntBinaryForm",
    "IrrationalSlope",
    "LineSolution2",
    "Matrix2",
    "Matrix3",
    "PARAMETRIC_MATRIX",
    "PiezasFamily",
    "PivotReduction",
    "PlanarLine",
    "PrimitiveDirection",
    "QuadElement",
    "SolutionKind",
    "SquareRepInstance",
    "TernaryForm",
    "TorusMatrix",
    "autom_family",
    "classify_cone",
    "cone_form",
    "default_pivot",
    "ellipse_points",
    "evaluate_form",
    "existence3",
    "existence_condition",
    "family_k",
    "family_matrix",
    "family_solutions",
    "fmt6",
    "gram2",
    "gram3",
    "integer_line_search3",
    "integer_lines2",
    "integer_sqrt",
    "is_eigenline",
    "lift_to_lines",
    "matrix_power",
    "normalize_direction",
    "parametric_lines",
    "piezas_family",
    "pivot_reduce",
    "plane_integer_basis",
    "pythagorean_family",
    "rat",
    "render_scene2",
    "render_scene3",
    "solution_lines_for_autom",
    "solve_lines2",
    "square_rep_bruteforce",
    "stable_iterate",
    "two_adic_obstruction",
    "unstable_iterate",
    "verify_norm_preserving",
]

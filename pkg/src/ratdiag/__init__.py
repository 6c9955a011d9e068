"""Diagonal asymptotics of Taylor coefficients of P / prod(1 - a_i z - b_i w)."""

from .asym import (
    AsymptoticTerm,
    evaluate_log_term,
    horn_limit,
    main_term,
    pair_saddle_constant,
    saddle_constant,
    vertex_constant,
)
from .errors import RatDiagError
from .fan import (
    BoundaryRay,
    Cone,
    DirVector,
    Fan,
    Interior,
    OnAxis,
    Point2Q,
    Polygon,
    argmax_oracle,
    build_fan,
    build_polygon,
    classify,
    eta,
    intersect,
    saddle_point,
)
from .harness import (
    check_convergence,
    convergence_table,
    dominance_check,
    horn_table,
    verify,
)
from .model import (
    GFModel,
    LinearFactor,
    Poly2,
    ValidationReport,
    delta,
    delta3,
    parse_model,
    random_valid_model,
    validate,
)
from .parfrac import PairConstants, decompose, triple_constants, verify_decomposition
from .series import CoeffTable, coeff, convolve_singles, expand, expanded_denominator, log_value

__version__ = "0.1.0"

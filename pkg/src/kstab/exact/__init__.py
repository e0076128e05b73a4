"""Exact scalars, polynomials, sign certificates, piecewise bounds and integrals."""
from .expr import FormulaError, parse_rational_fn, parse_scalar
from .integrate import (
    BoundsCross,
    NonPolynomialIntegrand,
    enclose_rational_integral,
    integrate_poly_in_v,
    integrate_rational_in_u,
)
from .numbers import QuadExt, Scalar, enclosure, fmt, rational_between, sign, simplify
from .piecewise import (
    AffineMap,
    BoundFunction,
    DomainMismatch,
    Piece,
    is_positive,
    piecewise_min,
    piecewise_min_all,
    substitute,
)
from .poly import BiPoly, RationalFn, UniPoly
from .roots import HighDegreeRoot, factor, real_roots
from .sturm import (
    IntervalSign,
    SignReport,
    count_roots,
    count_roots_open,
    isolate_all,
    isolate_root,
    nonnegative_on,
    positive_on,
    sturm_sequence,
    sturm_sign_on_interval,
)

__all__ = [
    "AffineMap",
    "BiPoly",
    "BoundFunction",
    "BoundsCross",
    "DomainMismatch",
    "FormulaError",
    "HighDegreeRoot",
    "IntervalSign",
    "NonPolynomialIntegrand",
    "Piece",
    "QuadExt",
    "RationalFn",
    "Scalar",
    "SignReport",
    "UniPoly",
    "count_roots",
    "count_roots_open",
    "enclose_rational_integral",
    "enclosure",
    "factor",
    "fmt",
    "integrate_poly_in_v",
    "integrate_rational_in_u",
    "is_positive",
    "isolate_all",
    "isolate_root",
    "nonnegative_on",
    "parse_rational_fn",
    "parse_scalar",
    "piecewise_min",
    "piecewise_min_all",
    "positive_on",
    "rational_between",
    "real_roots",
    "sign",
    "simplify",
    "sturm_sequence",
    "sturm_sign_on_interval",
    "substitute",
]

"""Exact arithmetic substrate: rationals, polynomials, intervals, certified real roots."""

from fractions import Fraction as Rat

from .interval import RatInterval, as_interval, ceil_to, floor_to, sqrt_interval
from .unipoly import (
    CertifiedRoot,
    NotSquareFreeError,
    UniPoly,
    count_real_roots,
    integer_roots_in,
    is_square_free,
    isolate_real_roots,
    poly_gcd,
    square_free_part,
    sturm_sequence,
)
from .symbolic import RatFun, RepresentationError, SymbolicPoly, coefficient_of_beta, substitute


def interval_eval(p: UniPoly, x) -> RatInterval:
    """Enclosure of ``p`` over ``x`` by interval Horner; exact for point intervals."""
    x = as_interval(x)
    if x.lo == x.hi:
        return RatInterval.point(p(x.lo))
    acc = RatInterval.point(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


__all__ = [
    "Rat",
    "RatInterval",
    "as_interval",
    "ceil_to",
    "floor_to",
    "sqrt_interval",
    "CertifiedRoot",
    "NotSquareFreeError",
    "UniPoly",
    "count_real_roots",
    "integer_roots_in",
    "is_square_free",
    "isolate_real_roots",
    "poly_gcd",
    "square_free_part",
    "sturm_sequence",
    "interval_eval",
    "RatFun",
    "RepresentationError",
    "SymbolicPoly",
    "coefficient_of_beta",
    "substitute",
]

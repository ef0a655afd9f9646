"""Exact slope stability of Fano manifolds along divisors and subvarieties."""

from .catalog import build_del_pezzo, catalog, get_model, minus_one_classes, scan_destabilizers
from .errors import (
    DegenerateDivisorError,
    FanoSlopeError,
    InconsistencyError,
    ModelDataError,
    ModelFormatError,
    PreconditionError,
    RationalFormatError,
)
from .exactmath import UniPoly, format_rational, integrate, parse_rational, rational, sign_on_interval
from .io import load_model, loads_model, model_to_dict, resolve_model, save_model
from .lattice import CurveClass, DivisorClass, IntersectionTensor
from .model import Ray, RestrictionModel, VarietyModel, product_model, seshadri_constant, validate_model
from .slope import (
    Convexity,
    NefVerdict,
    Verdict,
    convexity_criterion,
    nef_divisor_criterion,
    product_pullback_xi,
    product_sum_stability,
    ray_filter,
    slope_mu_c,
    subvariety_reduction,
    verdict_with_bounds,
    xi,
    xi_c,
)

__version__ = "0.1.0"

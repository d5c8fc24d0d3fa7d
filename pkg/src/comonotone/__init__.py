"""Comonotone approximation of periodic functions by trigonometric polynomials."""
from ._core import BACKEND
from .counterexamples import build, certify_growth, certify_instance, run_family
from .divided_diff import KnotSet, MonotonePattern, divided_difference
from .errors import ComonotoneError
from .experiments import check_all_lemmas, expected_class, ratio_sweep, table_run
from .minimax import best_algebraic, best_comonotone, best_unconstrained
from .partition import PiecewisePolynomial, build_partition, stitch_S
from .periodic_fn import PeriodicFunctionModel, comonotone_model
from .smoothness import Resolution, modulus_circle, modulus_interval
from .trig_poly import ExtremaCycle, TrigPolynomial, is_comonotone, pi_product

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "ComonotoneError", "ExtremaCycle", "KnotSet", "MonotonePattern",
    "PeriodicFunctionModel", "PiecewisePolynomial", "Resolution", "TrigPolynomial",
    "best_algebraic", "best_comonotone", "best_unconstrained", "build", "build_partition",
    "certify_growth", "certify_instance", "check_all_lemmas", "comonotone_model",
    "divided_difference", "expected_class", "is_comonotone", "modulus_circle",
    "modulus_interval", "pi_product", "ratio_sweep", "run_family", "stitch_S", "table_run",
]

"""Certified computations in dagger (overconvergent) algebras over Q with a p-adic valuation."""
from .algebra import (
    AlgebraElement,
    DaggerPresentation,
    complete_presentation,
    free,
    hyperelliptic,
    localize,
    principal,
    product,
    quotient_norm,
    reduce,
    sublevel,
    torus,
)
from .cech import DiscCover, cech_cohomology, mittag_leffler_split
from .derham import (
    DifferentialForm,
    antiderivative,
    cohomology,
    completed_contrast,
    d,
    kunneth,
    reduce_in_cohomology,
)
from .duality import LaurentTail, pairing_gram, poincare_check, residue_pair
from .errors import DaggerError
from .laurent import LaurentSeries
from .scalar import valuation
from .series import Certificate, OSeries, gauss_valuation, substitute
from .weierstrass import (
    distinguishing_automorphism,
    is_distinguished,
    weierstrass_divide,
    weierstrass_prepare,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "antiderivative",
    "cech_cohomology",
    "Certificate",
    "cohomology",
    "complete_presentation",
    "completed_contrast",
    "d",
    "DaggerError",
    "DaggerPresentation",
    "DifferentialForm",
    "DiscCover",
    "distinguishing_automorphism",
    "free",
    "gauss_valuation",
    "hyperelliptic",
    "is_distinguished",
    "kunneth",
    "LaurentSeries",
    "LaurentTail",
    "localize",
    "mittag_leffler_split",
    "OSeries",
    "pairing_gram",
    "poincare_check",
    "principal",
    "product",
    "quotient_norm",
    "reduce",
    "reduce_in_cohomology",
    "residue_pair",
    "sublevel",
    "substitute",
    "torus",
    "valuation",
    "weierstrass_divide",
    "weierstrass_prepare",
]

"""Gegenbauer tau/Galerkin spectra for the clamped problem D4 u = lambda D2 u."""

from .charpoly import (
    CharPoly,
    even_charpoly,
    odd_charpoly,
    second_order_pair,
    stability_constant,
    stability_poly,
)
from .eig import SpectrumReport, classify, dense_eigs, poly_roots
from .gegenbauer import (
    GegCoeffs,
    GegIndex,
    deriv_at_one,
    diff_coeffs,
    evaluate,
    lobatto_interior_nodes,
    norm_h,
    value_at_one,
)
from .pencil import (
    MethodConfig,
    Pencil,
    assemble,
    legendre_reduced_matrices,
    reduce_to_standard,
)
from .scaled import ScaledReal
from .spectra import charpoly_lambdas, pencil_lambdas, spectrum_report

__version__ = "0.1.0"

__all__ = [
    "CharPoly",
    "GegCoeffs",
    "GegIndex",
    "MethodConfig",
    "Pencil",
    "ScaledReal",
    "SpectrumReport",
    "assemble",
    "charpoly_lambdas",
    "classify",
    "dense_eigs",
    "deriv_at_one",
    "diff_coeffs",
    "evaluate",
    "even_charpoly",
    "legendre_reduced_matrices",
    "lobatto_interior_nodes",
    "norm_h",
    "odd_charpoly",
    "pencil_lambdas",
    "poly_roots",
    "reduce_to_standard",
    "second_order_pair",
    "spectrum_report",
    "stability_constant",
    "stability_poly",
    "value_at_one",
    "__version__",
]

"""Exact tools for matrix pairs (A, B) whose commutator AB - BA commutes with A."""

from .commutant import (
    SylvesterReport,
    analyze,
    commutes_with_commutator,
    in_polynomial_span,
    is_non_derogatory,
    prop3_certificates,
    sample_B,
    shift_to_invertible,
    symbolic_B,
    sylvester_phi,
    sylvester_psi,
)
from .matrix import (
    KernelBasis,
    RMatrix,
    charpoly,
    commutator,
    exp_nilpotent,
    inverse,
    is_nilpotent,
    kron,
    rref_kernel,
    trace,
)
from .mccoy import STReport, WordId, randomized_st_family, st_test, st_test_symbolic
from .multipoly import MPoly
from .scalar import GaussianRational, parse_scalar
from .spectral import (
    PencilPoly,
    PropertyLReport,
    pencil_charpoly,
    property_l,
    property_l_exact_refutation,
    roots,
)

__version__ = "0.1.0"

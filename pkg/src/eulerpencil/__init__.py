"""Finite-dimensional operator encoding of L-function Euler factors.

Exact basepoint solving via the master quadratic, per-prime Euler-factor
matching, the j-invariant moduli map of 2x2 causal pencils, eta-Gram residue
algebra, and the continuum/statistical limits (arcsine universality,
CM Sato-Tate, accumulation).
"""

from .exactmath import (
    LaurentBiPoly,
    Matrix2,
    QuadExt,
    Rational,
    group_pseudoinverse2,
    poly_divrem,
    pseudoinverse2,
    quad_roots,
    residue_at_zero,
)
from .curves import (
    ApTable,
    CatalogueEntry,
    WeierstrassCurve,
    ap_count,
    catalogue_entry,
    cornacchia_candidates,
    curve_invariants,
    good_primes,
    hasse_check,
    legendre_j,
    load_catalogue,
    quartic_to_weierstrass,
)
from .pencil import (
    EtaGram,
    Pencil2,
    adjugate_columns,
    eta_gram,
    j1728_locus_Q,
    j_formula,
    j_formula_tausq,
    lambda_evenness_check,
    monomial_gram8,
    pencil_from_tdd,
    pontryagin_index,
    resolvent_tr_det,
    spectral_poly,
    zco_pencil,
)
from .matching import (
    Basepoint,
    MatchReport,
    basepoint_solve,
    canonical_basepoint,
    cd_matching_ratio,
    discriminant_identity,
    euler_match_verify,
    golden_ratio_spectrum,
    interpolation_obstruction,
    master_quadratic,
    offshell_distance,
    symbolic_reduction_check,
    tco_basepoint,
    zco_basepoint,
    zco_c_trace_invariance,
    zco_euler_factor,
)
from .continuum import (
    ALGEBRAIC,
    TANH,
    Dispersion,
    arcsine_cdf,
    arcsine_closed_form,
    arcsine_pdf,
    chi4,
    dirichlet_L_chi4,
    eta_functional_equation_residual,
    eta_value,
    universality_integral,
)
from .stats import (
    PrimeSeries,
    accumulation_means,
    bulk_count,
    bulk_target,
    delta_p_series,
    sato_tate_report,
)

__version__ = "0.1.0"

"""Spectral polynomial, resolvent, eta-Gram and j-map tests."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerpencil import pencil as pencil_mod
from eulerpencil.exactmath import LaurentBiPoly, QuadExt
from eulerpencil.pencil import (
    DegenerateGramError,
    OnShellError,
    SingularLocusError,
    adjugate_columns,
    eta_gram,
    j1728_locus_Q,
    j_formula,
    j_formula_tausq,
    j_zero_locus_Delta,
    lambda_evenness_check,
    monomial_gram8,
    pencil_from_tdd,
    pencil_matrix,
    pontryagin_index,
    resolvent_tr_det,
    spectral_poly,
    zco_pencil,
)

rationals = st.fractions(
    min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4
)


@st.composite
def pencils(draw):
    tau = draw(rationals)
    delta = draw(rationals)
    Delta = draw(rationals)
    E = draw(st.sampled_from([1, 2, Fraction(1, 2)]))
    return pencil_from_tdd(tau, delta, Delta, E)


# -- invariants ---------------------------------------------------------------


@given(pencils())
@settings(max_examples=60, deadline=None)
def test_invariant_roundtrip_and_mu_relation(pen):
    assert pen.tau == pen.a + pen.d
    assert pen.delta == pen.a - pen.d
    assert pen.Delta == pen.a * pen.d + pen.b_sq
    # mu = (tau^2 - delta^2)/4 - Delta = -b^2
    assert pen.mu == (pen.tau**2 - pen.delta**2) / 4 - pen.Delta
    assert pen.mu == -pen.b_sq


# -- spectral polynomial ------------------------------------------------------


def test_spectral_poly_canonical_oracle():
    # [DERIVED] canonical (2,0,2), E=1:
    # P = u^6 - 2 lam u^3 - u^2 + 2 lam^2
    P = spectral_poly(pencil_from_tdd(2, 0, 2))
    assert P == LaurentBiPoly({(6, 0): 1, (3, 1): -2, (2, 0): -1, (0, 2): 2})


def test_spectral_poly_zco_oracle():
    # [DERIVED] ZCO: P = u^6 - E^2 u^2 - 2E lam u
    P = spectral_poly(zco_pencil(3))
    assert P == LaurentBiPoly({(6, 0): 1, (2, 0): -9, (1, 1): -6})


@given(pencils())
@settings(max_examples=40, deadline=None)
def test_spectral_poly_equals_u2_det(pen):
    # P(u, lam) = u^2 det A(u; lam) at numeric sample points
    P = spectral_poly(pen)
    rng = random.Random(1)
    for _ in range(3):
        u = complex(rng.uniform(0.4, 1.6), rng.uniform(-0.5, 0.5))
        lam = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        b = complex(pen.b_sq) ** 0.5
        det = pencil_matrix(pen, u, lam, b=b).det()
        direct = P.evaluate(u, lam)
        assert abs(direct - u * u * det) <= 1e-8 * max(1.0, abs(direct))


# -- adjugate and resolvent ---------------------------------------------------


@given(pencils())
@settings(max_examples=30, deadline=None)
def test_adjugate_times_pencil_is_P_over_u2(pen):
    # adj(A) A = det(A) I = (P/u^2) I, columnwise over the Laurent ring
    if pen.b_sq < 0:
        return
    try:
        b = pen.b_exact()
    except ValueError:
        return
    phi1, phi2 = adjugate_columns(pen, b)
    P = spectral_poly(pen)
    u2_inv = LaurentBiPoly.term(1, -2)
    target = P * u2_inv
    # reconstruct A entries
    a11 = LaurentBiPoly({(2, 0): 1, (0, 0): -pen.E1, (-1, 1): -pen.a})
    a12 = LaurentBiPoly.term(-b, -1, 1)
    a21 = LaurentBiPoly.term(b, -1, 1)
    a22 = LaurentBiPoly({(2, 0): 1, (0, 0): -pen.E2, (-1, 1): -pen.d})
    # column identities: A . phi_k = det A . e_k
    assert a11 * phi1[0] + a12 * phi1[1] == target
    assert a21 * phi1[0] + a22 * phi1[1] == LaurentBiPoly.zero()
    assert a11 * phi2[0] + a12 * phi2[1] == LaurentBiPoly.zero()
    assert a21 * phi2[0] + a22 * phi2[1] == target


@given(pencils())
@settings(max_examples=30, deadline=None)
def test_resolvent_closed_forms_match_inverse(pen):
    if not pen.is_canonical_background:
        return
    rng = random.Random(7)
    for _ in range(4):
        u = complex(rng.uniform(0.5, 1.5), rng.uniform(0.1, 0.6))
        lam = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        b = complex(pen.b_sq) ** 0.5
        m = pencil_matrix(pen, u, lam, b=b)
        det = m.det()
        if abs(det) < 1e-6:
            continue
        tr_direct = (m.adj().scale(1 / det)).trace()
        det_direct = 1 / det
        tr, det_r = resolvent_tr_det(pen, u, lam)
        assert abs(tr - tr_direct) <= 1e-7 * max(1.0, abs(tr_direct))
        assert abs(det_r - det_direct) <= 1e-7 * max(1.0, abs(det_direct))


def test_resolvent_on_shell_raises():
    pen = zco_pencil(1)
    # ZCO basepoint lies on the spectral curve
    u = 1 / 2**0.5
    lam = (u**5 - u) / 2
    with pytest.raises(OnShellError):
        resolvent_tr_det(pen, u, lam)


# -- eta-Gram -----------------------------------------------------------------


def test_eta_gram_zco_oracle():
    # [DERIVED] ZCO eta-Gram is diag(E^2, -E^2), lambda-independent
    for E in (1, 2, 5):
        g = eta_gram(zco_pencil(E), 1)
        assert g.entries == (
            ({0: Fraction(E * E)}, {}),
            ({}, {0: Fraction(-E * E)}),
        )
        assert lambda_evenness_check(g)
        assert pontryagin_index(g) == 1


@given(pencils())
@settings(max_examples=50, deadline=None)
def test_eta_gram_diagonal_even_index(pen):
    g = eta_gram(pen, 1)
    # off-diagonal residues vanish identically at N = 2
    assert g.entries[0][1] == {} and g.entries[1][0] == {}
    assert lambda_evenness_check(g)
    if pen.E1 != 0:
        # G(0) = (E^2, -E^2): exactly one negative entry
        assert pontryagin_index(g) == 1


def test_eta_gram_scale_linearity():
    pen = pencil_from_tdd(2, 0, 2)
    g1 = eta_gram(pen, 1)
    g3 = eta_gram(pen, 3)
    for i in (0, 1):
        for k, v in g1.entries[i][i].items():
            assert g3.entries[i][i][k] == 3 * v


def test_pontryagin_degenerate_background():
    g = eta_gram(pencil_from_tdd(2, 0, 2, E=0), 1)
    with pytest.raises(DegenerateGramError):
        pontryagin_index(g)


# -- monomial Gram ------------------------------------------------------------


@pytest.mark.parametrize("eps", [(1, 1), (1, -1), (-1, 1), (-1, -1)])
def test_monomial_gram8_rank_and_spectrum(eps):
    G, rank, eigs = monomial_gram8(*eps)
    assert rank == 4
    assert eigs == [-2, -2, 2, 2]
    # the u^0 / u^2 blocks are isotropic (they span the radical)
    import numpy as np

    arr = np.array(G, dtype=float)
    assert arr.shape == (8, 8)
    assert np.allclose(arr, arr.T)


def test_monomial_gram8_bad_eps():
    with pytest.raises(ValueError):
        monomial_gram8(2, 1)


# -- j-map --------------------------------------------------------------------


def test_j_formula_witnesses():
    # [DERIVED] canonical point (2,0,2) sits on the j = 1728 fiber
    assert j_formula(2, 0, 2) == 1728
    # [DERIVED] irrational-tau witness through tau^2
    assert j_formula_tausq(Fraction(45, 11), 1, 1) == 1728


def test_j_formula_tausq_matches_j_formula():
    for tau, delta, Delta in [(2, 1, Fraction(1, 2)), (3, -1, 1), (-2, 2, 3)]:
        assert j_formula(tau, delta, Delta) == j_formula_tausq(
            Fraction(tau) ** 2, delta, Delta
        )


def test_j_formula_singular_locus_raises():
    # mu = 0 (b = 0) degenerates the formula
    with pytest.raises(SingularLocusError):
        j_formula(2, 0, 1)  # Delta = ad -> b_sq = 0 -> mu = 0
    # tau^2 = 4 Delta collapses the master-quadratic leading coefficient
    with pytest.raises(SingularLocusError):
        j_formula(2, 1, 1)


def test_j1728_locus_certificate():
    # Q(tau^2, delta, Delta) = -2 tau^2 delta^2 - 9 tau^2 Delta
    #                          + 9 delta^2 Delta + 36 Delta^2
    # the irrational-tau witness lies on the Q component; the canonical
    # point (2,0,2) sits on the delta = 0 component instead, so Q != 0 there
    assert j1728_locus_Q(Fraction(45, 11), 1, 1) == 0
    assert j1728_locus_Q(4, 0, 2) != 0
    assert j1728_locus_Q(4, 1, 1) != 0


def test_j_zero_locus_exact_root():
    # [DERIVED] at tau^2 = 81, delta = -1: 12 Delta^2 - 240 Delta - 81 = 0,
    # Delta lives in Q(sqrt 427) and j vanishes there
    dplus, dminus = j_zero_locus_Delta(81, -1)
    for D in (dplus, dminus):
        assert 12 * D * D - 240 * D - 81 == 0
    # the positive root feeds back through the QuadExt-capable j-formula
    j = j_formula_tausq(Fraction(81), Fraction(-1), dplus)
    assert j == 0

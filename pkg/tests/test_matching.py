"""Per-prime Euler-factor matching tests."""

import cmath
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eulerpencil.exactmath import DegenerateQuadraticError, QuadExt
from eulerpencil.matching import (
    HasseViolationError,
    basepoint_solve,
    canonical_basepoint,
    canonical_match_exact,
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
    zco_matrix,
)
from eulerpencil.curves import WeierstrassCurve, hasse_check, primes_upto

PRIMES = primes_upto(60)


def hasse_pairs():
    out = []
    for p in PRIMES:
        bound = int((4 * p) ** 0.5)
        for a_p in range(-bound, bound + 1):
            if a_p * a_p < 4 * p:
                out.append((a_p, p))
    return out


# -- master quadratic and basepoints ------------------------------------------


def test_master_quadratic_canonical_oracle():
    # [DERIVED] canonical (2,0,2), a_p=-4, p=5: A=-4, B=-16/5, C=88/25
    A, B, C = master_quadratic(2, 0, 2, -4, 5)
    assert (A, B, C) == (-4, Fraction(-16, 5), Fraction(88, 25))


def test_master_quadratic_tau_zero_rejected():
    with pytest.raises(DegenerateQuadraticError):
        master_quadratic(0, 1, 1, 2, 5)


@given(st.sampled_from(hasse_pairs()))
@settings(max_examples=60, deadline=None)
def test_canonical_branch_law(pair):
    # w^+ > w^- exactly; discriminant Delta_p = 4p(p+1)-a_p^2 >= 4p > 0
    a_p, p = pair
    plus = canonical_basepoint(a_p, p, "plus")
    minus = canonical_basepoint(a_p, p, "minus")
    assert isinstance(plus.w, QuadExt)
    assert (plus.w - minus.w).sign() == 1
    delta_p, d_p, total = discriminant_identity(a_p, p)
    assert delta_p > 4 * p  # strict: a_p^2 < 4p under Hasse
    assert total == 4 * p * p


def test_canonical_basepoint_hasse_guard():
    with pytest.raises(HasseViolationError):
        canonical_basepoint(50, 2)  # a_p^2 far beyond 4p(p+1)


@given(st.sampled_from(hasse_pairs()), st.sampled_from(["plus", "minus"]))
@settings(max_examples=60, deadline=None)
def test_canonical_match_exact_is_exact(pair, branch):
    a_p, p = pair
    tr, det, P = canonical_match_exact(a_p, p, branch)
    assert tr == a_p
    assert det == p
    assert P != 0


@given(st.sampled_from(hasse_pairs()))
@settings(max_examples=40, deadline=None)
def test_basepoint_solve_satisfies_quadratic(pair):
    a_p, p = pair
    tau, delta, Delta = Fraction(3), Fraction(1), Fraction(1, 2)
    A, B, C = master_quadratic(tau, delta, Delta, a_p, p)
    for branch in ("plus", "minus"):
        bp = basepoint_solve(tau, delta, Delta, a_p, p, branch)
        w = complex(bp.w)
        res = complex(A) * w * w + complex(B) * w + complex(C)
        assert abs(res) <= 1e-9 * max(1.0, abs(w) ** 2)
        # lambda constraint lam = (2u^3 - a_p u / p)/tau
        lam_expect = (2 * bp.u**3 - a_p * bp.u / p) / complex(tau)
        assert abs(bp.lam - lam_expect) <= 1e-12 * max(1.0, abs(lam_expect))


# -- verification reports -----------------------------------------------------


@given(st.sampled_from(hasse_pairs()), st.sampled_from(["plus", "minus"]))
@settings(max_examples=40, deadline=None)
def test_euler_match_verify_canonical(pair, branch):
    a_p, p = pair
    rep = euler_match_verify("canonical", a_p, p, branch)
    assert rep.passed and rep.status == "PASS"
    assert rep.residual_tr <= 1e-9 and rep.residual_det <= 1e-9
    assert rep.euler_poly == (1, -a_p, p)


def test_euler_match_verify_general_params():
    # a non-canonical pencil still matches on both branches
    for branch in ("plus", "minus"):
        rep = euler_match_verify((3, 1, Fraction(1, 2)), -2, 7, branch)
        assert rep.passed, (rep.residual_tr, rep.residual_det, rep.P_residual)


def test_euler_match_verify_hasse_guard():
    with pytest.raises(HasseViolationError):
        euler_match_verify("canonical", 10, 5)


def test_euler_match_verify_unknown_preset():
    with pytest.raises(ValueError):
        euler_match_verify("weird", 1, 5)


# -- symbolic reduction -------------------------------------------------------


@given(
    st.sampled_from([1, 2, 3, Fraction(5, 2), -2]),
    st.sampled_from([0, 1, -1, Fraction(1, 2)]),
    st.sampled_from([1, 2, Fraction(-1, 3), Fraction(1, 2)]),
    st.sampled_from(hasse_pairs()),
)
@settings(max_examples=60, deadline=None)
def test_symbolic_reduction_generic(tau, delta, Delta, pair):
    a_p, p = pair
    assert symbolic_reduction_check(tau, delta, Delta, a_p, p)


def test_symbolic_reduction_tau_zero_rejected():
    with pytest.raises(DegenerateQuadraticError):
        symbolic_reduction_check(0, 1, 1, 2, 5)


# -- off-shell distance and CD ratio ------------------------------------------


def test_offshell_distance_exact_and_float():
    assert offshell_distance(Fraction(1, 2), 5) == Fraction(1, 15)
    w = QuadExt(Fraction(1, 2), Fraction(1, 10), 104)
    d = offshell_distance(w, 5)
    assert d * (w + 1) * 5 == w
    assert abs(offshell_distance(0.5 + 0j, 5) - 1 / 15) <= 1e-12


def test_offshell_distance_pole():
    with pytest.raises(ZeroDivisionError):
        offshell_distance(-1, 5)


def test_cd_matching_ratio_negative_discriminant_sweep():
    # Delta_CD = 9 - 60 R_A < 0 across the Hasse range at several primes
    for a_p, p in hasse_pairs():
        r, disc = cd_matching_ratio(a_p, p)
        assert r == Fraction(p * (p + 1 - a_p), (a_p - 2 * p) ** 2)
        assert disc < 0


def test_cd_matching_ratio_pole():
    with pytest.raises(ZeroDivisionError):
        cd_matching_ratio(2, 1)


def test_tco_basepoint_oracle():
    # [DERIVED] (a_p, p) = (-2, 7): Y = -9/14
    y, lam_sq, ok = tco_basepoint(-2, 7)
    assert y == Fraction(-9, 14)
    assert lam_sq == y**3 + y * y + y
    assert ok is hasse_check(-2, 7)


# -- ZCO ----------------------------------------------------------------------


def test_zco_basepoint_oracle():
    u, lam = zco_basepoint()
    assert abs(u - 1 / 2**0.5) <= 1e-15
    assert abs(lam + 3 / (8 * 2**0.5)) <= 1e-15


def test_zco_matrix_rank_one_on_shell():
    u, lam = zco_basepoint()
    m = zco_matrix(u, lam)
    assert abs(m.det()) <= 1e-14
    assert abs(m.trace() - 2 * u * u) <= 1e-14


def test_zco_euler_factor_is_one_minus_tau():
    for t in (0.3, -0.5, 0.2 + 0.1j):
        assert abs(zco_euler_factor(t) - (1 - t)) <= 1e-12


@given(
    st.floats(min_value=-3, max_value=3, allow_nan=False),
    st.floats(min_value=0.3, max_value=2.0),
)
@settings(max_examples=40, deadline=None)
def test_zco_c_trace_invariance(c, u):
    # adding the DC term diag(c,-c)/u^2 never moves the trace
    assert zco_c_trace_invariance(c, u)


def test_golden_ratio_spectrum_oracle():
    phi, psi = golden_ratio_spectrum()
    assert phi == QuadExt(Fraction(1, 2), Fraction(1, 2), 5)
    assert psi == QuadExt(Fraction(1, 2), Fraction(-1, 2), 5)
    assert phi + psi == 1 and phi * psi == -1


# -- interpolation obstruction ------------------------------------------------


def test_interpolation_obstruction_found():
    curve = WeierstrassCurve.short(-1, 0)  # 32a2: a_3 = 0, a_5 = -2
    hit = interpolation_obstruction(curve, 4)
    assert hit is not None
    p, q, a_p, a_q, slopes = hit
    assert (p, q, a_p, a_q) == (3, 5, 0, -2)
    assert slopes == (0, 2)


def test_interpolation_obstruction_k_guard():
    with pytest.raises(ValueError):
        interpolation_obstruction(WeierstrassCurve.short(-1, 0), 1)

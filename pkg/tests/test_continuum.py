"""Dispersion universality, arcsine measure, and eta-identity tests."""

import math

import pytest
from scipy.integrate import quad

from eulerpencil.continuum import (
    ALGEBRAIC,
    DISPERSIONS,
    TANH,
    BranchCutError,
    arcsine_cdf,
    arcsine_closed_form,
    arcsine_pdf,
    chi4,
    dirichlet_L_chi4,
    eta_functional_equation_residual,
    eta_value,
    universality_integral,
)

SAMPLE_Z = [2.0, 1.5, 3.0 + 0.5j, 1.2 + 1.0j, 0.5 + 2.0j]


# -- universality -------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(DISPERSIONS))
@pytest.mark.parametrize("z", SAMPLE_Z)
def test_universality_matches_closed_form(name, z):
    # the integral is dispersion-independent and equals the arcsine form
    result = universality_integral(DISPERSIONS[name], z)
    expect = arcsine_closed_form(z)
    assert abs(result.value - expect) <= 1e-8 * max(1.0, abs(expect))
    assert result.estimated_error <= 1e-10
    assert result.evaluations > 0


def test_universality_two_dispersions_agree():
    for z in SAMPLE_Z:
        v1 = universality_integral(TANH, z).value
        v2 = universality_integral(ALGEBRAIC, z).value
        assert abs(v1 - v2) <= 1e-8 * max(1.0, abs(v1))


@pytest.mark.parametrize("z", [0.5, 1.0, -2.0, 0.3 + 0.0j, -1.0 + 1.0j])
def test_branch_cut_rejected(z):
    with pytest.raises(BranchCutError):
        universality_integral(TANH, z)
    with pytest.raises(BranchCutError):
        arcsine_closed_form(z)


# -- arcsine measure ----------------------------------------------------------


def test_arcsine_pdf_normalised():
    total, err = quad(arcsine_pdf, -1 + 1e-12, 1 - 1e-12)
    assert abs(total - 1.0) <= 1e-6
    assert err <= 1e-6


def test_arcsine_pdf_domain_guard():
    with pytest.raises(ValueError):
        arcsine_pdf(1.0)
    with pytest.raises(ValueError):
        arcsine_pdf(-1.5)


def test_arcsine_cdf_endpoints_and_clamping():
    assert arcsine_cdf(-1.0) == 0.0
    assert arcsine_cdf(1.0) == 1.0
    assert arcsine_cdf(0.0) == 0.5
    assert arcsine_cdf(-5.0) == 0.0 and arcsine_cdf(5.0) == 1.0
    # matches the integrated density at an interior point
    t = 0.37
    integral, _ = quad(arcsine_pdf, -1 + 1e-12, t)
    assert abs(arcsine_cdf(t) - integral) <= 1e-6


def test_arcsine_cdf_monotone():
    xs = [-1 + 0.05 * k for k in range(41)]
    vals = [arcsine_cdf(x) for x in xs]
    assert all(a <= b for a, b in zip(vals, vals[1:]))


# -- chi_{-4} and eta ---------------------------------------------------------


def test_chi4_values_and_periodicity():
    assert [chi4(n) for n in range(8)] == [0, 1, 0, -1, 0, 1, 0, -1]
    assert chi4(1001) == chi4(1)
    assert chi4(-3) == chi4(1)


def test_L_chi4_oracles():
    # [TRIVIAL] L(1) = pi/4 (Leibniz); L(2) = Catalan's constant
    assert abs(dirichlet_L_chi4(1.0) - math.pi / 4) <= 1e-10
    assert abs(dirichlet_L_chi4(2.0) - 0.915965594177219) <= 1e-10
    with pytest.raises(NotImplementedError):
        dirichlet_L_chi4(0.0)


def test_eta_is_twice_L():
    for s in (0.5, 1.0, 2.0):
        assert eta_value(s) == 2.0 * dirichlet_L_chi4(s)


@pytest.mark.parametrize("s", [0.2, 0.35, 0.5, 0.65, 0.8])
def test_eta_functional_equation(s):
    assert eta_functional_equation_residual(s) <= 1e-6


def test_eta_functional_equation_domain_guard():
    for s in (0.0, 1.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            eta_functional_equation_residual(s)

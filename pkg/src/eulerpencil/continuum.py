"""The genus-infinity analytic limit.

Dispersion-universal quadrature of the arcsine integral, the arcsine
measure, and the chi_{-4} Dirichlet L-function identities (eta = 2L and its
functional equation).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from scipy.integrate import quad


class BranchCutError(ValueError):
    """Raised for evaluation points on the arcsine branch cut [-1, 1]."""


@dataclass(frozen=True)
class Dispersion:
    """A smooth odd surjection a: R -> (-1, 1) with a'(xi) > 0.

    ``one_minus_a_sq`` evaluates 1 - a(xi)^2 without the catastrophic
    cancellation of the literal expression (which underflows to 0 while
    a'(xi) is still finite, exploding the arcsine weight a'/sqrt(1 - a^2)).
    """

    name: str
    a: Callable[[float], float]
    a_prime: Callable[[float], float]
    one_minus_a_sq: Callable[[float], float]


def _sech_sq(x: float) -> float:
    # 4 e^{-2|x|} / (1 + e^{-2|x|})^2, overflow-safe for large |x|
    e = math.exp(-2.0 * abs(x))
    return 4.0 * e / (1.0 + e) ** 2


TANH = Dispersion("tanh", math.tanh, _sech_sq, _sech_sq)
ALGEBRAIC = Dispersion(
    "algebraic",
    lambda x: x / math.sqrt(1 + x * x),
    lambda x: (1 + x * x) ** -1.5,
    lambda x: 1.0 / (1 + x * x),
)

DISPERSIONS = {d.name: d for d in (TANH, ALGEBRAIC)}


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    estimated_error: float
    evaluations: int


def _check_off_cut(z: complex) -> complex:
    z = complex(z)
    if z.real <= 0:
        raise BranchCutError(f"Re(z) = {z.real} <= 0 outside the validity domain")
    if z.imag == 0 and -1.0 <= z.real <= 1.0:
        raise BranchCutError(f"z = {z} lies on the branch cut [-1, 1]")
    return z


def universality_integral(
    dispersion: Dispersion, z: complex, tol: float = 1e-10
) -> QuadratureResult:
    """Adaptive quadrature of int_0^inf w(xi) a(xi) / (z^2 - a(xi)^2) dxi

    with the arcsine weight w = a' / (pi sqrt(1 - a^2)).  Independent of the
    dispersion; converges to arcsin(1/z)/(pi sqrt(z^2 - 1)).
    """
    z = _check_off_cut(z)
    z_sq = z * z
    count = [0]

    def integrand(xi: float) -> complex:
        count[0] += 1
        a = dispersion.a(xi)
        oma = dispersion.one_minus_a_sq(xi)
        if oma <= 0.0:
            return 0.0
        w = dispersion.a_prime(xi) / (math.pi * math.sqrt(oma))
        return w * a / (z_sq - a * a)

    re, re_err = quad(lambda x: integrand(x).real, 0.0, math.inf,
                      epsabs=tol / 2, epsrel=tol / 2, limit=400)
    if z.imag == 0:
        im, im_err = 0.0, 0.0
    else:
        im, im_err = quad(lambda x: integrand(x).imag, 0.0, math.inf,
                          epsabs=tol / 2, epsrel=tol / 2, limit=400)
    err = re_err + im_err
    if err > tol:
        raise ArithmeticError(f"quadrature error estimate {err:.3e} exceeds tol {tol:.3e}")
    return QuadratureResult(value=complex(re, im), estimated_error=err, evaluations=count[0])


def arcsine_closed_form(z: complex) -> complex:
    """arcsin(1/z) / (pi sqrt(z^2 - 1)) with principal branches."""
    z = _check_off_cut(z)
    w = 1 / z
    # principal arcsin continued by the log form for |w| > 1
    asn = -1j * cmath.log(1j * w + cmath.sqrt(1 - w * w))
    return asn / (math.pi * cmath.sqrt(z * z - 1))


def arcsine_pdf(t: float) -> float:
    """Density 1/(pi sqrt(1 - t^2)) on (-1, 1)."""
    if not -1.0 < t < 1.0:
        raise ValueError(f"t = {t} outside (-1, 1)")
    return 1.0 / (math.pi * math.sqrt(1.0 - t * t))


def arcsine_cdf(t: float) -> float:
    """CDF 1/2 + arcsin(t)/pi on [-1, 1] (clamped outside)."""
    t = max(-1.0, min(1.0, t))
    return 0.5 + math.asin(t) / math.pi


# ---------------------------------------------------------------------------
# chi_{-4} and the eta identity


def chi4(n: int) -> int:
    """The odd character mod 4: +1 for n=1 mod 4, -1 for n=3 mod 4, else 0."""
    r = n % 4
    if r == 1:
        return 1
    if r == 3:
        return -1
    return 0


def dirichlet_L_chi4(s: float, tol: float = 1e-12) -> float:
    """L(s, chi_{-4}) = sum_{k>=0} (-1)^k / (2k+1)^s by Euler transformation.

    The alternating series converges for s > 0; iterated averaging of the
    partial sums accelerates it to desk precision.
    """
    if s <= 0:
        raise NotImplementedError("series path needs s > 0; use the functional equation")
    n_terms = 40
    last = None
    while n_terms <= 640:
        partial = []
        total = 0.0
        for k in range(n_terms):
            total += (-1) ** k / float(2 * k + 1) ** s
            partial.append(total)
        # iterated averaging (Euler transform of the partial-sum sequence)
        row = partial
        while len(row) > 1:
            row = [(row[i] + row[i + 1]) / 2 for i in range(len(row) - 1)]
        value = row[0]
        if last is not None and abs(value - last) <= tol / 2:
            return value
        last = value
        n_terms *= 2
    return last


def eta_value(s: float, tol: float = 1e-12) -> float:
    """The eta invariant eta(s) = 2 L(s, chi_{-4})."""
    return 2.0 * dirichlet_L_chi4(s, tol)


def eta_functional_equation_residual(s: float) -> float:
    """|eta(s) - 2 (2/pi)^{1-s} cos(pi s/2) Gamma(1-s) L(1-s, chi_{-4})|.

    The reflection factor is the odd-character (Dirichlet beta) one,
    beta(s) = (2/pi)^{1-s} cos(pi s/2) Gamma(1-s) beta(1-s) -- note cos, not
    the sin of the zeta template.  Valid for s in (0, 1) where both series
    converge.
    """
    if not 0.0 < s < 1.0:
        raise ValueError("s must lie in (0, 1)")
    lhs = eta_value(s)
    rhs = (
        2.0
        * (2.0 / math.pi) ** (1.0 - s)
        * math.cos(math.pi * s / 2.0)
        * math.gamma(1.0 - s)
        * dirichlet_L_chi4(1.0 - s)
    )
    return abs(lhs - rhs)

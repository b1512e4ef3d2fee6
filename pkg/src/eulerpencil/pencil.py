"""The 2x2 J-self-adjoint causal pencil.

A(u; lambda) = u^2 I - diag(E1, E2) - (lambda/u) V with V = ((a, b), (-b, d))
and fundamental symmetry J = diag(1, -1).  This module computes the spectral
polynomial, resolvent trace/determinant closed forms, adjugate columns, the
eta-Gram residue pairing with its lambda-evenness and Pontryagin index, the
j-invariant moduli map with its special loci, and the 8-dimensional monomial
Gram.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .exactmath import (
    LaurentBiPoly,
    Matrix2,
    QuadExt,
    Rational,
    _as_fraction,
    _exact_sqrt,
    residue_at_zero,
)


class OnShellError(ValueError):
    """Raised when the resolvent is evaluated on the spectral curve."""


class SingularLocusError(ValueError):
    """Raised when a j-formula denominator factor vanishes."""


class DegenerateGramError(ValueError):
    """Raised by pontryagin_index for a Gram with zero diagonal at lambda=0."""


@dataclass(frozen=True)
class Pencil2:
    """Pencil data: background (E1, E2) and coupling (a, d, b_sq).

    b_sq is b^2 and may be negative (complex coupling).  The scalar
    invariants are tau = a+d, delta = a-d, Delta = ad + b^2 and the derived
    mu = -b^2 = (tau^2 - delta^2)/4 - Delta.
    """

    E1: Rational
    E2: Rational
    a: Rational
    d: Rational
    b_sq: Rational

    @property
    def tau(self) -> Rational:
        return self.a + self.d

    @property
    def delta(self) -> Rational:
        return self.a - self.d

    @property
    def Delta(self) -> Rational:
        return self.a * self.d + self.b_sq

    @property
    def mu(self) -> Rational:
        return -self.b_sq

    @property
    def is_canonical_background(self) -> bool:
        return self.E2 == -self.E1

    def b_exact(self) -> Rational:
        """b as an exact rational, if b_sq is a perfect rational square."""
        root = _exact_sqrt(self.b_sq)
        if root is None:
            raise ValueError(f"b_sq={self.b_sq} has no exact rational square root")
        return root


def pencil_from_tdd(tau, delta, Delta, E=1) -> Pencil2:
    """Pencil from invariants: a=(tau+delta)/2, d=(tau-delta)/2, b_sq=Delta-ad."""
    tau, delta, Delta, E = (_as_fraction(v) for v in (tau, delta, Delta, E))
    a = (tau + delta) / 2
    d = (tau - delta) / 2
    return Pencil2(E1=E, E2=-E, a=a, d=d, b_sq=Delta - a * d)


def zco_pencil(E=1) -> Pencil2:
    """The genus-0 zeta pencil: V = ((1,1),(-1,-1))."""
    E = _as_fraction(E)
    return Pencil2(E1=E, E2=-E, a=Fraction(1), d=Fraction(-1), b_sq=Fraction(1))


def spectral_poly(pencil: Pencil2) -> LaurentBiPoly:
    """P(u, lambda) = det(u^2 A(u; lambda)) as a bivariate polynomial.

    P = u^6 - (E1+E2) u^4 + E1 E2 u^2
        - lambda [ (a+d) u^3 - (a E2 + d E1) u ] + lambda^2 (ad + b^2).
    """
    return LaurentBiPoly(
        {
            (6, 0): Fraction(1),
            (4, 0): -(pencil.E1 + pencil.E2),
            (2, 0): pencil.E1 * pencil.E2,
            (3, 1): -pencil.tau,
            (1, 1): pencil.a * pencil.E2 + pencil.d * pencil.E1,
            (0, 2): pencil.Delta,
        }
    )


def pencil_matrix(pencil: Pencil2, u: complex, lam: complex, b: Optional[complex] = None) -> Matrix2:
    """The matrix A(u; lambda) with numeric entries."""
    if b is None:
        bsq = complex(pencil.b_sq)
        b = (bsq) ** 0.5
    u, lam = complex(u), complex(lam)
    E1, E2 = complex(pencil.E1), complex(pencil.E2)
    a, d = complex(pencil.a), complex(pencil.d)
    k = lam / u
    return Matrix2(u * u - E1 - k * a, -k * b, k * b, u * u - E2 - k * d)


def resolvent_tr_det(pencil: Pencil2, u, lam, tol: float = 1e-12):
    """Closed-form (trace, det) of the resolvent R = A(u; lambda)^{-1}.

    tr R = u (2u^3 - tau*lambda) / P(u, lambda); det R = u^2 / P (which is
    independent of delta).  The closed forms require the canonical
    background E2 = -E1.  Exact inputs (Fraction/QuadExt) stay exact.
    """
    if not pencil.is_canonical_background:
        raise ValueError("closed forms require the canonical background E2 = -E1")
    P = spectral_poly(pencil).evaluate(u, lam)
    exact = not (isinstance(u, (complex, float)) or isinstance(lam, (complex, float)))
    if exact:
        if P == 0:
            raise OnShellError("P(u, lambda) = 0: on the spectral curve")
        tr = u * (2 * u**3 - pencil.tau * lam) / P
        det = u * u / P
        return tr, det
    u, lam, P = complex(u), complex(lam), complex(P)
    if abs(P) < tol:
        raise OnShellError(f"|P(u, lambda)| = {abs(P):.3e} < tol: on the spectral curve")
    tau = complex(pencil.tau)
    return u * (2 * u**3 - tau * lam) / P, u * u / P


def adjugate_columns(pencil: Pencil2, b: Optional[Rational] = None):
    """Columns (phi1, phi2) of adj A(u; lambda), each a LaurentBiPoly pair.

    Computed from 2x2 cofactors of A = u^2 I - diag(E1,E2) - (lambda/u) V:
    phi1 = (u^2 - E2 - d lambda/u, -b lambda/u),
    phi2 = (b lambda/u, u^2 - E1 - a lambda/u).
    Requires an exact rational b (default: sqrt of b_sq when perfect).
    """
    if b is None:
        b = pencil.b_exact()
    b = _as_fraction(b)
    f1 = LaurentBiPoly({(2, 0): 1, (0, 0): -pencil.E2, (-1, 1): -pencil.d})
    f2 = LaurentBiPoly({(2, 0): 1, (0, 0): -pencil.E1, (-1, 1): -pencil.a})
    off = LaurentBiPoly.term(b, -1, 1)
    phi1 = (f1, -off)
    phi2 = (off, f2)
    return phi1, phi2


@dataclass(frozen=True)
class EtaGram:
    """The 2x2 eta-Gram: entries are lambda-polynomials {exp: coeff}."""

    entries: tuple[tuple[dict, dict], tuple[dict, dict]]
    c: Rational

    def at_lambda_zero(self) -> tuple[Rational, Rational]:
        """Diagonal of G(0)."""
        return (
            self.entries[0][0].get(0, Fraction(0)),
            self.entries[1][1].get(0, Fraction(0)),
        )


def eta_gram(pencil: Pencil2, c=1) -> EtaGram:
    """G_ij(lambda) = c * Res_{u=0} phi_i(-u)^T J phi_j(u) / u.

    The bilinear products are arranged so only b_sq (never b itself)
    enters the diagonal; the b-linear off-diagonal residues vanish
    identically and are computed up to the rational factor b, which is
    exact because they are zero.
    """
    c = _as_fraction(c)
    f1 = LaurentBiPoly({(2, 0): 1, (0, 0): -pencil.E2, (-1, 1): -pencil.d})
    f2 = LaurentBiPoly({(2, 0): 1, (0, 0): -pencil.E1, (-1, 1): -pencil.a})
    uinv = LaurentBiPoly.term(1, -1)
    lam_uinv = LaurentBiPoly.term(1, -1, 1)
    bsq_l2_u2 = LaurentBiPoly.term(pencil.b_sq, -2, 2)

    # G11 = res[(f1(-u) f1(u) + b^2 l^2/u^2)/u]
    g11 = residue_at_zero((f1.flip_u() * f1 + bsq_l2_u2) * uinv)
    # G22 = res[(-b^2 l^2/u^2 - f2(-u) f2(u))/u]
    g22 = residue_at_zero((-bsq_l2_u2 - f2.flip_u() * f2) * uinv)
    # G12 = b * res[(l/u)(f1(-u) - f2(u))/u]; G21 = b * res[(l/u)(f2(-u) - f1(u))/u]
    g12 = residue_at_zero(lam_uinv * (f1.flip_u() - f2) * uinv)
    g21 = residue_at_zero(lam_uinv * (f2.flip_u() - f1) * uinv)
    if g12 or g21:
        # Only reachable if the N=2 off-diagonal vanishing ever failed; the
        # rational residues would then need scaling by an exact b.
        b = pencil.b_exact()
        g12 = {k: b * v for k, v in g12.items()}
        g21 = {k: b * v for k, v in g21.items()}

    def scale(entry):
        return {k: c * v for k, v in entry.items() if c * v != 0}

    return EtaGram(
        entries=((scale(g11), scale(g12)), (scale(g21), scale(g22))),
        c=c,
    )


def lambda_evenness_check(gram: EtaGram) -> bool:
    """True iff every odd-lambda coefficient of every entry is exactly zero."""
    for row in gram.entries:
        for entry in row:
            if any(exp % 2 == 1 and coeff != 0 for exp, coeff in entry.items()):
                return False
    return True


def pontryagin_index(gram: EtaGram) -> int:
    """Count of strictly negative diagonal entries of G(0)."""
    diag = gram.at_lambda_zero()
    if any(v == 0 for v in diag):
        raise DegenerateGramError("zero diagonal entry in G(0)")
    return sum(1 for v in diag if v < 0)


# ---------------------------------------------------------------------------
# j-invariant moduli map


def j_formula(tau, delta, Delta):
    """j = 16 (tau^2 delta^2 + 12 Delta mu)^3 / (Delta^2 mu^2 (tau^2-4Delta)(delta^2+4Delta))

    with the derived mu = (tau^2 - delta^2)/4 - Delta.  Works over any exact
    field scalars (Rational or QuadExt).
    """
    return j_formula_tausq(tau * tau, delta, Delta)


def j_formula_tausq(tau_sq, delta, Delta):
    """The j-formula parameterised by tau^2 (for loci with irrational tau)."""
    mu = (tau_sq - delta * delta) * Fraction(1, 4) - Delta
    factors = {
        "Delta": Delta,
        "mu": mu,
        "tau^2-4Delta": tau_sq - 4 * Delta,
        "delta^2+4Delta": delta * delta + 4 * Delta,
    }
    for name, value in factors.items():
        if value == 0:
            raise SingularLocusError(f"j-formula denominator factor {name} vanishes")
    num = 16 * (tau_sq * delta * delta + 12 * Delta * mu) ** 3
    den = Delta * Delta * mu * mu * (tau_sq - 4 * Delta) * (delta * delta + 4 * Delta)
    return num / den


def j1728_locus_Q(tau_sq, delta, Delta):
    """Q = -2 tau^2 delta^2 - 9 tau^2 Delta + 9 delta^2 Delta + 36 Delta^2.

    Q = 0 cuts the third irreducible component of the j = 1728 fiber.
    """
    t2, d, D = tau_sq, delta, Delta
    return -2 * t2 * d * d - 9 * t2 * D + 9 * d * d * D + 36 * D * D


def j_zero_locus_Delta(tau_sq, delta) -> tuple[QuadExt, QuadExt]:
    """Roots Delta of the j=0 locus 12 Delta^2 - 3(tau^2-delta^2) Delta - tau^2 delta^2 = 0."""
    from .exactmath import quad_roots

    t2, d = _as_fraction(tau_sq), _as_fraction(delta)
    return quad_roots(Fraction(12), -3 * (t2 - d * d), -t2 * d * d)


# ---------------------------------------------------------------------------
# monomial Gram


def monomial_gram8(eps1: int, eps2: int):
    """The 8x8 monomial Gram on (e1/u, e2/u, e1, e2, e1 u, e2 u, e1 u^2, e2 u^2).

    The only nonzero pairings couple the u^{-1} and u^{+1} blocks with
    entries -2 eps_i; the constant and u^2 blocks are isotropic (the
    radical).  Returns (matrix, rank, reduced_eigenvalues) where the
    reduced block is the 4x4 Gram 2((0, -E), (-E, 0)), E = diag(eps1, eps2),
    on (e1/u, e2/u, e1 u, e2 u).
    """
    if eps1 not in (1, -1) or eps2 not in (1, -1):
        raise ValueError("eps1, eps2 must be +-1")
    G = [[Fraction(0)] * 8 for _ in range(8)]
    for i, eps in ((0, eps1), (1, eps2)):
        G[i][4 + i] = Fraction(-2 * eps)
        G[4 + i][i] = Fraction(-2 * eps)
    rank = int(np.linalg.matrix_rank(np.array(G, dtype=float)))
    reduced = np.array(
        [
            [0, 0, -2 * eps1, 0],
            [0, 0, 0, -2 * eps2],
            [-2 * eps1, 0, 0, 0],
            [0, -2 * eps2, 0, 0],
        ],
        dtype=float,
    )
    eigs = sorted(int(round(v)) for v in np.linalg.eigvalsh(reduced))
    return G, rank, eigs

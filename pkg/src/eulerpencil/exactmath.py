"""Exact and floating scalar arithmetic for the pencil algebra.

Provides the exact verification tier (rationals, quadratic extensions
x + y*sqrt(d), bivariate Laurent polynomials in (u, lambda)) and small
generic 2x2 matrix operations.  All values are immutable after
construction.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

#: The exact rational scalar type.  ``fractions.Fraction`` already satisfies
#: every invariant required here (lowest terms, positive denominator,
#: canonical zero), so it is used directly.
Rational = Fraction

Scalar = Union[int, Fraction]

#: Default numeric-tier tolerance.
DEFAULT_TOL = 1e-10


class DegenerateQuadraticError(ValueError):
    """Raised when the leading coefficient of a quadratic vanishes."""


class MixedRadicandError(ValueError):
    """Raised when QuadExt arithmetic would mix two distinct radicands."""


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _exact_sqrt(q: Fraction) -> Fraction | None:
    """Return sqrt(q) as a Fraction if q is a perfect rational square."""
    if q < 0:
        return None
    rn = math.isqrt(q.numerator)
    rd = math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class QuadExt:
    """An element x + y*sqrt(d) of a quadratic extension of the rationals.

    The radicand ``d`` is fixed per value; arithmetic between elements with
    distinct (non-trivial) radicands raises :class:`MixedRadicandError`
    rather than silently degrading to floats.  If ``d`` is a perfect
    rational square the value is normalised to ``y = 0`` (and ``d = 0``).
    """

    x: Fraction
    y: Fraction
    d: Fraction

    def __init__(self, x: Scalar, y: Scalar = 0, d: Scalar = 0):
        x, y, d = _as_fraction(x), _as_fraction(y), _as_fraction(d)
        if y == 0:
            d = Fraction(0)
        else:
            root = _exact_sqrt(d)
            if root is not None:
                x, y, d = x + y * root, Fraction(0), Fraction(0)
            else:
                # canonicalise: d -> its squarefree integer part, so equal
                # values compare equal regardless of how they were built
                sign = 1 if d >= 0 else -1
                k = abs(d.numerator) * d.denominator
                y = y / d.denominator
                i = 2
                while i * i <= k:
                    sq = i * i
                    while k % sq == 0:
                        k //= sq
                        y *= i
                    i += 1
                d = Fraction(sign * k)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "d", d)

    # -- coercion ---------------------------------------------------------

    @classmethod
    def _coerce(cls, other) -> "QuadExt":
        if isinstance(other, QuadExt):
            return other
        return cls(_as_fraction(other))

    def _join(self, other: "QuadExt") -> Fraction:
        """Common radicand of self and other, or raise."""
        if self.y == 0:
            return other.d
        if other.y == 0 or self.d == other.d:
            return self.d
        raise MixedRadicandError(f"cannot combine sqrt({self.d}) with sqrt({other.d})")

    # -- ring operations --------------------------------------------------

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join(other)
        return QuadExt(self.x + other.x, self.y + other.y, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt(-self.x, -self.y, self.d)

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        d = self._join(other)
        return QuadExt(
            self.x * other.x + d * self.y * other.y,
            self.x * other.y + self.y * other.x,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero QuadExt")
        return self * other.conj() * QuadExt(Fraction(1, 1) / n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = QuadExt(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadExt):
            if self.y == 0 and other.y == 0:
                return self.x == other.x
            return self.x == other.x and self.y == other.y and self.d == other.d
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.x, self.y, self.d))

    # -- field structure --------------------------------------------------

    def conj(self) -> "QuadExt":
        """The quadratic conjugate x - y*sqrt(d)."""
        return QuadExt(self.x, -self.y, self.d)

    def norm(self) -> Fraction:
        """Field norm x^2 - d*y^2 (a rational)."""
        return self.x * self.x - self.d * self.y * self.y

    @property
    def is_rational(self) -> bool:
        return self.y == 0

    def sign(self) -> int:
        """Sign of the real value x + y*sqrt(d); requires d >= 0."""
        if self.d < 0:
            raise ValueError("sign undefined for complex QuadExt (d < 0)")
        if self.y == 0:
            return (self.x > 0) - (self.x < 0)
        if self.x == 0:
            return 1 if self.y > 0 else -1
        if self.x > 0 and self.y > 0:
            return 1
        if self.x < 0 and self.y < 0:
            return -1
        # Opposite signs: compare x^2 against d*y^2.
        dominant_x = self.x * self.x > self.d * self.y * self.y
        if dominant_x:
            return 1 if self.x > 0 else -1
        return 1 if self.y > 0 else -1

    def to_complex(self) -> complex:
        if self.d >= 0:
            return complex(float(self.x) + float(self.y) * math.sqrt(float(self.d)))
        return complex(float(self.x), float(self.y) * math.sqrt(-float(self.d)))

    def __float__(self) -> float:
        z = self.to_complex()
        if z.imag != 0.0:
            raise ValueError("complex QuadExt has no float value")
        return z.real

    def __repr__(self):
        if self.y == 0:
            return f"QuadExt({self.x})"
        return f"QuadExt({self.x} + {self.y}*sqrt({self.d}))"


def quad_roots(A: Scalar, B: Scalar, C: Scalar) -> tuple[QuadExt, QuadExt]:
    """Exact roots of A*Y^2 + B*Y + C = 0, '+' branch first.

    Both roots share the radicand d = B^2 - 4AC.
    """
    A, B, C = _as_fraction(A), _as_fraction(B), _as_fraction(C)
    if A == 0:
        raise DegenerateQuadraticError("leading coefficient is zero; use the linear path")
    disc = B * B - 4 * A * C
    half = Fraction(1, 2) / A
    plus = QuadExt(-B * half, half, disc)
    minus = QuadExt(-B * half, -half, disc)
    return plus, minus


class LaurentBiPoly:
    """Bivariate Laurent polynomial in (u, lambda) over the rationals.

    u-exponents range over the integers; lambda-exponents are non-negative.
    Instances are treated as immutable: the term map is never mutated after
    construction.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], Scalar] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (ju, jl), coeff in (terms or {}).items():
            if jl < 0:
                raise ValueError("lambda exponents must be non-negative")
            c = _as_fraction(coeff)
            if c != 0:
                clean[(int(ju), int(jl))] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------

    @classmethod
    def term(cls, coeff: Scalar, u_exp: int = 0, lam_exp: int = 0) -> "LaurentBiPoly":
        return cls({(u_exp, lam_exp): coeff})

    @classmethod
    def zero(cls) -> "LaurentBiPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentBiPoly":
        return cls.term(1)

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return LaurentBiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentBiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, int], Fraction] = {}
        for (ju1, jl1), c1 in self.terms.items():
            for (ju2, jl2), c2 in other.terms.items():
                key = (ju1 + ju2, jl1 + jl2)
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return LaurentBiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = LaurentBiPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, LaurentBiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return cls.term(other)
        return NotImplemented

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, u_exp: int, lam_exp: int) -> Fraction:
        return self.terms.get((u_exp, lam_exp), Fraction(0))

    def flip_u(self) -> "LaurentBiPoly":
        """Substitute u -> -u."""
        return LaurentBiPoly(
            {(ju, jl): (-c if ju % 2 else c) for (ju, jl), c in self.terms.items()}
        )

    def subs_lambda(self, lam_value: "LaurentBiPoly") -> "LaurentBiPoly":
        """Substitute lambda by a polynomial in u (lambda-degree 0)."""
        if any(jl for (_, jl) in lam_value.terms):
            raise ValueError("substitution value must be lambda-free")
        out = LaurentBiPoly.zero()
        for (ju, jl), c in self.terms.items():
            out = out + LaurentBiPoly.term(c, ju) * (lam_value**jl)
        return out

    def evaluate(self, u, lam):
        """Evaluate at scalars (complex, Fraction or QuadExt)."""
        total = None
        for (ju, jl), c in sorted(self.terms.items()):
            piece = _scalar_pow(u, ju) * _scalar_pow(lam, jl)
            if isinstance(u, complex) or isinstance(lam, complex):
                piece = complex(piece) * float(c)
            else:
                piece = piece * c
            total = piece if total is None else total + piece
        if total is None:
            return 0 if not isinstance(u, complex) else 0j
        return total

    def __repr__(self):
        if not self.terms:
            return "LaurentBiPoly(0)"
        bits = []
        for (ju, jl), c in sorted(self.terms.items()):
            s = str(c)
            if ju:
                s += f"*u^{ju}"
            if jl:
                s += f"*lam^{jl}"
            bits.append(s)
        return "LaurentBiPoly(" + " + ".join(bits) + ")"


def _scalar_pow(base, n: int):
    if n >= 0:
        return base**n
    return 1 / (base ** (-n))


def residue_at_zero(f: LaurentBiPoly) -> dict[int, Fraction]:
    """Coefficient of u^{-1} in f, as a map lambda-exponent -> coefficient."""
    out: dict[int, Fraction] = {}
    for (ju, jl), c in f.terms.items():
        if ju == -1:
            out[jl] = out.get(jl, Fraction(0)) + c
    return {jl: c for jl, c in out.items() if c != 0}


def poly_divrem(
    dividend: list[Scalar], divisor: list[Scalar]
) -> tuple[list[Fraction], list[Fraction]]:
    """Exact univariate polynomial division with remainder.

    Polynomials are coefficient lists in ascending degree order.  Returns
    (quotient, remainder) with dividend = quotient*divisor + remainder and
    deg(remainder) < deg(divisor).
    """
    num = [_as_fraction(c) for c in dividend]
    den = [_as_fraction(c) for c in divisor]
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    while num and num[-1] == 0:
        num.pop()
    quot = [Fraction(0)] * max(len(num) - len(den) + 1, 0)
    lead = den[-1]
    while len(num) >= len(den):
        shift = len(num) - len(den)
        factor = num[-1] / lead
        quot[shift] = factor
        for i, c in enumerate(den):
            num[shift + i] -= factor * c
        while num and num[-1] == 0:
            num.pop()
    return quot, num


@dataclass(frozen=True)
class Matrix2:
    """A 2x2 matrix over any scalar ring supporting +, -, *."""

    e11: object
    e12: object
    e21: object
    e22: object

    def trace(self):
        return self.e11 + self.e22

    def det(self):
        return self.e11 * self.e22 - self.e12 * self.e21

    def adj(self) -> "Matrix2":
        return Matrix2(self.e22, -self.e12, -self.e21, self.e11)

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def scale(self, factor) -> "Matrix2":
        return Matrix2(
            self.e11 * factor, self.e12 * factor, self.e21 * factor, self.e22 * factor
        )

    def __add__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 + other.e11,
            self.e12 + other.e12,
            self.e21 + other.e21,
            self.e22 + other.e22,
        )

    def __sub__(self, other: "Matrix2") -> "Matrix2":
        return Matrix2(
            self.e11 - other.e11,
            self.e12 - other.e12,
            self.e21 - other.e21,
            self.e22 - other.e22,
        )

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [
                [complex(self.e11), complex(self.e12)],
                [complex(self.e21), complex(self.e22)],
            ]
        )


def pseudoinverse2(m: Matrix2) -> Matrix2:
    """Moore-Penrose pseudoinverse of a complex 2x2 matrix."""
    p = np.linalg.pinv(m.to_numpy())
    return Matrix2(complex(p[0, 0]), complex(p[0, 1]), complex(p[1, 0]), complex(p[1, 1]))


def group_pseudoinverse2(m: Matrix2, tol: float = 1e-10) -> Matrix2:
    """Group (spectral) inverse of a rank-1 2x2 matrix: m / tr(m)^2.

    For a rank-1 matrix with nonzero eigenvalue mu = tr(m), this inverts the
    spectral projection (eigenvalue mu -> 1/mu, kernel preserved), so its
    trace is 1/mu.  This differs from the Moore-Penrose inverse whenever m is
    not normal.
    """
    tr = m.trace()
    if abs(m.det()) > tol * max(1.0, abs(tr) ** 2):
        raise ValueError(f"matrix is not rank-1 within tol: det = {m.det()}")
    if tr == 0:
        raise ZeroDivisionError("nilpotent rank-1 matrix has no group inverse")
    return m.scale(1 / (tr * tr))


def principal_sqrt(z) -> complex:
    """Principal-branch complex square root (cut on the negative real axis)."""
    return cmath.sqrt(complex(z))

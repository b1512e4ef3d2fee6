"""Elliptic curves over Q: invariants, point counting, quartic reduction.

The Frobenius-trace oracle ``ap_count`` is direct point counting (Legendre
symbol sweep for odd primes, exhaustive enumeration at p = 2) and is the
ground truth for every matching and statistical test.  A curated catalogue
of curve/pencil data ships as package data.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Iterable, NamedTuple, Optional

import numpy as np

from .exactmath import Rational, _as_fraction


class SingularCurveError(ValueError):
    """Raised for Weierstrass data with vanishing discriminant."""


class BadReductionError(ValueError):
    """Raised when counting at a bad prime without force=True."""


class InertPrimeError(ValueError):
    """Raised by cornacchia_candidates for p not congruent to 1 mod 4."""


class DegenerateQuarticError(ValueError):
    """Raised for quartics whose Jacobian is singular."""


# ---------------------------------------------------------------------------
# primes


def primes_upto(n: int) -> list[int]:
    """Ascending primes <= n (simple sieve)."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(2, n + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31):
        if n % p == 0:
            return n == p
    i = 37
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class WeierstrassCurve:
    """y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over Q."""

    a1: Rational
    a2: Rational
    a3: Rational
    a4: Rational
    a6: Rational
    label: Optional[str] = None

    @classmethod
    def from_model(cls, model: Iterable, label: Optional[str] = None) -> "WeierstrassCurve":
        a1, a2, a3, a4, a6 = (_as_fraction(Fraction(str(c))) for c in model)
        return cls(a1, a2, a3, a4, a6, label)

    @classmethod
    def short(cls, a4, a6, label: Optional[str] = None) -> "WeierstrassCurve":
        return cls.from_model([0, 0, 0, a4, a6], label)

    def __str__(self):
        return self.label or f"[{self.a1},{self.a2},{self.a3},{self.a4},{self.a6}]"


class CurveInvariants(NamedTuple):
    b2: Rational
    b4: Rational
    b6: Rational
    b8: Rational
    c4: Rational
    c6: Rational
    disc: Rational
    j: Rational


@lru_cache(maxsize=None)
def curve_invariants(curve: WeierstrassCurve) -> CurveInvariants:
    """Standard Weierstrass invariants (b2, b4, b6, b8, c4, c6, disc, j)."""
    a1, a2, a3, a4, a6 = curve.a1, curve.a2, curve.a3, curve.a4, curve.a6
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = (c4**3 - c6**2) / 1728
    if disc == 0:
        raise SingularCurveError(f"curve {curve} is singular (disc = 0)")
    return CurveInvariants(b2, b4, b6, b8, c4, c6, disc, c4**3 / disc)


def _coeff_mod(c: Fraction, p: int) -> int:
    if c.denominator % p == 0:
        raise BadReductionError(f"coefficient {c} not p-integral at p={p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def is_good_prime(curve: WeierstrassCurve, p: int) -> bool:
    disc = curve_invariants(curve).disc
    if disc.denominator % p == 0:
        return False
    return disc.numerator % p != 0


def ap_count(curve: WeierstrassCurve, p: int, force: bool = False) -> int:
    """Frobenius trace a_p = p + 1 - #E(F_p) by direct point counting.

    Odd p: complete the square, g(x) = 4(x^3+a2 x^2+a4 x+a6) + (a1 x+a3)^2,
    and a_p = -sum_x chi_p(g(x)) with chi_p the Legendre symbol.  p = 2:
    exhaustive enumeration.  Bad primes are rejected unless force=True.
    """
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not is_good_prime(curve, p) and not force:
        raise BadReductionError(f"p={p} is a bad prime for {curve} (pass force=True)")
    a1, a2, a3, a4, a6 = (_coeff_mod(c, p) for c in
                          (curve.a1, curve.a2, curve.a3, curve.a4, curve.a6))
    if p == 2:
        count = 1  # point at infinity
        for x in range(2):
            for y in range(2):
                lhs = (y * y + a1 * x * y + a3 * y) % 2
                rhs = (x * x * x + a2 * x * x + a4 * x + a6) % 2
                if lhs == rhs:
                    count += 1
        return p + 1 - count
    x = np.arange(p, dtype=np.int64)
    cubic = (x * x % p * x + a2 * x * x + a4 * x + a6) % p
    g = (4 * cubic + (a1 * x + a3) ** 2) % p
    is_square = np.zeros(p, dtype=bool)
    is_square[x * x % p] = True
    chi = np.where(g == 0, 0, np.where(is_square[g], 1, -1))
    return -int(chi.sum())


def good_primes(curve: WeierstrassCurve, X: int) -> list[int]:
    """Ascending good primes p <= X."""
    return [p for p in primes_upto(X) if is_good_prime(curve, p)]


def hasse_check(a_p: int, p: int) -> bool:
    """Hasse bound a_p^2 <= 4p."""
    return a_p * a_p <= 4 * p


def cornacchia_candidates(p: int) -> set[int]:
    """Candidate traces {+-2a, +-2b} with a^2+b^2=p, a odd, b even."""
    if p % 4 != 1:
        raise InertPrimeError(f"p={p} is not 1 mod 4")
    for b in range(0, math.isqrt(p) + 1, 2):
        a_sq = p - b * b
        a = math.isqrt(a_sq)
        if a * a == a_sq and a % 2 == 1:
            return {2 * a, -2 * a, 2 * b, -2 * b}
    raise ArithmeticError(f"no two-square decomposition found for p={p}")


class ApTable(NamedTuple):
    label: str
    entries: list[tuple[int, int, str]]  # (p, a_p, "good" | "bad")


def build_ap_table(curve: WeierstrassCurve, X: int, include_bad: bool = False) -> ApTable:
    entries = []
    for p in primes_upto(X):
        if is_good_prime(curve, p):
            entries.append((p, ap_count(curve, p), "good"))
        elif include_bad:
            entries.append((p, ap_count(curve, p, force=True), "bad"))
    return ApTable(str(curve), entries)


# ---------------------------------------------------------------------------
# quartic reduction and the Legendre cross-ratio


def quartic_to_weierstrass(a, b, c, d, e) -> tuple[Rational, Rational, Rational]:
    """Jacobian of the plane quartic a X^4 + b X^3 + c X^2 + d X + e.

    Coefficients are plain (unweighted).  Returns (A, B, j) with the
    Jacobian in the form Y^2 = X^3 + A X + B, A = -27 I, B = -27 J.
    """
    a, b, c, d, e = (_as_fraction(v) for v in (a, b, c, d, e))
    big_i = 12 * a * e - 3 * b * d + c * c
    big_j = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c**3
    A, B = -27 * big_i, -27 * big_j
    try:
        j = curve_invariants(WeierstrassCurve.short(A, B)).j
    except SingularCurveError as exc:
        raise DegenerateQuarticError(f"quartic has singular Jacobian: {exc}") from exc
    return A, B, j


def quartic_invariants(a, b, c, d, e) -> tuple[Rational, Rational]:
    """The I, J invariants of the plain-coefficient quartic."""
    a, b, c, d, e = (_as_fraction(v) for v in (a, b, c, d, e))
    big_i = 12 * a * e - 3 * b * d + c * c
    big_j = 72 * a * c * e + 9 * b * c * d - 27 * a * d * d - 27 * b * b * e - 2 * c**3
    return big_i, big_j


def legendre_j(lam_cr):
    """j from the Legendre cross-ratio: 256 (l^2-l+1)^3 / (l^2 (l-1)^2)."""
    if lam_cr == 0 or lam_cr == 1:
        raise ZeroDivisionError("Legendre cross-ratio at a pole (0 or 1)")
    if isinstance(lam_cr, (int, Fraction)):
        lam_cr = _as_fraction(lam_cr)
    num = 256 * (lam_cr * lam_cr - lam_cr + 1) ** 3
    den = lam_cr * lam_cr * (lam_cr - 1) ** 2
    return num / den


# ---------------------------------------------------------------------------
# catalogue


@dataclass(frozen=True)
class CatalogueEntry:
    label: str
    model: Optional[tuple[int, int, int, int, int]] = None
    j: Optional[Rational] = None
    cm_discriminant: Optional[int] = None
    pencil_params: Optional[tuple[Rational, Rational, Rational]] = None
    source: str = ""

    @property
    def curve(self) -> Optional[WeierstrassCurve]:
        if self.model is None:
            return None
        return WeierstrassCurve.from_model(self.model, self.label)


ENV_CATALOGUE = "EULER_PENCIL_CATALOGUE"


def _parse_rational(s) -> Rational:
    return Fraction(str(s))


def load_catalogue(path: Optional[str] = None) -> list[CatalogueEntry]:
    """Load the curve/pencil catalogue (seed file, env override, or path)."""
    if path is None:
        path = os.environ.get(ENV_CATALOGUE)
    if path is None:
        raw = resources.files("eulerpencil.data").joinpath("catalogue.json").read_text()
    else:
        with open(path) as fh:
            raw = fh.read()
    entries = []
    for row in json.loads(raw):
        model = tuple(int(c) for c in row["model"]) if row.get("model") else None
        j = _parse_rational(row["j"]) if row.get("j") is not None else None
        pencil = (
            tuple(_parse_rational(c) for c in row["pencil_params"])
            if row.get("pencil_params")
            else None
        )
        entry = CatalogueEntry(
            label=row["label"],
            model=model,
            j=j,
            cm_discriminant=row.get("cm_discriminant"),
            pencil_params=pencil,
            source=row.get("source", ""),
        )
        if entry.model is not None and entry.j is not None:
            computed = curve_invariants(entry.curve).j
            if computed != entry.j:
                raise ValueError(
                    f"catalogue entry {entry.label}: stored j {entry.j} != computed {computed}"
                )
        entries.append(entry)
    return entries


def catalogue_entry(label: str, path: Optional[str] = None) -> CatalogueEntry:
    for entry in load_catalogue(path):
        if entry.label == label:
            return entry
    raise KeyError(f"no catalogue entry with label {label!r}")

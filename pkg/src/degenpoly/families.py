"""Constructors for the polynomial families and their independent oracles.

Every family is produced by extracting exponential coefficients from its
generating series; the recurrence-based constructors recompute the number
sequences by an entirely separate route and exist to cross-check the series
path.  Results are cached; the caches are behind ``functools.lru_cache``,
which is safe to hit from several threads.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .poly import Poly, PolyLike, ZERO, ONE, LAM, as_poly
from .series import Series


class IndexOutOfRange(Exception):
    """An index pair outside the defined triangle was requested."""


class FamilyId(enum.Enum):
    """Stable names for the constructible families (the CLI dispatch table)."""

    FALLING_LAMBDA = "falling-lambda"
    DEG_BERNOULLI = "deg-bernoulli"
    DEG_EULER = "deg-euler"
    HIGHER_BERNOULLI = "higher-bernoulli"
    HIGHER_EULER = "higher-euler"
    SHEFFER_T = "sheffer-t"
    STIRLING1 = "stirling1"


def falling_factorial(base: PolyLike, n: int) -> Poly:
    """The λ-step falling factorial base·(base−λ)·(base−2λ)···(base−(n−1)λ).

    n = 0 gives 1.
    """
    if n < 0:
        raise ValueError("falling factorial needs n >= 0")
    base = as_poly(base)
    out = ONE
    for k in range(n):
        out = out * (base - LAM * k)
    return out


def degenerate_exp(base: PolyLike, order: int) -> Series:
    """The series whose exponential coefficients are the falling factorials of ``base``.

    Reduces to the ordinary exponential of base*t when λ is set to 0.
    """
    base = as_poly(base)
    terms = [ONE]
    for n in range(1, order + 1):
        terms.append(terms[-1] * (base - LAM * (n - 1)))
    return Series(t / factorial(n) for n, t in enumerate(terms))


@lru_cache(maxsize=None)
def bernoulli_base(order: int) -> Series:
    """t divided by (the degenerate exponential of 1, minus 1), as a series."""
    e1 = degenerate_exp(ONE, order + 1)
    return (e1 - Series.one(order + 1)).div_t().reciprocal()


@lru_cache(maxsize=None)
def euler_base(order: int) -> Series:
    """2 divided by (the degenerate exponential of 1, plus 1), as a series."""
    e1 = degenerate_exp(ONE, order)
    return ((e1 + Series.one(order)) * Fraction(1, 2)).reciprocal()


def _power(base: Series, exponent: PolyLike) -> Series:
    """Raise a unit-constant series to a (possibly symbolic) power.

    Constant non-negative integer exponents take the repeated-multiplication
    route; everything else goes through exp(exponent*log(base)).
    """
    exponent = as_poly(exponent)
    if exponent.is_constant():
        value = exponent.constant_value()
        if value.denominator == 1 and value >= 0:
            return base.pow_int(int(value))
    return base.pow(exponent)


def bernoulli_series(at: PolyLike, order: int) -> Series:
    return bernoulli_base(order) * degenerate_exp(at, order)


def euler_series(at: PolyLike, order: int) -> Series:
    return euler_base(order) * degenerate_exp(at, order)


def higher_bernoulli_series(order_param: PolyLike, at: PolyLike, order: int) -> Series:
    return _power(bernoulli_base(order), order_param) * degenerate_exp(at, order)


def higher_euler_series(order_param: PolyLike, at: PolyLike, order: int) -> Series:
    return _power(euler_base(order), order_param) * degenerate_exp(at, order)


def sheffer_type_series(a_param: PolyLike, b_param: PolyLike, at: PolyLike, order: int) -> Series:
    """Product of a Bernoulli-type power, an Euler-type power and an exponential."""
    return (
        _power(bernoulli_base(order), a_param)
        * _power(euler_base(order), b_param)
        * degenerate_exp(at, order)
    )


def _family_values(series: Series, n_max: int) -> list[Poly]:
    return [series.egf_coefficient(n) for n in range(n_max + 1)]


def bernoulli_polynomials(n_max: int, at: PolyLike = ZERO, order: int | None = None) -> list[Poly]:
    """Degenerate Bernoulli values for n = 0..n_max, from the generating series."""
    return _family_values(bernoulli_series(at, n_max if order is None else order), n_max)


def euler_polynomials(n_max: int, at: PolyLike = ZERO, order: int | None = None) -> list[Poly]:
    return _family_values(euler_series(at, n_max if order is None else order), n_max)


def bernoulli_deg(n: int, at: PolyLike = ZERO) -> Poly:
    return bernoulli_series(at, n).egf_coefficient(n)


def euler_deg(n: int, at: PolyLike = ZERO) -> Poly:
    return euler_series(at, n).egf_coefficient(n)


def higher_bernoulli(n: int, order_param: PolyLike, at: PolyLike = ZERO) -> Poly:
    return higher_bernoulli_series(order_param, at, n).egf_coefficient(n)


def higher_euler(n: int, order_param: PolyLike, at: PolyLike = ZERO) -> Poly:
    return higher_euler_series(order_param, at, n).egf_coefficient(n)


def sheffer_type(n: int, a_param: PolyLike, b_param: PolyLike, at: PolyLike = ZERO) -> Poly:
    return sheffer_type_series(a_param, b_param, at, n).egf_coefficient(n)


# -- recurrence oracles -------------------------------------------------------
#
# The number sequences are pinned down by the relations
#     sum_{k<n} C(n,k) * B_k * (1)_{n-k,λ} = [n == 1]      (B_0 = 1)
#     2*E_n + sum_{k<n} C(n,k) * E_k * (1)_{n-k,λ} = 2*[n == 0]
# obtained by binomially expanding the shifted sequence and replacing each
# formal power with the number of that index.  At relation index n the
# highest number not yet determined is B_{n-1} (its coefficient on the left
# is n) respectively E_n (coefficient 2), so each relation is solved for
# that number.


@lru_cache(maxsize=None)
def bernoulli_number_rec(n: int) -> Poly:
    """Degenerate Bernoulli number by recurrence, independent of the series path."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return ONE
    m = n + 1
    acc = ZERO
    for k in range(n):
        acc = acc + bernoulli_number_rec(k) * falling_factorial(ONE, m - k) * comb(m, k)
    return acc / (-m)


@lru_cache(maxsize=None)
def euler_number_rec(n: int) -> Poly:
    """Degenerate Euler number by recurrence, independent of the series path."""
    if n < 0:
        raise ValueError("need n >= 0")
    if n == 0:
        return ONE
    acc = ZERO
    for k in range(n):
        acc = acc + euler_number_rec(k) * falling_factorial(ONE, n - k) * comb(n, k)
    return acc / (-2)


@lru_cache(maxsize=None)
def stirling_first(n: int, k: int) -> Fraction:
    """Signed Stirling number of the first kind via the triangular recurrence.

    Agrees with the exponential coefficients of log(1+t)^k / k!.
    """
    if n < 0 or k < 0 or k > n:
        raise IndexOutOfRange(f"stirling_first needs 0 <= k <= n, got ({n}, {k})")
    if n == 0:
        return Fraction(1)
    if k == 0:
        return Fraction(0)
    # S1(n, k) = S1(n-1, k-1) - (n-1) * S1(n-1, k)
    value = stirling_first(n - 1, k - 1)
    if k <= n - 1:
        value = value - (n - 1) * stirling_first(n - 1, k)
    return value


# -- falling-factorial basis ---------------------------------------------------


def falling_basis_coefficients(p: Poly, var: str = "y") -> list[Poly]:
    """Coefficients c_k with p = sum_k c_k * (var)_{k,λ}.

    The c_k do not involve ``var``; the expansion peels the leading power
    of ``var`` off the remainder, one degree at a time (each falling
    factorial is monic in ``var``).
    """
    base = Poly.var(var)
    degree = p.degree(var)
    coeffs: list[Poly] = [ZERO] * (degree + 1)
    remainder = p
    for k in range(degree, -1, -1):
        c = remainder.coefficient_of(var, k)
        coeffs[k] = c
        if c:
            remainder = remainder - c * falling_factorial(base, k)
    if remainder:
        raise AssertionError("falling-basis expansion left a nonzero remainder")
    return coeffs

"""Exact counts: closed forms, generating-function oracles, recurrences.

Conventions for the counting sequences:

* ``F(n, m)`` pairs (tree, parking sequence), ``M(n, m)`` pairs (mapping,
  parking sequence), ``C(n)`` pairs (connected mapping, sequence) at m = n.
* The univariate series carry ``X_n z^n / (n!)^2``; the bivariate ones carry
  ``X_{n,m} z^n u^(n-m) / (n! m!)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError, SizeError
from .series import Series, fixed_point


def falling_factorial(x: int, k: int) -> int:
    if k < 0:
        raise DomainError("k must be non-negative")
    out = 1
    for i in range(k):
        out *= x - i
    return out


def gen_binomial(a: int, k: int) -> int:
    """a(a-1)...(a-k+1)/k! for any integer a."""
    if k < 0:
        raise DomainError("k must be non-negative")
    q, r = divmod(falling_factorial(a, k), factorial(k))
    assert r == 0
    return q


def _check_nm(n: int, m: int) -> None:
    if n < 1 or not 0 <= m <= n:
        raise DomainError(f"need n >= 1 and 0 <= m <= n, got n={n}, m={m}")


def classic_P(n: int, m: int) -> int:
    """Ordinary parking functions of m drivers on a one-way street of n spaces."""
    _check_nm(n, m)
    if m == 0:
        return 1
    return (n + 1 - m) * (n + 1) ** (m - 1)


def _integral(x: Fraction) -> int:
    if x.denominator != 1:
        raise AssertionError(f"expected an integer, got {x}")
    return x.numerator


def exact_C_n(n: int) -> int:
    _check_nm(n, n)
    s = sum(Fraction((2 * n) ** j, factorial(j)) for j in range(n))
    return _integral(factorial(n) * factorial(n - 1) * s)


def exact_M_n(n: int) -> int:
    _check_nm(n, n)
    s = sum(Fraction((n - j) * (2 * n) ** j, factorial(j)) for j in range(n))
    return _integral(factorial(n) * factorial(n - 1) * s)


def exact_F_n(n: int) -> int:
    _check_nm(n, n)
    s = sum(Fraction((n - j) * (2 * n) ** j, factorial(j)) for j in range(n))
    return _integral(factorial(n - 1) ** 2 * s)


def _nm_sum(n: int, m: int) -> int:
    """m! * sum_j binom(2m-n-j, m-j) (2n)^j (n-j) / j!  (an integer)."""
    total = 0
    ratio = factorial(m)  # m!/j!, updated as j grows
    power = 1
    for j in range(m + 1):
        if j:
            ratio //= j
            power *= 2 * n
        b = gen_binomial(2 * m - n - j, m - j)
        if b:
            total += b * power * (n - j) * ratio
    return total


def exact_M_nm(n: int, m: int) -> int:
    _check_nm(n, m)
    num = factorial(n - 1) * n ** (n - m) * _nm_sum(n, m)
    q, r = divmod(num, factorial(n - m))
    if r:
        raise AssertionError(f"M({n},{m}) closed form is not integral")
    return q


def exact_F_nm(n: int, m: int) -> int:
    _check_nm(n, m)
    num = factorial(n - 1) * n ** (n - m) * _nm_sum(n, m)
    q, r = divmod(num, factorial(n - m) * n)
    if r:
        raise AssertionError(f"F({n},{m}) closed form is not integral")
    return q


# --- generating functions ----------------------------------------------------

MAX_UNIVARIATE_ORDER = 80
MAX_BIVARIATE_ORDER = 40


def _check_order(order: int, limit: int) -> None:
    if order < 1:
        raise DomainError("order must be at least 1")
    if order > limit:
        raise SizeError(f"truncation order {order} exceeds {limit}")


def series_tree_T(order: int) -> Series:
    """Tree function from T = z exp(T) by fixed-point iteration."""
    _check_order(order, MAX_UNIVARIATE_ORDER)
    return fixed_point(lambda t: t.exp().shift(1), order)


def _half_T2z(order: int) -> Series:
    return series_tree_T(order).scale(2) * Fraction(1, 2)


def series_F(order: int) -> Series:
    t = series_tree_T(order).scale(2)
    return t + (1 - t * Fraction(1, 2)).log()


def series_C(order: int) -> Series:
    return -(1 - _half_T2z(order)).log()


def series_M(order: int) -> Series:
    return (1 - _half_T2z(order)).reciprocal()


def coefficient_count(s: Series, n: int) -> int:
    """(n!)^2 [z^n] s, asserted integral."""
    return _integral(s.coeff(n) * factorial(n) ** 2)


@dataclass(frozen=True)
class BivariateGF:
    Q: Series
    F: Series
    C: Series
    M: Series

    def count(self, which: str, n: int, m: int) -> int:
        """n! m! [z^n u^(n-m)] of the chosen series."""
        _check_nm(n, m)
        s = getattr(self, which)
        return _integral(s.coeff(n, n - m) * factorial(n) * factorial(m))


def series_Q_bivariate(order: int) -> BivariateGF:
    _check_order(order, MAX_BIVARIATE_ORDER)
    u = Series.u(order)

    def step(q):
        return (q * (2 + u * (1 - q))).exp().shift(1)

    q = fixed_point(step, order)
    one_minus_q = 1 - q
    denom = one_minus_q * (1 - u * q)
    # Q/z has constant term 1; drop z^order since Q/z is only known one step less
    q_over_z = q.shift(-1)
    F = (q_over_z * one_minus_q).log()
    return BivariateGF(Q=q, F=F, C=-denom.log(), M=denom.reciprocal())


# --- recurrences -------------------------------------------------------------

def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multinomial(top: int, parts) -> Fraction:
    out = Fraction(factorial(top))
    for k in parts:
        out /= factorial(k)
    return out


RECURRENCE_MAX_N = 9


@lru_cache(maxsize=None)
def recurrence_F_n(n: int) -> int:
    """F_n from the decomposition at the last empty node."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > RECURRENCE_MAX_N:
        raise SizeError(f"recurrence evaluation limited to n <= {RECURRENCE_MAX_N}")
    if n == 1:
        return 1
    total = Fraction(0)
    # empty root with r subtrees
    for r in range(1, n):
        for ks in _compositions(n - 1, r):
            prod = 1
            for k in ks:
                prod *= recurrence_F_n(k)
            total += (Fraction(prod, factorial(r)) * _multinomial(n, ks)
                      * _multinomial(n - 1, ks) * n)
    # empty non-root node: remaining tree of size k plus r subtrees
    for k in range(1, n):
        for r in range(0, n - k):
            for ks in _compositions(n - 1 - k, r):
                prod = recurrence_F_n(k)
                for x in ks:
                    prod *= recurrence_F_n(x)
                parts = (k,) + ks
                total += (Fraction(prod, factorial(r)) * _multinomial(n, parts)
                          * _multinomial(n - 1, parts) * k * (n - k))
    return _integral(total)


@lru_cache(maxsize=None)
def recurrence_C_n(n: int) -> int:
    """C_n from the decomposition of connected mappings at the last empty node."""
    if n < 1:
        raise DomainError("n must be positive")
    if n > RECURRENCE_MAX_N:
        raise SizeError(f"recurrence evaluation limited to n <= {RECURRENCE_MAX_N}")
    F = recurrence_F_n
    total = Fraction(0)
    for r in range(0, n):
        for ks in _compositions(n - 1, r):
            prod = 1
            for k in ks:
                prod *= F(k)
            total += Fraction(prod, factorial(r)) * _multinomial(n, ks) * _multinomial(n - 1, ks) * n
    for k in range(1, n):
        for r in range(0, n - k):
            for ks in _compositions(n - 1 - k, r):
                rest = 1
                for x in ks:
                    rest *= F(x)
                parts = (k,) + ks
                weight = Fraction(rest, factorial(r)) * _multinomial(n, parts) * _multinomial(n - 1, parts)
                total += F(k) * weight * k * n
                total += recurrence_C_n(k) * weight * k * (n - k)
    return _integral(total)


# --- ordered forests -----------------------------------------------------------

def forest_G_tilde(n: int, k: int) -> int:
    """Ordered forests of one rooted tree followed by k-1 unrooted trees on n
    labelled nodes: n! [z^n] T U^(k-1) with U = T - T^2/2."""
    if n < 1 or k < 1:
        raise DomainError("need n >= 1 and k >= 1")
    _check_order(n, MAX_UNIVARIATE_ORDER)
    t = series_tree_T(n)
    u = t - t * t * Fraction(1, 2)
    acc = t
    for _ in range(k - 1):
        acc = acc * u
    return _integral(acc.coeff(n) * factorial(n))


def forest_crosscheck(n: int, m: int) -> int:
    """M(n, m) via the ordered-forest count; asserts agreement with the
    closed form and returns the value. Requires m < n."""
    _check_nm(n, m)
    if m == n:
        raise DomainError("the forest identity needs at least one free node (m < n)")
    g = forest_G_tilde(n, n - m)
    num = factorial(m) * 2 ** m * n ** (n - m) * g
    value, r = divmod(num, factorial(n - m))
    if r or value != exact_M_nm(n, m):
        raise AssertionError(f"forest identity fails at n={n}, m={m}")
    return value


def count_table(ns, ms=None):
    """Yield (n, m) pairs for n in ``ns`` and m in ``ms`` (default 0..n)."""
    for n in ns:
        for m in (range(n + 1) if ms is None else ms):
            if 0 <= m <= n:
                yield n, m


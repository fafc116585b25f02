"""Truncated power series in z with exact rational coefficients.

A coefficient is a polynomial in a second variable u, stored as a tuple of
Fractions (constant term first). Univariate series simply use constant
polynomials. Everything is exact; the z-order and the u-degree are both
truncated at ``order``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ContractError, SizeError

Poly = tuple  # tuple[Fraction, ...]

ZERO: Poly = ()


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    return _trim(x + y for x, y in zip(a, b + (0,) * (len(a) - len(b))))


def pscale(a: Poly, c) -> Poly:
    if c == 0:
        return ZERO
    return tuple(x * c for x in a)


def pmul(a: Poly, b: Poly, maxdeg: int) -> Poly:
    if not a or not b:
        return ZERO
    out = [Fraction(0)] * min(len(a) + len(b) - 1, maxdeg + 1)
    for i, x in enumerate(a):
        if i >= len(out):
            break
        if x == 0:
            continue
        for j, y in enumerate(b[: len(out) - i]):
            out[i + j] += x * y
    return _trim(out)


def _const(p: Poly):
    """The value of a polynomial that must be a constant."""
    if len(p) > 1:
        raise ContractError("leading coefficient must be free of u")
    return p[0] if p else Fraction(0)


class Series:
    """A power series truncated after ``z**order``."""

    __slots__ = ("order", "c")

    def __init__(self, coeffs: Iterable[Poly], order: int):
        if order < 0:
            raise SizeError("order must be non-negative")
        c = [_trim(Fraction(x) for x in p) for p in coeffs][: order + 1]
        c += [ZERO] * (order + 1 - len(c))
        self.order = order
        self.c = [p[: order + 1] for p in c]

    # constructors
    @classmethod
    def from_scalars(cls, values: Sequence, order: int) -> "Series":
        return cls(((v,) for v in values), order)

    @classmethod
    def const(cls, value, order: int) -> "Series":
        return cls.from_scalars([value], order)

    @classmethod
    def z(cls, order: int) -> "Series":
        return cls.from_scalars([0, 1], order)

    @classmethod
    def u(cls, order: int) -> "Series":
        return cls([(0, 1)], order)

    # access
    def coeff(self, n: int, k: int = 0) -> Fraction:
        if n > self.order:
            raise SizeError(f"z^{n} is beyond the truncation order {self.order}")
        p = self.c[n]
        return p[k] if k < len(p) else Fraction(0)

    def scalars(self) -> list[Fraction]:
        return [self.coeff(n) for n in range(self.order + 1)]

    def valuation(self) -> int:
        for n, p in enumerate(self.c):
            if p:
                return n
        return self.order + 1

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        k = min(self.order, other.order)
        return self.c[: k + 1] == other.c[: k + 1]

    def __repr__(self):
        return f"Series(order={self.order}, c={self.c!r})"

    # ring operations
    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series.const(other, self.order)

    def __add__(self, other):
        other = self._coerce(other)
        k = min(self.order, other.order)
        return Series((padd(a, b) for a, b in zip(self.c[: k + 1], other.c[: k + 1])), k)

    __radd__ = __add__

    def __neg__(self):
        return Series((pscale(p, -1) for p in self.c), self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series((pscale(p, Fraction(other)) for p in self.c), self.order)
        k = min(self.order, other.order)
        a, b = self.c, other.c
        out = []
        for n in range(k + 1):
            acc = ZERO
            for i in range(n + 1):
                if a[i] and b[n - i]:
                    acc = padd(acc, pmul(a[i], b[n - i], k))
            out.append(acc)
        return Series(out, k)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.reciprocal()
        return self * (Fraction(1) / Fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def shift(self, k: int) -> "Series":
        """Multiply by z**k (k may be negative if the low terms vanish)."""
        if k >= 0:
            return Series([ZERO] * k + self.c, self.order)
        if self.valuation() < -k:
            raise ContractError(f"cannot divide by z^{-k}: series has low-order terms")
        return Series(self.c[-k:], self.order + k)

    def scale(self, factor) -> "Series":
        """Substitute z -> factor * z."""
        factor = Fraction(factor)
        return Series((pscale(p, factor ** n) for n, p in enumerate(self.c)), self.order)

    def derivative(self) -> "Series":
        return Series((pscale(p, n) for n, p in enumerate(self.c) if n), max(self.order - 1, 0))

    def integral(self) -> "Series":
        return Series([ZERO] + [pscale(p, Fraction(1, n + 1)) for n, p in enumerate(self.c)],
                      self.order + 1)

    def reciprocal(self) -> "Series":
        a0 = _const(self.c[0])
        if a0 == 0:
            raise ContractError("reciprocal needs a nonzero constant term")
        inv = Fraction(1) / a0
        out = [(inv,)]
        for n in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, n + 1):
                if self.c[k] and out[n - k]:
                    acc = padd(acc, pmul(self.c[k], out[n - k], self.order))
            out.append(pscale(acc, -inv))
        return Series(out, self.order)

    def exp(self) -> "Series":
        if self.c[0]:
            raise ContractError("exp needs a series without constant term")
        # E' = A' E  =>  n E_n = sum_k k A_k E_{n-k}
        out = [(Fraction(1),)]
        for n in range(1, self.order + 1):
            acc = ZERO
            for k in range(1, n + 1):
                if self.c[k] and out[n - k]:
                    acc = padd(acc, pmul(pscale(self.c[k], k), out[n - k], self.order))
            out.append(pscale(acc, Fraction(1, n)))
        return Series(out, self.order)

    def log(self) -> "Series":
        if _const(self.c[0]) != 1:
            raise ContractError("log needs constant term 1")
        # L' = A'/A  =>  n L_n = n A_n - sum_{k<n} k L_k A_{n-k}
        out = [ZERO]
        for n in range(1, self.order + 1):
            acc = pscale(self.c[n], n)
            for k in range(1, n):
                if out[k] and self.c[n - k]:
                    acc = padd(acc, pscale(pmul(out[k], self.c[n - k], self.order), -k))
            out.append(pscale(acc, Fraction(1, n)))
        return Series(out, self.order)

    def compose(self, inner: "Series") -> "Series":
        """self(inner(z)) for ``inner`` without constant term (Horner)."""
        if inner.c[0]:
            raise ContractError("inner series must have zero constant term")
        k = min(self.order, inner.order)
        acc = Series([self.c[k]], k)
        for n in range(k - 1, -1, -1):
            acc = acc * inner + Series([self.c[n]], k)
        return acc


def fixed_point(step, order: int, iterations: int | None = None) -> Series:
    """Iterate ``x <- step(x)`` from 0. When ``step`` multiplies by z each
    pass fixes at least one more coefficient, so ``order`` passes suffice."""
    x = Series([], order)
    for _ in range(order if iterations is None else iterations):
        x = step(x)
    return x

"""Truncated power series with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class RationalSeries:
    """Power series ``sum c_k z^k`` known for ``k = 0..order``.

    Arithmetic truncates to the smaller order of the operands.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable):
        self.coefficients: tuple[Fraction, ...] = tuple(Fraction(c) for c in coefficients)
        if not self.coefficients:
            raise ValueError("a series needs at least the constant coefficient")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __len__(self):
        return len(self.coefficients)

    def __getitem__(self, k):
        return self.coefficients[k]

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other):
        if isinstance(other, RationalSeries):
            return self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return f"RationalSeries({[str(c) for c in self.coefficients]})"

    @classmethod
    def constant(cls, c, order: int) -> "RationalSeries":
        return cls([c] + [0] * order)

    @classmethod
    def monomial(cls, k: int, order: int, c=1) -> "RationalSeries":
        out = [0] * (order + 1)
        if k <= order:
            out[k] = c
        return cls(out)

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self.coefficients[: order + 1])

    def _pair(self, other):
        if not isinstance(other, RationalSeries):
            other = RationalSeries.constant(other, self.order)
        n = min(self.order, other.order) + 1
        return self.coefficients[:n], other.coefficients[:n]

    def __add__(self, other):
        a, b = self._pair(other)
        return RationalSeries(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries(-x for x in self.coefficients)

    def __sub__(self, other):
        a, b = self._pair(other)
        return RationalSeries(x - y for x, y in zip(a, b))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalSeries):
            c = Fraction(other)
            return RationalSeries(x * c for x in self.coefficients)
        a, b = self._pair(other)
        n = len(a)
        out = [Fraction(0)] * n
        for i, x in enumerate(a):
            if x:
                for j in range(n - i):
                    out[i + j] += x * b[j]
        return RationalSeries(out)

    __rmul__ = __mul__

    def inverse(self) -> "RationalSeries":
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        out = [inv0]
        for k in range(1, len(a)):
            s = sum(a[i] * out[k - i] for i in range(1, k + 1))
            out.append(-s * inv0)
        return RationalSeries(out)

    def __truediv__(self, other):
        if not isinstance(other, RationalSeries):
            c = Fraction(other)
            return RationalSeries(x / c for x in self.coefficients)
        return self * other.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = RationalSeries.constant(1, self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def theta(self) -> "RationalSeries":
        """Apply ``z d/dz``."""
        return RationalSeries(k * c for k, c in enumerate(self.coefficients))

    def theta_integral(self) -> "RationalSeries":
        """Inverse of ``theta`` on series without constant term."""
        if self.coefficients[0] != 0:
            raise ValueError("theta-integration needs a zero constant term")
        return RationalSeries([0] + [c / k for k, c in enumerate(self.coefficients) if k])

    def exp(self) -> "RationalSeries":
        """``exp`` of a series with zero constant term, via ``theta E = (theta f) E``."""
        if self.coefficients[0] != 0:
            raise ValueError("exp needs a zero constant term for an exact result")
        df = self.theta().coefficients
        out = [Fraction(1)]
        for k in range(1, len(self.coefficients)):
            out.append(sum(df[i] * out[k - i] for i in range(1, k + 1)) / k)
        return RationalSeries(out)

    def log(self) -> "RationalSeries":
        if self.coefficients[0] != 1:
            raise ValueError("log needs constant term 1")
        return (self.theta() / self).theta_integral()

    def power(self, e) -> "RationalSeries":
        """Real power with constant term 1, exponent any rational."""
        e = Fraction(e)
        if e.denominator == 1:
            return self ** int(e)
        return (self.log() * e).exp()

    def compose(self, inner: "RationalSeries") -> "RationalSeries":
        """``self(inner(z))`` for ``inner`` with zero constant term (Horner)."""
        if inner.coefficients[0] != 0:
            raise ValueError("inner series must have zero constant term")
        n = min(self.order, inner.order)
        inner = inner.truncate(n)
        result = RationalSeries.constant(self.coefficients[n], n)
        for c in reversed(self.coefficients[:n]):
            result = result * inner + c
        return result

    def reversion(self) -> "RationalSeries":
        """Compositional inverse of ``z + a_2 z^2 + ...`` by Lagrange inversion.

        The coefficient of ``w^n`` in the inverse is ``[z^(n-1)] (z / f(z))^n / n``.
        """
        a = self.coefficients
        if len(a) < 2 or a[0] != 0 or a[1] == 0:
            raise ValueError("reversion needs f(0) = 0 and f'(0) != 0")
        n_max = self.order
        # z / f(z) as a series of order n_max - 1
        h = RationalSeries(a[1:]).inverse()
        out = [Fraction(0)]
        hp = RationalSeries.constant(1, h.order)
        for n in range(1, n_max + 1):
            hp = hp * h
            out.append(hp.coefficients[n - 1] / n)
        return RationalSeries(out)

    def substitute_power(self, g: int) -> "RationalSeries":
        """Series in ``z^g`` re-expressed in ``z``."""
        out = [Fraction(0)] * (self.order * g + 1)
        for k, c in enumerate(self.coefficients):
            out[k * g] = c
        return RationalSeries(out)


def binomial_series(c, e, order: int) -> RationalSeries:
    """``(1 + c z)^e`` for rational ``c`` and ``e``."""
    c, e = Fraction(c), Fraction(e)
    out = [Fraction(1)]
    coef = Fraction(1)
    for k in range(1, order + 1):
        coef = coef * (e - k + 1) / k
        out.append(coef * c ** k)
    return RationalSeries(out)


def from_polynomial(coeffs: Sequence, order: int) -> RationalSeries:
    out = list(coeffs[: order + 1]) + [0] * max(0, order + 1 - len(coeffs))
    return RationalSeries(out)


def format_fraction(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

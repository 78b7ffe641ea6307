"""Exact scalar and polynomial arithmetic used throughout the package.

All algebraic identities (conservation, hermiticity, vanishing commutators,
recurrence coefficients) are checked in exact rational arithmetic; floating
point enters only when a matrix is handed to an eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

Rationalish = Union["RationalComplex", Fraction, int, float, complex]


@dataclass(frozen=True)
class RationalComplex:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def coerce(value: Rationalish) -> "RationalComplex":
        """Convert a number to RationalComplex without loss of precision."""
        if isinstance(value, RationalComplex):
            return value
        if isinstance(value, complex):
            return RationalComplex(Fraction(value.real), Fraction(value.imag))
        return RationalComplex(Fraction(value))

    @staticmethod
    def _try_coerce(value) -> "RationalComplex | None":
        try:
            return RationalComplex.coerce(value)
        except (TypeError, ValueError):
            return None

    @property
    def is_zero(self) -> bool:
        return not self.re and not self.im

    @property
    def is_real(self) -> bool:
        return not self.im

    def conjugate(self) -> "RationalComplex":
        return RationalComplex(self.re, -self.im)

    def __add__(self, other: Rationalish) -> "RationalComplex":
        o = RationalComplex._try_coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: Rationalish) -> "RationalComplex":
        o = RationalComplex._try_coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Rationalish) -> "RationalComplex":
        o = RationalComplex._try_coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "RationalComplex":
        return RationalComplex(-self.re, -self.im)

    def __mul__(self, other: Rationalish) -> "RationalComplex":
        o = RationalComplex._try_coerce(other)
        if o is None:
            return NotImplemented
        return RationalComplex(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Rationalish) -> "RationalComplex":
        o = RationalComplex.coerce(other)
        denom = o.re * o.re + o.im * o.im
        if not denom:
            raise ZeroDivisionError("division by zero RationalComplex")
        return RationalComplex(
            (self.re * o.re + self.im * o.im) / denom,
            (self.im * o.re - self.re * o.im) / denom,
        )

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im >= 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = RationalComplex()
ONE = RationalComplex(Fraction(1))


def falling_factorial(x: Union[int, Fraction], m: int) -> Union[int, Fraction]:
    """x (x-1) ... (x-m+1); equals 1 for m = 0."""
    out: Union[int, Fraction] = 1
    for i in range(m):
        out *= x - i
    return out


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with RationalComplex coefficients (ascending)."""

    coeffs: tuple[RationalComplex, ...] = ()

    @staticmethod
    def from_coeffs(values: Iterable[Rationalish]) -> "Polynomial":
        coeffs = [RationalComplex.coerce(v) for v in values]
        while coeffs and coeffs[-1].is_zero:
            coeffs.pop()
        return Polynomial(tuple(coeffs))

    @staticmethod
    def constant(value: Rationalish) -> "Polynomial":
        return Polynomial.from_coeffs([value])

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial.from_coeffs([1])

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial.from_coeffs([0, 1])

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial assigned -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = []
        for i in range(n):
            a = self.coeffs[i] if i < len(self.coeffs) else ZERO
            b = other.coeffs[i] if i < len(other.coeffs) else ZERO
            out.append(a + b)
        return Polynomial.from_coeffs(out)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __mul__(self, other: Union["Polynomial", Rationalish]) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = RationalComplex.coerce(other)
            return Polynomial.from_coeffs([c * s for c in self.coeffs])
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial.from_coeffs(out)

    def __rmul__(self, other: Rationalish) -> "Polynomial":
        return self * other

    def shifted(self) -> "Polynomial":
        """Multiply by the variable (degree raised by one)."""
        if self.is_zero:
            return self
        return Polynomial((ZERO,) + self.coeffs)

    def __call__(self, value: Rationalish) -> RationalComplex:
        """Exact Horner evaluation."""
        v = RationalComplex.coerce(value)
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def eval_complex(self, z: complex) -> complex:
        """Floating-point Horner evaluation."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + complex(c)
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial.from_coeffs(
            [c * i for i, c in enumerate(self.coeffs)][1:]
        )

    def complex_coeffs(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def render(self, variable: str = "E") -> str:
        """Human-readable form, lowest power first."""
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                power = variable if i == 1 else f"{variable}^{i}"
                if c == ONE:
                    parts.append(power)
                elif c == -ONE:
                    parts.append(f"-{power}")
                else:
                    body = str(c)
                    if not c.is_real:
                        body = f"({body})"
                    parts.append(f"{body}*{power}")
        text = parts[0]
        for p in parts[1:]:
            text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return text


def falling_factorial_poly(m: int) -> Polynomial:
    """X (X-1) ... (X-m+1) as a polynomial in X."""
    out = Polynomial.one()
    for i in range(m):
        out = out * Polynomial.from_coeffs([-i, 1])
    return out


def rising_factorial_poly(m: int) -> Polynomial:
    """(X+1) (X+2) ... (X+m) as a polynomial in X."""
    out = Polynomial.one()
    for i in range(1, m + 1):
        out = out * Polynomial.from_coeffs([i, 1])
    return out


def power_poly(m: int) -> Polynomial:
    """X^m as a polynomial in X."""
    return Polynomial.from_coeffs([0] * m + [1])

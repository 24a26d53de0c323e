"""Exact univariate polynomials in the deformation parameter nu."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def format_rational(x: Rational) -> str:
    """Render a rational as "p/q" with q > 0 and gcd(p, q) = 1."""
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or a plain integer string."""
    return Fraction(text)


class NuPoly:
    """Immutable polynomial in nu with exact rational coefficients.

    Coefficients are stored constant term first.  Trailing zeros are
    stripped on construction, so equal polynomials compare equal
    structurally.  The zero polynomial has degree -inf.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "NuPoly":
        return cls()

    @classmethod
    def one(cls) -> "NuPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c: Rational) -> "NuPoly":
        return cls((c,))

    @classmethod
    def nu(cls) -> "NuPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, power: int, coeff: Rational = 1) -> "NuPoly":
        if power < 0:
            raise ValueError("power must be non-negative")
        return cls((0,) * power + (coeff,))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else float("-inf")

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, NuPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "NuPoly") -> "NuPoly":
        if not isinstance(other, NuPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return NuPoly(out)

    def __neg__(self) -> "NuPoly":
        return NuPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "NuPoly") -> "NuPoly":
        if not isinstance(other, NuPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NuPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, NuPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return NuPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return NuPoly(out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, power: int) -> "NuPoly":
        if power < 0:
            raise ValueError("negative powers are not polynomials")
        out = NuPoly.one()
        for _ in range(power):
            out = out * self
        return out

    def evaluate(self, x: Rational) -> Fraction:
        """Exact evaluation by Horner's rule."""
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_strings(self) -> list[str]:
        """Coefficients as "p/q" strings, constant term first."""
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "NuPoly":
        return cls(tuple(parse_rational(s) for s in items))

    def pretty(self, var: str = "nu") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                body = _frac_str(abs(c))
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if abs(c) == 1 else f"{_frac_str(abs(c))}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"NuPoly({self.pretty()})"


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"

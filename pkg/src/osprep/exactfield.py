"""Exact scalar arithmetic over Q(z) with z**2 = -1/2.

Every coefficient appearing in the spinor realizations lies in the
quadratic extension of the rationals generated by a single element z
(standing for i/sqrt(2)).  Scalars are stored as a pair of rationals
``re + zc*z`` and all arithmetic is exact; there is no floating point
anywhere in this package.
"""

from __future__ import annotations

try:  # gmpy2's mpq is a drop-in Fraction replacement and much faster
    from gmpy2 import mpq as Rat
except ImportError:  # pragma: no cover
    from fractions import Fraction as Rat

__all__ = ["Rat", "rational", "format_rational", "FieldScalar", "ZERO", "ONE", "ZETA"]


def rational(value) -> Rat:
    """Coerce an int, string ("p/q") or rational into a Rat."""
    if isinstance(value, str):
        return Rat(value)
    return Rat(value)


def format_rational(q) -> str:
    """Render a rational as "p" or "p/q" with positive denominator."""
    return str(Rat(q))


class FieldScalar:
    """An element re + zc*z of Q(z), z**2 = -1/2.

    Immutable.  Conjugation negates the z-part (z stands for i/sqrt(2),
    so conj flips the sign of the imaginary unit).
    """

    __slots__ = ("re", "zc")

    def __init__(self, re=0, zc=0):
        object.__setattr__(self, "re", Rat(re))
        object.__setattr__(self, "zc", Rat(zc))

    def __setattr__(self, name, value):
        raise AttributeError("FieldScalar is immutable")

    @staticmethod
    def lift(value) -> "FieldScalar":
        if isinstance(value, FieldScalar):
            return value
        return FieldScalar(value, 0)

    # -- ring structure ------------------------------------------------

    def __add__(self, other):
        other = FieldScalar.lift(other)
        return FieldScalar(self.re + other.re, self.zc + other.zc)

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(-self.re, -self.zc)

    def __sub__(self, other):
        other = FieldScalar.lift(other)
        return FieldScalar(self.re - other.re, self.zc - other.zc)

    def __rsub__(self, other):
        return FieldScalar.lift(other) - self

    def __mul__(self, other):
        other = FieldScalar.lift(other)
        # (a + b z)(c + e z) = ac + (ae + bc) z + be z^2,  z^2 = -1/2
        a, b, c, e = self.re, self.zc, other.re, other.zc
        return FieldScalar(a * c - b * e / 2, a * e + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "FieldScalar":
        if not self:
            raise ZeroDivisionError("inverse of zero FieldScalar")
        # (a + bz)(a - bz) = a^2 + b^2/2 is a nonzero rational
        norm = self.re * self.re + self.zc * self.zc / 2
        return FieldScalar(self.re / norm, -self.zc / norm)

    def __truediv__(self, other):
        other = FieldScalar.lift(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return FieldScalar.lift(other) / self

    def conj(self) -> "FieldScalar":
        return FieldScalar(self.re, -self.zc)

    # -- comparisons / hashing ------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.zc)

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self.re == other.re and self.zc == other.zc
        try:
            other = Rat(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.zc == 0 and self.re == other

    def __hash__(self):
        return hash((self.re, self.zc))

    def is_rational(self) -> bool:
        return self.zc == 0

    # -- rendering -------------------------------------------------------

    def __str__(self) -> str:
        if self.zc == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.zc)}*z"
        return f"{format_rational(self.re)} + {format_rational(self.zc)}*z"

    def __repr__(self) -> str:
        return f"FieldScalar({self.re!r}, {self.zc!r})"

    def to_json(self) -> str:
        # documented relation: z^2 = -1/2
        return f"{format_rational(self.re)} + {format_rational(self.zc)}*z"

    @staticmethod
    def from_json(text: str) -> "FieldScalar":
        head, _, tail = text.partition("+")
        if not tail:
            if head.strip().endswith("*z"):
                return FieldScalar(0, Rat(head.strip()[:-2]))
            return FieldScalar(Rat(head.strip()), 0)
        zc = tail.strip()
        if not zc.endswith("*z"):
            raise ValueError(f"malformed FieldScalar string: {text!r}")
        return FieldScalar(Rat(head.strip()), Rat(zc[:-2]))


ZERO = FieldScalar(0, 0)
ONE = FieldScalar(1, 0)
ZETA = FieldScalar(0, 1)

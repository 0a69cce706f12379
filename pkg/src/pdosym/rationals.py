"""Complex numbers with rational real and imaginary parts.

Orders, coefficients and radial exponents of symbols all live in Q(i); this
keeps every algebraic operation of the calculus decidable.  Powers of pi and
square roots of integers are handled one level up, in :mod:`pdosym.exact`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

RatLike = Union[int, Fraction, "QC"]


@dataclass(frozen=True)
class QC:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(value: RatLike) -> QC:
        if isinstance(value, QC):
            return value
        return QC(Fraction(value))

    def __add__(self, other: RatLike) -> QC:
        o = QC.of(other)
        return QC(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: RatLike) -> QC:
        o = QC.of(other)
        return QC(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: RatLike) -> QC:
        return QC.of(other) - self

    def __neg__(self) -> QC:
        return QC(-self.re, -self.im)

    def __mul__(self, other: RatLike) -> QC:
        o = QC.of(other)
        return QC(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: RatLike) -> QC:
        o = QC.of(other)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return QC((self.re * o.re + self.im * o.im) / d,
                  (self.im * o.re - self.re * o.im) / d)

    def __rtruediv__(self, other: RatLike) -> QC:
        return QC.of(other) / self

    def conjugate(self) -> QC:
        return QC(self.re, -self.im)

    @property
    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def as_integer(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return int(self.re)

    def __complex__(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __str__(self) -> str:
        if self.im == 0:
            return _frac_str(self.re)
        if self.re == 0:
            return f"{_frac_str(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{_frac_str(self.re)}{sign}{_frac_str(abs(self.im))}i"

    __repr__ = __str__


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


ZERO = QC()
ONE = QC(Fraction(1))
I = QC(Fraction(0), Fraction(1))


def qc(re, im=0) -> QC:
    """Shorthand constructor accepting ints, Fractions or strings."""
    return QC(Fraction(re), Fraction(im))

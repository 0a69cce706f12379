"""The exact value ring of the calculus.

Every regularised integral computed here lands in the ring

    { sum of  q * pi^k * sqrt(d) :  q in Q(i),  k in (1/2)Z,  d squarefree }.

Powers of pi come from sphere and Gaussian integrals, square roots of
integers from Gaussian scale factors (the full-space integral of
x^g * exp(-m|x|^2) carries m^{-(|g|+n)/2}).  Elements are kept in canonical
form: zero coefficients pruned, sqrt arguments squarefree.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt
from typing import Dict, Iterable, Tuple, Union

import mpmath as mp

from .rationals import QC

# term key: (k2, d) meaning pi^(k2/2) * sqrt(d), d squarefree >= 1
Key = Tuple[int, int]


def _squarefree_split(m: int) -> Tuple[int, int]:
    """m = s^2 * d with d squarefree; returns (s, d).  m >= 1."""
    s, d = 1, 1
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    return s, d * m


def _sqrt_merge(d1: int, d2: int) -> Tuple[int, int]:
    """sqrt(d1)*sqrt(d2) = g*sqrt(u*v) for squarefree d1, d2."""
    g = gcd(d1, d2)
    return g, (d1 // g) * (d2 // g)


@dataclass(frozen=True)
class Exact:
    terms: Tuple[Tuple[Key, QC], ...] = ()

    # -- construction ------------------------------------------------------

    @staticmethod
    def _from_dict(d: Dict[Key, QC]) -> Exact:
        items = tuple(sorted((k, v) for k, v in d.items() if not v.is_zero))
        return Exact(items)

    @staticmethod
    def zero() -> Exact:
        return Exact()

    @staticmethod
    def from_qc(q: Union[int, Fraction, QC]) -> Exact:
        q = QC.of(q)
        if q.is_zero:
            return Exact()
        return Exact._from_dict({(0, 1): q})

    @staticmethod
    def pi_pow(k: Union[int, Fraction], coeff: Union[int, Fraction, QC] = 1) -> Exact:
        """coeff * pi^k with k a (half-)integer."""
        k = Fraction(k)
        if k.denominator not in (1, 2):
            raise ValueError("pi exponent must be a half-integer")
        c = QC.of(coeff)
        if c.is_zero:
            return Exact()
        return Exact._from_dict({(int(2 * k), 1): c})

    @staticmethod
    def sqrt_int(m: int, coeff: Union[int, Fraction, QC] = 1) -> Exact:
        """coeff * sqrt(m) for a positive integer m."""
        if m <= 0:
            raise ValueError("sqrt argument must be positive")
        s, d = _squarefree_split(m)
        c = QC.of(coeff) * s
        if c.is_zero:
            return Exact()
        return Exact._from_dict({(0, d): c})

    # -- ring operations ---------------------------------------------------

    def _dict(self) -> Dict[Key, QC]:
        return dict(self.terms)

    def __add__(self, other: Exact) -> Exact:
        if not isinstance(other, Exact):
            return NotImplemented
        out = self._dict()
        for k, v in other.terms:
            out[k] = out.get(k, QC()) + v
        return Exact._from_dict(out)

    def __sub__(self, other: Exact) -> Exact:
        return self + (-other)

    def __neg__(self) -> Exact:
        return Exact(tuple((k, -v) for k, v in self.terms))

    def __mul__(self, other: Union[Exact, int, Fraction, QC]) -> Exact:
        if not isinstance(other, Exact):
            return self.scale(QC.of(other))
        out: Dict[Key, QC] = {}
        for (k2a, da), va in self.terms:
            for (k2b, db), vb in other.terms:
                g, m = _sqrt_merge(da, db)
                s, d = _squarefree_split(m)
                key = (k2a + k2b, d)
                out[key] = out.get(key, QC()) + va * vb * (g * s)
        return Exact._from_dict(out)

    __rmul__ = __mul__

    def scale(self, q: Union[int, Fraction, QC]) -> Exact:
        q = QC.of(q)
        if q.is_zero:
            return Exact()
        return Exact(tuple((k, v * q) for k, v in self.terms))

    def div_qc(self, q: Union[int, Fraction, QC]) -> Exact:
        q = QC.of(q)
        return Exact(tuple((k, v / q) for k, v in self.terms))

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, QC)):
            other = Exact.from_qc(other)
        if not isinstance(other, Exact):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def qc_part(self) -> QC:
        """Coefficient of pi^0*sqrt(1); raises if other terms are present."""
        for (k2, d), v in self.terms:
            if (k2, d) != (0, 1):
                raise ValueError(f"{self} is not a plain rational value")
        return self.terms[0][1] if self.terms else QC()

    # -- numerics and rendering -------------------------------------------

    def numeric(self, dps: int = 30) -> mp.mpc:
        with mp.workdps(dps + 10):
            total = mp.mpc(0)
            for (k2, d), v in self.terms:
                mag = mp.power(mp.pi, mp.mpf(k2) / 2) * mp.sqrt(d)
                total += mp.mpc(mp.mpf(v.re.numerator) / v.re.denominator,
                                mp.mpf(v.im.numerator) / v.im.denominator) * mag
            return +total

    def decimal(self, digits: int = 20) -> str:
        val = self.numeric(digits + 10)
        with mp.workdps(digits):
            if mp.im(val) == 0:
                return mp.nstr(mp.re(val), digits)
            return mp.nstr(val, digits)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (k2, d), v in self.terms:
            factors = []
            vs = str(v)
            if ("+" in vs[1:]) or ("-" in vs[1:]) or vs.endswith("i"):
                vs = f"({vs})"
            if k2 == 0 and d == 1:
                factors.append(vs)
            else:
                if vs != "1":
                    factors.append(vs)
                if k2 == 2:
                    factors.append("pi")
                elif k2 == 1:
                    factors.append("sqrt(pi)")
                elif k2 != 0:
                    if k2 % 2 == 0:
                        factors.append(f"pi^({k2 // 2})")
                    else:
                        factors.append(f"pi^({k2}/2)")
                if d != 1:
                    factors.append(f"sqrt({d})")
            parts.append("*".join(factors) if factors else "1")
        return " + ".join(parts)

    __repr__ = __str__


E_ZERO = Exact.zero()
E_ONE = Exact.from_qc(1)


def gamma_half(t2: int) -> Exact:
    """Gamma(t2/2) exactly, for positive integer t2.

    Gamma(m) = (m-1)!,  Gamma(m + 1/2) = (2m)!/(4^m m!) * sqrt(pi).
    """
    if t2 <= 0:
        raise ValueError("gamma argument must be positive")
    if t2 % 2 == 0:
        m = t2 // 2
        return Exact.from_qc(Fraction(_fact(m - 1)))
    m = (t2 - 1) // 2
    coeff = Fraction(_fact(2 * m), 4 ** m * _fact(m))
    return Exact.pi_pow(Fraction(1, 2), coeff)


def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def gamma_half_ratio(num2: Iterable[int], den2: Iterable[int]) -> Exact:
    """Product of Gamma(t/2) over num2 divided by the product over den2.

    All arguments are doubled (t2 = 2t) positive integers.  The result stays
    in the ring because each Gamma at a half-integer is rational * sqrt(pi).
    """
    coeff = Fraction(1)
    pi_half = 0
    for t2 in num2:
        g = gamma_half(t2)
        ((k2, _d), v), = g.terms
        coeff *= v.re
        pi_half += k2
    for t2 in den2:
        g = gamma_half(t2)
        ((k2, _d), v), = g.terms
        coeff /= v.re
        pi_half -= k2
    return Exact.pi_pow(Fraction(pi_half, 2), coeff)

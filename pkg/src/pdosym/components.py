"""Positively homogeneous components and their canonical form.

A component of degree d is a finite sum of terms coeff * xi^alpha * |xi|^c
with |alpha| + c = d.  That raw representation is not unique (|xi|^2 is a
polynomial), so components are stored in harmonic canonical form

    c(xi) = sum_k H_k(xi) |xi|^{d-k},   Delta H_k = 0,

which is unique; equality is coefficient-wise.  Closed under +, *, d/dxi_i,
multiplication by xi_i and by xi_i/|xi|.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Tuple

import mpmath as mp

from . import poly as P
from .errors import DimensionMismatch
from .exact import Exact, gamma_half_ratio
from .rationals import QC


def check_dim(n: int) -> None:
    if n < 2:
        raise DimensionMismatch("the calculus requires dimension n >= 2")


@dataclass(frozen=True)
class Term:
    """coeff * xi^alpha * |xi|^c; degree |alpha| + c."""

    coeff: QC
    alpha: Tuple[int, ...]
    radial: QC

    @property
    def degree(self) -> QC:
        return self.radial + QC.of(sum(self.alpha))


def term(coeff, alpha, radial=0) -> Term:
    return Term(QC.of(coeff), tuple(alpha), QC.of(radial))


@dataclass(frozen=True)
class Component:
    n: int
    degree: QC
    parts: Tuple[Tuple[int, Tuple[Tuple[Tuple[int, ...], QC], ...]], ...]
    # parts: sorted ((k, sorted poly items) ...) with each poly harmonic of degree k

    # -- construction -------------------------------------------------------

    @staticmethod
    def zero(n: int, degree) -> Component:
        check_dim(n)
        return Component(n, QC.of(degree), ())

    @staticmethod
    def from_parts(n: int, degree, parts: Dict[int, P.Poly]) -> Component:
        check_dim(n)
        packed = tuple(sorted(
            (k, tuple(sorted(p.items()))) for k, p in parts.items() if p))
        return Component(n, QC.of(degree), packed)

    @staticmethod
    def from_terms(n: int, terms: Iterable[Term]) -> Component:
        """Canonicalise raw terms; they must all share one total degree."""
        check_dim(n)
        terms = list(terms)
        if not terms:
            raise ValueError("cannot infer the degree of an empty term list")
        degree = terms[0].degree
        acc: Dict[int, P.Poly] = {}
        for t in terms:
            if len(t.alpha) != n:
                raise DimensionMismatch(f"term {t} does not live in dimension {n}")
            if t.degree != degree:
                raise ValueError(
                    f"term of degree {t.degree} in a component of degree {degree}")
            if t.coeff.is_zero:
                continue
            for k, Hk in P.harmonic_decompose(P.p_monomial(t.alpha, t.coeff), n).items():
                acc[k] = P.p_add(acc.get(k, {}), Hk)
        return Component.from_parts(n, degree, acc)

    def harmonics(self) -> Dict[int, P.Poly]:
        return {k: dict(items) for k, items in self.parts}

    # -- ring operations ----------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other: Component) -> Component:
        if self.n != other.n or self.degree != other.degree:
            raise ValueError("component mismatch in addition")
        acc = self.harmonics()
        for k, p in other.harmonics().items():
            acc[k] = P.p_add(acc.get(k, {}), p)
        return Component.from_parts(self.n, self.degree, acc)

    def scale(self, q) -> Component:
        q = QC.of(q)
        return Component.from_parts(
            self.n, self.degree,
            {k: P.p_scale(p, q) for k, p in self.harmonics().items()})

    def __neg__(self) -> Component:
        return self.scale(-1)

    def __mul__(self, other: Component) -> Component:
        if self.n != other.n:
            raise DimensionMismatch("component dimensions differ")
        acc: Dict[int, P.Poly] = {}
        for k1, p1 in self.harmonics().items():
            for k2, p2 in other.harmonics().items():
                for k, Hk in P.harmonic_decompose(P.p_mul(p1, p2), self.n).items():
                    acc[k] = P.p_add(acc.get(k, {}), Hk)
        return Component.from_parts(self.n, self.degree + other.degree, acc)

    def diff(self, i: int) -> Component:
        """d/dxi_i on the punctured space; degree drops by one."""
        acc: Dict[int, P.Poly] = {}
        d = self.degree
        for k, Hk in self.harmonics().items():
            dH = P.p_diff(Hk, i)
            if dH:
                acc[k - 1] = P.p_add(acc.get(k - 1, {}), dH)
            c = d - QC.of(k)
            if not c.is_zero:
                xi = [0] * self.n
                xi[i] = 1
                bumped = P.p_mul(Hk, P.p_monomial(tuple(xi), c))
                for kk, H2 in P.harmonic_decompose(bumped, self.n).items():
                    acc[kk] = P.p_add(acc.get(kk, {}), H2)
        return Component.from_parts(self.n, d - QC.of(1), acc)

    def times_xi(self, i: int) -> Component:
        xi = [0] * self.n
        xi[i] = 1
        mono = P.p_monomial(tuple(xi), 1)
        acc: Dict[int, P.Poly] = {}
        for k, Hk in self.harmonics().items():
            for kk, H2 in P.harmonic_decompose(P.p_mul(Hk, mono), self.n).items():
                acc[kk] = P.p_add(acc.get(kk, {}), H2)
        return Component.from_parts(self.n, self.degree + QC.of(1), acc)

    def times_omega(self, i: int) -> Component:
        """Multiply by xi_i/|xi| (degree preserved)."""
        c = self.times_xi(i)
        return Component(self.n, self.degree, c.parts)

    def with_degree(self, degree) -> Component:
        """Reinterpret the sphere restriction at a new homogeneity degree."""
        return Component(self.n, QC.of(degree), self.parts)

    # -- restriction / evaluation -------------------------------------------

    def monomial_degrees(self) -> List[int]:
        return [k for k, _ in self.parts]

    def eval(self, xi, dps: int = 30):
        """Value at a nonzero point. Complex |xi|^c via principal powers."""
        with mp.workdps(dps):
            r2 = mp.fsum([mp.mpf(x) ** 2 for x in xi])
            if r2 == 0:
                raise ZeroDivisionError("component evaluated at the origin")
            r = mp.sqrt(r2)
            total = mp.mpc(0)
            for k, items in self.parts:
                pk = mp.mpc(0)
                for mono, c in items:
                    v = mp.mpc(mp.mpf(c.re.numerator) / c.re.denominator,
                               mp.mpf(c.im.numerator) / c.im.denominator)
                    for x, e in zip(xi, mono):
                        if e:
                            v *= mp.mpf(x) ** e
                    pk += v
                expo = self.degree - QC.of(k)
                ez = mp.mpc(mp.mpf(expo.re.numerator) / expo.re.denominator,
                            mp.mpf(expo.im.numerator) / expo.im.denominator)
                total += pk * mp.power(r, ez)
            return +total


# ---------------------------------------------------------------------------
# sphere integrals


def monomial_sphere_integral(alpha: Tuple[int, ...]) -> Exact:
    """integral over S^{n-1} of xi^alpha, exact.

    Zero for any odd exponent; otherwise
    2 * prod Gamma((a_i+1)/2) / Gamma((|a|+n)/2).
    """
    n = len(alpha)
    check_dim(n)
    if any(a % 2 for a in alpha):
        return Exact.zero()
    num2 = [a + 1 for a in alpha]
    den2 = [sum(alpha) + n]
    return gamma_half_ratio(num2, den2).scale(2)


def sphere_volume(n: int) -> Exact:
    return monomial_sphere_integral((0,) * n)


def component_sphere_integral(c: Component) -> Exact:
    """Set |xi| = 1 and integrate; harmonic parts of positive degree die."""
    for k, items in c.parts:
        if k == 0:
            ((_mono, coeff),) = items
            return sphere_volume(c.n).scale(coeff)
    return Exact.zero()


def component_sphere_integral_raw(c: Component) -> Exact:
    """Same value through the monomial Gamma formula (cross-check path)."""
    total = Exact.zero()
    for _k, items in c.parts:
        for mono, coeff in items:
            total = total + monomial_sphere_integral(mono).scale(coeff)
    return total

"""Exact integration and harmonic analysis on the unit sphere.

Monomial integrals come from the Gamma half-integer formula and land in the
pi-ring.  Polynomial functions on the sphere are stored by their harmonic
expansion, on which the Laplace-Beltrami operator acts diagonally with
eigenvalues -k(k+n-2); inverting it mode by mode is what decomposes the
critical-degree layer of a residue-free symbol into derivatives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Tuple

from . import poly as P
from .components import (Component, check_dim, component_sphere_integral,
                         monomial_sphere_integral, sphere_volume)
from .errors import NonzeroMean, PoleAtS
from .exact import Exact
from .radial import RadialCutoff, SharpShell, Spline
from .rationals import QC

__all__ = [
    "SpherePolynomial", "monomial_sphere_integral", "sphere_integral",
    "harmonic_decompose", "laplace_sphere_solve", "radial_moment",
    "sphere_volume", "SharpShell", "Spline",
]


@dataclass(frozen=True)
class SpherePolynomial:
    """Restriction of a polynomial to S^{n-1}, as harmonic modes {k: H_k}."""

    n: int
    parts: Tuple[Tuple[int, Tuple[Tuple[Tuple[int, ...], QC], ...]], ...]

    @staticmethod
    def from_polynomial(n: int, p: P.Poly) -> SpherePolynomial:
        """Restrict a (possibly inhomogeneous) polynomial to the sphere."""
        check_dim(n)
        acc: Dict[int, P.Poly] = {}
        by_degree: Dict[int, P.Poly] = {}
        for mono, c in p.items():
            d = sum(mono)
            by_degree.setdefault(d, {})[mono] = c
        for d, hom in by_degree.items():
            for k, Hk in P.harmonic_decompose(hom, n).items():
                acc[k] = P.p_add(acc.get(k, {}), Hk)
        return SpherePolynomial(n, _pack(acc))

    @staticmethod
    def from_component(c: Component) -> SpherePolynomial:
        return SpherePolynomial(c.n, c.parts)

    @staticmethod
    def zero(n: int) -> SpherePolynomial:
        check_dim(n)
        return SpherePolynomial(n, ())

    def harmonics(self) -> Dict[int, P.Poly]:
        return {k: dict(items) for k, items in self.parts}

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other: SpherePolynomial) -> SpherePolynomial:
        acc = self.harmonics()
        for k, p in other.harmonics().items():
            acc[k] = P.p_add(acc.get(k, {}), p)
        return SpherePolynomial(self.n, _pack(acc))

    def scale(self, q) -> SpherePolynomial:
        q = QC.of(q)
        return SpherePolynomial(
            self.n, _pack({k: P.p_scale(p, q) for k, p in self.harmonics().items()}))

    def mean_integral(self) -> Exact:
        """integral over the sphere; only the constant mode contributes."""
        for k, items in self.parts:
            if k == 0:
                ((_m, c),) = items
                return sphere_volume(self.n).scale(c)
        return Exact.zero()

    def extend(self, degree) -> Component:
        """Homogeneous extension sum_k H_k(xi) |xi|^{degree-k}."""
        return Component(self.n, QC.of(degree), self.parts)

    def laplace_beltrami(self) -> SpherePolynomial:
        """Apply the sphere Laplacian: H_k -> -k(k+n-2) H_k."""
        acc = {}
        for k, p in self.harmonics().items():
            if k:
                acc[k] = P.p_scale(p, QC.of(-k * (k + self.n - 2)))
        return SpherePolynomial(self.n, _pack(acc))


def _pack(acc: Dict[int, P.Poly]):
    return tuple(sorted((k, tuple(sorted(p.items()))) for k, p in acc.items() if p))


def sphere_integral(c: Component) -> Exact:
    """integral over S^{n-1} of a homogeneous component restricted to |xi|=1."""
    return component_sphere_integral(c)


def harmonic_decompose(p: P.Poly, n: int) -> Dict[int, P.Poly]:
    """P = sum_m |xi|^{2m} H_{d-2m} with every H harmonic; exact."""
    return P.harmonic_decompose(p, n)


def laplace_sphere_solve(g: SpherePolynomial) -> SpherePolynomial:
    """Solve the sphere Laplacian equation Delta_S f = g, mean-zero f.

    Solvable iff g has zero sphere mean (the residue obstruction); the
    solution scales each harmonic mode by -1/(k(k+n-2)).
    """
    modes = g.harmonics()
    if 0 in modes:
        raise NonzeroMean(
            "sphere source has nonzero mean; the Laplacian equation has no solution")
    n = g.n
    out = {k: P.p_scale(p, QC.of(QC.of(-1) / QC.of(k * (k + n - 2))))
           for k, p in modes.items()}
    return SpherePolynomial(n, _pack(out))


def radial_moment(cutoff: RadialCutoff, s: QC, derivative: bool = False,
                  numeric: bool = False, dps: int = 35):
    """M(s) = integral_0^1 h r^s dr, or M'(s) with derivative=True.

    Exact where the cutoff model allows it (always for the sharp shell,
    integer s without r^-1 terms for the spline); numeric=True forces the
    >= 30 digit evaluation path.
    """
    s = QC.of(s)
    if numeric:
        if isinstance(cutoff, Spline):
            word = ((1, 1),) if derivative else ((0, 1),)
            return cutoff.window_moment_numeric(word, s, dps=dps)
        return (cutoff.moment_prime(s) if derivative else cutoff.moment(s)).numeric(dps)
    return cutoff.moment_prime(s) if derivative else cutoff.moment(s)

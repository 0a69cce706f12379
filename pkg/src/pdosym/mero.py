"""Holomorphic families of symbols with affine order and the exact
meromorphic structure of their cut-off integrals.

A family here is sigma(z) = sum_j chi(xi) p_j(xi/|xi|, z) |xi|^{a+bz-j} with
polynomial-in-z sphere profiles p_j; this is the smallest class containing
the |xi|^{bz} twist for which z -> fp integral is exactly a rational function

    F(z) = sum_j  -S_j(z) / (a + bz - j + n)   (+ an entire tail constant),

with S_j(z) the sphere integral of the profile.  All poles are simple; the
complex residue at z=0 and the finite part there carry the residue/defect
identities verified by the check operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import mpmath as mp

from .components import Component
from .errors import ClassViolation, ZeroDirection
from .exact import Exact
from .radial import SharpShell
from .rationals import QC
from .reg import cutoff_integral, gauss_full_integral, residue_raw
from .reports import Assertion, CheckReport
from .sphere import SpherePolynomial, sphere_integral
from .symalg import (ClassicalSymbol, GaussTerm, ParityClass, _canonical,
                     parity_classify)

Profile = Tuple[Tuple[int, SpherePolynomial], ...]  # z-coefficients (m, p_{j,m})


@dataclass(frozen=True)
class HolomorphicFamily:
    n: int
    a: QC
    beta: QC
    profiles: Tuple[Tuple[int, Profile], ...]  # (layer j, profile)
    gaussians: Tuple[GaussTerm, ...] = ()

    def profile_map(self) -> Dict[int, Dict[int, SpherePolynomial]]:
        return {j: dict(p) for j, p in self.profiles}

    @property
    def order_description(self) -> str:
        return f"{self.a} + ({self.beta}) z"


def make_family(s: ClassicalSymbol, beta) -> HolomorphicFamily:
    """The |xi|^{beta z} twist of s: constant profiles, order a + beta z."""
    beta = QC.of(beta)
    if beta.is_zero:
        raise ZeroDirection("the order direction beta must be nonzero")
    if not isinstance(s.cutoff, SharpShell):
        raise ClassViolation("exact families require the sharp-shell cutoff")
    if s.shells:
        raise ClassViolation("cannot twist a shell-carrying symbol")
    if s.order is None:
        raise ClassViolation("cannot twist a purely smoothing symbol; "
                             "its family is constant")
    profiles = []
    for j, comp in s.layers:
        profiles.append((j, ((0, SpherePolynomial.from_component(comp)),)))
    return HolomorphicFamily(s.n, s.order, beta, tuple(profiles), s.gaussians)


def family(n: int, a, beta, profiles: Dict[int, Dict[int, SpherePolynomial]],
           gaussians: Sequence[GaussTerm] = ()) -> HolomorphicFamily:
    beta = QC.of(beta)
    if beta.is_zero:
        raise ZeroDirection("the order direction beta must be nonzero")
    packed = tuple(sorted(
        (j, tuple(sorted((m, p) for m, p in prof.items() if not p.is_zero)))
        for j, prof in profiles.items()))
    packed = tuple((j, prof) for j, prof in packed if prof)
    return HolomorphicFamily(n, QC.of(a), beta, packed, tuple(gaussians))


def family_at(F: HolomorphicFamily, z0) -> ClassicalSymbol:
    """Instantiate sigma(z0) as a classical symbol of order a + beta z0."""
    z0 = QC.of(z0)
    order = F.a + F.beta * z0
    layers: Dict[int, Component] = {}
    for j, prof in F.profiles:
        acc: Optional[SpherePolynomial] = None
        for m, p in prof:
            zp = QC.of(1)
            for _ in range(m):
                zp = zp * z0
            scaled = p.scale(zp)
            acc = scaled if acc is None else acc + scaled
        if acc is not None and not acc.is_zero:
            layers[j] = acc.extend(order - QC.of(j))
    return _canonical(F.n, order, layers, F.gaussians, (), SharpShell())


@dataclass(frozen=True)
class FamilyDerivative:
    """d/dz sigma(z) at z=0, split per layer into the log|xi| part
    beta * sigma_{a-j}(0) and the profile-derivative (non-log) part."""

    entries: Tuple[Tuple[int, Component, Component], ...]  # (j, log, nonlog)

    def log_part(self, j: int) -> Optional[Component]:
        for jj, lg, _nl in self.entries:
            if jj == j:
                return lg
        return None

    def nonlog_part(self, j: int) -> Optional[Component]:
        for jj, _lg, nl in self.entries:
            if jj == j:
                return nl
        return None


def family_derivative(F: HolomorphicFamily) -> FamilyDerivative:
    entries = []
    for j, prof in F.profiles:
        deg = F.a - QC.of(j)
        pm = dict(prof)
        p0 = pm.get(0, SpherePolynomial.zero(F.n))
        p1 = pm.get(1, SpherePolynomial.zero(F.n))
        log_comp = p0.extend(deg).scale(F.beta)
        nonlog_comp = p1.extend(deg)
        entries.append((j, log_comp, nonlog_comp))
    return FamilyDerivative(tuple(entries))


# ---------------------------------------------------------------------------
# the meromorphic continuation


@dataclass(frozen=True)
class LaurentData:
    """Exact rational-in-z form of z -> fp integral of sigma(z).

    poles lists every candidate location (j - n - a)/beta with its residue
    (zero residue means the pole is removable); the entire part is a
    polynomial plus the constant smoothing-tail integral.
    """

    n: int
    a: QC
    beta: QC
    poles: Tuple[Tuple[QC, Exact, int], ...]  # (location, residue, layer j)
    entire: Tuple[Exact, ...]  # polynomial coefficients in z
    residue_at_0: Exact = None  # type: ignore[assignment]
    finite_part_at_0: Exact = None  # type: ignore[assignment]

    def pole_at(self, z: QC) -> Optional[Tuple[QC, Exact, int]]:
        for loc, res, j in self.poles:
            if loc == z and not res.is_zero:
                return (loc, res, j)
        return None

    def finite_part_at(self, z) -> Exact:
        z = QC.of(z)
        total = Exact.zero()
        for i, c in enumerate(self.entire):
            zp = QC.of(1)
            for _ in range(i):
                zp = zp * z
            total = total + c.scale(zp)
        for loc, res, _j in self.poles:
            if loc == z:
                continue  # the singular term contributes no finite part at loc
            if res.is_zero:
                continue
            total = total + res.div_qc(z - loc)
        return total

    def value_at(self, z) -> Exact:
        z = QC.of(z)
        if self.pole_at(z) is not None:
            raise ZeroDivisionError(f"z = {z} is a pole")
        return self.finite_part_at(z)

    def value_numeric(self, z: complex, dps: int = 30) -> complex:
        with mp.workdps(dps):
            zz = mp.mpc(z)
            total = mp.mpc(0)
            for i, c in enumerate(self.entire):
                total += c.numeric(dps) * zz ** i
            for loc, res, _j in self.poles:
                if res.is_zero:
                    continue
                total += res.numeric(dps) / (zz - complex(loc))
            return complex(total)


def meromorphic_cutoff_integral(F: HolomorphicFamily) -> LaurentData:
    """Exact Laurent/pole data of z -> fp integral of sigma(z)."""
    n = F.n
    entire: List[Exact] = [Exact.zero()]
    for g in F.gaussians:
        entire[0] = entire[0] + gauss_full_integral(g, n)
    poles: List[Tuple[QC, Exact, int]] = []
    for j, prof in F.profiles:
        # S_j(z) = sum_m S(p_{j,m}) z^m
        coeffs = {m: p.mean_integral() for m, p in prof}
        degz = max(coeffs) if coeffs else 0
        sj = [coeffs.get(m, Exact.zero()) for m in range(degz + 1)]
        if all(c.is_zero for c in sj):
            continue
        # -S_j(z)/(beta (z - z_j)), z_j = (j - n - a)/beta
        zj = (QC.of(j - n) - F.a) / F.beta
        # synthetic division S_j(z) = Q_j(z)(z - z_j) + S_j(z_j)
        q: List[Exact] = [Exact.zero()] * max(0, len(sj) - 1)
        rem = Exact.zero()
        acc = Exact.zero()
        for m in range(len(sj) - 1, -1, -1):
            acc = sj[m] + acc.scale(zj)
            if m > 0:
                q[m - 1] = acc
            else:
                rem = acc
        res_j = rem.div_qc(-F.beta)
        poles.append((zj, res_j, j))
        while len(entire) < len(q) + 1:
            entire.append(Exact.zero())
        for m, c in enumerate(q):
            entire[m] = entire[m] + c.div_qc(-F.beta)
    data = LaurentData(n, F.a, F.beta, tuple(poles), tuple(entire))
    zero = QC.of(0)
    res0 = Exact.zero()
    for loc, res, _j in poles:
        if loc == zero:
            res0 = res0 + res
    fp0 = data.finite_part_at(zero)
    object.__setattr__(data, "residue_at_0", res0)
    object.__setattr__(data, "finite_part_at_0", fp0)
    return data


# ---------------------------------------------------------------------------
# identity checks


def kv_residue_check(F: HolomorphicFamily) -> CheckReport:
    """Complex residue at z=0 against -(1/beta) times the symbol residue."""
    data = meromorphic_cutoff_integral(F)
    sigma0 = family_at(F, 0)
    expected = residue_raw(sigma0).div_qc(-F.beta)
    return CheckReport(
        f"complex residue at 0 for the family of order {F.order_description}",
        (Assertion("kv-residue", data.residue_at_0, expected),))


def ps_finite_part_check(F: HolomorphicFamily) -> CheckReport:
    """Finite part at z=0 against the cut-off integral of sigma(0) minus the
    sphere defect of the derivative family's critical component."""
    data = meromorphic_cutoff_integral(F)
    sigma0 = family_at(F, 0)
    base = cutoff_integral(sigma0)
    deriv = family_derivative(F)
    defect = Exact.zero()
    crit = F.a + QC.of(F.n)  # layer index j with a - j = -n
    if crit.is_integer() and crit.as_integer() >= 0:
        nl = deriv.nonlog_part(crit.as_integer())
        if nl is not None and not nl.is_zero:
            defect = sphere_integral(nl).div_qc(F.beta)
    expected = base - defect
    return CheckReport(
        f"finite part at 0 for the family of order {F.order_description}",
        (Assertion("ps-finite-part", data.finite_part_at_0, expected),),
        notes=("defect term -(1/beta) * sphere integral of the non-log "
               f"derivative component at degree -n: {defect.scale(-1)}",))


_CLASS_TAGS = ("NonInteger", "OddOdd", "EvenEven")


def _component_in_parity_class(comp: Component, want_odd: bool) -> bool:
    if not comp.degree.is_integer():
        return False
    d = comp.degree.as_integer()
    target = 0 if want_odd else 1
    return all((k - d - target) % 2 == 0 for k in comp.monomial_degrees())


def trace_continuity_check(F: HolomorphicFamily, cls: str) -> CheckReport:
    """Holomorphy at 0 plus continuity of the regularised value, for families
    whose endpoint and derivative both lie in the declared class."""
    if cls not in _CLASS_TAGS:
        raise ValueError(f"class must be one of {_CLASS_TAGS}")
    sigma0 = family_at(F, 0)
    deriv = family_derivative(F)
    if cls == "NonInteger":
        if F.a.is_integer():
            raise ClassViolation(f"order {F.a} is an integer", report=F.a)
    else:
        want_odd = cls == "OddOdd"
        want_par = n_par = 1 if want_odd else 0
        if F.n % 2 != n_par:
            raise ClassViolation(
                f"dimension {F.n} has the wrong parity for {cls}")
        if parity_classify(sigma0) is not (
                ParityClass.ODD if want_odd else ParityClass.EVEN):
            raise ClassViolation(
                f"sigma(0) is not in the {'odd' if want_odd else 'even'} class",
                report=sigma0)
        for j, lg, nl in deriv.entries:
            for comp, tag in ((lg, "log"), (nl, "non-log")):
                if not comp.is_zero and not _component_in_parity_class(comp, want_odd):
                    raise ClassViolation(
                        f"derivative family layer {j} ({tag} part) leaves "
                        f"the class", report=(j, tag, comp))
    data = meromorphic_cutoff_integral(F)
    limit = cutoff_integral(sigma0)
    return CheckReport(
        f"trace continuity ({cls}) for the family of order {F.order_description}",
        (Assertion("family-holomorphy-at-0", data.residue_at_0, Exact.zero()),
         Assertion("trace-continuity", data.finite_part_at_0, limit)))

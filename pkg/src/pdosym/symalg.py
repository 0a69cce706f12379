"""Constant-coefficient classical symbols with exact remainder tracking.

A symbol denotes

    sum_j  h(|xi|) sigma_{a-j}(xi)   +   shell pieces   +   Gaussian tail

where each sigma_{a-j} is a homogeneous component of degree a-j, h is the
radial cutoff (sharp indicator of |xi|>=1 by default), shell pieces are
cutoff-derivative words times components (produced by differentiation, they
carry the exact boundary data that regularised integrals see), and the tail
is a finite sum of terms coeff * xi^alpha * exp(-m|xi|^2).

All operations are pure; values are immutable and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath as mp

from .components import Component, Term, check_dim, term
from .errors import (DimensionMismatch, IncompatibleOrders, NonIntegrableCross,
                     SingularPoint)
from .radial import (SHARP, RadialCutoff, SharpShell, Spline, Word, WORD_H,
                     word_diff, word_is_pure, word_mul)
from .rationals import QC


class ParityClass(Enum):
    ODD = "odd"
    EVEN = "even"
    NONE = "none"


@dataclass(frozen=True)
class GaussTerm:
    """coeff * xi^alpha * exp(-scale |xi|^2); the smoothing model class."""

    coeff: QC
    alpha: Tuple[int, ...]
    scale: int = 1


@dataclass(frozen=True)
class ShellPiece:
    """word(|xi|) * component(xi); word contains a cutoff derivative."""

    word: Word
    component: Component


def _qkey(q: QC):
    return (q.re, q.im)


@dataclass(frozen=True)
class ClassicalSymbol:
    n: int
    order: Optional[QC]  # None marks a purely smoothing symbol
    layers: Tuple[Tuple[int, Component], ...]
    gaussians: Tuple[GaussTerm, ...] = ()
    shells: Tuple[ShellPiece, ...] = ()
    cutoff: RadialCutoff = SHARP

    # -- accessors -----------------------------------------------------------

    def layer_map(self) -> Dict[int, Component]:
        return dict(self.layers)

    def layer(self, j: int) -> Optional[Component]:
        return dict(self.layers).get(j)

    def layer_of_degree(self, d: QC) -> Optional[Component]:
        for _j, comp in self.layers:
            if comp.degree == d:
                return comp
        return None

    @property
    def is_smoothing(self) -> bool:
        return not self.layers and not self.shells

    def radial_pieces(self) -> List[Tuple[Word, Component]]:
        out = [(WORD_H, comp) for _j, comp in self.layers]
        out.extend((sp.word, sp.component) for sp in self.shells)
        return out

    def __str__(self) -> str:
        bits = [f"order={self.order}"]
        for j, c in self.layers:
            bits.append(f"layer {j}: deg {c.degree}")
        if self.gaussians:
            bits.append(f"{len(self.gaussians)} gaussian terms")
        if self.shells:
            bits.append(f"{len(self.shells)} shell pieces")
        return f"ClassicalSymbol({', '.join(bits)})"


def _canonical(n: int, order: Optional[QC],
               layers: Dict[int, Component],
               gaussians: Iterable[GaussTerm],
               shells: Iterable[ShellPiece],
               cutoff: RadialCutoff) -> ClassicalSymbol:
    check_dim(n)
    lay = tuple(sorted((j, c) for j, c in layers.items() if not c.is_zero))
    gacc: Dict[Tuple[Tuple[int, ...], int], QC] = {}
    for g in gaussians:
        key = (g.alpha, g.scale)
        gacc[key] = gacc.get(key, QC()) + g.coeff
    gs = tuple(GaussTerm(c, a, m) for (a, m), c in sorted(gacc.items())
               if not c.is_zero)
    sacc: Dict[Tuple[Word, Tuple], Component] = {}
    for sp in shells:
        if sp.component.is_zero:
            continue
        key = (sp.word, _qkey(sp.component.degree))
        if key in sacc:
            sacc[key] = sacc[key] + sp.component
        else:
            sacc[key] = sp.component
    ss = tuple(ShellPiece(w, c) for (w, _d), c in sorted(sacc.items())
               if not c.is_zero)
    return ClassicalSymbol(n, order, lay, gs, ss, cutoff)


def classical_symbol(n: int, order, layers: Dict[int, Sequence[Term]] = None,
                     remainder: Sequence[GaussTerm] = (),
                     cutoff: RadialCutoff = SHARP) -> ClassicalSymbol:
    """Build a symbol from raw layer terms; validates layer degrees."""
    order = None if order is None else QC.of(order)
    comp_layers: Dict[int, Component] = {}
    for j, terms in (layers or {}).items():
        if order is None:
            raise ValueError("layered symbols need a finite order")
        comp = Component.from_terms(n, terms)
        want = order - QC.of(j)
        if comp.degree != want:
            raise ValueError(
                f"layer {j} has degree {comp.degree}, expected {want}")
        comp_layers[j] = comp
    return _canonical(n, order, comp_layers, remainder, (), cutoff)


def smoothing_symbol(n: int, remainder: Sequence[GaussTerm],
                     cutoff: RadialCutoff = SHARP) -> ClassicalSymbol:
    return _canonical(n, None, {}, remainder, (), cutoff)


def power_symbol(n: int, c, coeff=1, alpha: Sequence[int] = None,
                 cutoff: RadialCutoff = SHARP) -> ClassicalSymbol:
    """coeff * chi * xi^alpha * |xi|^c, a single-layer symbol."""
    alpha = tuple(alpha or (0,) * n)
    t = term(coeff, alpha, c)
    return classical_symbol(n, t.degree, {0: [t]}, cutoff=cutoff)


# ---------------------------------------------------------------------------
# linear structure


def add(s: ClassicalSymbol, t: ClassicalSymbol) -> ClassicalSymbol:
    if s.n != t.n:
        raise DimensionMismatch(f"dimensions {s.n} and {t.n} differ")
    if s.cutoff != t.cutoff:
        raise IncompatibleOrders("cutoff models differ; refuse to mix them")
    if s.order is None and t.order is None:
        order = None
        offs = offt = 0
    elif s.order is None:
        order, offs, offt = t.order, 0, 0
    elif t.order is None:
        order, offs, offt = s.order, 0, 0
    else:
        diff = s.order - t.order
        if not diff.is_integer():
            raise IncompatibleOrders(
                f"orders {s.order} and {t.order} do not differ by an integer")
        d = diff.as_integer()
        # align to the larger order
        order = s.order if d >= 0 else t.order
        offs, offt = (0, d) if d >= 0 else (-d, 0)
    layers: Dict[int, Component] = {}
    for j, c in s.layers:
        layers[j + offs] = c
    for j, c in t.layers:
        k = j + offt
        layers[k] = layers[k] + c if k in layers else c
    return _canonical(s.n, order, layers,
                      s.gaussians + t.gaussians, s.shells + t.shells, s.cutoff)


def scale(s: ClassicalSymbol, q) -> ClassicalSymbol:
    q = QC.of(q)
    return _canonical(
        s.n, s.order,
        {j: c.scale(q) for j, c in s.layers},
        (GaussTerm(g.coeff * q, g.alpha, g.scale) for g in s.gaussians),
        (ShellPiece(sp.word, sp.component.scale(q)) for sp in s.shells),
        s.cutoff)


def negate(s: ClassicalSymbol) -> ClassicalSymbol:
    return scale(s, -1)


def subtract(s: ClassicalSymbol, t: ClassicalSymbol) -> ClassicalSymbol:
    return add(s, negate(t))


# ---------------------------------------------------------------------------
# product


def multiply(s: ClassicalSymbol, t: ClassicalSymbol) -> ClassicalSymbol:
    """Pointwise product.  Exact in the sharp-shell model (chi^2 = chi).

    Cross terms of a layer with a Gaussian tail reduce to Gaussian terms
    when the layer's radial exponents are non-negative even integers (the
    cutoff is dropped on those smoothing products); anything else, and any
    product involving shell pieces, is rejected.
    """
    if s.n != t.n:
        raise DimensionMismatch(f"dimensions {s.n} and {t.n} differ")
    if s.cutoff != t.cutoff:
        raise IncompatibleOrders(f"cutoff models differ ({s.cutoff} vs {t.cutoff})")
    if s.shells or t.shells:
        raise NonIntegrableCross(
            "products of differentiated symbols (shell pieces) are not "
            "exactly representable; integrate them instead")
    if s.order is not None and t.order is not None:
        diff = s.order - t.order
        if not diff.is_integer():
            raise IncompatibleOrders(
                f"orders {s.order} and {t.order} do not differ by an integer")
        order = s.order + t.order
    else:
        order = None  # a smoothing factor makes the product smoothing
    layers: Dict[int, Component] = {}
    for j, cj in s.layers:
        for k, ck in t.layers:
            m = j + k
            prod = cj * ck
            layers[m] = layers[m] + prod if m in layers else prod
    gaussians: List[GaussTerm] = []
    for g1 in s.gaussians:
        for g2 in t.gaussians:
            gaussians.append(GaussTerm(
                g1.coeff * g2.coeff,
                tuple(a + b for a, b in zip(g1.alpha, g2.alpha)),
                g1.scale + g2.scale))
    for sym_layers, gs in ((s.layers, t.gaussians), (t.layers, s.gaussians)):
        for _j, comp in sym_layers:
            for g in gs:
                gaussians.extend(_layer_times_gauss(comp, g))
    return _canonical(s.n, order, layers, gaussians, (), s.cutoff)


def _layer_times_gauss(comp: Component, g: GaussTerm) -> List[GaussTerm]:
    out = []
    for k, Hk in comp.harmonics().items():
        c = comp.degree - QC.of(k)
        if not (c.is_integer() and c.as_integer() >= 0 and c.as_integer() % 2 == 0):
            raise NonIntegrableCross(
                f"layer radial exponent {c} times a Gaussian leaves the "
                "exact term classes (needs a non-negative even integer)")
        from . import poly as P
        p = Hk
        half = c.as_integer() // 2
        r2 = P.p_norm_sq(comp.n)
        for _ in range(half):
            p = P.p_mul(p, r2)
        for mono, coeff in p.items():
            out.append(GaussTerm(
                coeff * g.coeff,
                tuple(a + b for a, b in zip(mono, g.alpha)),
                g.scale))
    return out


# ---------------------------------------------------------------------------
# derivative


def derivative(s: ClassicalSymbol, i: int) -> ClassicalSymbol:
    """d/dxi_i.  Layers differentiate on the punctured space; the cutoff
    factor contributes an exact shell piece h' * omega_i * sigma per layer;
    existing shell pieces and the Gaussian tail differentiate termwise."""
    if not 0 <= i < s.n:
        raise DimensionMismatch(f"axis {i} out of range for dimension {s.n}")
    layers: Dict[int, Component] = {}
    shells: List[ShellPiece] = []
    for j, comp in s.layers:
        dc = comp.diff(i)
        if not dc.is_zero:
            layers[j] = dc
        shells.append(ShellPiece(((1, 1),), comp.times_omega(i)))
    for sp in s.shells:
        for coeff, w in word_diff(sp.word):
            shells.append(ShellPiece(w, sp.component.times_omega(i).scale(coeff)))
        dcomp = sp.component.diff(i)
        if not dcomp.is_zero:
            shells.append(ShellPiece(sp.word, dcomp))
    gaussians: List[GaussTerm] = []
    for g in s.gaussians:
        if g.alpha[i] > 0:
            down = list(g.alpha)
            down[i] -= 1
            gaussians.append(GaussTerm(g.coeff * g.alpha[i], tuple(down), g.scale))
        up = list(g.alpha)
        up[i] += 1
        gaussians.append(GaussTerm(g.coeff * (-2 * g.scale), tuple(up), g.scale))
    order = None if s.order is None else s.order - QC.of(1)
    return _canonical(s.n, order, layers, gaussians, shells, s.cutoff)


def derivative_multi(s: ClassicalSymbol, alpha: Sequence[int]) -> ClassicalSymbol:
    out = s
    for i, e in enumerate(alpha):
        for _ in range(e):
            out = derivative(out, i)
    return out


# ---------------------------------------------------------------------------
# parity


def parity_classify(s: ClassicalSymbol) -> ParityClass:
    """Syntactic odd/even test: representation-level, smoothing part ignored.

    A layer of integer degree d built from harmonics H_k is odd-class when
    every k = d mod 2 and even-class when every k = d+1 mod 2 (substituting
    -xi multiplies H_k by (-1)^k while |xi| is unchanged).
    """
    if s.order is None or not s.order.is_integer():
        return ParityClass.NONE
    odd_ok = True
    even_ok = True
    for _j, comp in s.layers:
        d = comp.degree.as_integer()
        for k in comp.monomial_degrees():
            if (k - d) % 2 != 0:
                odd_ok = False
            if (k - d - 1) % 2 != 0:
                even_ok = False
    if odd_ok:
        return ParityClass.ODD
    if even_ok:
        return ParityClass.EVEN
    return ParityClass.NONE


# ---------------------------------------------------------------------------
# translation Taylor data


def translate_taylor(s: ClassicalSymbol, eta: Sequence, N: int):
    """Taylor family of the translate by eta: entries d^alpha s * eta^alpha/alpha!
    for 1 <= |alpha| <= N-1, plus the guaranteed remainder order bound Re(a)-N.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    eta = [QC.of(e) for e in eta]
    if len(eta) != s.n:
        raise DimensionMismatch("translation vector dimension mismatch")
    entries = []
    for total in range(1, N):
        for alpha in _multi_indices(s.n, total):
            coeff = QC.of(1)
            for e, x in zip(alpha, eta):
                for _ in range(e):
                    coeff = coeff * x
            if coeff.is_zero:
                continue
            fact = 1
            for e in alpha:
                fact *= _factorial(e)
            entries.append((alpha, scale(derivative_multi(s, alpha),
                                         coeff / QC.of(fact))))
    bound = None if s.order is None else s.order.re - N
    return entries, bound


def _multi_indices(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _multi_indices(n - 1, total - head):
            yield (head,) + rest


def _factorial(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# numeric evaluation


def evaluate(s: ClassicalSymbol, xi: Sequence[float], dps: int = 30) -> complex:
    """Numeric value of the represented function at xi.

    In the sharp model the shell pieces are supported on |xi| = 1 only and
    contribute nothing at other points; evaluation exactly on the unit shell
    is refused there.
    """
    with mp.workdps(dps):
        r = mp.sqrt(mp.fsum([mp.mpf(x) ** 2 for x in xi]))
        if r == 0:
            if any(not comp.is_zero and comp.degree.re < 0 for _j, comp in s.layers):
                raise SingularPoint("evaluation at the origin with negative powers")
        total = mp.mpc(0)
        sharp = isinstance(s.cutoff, SharpShell)
        if s.layers:
            chi = (mp.mpf(1) if r >= 1 else mp.mpf(0)) if sharp \
                else s.cutoff.h_value(r)
            if chi != 0:
                for _j, comp in s.layers:
                    total += chi * comp.eval(xi, dps=dps)
        for sp in s.shells:
            if sharp:
                if mp.almosteq(r, mp.mpf(1)):
                    raise SingularPoint(
                        "sharp shell pieces are singular on the unit sphere")
                continue
            w = s.cutoff.word_value(sp.word, r)
            if w != 0:
                total += w * sp.component.eval(xi, dps=dps)
        for g in s.gaussians:
            v = mp.mpc(mp.mpf(g.coeff.re.numerator) / g.coeff.re.denominator,
                       mp.mpf(g.coeff.im.numerator) / g.coeff.im.denominator)
            for x, e in zip(xi, g.alpha):
                if e:
                    v *= mp.mpf(x) ** e
            total += v * mp.exp(-g.scale * r ** 2)
        return complex(total)

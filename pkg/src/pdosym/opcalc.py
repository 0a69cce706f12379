"""Desk-scale x-dependent operator calculus.

Operators are finite sums f_k(x) (x) s_k(xi) with polynomial-Gaussian
coefficients (exactly integrable, closed under the calculus) and classical
constant-coefficient xi-symbols.  The star product

    p * q  =  sum_alpha (-i)^{|alpha|}/alpha!  d_xi^alpha p  d_x^alpha q

is computed exactly, with the xi-side kept in a formal representation whose
radial cutoff words are never collapsed: traces of commutators then cancel
identically in the moment ring, i.e. for every admissible cutoff at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import poly as P
from .components import Component, check_dim, term as cterm
from .errors import (ClassViolation, IncompatibleOrders,
                     NonIntegrableCoefficient, NonIntegrableCross)
from .exact import Exact
from .radial import (SHARP, RadialCutoff, Word, WORD_H, RExpr,
                     fp_radial, word_diff, word_is_pure, word_mul)
from .rationals import QC
from .reg import FunctionalConfig, RAW, gauss_full_integral
from .reports import Assertion, CheckReport
from .sphere import sphere_integral
from .symalg import ClassicalSymbol, GaussTerm, ParityClass


# ---------------------------------------------------------------------------
# coefficient functions on the x side


@dataclass(frozen=True)
class CoefficientFunction:
    """Finite sum of coeff * x^gamma * exp(-m|x|^2); m = 0 terms are the
    pure-polynomial variant, admitted only where nothing is integrated."""

    n: int
    terms: Tuple[GaussTerm, ...]

    @staticmethod
    def make(n: int, terms: Sequence[GaussTerm]) -> CoefficientFunction:
        check_dim(n)
        acc: Dict[Tuple[Tuple[int, ...], int], QC] = {}
        for t in terms:
            key = (t.alpha, t.scale)
            acc[key] = acc.get(key, QC()) + t.coeff
        return CoefficientFunction(n, tuple(
            GaussTerm(c, a, m) for (a, m), c in sorted(acc.items())
            if not c.is_zero))

    @staticmethod
    def gaussian(n: int, coeff=1, alpha: Sequence[int] = None,
                 scale: int = 1) -> CoefficientFunction:
        alpha = tuple(alpha or (0,) * n)
        return CoefficientFunction.make(n, [GaussTerm(QC.of(coeff), alpha, scale)])

    @staticmethod
    def polynomial(n: int, coeff=1, alpha: Sequence[int] = None) -> CoefficientFunction:
        alpha = tuple(alpha or (0,) * n)
        return CoefficientFunction.make(n, [GaussTerm(QC.of(coeff), alpha, 0)])

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: CoefficientFunction) -> CoefficientFunction:
        return CoefficientFunction.make(self.n, self.terms + other.terms)

    def scale_by(self, q) -> CoefficientFunction:
        q = QC.of(q)
        return CoefficientFunction.make(
            self.n, [GaussTerm(t.coeff * q, t.alpha, t.scale) for t in self.terms])

    def __mul__(self, other: CoefficientFunction) -> CoefficientFunction:
        out = []
        for t1 in self.terms:
            for t2 in other.terms:
                out.append(GaussTerm(
                    t1.coeff * t2.coeff,
                    tuple(a + b for a, b in zip(t1.alpha, t2.alpha)),
                    t1.scale + t2.scale))
        return CoefficientFunction.make(self.n, out)

    def diff(self, i: int) -> CoefficientFunction:
        out = []
        for t in self.terms:
            if t.alpha[i] > 0:
                down = list(t.alpha)
                down[i] -= 1
                out.append(GaussTerm(t.coeff * t.alpha[i], tuple(down), t.scale))
            if t.scale:
                up = list(t.alpha)
                up[i] += 1
                out.append(GaussTerm(t.coeff * (-2 * t.scale), tuple(up), t.scale))
        return CoefficientFunction.make(self.n, out)

    def integral(self) -> Exact:
        total = Exact.zero()
        for t in self.terms:
            if t.scale == 0:
                raise NonIntegrableCoefficient(
                    "pure polynomial coefficients have no full-space integral")
            total = total + gauss_full_integral(t, self.n)
        return total

    def eval(self, x) -> complex:
        import mpmath as mp
        total = mp.mpc(0)
        r2 = sum(mp.mpf(v) ** 2 for v in x)
        for t in self.terms:
            v = mp.mpc(mp.mpf(t.coeff.re.numerator) / t.coeff.re.denominator,
                       mp.mpf(t.coeff.im.numerator) / t.coeff.im.denominator)
            for xv, e in zip(x, t.alpha):
                if e:
                    v *= mp.mpf(xv) ** e
            total += v * mp.exp(-t.scale * r2)
        return complex(total)


# ---------------------------------------------------------------------------
# formal xi-side symbols (uncollapsed cutoff words)


@dataclass(frozen=True)
class FormalXi:
    """Sum of word(|xi|) * component(xi) pieces plus a Gaussian tail.

    The empty word represents a global (uncut) function, used for the
    polynomial symbols of coordinate operators; word ((0,m)) is the m-th
    power of the cutoff.  Nothing is ever collapsed, so products and
    derivatives are exact for every cutoff realisation simultaneously.
    """

    n: int
    order: Optional[QC]
    pieces: Tuple[Tuple[Word, Component], ...]
    gaussians: Tuple[GaussTerm, ...] = ()

    @staticmethod
    def make(n: int, order, pieces, gaussians=()) -> FormalXi:
        acc: Dict[Tuple[Word, tuple], Component] = {}
        for w, c in pieces:
            if c.is_zero:
                continue
            key = (w, (c.degree.re, c.degree.im))
            acc[key] = acc[key] + c if key in acc else c
        packed = tuple((w, c) for (w, _d), c in sorted(acc.items())
                       if not c.is_zero)
        gacc: Dict[Tuple[Tuple[int, ...], int], QC] = {}
        for g in gaussians:
            key = (g.alpha, g.scale)
            gacc[key] = gacc.get(key, QC()) + g.coeff
        gs = tuple(GaussTerm(c, a, m) for (a, m), c in sorted(gacc.items())
                   if not c.is_zero)
        return FormalXi(n, None if order is None else QC.of(order), packed, gs)

    @staticmethod
    def from_classical(s: ClassicalSymbol) -> FormalXi:
        pieces = [(WORD_H, comp) for _j, comp in s.layers]
        pieces.extend((sp.word, sp.component) for sp in s.shells)
        return FormalXi.make(s.n, s.order, pieces, s.gaussians)

    @staticmethod
    def polynomial(n: int, comp: Component) -> FormalXi:
        return FormalXi.make(n, comp.degree, [((), comp)])

    @property
    def is_zero(self) -> bool:
        return not self.pieces and not self.gaussians

    def scale_by(self, q) -> FormalXi:
        q = QC.of(q)
        return FormalXi.make(
            self.n, self.order,
            [(w, c.scale(q)) for w, c in self.pieces],
            [GaussTerm(g.coeff * q, g.alpha, g.scale) for g in self.gaussians])

    def __add__(self, other: FormalXi) -> FormalXi:
        order = _order_max(self.order, other.order)
        return FormalXi.make(self.n, order,
                             self.pieces + other.pieces,
                             self.gaussians + other.gaussians)

    def diff(self, i: int) -> FormalXi:
        pieces: List[Tuple[Word, Component]] = []
        for w, c in self.pieces:
            for coeff, dw in word_diff(w):
                pieces.append((dw, c.times_omega(i).scale(coeff)))
            dc = c.diff(i)
            if not dc.is_zero:
                pieces.append((w, dc))
        gaussians: List[GaussTerm] = []
        for g in self.gaussians:
            if g.alpha[i] > 0:
                down = list(g.alpha)
                down[i] -= 1
                gaussians.append(GaussTerm(g.coeff * g.alpha[i], tuple(down), g.scale))
            up = list(g.alpha)
            up[i] += 1
            gaussians.append(GaussTerm(g.coeff * (-2 * g.scale), tuple(up), g.scale))
        order = None if self.order is None else self.order - QC.of(1)
        return FormalXi.make(self.n, order, pieces, gaussians)

    def diff_multi(self, alpha: Sequence[int]) -> FormalXi:
        out = self
        for i, e in enumerate(alpha):
            for _ in range(e):
                out = out.diff(i)
        return out

    def __mul__(self, other: FormalXi) -> FormalXi:
        if self.n != other.n:
            raise IncompatibleOrders("dimension mismatch in xi product")
        pieces: List[Tuple[Word, Component]] = []
        for w1, c1 in self.pieces:
            for w2, c2 in other.pieces:
                pieces.append((word_mul(w1, w2), c1 * c2))
        gaussians: List[GaussTerm] = []
        for g1 in self.gaussians:
            for g2 in other.gaussians:
                gaussians.append(GaussTerm(
                    g1.coeff * g2.coeff,
                    tuple(a + b for a, b in zip(g1.alpha, g2.alpha)),
                    g1.scale + g2.scale))
        for ps, gs in ((self.pieces, other.gaussians),
                       (other.pieces, self.gaussians)):
            for w, c in ps:
                if not gs:
                    continue
                if w != ():
                    raise NonIntegrableCross(
                        "cutoff pieces times Gaussian tails leave the exact "
                        "term classes")
                for g in gs:
                    gaussians.extend(_poly_component_times_gauss(c, g))
        order = None
        if self.order is not None and other.order is not None:
            order = self.order + other.order
        return FormalXi.make(self.n, order, pieces, gaussians)

    # -- functionals --------------------------------------------------------

    def fp_integral(self) -> Tuple[FormalValue, Exact]:
        """(constant term, log coefficient) of the ball asymptotics, with
        the constant kept as a formal moment combination."""
        const = FormalValue.zero()
        log = Exact.zero()
        for w, c in self.pieces:
            sv = sphere_integral(c)
            if sv.is_zero:
                continue
            s_exp = c.degree + QC.of(self.n - 1)
            if w == ():
                if c.degree.re <= Fraction(-self.n):
                    raise NonIntegrableCross(
                        f"global homogeneous piece of degree {c.degree} is "
                        "not locally integrable")
                continue  # pure power growth: no constant, no log
            rexpr, logqc = fp_radial(w, s_exp)
            const = const + FormalValue.from_rexpr(rexpr, sv)
            if not logqc.is_zero:
                log = log + sv.scale(logqc)
        for g in self.gaussians:
            const = const + FormalValue.pure(gauss_full_integral(g, self.n))
        return const, log

    def residue_raw(self) -> Exact:
        """Sphere integral of the degree -n content that produces log growth
        (pure cutoff powers only; shell words and tails are smoothing)."""
        total = Exact.zero()
        target = QC.of(-self.n)
        for w, c in self.pieces:
            if w != () and word_is_pure(w) and c.degree == target:
                total = total + sphere_integral(c)
        return total

    def classical_pieces(self) -> List[Tuple[Word, Component]]:
        """Pieces that carry asymptotic content: cutoff powers and global
        functions.  Derivative-word pieces are compactly supported, hence
        smoothing, and never affect order or parity class."""
        return [(w, c) for w, c in self.pieces if word_is_pure(w) or w == ()]

    def parity(self) -> ParityClass:
        classical = self.classical_pieces()
        degs = [c.degree for _w, c in classical]
        if any(not d.is_integer() for d in degs):
            return ParityClass.NONE
        odd_ok = even_ok = True
        for _w, c in classical:
            d = c.degree.as_integer()
            for k in c.monomial_degrees():
                if (k - d) % 2 != 0:
                    odd_ok = False
                if (k - d - 1) % 2 != 0:
                    even_ok = False
        if odd_ok:
            return ParityClass.ODD
        if even_ok:
            return ParityClass.EVEN
        return ParityClass.NONE

    def basis_map(self) -> Dict[tuple, QC]:
        out: Dict[tuple, QC] = {}
        for w, c in self.pieces:
            dkey = (c.degree.re, c.degree.im)
            for k, items in c.parts:
                for mono, coeff in items:
                    key = ("piece", w, dkey, k, mono)
                    out[key] = out.get(key, QC()) + coeff
        for g in self.gaussians:
            key = ("gauss", g.scale, g.alpha)
            out[key] = out.get(key, QC()) + g.coeff
        return {k: v for k, v in out.items() if not v.is_zero}


def _order_max(a: Optional[QC], b: Optional[QC]) -> Optional[QC]:
    if a is None:
        return b
    if b is None:
        return a
    return a if a.re >= b.re else b


def _poly_component_times_gauss(c: Component, g: GaussTerm) -> List[GaussTerm]:
    out = []
    for k, Hk in c.harmonics().items():
        e = c.degree - QC.of(k)
        if not (e.is_integer() and e.as_integer() >= 0 and e.as_integer() % 2 == 0):
            raise NonIntegrableCross(
                f"radial exponent {e} times a Gaussian leaves the term classes")
        p = Hk
        r2 = P.p_norm_sq(c.n)
        for _ in range(e.as_integer() // 2):
            p = P.p_mul(p, r2)
        for mono, coeff in p.items():
            out.append(GaussTerm(coeff * g.coeff,
                                 tuple(a + b for a, b in zip(mono, g.alpha)),
                                 g.scale))
    return out


# ---------------------------------------------------------------------------
# formal values (Exact coefficients on the moment basis)


class FormalValue:
    """Exact-linear combination of radial basis moments; key None is the
    moment-free part.  Zero as a FormalValue means zero for every admissible
    cutoff, which is the strongest sense in which an identity can hold."""

    __slots__ = ("parts",)

    def __init__(self, parts: Optional[Dict[Optional[tuple], Exact]] = None):
        self.parts = {k: v for k, v in (parts or {}).items() if not v.is_zero}

    @staticmethod
    def zero() -> FormalValue:
        return FormalValue()

    @staticmethod
    def pure(v: Exact) -> FormalValue:
        return FormalValue({None: v})

    @staticmethod
    def from_rexpr(e: RExpr, scale: Exact) -> FormalValue:
        out: Dict[Optional[tuple], Exact] = {}
        for key, q in e.parts.items():
            out[key] = scale.scale(q)
        return FormalValue(out)

    def __add__(self, other: FormalValue) -> FormalValue:
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out.get(k, Exact.zero()) + v
        return FormalValue(out)

    def scale(self, v: Union[Exact, QC, int, Fraction]) -> FormalValue:
        if isinstance(v, Exact):
            return FormalValue({k: val * v for k, val in self.parts.items()})
        return FormalValue({k: val.scale(QC.of(v)) for k, val in self.parts.items()})

    @property
    def is_zero(self) -> bool:
        return not self.parts

    def pure_part(self) -> Exact:
        return self.parts.get(None, Exact.zero())

    def moment_part(self) -> Dict[tuple, Exact]:
        return {k: v for k, v in self.parts.items() if k is not None}

    def evaluate(self, cutoff: RadialCutoff) -> Exact:
        total = self.pure_part()
        for key, v in self.moment_part().items():
            total = total + cutoff.moment_basis(key) * v
        return total

    def describe(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        if not self.pure_part().is_zero:
            bits.append(str(self.pure_part()))
        for key, v in sorted(self.moment_part().items(), key=lambda kv: str(kv[0])):
            bits.append(f"({v}) * {key}")
        return " + ".join(bits)


# ---------------------------------------------------------------------------
# tensor symbols and the star product


@dataclass(frozen=True)
class TensorSymbol:
    n: int
    pairs: Tuple[Tuple[CoefficientFunction, FormalXi], ...]

    @staticmethod
    def make(n: int, pairs) -> TensorSymbol:
        check_dim(n)
        packed = []
        for f, s in pairs:
            if isinstance(s, ClassicalSymbol):
                s = FormalXi.from_classical(s)
            if f.is_zero or s.is_zero:
                continue
            packed.append((f, s))
        return TensorSymbol(n, tuple(packed))

    @property
    def order(self) -> Optional[QC]:
        out: Optional[QC] = None
        for _f, s in self.pairs:
            out = _order_max(out, s.order)
        return out

    def scale_by(self, q) -> TensorSymbol:
        q = QC.of(q)
        return TensorSymbol.make(
            self.n, [(f.scale_by(q), s) for f, s in self.pairs])

    def __add__(self, other: TensorSymbol) -> TensorSymbol:
        return TensorSymbol.make(self.n, self.pairs + other.pairs)

    def canonical_map(self) -> Dict[tuple, QC]:
        """Fully expanded (x-basis, xi-basis) coefficient map; two tensor
        symbols are semantically equal iff these maps coincide."""
        out: Dict[tuple, QC] = {}
        for f, s in self.pairs:
            smap = s.basis_map()
            for t in f.terms:
                xkey = ("x", t.alpha, t.scale)
                for skey, c in smap.items():
                    key = (xkey, skey)
                    out[key] = out.get(key, QC()) + t.coeff * c
        return {k: v for k, v in out.items() if not v.is_zero}

    def semantically_equal(self, other: TensorSymbol) -> bool:
        return self.canonical_map() == other.canonical_map()

    @property
    def is_zero(self) -> bool:
        return not self.canonical_map()


def tensor(n: int, *pairs) -> TensorSymbol:
    return TensorSymbol.make(n, pairs)


def x_coordinate_symbol(n: int, i: int) -> TensorSymbol:
    """The multiplication operator by x_i: x_i (x) 1."""
    alpha = tuple(1 if k == i else 0 for k in range(n))
    one = Component.from_terms(n, [cterm(1, (0,) * n, 0)])
    return TensorSymbol.make(n, [(CoefficientFunction.polynomial(n, 1, alpha),
                                  FormalXi.polynomial(n, one))])


def dx_symbol(n: int, j: int) -> TensorSymbol:
    """The derivative operator d/dx_j, whose symbol is i xi_j."""
    alpha = tuple(1 if k == j else 0 for k in range(n))
    comp = Component.from_terms(n, [cterm(QC(Fraction(0), Fraction(1)), alpha, 0)])
    return TensorSymbol.make(n, [(CoefficientFunction.polynomial(n, 1),
                                  FormalXi.polynomial(n, comp))])


@dataclass(frozen=True)
class TruncatedStarResult:
    symbol: TensorSymbol
    truncation: int
    remainder_order_bound: Optional[QC]


def star_product(p: TensorSymbol, q: TensorSymbol, N: int) -> TruncatedStarResult:
    """Truncated composition sum over |alpha| <= N, exact term by term."""
    if N < 0:
        raise ValueError("truncation order must be non-negative")
    if p.n != q.n:
        raise IncompatibleOrders("dimension mismatch")
    pairs: List[Tuple[CoefficientFunction, FormalXi]] = []
    for total in range(N + 1):
        for alpha in _multi_indices(p.n, total):
            c = _minus_i_pow(total)
            fact = 1
            for e in alpha:
                f = 1
                for i in range(2, e + 1):
                    f *= i
                fact *= f
            scalar = c / QC.of(fact)
            for f1, s1 in p.pairs:
                ds1 = s1.diff_multi(alpha)
                if ds1.is_zero:
                    continue
                for f2, s2 in q.pairs:
                    df2 = f2
                    for i, e in enumerate(alpha):
                        for _ in range(e):
                            df2 = df2.diff(i)
                    if df2.is_zero:
                        continue
                    pairs.append(((f1 * df2).scale_by(scalar), ds1 * s2))
    sym = TensorSymbol.make(p.n, pairs)
    bound = None
    if p.order is not None and q.order is not None:
        bound = p.order + q.order - QC.of(N + 1)
    return TruncatedStarResult(sym, N, bound)


def commutator(p: TensorSymbol, q: TensorSymbol, N: int) -> TruncatedStarResult:
    left = star_product(p, q, N)
    right = star_product(q, p, N)
    sym = left.symbol + right.symbol.scale_by(-1)
    return TruncatedStarResult(sym, N, left.remainder_order_bound)


def _minus_i_pow(k: int) -> QC:
    out = QC.of(1)
    mi = QC(Fraction(0), Fraction(-1))
    for _ in range(k):
        out = out * mi
    return out


def _multi_indices(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _multi_indices(n - 1, total - head):
            yield (head,) + rest


# ---------------------------------------------------------------------------
# operator functionals


def op_residue(p: TensorSymbol, cfg: FunctionalConfig = RAW) -> Exact:
    """x-integral of the coefficients times the raw sphere residue of the
    xi-parts; Gaussian coefficients required."""
    total = Exact.zero()
    for f, s in p.pairs:
        r = s.residue_raw()
        if r.is_zero:
            continue
        total = total + f.integral() * r
    return cfg.residue_normalisation * total


def op_trace_formal(p: TensorSymbol) -> Tuple[FormalValue, Exact]:
    """(constant, log coefficient) of the x-integrated fp integral, constant
    kept in the moment ring."""
    const = FormalValue.zero()
    log = Exact.zero()
    for f, s in p.pairs:
        fx = f.integral()
        if fx.is_zero:
            continue
        c, lg = s.fp_integral()
        const = const + c.scale(fx)
        log = log + lg * fx
    return const, log


def _class_of_tensor(p: TensorSymbol) -> Optional[str]:
    degrees = [c.degree for _f, s in p.pairs
               for _w, c in s.classical_pieces()]
    if all(not d.is_integer() for d in degrees):
        return "non-integer-order"
    pars = [s.parity() for _f, s in p.pairs]
    if p.n % 2 == 1 and all(par is ParityClass.ODD for par in pars):
        return "odd-class-odd-dimension"
    if p.n % 2 == 0 and all(par is ParityClass.EVEN for par in pars):
        return "even-class-even-dimension"
    return None


def op_canonical_trace(p: TensorSymbol, cfg: FunctionalConfig = RAW,
                       cutoff: RadialCutoff = SHARP) -> Exact:
    """x-integrated cut-off integral, defined on the trace classes only."""
    cls = _class_of_tensor(p)
    if cls is None:
        raise ClassViolation(
            "canonical trace undefined: not non-integer order, nor odd-class "
            "in odd dimension, nor even-class in even dimension")
    const, _log = op_trace_formal(p)
    return cfg.trace_normalisation * const.evaluate(cutoff)


def bracket_residue_vanishing(p: TensorSymbol, q: TensorSymbol,
                              N: int) -> CheckReport:
    """Residue of a truncated commutator (N beyond a+b+n sees everything)."""
    c = commutator(p, q, N)
    val = op_residue(c.symbol)
    return CheckReport(
        f"operator residue of a commutator at truncation {N}",
        (Assertion("bracket-residue-vanishing", val, Exact.zero()),))


def bracket_trace_vanishing(p: TensorSymbol, q: TensorSymbol,
                            N: int) -> CheckReport:
    """Canonical trace of a truncated commutator, asserted to vanish
    identically in the moment ring (every admissible cutoff at once)."""
    c = commutator(p, q, N)
    cls = _class_of_tensor(c.symbol)
    if cls is None:
        raise ClassViolation(
            "commutator is not class-valid for the canonical trace")
    const, log = op_trace_formal(c.symbol)
    notes = (f"commutator class: {cls}",
             f"formal trace value: {const.describe()}")
    surviving = Exact.from_qc(len(const.moment_part()))
    return CheckReport(
        f"canonical trace of a commutator at truncation {N}",
        (Assertion("bracket-trace-vanishing", const.pure_part(), Exact.zero(),
                   context="moment-free part"),
         Assertion("bracket-trace-vanishing", surviving, Exact.zero(),
                   context="count of surviving moment coefficients"),
         Assertion("bracket-trace-log-vanishing", log, Exact.zero())),
        notes=notes)


# ---------------------------------------------------------------------------
# coordinate brackets and sign calibration


_BRACKET_SIGN: Optional[int] = None


def bracket_sign() -> int:
    """The once-per-build numeric calibration of the quantization sign.

    Returns s in {+1,-1} such that [x_i, Op(p)] = -i * s * Op(d_xi_i p) in
    this build's kernel convention.
    """
    global _BRACKET_SIGN
    if _BRACKET_SIGN is None:
        from .oracle import calibrate_quantization_sign
        _BRACKET_SIGN = calibrate_quantization_sign()
    return _BRACKET_SIGN


def coordinate_bracket_identity(p: TensorSymbol) -> CheckReport:
    """[x_i, Op(p)] = -i * sign * Op(d_xi_i p) symbolically on every axis,
    plus the d/dx_j bracket [d_xj, Op(p)] = Op(d_xj p)."""
    sign = bracket_sign()
    assertions = []
    scalar = QC(Fraction(0), Fraction(-sign))  # -i * sign
    for i in range(p.n):
        lhs = commutator(x_coordinate_symbol(p.n, i), p, 1).symbol
        rhs = TensorSymbol.make(
            p.n, [(f, s.diff(i)) for f, s in p.pairs]).scale_by(scalar)
        ok = lhs.semantically_equal(rhs)
        assertions.append(Assertion(
            "coordinate-bracket",
            Exact.from_qc(0 if ok else 1), Exact.zero(),
            context=f"axis {i}, sign {sign:+d}"))
    for j in range(p.n):
        lhs = commutator(dx_symbol(p.n, j), p, 1).symbol
        rhs = TensorSymbol.make(p.n, [(f.diff(j), s) for f, s in p.pairs])
        ok = lhs.semantically_equal(rhs)
        assertions.append(Assertion(
            "derivative-bracket",
            Exact.from_qc(0 if ok else 1), Exact.zero(),
            context=f"axis {j}"))
    return CheckReport("coordinate and derivative bracket identities",
                       tuple(assertions))


# ---------------------------------------------------------------------------
# parity table


def parity_product_table() -> Dict[str, str]:
    """Star-product parity on constant-coefficient generators.

    The computed table (representation-level mod-2 check): odd*odd = odd,
    even*even = odd, odd*even = even.  The last entry is reported as
    computed; the terminology's suggestion that it be odd is not asserted.
    """
    from .symalg import multiply, parity_classify as pc, power_symbol
    n = 3
    odd = power_symbol(n, -4, alpha=(1, 0, 0))   # degree -3, odd class
    even = power_symbol(n, -3, alpha=(1, 0, 0))  # degree -2, even class
    table = {}
    for name, (a, b) in {
        "odd*odd": (odd, odd),
        "even*even": (even, even),
        "odd*even": (odd, even),
    }.items():
        table[name] = pc(multiply(a, b)).value
    return table

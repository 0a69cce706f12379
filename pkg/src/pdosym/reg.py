"""The noncommutative residue, the cut-off regularised integral, and the
constructive machinery around them: Stokes defects, derivative decomposition
of residue-free symbols, the uniqueness reduction, translation invariance.

Everything here is exact.  The cut-off integral of a symbol is the constant
term of its ball-integral asymptotics,

    const = sum_j [ M(a-j+n-1) - 1/(a-j+n) ] S_j  +  shell data  +  tail,

with the critical layer a-j = -n contributing a log R growth instead, whose
coefficient (the raw residue) is reported separately.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .components import Component
from .errors import ClassViolation, NonzeroMean, ResidueObstruction
from .exact import Exact, gamma_half_ratio
from .radial import WORD_HPRIME, fp_radial, reduce_moment
from .rationals import QC
from .sphere import SpherePolynomial, laplace_sphere_solve, sphere_integral
from .symalg import (ClassicalSymbol, GaussTerm, ParityClass, ShellPiece,
                     classical_symbol, derivative, derivative_multi,
                     parity_classify, power_symbol)

EULER_SCALING = "euler-scaling"
LAPLACE_SOLVE = "laplace-solve"


@dataclass(frozen=True)
class FunctionalConfig:
    """Normalisations of the two functionals.  Identities are checked raw."""

    residue_normalisation: Exact = field(default_factory=lambda: Exact.from_qc(1))
    trace_normalisation: Exact = field(default_factory=lambda: Exact.from_qc(1))

    @staticmethod
    def preset(name: str, n: int) -> FunctionalConfig:
        kappa = _preset_value(name, n)
        return FunctionalConfig(kappa, kappa)

    @staticmethod
    def mixed(res_name: str, tr_name: str, n: int) -> FunctionalConfig:
        return FunctionalConfig(_preset_value(res_name, n),
                                _preset_value(tr_name, n))


def _preset_value(name: str, n: int) -> Exact:
    if name == "raw":
        return Exact.from_qc(1)
    if name == "sqrt-2pi-n":  # (2 pi)^(-n/2)
        half = Exact.pi_pow(Fraction(-n, 2))
        if n % 2 == 0:
            return half.scale(Fraction(1, 2 ** (n // 2)))
        return half * Exact.sqrt_int(2).scale(Fraction(1, 2 ** ((n + 1) // 2)))
    if name == "inv-2pi-n":  # (2 pi)^(-n)
        return Exact.pi_pow(-n).scale(Fraction(1, 2 ** n))
    raise ValueError(f"unknown normalisation preset {name!r}")


RAW = FunctionalConfig()


# ---------------------------------------------------------------------------
# the two functionals


def gauss_full_integral(g: GaussTerm, n: int) -> Exact:
    """Full-space integral of xi^alpha exp(-m|xi|^2), exact.

    Product of Gamma((a_i+1)/2) m^{-(a_i+1)/2} over even exponents; zero for
    any odd exponent.  The m^{-1/2} factors are why the value ring carries
    square roots of integers.
    """
    if any(a % 2 for a in g.alpha):
        return Exact.zero()
    total2 = sum(g.alpha) + n
    base = gamma_half_ratio([a + 1 for a in g.alpha], [])
    m = g.scale
    if total2 % 2 == 0:
        pw = Exact.from_qc(Fraction(1, m ** (total2 // 2)))
    else:
        pw = Exact.sqrt_int(m).scale(Fraction(1, m ** ((total2 + 1) // 2)))
    return base * pw.scale(g.coeff)


def residue(s: ClassicalSymbol, cfg: FunctionalConfig = RAW) -> Exact:
    """Sphere integral of the degree -n layer, times the configured constant."""
    return cfg.residue_normalisation * residue_raw(s)


def residue_raw(s: ClassicalSymbol) -> Exact:
    comp = s.layer_of_degree(QC.of(-s.n))
    if comp is None:
        return Exact.zero()
    return sphere_integral(comp)


def cutoff_integral_full(s: ClassicalSymbol) -> Tuple[Exact, Exact]:
    """(constant term, log coefficient) of the ball-integral asymptotics."""
    const = Exact.zero()
    log = Exact.zero()
    for word, comp in s.radial_pieces():
        sv = sphere_integral(comp)
        if sv.is_zero:
            continue
        s_exp = comp.degree + QC.of(s.n - 1)
        rexpr, logqc = fp_radial(word, s_exp)
        const = const + s.cutoff.eval_rexpr(rexpr) * sv
        if not logqc.is_zero:
            log = log + sv.scale(logqc)
    for g in s.gaussians:
        const = const + gauss_full_integral(g, s.n)
    return const, log


def cutoff_integral(s: ClassicalSymbol, cfg: FunctionalConfig = RAW) -> Exact:
    const, _log = cutoff_integral_full(s)
    return const


def log_coefficient(s: ClassicalSymbol) -> Exact:
    """Coefficient of log R; equals the raw residue for shell-free symbols."""
    _const, log = cutoff_integral_full(s)
    return log


def stokes_defect(tau: ClassicalSymbol, i: int) -> Exact:
    """Boundary defect of the cut-off integral on the derivative d_i tau:
    the sphere integral of omega_i times the degree (1-n) layer."""
    comp = tau.layer_of_degree(QC.of(1 - tau.n))
    if comp is None:
        return Exact.zero()
    return sphere_integral(comp.times_omega(i))


# ---------------------------------------------------------------------------
# derivative decomposition (kernel of the residue)


@dataclass(frozen=True)
class DecompositionResult:
    tau: Tuple[ClassicalSymbol, ...]
    layer_report: Tuple[Tuple[int, str], ...]
    shell_corrections: Tuple[Tuple[int, ShellPiece], ...]

    def report_map(self) -> Dict[int, str]:
        return dict(self.layer_report)


def _decompose_layer(comp: Component, n: int) -> Tuple[List[Component], str]:
    """Components tau_i with sum_i d_i tau_i = comp; Euler scaling away from
    the critical degree, sphere-Laplacian inversion at degree -n."""
    d = comp.degree
    if d != QC.of(-n):
        denom = d + QC.of(n)
        taus = [comp.times_xi(i).scale(QC.of(1) / denom) for i in range(n)]
        return taus, EULER_SCALING
    try:
        f = laplace_sphere_solve(SpherePolynomial.from_component(comp))
    except NonzeroMean as exc:
        raise ResidueObstruction(
            "the critical layer has nonzero residue; "
            "no derivative decomposition exists") from exc
    F = f.extend(QC.of(2 - n))
    taus = [F.diff(i) for i in range(n)]
    return taus, LAPLACE_SOLVE


def derivative_decompose(s: ClassicalSymbol) -> DecompositionResult:
    """Write s, modulo its smoothing tail, as sum_i d_i tau_i with the tau_i
    classical of order a+1.  Requires a vanishing residue."""
    if not residue_raw(s).is_zero:
        raise ResidueObstruction(
            f"residue {residue_raw(s)} is nonzero; decomposition obstructed")
    if s.shells:
        raise ResidueObstruction(
            "decomposition of shell-carrying symbols is not defined")
    n = s.n
    tau_layers: List[Dict[int, Component]] = [dict() for _ in range(n)]
    report: List[Tuple[int, str]] = []
    for j, comp in s.layers:
        taus, method = _decompose_layer(comp, n)
        report.append((j, method))
        for i in range(n):
            if not taus[i].is_zero:
                tau_layers[i][j] = taus[i]
    order = None if s.order is None else s.order + QC.of(1)
    tau_syms = []
    shell_corrections: List[Tuple[int, ShellPiece]] = []
    from .symalg import _canonical
    for i in range(n):
        tau_i = _canonical(n, order, tau_layers[i], (), (), s.cutoff)
        tau_syms.append(tau_i)
        for _j, comp in tau_i.layers:
            shell_corrections.append(
                (i, ShellPiece(((1, 1),), comp.times_omega(i))))
    return DecompositionResult(tuple(tau_syms), tuple(report),
                               tuple(shell_corrections))


# ---------------------------------------------------------------------------
# uniqueness reduction


class ExactIntegralBase:
    """The ordinary-integral base functional: exact values on smoothing and
    shell data.  Feeding it to the reduction must reproduce the cut-off
    integral (the constructive content of the uniqueness theorem)."""

    def __init__(self, cutoff):
        self.cutoff = cutoff

    def shell_value(self, piece: ShellPiece, n: int) -> Exact:
        sv = sphere_integral(piece.component)
        if sv.is_zero:
            return Exact.zero()
        s_exp = piece.component.degree + QC.of(n - 1)
        return self.cutoff.eval_rexpr(reduce_moment(piece.word, s_exp)) * sv

    def smoothing_value(self, gaussians: Sequence[GaussTerm], n: int) -> Exact:
        total = Exact.zero()
        for g in gaussians:
            total = total + gauss_full_integral(g, n)
        return total


class ZeroBase:
    """A singular closed base: everything collapses to zero on Ker(res)."""

    def shell_value(self, piece: ShellPiece, n: int) -> Exact:
        return Exact.zero()

    def smoothing_value(self, gaussians: Sequence[GaussTerm], n: int) -> Exact:
        return Exact.zero()


def reduce_and_evaluate(s: ClassicalSymbol, base) -> Exact:
    """Evaluate a closed linear form on s through the layer reduction.

    Each layer is traded for its decomposition's cutoff-derivative boundary
    data: rho(chi sigma_{a-j}) = -sum_i rho(h' omega_i tau_i).  What remains
    is the base functional on smoothing and shell data.  With the exact
    integral base this reproduces the cut-off integral layer by layer.
    """
    n = s.n
    total = Exact.zero()
    for _j, comp in s.layers:
        taus, _method = _decompose_layer(comp, n)
        for i in range(n):
            piece = ShellPiece(((1, 1),), taus[i].times_omega(i))
            total = total - base.shell_value(piece, n)
    for sp in s.shells:
        total = total + base.shell_value(sp, n)
    total = total + base.smoothing_value(s.gaussians, n)
    return total


# ---------------------------------------------------------------------------
# translation invariance


@dataclass(frozen=True)
class TranslationReport:
    stokes_class: str
    entries: Tuple[Tuple[Tuple[int, ...], Exact, Exact], ...]
    remainder_bound: Optional[Fraction]
    all_zero: bool
    # witness for out-of-class inputs: (axis, witness symbol, nonzero defect)
    defect_exhibit: Optional[Tuple[int, ClassicalSymbol, Exact]] = None


def stokes_class_of(s: ClassicalSymbol) -> Optional[str]:
    """Which closedness class the symbol belongs to, if any."""
    if s.order is None:
        return "smoothing"
    if not s.order.is_integer():
        return "non-integer-order"
    par = parity_classify(s)
    if par is ParityClass.ODD and s.n % 2 == 1:
        return "odd-class-odd-dimension"
    if par is ParityClass.EVEN and s.n % 2 == 0:
        return "even-class-even-dimension"
    return None


def translation_invariance_check(s: ClassicalSymbol, eta: Sequence, N: int,
                                 strict: bool = True) -> TranslationReport:
    """Check that the cut-off integral kills every Taylor term of the
    translate: integral of d^alpha s vanishes for 1 <= |alpha| <= N-1.

    Outside the recognised Stokes classes the check is informational when
    strict=False, and raises ClassViolation (with the nonzero data attached)
    when strict=True.
    """
    from .symalg import translate_taylor, scale as sym_scale
    cls = stokes_class_of(s)
    entries = []
    all_zero = True
    eta = [QC.of(e) for e in eta]
    for total in range(1, N):
        for alpha in _multi_indices(s.n, total):
            val = cutoff_integral(derivative_multi(s, alpha))
            coeff = QC.of(1)
            for e, x in zip(alpha, eta):
                for _ in range(e):
                    coeff = coeff * x
            fact = 1
            for e in alpha:
                f = 1
                for i in range(2, e + 1):
                    f *= i
                fact *= f
            entries.append((alpha, val, val.scale(coeff / QC.of(fact))))
            if not val.is_zero:
                all_zero = False
    bound = None if s.order is None else s.order.re - N
    exhibit = None
    if cls is None:
        # a witness in the same broken class: chi xi_1 |xi|^{-n} has degree
        # 1-n and a nonvanishing boundary defect on axis 1
        alpha = (1,) + (0,) * (s.n - 1)
        witness = power_symbol(s.n, -s.n, alpha=alpha, cutoff=s.cutoff)
        exhibit = (0, witness, stokes_defect(witness, 0))
    report = TranslationReport(cls or "none", tuple(entries), bound, all_zero,
                               exhibit)
    if cls is None and strict:
        raise ClassViolation(
            "symbol is in no recognised Stokes class; translation invariance "
            "is not asserted", report=report)
    return report


def _multi_indices(n: int, total: int):
    if n == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _multi_indices(n - 1, total - head):
            yield (head,) + rest

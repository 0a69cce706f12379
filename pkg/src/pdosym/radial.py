"""Radial cutoff weights and their exact moments.

A symbol's radial structure is a formal word in the cutoff function and its
derivatives, w = h^a * h'^b * h''^c * ...  Differentiating or multiplying
cut-off symbols only ever produces such words, so tracking them keeps the
whole calculus closed.  The regularised functionals need the moments

    M[w, s] = integral_0^1 w(r) r^s dr

which reduce, by exact integration by parts (all boundary terms vanish for
an admissible cutoff: flat near r=0 and r=1), to a small basis:

  * pure-power moments  M_a(s) = integral_0^1 h^a r^s dr, and
  * irreducible mixed moments (h'^b with b >= 2 and friends).

The sharp-shell model is the evaluation  M_a(s) -> 0  of this basis; it sends
M[h^a h', s] -> 1/(a+1) (the familiar 1/2 for a=1) and has no finite value on
the irreducible moments.  A polynomial spline cutoff evaluates everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Optional, Tuple, Union

import mpmath as mp

from .errors import DivergentMoment, PoleAtS
from .exact import Exact
from .rationals import QC

# Word: sorted tuple of (derivative order k >= 0, power p >= 1).
Word = Tuple[Tuple[int, int], ...]

WORD_ONE: Word = ()
WORD_H: Word = ((0, 1),)
WORD_HPRIME: Word = ((1, 1),)

# Basis keys: None (rational), ("M", a, s) or ("X", word, s).
BasisKey = Optional[tuple]


def word_make(pairs) -> Word:
    acc: Dict[int, int] = {}
    for k, p in pairs:
        if p:
            acc[k] = acc.get(k, 0) + p
    return tuple(sorted(acc.items()))


def word_mul(w1: Word, w2: Word) -> Word:
    return word_make(list(w1) + list(w2))


def word_pow(w: Word, e: int) -> Word:
    return word_make([(k, p * e) for k, p in w])


def word_diff(w: Word) -> Tuple[Tuple[int, Word], ...]:
    """d/dr of a word: list of (integer coefficient, word) terms."""
    out = []
    for i, (k, p) in enumerate(w):
        rest = list(w[:i]) + list(w[i + 1:])
        bumped = rest + [(k, p - 1), (k + 1, 1)]
        out.append((p, word_make(bumped)))
    return tuple(out)


def word_is_pure(w: Word) -> bool:
    return all(k == 0 for k, _ in w)


def word_max_order(w: Word) -> int:
    return max((k for k, _ in w), default=0)


class RExpr:
    """Q(i)-linear combination of basis moments (plus a rational part)."""

    __slots__ = ("parts",)

    def __init__(self, parts: Optional[Dict[BasisKey, QC]] = None):
        self.parts = {k: v for k, v in (parts or {}).items() if not v.is_zero}

    @staticmethod
    def const(q) -> RExpr:
        return RExpr({None: QC.of(q)})

    @staticmethod
    def basis(key: BasisKey, q=1) -> RExpr:
        return RExpr({key: QC.of(q)})

    def __add__(self, other: RExpr) -> RExpr:
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out.get(k, QC()) + v
        return RExpr(out)

    def scale(self, q) -> RExpr:
        q = QC.of(q)
        return RExpr({k: v * q for k, v in self.parts.items()})

    def __neg__(self) -> RExpr:
        return self.scale(-1)


@lru_cache(maxsize=None)
def reduce_moment(word: Word, s: QC, _depth: int = 0) -> RExpr:
    """Canonical form of M[word, s] = integral_0^1 word(r) r^s dr."""
    if _depth > 64:
        raise DivergentMoment(f"moment reduction did not terminate for {word}")
    if not word:
        raise ValueError("a bare r^s power has no [0,1] moment in this calculus")
    if word_is_pure(word):
        a = word[0][1]
        return RExpr.basis(("M", a, s))
    top = word_max_order(word)
    powers = dict(word)
    if top == 1:
        a = powers.get(0, 0)
        b = powers[1]
        if b == 1:
            # integral h^a h' r^s = 1/(a+1) - s/(a+1) * M_{a+1}(s-1)
            out = RExpr.const(Fraction(1, a + 1))
            if not s.is_zero:
                out = out + RExpr.basis(("M", a + 1, s - QC.of(1)), -s / (a + 1))
            return out
        return RExpr.basis(("X", word, s))
    if powers[top] >= 2:
        return RExpr.basis(("X", word, s))
    # single factor of maximal order: one integration by parts
    u = word_make([(k, p) for k, p in word if k != top])
    expansion: Dict[Tuple[Word, QC], QC] = {}

    def put(w: Word, ss: QC, c: QC):
        key = (w, ss)
        expansion[key] = expansion.get(key, QC()) + c

    for coeff, du in word_diff(u):
        put(word_mul(du, ((top - 1, 1),)), s, QC.of(-coeff))
    if not s.is_zero:
        put(word_mul(u, ((top - 1, 1),)), s - QC.of(1), -s)
    self_coeff = QC()
    rest = RExpr()
    for (w, ss), c in expansion.items():
        if w == word and ss == s:
            self_coeff = self_coeff + c
        elif not c.is_zero:
            rest = rest + reduce_moment(w, ss, _depth + 1).scale(c)
    denom = QC.of(1) - self_coeff
    if denom.is_zero:
        return RExpr.basis(("X", word, s))
    return rest.scale(QC.of(1) / denom)


def fp_radial(word: Word, s: QC) -> Tuple[RExpr, QC]:
    """Finite part of integral_0^inf word(r) r^s dr, as (constant, log coeff).

    Words containing a derivative factor are supported in [0,1]; pure powers
    h^a equal 1 beyond r=1 and contribute the classical -1/(s+1) tail (or a
    log R growth when s = -1, whose coefficient is returned separately).
    """
    if not word:
        raise ValueError("uncut radial powers have no finite-part ball integral here")
    if word_is_pure(word):
        a = word[0][1]
        inner = RExpr.basis(("M", a, s))
        if s == QC.of(-1):
            return inner, QC.of(1)
        return inner + RExpr.const(QC.of(-1) / (s + QC.of(1))), QC()
    return reduce_moment(word, s), QC()


# ---------------------------------------------------------------------------
# cutoff models


class RadialCutoff:
    """Evaluation rule for the moment basis; see SharpShell and Spline."""

    kind = "abstract"

    def moment_basis(self, key: tuple) -> Exact:
        raise NotImplementedError

    def eval_rexpr(self, e: RExpr) -> Exact:
        total = Exact.zero()
        for key, c in e.parts.items():
            if key is None:
                total = total + Exact.from_qc(c)
            else:
                total = total + self.moment_basis(key).scale(c)
        return total

    def moment(self, s: QC) -> Exact:
        """M(s) = integral_0^1 h r^s dr."""
        return self.eval_rexpr(RExpr.basis(("M", 1, s)))

    def moment_prime(self, s: QC) -> Exact:
        """M'(s) = integral_0^1 h' r^s dr = 1 - s M(s-1)."""
        return self.eval_rexpr(reduce_moment(WORD_HPRIME, s))

    def word_moment(self, word: Word, s: QC) -> Exact:
        return self.eval_rexpr(reduce_moment(word, s))


class SharpShell(RadialCutoff):
    """Indicator of |xi| >= 1: every ball moment vanishes, M'(s) = 1.

    The limit of admissible smooth cutoffs shrinking onto the unit shell;
    it keeps every regularised value inside the exact ring.
    """

    kind = "sharp"

    def moment_basis(self, key: tuple) -> Exact:
        if key[0] == "M":
            return Exact.zero()
        raise DivergentMoment(
            f"moment {key} has no finite sharp-shell value (squared shell weight)")

    def __repr__(self) -> str:
        return "SharpShell()"

    def __eq__(self, other) -> bool:
        return isinstance(other, SharpShell)

    def __hash__(self) -> int:
        return hash("sharp")


class Spline(RadialCutoff):
    """Polynomial smoothstep cutoff: 0 on [0,1/4], 1 on [1,inf).

    The transition is the order-p smoothstep (first p derivatives vanish at
    both ends), so moment reductions are exact for words of order <= p.
    """

    kind = "spline"

    def __init__(self, smoothness: int = 6):
        self.smoothness = smoothness
        self._h = _smoothstep_poly(smoothness)  # coefficients in t

    def __repr__(self) -> str:
        return f"Spline(smoothness={self.smoothness})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Spline) and other.smoothness == self.smoothness

    def __hash__(self) -> int:
        return hash(("spline", self.smoothness))

    # polynomial of h^(k) on the window [1/4, 1], in the variable r
    @lru_cache(maxsize=None)
    def _deriv_poly_r(self, k: int) -> Tuple[Fraction, ...]:
        if k > self.smoothness:
            raise DivergentMoment(
                f"word order {k} exceeds spline smoothness {self.smoothness}")
        coeffs = list(self._h)
        scale = Fraction(4, 3)  # dt/dr
        for _ in range(k):
            coeffs = [c * i for i, c in enumerate(coeffs)][1:] or [Fraction(0)]
        coeffs = [c * scale ** k for c in coeffs]
        # substitute t = (r - 1/4) * 4/3
        return _poly_compose_affine(tuple(coeffs), Fraction(4, 3), Fraction(-1, 3))

    def _word_poly_r(self, word: Word) -> Tuple[Fraction, ...]:
        out = (Fraction(1),)
        for k, p in word:
            q = self._deriv_poly_r(k)
            for _ in range(p):
                out = _poly_mul(out, q)
        return out

    def moment_basis(self, key: tuple) -> Exact:
        if key[0] == "M":
            _tag, a, s = key
            word: Word = ((0, a),)
        else:
            _tag, word, s = key
        return self.window_moment_exact(word, s)

    def window_moment_exact(self, word: Word, s: QC) -> Exact:
        """integral_{1/4}^{1} word(r) r^s dr, exact; integer s only."""
        if not s.is_integer():
            raise PoleAtS(f"spline moment at non-integer s={s} is numeric-only")
        si = s.as_integer()
        poly = self._word_poly_r(word)
        total = Fraction(0)
        for m, c in enumerate(poly):
            if c == 0:
                continue
            e = m + si
            if e == -1:
                raise PoleAtS("spline moment hits a logarithmic r^-1 term; "
                              "its exact value leaves the ring (use numeric mode)")
            total += c * (Fraction(1) - Fraction(1, 4 ** (e + 1))) / (e + 1)
        return Exact.from_qc(Fraction(total))

    def window_moment_numeric(self, word: Word, s: QC, dps: int = 35) -> mp.mpc:
        """Same moment to >= 30 significant digits, any complex s."""
        poly = self._word_poly_r(word)
        with mp.workdps(dps + 10):
            sz = mp.mpc(mp.mpf(s.re.numerator) / s.re.denominator,
                        mp.mpf(s.im.numerator) / s.im.denominator)
            total = mp.mpc(0)
            quarter = mp.mpf(1) / 4
            for m, c in enumerate(poly):
                if c == 0:
                    continue
                e = sz + m
                cf = mp.mpf(c.numerator) / c.denominator
                if mp.almosteq(e, mp.mpf(-1)):
                    total += cf * (-mp.log(quarter))
                else:
                    total += cf * (1 - mp.power(quarter, e + 1)) / (e + 1)
            return +total

    def h_value(self, r) -> mp.mpf:
        r = mp.mpf(r)
        if r <= mp.mpf(1) / 4:
            return mp.mpf(0)
        if r >= 1:
            return mp.mpf(1)
        t = (r - mp.mpf(1) / 4) * 4 / 3
        return sum(mp.mpf(c.numerator) / c.denominator * t ** i
                   for i, c in enumerate(self._h))

    def word_value(self, word: Word, r) -> mp.mpf:
        r = mp.mpf(r)
        if r <= mp.mpf(1) / 4 or r >= 1:
            if word_is_pure(word):
                return mp.mpf(1) if r >= 1 else mp.mpf(0)
            return mp.mpf(0)
        poly = self._word_poly_r(word)
        return sum(mp.mpf(c.numerator) / c.denominator * r ** i
                   for i, c in enumerate(poly))


def _smoothstep_poly(p: int) -> Tuple[Fraction, ...]:
    """Order-p smoothstep on [0,1] as t-coefficients (degree 2p+1)."""
    coeffs = [Fraction(0)] * (2 * p + 2)
    for k in range(p + 1):
        c = Fraction(comb(p + k, k) * comb(2 * p + 1, p - k) * (-1) ** k)
        coeffs[p + 1 + k] = c
    return tuple(coeffs)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return tuple(out)


def _poly_compose_affine(coeffs, u: Fraction, v: Fraction):
    """p(t) with t = u*r + v, returned as r-coefficients."""
    out = (Fraction(0),)
    lin = (v, u)
    power = (Fraction(1),)
    for c in coeffs:
        if c:
            term = tuple(x * c for x in power)
            out = tuple(a + b for a, b in
                        zip(out + (Fraction(0),) * max(0, len(term) - len(out)),
                            term + (Fraction(0),) * max(0, len(out) - len(term))))
        power = _poly_mul(power, lin)
    return out


SHARP = SharpShell()

"""Multivariate polynomials over Q(i), plus the harmonic decomposition.

A polynomial is a dict mapping exponent tuples to QC coefficients; the zero
polynomial is the empty dict.  Only homogeneous polynomials appear in the
calculus, and the central primitive is the classical decomposition

    P = sum_m |xi|^{2m} H_{d-2m},   Delta H_k = 0,

computed by exact rational recursion on Delta P.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Tuple

from .rationals import QC

Mon = Tuple[int, ...]
Poly = Dict[Mon, QC]


def p_zero() -> Poly:
    return {}


def p_const(n: int, c) -> Poly:
    c = QC.of(c)
    return {} if c.is_zero else {(0,) * n: c}


def p_monomial(alpha: Mon, c=1) -> Poly:
    c = QC.of(c)
    return {} if c.is_zero else {tuple(alpha): c}


def p_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, QC()) + c
        if s.is_zero:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def p_scale(a: Poly, c) -> Poly:
    c = QC.of(c)
    if c.is_zero:
        return {}
    return {m: v * c for m, v in a.items()}


def p_neg(a: Poly) -> Poly:
    return {m: -v for m, v in a.items()}


def p_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, QC()) + ca * cb
            if s.is_zero:
                out.pop(m, None)
            else:
                out[m] = s
    return out


def p_diff(a: Poly, i: int) -> Poly:
    out: Poly = {}
    for m, c in a.items():
        if m[i] == 0:
            continue
        down = list(m)
        down[i] -= 1
        out[tuple(down)] = c * m[i]
    return out


def p_laplacian(a: Poly) -> Poly:
    out: Poly = {}
    for m, c in a.items():
        for i, e in enumerate(m):
            if e >= 2:
                down = list(m)
                down[i] -= 2
                key = tuple(down)
                s = out.get(key, QC()) + c * (e * (e - 1))
                if s.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = s
    return out


def p_degree(a: Poly) -> int:
    """Common total degree; raises on inhomogeneous input."""
    degs = {sum(m) for m in a}
    if not degs:
        return 0
    if len(degs) != 1:
        raise ValueError("polynomial is not homogeneous")
    return degs.pop()


def p_norm_sq(n: int) -> Poly:
    """|xi|^2 as a polynomial."""
    out: Poly = {}
    for i in range(n):
        m = [0] * n
        m[i] = 2
        out[tuple(m)] = QC.of(1)
    return out


def p_eval(a: Poly, point) -> complex:
    total = 0j
    for m, c in a.items():
        v = complex(c)
        for x, e in zip(point, m):
            if e:
                v *= x ** e
        total += v
    return total


def harmonic_decompose(P: Poly, n: int) -> Dict[int, Poly]:
    """Decompose a homogeneous P of degree d into {k: H_k}.

    The result satisfies P = sum_k |xi|^{2(d-k)/2 ... } precisely:
    P = sum over k of |xi|^(d-k) ... in even steps:
        P = sum_m |xi|^{2m} H_{d-2m},  H_k harmonic of degree k.

    Recursion: Delta(|xi|^{2m} H_k) = 2m(2k + 2m + n - 2)|xi|^{2m-2} H_k,
    so the decomposition of Delta P determines every H_k with k < d, and
    H_d is the remainder.  Exact over Q(i).
    """
    if not P:
        return {}
    d = p_degree(P)
    L = p_laplacian(P)
    H: Dict[int, Poly] = {}
    if L:
        G = harmonic_decompose(L, n)
        for k, Gk in G.items():
            m = (d - k) // 2  # |xi|^{2m} H_k inside P, m >= 1
            eig = Fraction(2 * m * (2 * k + 2 * m + n - 2))
            H[k] = p_scale(Gk, QC.of(Fraction(1, 1) / eig))
    rest = dict(P)
    r2 = p_norm_sq(n)
    for k, Hk in H.items():
        m = (d - k) // 2
        shifted = Hk
        for _ in range(m):
            shifted = p_mul(shifted, r2)
        rest = p_add(rest, p_neg(shifted))
    if rest:
        H[d] = rest
    return H

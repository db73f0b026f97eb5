"""Bentness verdicts, regularity, duals, algebraic degree, balance.

A function is bent when every Walsh coefficient has norm exactly 3^n;
regular / weakly regular when all coefficients are u * 3^(n/2) * omega^j
for one global unit u in {+1, -1}, in which case the exponent table j(b)
is the dual function.  Everything here is decided on exact Z[omega]
integers; nothing is compared with a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gf import FieldCtx, FieldError
from .spectrum import TernaryFn, WalshSpectrum, spectrum_fast, spectrum_naive

__all__ = ["Certificate", "check_bent", "algebraic_degree", "anf",
           "is_balanced", "dual_of", "ea_move",
           "REGULAR", "WEAK_MINUS", "NOT_WEAKLY_REGULAR", "NOT_BENT"]

REGULAR = "regular"
WEAK_MINUS = "weak-minus"
NOT_WEAKLY_REGULAR = "not-weakly-regular"
NOT_BENT = "not-bent"


@dataclass
class Certificate:
    is_bent: bool
    regularity: str
    degree: int
    dual: TernaryFn | None = None
    unit: int | None = None            # +1 / -1 when (weakly) regular
    counterexample: int | None = None  # first b with |S_f(b)|^2 != 3^n
    transcript: list = field(default_factory=list)


def check_bent(f: TernaryFn, spectrum: WalshSpectrum | None = None, *,
               fast: bool = True) -> Certificate:
    """Exact bentness + regularity verdict from the full Walsh spectrum."""
    ctx = f.ctx
    if spectrum is None:
        spectrum = spectrum_fast(f) if fast else spectrum_naive(f)
    lines = []
    target = 3**ctx.n
    norms = spectrum.norms()
    bad = np.nonzero(norms != target)[0]
    deg = algebraic_degree(f)
    if bad.size:
        b = int(bad[0])
        lines.append(f"CHECK walsh-norms FAIL b={b} norm={int(norms[b])} "
                     f"expected={target} ({bad.size} of {ctx.q} off)")
        return Certificate(False, NOT_BENT, deg, counterexample=b,
                           transcript=lines)
    lines.append(f"CHECK walsh-norms PASS all {ctx.q} coefficients "
                 f"have norm {target}")

    if ctx.n % 2:
        # |S| = 3^(n/2) is irrational: unit is not +/-omega^j, outside Z[omega]
        b0 = spectrum[0]
        lines.append(f"CHECK regularity FAIL non-eisenstein-unit "
                     f"S_f(0)={b0} at odd n={ctx.n}")
        return Certificate(True, NOT_WEAKLY_REGULAR, deg, transcript=lines)

    M = 3**(ctx.n // 2)
    u, v = spectrum.u, spectrum.v
    unit = np.zeros(ctx.q, dtype=np.int64)
    dual = np.zeros(ctx.q, dtype=np.uint8)
    # the six unit multiples of M: +/- M omega^j
    for sgn in (1, -1):
        for j, (pu, pv) in enumerate(((M, 0), (0, M), (-M, -M))):
            m = (u == sgn * pu) & (v == sgn * pv)
            unit[m] = sgn
            dual[m] = j
    if int((unit == 0).sum()):
        b = int(np.nonzero(unit == 0)[0][0])
        lines.append(f"CHECK regularity FAIL b={b} S_f(b)={spectrum[b]} "
                     f"is not a unit multiple of {M}")
        return Certificate(True, NOT_WEAKLY_REGULAR, deg, transcript=lines)
    if bool(np.all(unit == 1)):
        lines.append("CHECK regularity PASS regular (u=+1)")
        return Certificate(True, REGULAR, deg, dual=TernaryFn(ctx, dual),
                           unit=1, transcript=lines)
    if bool(np.all(unit == -1)):
        lines.append("CHECK regularity PASS weakly regular (u=-1)")
        return Certificate(True, WEAK_MINUS, deg, dual=TernaryFn(ctx, dual),
                           unit=-1, transcript=lines)
    b = int(np.nonzero(unit != unit[0])[0][0])
    lines.append(f"CHECK regularity FAIL mixed units: S_f(0)={spectrum[0]} "
                 f"but S_f({b})={spectrum[b]}")
    return Certificate(True, NOT_WEAKLY_REGULAR, deg, transcript=lines)


def anf(f: TernaryFn) -> np.ndarray:
    """Coefficients c of f(x) = sum_m c[m] prod_i x_i^(m_i) over F3.

    m is packed little-endian base 3 like element indices; per coordinate
    the 3-point interpolation of g(t) = c0 + c1 t + c2 t^2 is
    c0 = g(0), c1 = g(2) - g(1), c2 = -(g(0) + g(1) + g(2)).
    """
    ctx = f.ctx
    a = f.table.astype(np.int16)
    q = ctx.q
    for t in range(ctx.n):
        w = 3**t
        m = a.reshape(q // (3 * w), 3, w)
        g0 = m[:, 0].copy(); g1 = m[:, 1].copy(); g2 = m[:, 2].copy()
        m[:, 0] = g0
        m[:, 1] = (g2 - g1) % 3
        m[:, 2] = (-(g0 + g1 + g2)) % 3
    return a.astype(np.uint8)


def algebraic_degree(f: TernaryFn) -> int:
    """Max base-3 digit sum over monomials with nonzero ANF coefficient;
    0 for constant functions."""
    coeffs = anf(f)
    nz = np.nonzero(coeffs)[0]
    if nz.size == 0:
        return 0
    wt = f.ctx.digits.sum(axis=1).astype(np.int64)
    return int(wt[nz].max())


def is_balanced(f: TernaryFn) -> bool:
    """Each value of F3 hit exactly 3^(n-1) times."""
    c = np.bincount(f.table, minlength=3)
    third = f.ctx.q // 3
    return bool(c[0] == third and c[1] == third and c[2] == third)


def dual_of(cert: Certificate) -> TernaryFn:
    if cert.dual is None:
        raise FieldError(
            "no dual: certificate is not (weakly) regular bent")
    return cert.dual


def ea_move(f: TernaryFn, lam: int = 1, mu: int = 0, c: int = 0,
            e: int = 0, scale: int = 1) -> TernaryFn:
    """scale * f(lam*x + mu) + Tr(c*x) + e, an extended-affine equivalent.

    lam must be nonzero and scale in {1, 2}; bentness is preserved.
    """
    ctx = f.ctx
    if lam == 0:
        raise FieldError("lam must be nonzero")
    if scale % 3 == 0:
        raise FieldError("scale must be a unit of F3")
    perm = ctx.scale_perm(lam)
    if mu:
        perm = ctx.translate_perm(mu)[perm]
    tab = f.table[perm].astype(np.int64) * (scale % 3)
    if c:
        tab = tab + ctx.trace1[ctx.scale_perm(c)]
    table = (tab + e) % 3
    return TernaryFn(ctx, table.astype(np.uint8))

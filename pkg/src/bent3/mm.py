"""Derivative criteria for the completed Maiorana-McFarland class.

For an n/2-dimensional subspace V of GF(3^n), a bent f lies in the
completed MM class iff all second-order derivatives

    D_{c,d} f(x) = f(x+c+d) - f(x+c) - f(x+d) + f(x),  c, d in V

vanish identically.  That condition is equivalent to f being affine on
every coset of V, which is what d2_vanishes_on actually tests: one batch
interpolation per coset instead of a |V|^2 * 3^n triple loop (the loop
stays around in the test suite as the oracle).

Two sufficient bentness criteria are built on top:

* check_mm_regular: V-orthogonal supplementary + second derivatives vanish
  + first derivatives balanced  =>  f regular bent, with an explicit
  decomposition f(v+w) = Tr(v pi(w)) + g(w), pi a bijection V-perp -> V.
* check_mm_self_orthogonal: V self-orthogonal (so the first criterion's
  supplementarity can't hold), W an explicit supplement; passes when the
  extracted pi is a permutation of W.

check_completed_mm is the bare class-membership test for functions already
known to be bent.

binomial_subspace / trinomial_subspace construct the specific coset
subspaces the binomial (n=4k) and trinomial (n=2k) families vanish on,
and re-verify their defining identities on the way out.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gf import (POW3, FieldCtx, FieldError, InternalInconsistencyError,
                 f3_kernel, f3_rank)
from .spectrum import TernaryFn

__all__ = ["Subspace", "MMWitness", "InternalInconsistencyError",
           "d1", "d2", "d2_vanishes_on",
           "check_mm_regular", "check_mm_self_orthogonal",
           "check_completed_mm", "binomial_subspace", "trinomial_subspace"]


def _counter_digits(width: int) -> np.ndarray:
    """(3^width, width) uint8 little-endian counter, row r = digits of r."""
    out = np.empty((POW3[width], width), dtype=np.uint8)
    tmp = np.arange(POW3[width], dtype=np.int64)
    for i in range(width):
        out[:, i] = tmp % 3
        tmp //= 3
    return out


@dataclass(frozen=True)
class Subspace:
    """F3-subspace of GF(3^n) given by an ordered basis of packed elements."""
    ctx: FieldCtx
    basis: tuple
    kind: str = "basis"

    @classmethod
    def from_basis(cls, ctx: FieldCtx, basis, kind: str = "basis"):
        basis = tuple(int(b) for b in basis)
        if any(b == 0 for b in basis):
            raise FieldError("zero vector in basis")
        rows = ctx.digits[np.array(basis, dtype=np.int64)]
        if f3_rank(rows) != len(basis):
            raise FieldError("basis vectors are linearly dependent")
        return cls(ctx, basis, kind)

    @classmethod
    def from_coset(cls, ctx: FieldCtx, rep: int, m: int):
        """rep * GF(3^m), an m-dimensional F3-subspace for rep != 0."""
        if rep == 0:
            raise FieldError("coset representative must be nonzero")
        basis = tuple(ctx.mul(rep, b) for b in ctx.subfield_basis(m))
        return cls(ctx, basis, kind=f"coset({m})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def elements(self) -> np.ndarray:
        """All 3^dim elements; index order = little-endian counter on the
        basis coefficients, so elements[0] = 0 and elements[3^i] = basis[i]."""
        rows = self.ctx.digits[np.array(self.basis, dtype=np.int64)]
        combos = (_counter_digits(self.dim).astype(np.int64)
                  @ rows.astype(np.int64)) % 3
        return self.ctx.pack(combos)

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(int(x) for x in self.elements)

    def contains(self, x: int) -> bool:
        return int(x) in self._element_set

    def orthogonal(self) -> "Subspace":
        """{y : Tr(y v) = 0 for all v in self}, dimension n - dim."""
        ctx = self.ctx
        A = np.empty((self.dim, ctx.n), dtype=np.int64)
        for i, b in enumerate(self.basis):
            for j in range(ctx.n):
                A[i, j] = ctx.trace_abs(ctx.mul(b, POW3[j]))
        rows = f3_kernel(A)
        basis = [int(p) for p in self.ctx.pack(rows)]
        return Subspace.from_basis(ctx, basis, kind="orthogonal")

    def is_self_orthogonal(self) -> bool:
        ctx = self.ctx
        return all(ctx.trace_abs(ctx.mul(b, b2)) == 0
                   for b in self.basis for b2 in self.basis)

    def complement(self) -> "Subspace":
        """Deterministic supplementary subspace: extend the basis greedily
        by coordinate vectors x^i."""
        ctx = self.ctx
        rows = [ctx.digits[b].astype(np.int64) for b in self.basis]
        picked = []
        for i in range(ctx.n):
            if len(rows) == ctx.n:
                break
            cand = ctx.digits[POW3[i]].astype(np.int64)
            if f3_rank(np.array(rows + [cand])) > len(rows):
                rows.append(cand)
                picked.append(POW3[i])
        if len(rows) != ctx.n:
            raise InternalInconsistencyError("could not complete basis")
        return Subspace.from_basis(ctx, picked, kind="complement")


def d1(f: TernaryFn, c: int) -> TernaryFn:
    """First derivative D_c f(x) = f(x+c) - f(x)."""
    ctx = f.ctx
    t = (f.table[ctx.translate_perm(c)].astype(np.int16) - f.table) % 3
    return TernaryFn(ctx, t.astype(np.uint8))


def d2(f: TernaryFn, c: int, d: int) -> TernaryFn:
    """Second derivative D_{c,d} f."""
    ctx = f.ctx
    tcd = ctx.translate_perm(ctx.add(c, d))
    tc = ctx.translate_perm(c)
    td = ctx.translate_perm(d)
    t = (f.table[tcd].astype(np.int16) - f.table[tc] - f.table[td]
         + f.table) % 3
    return TernaryFn(ctx, t.astype(np.uint8))


def _coset_grid(f: TernaryFn, V: Subspace, W: Subspace):
    """Value grid vals[t, s] = f(V.elements[t] + W.elements[s])."""
    ctx = f.ctx
    dv = ctx.digits[V.elements]
    dw = ctx.digits[W.elements]
    pts = ctx.pack((dv[:, None, :].astype(np.int64) + dw[None, :, :]) % 3)
    return f.table[pts].astype(np.int16), pts


def d2_vanishes_on(f: TernaryFn, V: Subspace, W: Subspace | None = None,
                   max_failures: int = 10):
    """True iff D_{c,d} f == 0 for all c, d in V.

    Tested as: f is affine on every coset w + V, w in a supplement W.
    Returns (ok, transcript lines); on failure the transcript carries the
    first few non-affine cosets and one explicit (c, d, x) witness.
    """
    ctx = f.ctx
    if W is None:
        W = V.complement()
    if V.dim + W.dim != ctx.n:
        raise FieldError(f"dim V + dim W = {V.dim}+{W.dim} != n = {ctx.n}")
    stacked = ctx.digits[np.array(V.basis + W.basis, dtype=np.int64)]
    if f3_rank(stacked) != ctx.n:
        raise FieldError("W does not complement V")
    vals, _ = _coset_grid(f, V, W)
    base = vals[0]
    m = V.dim
    # interpolation from the basis offsets: affine iff it reproduces the grid
    slopes = np.empty((m, vals.shape[1]), dtype=np.int16)
    for i in range(m):
        slopes[i] = vals[POW3[i]] - base
    tdig = _counter_digits(m).astype(np.int16)
    pred = (base[None, :] + tdig @ slopes) % 3
    good = np.array_equal(pred, vals % 3)
    if good:
        return True, [f"CHECK second-derivatives-vanish PASS "
                      f"({POW3[V.dim]**2} pairs via {vals.shape[1]} cosets)"]
    lines = []
    bad_t, bad_s = np.nonzero(pred != vals % 3)
    for t, s in list(zip(bad_t, bad_s))[:max_failures]:
        lines.append(
            f"CHECK second-derivatives-vanish FAIL coset w={int(W.elements[s])} "
            f"offset v={int(V.elements[t])}: f={int(vals[t, s]) % 3} "
            f"affine-prediction={int(pred[t, s])}")
    # explicit pair witness at the first failing coset
    wbase = int(W.elements[bad_s[0]])
    velems = V.elements
    shifted = ctx.add_vec(velems, wbase)
    uvals = f.table[shifted].astype(np.int16)
    pairs = f.table[ctx.add_vec(shifted[:, None], velems[None, :])]
    dmat = (pairs - uvals[:, None] - uvals[None, :] + int(f.table[wbase])) % 3
    ci, di = np.nonzero(dmat)
    c, d = int(velems[ci[0]]), int(velems[di[0]])
    lines.append(f"WITNESS d2 c={c} d={d} x={wbase} "
                 f"D_cd_f={int(dmat[ci[0], di[0]])}")
    return False, lines


def _extract_decomposition(f: TernaryFn, V: Subspace, W: Subspace,
                           into: Subspace):
    """Solve f(v + w) = Tr(v pi(w)) + g(w) with pi(w) in `into`.

    Assumes f is affine on the cosets w + V.  Returns (pi, g, ok_repro):
    pi, g are arrays indexed like W.elements; ok_repro is the full
    re-evaluation check over the whole field.
    """
    ctx = f.ctx
    m = V.dim
    # pairing P[i, j] = Tr(v_i u_j) for the solve basis u_j of `into`
    P = np.empty((m, into.dim), dtype=np.int64)
    for i, vb in enumerate(V.basis):
        for j, ub in enumerate(into.basis):
            P[i, j] = ctx.trace_abs(ctx.mul(vb, ub))
    if P.shape[0] != P.shape[1] or f3_rank(P) != m:
        return None, None, False
    from .gf import f3_inv
    Pinv = f3_inv(P)
    vals, _ = _coset_grid(f, V, W)
    g = vals[0] % 3                           # f(w)
    L = np.empty((m, vals.shape[1]), dtype=np.int64)
    for i in range(m):
        L[i] = (vals[POW3[i]] - g) % 3        # f(v_i + w) - f(w)
    T = (Pinv @ L) % 3                        # into-coordinates of pi(w)
    rows = ctx.digits[np.array(into.basis, dtype=np.int64)].astype(np.int64)
    pi = ctx.pack((T.T @ rows) % 3)
    # full reproduction check: Tr(v pi(w)) + g(w) == f(v + w) everywhere
    tr = ctx.trace1[ctx.mul_vec(V.elements[:, None], pi[None, :])]
    pred = (tr.astype(np.int16) + g[None, :]) % 3
    return pi, g, bool(np.array_equal(pred, vals % 3))


@dataclass
class MMWitness:
    """Explicit completed-MM data: f(v+w) = Tr(v pi(w)) + g(w).

    pi and g are indexed by the enumeration order of w_elements (= the
    elements of the supplement W used in the check); mode records which
    criterion produced it.
    """
    V: Subspace
    W: Subspace
    pi: np.ndarray
    g: np.ndarray
    mode: str

    @property
    def w_elements(self) -> np.ndarray:
        return self.W.elements


def check_mm_regular(f: TernaryFn, V: Subspace):
    """Sufficient criterion: V-orthogonal supplementary, second derivatives
    vanish on V, first derivatives balanced.  On success f is regular bent;
    returns (ok, MMWitness | None, transcript)."""
    ctx = f.ctx
    if 2 * V.dim != ctx.n:
        raise FieldError(f"V must have dimension n/2 = {ctx.n // 2}, "
                         f"got {V.dim}")
    lines = []
    Vp = V.orthogonal()
    stacked = ctx.digits[np.array(V.basis + Vp.basis, dtype=np.int64)]
    supp = Vp.dim == V.dim and f3_rank(stacked) == ctx.n
    if not supp:
        lines.append("CHECK orthogonal-supplementary FAIL "
                     f"dim(V-perp)={Vp.dim}, V intersects it")
        return False, None, lines
    lines.append("CHECK orthogonal-supplementary PASS")
    ok2, l2 = d2_vanishes_on(f, V, Vp)
    lines += l2
    if not ok2:
        return False, None, lines
    third = ctx.q // 3
    for c in V.elements[1:]:
        diff = (f.table[ctx.translate_perm(int(c))].astype(np.int16)
                - f.table) % 3
        cnt = np.bincount(diff.astype(np.int64), minlength=3)
        if not (cnt[0] == third and cnt[1] == third and cnt[2] == third):
            lines.append(f"CHECK first-derivatives-balanced FAIL c={int(c)} "
                         f"counts={cnt.tolist()}")
            return False, None, lines
    lines.append(f"CHECK first-derivatives-balanced PASS "
                 f"({V.elements.size - 1} directions)")
    pi, g, repro = _extract_decomposition(f, V, Vp, into=V)
    if pi is None or not repro:
        lines.append("CHECK mm-decomposition FAIL "
                     "(could not reproduce f from Tr(v pi(w)) + g(w))")
        return False, None, lines
    onto = set(int(x) for x in pi)
    if len(onto) != pi.size or not onto <= V._element_set:
        lines.append("CHECK mm-decomposition FAIL pi is not a bijection "
                     "onto V")
        return False, None, lines
    lines.append("CHECK mm-decomposition PASS pi bijects V-perp onto V")
    return True, MMWitness(V, Vp, pi, g, mode="regular"), lines


def check_mm_self_orthogonal(f: TernaryFn, V: Subspace, W: Subspace):
    """Variant for self-orthogonal V (the regular criterion's
    supplementarity is then impossible): W explicit supplement, second
    derivatives vanish, extracted pi a permutation of W."""
    ctx = f.ctx
    if 2 * V.dim != ctx.n:
        raise FieldError(f"V must have dimension n/2 = {ctx.n // 2}, "
                         f"got {V.dim}")
    if not V.is_self_orthogonal():
        raise FieldError("V is not self-orthogonal; use check_mm_regular")
    if V.dim + W.dim != ctx.n or f3_rank(
            ctx.digits[np.array(V.basis + W.basis, dtype=np.int64)]) != ctx.n:
        raise FieldError("W is not supplementary to V")
    lines = ["CHECK self-orthogonal PASS", "CHECK supplement PASS"]
    ok2, l2 = d2_vanishes_on(f, V, W)
    lines += l2
    if not ok2:
        return False, None, lines
    pi, g, repro = _extract_decomposition(f, V, W, into=W)
    if pi is None:
        lines.append("CHECK mm-decomposition FAIL degenerate pairing "
                     "Tr(v_i w_j)")
        return False, None, lines
    if not repro:
        lines.append("CHECK mm-decomposition FAIL "
                     "(could not reproduce f from Tr(v pi(w)) + g(w))")
        return False, None, lines
    onto = set(int(x) for x in pi)
    if len(onto) != pi.size or not onto <= W._element_set:
        lines.append("CHECK pi-permutation FAIL pi does not permute W")
        return False, None, lines
    lines.append("CHECK pi-permutation PASS pi permutes W")
    return True, MMWitness(V, W, pi, g, mode="self-orthogonal"), lines


def check_completed_mm(f: TernaryFn, V: Subspace):
    """Class membership only (f already known bent): second derivatives
    vanish on the n/2-dimensional V."""
    ctx = f.ctx
    if 2 * V.dim != ctx.n:
        raise FieldError(f"V must have dimension n/2 = {ctx.n // 2}, "
                         f"got {V.dim}")
    return d2_vanishes_on(f, V)


# ----------------------------------------------------------------------
# family-specific subspaces

def binomial_subspace(ctx: FieldCtx, k: int, a1: int, sign: str = "+"):
    """The 2k-dimensional coset c * GF(3^(2k)) the n=4k binomial family's
    second derivatives vanish on.  Exactly one of the two candidate cosets
    satisfies the defining cubic identity; picking it is part of the
    construction and double-checked here."""
    from .families import coeff_a2
    if ctx.n != 4 * k:
        raise FieldError(f"need n = 4k, got n={ctx.n}, k={k}")
    if a1 == 0 or ctx.is_square(a1):
        raise FieldError("a1 must be a nonsquare")
    a2 = coeff_a2(ctx, k, a1, sign)
    I = ctx.fourth_root_of_unity()
    Q = POW3[2 * k] - 1
    t_base = ctx.mul(I, ctx.pow(a2, POW3[k] * Q // 2))
    chosen = []
    for cand_sign in (1, -1):
        t = t_base if cand_sign == 1 else ctx.neg(t_base)
        c = ctx.solve_coset(2 * k, t)
        if c is None:
            raise InternalInconsistencyError(
                "coset equation unexpectedly unsolvable")
        # bracket of the defining identity:
        # a1 + a1^(3^k) c^(2(3^2k - 1)) + a2 c^(3^2k - 1) = 0
        br = ctx.add(
            ctx.add(a1, ctx.mul(ctx.frob(a1, k), ctx.pow(c, 2 * Q))),
            ctx.mul(a2, ctx.pow(c, Q)))
        if br == 0:
            chosen.append(c)
    if len(chosen) != 1:
        raise InternalInconsistencyError(
            f"{len(chosen)} candidate cosets satisfy the cubic identity, "
            f"expected exactly 1")
    c = chosen[0]
    V = Subspace.from_coset(ctx, c, 2 * k)
    # spot-check the trace identities on a sample of V
    sample = [int(x) for x in V.elements[1:17]]
    for cs in sample:
        if ctx.trace_rel(ctx.mul(a2, ctx.pow(cs, 2 * POW3[k])), 2 * k) != 0:
            raise InternalInconsistencyError("trace identity (a2) fails on V")
        if ctx.trace_rel(ctx.mul(a1, ctx.pow(cs, 2 * (POW3[k] + 1))),
                         2 * k) != 0:
            raise InternalInconsistencyError("trace identity (a1) fails on V")
        alt = ctx.add(
            ctx.add(ctx.neg(ctx.mul(ctx.frob(a1, k), ctx.pow(cs, Q))), a2),
            ctx.mul(ctx.frob(a2, k), ctx.pow(cs, (POW3[k] + 1) * Q)))
        if alt != 0:
            raise InternalInconsistencyError(
                "companion cubic identity fails on V")
    return V, a2


def trinomial_subspace(ctx: FieldCtx, k: int, sign: str = "+"):
    """The k-dimensional coset c * GF(3^k) for the n=2k trinomial family,
    with its coefficient triple (a1, a2, a3).  Self-orthogonal for odd k;
    orthogonal-supplementary for even k."""
    from .families import trinomial_coeffs
    if ctx.n != 2 * k or k <= 1:
        raise FieldError(f"need n = 2k with k > 1, got n={ctx.n}, k={k}")
    a1, a2, a3 = trinomial_coeffs(ctx, k, sign)
    t = ctx.mul(ctx.inv(a1), a2)
    c = ctx.solve_coset(k, t)
    if c is None:
        raise InternalInconsistencyError(
            "coset equation unexpectedly unsolvable")
    V = Subspace.from_coset(ctx, c, k)
    for cs in [int(x) for x in V.elements[1:17]]:
        if ctx.mul(a1, ctx.pow(cs, POW3[k] - 1)) != a2:
            raise InternalInconsistencyError("defining identity fails on V")
        for coef, e in ((a1, 2), (a2, 4), (a3, 2)):
            if ctx.trace_rel(ctx.mul(coef, ctx.pow(cs, e)), k) != 0:
                raise InternalInconsistencyError(
                    "trace identity fails on V")
    if any(ctx.in_subfield(int(x), k) for x in V.elements[1:]):
        raise InternalInconsistencyError("V meets the base subfield")
    return V, (a1, a2, a3)

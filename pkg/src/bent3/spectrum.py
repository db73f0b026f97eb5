"""Ternary functions on GF(3^n) and their exact Walsh spectra.

S_f(b) = sum_x omega^(f(x) - Tr(bx)) is computed in Z[omega]: per output
coefficient only the three counts #{x : f(x) - Tr(bx) = j} matter, so
every value is exact.

spectrum_fast runs a radix-3 decimation over the additive group (Z/3)^n.
Writing b on the trace-dual basis beta* (Tr(beta_i beta*_j) = delta_ij)
turns Tr(bx) into the dot product <c, x> of coordinate vectors, so the
transform is n stages of 3-point butterflies on the (u, v) integer planes,
followed by one permutation back to canonical element indexing.  O(n 3^n)
integer ops, no rounding anywhere.
"""

from __future__ import annotations

import numpy as np

from .eisenstein import EisensteinInt
from .gf import POW3, FieldCtx, FieldError, f3_inv

__all__ = ["TernaryFn", "WalshSpectrum", "walsh_at", "spectrum_naive",
           "spectrum_fast", "dual_basis", "NAIVE_MAX_N"]

#: spectrum_naive is O(9^n); refuse past this without force
NAIVE_MAX_N = 8

# omega^j as (u, v): 1, omega, -1-omega
_WU = np.array([1, 0, -1], dtype=np.int64)
_WV = np.array([0, 1, -1], dtype=np.int64)


class TernaryFn:
    """f: GF(3^n) -> F3 as a value table indexed by packed elements.

    symbolic, when present, is the trace form [(a_i, d_i), ...] meaning
    f(x) = Tr(sum_i a_i x^(d_i)); the constructor re-evaluates it and
    rejects a mismatching table.
    """

    def __init__(self, ctx: FieldCtx, table, symbolic=None):
        table = np.ascontiguousarray(table, dtype=np.uint8)
        if table.shape != (ctx.q,):
            raise FieldError(
                f"table must have length {ctx.q}, got {table.shape}")
        if table.size and int(table.max()) > 2:
            raise FieldError("table values must lie in {0,1,2}")
        if symbolic is not None:
            symbolic = tuple((int(a), int(d)) for a, d in symbolic)
            if not np.array_equal(_table_from_terms(ctx, symbolic), table):
                raise FieldError("symbolic form disagrees with the table")
        self.ctx = ctx
        self.table = table
        self.symbolic = symbolic

    @classmethod
    def from_symbolic(cls, ctx: FieldCtx, terms) -> "TernaryFn":
        terms = tuple((int(a), int(d)) for a, d in terms)
        fn = cls.__new__(cls)
        fn.ctx = ctx
        fn.table = _table_from_terms(ctx, terms)
        fn.symbolic = terms
        return fn

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other):
        return (isinstance(other, TernaryFn) and self.ctx is other.ctx
                and np.array_equal(self.table, other.table))

    def __repr__(self):
        return f"TernaryFn(n={self.ctx.n}, symbolic={self.symbolic})"


def _table_from_terms(ctx: FieldCtx, terms) -> np.ndarray:
    """Evaluate Tr(sum a_i x^(d_i)) over the whole field via the exp table."""
    q, N = ctx.q, ctx.mult_order
    acc = np.zeros(q, dtype=np.int64)
    js = np.arange(N, dtype=np.int64)
    for a, d in terms:
        if d < 0:
            raise FieldError(f"negative exponent {d}")
        a = int(a)
        if a == 0:
            continue
        vals = np.zeros(q, dtype=np.int64)
        # x = g^j: a * x^d = g^(log a + d j); reduce d first to keep int64
        vals[ctx.exp] = ctx.exp[(int(ctx.log[a]) + (d % N) * js) % N]
        vals[0] = a if d == 0 else 0
        acc = ctx.add_vec(acc, vals)
    return ctx.trace1[acc]


class WalshSpectrum:
    """All 3^n Walsh coefficients, (u, v) planes of Z[omega] values."""

    def __init__(self, ctx: FieldCtx, u: np.ndarray, v: np.ndarray):
        self.ctx = ctx
        self.u = np.asarray(u, dtype=np.int64)
        self.v = np.asarray(v, dtype=np.int64)
        if self.u.shape != (ctx.q,) or self.v.shape != (ctx.q,):
            raise FieldError("coefficient arrays must have length 3^n")

    def __getitem__(self, b: int) -> EisensteinInt:
        return EisensteinInt(int(self.u[b]), int(self.v[b]))

    def __len__(self):
        return self.ctx.q

    def norms(self) -> np.ndarray:
        u, v = self.u, self.v
        return u * u - u * v + v * v

    def parseval_sum(self) -> int:
        return int(self.norms().sum())


def walsh_at(f: TernaryFn, b: int) -> EisensteinInt:
    """Single coefficient by direct counting: histogram of f(x) - Tr(bx)."""
    ctx = f.ctx
    if b == 0:
        diff = f.table
    else:
        diff = (f.table.astype(np.int64) - ctx.trace1[ctx.scale_perm(b)]) % 3
    c = np.bincount(diff, minlength=3)
    return EisensteinInt.from_counts(int(c[0]), int(c[1]), int(c[2]))


def spectrum_naive(f: TernaryFn, force: bool = False) -> WalshSpectrum:
    """O(9^n) reference transform; the oracle spectrum_fast is tested against."""
    ctx = f.ctx
    if ctx.n > NAIVE_MAX_N and not force:
        raise FieldError(
            f"spectrum_naive is O(9^n) and n={ctx.n} > {NAIVE_MAX_N}; "
            f"pass force=True if you really want it")
    q, N = ctx.q, ctx.mult_order
    u = np.empty(q, dtype=np.int64)
    v = np.empty(q, dtype=np.int64)
    c = np.bincount(f.table, minlength=3)
    u[0], v[0] = c[0] - c[2], c[1] - c[2]
    f_exp = f.table[ctx.exp].astype(np.int64)
    tr2 = np.concatenate([ctx.trace1[ctx.exp], ctx.trace1[ctx.exp]]).astype(np.int64)
    f0 = int(f.table[0])
    for L in range(N):
        b = int(ctx.exp[L])
        # x = g^j: Tr(b x) = Tr(g^(L+j)), a cyclic shift of the trace line
        diff = (f_exp - tr2[L:L + N]) % 3
        cnt = np.bincount(diff, minlength=3)
        cnt[f0] += 1  # x = 0 contributes omega^f(0)
        u[b], v[b] = cnt[0] - cnt[2], cnt[1] - cnt[2]
    return WalshSpectrum(ctx, u, v)


def dual_basis(ctx: FieldCtx) -> list:
    """beta*_j with Tr(beta_i beta*_j) = delta_ij, beta_i = x^i."""
    return _dual_data(ctx)[0]


def _dual_data(ctx: FieldCtx):
    cached = getattr(ctx, "_dual_cache", None)
    if cached is not None:
        return cached
    n = ctx.n
    # Gram matrix G[i,j] = Tr(x^i x^j); x^(i+j) reduced in the packed domain
    G = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            G[i, j] = ctx.trace_abs(ctx._mul_poly(POW3[i], POW3[j]))
    Ginv = f3_inv(G)
    duals = []
    for j in range(n):
        acc = 0
        for i in range(n):
            c = int(Ginv[i, j])  # 0/1/2 are their own packed field constants
            if c:
                acc = ctx.add(acc, ctx.mul(c, POW3[i]))
        duals.append(acc)
    # b = sum_j c_j beta*_j: perm[c_packed] = b_packed
    B = ctx.digits[np.array(duals, dtype=np.int64)]  # rows: digits(beta*_j)
    perm = ctx.pack((ctx.digits.astype(np.int64) @ B.astype(np.int64)) % 3)
    data = (duals, perm)
    ctx._dual_cache = data
    return data


def _fwt3(U: np.ndarray, V: np.ndarray, n: int, inverse: bool = False):
    """In-place radix-3 transform of the omega-plane pair over (Z/3)^n."""
    q = U.size
    for t in range(n):
        w = 3**t
        u = U.reshape(q // (3 * w), 3, w)
        v = V.reshape(q // (3 * w), 3, w)
        u0 = u[:, 0].copy(); u1 = u[:, 1].copy(); u2 = u[:, 2].copy()
        v0 = v[:, 0].copy(); v1 = v[:, 1].copy(); v2 = v[:, 2].copy()
        u[:, 0] = u0 + u1 + u2
        v[:, 0] = v0 + v1 + v2
        if not inverse:
            # out1 = in0 + w^2 in1 + w in2 ; out2 = in0 + w in1 + w^2 in2
            u[:, 1] = u0 + (v1 - u1) - v2
            v[:, 1] = v0 - u1 + (u2 - v2)
            u[:, 2] = u0 - v1 + (v2 - u2)
            v[:, 2] = v0 + (u1 - v1) - u2
        else:
            u[:, 1] = u0 - v1 + (v2 - u2)
            v[:, 1] = v0 + (u1 - v1) - u2
            u[:, 2] = u0 + (v1 - u1) - v2
            v[:, 2] = v0 - u1 + (u2 - v2)


def spectrum_fast(f: TernaryFn) -> WalshSpectrum:
    """Full spectrum in O(n 3^n) exact integer butterflies."""
    ctx = f.ctx
    U = _WU[f.table].copy()
    V = _WV[f.table].copy()
    _fwt3(U, V, ctx.n)
    perm = _dual_data(ctx)[1]
    u = np.empty(ctx.q, dtype=np.int64)
    v = np.empty(ctx.q, dtype=np.int64)
    u[perm] = U
    v[perm] = V
    return WalshSpectrum(ctx, u, v)

"""Walsh spectra: exact transforms against a floating-point oracle.

The oracle computes S_f(b) = sum_x omega^(f(x) - Tr(bx)) in complex
arithmetic from scratch (its own omega, its own trace use), then the
exact Z[omega] coefficients are compared after rounding.  Fast and naive
transforms are additionally compared against each other bit for bit.
"""

import cmath
import math

import numpy as np
import pytest

from bent3 import (FieldError, TernaryFn, ctx_new, dual_basis,
                   spectrum_fast, spectrum_naive, walsh_at)
from bent3.spectrum import NAIVE_MAX_N

_W = cmath.exp(2j * math.pi / 3)


def oracle_spectrum(f):
    """O(9^n) complex-float transform, independent implementation."""
    ctx = f.ctx
    out = []
    for b in range(ctx.q):
        acc = 0j
        for x in range(ctx.q):
            e = (int(f.table[x]) - ctx.trace_abs(ctx.mul(b, x))) % 3
            acc += _W ** e
        out.append(acc)
    return out


def assert_matches_oracle(spec, oracle):
    for b, want in enumerate(oracle):
        got = spec[b].to_complex()
        assert abs(got - want) < 1e-6, b


def random_fn(ctx, rng):
    return TernaryFn(ctx, rng.integers(0, 3, size=ctx.q, dtype=np.uint8))


# ----------------------------------------------------------------------

def test_naive_matches_float_oracle_n2(ctx2, rng):
    for _ in range(10):
        f = random_fn(ctx2, rng)
        assert_matches_oracle(spectrum_naive(f), oracle_spectrum(f))


def test_fast_matches_float_oracle_n3(ctx3, rng):
    for _ in range(5):
        f = random_fn(ctx3, rng)
        assert_matches_oracle(spectrum_fast(f), oracle_spectrum(f))


def test_fast_matches_naive_n4(ctx4, rng):
    for _ in range(50):
        f = random_fn(ctx4, rng)
        a = spectrum_naive(f)
        b = spectrum_fast(f)
        assert np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v)


def test_fast_matches_naive_other_modulus(ctx4b, rng):
    for _ in range(10):
        f = random_fn(ctx4b, rng)
        a = spectrum_naive(f)
        b = spectrum_fast(f)
        assert np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v)


def test_walsh_at_agrees_pointwise(ctx3, rng):
    f = random_fn(ctx3, rng)
    spec = spectrum_fast(f)
    for b in range(ctx3.q):
        assert walsh_at(f, b) == spec[b]


def test_parseval(ctx4, rng):
    for _ in range(20):
        f = random_fn(ctx4, rng)
        spec = spectrum_fast(f)
        assert spec.parseval_sum() == ctx4.q * ctx4.q
        assert int(spec.norms().sum()) == ctx4.q * ctx4.q


def test_delta_at_zero_counts_values(ctx4, rng):
    # S_f(0) = n0 + n1 w + n2 w^2 where n_j = #{x : f(x) = j}
    f = random_fn(ctx4, rng)
    s0 = spectrum_fast(f)[0]
    counts = np.bincount(f.table, minlength=3)
    assert s0.u == counts[0] - counts[2]
    assert s0.v == counts[1] - counts[2]


def test_affine_function_spectrum(ctx4):
    # f(x) = Tr(cx) + e concentrates the spectrum on the single point c
    c, e = 7, 2
    table = (ctx4.trace1[ctx4.scale_perm(c)].astype(np.int64) + e) % 3
    f = TernaryFn(ctx4, table.astype(np.uint8))
    spec = spectrum_fast(f)
    norms = spec.norms()
    # the character sum hits q * omega^e exactly at b = c
    assert norms[c] == ctx4.q * ctx4.q
    others = np.delete(norms, c)
    assert not others.any()


def test_constant_shift_scales_by_omega(ctx4, rng):
    f = random_fn(ctx4, rng)
    g = TernaryFn(ctx4, (f.table.astype(np.int64) + 1) % 3)
    sf, sg = spectrum_fast(f), spectrum_fast(g)
    for b in (0, 1, 40, 80):
        assert sg[b] == sf[b].mul_omega()


def test_symbolic_construction(ctx4):
    # table evaluation of Tr(a x^d) matches scalar arithmetic
    g = ctx4.generator
    a, d = ctx4.pow(g, 7), 10
    f = TernaryFn.from_symbolic(ctx4, [(a, d)])
    for x in (0, 1, 5, 44, 80):
        assert f(x) == ctx4.trace_abs(ctx4.mul(a, ctx4.pow(x, d)))
    assert f.symbolic == ((a, d),)
    # constant term: d = 0 contributes Tr(a)
    fc = TernaryFn.from_symbolic(ctx4, [(a, 0)])
    assert all(v == ctx4.trace_abs(a) for v in fc.table)


def test_table_validation(ctx4):
    with pytest.raises(FieldError):
        TernaryFn(ctx4, np.zeros(5, dtype=np.uint8))
    with pytest.raises(FieldError):
        TernaryFn(ctx4, np.full(ctx4.q, 3, dtype=np.uint8))
    # symbolic form that contradicts the table is rejected
    f = TernaryFn.from_symbolic(ctx4, [(1, 2)])
    with pytest.raises(FieldError):
        TernaryFn(ctx4, (f.table + 1) % 3, symbolic=[(1, 2)])


def test_naive_cap():
    ctx = ctx_new(9)
    f = TernaryFn(ctx, np.zeros(ctx.q, dtype=np.uint8))
    assert NAIVE_MAX_N == 8
    with pytest.raises(FieldError, match="force"):
        spectrum_naive(f)


def test_dual_basis_is_trace_dual(ctx4):
    duals = dual_basis(ctx4)
    assert len(duals) == 4
    for i in range(4):
        for j in range(4):
            want = 1 if i == j else 0
            got = ctx4.trace_abs(ctx4.mul(3**i, duals[j]))
            assert got == want, (i, j)


def test_dual_basis_other_modulus(ctx4b):
    duals = dual_basis(ctx4b)
    for i in range(4):
        for j in range(4):
            assert ctx4b.trace_abs(ctx4b.mul(3**i, duals[j])) == \
                (1 if i == j else 0)


def test_spectrum_shape_checks(ctx4):
    from bent3 import WalshSpectrum
    with pytest.raises(FieldError):
        WalshSpectrum(ctx4, np.zeros(3), np.zeros(3))

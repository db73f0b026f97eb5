"""GF(3^n) arithmetic against independent textbook oracles.

Multiplication is cross-checked with a schoolbook polynomial multiply +
long division written here (no shared code with the library's table
construction).  Structural facts (generator order, trace surjectivity,
square classification) are checked against their definitions.
"""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bent3 import (FieldError, InternalInconsistencyError, ctx_new,
                   default_modulus, format_elem, format_modulus,
                   format_trits, parse_elem, parse_modulus)
from bent3.gf import f3_inv, f3_kernel, f3_rank, f3_rref, f3_solve


# ----------------------------------------------------------------------
# independent oracle: schoolbook arithmetic on digit tuples

def digits_of(x, n):
    out = []
    for _ in range(n):
        out.append(x % 3)
        x //= 3
    return out


def pack_digits(ds):
    out = 0
    for d in reversed(ds):
        out = out * 3 + d
    return out


def poly_mulmod(x, y, modulus, n):
    a, b = digits_of(x, n), digits_of(y, n)
    prod = [0] * (2 * n - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            prod[i + j] = (prod[i + j] + ca * cb) % 3
    # long division by the monic modulus
    for i in range(len(prod) - 1, n - 1, -1):
        c = prod[i]
        if c:
            for j, m in enumerate(modulus):
                prod[i - n + j] = (prod[i - n + j] - c * m) % 3
    return pack_digits(prod[:n])


# ----------------------------------------------------------------------
# construction

def test_default_modulus_frozen_values():
    assert default_modulus(1) == (0, 1)
    assert default_modulus(2) == (1, 0, 1)
    assert default_modulus(3) == (1, 2, 0, 1)
    assert default_modulus(4) == (2, 1, 0, 0, 1)


def test_default_modulus_cubic_has_no_roots():
    coeffs = default_modulus(3)
    for x in range(3):
        assert sum(c * x**i for i, c in enumerate(coeffs)) % 3 != 0


def test_reducible_modulus_rejected():
    # x^2 + 2x + 1 = (x+1)^2
    with pytest.raises(FieldError, match="reducible"):
        ctx_new(2, (1, 2, 1))
    # x^4 + x^2 = x^2 (x^2 + 1): non-monic and wrong length also rejected
    with pytest.raises(FieldError, match="monic"):
        ctx_new(2, (1, 0, 2))
    with pytest.raises(FieldError, match="coefficients"):
        ctx_new(2, (1, 0, 0, 1))


def test_cap_enforced(monkeypatch):
    with pytest.raises(FieldError, match="cap"):
        ctx_new(15)
    monkeypatch.setenv("BENT3_MAX_N", "3")
    with pytest.raises(FieldError, match="cap"):
        ctx_new(4)
    monkeypatch.setenv("BENT3_MAX_N", "junk")
    with pytest.raises(FieldError, match="BENT3_MAX_N"):
        ctx_new(4)
    # explicit max_n wins over the environment
    monkeypatch.setenv("BENT3_MAX_N", "3")
    assert ctx_new(4, max_n=4).n == 4


def test_bad_n():
    with pytest.raises(FieldError):
        ctx_new(0)


# ----------------------------------------------------------------------
# multiplicative structure

def test_exp_log_bijection(ctx4):
    N = ctx4.mult_order
    assert sorted(int(v) for v in ctx4.exp) == sorted(range(1, ctx4.q))
    assert all(int(ctx4.log[ctx4.exp[i]]) == i for i in range(N))


def test_generator_has_full_order(ctx6):
    g, N = ctx6.generator, ctx6.mult_order
    assert ctx6.pow(g, N) == 1
    for p in (2, 7, 13):  # 3^6 - 1 = 728 = 2^3 * 7 * 13
        assert N % p == 0
        assert ctx6.pow(g, N // p) != 1


def test_generator_deterministic_smallest(ctx4):
    # ascending search: no packed value below the generator is primitive
    for cand in range(2, ctx4.generator):
        seen = {1}
        x = cand
        while x != 1:
            x = ctx4.mul(x, cand)
            seen.add(x)
        assert len(seen) < ctx4.mult_order


@settings(max_examples=200)
@given(st.integers(0, 3**4 - 1), st.integers(0, 3**4 - 1))
def test_mul_matches_schoolbook_n4(ctx4, x, y):
    assert ctx4.mul(x, y) == poly_mulmod(x, y, ctx4.modulus, 4)


@settings(max_examples=100)
@given(st.integers(0, 3**6 - 1), st.integers(0, 3**6 - 1))
def test_mul_matches_schoolbook_n6(ctx6, x, y):
    assert ctx6.mul(x, y) == poly_mulmod(x, y, ctx6.modulus, 6)


@settings(max_examples=100)
@given(st.integers(0, 3**4 - 1), st.integers(0, 3**4 - 1))
def test_mul_matches_schoolbook_other_modulus(ctx4b, x, y):
    assert ctx4b.mul(x, y) == poly_mulmod(x, y, ctx4b.modulus, 4)


def test_field_axioms_exhaustive_n2(ctx2):
    els = range(ctx2.q)
    for x in els:
        assert ctx2.add(x, 0) == x and ctx2.mul(x, 1) == x
        assert ctx2.add(x, ctx2.neg(x)) == 0
        if x:
            assert ctx2.mul(x, ctx2.inv(x)) == 1
        for y in els:
            assert ctx2.add(x, y) == ctx2.add(y, x)
            assert ctx2.mul(x, y) == ctx2.mul(y, x)
            for z in els:
                assert ctx2.mul(x, ctx2.add(y, z)) == \
                    ctx2.add(ctx2.mul(x, y), ctx2.mul(x, z))
                assert ctx2.add(ctx2.add(x, y), z) == \
                    ctx2.add(x, ctx2.add(y, z))
                assert ctx2.mul(ctx2.mul(x, y), z) == \
                    ctx2.mul(x, ctx2.mul(y, z))


@given(st.integers(0, 3**6 - 1), st.integers(-300, 300))
def test_pow_matches_repeated_mul(ctx6, x, e):
    if x == 0 and e < 0:
        with pytest.raises(FieldError):
            ctx6.pow(x, e)
        return
    acc = 1
    for _ in range(abs(e)):
        acc = ctx6.mul(acc, x)
    if e < 0:
        if acc == 0:
            return
        acc = ctx6.inv(acc)
    assert ctx6.pow(x, e) == acc


def test_zero_division(ctx4):
    with pytest.raises(FieldError):
        ctx4.inv(0)
    assert ctx4.pow(0, 0) == 1
    assert ctx4.pow(0, 5) == 0
    with pytest.raises(FieldError):
        ctx4.pow(0, -1)
    with pytest.raises(FieldError):
        ctx4.is_square(0)


def test_frobenius_is_cube(ctx6):
    for x in (0, 1, 5, 100, 700):
        assert ctx6.frob(x) == ctx6.mul(x, ctx6.mul(x, x))
        assert ctx6.frob(x, 3) == ctx6.pow(x, 27)
    # Frobenius of order n: x^(3^n) = x
    for x in (2, 17, 299):
        assert ctx6.frob(x, 6) == x


def test_frobenius_additive(ctx4):
    for x in range(0, ctx4.q, 7):
        for y in range(0, ctx4.q, 11):
            assert ctx4.frob(ctx4.add(x, y)) == \
                ctx4.add(ctx4.frob(x), ctx4.frob(y))


# ----------------------------------------------------------------------
# trace

def test_trace_from_conjugates(ctx4):
    for x in range(ctx4.q):
        acc = 0
        for i in range(4):
            acc = ctx4.add(acc, ctx4.frob(x, i))
        assert acc < 3  # lands in the prime field
        assert ctx4.trace_abs(x) == acc


def test_trace_balanced(ctx6):
    counts = np.bincount(ctx6.trace1, minlength=3)
    assert list(counts) == [ctx6.q // 3] * 3


def test_trace_linear_frobenius_invariant(ctx6):
    for x in (5, 19, 341, 700):
        for y in (3, 88, 512):
            assert ctx6.trace_abs(ctx6.add(x, y)) == \
                (ctx6.trace_abs(x) + ctx6.trace_abs(y)) % 3
        assert ctx6.trace_abs(ctx6.frob(x)) == ctx6.trace_abs(x)


def test_trace_rel_tower(ctx6):
    # Tr_k of the relative trace equals the absolute trace (k = 2, 3)
    for k in (2, 3):
        sub = set(int(v) for v in ctx6.subfield_elements(k))
        for x in (0, 1, 7, 450, 728):
            t = ctx6.trace_rel(x, k)
            assert t in sub
            acc = 0
            for i in range(k):
                acc = ctx6.add(acc, ctx6.frob(t, i))
            assert acc == ctx6.trace_abs(x)
    with pytest.raises(FieldError):
        ctx6.trace_rel(1, 4)


def test_squares_match_euler_criterion(ctx4):
    half = ctx4.mult_order // 2
    for x in range(1, ctx4.q):
        assert ctx4.is_square(x) == (ctx4.pow(x, half) == 1)


def test_fourth_root_of_unity(ctx4, ctx3):
    i4 = ctx4.fourth_root_of_unity()
    assert ctx4.mul(i4, i4) == ctx4.neg(1)
    with pytest.raises(FieldError):
        ctx3.fourth_root_of_unity()


def test_solve_coset(ctx4):
    # c^(3^m - 1) = t solvable iff gcd(3^m - 1, 3^n - 1) divides log t
    for m in (1, 2):
        d = 3**m - 1
        sol_count = 0
        for lt in range(ctx4.mult_order):
            t = int(ctx4.exp[lt])
            c = ctx4.solve_coset(m, t)
            if lt % np.gcd(d, ctx4.mult_order) == 0:
                assert c is not None
                assert ctx4.pow(c, d) == t
                sol_count += 1
            else:
                assert c is None
        assert sol_count == ctx4.mult_order // np.gcd(d, ctx4.mult_order)
    with pytest.raises(FieldError):
        ctx4.solve_coset(2, 0)
    with pytest.raises(FieldError):
        ctx4.solve_coset(3, 1)


# ----------------------------------------------------------------------
# subfields

def test_subfield_structure(ctx6):
    for m in (1, 2, 3):
        els = ctx6.subfield_elements(m)
        assert len(els) == 3**m
        s = set(int(v) for v in els)
        # closed under + and *, fixed by x -> x^(3^m)
        sample = sorted(s)[:10]
        for x in sample:
            assert ctx6.frob(x, m) == x
            assert ctx6.in_subfield(x, m)
            for y in sample:
                assert ctx6.add(x, y) in s
                assert ctx6.mul(x, y) in s
        # basis spans: m independent digit rows
        basis = ctx6.subfield_basis(m)
        assert len(basis) == m
        assert f3_rank(ctx6.digits[np.array(basis)].astype(np.int64)) == m
    assert not ctx6.in_subfield(ctx6.generator, 3)
    with pytest.raises(FieldError):
        ctx6.subfield_elements(4)


def test_prime_subfield_is_constants(ctx4):
    assert sorted(int(v) for v in ctx4.subfield_elements(1)) == [0, 1, 2]


# ----------------------------------------------------------------------
# bulk operations agree with scalar ones

def test_bulk_ops_match_scalar(ctx4, rng):
    xs = rng.integers(0, ctx4.q, size=200)
    ys = rng.integers(0, ctx4.q, size=200)
    add = ctx4.add_vec(xs, ys)
    mul = ctx4.mul_vec(xs, ys)
    neg = ctx4.neg_vec(xs)
    p5 = ctx4.pow_vec(xs, 5)
    tr = ctx4.trace_vec(xs)
    for i in range(len(xs)):
        x, y = int(xs[i]), int(ys[i])
        assert int(add[i]) == ctx4.add(x, y)
        assert int(mul[i]) == ctx4.mul(x, y)
        assert int(neg[i]) == ctx4.neg(x)
        assert int(p5[i]) == ctx4.pow(x, 5)
        assert int(tr[i]) == ctx4.trace_abs(x)


def test_pow_vec_edges(ctx4):
    xs = np.array([0, 1, 5, 0])
    assert list(ctx4.pow_vec(xs, 0)) == [1, 1, 1, 1]
    with pytest.raises(FieldError):
        ctx4.pow_vec(xs, -2)
    inv = ctx4.pow_vec(np.array([1, 5, 9]), -1)
    assert [int(v) for v in inv] == [1, ctx4.inv(5), ctx4.inv(9)]


def test_perms(ctx4):
    c = 17
    tp = ctx4.translate_perm(c)
    sp = ctx4.scale_perm(c)
    assert sorted(int(v) for v in tp) == list(range(ctx4.q))
    for x in (0, 1, 33, 80):
        assert int(tp[x]) == ctx4.add(x, c)
        assert int(sp[x]) == ctx4.mul(c, x)
    assert int(ctx4.scale_perm(0)[5]) == 0


def test_digits_pack_roundtrip(ctx6):
    assert np.array_equal(ctx6.pack(ctx6.digits), np.arange(ctx6.q))


# ----------------------------------------------------------------------
# literals

def test_elem_literals(ctx4):
    g = ctx4.generator
    assert parse_elem(ctx4, "g^0") == 1
    assert parse_elem(ctx4, "g^1") == g
    assert parse_elem(ctx4, "g^81") == ctx4.pow(g, 81)
    assert parse_elem(ctx4, "0") == 0
    assert parse_elem(ctx4, "t:1200") == 1 + 2 * 3
    for x in (0, 1, 5, 80):
        assert parse_elem(ctx4, format_elem(ctx4, x)) == x
        assert parse_elem(ctx4, format_trits(ctx4, x)) == x
    for bad in ("g^x", "t:12", "t:1234", "q", ""):
        with pytest.raises(FieldError):
            parse_elem(ctx4, bad)


def test_modulus_literals():
    assert parse_modulus("2,1,0,0,1") == (2, 1, 0, 0, 1)
    assert format_modulus((1, 0, 1)) == "1,0,1"
    assert parse_modulus(format_modulus(default_modulus(6))) == \
        default_modulus(6)
    with pytest.raises(FieldError):
        parse_modulus("1,x,1")
    with pytest.raises(FieldError):
        parse_modulus("1,0,1", n=4)


# ----------------------------------------------------------------------
# dense mod-3 linear algebra

def test_f3_rref_and_rank():
    M = np.array([[1, 2, 0], [2, 1, 0], [0, 0, 1]])
    R, piv = f3_rref(M)
    assert piv == [0, 2]  # row2 = 2*row1 mod 3
    assert f3_rank(M) == 2
    assert f3_rank(np.eye(4, dtype=int)) == 4


def test_f3_inv(rng):
    for _ in range(20):
        M = rng.integers(0, 3, size=(5, 5))
        if f3_rank(M) < 5:
            with pytest.raises(FieldError):
                f3_inv(M)
            continue
        Mi = f3_inv(M)
        assert np.array_equal((M @ Mi) % 3, np.eye(5, dtype=np.int64))


def test_f3_solve_and_kernel(rng):
    for _ in range(20):
        M = rng.integers(0, 3, size=(4, 6))
        K = f3_kernel(M)
        assert K.shape[0] == 6 - f3_rank(M)
        if K.size:
            assert not ((M @ K.T) % 3).any()
        x_true = rng.integers(0, 3, size=6)
        b = (M @ x_true) % 3
        x = f3_solve(M, b)
        assert x is not None
        assert np.array_equal((M @ x) % 3, b)
    # inconsistent system
    assert f3_solve(np.array([[1, 0], [2, 0]]), np.array([1, 1])) is None


def test_error_hierarchy():
    assert issubclass(FieldError, ValueError)
    assert issubclass(InternalInconsistencyError, RuntimeError)

"""Constructions of ternary bent functions and their formal expansions.

Univariate families (all written f(x) = Tr_n(sum a_i x^(d_i))):

* binomial-general, n = 4k: a1 any nonsquare, a2 the matched coefficient
  produced by coeff_a2 (sign arbitrary); exponents 2(3^k+1), (3^k+1)^2.
  Regular bent of degree 4, completed Maiorana-McFarland.
* binomial-k3mod4, n = 4k, k = 3 (mod 4): coefficients a, a^-1 for the
  root a of y^4 + y - 1 living in the embedded GF(81).  Its Walsh
  coefficients have the closed form implemented by walsh_closed_form.
* trinomial, n = 2k, k > 1, k not divisible by 4: exponents
  2*3^k+4, 3^k+5, 2 with coefficients from trinomial_coeffs.
* exceptional-*: binomial coefficient pairs (a, a^5), (a^5, a), (a^5, a^-5)
  for the order-16 root a of y^4 - y^2 - 1; their 4-variable forms are
  k-independent polynomials ("exceptional").
* baseline, n = 4k: Tr(x^(3^(3k) + 3^(2k) - 3^k + 1) + x^2), the known
  reference binomial this library's families are compared against.

For n = 4k the substitution x = x3 a^3 + x2 a^2 + x1 a + x0 with
x_i in GF(3^k) turns each family into a 4-variable polynomial over GF(3^k)
(multivariate_expand).  Because a lies in GF(81), the expansion only ever
computes in GF(81): x^(3^(jk)) is F3-linear in the x_i with coefficients
a^(i 3^(jk)), and 3^(jk) mod ord(a) depends on k mod 4 alone.  That makes
the k-invariance ("exceptionality") of the named families a finite,
mechanical check (exceptionality_check).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .eisenstein import EisensteinInt, omega_pow
from .gf import (POW3, FieldCtx, FieldError, InternalInconsistencyError,
                 ctx_new, f3_inv)
from .spectrum import TernaryFn

__all__ = ["FAMILIES", "coeff_a2", "trinomial_coeffs",
           "make_binomial_general", "make_binomial_k3mod4", "make_trinomial",
           "make_exceptional", "make_baseline", "make_family",
           "find_quartic_root", "quartic_coords", "walsh_closed_form",
           "MultivariatePoly", "multivariate_expand", "formal_expand",
           "table_from_multivariate", "exceptionality_check",
           "QUARTIC_PRIMITIVE", "QUARTIC_ORDER16"]

#: y^4 + y - 1 over F3; irreducible, its roots are primitive in GF(81)
QUARTIC_PRIMITIVE = (2, 1, 0, 0, 1)
#: y^4 - y^2 - 1 over F3; irreducible, its roots have order 16
QUARTIC_ORDER16 = (2, 0, 2, 0, 1)

FAMILIES = ("binomial-general", "binomial-k3mod4", "trinomial", "baseline",
            "exceptional-a-a5", "exceptional-a5-a", "exceptional-a5-ainv5")

_EXCEPTIONAL_VARIANTS = {
    # token -> (a1 exponent, a2 exponent, required k mod 4)
    "a-a5": (1, 5, 1),
    "a5-a": (5, 1, 3),
    "a5-ainv5": (5, -5, 1),
}


def _sign_value(sign) -> int:
    if sign in (1, -1):
        return int(sign)
    if sign in ("+", "plus"):
        return 1
    if sign in ("-", "minus"):
        return -1
    raise FieldError(f"bad sign {sign!r}: use '+' or '-'")


# ----------------------------------------------------------------------
# coefficients

def coeff_a2(ctx: FieldCtx, k: int, a1: int, sign="+") -> int:
    """Companion coefficient of the n=4k binomial family:

        a2 = +/- I^k a1^((3^k+1)/2) ((-1)^k a1^E + a1^-E),
        E = (3^k-1)(3^(2k)+1)/4,  I^2 = -1.

    a1 must be a nonsquare; a2 comes out a nonsquare as well (verified).
    """
    if ctx.n != 4 * k:
        raise FieldError(f"need n = 4k, got n={ctx.n}, k={k}")
    if a1 == 0 or ctx.is_square(a1):
        raise FieldError("a1 must be a nonsquare")
    s = _sign_value(sign)
    E = (POW3[k] - 1) * (POW3[2 * k] + 1) // 4
    t1 = ctx.pow(a1, E)
    if k % 2:
        t1 = ctx.neg(t1)
    bracket = ctx.add(t1, ctx.pow(a1, -E))
    I = ctx.fourth_root_of_unity()
    a2 = ctx.mul(ctx.mul(ctx.pow(I, k), ctx.pow(a1, (POW3[k] + 1) // 2)),
                 bracket)
    if s < 0:
        a2 = ctx.neg(a2)
    if a2 == 0 or ctx.is_square(a2):
        raise InternalInconsistencyError("a2 should be a nonsquare")
    return a2


def trinomial_coeffs(ctx: FieldCtx, k: int, sign="+"):
    """(a1, a2, a3) for the n=2k trinomial: a1 = a3 = 1, a2 = +/- I for odd
    k; a1 = g^(3^k+2), a3 = g, a2 = +/- I a1^(-(3^k-3)/2) for even k (the
    companion identity a2 = -/+ I a3^((3^k+5)/2) is re-verified)."""
    if ctx.n != 2 * k or k <= 1:
        raise FieldError(f"need n = 2k with k > 1, got n={ctx.n}, k={k}")
    s = _sign_value(sign)
    I = ctx.fourth_root_of_unity()
    if k % 2:
        a1, a3 = 1, 1
        a2 = I if s > 0 else ctx.neg(I)
    else:
        alpha = ctx.generator
        a1 = ctx.pow(alpha, POW3[k] + 2)
        a3 = alpha
        a2 = ctx.mul(I, ctx.pow(a1, -(POW3[k] - 3) // 2))
        if s < 0:
            a2 = ctx.neg(a2)
        companion = ctx.mul(I, ctx.pow(a3, (POW3[k] + 5) // 2))
        if s > 0:
            companion = ctx.neg(companion)
        if a2 != companion:
            raise InternalInconsistencyError(
                "trinomial coefficient identity fails for even k")
    return a1, a2, a3


# ----------------------------------------------------------------------
# constructors

def make_binomial_general(ctx: FieldCtx, k: int, a1: int,
                          sign="+") -> TernaryFn:
    a2 = coeff_a2(ctx, k, a1, sign)
    return TernaryFn.from_symbolic(
        ctx, [(a1, 2 * (POW3[k] + 1)), (a2, (POW3[k] + 1) ** 2)])


def make_binomial_k3mod4(ctx: FieldCtx, k: int) -> TernaryFn:
    """Coefficients (a, a^-1), a the primitive quartic root.  Proven bent
    for k = 3 (mod 4); other odd k are accepted with a warning (only the
    4-variable form is known bent there)."""
    if ctx.n != 4 * k or k % 2 == 0:
        raise FieldError(f"need n = 4k with k odd, got n={ctx.n}, k={k}")
    if k % 4 != 3:
        warnings.warn(
            f"k={k}: the univariate binomial is only established for "
            f"k = 3 (mod 4); proceeding anyway", stacklevel=2)
    a = find_quartic_root(ctx, QUARTIC_PRIMITIVE)
    return TernaryFn.from_symbolic(
        ctx, [(a, 2 * (POW3[k] + 1)), (ctx.inv(a), (POW3[k] + 1) ** 2)])


def make_trinomial(ctx: FieldCtx, k: int, sign="+") -> TernaryFn:
    if k % 4 == 0:
        raise FieldError(f"k={k} must not be divisible by 4")
    a1, a2, a3 = trinomial_coeffs(ctx, k, sign)
    return TernaryFn.from_symbolic(
        ctx, [(a1, 2 * POW3[k] + 4), (a2, POW3[k] + 5), (a3, 2)])


def make_exceptional(ctx: FieldCtx, k: int, variant: str) -> TernaryFn:
    """Binomial with coefficients built from the order-16 quartic root a:
    variant 'a-a5' is (a, a^5) for k = 1 (mod 4), 'a5-a' is (a^5, a) for
    k = 3 (mod 4), 'a5-ainv5' is (a^5, a^-5) for k = 1 (mod 4)."""
    if variant not in _EXCEPTIONAL_VARIANTS:
        raise FieldError(f"unknown variant {variant!r}; "
                         f"choose from {sorted(_EXCEPTIONAL_VARIANTS)}")
    e1, e2, kmod = _EXCEPTIONAL_VARIANTS[variant]
    if ctx.n != 4 * k or k % 2 == 0:
        raise FieldError(f"need n = 4k with k odd, got n={ctx.n}, k={k}")
    if k % 4 != kmod:
        raise FieldError(f"variant {variant!r} needs k = {kmod} (mod 4), "
                         f"got k={k}")
    a = find_quartic_root(ctx, QUARTIC_ORDER16)
    return TernaryFn.from_symbolic(
        ctx, [(ctx.pow(a, e1), 2 * (POW3[k] + 1)),
              (ctx.pow(a, e2), (POW3[k] + 1) ** 2)])


def make_baseline(ctx: FieldCtx, k: int) -> TernaryFn:
    if ctx.n != 4 * k:
        raise FieldError(f"need n = 4k, got n={ctx.n}, k={k}")
    d = POW3[3 * k] + POW3[2 * k] - POW3[k] + 1
    return TernaryFn.from_symbolic(ctx, [(1, d), (1, 2)])


def make_family(ctx: FieldCtx, family: str, k: int, a1: int | None = None,
                sign="+") -> TernaryFn:
    """Uniform constructor used by the command line."""
    if family == "binomial-general":
        if a1 is None:
            raise FieldError("binomial-general needs a1")
        return make_binomial_general(ctx, k, a1, sign)
    if family == "binomial-k3mod4":
        return make_binomial_k3mod4(ctx, k)
    if family == "trinomial":
        return make_trinomial(ctx, k, sign)
    if family == "baseline":
        return make_baseline(ctx, k)
    if family.startswith("exceptional-"):
        return make_exceptional(ctx, k, family[len("exceptional-"):])
    raise FieldError(f"unknown family {family!r}; choose from {FAMILIES}")


# ----------------------------------------------------------------------
# the embedded GF(81) and quartic-basis coordinates

def _family_cache(ctx: FieldCtx) -> dict:
    cache = getattr(ctx, "_families_cache", None)
    if cache is None:
        cache = {}
        ctx._families_cache = cache
    return cache


def find_quartic_root(ctx: FieldCtx, quartic) -> int:
    """Smallest packed root of the degree-4 polynomial inside the embedded
    GF(81); requires 4 | n."""
    quartic = tuple(int(c) % 3 for c in quartic)
    cache = _family_cache(ctx)
    key = ("root", quartic)
    if key in cache:
        return cache[key]
    if ctx.n % 4:
        raise FieldError(f"GF(3^{ctx.n}) has no GF(81) subfield")
    best = None
    for x in sorted(int(v) for v in ctx.subfield_elements(4)):
        acc = 0
        for c in reversed(quartic):
            acc = ctx.add(ctx.mul(acc, x), c)
        if acc == 0:
            best = x
            break
    if best is None:
        raise FieldError("polynomial has no root in the embedded GF(81)")
    cache[key] = best
    return best


def _quartic_basis_data(ctx: FieldCtx, a: int, k: int):
    """Inverse change-of-basis for x = sum_ij c_ij a^i gamma^j and the
    digit rows of the GF(3^k) basis gamma^j."""
    cache = _family_cache(ctx)
    key = ("basis", a, k)
    if key in cache:
        return cache[key]
    n = ctx.n
    gamma = ctx.subfield_basis(k)
    B = np.empty((n, n), dtype=np.int64)
    for i in range(4):
        ai = ctx.pow(a, i)
        for j in range(k):
            B[:, i * k + j] = ctx.digits[ctx.mul(ai, gamma[j])]
    Binv = f3_inv(B)
    gdig = ctx.digits[np.array(gamma, dtype=np.int64)].astype(np.int64)
    data = (Binv, gdig)
    cache[key] = data
    return data


def quartic_coords(ctx: FieldCtx, a: int, x: int, k: int):
    """(x0, x1, x2, x3) in GF(3^k) with x = x3 a^3 + x2 a^2 + x1 a + x0."""
    Binv, gdig = _quartic_basis_data(ctx, a, k)
    c = (Binv @ ctx.digits[int(x)].astype(np.int64)) % 3
    return tuple(int(ctx.pack((c[i * k:(i + 1) * k] @ gdig) % 3))
                 for i in range(4))


# ----------------------------------------------------------------------
# closed-form Walsh coefficients of binomial-k3mod4

def walsh_closed_form(ctx: FieldCtx, k: int, b: int) -> EisensteinInt:
    """Predicted S_f(b) = 3^(2k) omega^(f*(b)) for make_binomial_k3mod4.

    The derivation computes the transform with the opposite character
    sign, so the formula is evaluated at -b; with coordinates
    (b0..b3) = quartic_coords(-b) it branches on b0 + b2 = 0.
    """
    if ctx.n != 4 * k or k % 2 == 0:
        raise FieldError(f"need n = 4k with k odd, got n={ctx.n}, k={k}")
    a = find_quartic_root(ctx, QUARTIC_PRIMITIVE)
    b0, b1, b2, b3 = quartic_coords(ctx, a, ctx.neg(b), k)
    M = POW3[2 * k]
    s = ctx.add(b0, b2)
    cube_root = POW3[k - 1]  # y -> y^(1/3) on GF(3^k)
    if s == 0:
        y = ctx.mul(ctx.pow(ctx.sub(b0, b3), cube_root),
                    ctx.add(ctx.sub(b1, b0), b3))
        return omega_pow(ctx.trace_abs(y)) * M
    r = ctx.mul(ctx.sub(b3, b0), ctx.inv(s))
    t = ctx.mul(r, r)
    tp1 = ctx.add(t, 1)
    if tp1 == 0:
        raise InternalInconsistencyError("t = -1 needs -1 a square, "
                                         "impossible for odd k")
    x1 = ctx.neg(ctx.pow(ctx.mul(s, ctx.inv(tp1)), cube_root))
    x3 = ctx.mul(x1, ctx.sub(r, 1))
    x1sq = ctx.mul(x1, x1)
    x3sq = ctx.mul(x3, x3)
    h = ctx.add(ctx.mul(x3sq, x1sq), ctx.mul(x1, ctx.mul(x3sq, x3)))
    h = ctx.sub(h, ctx.mul(x3sq, x3sq))
    h = ctx.add(h, ctx.add(ctx.mul(x1, b3), ctx.mul(x3, b1)))
    return omega_pow(ctx.trace_abs(h)) * M


# ----------------------------------------------------------------------
# 4-variable expansions over GF(3^k)

@dataclass(frozen=True)
class MultivariatePoly:
    """sum of c * x0^e0 x1^e1 x2^e2 x3^e3 wrapped in Tr_k(.), c in {1, 2}.

    terms is a sorted tuple of ((e0, e1, e2, e3), c); two expansions with
    equal terms denote the same formal polynomial whatever k is.
    """
    k: int
    terms: tuple

    @classmethod
    def from_dict(cls, k: int, d: dict) -> "MultivariatePoly":
        terms = tuple(sorted((tuple(int(e) for e in mono), int(c))
                             for mono, c in d.items() if c % 3))
        return cls(k, terms)

    def terms_dict(self) -> dict:
        return {mono: c for mono, c in self.terms}

    def same_formula(self, other: "MultivariatePoly") -> bool:
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "Tr_k(0)"
        parts = []
        for mono, c in sorted(self.terms,
                              key=lambda t: (-sum(t[0]), t[0])):
            vs = "*".join(f"x{i}^{e}" if e > 1 else f"x{i}"
                          for i, e in enumerate(mono) if e)
            vs = vs or "1"
            parts.append(("- " if c == 2 else "+ ") + vs)
        joined = " ".join(parts)
        if joined.startswith("+ "):
            joined = joined[2:]
        return f"Tr_k({joined})"


@lru_cache(maxsize=None)
def _small_ctx(quartic) -> FieldCtx:
    ctx = ctx_new(4, quartic)
    # the residue class of y is packed 3 and must be a root by construction
    acc = 0
    for c in reversed(quartic):
        acc = ctx.add(ctx.mul(acc, 3), c)
    if acc != 0:
        raise InternalInconsistencyError("y is not a root of its modulus")
    return ctx


def _base_digits(d: int, k: int):
    """Base-3^k digits (e0..e3) of the exponent d < 3^(4k)."""
    if not 0 < d < POW3[4 * k]:
        raise FieldError(f"exponent {d} out of range for n=4k={4 * k}")
    base = POW3[k]
    digs = []
    while d:
        d, r = divmod(d, base)
        digs.append(r)
    digs += [0] * (4 - len(digs))
    if sum(digs) > 8:
        raise FieldError("exponent too dense for a low-degree expansion")
    return tuple(digs)


def _linear_forms(sctx: FieldCtx, k: int):
    """lf[j][i] = coefficient of x_i in x^(3^(jk)), an element of GF(81);
    depends on k only through 3^(jk) mod 80."""
    a = 3
    out = []
    for j in range(4):
        e3 = pow(3, j * k, sctx.mult_order)
        out.append(tuple(sctx.pow(a, i * e3) for i in range(4)))
    return out


def _poly_mul_linear(sctx: FieldCtx, poly: dict, lf) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        for i in range(4):
            if lf[i] == 0:
                continue
            nm = list(mono)
            nm[i] += 1
            nm = tuple(nm)
            out[nm] = sctx.add(out.get(nm, 0), sctx.mul(c, lf[i]))
    return {m: c for m, c in out.items() if c}


def _expand_small(sctx: FieldCtx, terms, k: int) -> MultivariatePoly:
    """terms: [(coefficient packed in the small field, exponent d)].
    Returns the Tr_k(.) polynomial in x0..x3 with F3 coefficients."""
    lfs = _linear_forms(sctx, k)
    acc: dict = {}
    for coef, d in terms:
        if coef == 0:
            continue
        poly = {(0, 0, 0, 0): int(coef)}
        for j, e in enumerate(_base_digits(d, k)):
            for _ in range(e):
                poly = _poly_mul_linear(sctx, poly, lfs[j])
        for mono, c in poly.items():
            acc[mono] = sctx.add(acc.get(mono, 0), c)
    out = {}
    for mono, c in acc.items():
        tr = 0
        for i in range(4):
            tr = sctx.add(tr, sctx.frob(c, (i * k) % 4))
        if tr >= 3:
            raise InternalInconsistencyError(
                "relative trace left the prime field (is k odd?)")
        if tr:
            out[mono] = tr
    return MultivariatePoly.from_dict(k, out)


_FORMAL_SPECS = {
    # family -> (quartic, [(root exponent, family exponent builder)], k check)
    "binomial-k3mod4": (QUARTIC_PRIMITIVE, (1, -1), 3),
    "exceptional-a-a5": (QUARTIC_ORDER16, (1, 5), 1),
    "exceptional-a5-a": (QUARTIC_ORDER16, (5, 1), 3),
    "exceptional-a5-ainv5": (QUARTIC_ORDER16, (5, -5), 1),
}


def formal_expand(family: str, k: int) -> MultivariatePoly:
    """4-variable form of a named family without building GF(3^4k):
    everything reduces into GF(81)."""
    if family not in _FORMAL_SPECS:
        raise FieldError(f"no formal expansion for {family!r}; "
                         f"choose from {sorted(_FORMAL_SPECS)}")
    quartic, (e1, e2), kmod = _FORMAL_SPECS[family]
    if k % 2 == 0 or k % 4 != kmod:
        raise FieldError(f"{family} needs k = {kmod} (mod 4), got {k}")
    sctx = _small_ctx(quartic)
    a = 3
    d1 = 2 * (POW3[k] + 1)
    d2 = (POW3[k] + 1) ** 2
    terms = [(sctx.pow(a, e1), d1), (sctx.pow(a, e2), d2)]
    return _expand_small(sctx, terms, k)


def exceptionality_check(family: str, k_list) -> bool:
    """True iff the family's 4-variable form is the same formal polynomial
    for every k in k_list."""
    polys = [formal_expand(family, k) for k in k_list]
    return all(p.same_formula(polys[0]) for p in polys[1:])


def multivariate_expand(f: TernaryFn, k: int,
                        quartic=QUARTIC_PRIMITIVE) -> MultivariatePoly:
    """Expand a symbolic f over GF(3^4k) into x0..x3 over GF(3^k).

    The trace-form coefficients must lie in the embedded GF(81) spanned by
    the given quartic's root; k must be odd so the relative traces land
    in F3.
    """
    ctx = f.ctx
    if ctx.n != 4 * k:
        raise FieldError(f"need n = 4k, got n={ctx.n}, k={k}")
    if k % 2 == 0:
        raise FieldError("k must be odd (coefficients leave F3 otherwise)")
    if f.symbolic is None:
        raise FieldError("need the symbolic trace form of f")
    quartic = tuple(int(c) % 3 for c in quartic)
    sctx = _small_ctx(quartic)
    a_big = find_quartic_root(ctx, quartic)
    # map coefficients through F3-coordinates on {1, a, a^2, a^3}
    A = np.empty((ctx.n, 4), dtype=np.int64)
    for i in range(4):
        A[:, i] = ctx.digits[ctx.pow(a_big, i)]
    from .gf import f3_solve
    terms_small = []
    for coef, d in f.symbolic:
        if coef == 0:
            continue
        sol = f3_solve(A, ctx.digits[int(coef)].astype(np.int64))
        if sol is None:
            raise FieldError(
                "coefficient does not lie in the embedded GF(81)")
        small = 0
        for i in range(4):
            if sol[i]:
                small = sctx.add(small, sctx.mul(int(sol[i]),
                                                 sctx.pow(3, i)))
        terms_small.append((small, d))
    return _expand_small(sctx, terms_small, k)


def table_from_multivariate(ctx: FieldCtx, poly: MultivariatePoly,
                            quartic=QUARTIC_PRIMITIVE) -> TernaryFn:
    """Instantiate a 4-variable polynomial as a function on GF(3^4k):
    split x into quartic coordinates, evaluate, take Tr_k (= the absolute
    trace on subfield values since the extension degree is 4 = 1 mod 3)."""
    k = poly.k
    if ctx.n != 4 * k:
        raise FieldError(f"polynomial has k={k} but n={ctx.n}")
    a = find_quartic_root(ctx, tuple(int(c) % 3 for c in quartic))
    Binv, gdig = _quartic_basis_data(ctx, a, k)
    C = (ctx.digits.astype(np.int64) @ Binv.T) % 3
    xs = [ctx.pack((C[:, i * k:(i + 1) * k] @ gdig) % 3) for i in range(4)]
    acc = np.zeros(ctx.q, dtype=np.int64)
    for mono, c in poly.terms:
        term = np.full(ctx.q, int(c), dtype=np.int64)
        for i, e in enumerate(mono):
            if e:
                term = ctx.mul_vec(term, ctx.pow_vec(xs[i], e))
        acc = ctx.add_vec(acc, term)
    return TernaryFn(ctx, ctx.trace1[acc])

"""Arithmetic for GF(3^n) on packed base-3 integers.

An element sum_i c_i x^i of F3[x]/(m(x)), c_i in {0,1,2}, is stored as the
plain int sum_i c_i 3^i.  That packed value doubles as the canonical table
index used by every other module, so a length-3^n numpy array indexed by
elements needs no translation layer.

A FieldCtx owns the modulus and discrete-log tables (exp/log) built once at
construction from a primitive element found by deterministic ascending
search.  After construction, mul/inv/pow/is_square/solve_coset are index
arithmetic mod 3^n - 1; only add/sub/neg touch coordinates.  Tables are
capped at n <= 14 by default (exp+log cost ~2*8*3^n bytes).

Relative traces Tr^n_k land in the subfield GF(3^k); the absolute trace
table trace1 is the workhorse for Walsh sums, Tr(x) = digits(x) . t where
t_i = Tr(x^i) is precomputed in the polynomial domain.
"""

from __future__ import annotations

import math
import os
from functools import cached_property
from typing import Sequence

import numpy as np

__all__ = [
    "FieldError",
    "InternalInconsistencyError",
    "FieldCtx",
    "ctx_new",
    "default_modulus",
    "format_elem",
    "format_trits",
    "parse_elem",
    "parse_modulus",
    "format_modulus",
    "f3_rref",
    "f3_rank",
    "f3_inv",
    "f3_solve",
    "f3_kernel",
]

DEFAULT_MAX_N = 14
MAX_N_ENV = "BENT3_MAX_N"

POW3 = tuple(3**i for i in range(64))


class FieldError(ValueError):
    """Domain error in field arithmetic: bad modulus, inverse of zero, ..."""


class InternalInconsistencyError(RuntimeError):
    """A re-verified identity failed; indicates a bug, not bad user input."""


# ----------------------------------------------------------------------
# polynomial helpers over F3; coefficient tuples, little-endian, trimmed

def _ptrim(a) -> tuple:
    a = list(a)
    while a and a[-1] % 3 == 0:
        a.pop()
    return tuple(c % 3 for c in a)


def _pdeg(a: tuple) -> int:
    return len(a) - 1


def _psub(a: tuple, b: tuple) -> tuple:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _ptrim(out)


def _pmul(a: tuple, b: tuple) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return _ptrim(out)


def _pmod(a: tuple, m: tuple) -> tuple:
    # m monic
    a = list(a)
    dm = _pdeg(m)
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % 3
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % 3
    return _ptrim(a[:dm])


def _pgcd(a: tuple, b: tuple) -> tuple:
    while b:
        # make b monic so _pmod applies
        lead = b[-1]
        if lead != 1:
            b = tuple((c * lead) % 3 for c in b)  # lead==2: 2*2=4=1
        a, b = b, _pmod(a, b)
    return a


def _unpack(x: int, n: int) -> tuple:
    out = []
    for _ in range(n):
        out.append(x % 3)
        x //= 3
    return tuple(out)


def _pack(coeffs) -> int:
    out = 0
    for i, c in enumerate(coeffs):
        out += (c % 3) * POW3[i]
    return out


def _is_irreducible(m: tuple):
    """Distinct-degree test. Returns (True, None) or (False, d) where the
    modulus has an irreducible factor of degree exactly d."""
    n = _pdeg(m)
    if n < 1:
        raise FieldError("modulus must have positive degree")
    x = (0, 1)
    r = x
    for d in range(1, n // 2 + 1):
        r = _pmod(_pmul(_pmul(r, r), r), m)  # r = x^(3^d) mod m
        g = _pgcd(_psub(r, x), m)
        if _pdeg(g) > 0:
            # earlier degrees were clean, so the smallest factor degree is d
            return False, d
    return True, None


def default_modulus(n: int) -> tuple:
    """Smallest monic irreducible of degree n, coefficient vectors ordered by
    their packed little-endian base-3 value (constant term least significant).
    Deterministic; at n=2 this is x^2+1."""
    for packed in range(POW3[n]):
        cand = _unpack(packed, n) + (1,)
        if _is_irreducible(cand)[0]:
            return cand
    raise FieldError(f"no irreducible of degree {n}")  # unreachable


def _prime_factors(v: int) -> tuple:
    out = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            out.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        out.append(v)
    return tuple(out)


def _divisors(n: int) -> tuple:
    return tuple(d for d in range(1, n + 1) if n % d == 0)


# ----------------------------------------------------------------------

def _resolve_cap(max_n) -> int:
    if max_n is not None:
        return int(max_n)
    env = os.environ.get(MAX_N_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise FieldError(f"bad {MAX_N_ENV}={env!r}") from exc
    return DEFAULT_MAX_N


class FieldCtx:
    """Realized GF(3^n): modulus, generator, exp/log/trace tables.

    Treat as immutable after construction; lazily built tables are cached on
    the instance (construction and first use are single-threaded by design).
    """

    def __init__(self, n: int, modulus: Sequence[int] | None = None, *,
                 max_n: int | None = None):
        if n < 1:
            raise FieldError(f"n must be >= 1, got {n}")
        cap = _resolve_cap(max_n)
        if n > cap:
            raise FieldError(
                f"n={n} exceeds the table cap {cap}; raise it via max_n= or "
                f"the {MAX_N_ENV} environment variable if you mean it")
        if modulus is None:
            mod = default_modulus(n)
        else:
            mod = tuple(int(c) % 3 for c in modulus)
            if len(mod) != n + 1:
                raise FieldError(
                    f"modulus needs {n + 1} coefficients, got {len(mod)}")
            if mod[-1] != 1:
                raise FieldError("modulus must be monic")
        ok, d = _is_irreducible(mod)
        if not ok:
            raise FieldError(
                f"modulus {format_modulus(mod)} is reducible: it has an "
                f"irreducible factor of degree {d}")
        self.n = n
        self.modulus = mod
        self.q = POW3[n]
        self.mult_order = self.q - 1
        self.subfield_degrees = _divisors(n)
        self._order_primes = _prime_factors(self.mult_order)
        self.generator = self._find_generator()
        self.exp, self.log = self._build_tables()
        self._trace_basis = self._build_trace_basis()

    # --- construction-time polynomial arithmetic (no tables yet) ---

    def _mul_poly(self, a: int, b: int) -> int:
        return _pack(_pmod(_pmul(_unpack(a, self.n), _unpack(b, self.n)),
                           self.modulus))

    def _pow_poly(self, x: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_poly(r, x)
            x = self._mul_poly(x, x)
            e >>= 1
        return r

    def _poly_order(self, x: int) -> int:
        o = self.mult_order
        for p in self._order_primes:
            while o % p == 0 and self._pow_poly(x, o // p) == 1:
                o //= p
        return o

    def _find_generator(self) -> int:
        for cand in range(2, self.q):
            if self._poly_order(cand) == self.mult_order:
                return cand
        raise FieldError("no generator found (broken modulus?)")  # unreachable

    def _build_tables(self):
        n, q, N, g = self.n, self.q, self.mult_order, self.generator
        pow3v = np.array(POW3[:n], dtype=np.int64)
        B = min(N, POW3[(n + 1) // 2])
        small = np.empty(B, dtype=np.int64)
        cur = 1
        for i in range(B):
            small[i] = cur
            cur = self._mul_poly(cur, g)
        exp = np.empty(N, dtype=np.int64)
        exp[:B] = small
        if N > B:
            h = cur  # g^B; multiplication by h is F3-linear
            Mh = np.empty((n, n), dtype=np.int16)
            for j in range(n):
                Mh[:, j] = _unpack(self._mul_poly(h, POW3[j]), n)
            dig = np.empty((B, n), dtype=np.int16)
            tmp = small.copy()
            for i in range(n):
                dig[:, i] = tmp % 3
                tmp //= 3
            filled = B
            while filled < N:
                dig = (dig @ Mh.T) % 3
                vals = dig.astype(np.int64) @ pow3v
                take = min(B, N - filled)
                exp[filled:filled + take] = vals[:take]
                filled += take
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(N, dtype=np.int64)
        if log[0] != -1 or bool(np.any(log[1:] < 0)):
            raise FieldError("internal: exp table is not a bijection")
        log[0] = -1  # sentinel, never valid as an index
        return exp, log

    def _build_trace_basis(self) -> np.ndarray:
        tvec = np.empty(self.n, dtype=np.int64)
        for i in range(self.n):
            beta = POW3[i]
            acc, y = beta, beta
            for _ in range(self.n - 1):
                y = self._mul_poly(self._mul_poly(y, y), y)
                acc = _pack_add(acc, y, self.n)
            if acc >= 3:
                raise FieldError("internal: trace of basis element not in F3")
            tvec[i] = acc
        return tvec

    # --- lazy bulk tables ---

    @cached_property
    def digits(self) -> np.ndarray:
        """(q, n) uint8: little-endian base-3 coordinates of every element."""
        out = np.empty((self.q, self.n), dtype=np.uint8)
        tmp = np.arange(self.q, dtype=np.int64)
        for i in range(self.n):
            out[:, i] = tmp % 3
            tmp //= 3
        return out

    @cached_property
    def trace1(self) -> np.ndarray:
        """(q,) uint8: absolute trace of every element."""
        return ((self.digits.astype(np.int64) @ self._trace_basis) % 3
                ).astype(np.uint8)

    @cached_property
    def _frob_perm(self) -> np.ndarray:
        N = self.mult_order
        t = np.zeros(self.q, dtype=np.int64)
        t[self.exp] = self.exp[(3 * np.arange(N)) % N]
        return t

    @cached_property
    def _pow3vec(self) -> np.ndarray:
        return np.array(POW3[:self.n], dtype=np.int64)

    # --- scalar ops ---

    def add(self, x: int, y: int) -> int:
        return _pack_add(int(x), int(y), self.n)

    def neg(self, x: int) -> int:
        x = int(x)
        out, p = 0, 1
        while x:
            out += ((3 - x % 3) % 3) * p
            x //= 3
            p *= 3
        return out

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return int(self.exp[(self.log[x] + self.log[y]) % self.mult_order])

    def inv(self, x: int) -> int:
        if x == 0:
            raise FieldError("zero has no inverse")
        return int(self.exp[(-self.log[x]) % self.mult_order])

    def pow(self, x: int, e: int) -> int:
        x, e = int(x), int(e)
        if x == 0:
            if e > 0:
                return 0
            if e == 0:
                return 1
            raise FieldError("negative power of zero")
        return int(self.exp[(int(self.log[x]) * (e % self.mult_order))
                            % self.mult_order])

    def frob(self, x: int, times: int = 1) -> int:
        """x^(3^times), exact for any times >= 0."""
        if x == 0:
            return 0
        N = self.mult_order
        return int(self.exp[(int(self.log[x]) * pow(3, times, N)) % N])

    def trace_abs(self, x: int) -> int:
        return int(self.trace1[x])

    def trace_rel(self, x: int, k: int) -> int:
        """Tr^n_k(x) = sum of x^(3^(ik)); lands in the degree-k subfield."""
        if k < 1 or self.n % k:
            raise FieldError(f"k={k} does not divide n={self.n}")
        acc = 0
        for i in range(self.n // k):
            acc = self.add(acc, self.frob(x, i * k))
        return acc

    def is_square(self, x: int) -> bool:
        if x == 0:
            raise FieldError("zero is neither a square nor a nonsquare here")
        return int(self.log[x]) % 2 == 0

    def fourth_root_of_unity(self) -> int:
        """I with I^2 = -1; exists iff 4 | 3^n - 1, i.e. n even."""
        if self.mult_order % 4:
            raise FieldError(f"no fourth root of unity in GF(3^{self.n})")
        return int(self.exp[self.mult_order // 4])

    def solve_coset(self, m: int, t: int):
        """One c with c^(3^m - 1) = t, or None if t is not in the image.

        The full solution set is c * GF(3^m)^*; the returned c is the one of
        smallest discrete log."""
        if m < 1 or self.n % m:
            raise FieldError(f"m={m} does not divide n={self.n}")
        if t == 0:
            raise FieldError("t must be nonzero")
        d = POW3[m] - 1
        N = self.mult_order
        lt = int(self.log[t])
        g = math.gcd(d, N)
        if lt % g:
            return None
        L = (lt // g) * pow(d // g, -1, N // g) % (N // g)
        return int(self.exp[L])

    # --- subfields ---

    def subfield_generator(self, m: int) -> int:
        if m < 1 or self.n % m:
            raise FieldError(f"m={m} does not divide n={self.n}")
        return int(self.exp[self.mult_order // (POW3[m] - 1)])

    def subfield_elements(self, m: int) -> np.ndarray:
        """All 3^m elements of the degree-m subfield (zero first, then by log)."""
        if m < 1 or self.n % m:
            raise FieldError(f"m={m} does not divide n={self.n}")
        step = self.mult_order // (POW3[m] - 1)
        out = np.empty(POW3[m], dtype=np.int64)
        out[0] = 0
        out[1:] = self.exp[step * np.arange(POW3[m] - 1, dtype=np.int64)]
        return out

    def subfield_basis(self, m: int) -> list:
        g = self.subfield_generator(m)
        return [self.pow(g, j) for j in range(m)]

    def in_subfield(self, x: int, m: int) -> bool:
        if m < 1 or self.n % m:
            raise FieldError(f"m={m} does not divide n={self.n}")
        if x == 0:
            return True
        return int(self.log[x]) % (self.mult_order // (POW3[m] - 1)) == 0

    # --- bulk ops on int64 arrays of packed elements ---

    def pack(self, digmat: np.ndarray) -> np.ndarray:
        return digmat.astype(np.int64) @ self._pow3vec

    def translate_perm(self, c: int) -> np.ndarray:
        """perm[x] = x + c over all x, as a (q,) index array."""
        return self.pack((self.digits + self.digits[c]) % 3)

    def scale_perm(self, c: int) -> np.ndarray:
        """perm[x] = c * x over all x."""
        out = np.zeros(self.q, dtype=np.int64)
        if c:
            N = self.mult_order
            out[self.exp] = self.exp[(int(self.log[c]) + np.arange(N)) % N]
        return out

    def add_vec(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        out = np.zeros(np.broadcast_shapes(xs.shape, ys.shape), dtype=np.int64)
        p = 1
        for _ in range(self.n):
            out += (((xs // p) % 3 + (ys // p) % 3) % 3) * p
            p *= 3
        return out

    def neg_vec(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros_like(xs)
        p = 1
        for _ in range(self.n):
            out += ((3 - (xs // p) % 3) % 3) * p
            p *= 3
        return out

    def mul_vec(self, xs, ys) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        ys = np.asarray(ys, dtype=np.int64)
        xs, ys = np.broadcast_arrays(xs, ys)
        out = np.zeros(xs.shape, dtype=np.int64)
        mask = (xs != 0) & (ys != 0)
        if mask.any():
            idx = (self.log[xs[mask]] + self.log[ys[mask]]) % self.mult_order
            out[mask] = self.exp[idx]
        return out

    def pow_vec(self, xs, e: int) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        out = np.zeros_like(xs)
        mask = xs != 0
        if e < 0 and bool(np.any(~mask)):
            raise FieldError("negative power of zero")
        e_red = int(e) % self.mult_order
        out[mask] = self.exp[(self.log[xs[mask]] * e_red) % self.mult_order]
        if e == 0:
            out[~mask] = 1
        return out

    def trace_vec(self, xs) -> np.ndarray:
        return self.trace1[np.asarray(xs, dtype=np.int64)]

    def __repr__(self):
        return (f"FieldCtx(n={self.n}, modulus={format_modulus(self.modulus)}, "
                f"g={self.generator})")


def ctx_new(n: int, modulus: Sequence[int] | None = None, *,
            max_n: int | None = None) -> FieldCtx:
    """Build a GF(3^n) context; modulus defaults to default_modulus(n)."""
    return FieldCtx(n, modulus, max_n=max_n)


def _pack_add(x: int, y: int, n: int) -> int:
    out, p = 0, 1
    while x or y:
        out += ((x % 3 + y % 3) % 3) * p
        x //= 3
        y //= 3
        p *= 3
    return out


# ----------------------------------------------------------------------
# element / modulus literals

def format_elem(ctx: FieldCtx, x: int) -> str:
    if x == 0:
        return "0"
    return f"g^{int(ctx.log[x])}"


def format_trits(ctx: FieldCtx, x: int) -> str:
    return "t:" + "".join(str(d) for d in _unpack(int(x), ctx.n))


def parse_elem(ctx: FieldCtx, s: str) -> int:
    """Literals: 'g^<k>' (generator power), 't:<trits>' (little-endian
    coordinates), or '0'."""
    s = s.strip()
    if s == "0":
        return 0
    if s.startswith("g^"):
        try:
            k = int(s[2:])
        except ValueError as exc:
            raise FieldError(f"bad element literal {s!r}") from exc
        return int(ctx.exp[k % ctx.mult_order])
    if s.startswith("t:"):
        trits = s[2:]
        if len(trits) != ctx.n or not all(c in "012" for c in trits):
            raise FieldError(
                f"bad trit literal {s!r}: need exactly {ctx.n} of 0/1/2")
        return _pack(int(c) for c in trits)
    raise FieldError(f"bad element literal {s!r}")


def parse_modulus(s: str, n: int | None = None) -> tuple:
    try:
        coeffs = tuple(int(c.strip()) % 3 for c in s.split(","))
    except ValueError as exc:
        raise FieldError(f"bad modulus literal {s!r}") from exc
    if n is not None and len(coeffs) != n + 1:
        raise FieldError(f"modulus literal {s!r} has {len(coeffs)} "
                         f"coefficients, expected {n + 1}")
    return coeffs


def format_modulus(mod: Sequence[int]) -> str:
    return ",".join(str(c) for c in mod)


# ----------------------------------------------------------------------
# dense linear algebra mod 3 (small matrices; plain Gauss)

def f3_rref(M: np.ndarray):
    """Row-reduce a copy of M mod 3; returns (R, pivot_columns)."""
    R = np.array(M, dtype=np.int64) % 3
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        sel = None
        for i in range(r, rows):
            if R[i, c]:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            R[[r, sel]] = R[[sel, r]]
        if R[r, c] == 2:
            R[r] = (2 * R[r]) % 3
        for i in range(rows):
            if i != r and R[i, c]:
                R[i] = (R[i] - R[i, c] * R[r]) % 3
        pivots.append(c)
        r += 1
    return R, pivots


def f3_rank(M: np.ndarray) -> int:
    return len(f3_rref(M)[1])


def f3_inv(M: np.ndarray) -> np.ndarray:
    M = np.asarray(M)
    m = M.shape[0]
    if M.shape[0] != M.shape[1]:
        raise FieldError("matrix not square")
    aug = np.concatenate([M % 3, np.eye(m, dtype=np.int64)], axis=1)
    R, pivots = f3_rref(aug)
    if pivots[:m] != list(range(m)):
        raise FieldError("matrix not invertible mod 3")
    return R[:, m:]


def f3_solve(M: np.ndarray, b: np.ndarray):
    """One solution of M x = b mod 3 (free variables zero), or None."""
    M = np.asarray(M) % 3
    b = np.asarray(b).reshape(-1, 1) % 3
    aug = np.concatenate([M, b], axis=1)
    R, pivots = f3_rref(aug)
    cols = M.shape[1]
    if cols in pivots:
        return None  # pivot in the rhs column: inconsistent
    x = np.zeros(cols, dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = R[r, cols]
    return x


def f3_kernel(M: np.ndarray) -> np.ndarray:
    """Basis of the null space mod 3, one vector per row."""
    M = np.asarray(M) % 3
    R, pivots = f3_rref(M)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(pivots):
            basis[i, pc] = (-R[r, fc]) % 3
    return basis

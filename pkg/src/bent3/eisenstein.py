"""Exact arithmetic in Z[omega], omega = exp(2*pi*i/3).

A value u + v*omega is the frozen pair (u, v); omega^2 = -1 - omega folds
every product back onto that basis.  The norm u^2 - u*v + v^2 is the complex
|.|^2, so Walsh magnitudes are compared as exact integers, never floats.

Multiplication by omega is the 2x2 move (u, v) -> (-v, u - v); six units:
+/- omega^j for j in 0..2.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class EisensteinInt:
    u: int = 0
    v: int = 0

    @classmethod
    def from_counts(cls, n0: int, n1: int, n2: int) -> "EisensteinInt":
        """n0 + n1*omega + n2*omega^2 with 1 + omega + omega^2 = 0 folded in."""
        return cls(n0 - n2, n1 - n2)

    def __add__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.u + other.u, self.v + other.v)

    def __sub__(self, other: "EisensteinInt") -> "EisensteinInt":
        return EisensteinInt(self.u - other.u, self.v - other.v)

    def __neg__(self) -> "EisensteinInt":
        return EisensteinInt(-self.u, -self.v)

    def __mul__(self, other):
        if isinstance(other, int):
            return EisensteinInt(self.u * other, self.v * other)
        a, b, c, d = self.u, self.v, other.u, other.v
        return EisensteinInt(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def mul_omega(self) -> "EisensteinInt":
        return EisensteinInt(-self.v, self.u - self.v)

    def norm(self) -> int:
        return self.u * self.u - self.u * self.v + self.v * self.v

    def conj(self) -> "EisensteinInt":
        # complex conjugate: omega -> omega^2
        return EisensteinInt(self.u - self.v, -self.v)

    def is_zero(self) -> bool:
        return self.u == 0 and self.v == 0

    def as_root_multiple(self, scale: int):
        """If self == unit * scale * omega^j with unit in {1,-1}, return
        (unit, j); otherwise None."""
        cand = EisensteinInt(scale, 0)
        for j in range(3):
            if self == cand:
                return 1, j
            if self == -cand:
                return -1, j
            cand = cand.mul_omega()
        return None

    def to_complex(self) -> complex:
        w = complex(-0.5, 3**0.5 / 2)
        return self.u + self.v * w

    def __str__(self):
        return f"({self.u},{self.v})"


ZERO = EisensteinInt(0, 0)
ONE = EisensteinInt(1, 0)
OMEGA = EisensteinInt(0, 1)

#: omega^j for j in 0..2, the three values a ternary character takes
OMEGA_POW = (ONE, OMEGA, EisensteinInt(-1, -1))


def omega_pow(j: int) -> EisensteinInt:
    return OMEGA_POW[j % 3]

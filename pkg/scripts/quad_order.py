#!/usr/bin/env python3
"""
Quad Order - 虚二次序算术

R = Z[τ]，τ² = tτ - n_τ。提供共轭、范数、迹、作用矩阵以及有限剩余环 R/αR。

核心功能：
1. QuadOrder / QuadInt - 以 (t, n_τ) 给出的序及其元素 x + yτ
2. ActionMatrix - 乘以 β 在基 {1, τ} 上的矩阵
3. HermiteLattice - Z² 中满秩子格的列 Hermite 形式（成员判定、盒约化）
4. ResidueRing - R/αR 的规范代表元、约化与求逆

HNF 规则：
格 L 的基取为 (A, 0) 与 (B, D)，A, D > 0，0 <= B < A。
代表元为 x + yτ，0 <= x < A，0 <= y < D。

Author: Bobo (Sesquilinear Pairings)
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from math import gcd
from typing import Iterable, List, Tuple, Union

try:
    from sympy import igcdex
except ImportError:  # sympy >= 1.13 no longer re-exports it at top level
    from sympy.core.intfunc import igcdex as _sympy_igcdex

    def igcdex(a, b):
        # newer sympy returns gmpy mpz; keep the builtin-int results of older releases
        return tuple(int(x) for x in _sympy_igcdex(a, b))

from errors import NotInvertible, OrderMismatch, PairingError, ZeroModulus

logger = logging.getLogger(__name__)

# 剩余环规模不超过此值时用穷举求逆
EXHAUSTIVE_INVERSE_LIMIT = 10_000


@dataclass(frozen=True)
class QuadOrder:
    """虚二次序 Z[τ]，τ 的极小多项式为 X² - tX + n_τ"""

    trace_tau: int
    norm_tau: int

    def __post_init__(self):
        if self.discriminant >= 0:
            raise PairingError(
                f"order with t={self.trace_tau}, n={self.norm_tau} is not imaginary quadratic")

    @property
    def discriminant(self) -> int:
        return self.trace_tau * self.trace_tau - 4 * self.norm_tau

    def __call__(self, x: int, y: int = 0) -> 'QuadInt':
        return QuadInt(x, y, self)

    @property
    def tau(self) -> 'QuadInt':
        return QuadInt(0, 1, self)

    @property
    def one(self) -> 'QuadInt':
        return QuadInt(1, 0, self)

    @property
    def zero(self) -> 'QuadInt':
        return QuadInt(0, 0, self)

    def __repr__(self) -> str:
        return f"Z[tau: tau^2 = {self.trace_tau}*tau - {self.norm_tau}]"


GAUSSIAN = QuadOrder(0, 1)
EISENSTEIN = QuadOrder(-1, 1)

Scalar = Union['QuadInt', int]


@dataclass(frozen=True)
class QuadInt:
    """x + yτ ∈ R"""

    x: int
    y: int
    order: QuadOrder = field(repr=False)

    def _coerce(self, other: Scalar) -> 'QuadInt':
        if isinstance(other, QuadInt):
            if other.order != self.order:
                raise OrderMismatch(f"{self.order} vs {other.order}")
            return other
        if isinstance(other, int):
            return QuadInt(other, 0, self.order)
        return NotImplemented

    def __add__(self, other: Scalar) -> 'QuadInt':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.x + other.x, self.y + other.y, self.order)

    __radd__ = __add__

    def __sub__(self, other: Scalar) -> 'QuadInt':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return QuadInt(self.x - other.x, self.y - other.y, self.order)

    def __rsub__(self, other: Scalar) -> 'QuadInt':
        return self._coerce(other) - self

    def __neg__(self) -> 'QuadInt':
        return QuadInt(-self.x, -self.y, self.order)

    def __mul__(self, other: Scalar) -> 'QuadInt':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t, n = self.order.trace_tau, self.order.norm_tau
        yy = self.y * other.y
        return QuadInt(self.x * other.x - n * yy,
                       self.x * other.y + other.x * self.y + t * yy,
                       self.order)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> 'QuadInt':
        if exponent < 0:
            raise ValueError("negative powers are not defined in R")
        result = self.order.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def conj(self) -> 'QuadInt':
        return QuadInt(self.x + self.order.trace_tau * self.y, -self.y, self.order)

    def norm(self) -> int:
        t, n = self.order.trace_tau, self.order.norm_tau
        return self.x * self.x + t * self.x * self.y + n * self.y * self.y

    def trace(self) -> int:
        return 2 * self.x + self.order.trace_tau * self.y

    def coords(self) -> Tuple[int, int]:
        return (self.x, self.y)

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_integer(self) -> bool:
        return self.y == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.y == 0 and self.x == other
        if isinstance(other, QuadInt):
            return self.order == other.order and self.x == other.x and self.y == other.y
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.x, self.y))

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        if self.x == 0:
            return f"{self.y}*tau"
        sign = '+' if self.y > 0 else '-'
        return f"{self.x}{sign}{abs(self.y)}*tau"

    def __repr__(self) -> str:
        return f"QuadInt({self})"


@dataclass(frozen=True)
class ActionMatrix:
    """β·1 = a + cτ，β·τ = b + dτ"""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def trace(self) -> int:
        return self.a + self.d

    def apply(self, u: int, v: int) -> Tuple[int, int]:
        return (self.a * u + self.b * v, self.c * u + self.d * v)

    def columns(self) -> List[Tuple[int, int]]:
        return [(self.a, self.c), (self.b, self.d)]

    def as_tuple(self) -> Tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


def action_matrix(beta: QuadInt) -> ActionMatrix:
    """Matrix of multiplication by beta on the basis {1, tau}"""
    t, n = beta.order.trace_tau, beta.order.norm_tau
    return ActionMatrix(a=beta.x, b=-beta.y * n, c=beta.y, d=beta.x + beta.y * t)


@dataclass(frozen=True)
class HermiteLattice:
    """Z² 中满秩子格，基 (A, 0), (B, D)"""

    A: int
    B: int
    D: int

    @classmethod
    def from_columns(cls, columns: Iterable[Tuple[int, int]]) -> 'HermiteLattice':
        """列 Hermite 形式：先用扩展欧几里得消去第二坐标，再对第一坐标取 gcd"""
        pivot = (0, 0)
        flat = 0
        for u, v in columns:
            if v == 0:
                flat = gcd(flat, u)
                continue
            if pivot[1] == 0:
                flat = gcd(flat, pivot[0])
                pivot = (u, v)
                continue
            s, t, g = igcdex(pivot[1], v)
            combined = (s * pivot[0] + t * u, g)
            eliminated = (v // g) * pivot[0] - (pivot[1] // g) * u
            flat = gcd(flat, eliminated)
            pivot = combined
        if pivot[1] < 0:
            pivot = (-pivot[0], -pivot[1])
        A, D = abs(flat), pivot[1]
        if A == 0 or D == 0:
            raise ZeroModulus("lattice is not of full rank")
        return cls(A=A, B=pivot[0] % A, D=D)

    @property
    def index(self) -> int:
        return self.A * self.D

    def reduce(self, u: int, v: int) -> Tuple[int, int]:
        k = v // self.D
        return ((u - k * self.B) % self.A, v - k * self.D)

    def contains(self, u: int, v: int) -> bool:
        return self.reduce(u, v) == (0, 0)


class ResidueRing:
    """R/αR，规范代表元由 αR 的 HNF 给出"""

    def __init__(self, modulus: QuadInt):
        if modulus.is_zero():
            raise ZeroModulus("R/0R is infinite")
        self.modulus = modulus
        self.order = modulus.order
        self.lattice = HermiteLattice.from_columns(action_matrix(modulus).columns())
        if self.lattice.index != modulus.norm():
            raise PairingError(
                f"HNF index {self.lattice.index} disagrees with N({modulus}) = {modulus.norm()}")
        self.representatives = [QuadInt(x, y, self.order)
                                for y in range(self.lattice.D)
                                for x in range(self.lattice.A)]

    @property
    def size(self) -> int:
        return len(self.representatives)

    @property
    def exponent(self) -> int:
        """Additive exponent of R/αR, i.e. αR ∩ Z = exponent·Z"""
        return self.lattice.A

    def reduce(self, beta: Scalar) -> QuadInt:
        beta = self.modulus._coerce(beta)
        u, v = self.lattice.reduce(beta.x, beta.y)
        return QuadInt(u, v, self.order)

    def index(self, beta: Scalar) -> int:
        r = self.reduce(beta)
        return r.y * self.lattice.A + r.x

    def congruent(self, beta: Scalar, gamma: Scalar) -> bool:
        return self.reduce(beta) == self.reduce(gamma)

    def inverse(self, beta: Scalar) -> QuadInt:
        return inverse_mod(self.modulus._coerce(beta), self)

    def __repr__(self) -> str:
        return f"R/({self.modulus})R"


@lru_cache(maxsize=256)
def residue_ring(alpha: QuadInt) -> ResidueRing:
    """共享的 R/αR 实例（只读）"""
    return ResidueRing(alpha)


def reduce_mod(beta: QuadInt, ring: ResidueRing) -> QuadInt:
    return ring.reduce(beta)


def inverse_mod(beta: QuadInt, ring: ResidueRing) -> QuadInt:
    """γ with γβ ≡ 1 mod αR, canonically reduced

    Raises:
        NotInvertible: beta shares a factor with the modulus
    """
    if beta.order != ring.order:
        raise OrderMismatch(f"{beta.order} vs {ring.order}")
    one = ring.reduce(1)
    if ring.size <= EXHAUSTIVE_INVERSE_LIMIT:
        for gamma in ring.representatives:
            if ring.reduce(gamma * beta) == one:
                return gamma
        raise NotInvertible(f"{beta} is not invertible mod {ring.modulus}")
    return _inverse_by_lattice(beta, ring)


def _inverse_by_lattice(beta: QuadInt, ring: ResidueRing) -> QuadInt:
    lat = ring.lattice
    if lat.D == 1:
        # R/αR ≅ Z/A via x + yτ ↦ x - yB
        image = (beta.x - beta.y * lat.B) % lat.A
        if gcd(image, lat.A) != 1:
            raise NotInvertible(f"{beta} is not invertible mod {ring.modulus}")
        return ring.reduce(pow(image, -1, lat.A))
    # γ = k·β̄ with k·N(β) ≡ 1 mod A
    n = beta.norm() % lat.A
    if gcd(n, lat.A) != 1:
        raise NotInvertible(f"N({beta}) = {beta.norm()} not coprime to {lat.A}")
    candidate = ring.reduce(beta.conj() * pow(n, -1, lat.A))
    if ring.reduce(candidate * beta) != ring.reduce(1):
        raise NotInvertible(f"{beta} is not invertible mod {ring.modulus}")
    return candidate

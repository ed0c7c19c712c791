#!/usr/bin/env python3
"""
Curve CM - 椭圆曲线与复乘自同态

短 Weierstrass 曲线 y² = x³ + Ax + B 上的仿射点算术（显式无穷远点），
CM 自同态 [β] = [x] + [y]∘[τ] 的作用，以及桌面规模的群/挠点/陪集枚举。

内置 CM 映射：
- j = 1728: y² = x³ + Ax，[i](x, y) = (-x, i·y)，i² = -1
- j = 0:    y² = x³ + B， [ζ](x, y) = (ζ·x, y)，ζ² + ζ + 1 = 0
- 用户提供：逐点映射表，仅做同态与极小多项式抽查

Author: Bobo (Sesquilinear Pairings)
"""

import logging
import math
import random
import threading
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

from errors import CurveMismatch, OffCurve, OrderMismatch, PairingError, ScaleExceeded
from field import FieldElement, PrimeField
from quad_order import EISENSTEIN, GAUSSIAN, QuadInt, QuadOrder

logger = logging.getLogger(__name__)

# 枚举上限 q <= 2^20
MAX_ENUMERATION_MODULUS = 1 << 20

_memo: Dict[tuple, list] = {}
_memo_lock = threading.Lock()


def _memoized(key: tuple, compute):
    with _memo_lock:
        if key in _memo:
            return _memo[key]
    value = compute()
    with _memo_lock:
        _memo.setdefault(key, value)
        return _memo[key]


@dataclass(frozen=True)
class Curve:
    """y² = x³ + Ax + B over F_q"""

    field: PrimeField
    a: FieldElement
    b: FieldElement

    def __post_init__(self):
        if 4 * self.a ** 3 + 27 * self.b ** 2 == 0:
            raise PairingError(f"singular curve over {self.field}: A={self.a}, B={self.b}")

    @classmethod
    def from_ints(cls, q: int, a: int, b: int) -> 'Curve':
        F = PrimeField(q)
        return cls(F, F(a), F(b))

    def __repr__(self) -> str:
        return f"E: y^2 = x^3 + {self.a}x + {self.b} over {self.field}"

    @property
    def infinity(self) -> 'Point':
        return Point(self, None, None)

    def rhs(self, x: FieldElement) -> FieldElement:
        return x ** 3 + self.a * x + self.b

    def contains(self, x: FieldElement, y: FieldElement) -> bool:
        return y * y == self.rhs(x)

    def point(self, x: Union[int, FieldElement], y: Union[int, FieldElement]) -> 'Point':
        x, y = self.field(int(x)), self.field(int(y))
        if not self.contains(x, y):
            raise OffCurve(f"({x},{y}) is not on {self}")
        return Point(self, x, y)

    def j_invariant(self) -> Optional[int]:
        if self.b == 0:
            return 1728
        if self.a == 0:
            return 0
        return None

    # ---- group law ----------------------------------------------------------

    def _check(self, P: 'Point'):
        if P.curve != self:
            raise CurveMismatch(f"point {P} is not on {self}")

    def add(self, P: 'Point', Q: 'Point') -> 'Point':
        self._check(P)
        self._check(Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        if P.x == Q.x:
            if P.y + Q.y == 0:
                return self.infinity
            lam = (3 * P.x * P.x + self.a) / (2 * P.y)
        else:
            lam = (Q.y - P.y) / (Q.x - P.x)
        x3 = lam * lam - P.x - Q.x
        y3 = lam * (P.x - x3) - P.y
        return Point(self, x3, y3)

    def neg(self, P: 'Point') -> 'Point':
        self._check(P)
        if P.is_infinity:
            return P
        return Point(self, P.x, -P.y)

    def scalar_mul(self, k: int, P: 'Point') -> 'Point':
        """[k]P by double-and-add, k signed"""
        if k < 0:
            return self.scalar_mul(-k, self.neg(P))
        result = self.infinity
        addend = P
        while k:
            if k & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            k >>= 1
        return result

    # ---- enumeration --------------------------------------------------------

    def enumerate_group(self) -> List['Point']:
        """All rational points: O first, then by x then y ascending

        Raises:
            ScaleExceeded: q > 2^20
        """
        if self.field.q > MAX_ENUMERATION_MODULUS:
            raise ScaleExceeded(f"q = {self.field.q} exceeds the enumeration bound")
        return _memoized(('group', self), self._sweep)

    def _sweep(self) -> List['Point']:
        F = self.field
        points = [self.infinity]
        for xv in range(F.q):
            x = F(xv)
            for y in self.rhs(x).sqrt():
                points.append(Point(self, x, y))
        hasse = 2 * math.isqrt(F.q) + 2
        if abs(len(points) - (F.q + 1)) > hasse:
            raise PairingError(f"point count {len(points)} violates the Hasse bound")
        logger.debug("enumerated %d points on %s", len(points), self)
        return points


@dataclass(frozen=True)
class Point:
    """仿射点或无穷远点 O（x = y = None）"""

    curve: Curve = field(repr=False)
    x: Optional[FieldElement]
    y: Optional[FieldElement]

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __add__(self, other: 'Point') -> 'Point':
        return self.curve.add(self, other)

    def __neg__(self) -> 'Point':
        return self.curve.neg(self)

    def __sub__(self, other: 'Point') -> 'Point':
        return self.curve.add(self, self.curve.neg(other))

    def __rmul__(self, k: int) -> 'Point':
        return self.curve.scalar_mul(k, self)

    def __mul__(self, k: int) -> 'Point':
        return self.curve.scalar_mul(k, self)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return self.curve == other.curve and self.x == other.x and self.y == other.y

    def __hash__(self) -> int:
        if self.is_infinity:
            return hash(('O',))
        return hash((self.x.value, self.y.value))

    def sort_key(self) -> Tuple[int, int, int]:
        if self.is_infinity:
            return (0, 0, 0)
        return (1, self.x.value, self.y.value)

    def coords(self) -> Optional[Tuple[int, int]]:
        return None if self.is_infinity else (self.x.value, self.y.value)

    def __str__(self) -> str:
        return 'O' if self.is_infinity else f"({self.x.value},{self.y.value})"

    __repr__ = __str__


def parse_point(text: Union[str, Sequence[int], None], curve: Curve) -> Point:
    """'x,y' / [x, y] / 'O' / 'inf' / None → Point"""
    if text is None:
        return curve.infinity
    if isinstance(text, str):
        stripped = text.strip().strip('()')
        if stripped.upper() in ('O', 'INF', 'INFINITY'):
            return curve.infinity
        parts = [p.strip() for p in stripped.split(',')]
    else:
        parts = list(text)
    if len(parts) != 2:
        raise ValueError(f"expected x,y for a point, got {text!r}")
    return curve.point(int(parts[0]), int(parts[1]))


@dataclass(frozen=True)
class CMEndo:
    """[τ] 在曲线上的具体实现"""

    curve: Curve
    order: QuadOrder
    provenance: str
    root: Optional[FieldElement] = None
    table: Tuple[Tuple[Point, Point], ...] = ()

    @classmethod
    def j1728(cls, curve: Curve, root: Optional[int] = None) -> 'CMEndo':
        """[i](x, y) = (-x, i·y)；默认取最小的 -1 平方根"""
        if curve.b != 0:
            raise OrderMismatch(f"{curve} does not have j = 1728 in the form y^2 = x^3 + Ax")
        i = _pick_root(curve.field, [0, 1], root, 'i')
        return cls(curve, GAUSSIAN, 'builtin-j1728', root=i)

    @classmethod
    def j0(cls, curve: Curve, root: Optional[int] = None) -> 'CMEndo':
        """[ζ](x, y) = (ζ·x, y)；默认取最小的本原三次单位根"""
        if curve.a != 0:
            raise OrderMismatch(f"{curve} does not have j = 0 in the form y^2 = x^3 + B")
        zeta = _pick_root(curve.field, [1, 1], root, 'zeta')
        return cls(curve, EISENSTEIN, 'builtin-j0', root=zeta)

    @classmethod
    def from_table(cls, curve: Curve, order: QuadOrder,
                   mapping: Dict[Point, Point]) -> 'CMEndo':
        rows = tuple(sorted(((P, Q) for P, Q in mapping.items() if not P.is_infinity),
                            key=lambda row: row[0].sort_key()))
        return cls(curve, order, 'user-supplied', table=rows)

    @cached_property
    def _lookup(self) -> Dict[Point, Point]:
        return dict(self.table)

    def apply(self, P: Point) -> Point:
        """[τ]P"""
        if P.curve != self.curve:
            raise CurveMismatch(f"point {P} is not on {self.curve}")
        if P.is_infinity:
            return P
        if self.provenance == 'builtin-j1728':
            return Point(self.curve, -P.x, self.root * P.y)
        if self.provenance == 'builtin-j0':
            return Point(self.curve, self.root * P.x, P.y)
        try:
            return self._lookup[P]
        except KeyError:
            raise OrderMismatch(f"endomorphism table has no image for {P}") from None

    def validate(self, rng: random.Random, trials: int = 16) -> None:
        """抽查 [τ] 为同态且满足 τ² - tτ + n_τ = 0

        Raises:
            OrderMismatch: 任一抽查失败
        """
        points = self.curve.enumerate_group()
        t, n = self.order.trace_tau, self.order.norm_tau
        for _ in range(trials):
            P, Q = rng.choice(points), rng.choice(points)
            if self.apply(P + Q) != self.apply(P) + self.apply(Q):
                raise OrderMismatch(f"[tau] is not additive at {P}, {Q}")
            tP = self.apply(P)
            if not (self.apply(tP) - t * tP + n * P).is_infinity:
                raise OrderMismatch(f"[tau] violates its minimal polynomial at {P}")
        logger.debug("validated %s endomorphism on %s", self.provenance, self.curve)


def _pick_root(F: PrimeField, coeffs: List[int], root: Optional[int], name: str) -> FieldElement:
    roots = F.roots_of(coeffs)
    if not roots:
        raise OrderMismatch(f"{name} does not exist in {F}")
    if root is None:
        return roots[0]
    chosen = F(root)
    if chosen not in roots:
        raise OrderMismatch(f"{name} = {root} is not a root of the minimal polynomial in {F}")
    return chosen


def apply_r(beta: QuadInt, P: Point, endo: CMEndo) -> Point:
    """[β]P = [x]P + [y]([τ]P)"""
    if beta.order != endo.order:
        raise OrderMismatch(f"{beta} is not in {endo.order}")
    result = P.curve.scalar_mul(beta.x, P)
    if beta.y:
        result = result + P.curve.scalar_mul(beta.y, endo.apply(P))
    return result


def enumerate_group(curve: Curve) -> List[Point]:
    return curve.enumerate_group()


def kernel_of(beta: QuadInt, curve: Curve, endo: CMEndo) -> List[Point]:
    """E[β](F_q)，按枚举顺序"""
    group = curve.enumerate_group()
    return _memoized(('kernel', endo, beta.coords()),
                     lambda: [P for P in group if apply_r(beta, P, endo).is_infinity])


def image_of(beta: QuadInt, curve: Curve, endo: CMEndo) -> frozenset:
    group = curve.enumerate_group()
    return _memoized(('image', endo, beta.coords()),
                     lambda: frozenset(apply_r(beta, P, endo) for P in group))


def coset_reps_mod(beta: QuadInt, curve: Curve, endo: CMEndo) -> List[Point]:
    """E(F_q)/[β]E(F_q) 的横截：按枚举顺序取每个陪集的首个点"""
    group = curve.enumerate_group()

    def transversal() -> List[Point]:
        image = image_of(beta, curve, endo)
        covered = set()
        reps = []
        for P in group:
            if P in covered:
                continue
            reps.append(P)
            covered.update(P + I for I in image)
        return reps

    return _memoized(('cosets', endo, beta.coords()), transversal)


def same_coset(P: Point, Q: Point, beta: QuadInt, endo: CMEndo) -> bool:
    return (P - Q) in image_of(beta, P.curve, endo)

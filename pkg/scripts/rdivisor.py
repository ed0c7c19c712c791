#!/usr/bin/env python3
"""
R-Divisor - R 系数除子

Div_R(E) 的具体实现：点到 R 元素的有限形式和。提供次数、规范形式
(P0, P1)（即 Pic⁰_R(E) ≅ R ⊗ E 下的像）、η 嵌入与平移。

约定：
    D = D0 + τ·D1，D0、D1 为整系数除子（按坐标拆分）
    canonical_form(D) = (Σ D0, Σ D1)，表示 (P0) - (O) + τ((P1) - (O))
    η(P) = ([-τ]P) - (O) + τ((P) - (O))

Author: Bobo (Sesquilinear Pairings)
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple, Union

from curve_cm import CMEndo, Curve, Point, apply_r
from errors import CurveMismatch, NonzeroDegree, OrderMismatch
from quad_order import QuadInt, QuadOrder, action_matrix

logger = logging.getLogger(__name__)

IntDivisor = Dict[Point, int]


class RDivisor:
    """不可变的 R 系数除子，不保存零系数"""

    __slots__ = ('curve', 'order', '_coeffs')

    def __init__(self, curve: Curve, order: QuadOrder,
                 coeffs: Union[Mapping[Point, QuadInt], Iterable[Tuple[Point, QuadInt]]] = ()):
        merged: Dict[Point, QuadInt] = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for P, beta in items:
            if P.curve != curve:
                raise CurveMismatch(f"{P} is not on {curve}")
            if isinstance(beta, int):
                beta = QuadInt(beta, 0, order)
            if beta.order != order:
                raise OrderMismatch(f"coefficient {beta} is not in {order}")
            merged[P] = merged[P] + beta if P in merged else beta
        object.__setattr__(self, 'curve', curve)
        object.__setattr__(self, 'order', order)
        object.__setattr__(self, '_coeffs', {P: b for P, b in
                                             sorted(merged.items(), key=lambda kv: kv[0].sort_key())
                                             if not b.is_zero()})

    def __setattr__(self, name, value):
        raise AttributeError("RDivisor is immutable")

    @classmethod
    def zero(cls, curve: Curve, order: QuadOrder) -> 'RDivisor':
        return cls(curve, order)

    @classmethod
    def from_integer(cls, curve: Curve, order: QuadOrder, coeffs: Mapping[Point, int]) -> 'RDivisor':
        return cls(curve, order, {P: QuadInt(n, 0, order) for P, n in coeffs.items()})

    @classmethod
    def point_minus_origin(cls, P: Point, order: QuadOrder) -> 'RDivisor':
        """(P) - (O)"""
        return cls(P.curve, order, [(P, QuadInt(1, 0, order)),
                                    (P.curve.infinity, QuadInt(-1, 0, order))])

    # ---- access -------------------------------------------------------------

    def items(self):
        return self._coeffs.items()

    def coefficient(self, P: Point) -> QuadInt:
        return self._coeffs.get(P, QuadInt(0, 0, self.order))

    def support(self) -> frozenset:
        return frozenset(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RDivisor):
            return NotImplemented
        return self.curve == other.curve and self._coeffs == other._coeffs

    __hash__ = None

    def __repr__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"({beta})({P})" for P, beta in self._coeffs.items())

    # ---- arithmetic ---------------------------------------------------------

    def _check(self, other: 'RDivisor'):
        if other.curve != self.curve:
            raise CurveMismatch(f"{self.curve} vs {other.curve}")
        if other.order != self.order:
            raise OrderMismatch(f"{self.order} vs {other.order}")

    def __add__(self, other: 'RDivisor') -> 'RDivisor':
        self._check(other)
        return RDivisor(self.curve, self.order, list(self.items()) + list(other.items()))

    def __neg__(self) -> 'RDivisor':
        return RDivisor(self.curve, self.order, [(P, -b) for P, b in self.items()])

    def __sub__(self, other: 'RDivisor') -> 'RDivisor':
        return self + (-other)

    def scale(self, beta: Union[QuadInt, int]) -> 'RDivisor':
        """β · D（左乘每个系数）"""
        if isinstance(beta, int):
            beta = QuadInt(beta, 0, self.order)
        if beta.order != self.order:
            raise OrderMismatch(f"{beta} is not in {self.order}")
        return RDivisor(self.curve, self.order, [(P, beta * b) for P, b in self.items()])

    def __rmul__(self, beta: Union[QuadInt, int]) -> 'RDivisor':
        return self.scale(beta)

    # ---- structure ----------------------------------------------------------

    def degree(self) -> QuadInt:
        total = QuadInt(0, 0, self.order)
        for beta in self._coeffs.values():
            total = total + beta
        return total

    def split(self) -> Tuple[IntDivisor, IntDivisor]:
        """D = D0 + τ·D1 by coordinates"""
        d0 = {P: b.x for P, b in self.items() if b.x}
        d1 = {P: b.y for P, b in self.items() if b.y}
        return d0, d1


@dataclass(frozen=True)
class CanonicalPair:
    """D ~ (P0) - (O) + τ((P1) - (O))"""

    P0: Point
    P1: Point

    def is_trivial(self) -> bool:
        return self.P0.is_infinity and self.P1.is_infinity

    def expand(self, order: QuadOrder) -> RDivisor:
        return (RDivisor.point_minus_origin(self.P0, order)
                + RDivisor.point_minus_origin(self.P1, order).scale(order.tau))

    def scale(self, beta: QuadInt) -> 'CanonicalPair':
        """β acting on R ⊗ E: β·(P0 + τ⊗P1)"""
        m = action_matrix(beta)
        return CanonicalPair(m.a * self.P0 + m.b * self.P1,
                             m.c * self.P0 + m.d * self.P1)

    def points(self) -> Tuple[Point, Point]:
        return (self.P0, self.P1)

    def __str__(self) -> str:
        return f"({self.P0}, {self.P1})"


def sum_points(curve: Curve, coeffs: Mapping[Point, int]) -> Point:
    """Σ [n_P]P on the curve"""
    total = curve.infinity
    for P, n in coeffs.items():
        total = total + n * P
    return total


def degree(D: RDivisor) -> QuadInt:
    return D.degree()


def canonical_form(D: RDivisor, endo: CMEndo = None) -> CanonicalPair:
    """Pic⁰_R(E) 中的类 → (ΣD0, ΣD1)

    Raises:
        NonzeroDegree: 次数非零
    """
    if not D.degree().is_zero():
        raise NonzeroDegree(f"degree {D.degree()} != 0")
    d0, d1 = D.split()
    return CanonicalPair(sum_points(D.curve, d0), sum_points(D.curve, d1))


def eta(P: Point, endo: CMEndo) -> RDivisor:
    """η(P) = ([-τ]P) - (O) + τ((P) - (O))"""
    order = endo.order
    minus_tau_P = apply_r(-order.tau, P, endo)
    O = P.curve.infinity
    return RDivisor(P.curve, order, [
        (minus_tau_P, order.one),
        (O, -order.one - order.tau),
        (P, order.tau),
    ])


def translate(D: RDivisor, S: Point) -> RDivisor:
    """每个支撑点平移 +S，系数不变"""
    return RDivisor(D.curve, D.order, [(P + S, beta) for P, beta in D.items()])


def supports_disjoint(D: Union[RDivisor, Mapping[Point, int]],
                      E: Union[RDivisor, Mapping[Point, int]]) -> bool:
    left = D.support() if isinstance(D, RDivisor) else frozenset(P for P, n in D.items() if n)
    right = E.support() if isinstance(E, RDivisor) else frozenset(P for P, n in E.items() if n)
    return left.isdisjoint(right)

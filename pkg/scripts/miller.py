#!/usr/bin/env python3
"""
Miller - 有理函数的构造与求值

配对所需的函数从不符号化展开，只在除子上求值：
1. LineCoeffs - 直线 λX + μY + ν（弦、切线、竖线）
2. miller_h   - h_{P,n}，div = n(P) - ([n]P) - (n-1)(O)，倍加法累积
3. EvalPlan   - Σ n_k(R_k) - (Σ n_k)(O) 型主除子的函数
                = ∏ h_{R_k,n_k} · ∏ ℓ_{T,U}/v_{T+U}（T 为前缀和）
4. RFunction  - f0·f1^{⊗τ}，在 R-除子上按 f(α·D) = f(D)^ᾱ 求值

求值点与函数支撑相交、或中间因子为零时抛出异常，由调用方重选辅助点。

Author: Bobo (Sesquilinear Pairings)
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Tuple

from curve_cm import Curve, Point
from errors import NonPrincipalDivisor, NonzeroDegree, SupportCollision, ZeroEvaluation
from field import FieldElement
from gm_module import GmElement, gm_pow
from quad_order import QuadOrder
from rdivisor import IntDivisor, RDivisor, sum_points, supports_disjoint

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LineCoeffs:
    """λX + μY + ν；μ = 0 为竖线，λ = μ = 0 为常数"""

    lam: FieldElement
    mu: FieldElement
    nu: FieldElement

    def __call__(self, R: Point) -> FieldElement:
        if self.lam == 0 and self.mu == 0:
            return self.nu
        if R.is_infinity:
            raise ZeroEvaluation("line evaluated at O")
        value = self.lam * R.x + self.mu * R.y + self.nu
        if not value:
            raise ZeroEvaluation(f"line {self} vanishes at {R}")
        return value

    def is_constant(self) -> bool:
        return self.lam == 0 and self.mu == 0

    def __str__(self) -> str:
        return f"{self.lam.signed()}X + {self.mu.signed()}Y + {self.nu.signed()}"


def constant_line(curve: Curve) -> LineCoeffs:
    F = curve.field
    return LineCoeffs(F.zero, F.zero, F.one)


def vertical_at(T: Point) -> LineCoeffs:
    """V_T = X - x(T)，V_O = 1"""
    if T.is_infinity:
        return constant_line(T.curve)
    F = T.curve.field
    return LineCoeffs(F.one, F.zero, -T.x)


def line_through(T: Point, U: Point) -> LineCoeffs:
    """L(O,O) = 1；L(T,O) = L(T,-T) = 竖线；T = U 为切线；否则为弦"""
    if T.is_infinity and U.is_infinity:
        return constant_line(T.curve)
    if T.is_infinity:
        return vertical_at(U)
    if U.is_infinity or (T.x == U.x and T.y + U.y == 0):
        return vertical_at(T)
    if T == U:
        slope = (3 * T.x * T.x + T.curve.a) / (2 * T.y)
    else:
        slope = (U.y - T.y) / (U.x - T.x)
    F = T.curve.field
    return LineCoeffs(-slope, F.one, slope * T.x - T.y)


def eval_line(T: Point, U: Point, at: Point) -> FieldElement:
    return line_through(T, U)(at)


def _miller_at(P: Point, n: int, R: Point) -> FieldElement:
    """h_{P,n}(R)，n 可为负"""
    F = P.curve.field
    if n == 0 or P.is_infinity:
        return F.one
    if n < 0:
        m = -n
        return (_miller_at(P, m, R) * vertical_at(m * P)(R)).inverse()
    f = F.one
    T = P
    for bit in bin(n)[3:]:
        f = f * f * line_through(T, T)(R) / vertical_at(T + T)(R)
        T = T + T
        if bit == '1':
            f = f * line_through(T, P)(R) / vertical_at(T + P)(R)
            T = T + P
    return f


def _check_degree_zero(D: Mapping[Point, int]):
    if sum(D.values()) != 0:
        raise NonzeroDegree(f"integer divisor of degree {sum(D.values())}")


def miller_h(P: Point, n: int, D: Mapping[Point, int]) -> FieldElement:
    """h_{P,n}(D)，D 为整系数零次除子

    Raises:
        SupportCollision: D 的支撑与 {P, [n]P, O} 相交
        ZeroEvaluation: 中间直线在求值点为零
    """
    _check_degree_zero(D)
    F = P.curve.field
    if n == 0 or P.is_infinity or n == 1:
        return F.one
    forbidden = {P, n * P, P.curve.infinity}
    if not supports_disjoint(D, {R: 1 for R in forbidden}):
        raise SupportCollision(f"divisor meets the support of h_{{{P},{n}}}")
    value = F.one
    for R, k in D.items():
        if k:
            value = value * _miller_at(P, n, R) ** k
    return value


class EvalPlan:
    """主除子 Σ n_k(R_k) - (Σ n_k)(O) 对应的函数"""

    __slots__ = ('curve', 'terms', '_values')

    def __init__(self, curve: Curve, terms: Iterable[Tuple[Point, int]]):
        terms = tuple((R, n) for R, n in terms if n and not R.is_infinity)
        total = sum_points(curve, dict(_merge(terms)))
        if not total.is_infinity:
            raise NonPrincipalDivisor(f"plan points sum to {total}, not O")
        object.__setattr__(self, 'curve', curve)
        object.__setattr__(self, 'terms', terms)
        object.__setattr__(self, '_values', {})

    def __setattr__(self, name, value):
        raise AttributeError("EvalPlan is immutable")

    @classmethod
    def two_point(cls, P0: Point, a: int, P1: Point, b: int) -> 'EvalPlan':
        """div = a(P0) + b(P1) - (a+b)(O)，要求 [a]P0 + [b]P1 = O"""
        return cls(P0.curve, [(P0, a), (P1, b)])

    @classmethod
    def from_divisor(cls, curve: Curve, D: Mapping[Point, int]) -> 'EvalPlan':
        _check_degree_zero(D)
        return cls(curve, sorted(((R, n) for R, n in D.items() if not R.is_infinity),
                                 key=lambda term: term[0].sort_key()))

    def divisor(self) -> IntDivisor:
        D = dict(_merge(self.terms))
        D[self.curve.infinity] = -sum(n for _, n in self.terms)
        return {R: n for R, n in D.items() if n}

    def support(self) -> frozenset:
        return frozenset(self.divisor())

    def is_trivial(self) -> bool:
        return not self.divisor()

    def value_at(self, R: Point) -> FieldElement:
        """f(R)，按点缓存"""
        if R in self._values:
            return self._values[R]
        F = self.curve.field
        value = F.one
        T = self.curve.infinity
        for base, n in self.terms:
            U = n * base
            value = value * _miller_at(base, n, R)
            value = value * line_through(T, U)(R) / vertical_at(T + U)(R)
            T = T + U
        self._values[R] = value
        return value

    def evaluate(self, D: Mapping[Point, int]) -> FieldElement:
        """f(D) = ∏ f(R)^{n_R}

        Raises:
            SupportCollision: D 与 div(f) 相交或包含 O
            ZeroEvaluation: 中间因子为零
        """
        _check_degree_zero(D)
        F = self.curve.field
        if not self.terms:
            return F.one
        support = {R for R, n in D.items() if n}
        if self.curve.infinity in support or not supports_disjoint(self.divisor(), D):
            raise SupportCollision("evaluation divisor meets the function's support")
        value = F.one
        for R, k in D.items():
            if k:
                value = value * self.value_at(R) ** k
        return value

    def __repr__(self) -> str:
        return "EvalPlan(" + ", ".join(f"{n}({R})" for R, n in self.terms) + ")"


def _merge(terms: Iterable[Tuple[Point, int]]) -> Dict[Point, int]:
    merged: Dict[Point, int] = {}
    for R, n in terms:
        merged[R] = merged.get(R, 0) + n
    return merged


def eval_two_point(plan: EvalPlan, D: Mapping[Point, int]) -> FieldElement:
    return plan.evaluate(D)


@dataclass(frozen=True)
class RFunction:
    """f = f0 · f1^{⊗τ}"""

    f0: EvalPlan
    f1: EvalPlan
    order: QuadOrder

    @classmethod
    def with_divisor(cls, D: RDivisor) -> 'RFunction':
        """div(f) = D，按坐标拆为两个整系数主除子"""
        d0, d1 = D.split()
        return cls(EvalPlan.from_divisor(D.curve, d0), EvalPlan.from_divisor(D.curve, d1), D.order)

    def divisor(self) -> RDivisor:
        curve = self.f0.curve
        return (RDivisor.from_integer(curve, self.order, self.f0.divisor())
                + RDivisor.from_integer(curve, self.order, self.f1.divisor()).scale(self.order.tau))

    def support(self) -> frozenset:
        return self.f0.support() | self.f1.support()

    def at_integer(self, D: Mapping[Point, int]) -> GmElement:
        """f(D) = (f0(D), f1(D))"""
        return GmElement(self.f0.evaluate(D), self.f1.evaluate(D))

    def evaluate(self, D: RDivisor) -> GmElement:
        """f(D0 + τD1) = f(D0) · f(D1)^{τ̄}"""
        d0, d1 = D.split()
        return self.at_integer(d0) * gm_pow(self.at_integer(d1), self.order.tau.conj())

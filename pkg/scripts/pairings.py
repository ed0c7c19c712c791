#!/usr/bin/env python3
"""
Pairings - 配对计算

经典配对 t_n、e_n；R-除子类上的 T_α、W_α；经 η 拉回到点上的 T̂_α、Ŵ_α；
以及独立的交叉校验公式（t_n / e_n 乘积式、T̂_n 的 t_n 表示、范数关系）。

约定：
    T_α(D_P, D_Q) = f_P(D_Q)，div(f_P) = ᾱ·D_P，值模 ᾱ-幂
    W_α(D_P, D_Q) = f_P(D_Q) · conj(f_Q(D_P))^{-1}，div(f_Q) = α·D_Q，精确值 ∈ G[ᾱ]
    T̂_α(P, Q) = T_ᾱ(η(P), η(Q))，值模 α-幂
    Ŵ_α(P, Q) = W_ᾱ(η(P), η(Q))，精确值 ∈ G[α]

辅助点：
    从枚举的 E(F_q) 中用种子化 PRNG 均匀抽取，支撑相交或中间因子为零时重抽，
    最多 retries 次（默认 64），否则抛出 RetriesExhausted。
    每次调用由 (seed, 操作名, 输入) 派生独立的子种子，调用之间互不影响。

Author: Bobo (Sesquilinear Pairings)
"""

import hashlib
import logging
import random
from dataclasses import dataclass
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from curve_cm import CMEndo, Curve, Point, apply_r, kernel_of
from errors import (NonzeroDegree, NotInKernel, PairingError, RetriesExhausted,
                    SupportCollision, ZeroEvaluation)
from field import FieldElement, discrete_log
from gm_module import GmElement, PairingValue, gm_conj, gm_pow, equal_mod_alpha_powers
from miller import EvalPlan, RFunction
from quad_order import QuadInt, QuadOrder
from rdivisor import (CanonicalPair, RDivisor, canonical_form, eta, supports_disjoint,
                      translate)

logger = logging.getLogger(__name__)

DEFAULT_RETRIES = 64
# 每个上下文缓存的原始配对值个数上限
MEMO_LIMIT = 1 << 16


class PairingContext:
    """曲线、CM 自同态、生成元与辅助点搜索参数"""

    def __init__(self, curve: Curve, endo: CMEndo, seed: int = 0,
                 retries: int = DEFAULT_RETRIES, h: Optional[FieldElement] = None):
        if endo.curve != curve:
            raise PairingError("endomorphism is defined on a different curve")
        self.curve = curve
        self.endo = endo
        self.order: QuadOrder = endo.order
        self.field = curve.field
        self.h = h if h is not None else curve.field.generator
        if self.h.multiplicative_order() != self.field.q - 1:
            raise PairingError(f"h = {self.h} does not generate {self.field}^*")
        self.seed = seed
        self.retries = retries
        self._values: Dict[tuple, Any] = {}

    def __repr__(self) -> str:
        return (f"PairingContext({self.curve}, {self.endo.provenance}, "
                f"h={self.h}, seed={self.seed}, retries={self.retries})")

    def rng(self, *label) -> random.Random:
        """由 seed 与标签派生的子 PRNG"""
        digest = hashlib.sha256(repr((self.seed,) + label).encode('utf-8')).digest()
        return random.Random(int.from_bytes(digest[:8], 'big'))

    def group(self) -> List[Point]:
        return self.curve.enumerate_group()

    def kernel(self, beta: QuadInt) -> List[Point]:
        return kernel_of(beta, self.curve, self.endo)

    def quad(self, x: int, y: int = 0) -> QuadInt:
        return QuadInt(x, y, self.order)

    def mul(self, beta: QuadInt, P: Point) -> Point:
        return apply_r(beta, P, self.endo)

    def memo(self, key: tuple, compute: Callable[[], Any]) -> Any:
        """按输入缓存原始值

        辅助点由 (seed, 输入) 派生，同一输入总得到同一原始值。
        失败（异常）不缓存。
        """
        if key in self._values:
            return self._values[key]
        value = compute()
        if len(self._values) >= MEMO_LIMIT:
            self._values.clear()
        self._values[key] = value
        return value


def _search(ctx: PairingContext, rng: random.Random, attempt: Callable, draws: int = 1,
            aux: Optional[Sequence[Point]] = None, what: str = 'pairing'):
    """重复抽取辅助点直到 attempt 成功"""
    if aux is not None:
        return attempt(*aux)
    points = ctx.group()
    for i in range(ctx.retries):
        chosen = [rng.choice(points) for _ in range(draws)]
        try:
            return attempt(*chosen)
        except (SupportCollision, ZeroEvaluation) as e:
            logger.debug("%s: auxiliary %s rejected on try %d (%s)",
                         what, ", ".join(map(str, chosen)), i + 1, e)
    raise RetriesExhausted(f"{what}: no auxiliary point within {ctx.retries} tries")


# ============================================================
# 经典配对
# ============================================================

@dataclass(frozen=True)
class ClassicalValue:
    """经典 Tate 值：陪集代表元与最终幂后的单位根"""

    value: FieldElement
    n: int
    root: Optional[FieldElement]

    def exponent(self, h: Optional[FieldElement] = None) -> int:
        """root = g^e，g = h^{(q-1)/n}"""
        if self.root is None:
            raise PairingError(f"mu_{self.n} is not contained in {self.value.field}")
        h = h or self.value.field.generator
        g = h ** ((self.value.field.q - 1) // self.n)
        return discrete_log(g, self.root, self.n)


def _require_torsion(P: Point, n: int, what: str):
    if n < 1:
        raise PairingError(f"{what}: n must be positive, got {n}")
    if not (n * P).is_infinity:
        raise NotInKernel(f"{what}: [{n}]{P} != O")


def tate_classical(P: Point, Q: Point, n: int, ctx: PairingContext,
                   aux: Optional[Point] = None) -> ClassicalValue:
    """t_n(P, Q) = f_P((Q+S) - (S))，div(f_P) = n(P) - n(O)"""
    _require_torsion(P, n, 'tate')
    F = ctx.field
    if P.is_infinity or Q.is_infinity or n == 1:
        value = F.one
    else:
        f = ctx.memo(('plan', P, n), lambda: EvalPlan(ctx.curve, [(P, n)]))

        def attempt(S: Point) -> FieldElement:
            return f.evaluate({Q + S: 1, S: -1})

        value = ctx.memo(('tate', P, Q, n, aux), lambda: _search(
            ctx, ctx.rng('tate', str(P), str(Q), n), attempt,
            aux=None if aux is None else [aux], what='tate'))
    root = value ** ((F.q - 1) // n) if (F.q - 1) % n == 0 else None
    return ClassicalValue(value, n, root)


def weil_classical(P: Point, Q: Point, n: int, ctx: PairingContext,
                   aux: Optional[Point] = None) -> FieldElement:
    """e_n(P,Q) = f_P(Q-T) f_Q(T) / (f_P(-T) f_Q(P+T))"""
    _require_torsion(P, n, 'weil')
    _require_torsion(Q, n, 'weil')
    if P.is_infinity or Q.is_infinity or n == 1:
        return ctx.field.one
    fP = ctx.memo(('plan', P, n), lambda: EvalPlan(ctx.curve, [(P, n)]))
    fQ = ctx.memo(('plan', Q, n), lambda: EvalPlan(ctx.curve, [(Q, n)]))

    def attempt(T: Point) -> FieldElement:
        if T.is_infinity or T in (-P, Q, Q - P):
            raise SupportCollision(f"T = {T} is excluded")
        return fP.evaluate({Q - T: 1, -T: -1}) / fQ.evaluate({P + T: 1, T: -1})

    return ctx.memo(('weil', P, Q, n, aux), lambda: _search(
        ctx, ctx.rng('weil', str(P), str(Q), n), attempt,
        aux=None if aux is None else [aux], what='weil'))


# ============================================================
# R-除子类上的 T_α 与 W_α
# ============================================================

def _in_kernel(pair: CanonicalPair, beta: QuadInt) -> bool:
    return pair.scale(beta).is_trivial()


def t_alpha(DP: RDivisor, DQ: RDivisor, alpha: QuadInt, ctx: PairingContext,
            aux: Optional[Point] = None) -> PairingValue:
    """T_α(D_P, D_Q) = f_P(D_Q)，div(f_P) = ᾱ·D_P，值模 ᾱ-幂

    f_P 由 D_P 的规范形式 (P0, P1) 构造：
        div(f_0) = a(P0) + b(P1) - (a+b)(O)
        div(f_1) = c(P0) + d(P1) - (c+d)(O)
    其中 ᾱ = a + cτ，ᾱτ = b + dτ。
    """
    alpha_bar = alpha.conj()
    pair = canonical_form(DP)
    if not _in_kernel(pair, alpha_bar):
        raise NotInKernel(f"D_P = {pair} is not killed by {alpha_bar}")
    if not DQ.degree().is_zero():
        raise NonzeroDegree(f"D_Q has degree {DQ.degree()}")
    if pair.is_trivial() or DQ.is_zero():
        return PairingValue.coset(GmElement.identity(ctx.field), alpha_bar, op='T_alpha')

    f = ctx.memo(('f_D', pair, alpha_bar),
                 lambda: RFunction.with_divisor(pair.expand(ctx.order).scale(alpha_bar)))
    forbidden = {R: 1 for R in f.support()}

    def attempt(S: Point) -> GmElement:
        shifted = translate(DQ, S)
        if not supports_disjoint(shifted, forbidden):
            raise SupportCollision(f"translate by {S} meets div(f_P)")
        return f.evaluate(shifted)

    def evaluate() -> GmElement:
        if aux is None and supports_disjoint(DQ, forbidden):
            try:
                return f.evaluate(DQ)
            except (SupportCollision, ZeroEvaluation) as e:
                logger.debug("T_alpha: direct evaluation failed (%s), translating", e)
        return _search(ctx, ctx.rng('t_alpha', repr(DP), repr(DQ), str(alpha)), attempt,
                       aux=None if aux is None else [aux], what='T_alpha')

    raw = ctx.memo(('t_alpha', frozenset(DP.items()), frozenset(DQ.items()), alpha, aux), evaluate)
    return PairingValue.coset(raw, alpha_bar, op='T_alpha')


def w_alpha(DP: RDivisor, DQ: RDivisor, alpha: QuadInt, ctx: PairingContext,
            aux: Optional[Tuple[Point, Point]] = None) -> PairingValue:
    """W_α(D_P, D_Q) = f_P(D_Q') · conj(f_Q(D_P'))^{-1}，精确值 ∈ G[ᾱ]

    D_P'、D_Q' 为规范形式分别平移 T、T' 后的代表元，两者均不含 O。
    """
    alpha_bar = alpha.conj()
    P = canonical_form(DP)
    Q = canonical_form(DQ)
    if not _in_kernel(P, alpha_bar):
        raise NotInKernel(f"D_P = {P} is not killed by {alpha_bar}")
    if not _in_kernel(Q, alpha):
        raise NotInKernel(f"D_Q = {Q} is not killed by {alpha}")
    if P.is_trivial() or Q.is_trivial():
        return PairingValue.exact(GmElement.identity(ctx.field), alpha_bar, op='W_alpha')

    order = ctx.order
    DP0, DQ0 = P.expand(order), Q.expand(order)

    def attempt(T: Point, T2: Point) -> GmElement:
        DPt, DQt = translate(DP0, T), translate(DQ0, T2)
        O = ctx.curve.infinity
        if O in DPt.support() or O in DQt.support() or not supports_disjoint(DPt, DQt):
            raise SupportCollision(f"translates by {T}, {T2} collide")
        fP = RFunction.with_divisor(DPt.scale(alpha_bar))
        fQ = RFunction.with_divisor(DQt.scale(alpha))
        return fP.evaluate(DQt) * gm_conj(fQ.evaluate(DPt), order).inverse()

    key = ('w_alpha', P, Q, alpha, None if aux is None else tuple(aux))
    raw = ctx.memo(key, lambda: _search(
        ctx, ctx.rng('w_alpha', str(P), str(Q), str(alpha)), attempt, draws=2,
        aux=aux, what='W_alpha'))
    return PairingValue.exact(raw, alpha_bar, op='W_alpha')


# ============================================================
# 点上的 T̂_α 与 Ŵ_α
# ============================================================

def t_hat(P: Point, Q: Point, alpha: QuadInt, ctx: PairingContext,
          aux: Optional[Point] = None) -> PairingValue:
    """T̂_α(P, Q) = f_P(D_Q)，值模 α-幂

    div(f_{P,1}) = a([-τ]P) + b(P) - (a+b)(O)
    div(f_{P,2}) = c([-τ]P) + d(P) - (c+d)(O)，α = a + cτ，ατ = b + dτ
    D_{Q,1} = ([-τ]Q + [-τ]S) - ([-τ]S)
    D_{Q,2} = (Q + S) - (S)
    T̂_α(P, Q) = f_P(D_{Q,1}) · f_P(D_{Q,2})^{τ̄}
    """
    if not ctx.mul(alpha.conj(), P).is_infinity:
        raise NotInKernel(f"[{alpha.conj()}]{P} != O")
    if P.is_infinity or Q.is_infinity:
        return PairingValue.coset(GmElement.identity(ctx.field), alpha, op='t_hat')

    order = ctx.order
    minus_tau = -order.tau
    f = ctx.memo(('f_P', P, alpha), lambda: RFunction.with_divisor(eta(P, ctx.endo).scale(alpha)))
    forbidden = {R: 1 for R in f.support()}
    minus_tau_Q = ctx.mul(minus_tau, Q)

    def attempt(S: Point) -> GmElement:
        minus_tau_S = ctx.mul(minus_tau, S)
        DQ = RDivisor(ctx.curve, order, [
            (minus_tau_Q + minus_tau_S, order.one), (minus_tau_S, -order.one),
            (Q + S, order.tau), (S, -order.tau),
        ])
        if not supports_disjoint(DQ, forbidden):
            raise SupportCollision(f"S = {S} puts D_Q on the support of f_P")
        return f.evaluate(DQ)

    raw = ctx.memo(('t_hat', P, Q, alpha, aux), lambda: _search(
        ctx, ctx.rng('t_hat', str(P), str(Q), str(alpha)), attempt,
        aux=None if aux is None else [aux], what='t_hat'))
    return PairingValue.coset(raw, alpha, op='t_hat')


def w_hat(P: Point, Q: Point, alpha: QuadInt, ctx: PairingContext,
          aux: Optional[Tuple[Point, Point]] = None) -> PairingValue:
    """Ŵ_α(P, Q) = W_ᾱ(η(P), η(Q))，精确值 ∈ G[α]"""
    if not ctx.mul(alpha.conj(), P).is_infinity:
        raise NotInKernel(f"[{alpha.conj()}]{P} != O")
    if not ctx.mul(alpha, Q).is_infinity:
        raise NotInKernel(f"[{alpha}]{Q} != O")
    value = w_alpha(eta(P, ctx.endo), eta(Q, ctx.endo), alpha.conj(), ctx, aux=aux)
    value.op = 'w_hat'
    return value


def t_hat_via_tn(P: Point, Q: Point, n: int, ctx: PairingContext) -> PairingValue:
    """T̂_n(P,Q) = (t_n(P,Q)^{2N(τ)} t_n([-τ]P,Q)^{Tr(τ)}) · t_n([τ-τ̄]P,Q)^τ"""
    _require_torsion(P, n, 't_hat_via_tn')
    order = ctx.order
    tau = order.tau
    x1 = tate_classical(P, Q, n, ctx).value
    x2 = tate_classical(ctx.mul(-tau, P), Q, n, ctx).value
    x3 = tate_classical(ctx.mul(tau - tau.conj(), P), Q, n, ctx).value
    raw = GmElement(x1 ** (2 * tau.norm()) * x2 ** tau.trace(), x3)
    return PairingValue.coset(raw, QuadInt(n, 0, order), op='t_hat_via_tn')


def w_hat_via_en(P: Point, Q: Point, n: int, ctx: PairingContext) -> PairingValue:
    """Ŵ_n(P,Q) = (e_n(P,Q)^{2N(τ)} e_n([-τ]P,Q)^{Tr(τ)}) · e_n([τ-τ̄]P,Q)^τ"""
    order = ctx.order
    tau = order.tau
    x1 = weil_classical(P, Q, n, ctx)
    x2 = weil_classical(ctx.mul(-tau, P), Q, n, ctx)
    x3 = weil_classical(ctx.mul(tau - tau.conj(), P), Q, n, ctx)
    raw = GmElement(x1 ** (2 * tau.norm()) * x2 ** tau.trace(), x3)
    return PairingValue.exact(raw, QuadInt(n, 0, order), op='w_hat_via_en')


def norm_relation_check(P: Point, Q: Point, alpha: QuadInt, ctx: PairingContext) -> bool:
    """T̂_{N(α)}(P,Q) ≡ T̂_α(P,Q)^{ᾱ} 模 α-幂"""
    lhs = t_hat_via_tn(P, Q, alpha.norm(), ctx).raw
    rhs = gm_pow(t_hat(P, Q, alpha, ctx).raw, alpha.conj())
    return equal_mod_alpha_powers(lhs, rhs, alpha, ctx.h)


# ============================================================
# 乘积公式
# ============================================================

def _basis(order: QuadOrder) -> Tuple[QuadInt, QuadInt]:
    return (order.one, order.tau)


def t_n_product(DP: RDivisor, DQ: RDivisor, n: int, ctx: PairingContext) -> PairingValue:
    """T_n(D_P, D_Q) = ∏ t_n(P_i, Q_j)^{τ̄_j τ_i}"""
    Ps, Qs = canonical_form(DP).points(), canonical_form(DQ).points()
    basis = _basis(ctx.order)
    raw = GmElement.identity(ctx.field)
    for i, Pi in enumerate(Ps):
        for j, Qj in enumerate(Qs):
            t = tate_classical(Pi, Qj, n, ctx).value
            raw = raw * gm_pow(GmElement.simple(t), basis[j].conj() * basis[i])
    return PairingValue.coset(raw, QuadInt(n, 0, ctx.order), op='T_n_product')


def t_n_closed_form(DP: RDivisor, DQ: RDivisor, n: int, ctx: PairingContext) -> PairingValue:
    """(t(P0,Q0) t(P1,Q1)^{N(τ)} t(P0,Q1)^{Tr(τ)}) · (t(P1,Q0) t(P0,Q1)^{-1})^τ"""
    (P0, P1), (Q0, Q1) = canonical_form(DP).points(), canonical_form(DQ).points()
    tau = ctx.order.tau

    def t(P: Point, Q: Point) -> FieldElement:
        return tate_classical(P, Q, n, ctx).value

    t01 = t(P0, Q1)
    raw = GmElement(t(P0, Q0) * t(P1, Q1) ** tau.norm() * t01 ** tau.trace(),
                    t(P1, Q0) / t01)
    return PairingValue.coset(raw, QuadInt(n, 0, ctx.order), op='T_n_closed_form')


def w_n_product(DP: RDivisor, DQ: RDivisor, n: int, ctx: PairingContext) -> PairingValue:
    """W_n(D_P, D_Q) = ∏ e_n(P_i, Q_j)^{τ̄_j τ_i}"""
    Ps, Qs = canonical_form(DP).points(), canonical_form(DQ).points()
    basis = _basis(ctx.order)
    raw = GmElement.identity(ctx.field)
    for i, Pi in enumerate(Ps):
        for j, Qj in enumerate(Qs):
            e = weil_classical(Pi, Qj, n, ctx)
            raw = raw * gm_pow(GmElement.simple(e), basis[j].conj() * basis[i])
    return PairingValue.exact(raw, QuadInt(n, 0, ctx.order), op='W_n_product')


# ============================================================
# 统一入口（CLI 使用）
# ============================================================

def _classical_value(value: FieldElement, n: int, ctx: PairingContext, op: str,
                     exact: bool) -> PairingValue:
    raw = GmElement.simple(value)
    modulus = QuadInt(n, 0, ctx.order)
    if exact:
        return PairingValue.exact(raw, modulus, op=op)
    return PairingValue.coset(raw, modulus, op=op)


def _integer_alpha(alpha: QuadInt, op: str) -> int:
    if not alpha.is_integer() or alpha.x < 1:
        raise PairingError(f"{op} needs a positive integer alpha, got {alpha}")
    return alpha.x


OPERATIONS: Dict[str, Callable] = {
    't_hat': lambda P, Q, a, ctx, aux: t_hat(P, Q, a, ctx, aux=aux),
    'w_hat': lambda P, Q, a, ctx, aux: w_hat(P, Q, a, ctx),
    't_hat_via_tn': lambda P, Q, a, ctx, aux: t_hat_via_tn(P, Q, _integer_alpha(a, 't_hat_via_tn'), ctx),
    'w_hat_via_en': lambda P, Q, a, ctx, aux: w_hat_via_en(P, Q, _integer_alpha(a, 'w_hat_via_en'), ctx),
    't_alpha': lambda P, Q, a, ctx, aux: t_alpha(RDivisor.point_minus_origin(P, ctx.order),
                                                 RDivisor.point_minus_origin(Q, ctx.order), a, ctx, aux=aux),
    'w_alpha': lambda P, Q, a, ctx, aux: w_alpha(RDivisor.point_minus_origin(P, ctx.order),
                                                 RDivisor.point_minus_origin(Q, ctx.order), a, ctx),
    'tate': lambda P, Q, a, ctx, aux: _classical_value(
        tate_classical(P, Q, _integer_alpha(a, 'tate'), ctx, aux=aux).value,
        a.x, ctx, 'tate', exact=False),
    'weil': lambda P, Q, a, ctx, aux: _classical_value(
        weil_classical(P, Q, _integer_alpha(a, 'weil'), ctx, aux=aux),
        a.x, ctx, 'weil', exact=True),
}


def compute(op: str, P: Point, Q: Point, alpha: QuadInt, ctx: PairingContext,
            aux: Optional[Point] = None) -> PairingValue:
    """按名称计算配对值"""
    if op not in OPERATIONS:
        raise PairingError(f"unknown operation {op!r}; choose from {', '.join(sorted(OPERATIONS))}")
    if alpha.is_zero():
        raise PairingError("alpha must be nonzero")
    logger.info("computing %s(%s, %s) for alpha = %s", op, P, Q, alpha)
    return OPERATIONS[op](P, Q, alpha, ctx, aux)

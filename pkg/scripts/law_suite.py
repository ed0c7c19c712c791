#!/usr/bin/env python3
"""
Law Suite - 配对律的随机化验证

对固定的 (上下文, α) 抽取种子化随机输入，逐条验证配对满足的代数律，
统计通过次数并记录首个反例。失败（包括异常）只写入报告，从不向外抛出。

覆盖的定律：
1. 半双线性 / 双线性 / 与 [β] 的相容性（T̂ 与 Ŵ）
2. Ŵ 的共轭斜 Hermite 性、挠性与范数关系
3. 相干性（T̂、Ŵ 各两种形式）
4. 广义 Weil 互反律 f(div g) = conj(g(div f))，以及整数情形
5. 辅助点无关性、T_α 的扭半双线性、T_N ≡ T_α^α
6. 交叉校验：t_n / e_n 乘积公式、T̂_n 的 t_n 表示、原像构造
7. 经典 e_n / t_n 的交错性、斜对称性与双线性
8. η 的扭曲律与 CM 根互换

Author: Bobo (Sesquilinear Pairings)
"""

import logging
import random
from math import gcd
from typing import Any, Callable, Dict, List, Optional, Tuple

import pandas as pd

from curve_cm import CMEndo, Point
from errors import PairingError, SupportCollision, ZeroEvaluation
from gm_module import GmElement, PairingValue, equal_mod_alpha_powers, gm_conj, gm_pow
from miller import EvalPlan, RFunction
from pairings import (PairingContext, t_alpha, t_hat, t_hat_via_tn, t_n_closed_form,
                      t_n_product, tate_classical, w_alpha, w_hat, w_hat_via_en,
                      w_n_product, weil_classical, norm_relation_check)
from quad_order import QuadInt, action_matrix
from rdivisor import CanonicalPair, RDivisor, canonical_form, eta

logger = logging.getLogger(__name__)

DEFAULT_TRIALS = 500
COEFF_BOUND = 4
SAMPLE_TRIES = 32


class LawSuite:
    """随机化定律检验器"""

    def __init__(self, ctx: PairingContext, alpha: QuadInt, trials: int = DEFAULT_TRIALS):
        """初始化

        Args:
            ctx: 配对上下文
            alpha: 被检验的 α（N(α) 与 q 互素）
            trials: 每条定律的随机试验次数
        """
        if alpha.is_zero():
            raise PairingError("alpha must be nonzero")
        self.ctx = ctx
        self.alpha = alpha
        self.trials = trials
        self.norm = alpha.norm()
        self.order = ctx.order
        self.swapped = swapped_context(ctx)

        self.laws: Dict[str, Callable[[random.Random], Optional[str]]] = {
            'sesquilinearity_t_hat': self._sesquilinearity_t_hat,
            'bilinearity_t_hat_left': self._bilinearity_t_hat_left,
            'bilinearity_t_hat_right': self._bilinearity_t_hat_right,
            'compatibility_t_hat': self._compatibility_t_hat,
            'coherence_t_hat_left': self._coherence_t_hat_left,
            'coherence_t_hat_right': self._coherence_t_hat_right,
            'norm_relation_t_hat': self._norm_relation_t_hat,
            'aux_independence_t_hat': self._aux_independence,
            'cross_oracle_t_hat': self._cross_oracle_t_hat,
            'sesquilinearity_w_hat': self._sesquilinearity_w_hat,
            'bilinearity_w_hat': self._bilinearity_w_hat,
            'compatibility_w_hat': self._compatibility_w_hat,
            'skew_hermitian_w_hat': self._skew_hermitian_w_hat,
            'torsion_w_hat': self._torsion_w_hat,
            'coherence_w_hat_left': self._coherence_w_hat_left,
            'coherence_w_hat_right': self._coherence_w_hat_right,
            'norm_relation_w_hat': self._norm_relation_w_hat,
            'cross_oracle_w_hat': self._cross_oracle_w_hat,
            'twisted_sesquilinearity_t_alpha': self._twisted_sesquilinearity,
            't_n_vs_t_alpha': self._t_n_vs_t_alpha,
            'product_formula_t_n': self._product_formula_t_n,
            'product_formula_w_n': self._product_formula_w_n,
            'preimage_oracle': self._preimage_oracle,
            'reciprocity': self._reciprocity,
            'reciprocity_integer': self._reciprocity_integer,
            'classical_weil': self._classical_weil,
            'classical_tate': self._classical_tate,
            'twisting_eta': self._twisting_eta,
            'root_swap': self._root_swap,
        }

    # ============================================================
    # 运行与报告
    # ============================================================

    def run(self, only: Optional[List[str]] = None) -> Dict[str, Any]:
        """运行全部（或指定的）定律

        Returns:
            报告字典：每条定律的试验数、通过数与首个反例
        """
        names = only or list(self.laws)
        unknown = [name for name in names if name not in self.laws]
        if unknown:
            raise PairingError(f"unknown laws: {', '.join(unknown)}")
        if self.trials <= 0:
            logger.warning("law suite run with trials = %d: every law passes vacuously", self.trials)

        results = {}
        for name in names:
            rng = self.ctx.rng('law', name, str(self.alpha))
            passed, first_failure = 0, None
            for trial in range(self.trials):
                try:
                    failure = self.laws[name](rng)
                except Exception as e:
                    failure = f"{type(e).__name__}: {e}"
                if failure is None:
                    passed += 1
                elif first_failure is None:
                    first_failure = f"trial {trial}: {failure}"
                    logger.info("law %s failed on trial %d: %s", name, trial, failure)
            results[name] = {
                'trials': self.trials,
                'passed': passed,
                'failed': self.trials - passed,
                'counterexample': first_failure,
            }
            logger.info("law %s: %d/%d", name, passed, self.trials)

        return {
            'context': repr(self.ctx),
            'alpha': str(self.alpha),
            'seed': self.ctx.seed,
            'trials': self.trials,
            'laws': results,
            'all_passed': all(r['failed'] == 0 for r in results.values()),
        }

    # ============================================================
    # 采样
    # ============================================================

    def _quad(self, rng: random.Random, nonzero: bool = True) -> QuadInt:
        while True:
            beta = QuadInt(rng.randint(-COEFF_BOUND, COEFF_BOUND),
                           rng.randint(-COEFF_BOUND, COEFF_BOUND), self.order)
            if not (nonzero and beta.is_zero()):
                return beta

    def _coprime_quad(self, rng: random.Random) -> QuadInt:
        """N(β) 与 N(α) 互素的小元素"""
        while True:
            beta = self._quad(rng)
            if gcd(beta.norm(), self.norm) == 1:
                return beta

    def _point(self, rng: random.Random) -> Point:
        return rng.choice(self.ctx.group())

    def _in_kernel(self, rng: random.Random, beta: QuadInt) -> Point:
        return rng.choice(self.ctx.kernel(beta))

    def _pic_alpha_bar(self, rng: random.Random) -> RDivisor:
        """Pic⁰_R[ᾱ] 中的随机元素：γ·η(P) + δ·η(P')，P, P' ∈ E[α]"""
        endo = self.ctx.endo
        P, P2 = self._in_kernel(rng, self.alpha), self._in_kernel(rng, self.alpha)
        return eta(P, endo).scale(self._quad(rng, False)) + eta(P2, endo).scale(self._quad(rng, False))

    def _pic_torsion(self, rng: random.Random, n: int) -> RDivisor:
        n_quad = QuadInt(n, 0, self.order)
        return CanonicalPair(self._in_kernel(rng, n_quad), self._in_kernel(rng, n_quad)).expand(self.order)

    def _random_divisor(self, rng: random.Random) -> RDivisor:
        """γ(Q0) + δ(Q1) - (γ+δ)(R)"""
        Q0, Q1, R = self._point(rng), self._point(rng), self._point(rng)
        gamma, delta = self._quad(rng, False), self._quad(rng, False)
        return RDivisor(self.ctx.curve, self.order, [(Q0, gamma), (Q1, delta), (R, -gamma - delta)])

    def _same(self, left: PairingValue, right: PairingValue, what: str) -> Optional[str]:
        return None if left == right else f"{what}: {left.display()} != {right.display()}"

    def _same_mod(self, left: GmElement, right: GmElement, modulus: QuadInt,
                  what: str) -> Optional[str]:
        if equal_mod_alpha_powers(left, right, modulus, self.ctx.h):
            return None
        return f"{what}: {left} !~ {right} mod ({modulus})"

    # ============================================================
    # T̂_α
    # ============================================================

    def _sesquilinearity_t_hat(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._in_kernel(rng, alpha.conj()), self._point(rng)
        gamma, delta = self._quad(rng, False), self._quad(rng, False)
        lhs = t_hat(ctx.mul(gamma, P), ctx.mul(delta, Q), alpha, ctx).raw
        rhs = gm_pow(t_hat(P, Q, alpha, ctx).raw, gamma.conj() * delta)
        return self._same_mod(lhs, rhs, alpha, f"P={P} Q={Q} gamma={gamma} delta={delta}")

    def _bilinearity_t_hat_left(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P, P2 = self._in_kernel(rng, alpha.conj()), self._in_kernel(rng, alpha.conj())
        Q = self._point(rng)
        lhs = t_hat(P + P2, Q, alpha, ctx).raw
        rhs = t_hat(P, Q, alpha, ctx).raw * t_hat(P2, Q, alpha, ctx).raw
        return self._same_mod(lhs, rhs, alpha, f"P={P} P'={P2} Q={Q}")

    def _bilinearity_t_hat_right(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P = self._in_kernel(rng, alpha.conj())
        Q, Q2 = self._point(rng), self._point(rng)
        lhs = t_hat(P, Q + Q2, alpha, ctx).raw
        rhs = t_hat(P, Q, alpha, ctx).raw * t_hat(P, Q2, alpha, ctx).raw
        return self._same_mod(lhs, rhs, alpha, f"P={P} Q={Q} Q'={Q2}")

    def _compatibility_t_hat(self, rng: random.Random) -> Optional[str]:
        """φ = [β]：T̂_α(φP, φQ) = T̂_α(P,Q)^{deg φ}"""
        ctx, alpha = self.ctx, self.alpha
        P, Q, beta = self._in_kernel(rng, alpha.conj()), self._point(rng), self._quad(rng)
        lhs = t_hat(ctx.mul(beta, P), ctx.mul(beta, Q), alpha, ctx).raw
        rhs = gm_pow(t_hat(P, Q, alpha, ctx).raw, beta.norm())
        return self._same_mod(lhs, rhs, alpha, f"P={P} Q={Q} beta={beta}")

    def _coherence_t_hat_left(self, rng: random.Random) -> Optional[str]:
        """T̂_{αβ}(P,Q) ≡ T̂_α([β̄]P, Q) 模 α-幂"""
        ctx, alpha = self.ctx, self.alpha
        beta = self._coprime_quad(rng)
        P, Q = self._in_kernel(rng, (alpha * beta).conj()), self._point(rng)
        lhs = t_hat(P, Q, alpha * beta, ctx).raw
        rhs = t_hat(ctx.mul(beta.conj(), P), Q, alpha, ctx).raw
        return self._same_mod(lhs, rhs, alpha, f"P={P} Q={Q} beta={beta}")

    def _coherence_t_hat_right(self, rng: random.Random) -> Optional[str]:
        """T̂_{αβ}(P,Q) ≡ T̂_β(P, [α]Q) 模 β-幂"""
        ctx, alpha = self.ctx, self.alpha
        beta = self._coprime_quad(rng)
        P, Q = self._in_kernel(rng, beta.conj()), self._point(rng)
        lhs = t_hat(P, Q, alpha * beta, ctx).raw
        rhs = t_hat(P, ctx.mul(alpha, Q), beta, ctx).raw
        return self._same_mod(lhs, rhs, beta, f"P={P} Q={Q} beta={beta}")

    def _norm_relation_t_hat(self, rng: random.Random) -> Optional[str]:
        P, Q = self._in_kernel(rng, self.alpha.conj()), self._point(rng)
        if norm_relation_check(P, Q, self.alpha, self.ctx):
            return None
        return f"P={P} Q={Q}"

    def _aux_independence(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._in_kernel(rng, alpha.conj()), self._point(rng)
        values = []
        for _ in range(SAMPLE_TRIES):
            S = self._point(rng)
            try:
                values.append((S, t_hat(P, Q, alpha, ctx, aux=S)))
            except (SupportCollision, ZeroEvaluation):
                continue
            if len(values) == 2:
                (S1, v1), (S2, v2) = values
                return self._same(v1, v2, f"P={P} Q={Q} S={S1} vs S={S2}")
        return None

    def _cross_oracle_t_hat(self, rng: random.Random) -> Optional[str]:
        """t_hat(·,·,n) ≡ t_hat_via_tn(·,·,n)，n = N(α)"""
        ctx, n = self.ctx, self.norm
        n_quad = QuadInt(n, 0, self.order)
        P, Q = self._in_kernel(rng, n_quad), self._point(rng)
        return self._same(t_hat(P, Q, n_quad, ctx), t_hat_via_tn(P, Q, n, ctx),
                          f"n={n} P={P} Q={Q}")

    # ============================================================
    # Ŵ_α
    # ============================================================

    def _w_inputs(self, rng: random.Random) -> Tuple[Point, Point]:
        return self._in_kernel(rng, self.alpha.conj()), self._in_kernel(rng, self.alpha)

    def _sesquilinearity_w_hat(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._w_inputs(rng)
        gamma, delta = self._quad(rng, False), self._quad(rng, False)
        lhs = w_hat(ctx.mul(gamma, P), ctx.mul(delta, Q), alpha, ctx).raw
        rhs = gm_pow(w_hat(P, Q, alpha, ctx).raw, gamma.conj() * delta)
        return None if lhs == rhs else f"P={P} Q={Q} gamma={gamma} delta={delta}: {lhs} != {rhs}"

    def _bilinearity_w_hat(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._w_inputs(rng)
        P2, Q2 = self._w_inputs(rng)
        base = w_hat(P, Q, alpha, ctx).raw
        left = w_hat(P + P2, Q, alpha, ctx).raw
        right = w_hat(P, Q + Q2, alpha, ctx).raw
        if left != base * w_hat(P2, Q, alpha, ctx).raw:
            return f"left slot P={P} P'={P2} Q={Q}"
        if right != base * w_hat(P, Q2, alpha, ctx).raw:
            return f"right slot P={P} Q={Q} Q'={Q2}"
        return None

    def _compatibility_w_hat(self, rng: random.Random) -> Optional[str]:
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._w_inputs(rng)
        beta = self._quad(rng)
        lhs = w_hat(ctx.mul(beta, P), ctx.mul(beta, Q), alpha, ctx).raw
        rhs = gm_pow(w_hat(P, Q, alpha, ctx).raw, beta.norm())
        return None if lhs == rhs else f"P={P} Q={Q} beta={beta}"

    def _skew_hermitian_w_hat(self, rng: random.Random) -> Optional[str]:
        """Ŵ_α(P,Q) = conj(Ŵ_ᾱ(Q,P))^{-1}"""
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._w_inputs(rng)
        lhs = w_hat(P, Q, alpha, ctx).raw
        rhs = gm_conj(w_hat(Q, P, alpha.conj(), ctx).raw, self.order).inverse()
        return None if lhs == rhs else f"P={P} Q={Q}: {lhs} != {rhs}"

    def _torsion_w_hat(self, rng: random.Random) -> Optional[str]:
        P, Q = self._w_inputs(rng)
        value = w_hat(P, Q, self.alpha, self.ctx).raw
        return None if gm_pow(value, self.alpha).is_identity() else f"P={P} Q={Q}: {value}"

    def _coherence_w_hat_left(self, rng: random.Random) -> Optional[str]:
        """Ŵ_{αβ}(P,Q) = Ŵ_α([β̄]P, Q)，Q ∈ E[α]"""
        ctx, alpha = self.ctx, self.alpha
        beta = self._coprime_quad(rng)
        P, Q = self._in_kernel(rng, (alpha * beta).conj()), self._in_kernel(rng, alpha)
        lhs = w_hat(P, Q, alpha * beta, ctx).raw
        rhs = w_hat(ctx.mul(beta.conj(), P), Q, alpha, ctx).raw
        return None if lhs == rhs else f"P={P} Q={Q} beta={beta}"

    def _coherence_w_hat_right(self, rng: random.Random) -> Optional[str]:
        """Ŵ_{αβ}(P,Q) = Ŵ_β(P, [α]Q)，P ∈ E[β̄]"""
        ctx, alpha = self.ctx, self.alpha
        beta = self._coprime_quad(rng)
        P, Q = self._in_kernel(rng, beta.conj()), self._in_kernel(rng, alpha * beta)
        lhs = w_hat(P, Q, alpha * beta, ctx).raw
        rhs = w_hat(P, ctx.mul(alpha, Q), beta, ctx).raw
        return None if lhs == rhs else f"P={P} Q={Q} beta={beta}"

    def _norm_relation_w_hat(self, rng: random.Random) -> Optional[str]:
        """Ŵ_{N(α)}(P,Q) = Ŵ_α(P,Q)^{ᾱ}"""
        ctx, alpha = self.ctx, self.alpha
        P, Q = self._w_inputs(rng)
        lhs = w_hat(P, Q, QuadInt(self.norm, 0, self.order), ctx).raw
        rhs = gm_pow(w_hat(P, Q, alpha, ctx).raw, alpha.conj())
        return None if lhs == rhs else f"P={P} Q={Q}: {lhs} != {rhs}"

    def _cross_oracle_w_hat(self, rng: random.Random) -> Optional[str]:
        ctx, n = self.ctx, self.norm
        n_quad = QuadInt(n, 0, self.order)
        P, Q = self._in_kernel(rng, n_quad), self._in_kernel(rng, n_quad)
        return self._same(w_hat(P, Q, n_quad, ctx), w_hat_via_en(P, Q, n, ctx),
                          f"n={n} P={P} Q={Q}")

    # ============================================================
    # R-除子上的 T_α / W_α
    # ============================================================

    def _twisted_sesquilinearity(self, rng: random.Random) -> Optional[str]:
        """T_α(γ·D_P, δ·D_Q) ≡ T_α(D_P, D_Q)^{δ̄γ} 模 ᾱ-幂"""
        ctx, alpha = self.ctx, self.alpha
        DP, DQ = self._pic_alpha_bar(rng), self._random_divisor(rng)
        gamma, delta = self._quad(rng, False), self._quad(rng, False)
        lhs = t_alpha(DP.scale(gamma), DQ.scale(delta), alpha, ctx).raw
        rhs = gm_pow(t_alpha(DP, DQ, alpha, ctx).raw, delta.conj() * gamma)
        return self._same_mod(lhs, rhs, alpha.conj(), f"D_P={DP} D_Q={DQ} gamma={gamma} delta={delta}")

    def _t_n_vs_t_alpha(self, rng: random.Random) -> Optional[str]:
        """T_{N(α)}(D_P, D_Q) ≡ T_α(D_P, D_Q)^α 模 ᾱ-幂"""
        ctx, alpha = self.ctx, self.alpha
        DP, DQ = self._pic_alpha_bar(rng), self._random_divisor(rng)
        lhs = t_alpha(DP, DQ, QuadInt(self.norm, 0, self.order), ctx).raw
        rhs = gm_pow(t_alpha(DP, DQ, alpha, ctx).raw, alpha)
        return self._same_mod(lhs, rhs, alpha.conj(), f"D_P={DP} D_Q={DQ}")

    def _product_formula_t_n(self, rng: random.Random) -> Optional[str]:
        ctx, n = self.ctx, self.norm
        DP, DQ = self._pic_torsion(rng, n), self._random_divisor(rng)
        direct = t_alpha(DP, DQ, QuadInt(n, 0, self.order), ctx)
        return (self._same(direct, t_n_product(DP, DQ, n, ctx), f"product D_P={DP} D_Q={DQ}")
                or self._same(direct, t_n_closed_form(DP, DQ, n, ctx), f"closed form D_P={DP} D_Q={DQ}"))

    def _product_formula_w_n(self, rng: random.Random) -> Optional[str]:
        ctx, n = self.ctx, self.norm
        DP, DQ = self._pic_torsion(rng, n), self._pic_torsion(rng, n)
        return self._same(w_alpha(DP, DQ, QuadInt(n, 0, self.order), ctx),
                          w_n_product(DP, DQ, n, ctx), f"D_P={DP} D_Q={DQ}")

    def _preimage_oracle(self, rng: random.Random) -> Optional[str]:
        """T_α(D_P, D_Q) ≡ ∏ t_N(P_i, S_j)^{τ̄_jτ_i}，ᾱ·D_S ~ D_Q"""
        ctx, alpha = self.ctx, self.alpha
        DP = self._pic_alpha_bar(rng)
        DQ = CanonicalPair(self._point(rng), self._point(rng)).scale(alpha.conj())
        DS = solve_preimage(DQ, alpha.conj(), ctx)
        if DS is None:
            return f"no preimage found for {DQ}"
        lhs = t_alpha(DP, DQ.expand(self.order), alpha, ctx).raw
        rhs = t_n_product(DP, DS.expand(self.order), self.norm, ctx).raw
        return self._same_mod(lhs, rhs, alpha.conj(), f"D_P={DP} D_Q={DQ} D_S={DS}")

    # ============================================================
    # 互反律
    # ============================================================

    def _random_plan(self, rng: random.Random) -> EvalPlan:
        """(R1,a) + (R2,b) + (R3,c) + (R4,1)，c = -(a+b)-1，R4 = -([a]R1+[b]R2+[c]R3)"""
        curve = self.ctx.curve
        for _ in range(SAMPLE_TRIES):
            R1, R2, R3 = self._point(rng), self._point(rng), self._point(rng)
            a, b = rng.randint(-COEFF_BOUND, COEFF_BOUND), rng.randint(-COEFF_BOUND, COEFF_BOUND)
            c = -(a + b) - 1
            R4 = -(a * R1 + b * R2 + c * R3)
            if any(R.is_infinity for R in (R1, R2, R3, R4)):
                continue
            return EvalPlan(curve, [(R1, a), (R2, b), (R3, c), (R4, 1)])
        raise SupportCollision("could not sample an O-free principal divisor")

    def _disjoint_pair(self, rng: random.Random, make: Callable):
        for _ in range(SAMPLE_TRIES):
            f, g = make(rng), make(rng)
            if f.support().isdisjoint(g.support()):
                return f, g
        raise SupportCollision("could not sample functions with disjoint supports")

    def _reciprocity(self, rng: random.Random) -> Optional[str]:
        """f(div g) = conj(g(div f))"""
        order = self.order

        def make(r: random.Random) -> RFunction:
            return RFunction(self._random_plan(r), self._random_plan(r), order)

        for _ in range(SAMPLE_TRIES):
            f, g = self._disjoint_pair(rng, make)
            try:
                lhs = f.evaluate(g.divisor())
                rhs = gm_conj(g.evaluate(f.divisor()), order)
            except ZeroEvaluation:
                continue
            return None if lhs == rhs else f"f={f.f0},{f.f1} g={g.f0},{g.f1}: {lhs} != {rhs}"
        return None

    def _reciprocity_integer(self, rng: random.Random) -> Optional[str]:
        """f(div g) = g(div f)"""
        for _ in range(SAMPLE_TRIES):
            f, g = self._disjoint_pair(rng, self._random_plan)
            try:
                lhs, rhs = f.evaluate(g.divisor()), g.evaluate(f.divisor())
            except ZeroEvaluation:
                continue
            return None if lhs == rhs else f"f={f} g={g}: {lhs} != {rhs}"
        return None

    # ============================================================
    # 经典配对
    # ============================================================

    def _classical_weil(self, rng: random.Random) -> Optional[str]:
        ctx, n = self.ctx, self.norm
        n_quad = QuadInt(n, 0, self.order)
        P, P2, Q = (self._in_kernel(rng, n_quad) for _ in range(3))
        if weil_classical(P, P, n, ctx) != 1:
            return f"e_{n}({P},{P}) != 1"
        e = weil_classical(P, Q, n, ctx)
        if e * weil_classical(Q, P, n, ctx) != 1:
            return f"e_{n}({P},{Q}) e_{n}({Q},{P}) != 1"
        if weil_classical(P + P2, Q, n, ctx) != e * weil_classical(P2, Q, n, ctx):
            return f"e_{n} not linear in the left slot at {P}, {P2}, {Q}"
        if e ** n != 1:
            return f"e_{n}({P},{Q}) = {e} is not an n-th root of unity"
        return None

    def _classical_tate(self, rng: random.Random) -> Optional[str]:
        ctx, n = self.ctx, self.norm
        n_quad = QuadInt(n, 0, self.order)

        def t(P: Point, Q: Point) -> PairingValue:
            return PairingValue.coset(GmElement.simple(tate_classical(P, Q, n, ctx).value),
                                      n_quad, op='tate')

        P, P2 = self._in_kernel(rng, n_quad), self._in_kernel(rng, n_quad)
        Q, Q2 = self._point(rng), self._point(rng)
        base = t(P, Q)
        left = PairingValue.coset(base.raw * t(P2, Q).raw, n_quad)
        right = PairingValue.coset(base.raw * t(P, Q2).raw, n_quad)
        return (self._same(t(P + P2, Q), left, f"left slot P={P} P'={P2} Q={Q}")
                or self._same(t(P, Q + Q2), right, f"right slot P={P} Q={Q} Q'={Q2}"))

    # ============================================================
    # η 与 CM 根
    # ============================================================

    def _twisting_eta(self, rng: random.Random) -> Optional[str]:
        """η([γ]P) ~ γ̄·η(P)"""
        ctx = self.ctx
        P, gamma = self._point(rng), self._quad(rng, False)
        lhs = canonical_form(eta(ctx.mul(gamma, P), ctx.endo))
        rhs = canonical_form(eta(P, ctx.endo).scale(gamma.conj()))
        return None if lhs == rhs else f"P={P} gamma={gamma}: {lhs} != {rhs}"

    def _root_swap(self, rng: random.Random) -> Optional[str]:
        """换用共轭 CM 根：T̂'_ᾱ(P,Q) ≡ conj(T̂_α(P,Q)) 模 ᾱ-幂"""
        swapped = self.swapped
        if swapped is None:
            return None
        alpha = self.alpha
        P, Q = self._in_kernel(rng, alpha.conj()), self._point(rng)
        lhs = t_hat(P, Q, alpha.conj(), swapped).raw
        rhs = gm_conj(t_hat(P, Q, alpha, self.ctx).raw, self.order)
        return self._same_mod(lhs, rhs, alpha.conj(), f"P={P} Q={Q}")


def swapped_context(ctx: PairingContext) -> Optional[PairingContext]:
    """内置 CM 映射改用另一个根；查表映射返回 None"""
    endo = ctx.endo
    builders = {'builtin-j1728': (CMEndo.j1728, [0, 1]), 'builtin-j0': (CMEndo.j0, [1, 1])}
    if endo.provenance not in builders:
        return None
    build, coeffs = builders[endo.provenance]
    others = [r for r in ctx.field.roots_of(coeffs) if r != endo.root]
    return PairingContext(ctx.curve, build(ctx.curve, others[0].value),
                          seed=ctx.seed, retries=ctx.retries, h=ctx.h)


def solve_preimage(target: CanonicalPair, beta: QuadInt,
                   ctx: PairingContext) -> Optional[CanonicalPair]:
    """枚举求解 β·(S0, S1) = (Q0, Q1)

    即 [a]S0 + [b]S1 = Q0、[c]S0 + [d]S1 = Q1，(a, b, c, d) = action_matrix(β)。
    无解返回 None；群过大时 enumerate_group 抛出 ScaleExceeded。
    """
    m = action_matrix(beta)
    group = ctx.group()
    first = {}
    for S0 in group:
        first.setdefault((m.a * S0, m.c * S0), S0)
    for S1 in group:
        S0 = first.get((target.P0 - m.b * S1, target.P1 - m.d * S1))
        if S0 is not None:
            return CanonicalPair(S0, S1)
    return None


def property_suite(ctx: PairingContext, alpha: QuadInt, trials: int = DEFAULT_TRIALS,
                   only: Optional[List[str]] = None) -> Dict[str, Any]:
    return LawSuite(ctx, alpha, trials).run(only)


def format_report(report: Dict[str, Any]) -> str:
    """格式化为可读报告"""
    lines = []
    lines.append("=" * 60)
    lines.append("Law Suite Report")
    lines.append("=" * 60)
    lines.append(f"Context: {report['context']}")
    lines.append(f"alpha: {report['alpha']}    seed: {report['seed']}    trials: {report['trials']}")
    lines.append("")

    frame = pd.DataFrame.from_dict(report['laws'], orient='index',
                                   columns=['trials', 'passed', 'failed'])
    frame.index.name = 'law'
    lines.append(frame.to_string())
    lines.append("")

    failures = [(name, r['counterexample']) for name, r in report['laws'].items()
                if r['counterexample']]
    for name, counterexample in failures:
        lines.append(f"  {name}: {counterexample}")
    if failures:
        lines.append("")

    lines.append("=" * 60)
    lines.append(f"Result: {'PASS' if report['all_passed'] else 'FAIL'}")
    lines.append("=" * 60)
    return "\n".join(lines)

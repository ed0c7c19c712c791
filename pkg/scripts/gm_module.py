#!/usr/bin/env python3
"""
GM Module - 乘法 R-模 G_m^{⊗R}

元素存为 (g0, g1)，表示 g0^{⊗1}·g1^{⊗τ}。左作用 (x^α)^β = x^{βα}，
共轭 (g0, g1) ↦ (g0·g1^t, g1^{-1})。陪集相等通过离散对数 + 格成员判定完成。

显示格式：
    原始值  h^{e0+e1*tau}    （e0, e1 为以 h 为底的规范指数）
    约化值  g^{r}            （r 为 R/αR 中的规范代表元，g = h^{(q-1)/n}）

Author: Bobo (Sesquilinear Pairings)
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, Optional, Tuple

from errors import (DlogFailure, FieldMismatch, ModulusMismatch, NotInSubgroup,
                    NotRootOfUnity, PairingError)
from field import FieldElement, PrimeField, discrete_log
from quad_order import HermiteLattice, QuadInt, QuadOrder, action_matrix, residue_ring

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GmElement:
    """g0^{⊗1} · g1^{⊗τ}"""

    g0: FieldElement
    g1: FieldElement

    def __post_init__(self):
        if self.g0.field != self.g1.field:
            raise FieldMismatch(f"{self.g0.field} vs {self.g1.field}")
        if not self.g0 or not self.g1:
            raise PairingError("components of a G_m element must be nonzero")

    @classmethod
    def identity(cls, field: PrimeField) -> 'GmElement':
        return cls(field.one, field.one)

    @classmethod
    def simple(cls, g: FieldElement) -> 'GmElement':
        """g^{⊗1}"""
        return cls(g, g.field.one)

    @property
    def field(self) -> PrimeField:
        return self.g0.field

    def is_identity(self) -> bool:
        return self.g0 == 1 and self.g1 == 1

    def __mul__(self, other: 'GmElement') -> 'GmElement':
        return GmElement(self.g0 * other.g0, self.g1 * other.g1)

    def inverse(self) -> 'GmElement':
        return GmElement(self.g0.inverse(), self.g1.inverse())

    def __truediv__(self, other: 'GmElement') -> 'GmElement':
        return self * other.inverse()

    def __pow__(self, beta) -> 'GmElement':
        return gm_pow(self, beta)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.g0.value, self.g1.value)

    def __str__(self) -> str:
        return f"{self.g0.value}*{self.g1.value}^tau"


def gm_pow(u: GmElement, beta) -> GmElement:
    """u^β = (g0^a·g1^b, g0^c·g1^d)，(a, b, c, d) = action_matrix(β)"""
    if isinstance(beta, int):
        return GmElement(u.g0 ** beta, u.g1 ** beta)
    m = action_matrix(beta)
    return GmElement(u.g0 ** m.a * u.g1 ** m.b, u.g0 ** m.c * u.g1 ** m.d)


def gm_conj(u: GmElement, order: QuadOrder) -> GmElement:
    """τ̄ = t - τ ⇒ conj(g0, g1) = (g0·g1^t, g1^{-1})"""
    return GmElement(u.g0 * u.g1 ** order.trace_tau, u.g1.inverse())


def exponents(u: GmElement, h: Optional[FieldElement] = None) -> Tuple[int, int]:
    """以 h 为底的规范指数 (e0, e1) ∈ [0, q-1)²"""
    h = h or u.field.generator
    n = u.field.q - 1
    try:
        return (discrete_log(h, u.g0, n), discrete_log(h, u.g1, n))
    except NotInSubgroup as e:
        raise DlogFailure(str(e)) from e


@lru_cache(maxsize=256)
def alpha_power_lattice(alpha: QuadInt, q: int) -> HermiteLattice:
    """αR + (q-1)R 在指数坐标中的格"""
    return HermiteLattice.from_columns(action_matrix(alpha).columns()
                                       + [(q - 1, 0), (0, q - 1)])


def equal_mod_alpha_powers(u: GmElement, v: GmElement, alpha: QuadInt,
                           h: Optional[FieldElement] = None) -> bool:
    """u ≡ v 模 α-幂（α = 0 时为精确相等）"""
    if u.field != v.field:
        raise FieldMismatch(f"{u.field} vs {v.field}")
    e0, e1 = exponents(u / v, h)
    return alpha_power_lattice(alpha, u.field.q).contains(e0, e1)


def _root_exponent(field: PrimeField, n: int) -> int:
    if n <= 0 or (field.q - 1) % n:
        raise NotRootOfUnity(f"mu_{n} is not contained in {field}")
    return (field.q - 1) // n


def reduced_generator(field: PrimeField, n: int,
                      h: Optional[FieldElement] = None) -> FieldElement:
    """g = h^{(q-1)/n}，阶为 n"""
    h = h or field.generator
    return h ** _root_exponent(field, n)


def reduced_form(u: GmElement, n: int, alpha: QuadInt,
                 h: Optional[FieldElement] = None) -> QuadInt:
    """最终幂 + 离散对数 + 模 αR 约化

    Args:
        u: 配对原始值
        n: 满足 n | q-1 且 n ∈ αR 的整数
        alpha: 陪集模

    Returns:
        R/αR 中的规范代表元 r，使得 u^{(q-1)/n} = g^r
    """
    k = _root_exponent(u.field, n)
    g = reduced_generator(u.field, n, h)
    try:
        x = discrete_log(g, u.g0 ** k, n)
        y = discrete_log(g, u.g1 ** k, n)
    except NotInSubgroup as e:
        raise DlogFailure(str(e)) from e
    return residue_ring(alpha).reduce(QuadInt(x, y, alpha.order))


def torsion_form(u: GmElement, n: int, order: QuadOrder,
                 h: Optional[FieldElement] = None) -> QuadInt:
    """n-挠元素的指数 r ∈ R/nR，u = g^r（不做最终幂）"""
    g = reduced_generator(u.field, n, h)
    try:
        x = discrete_log(g, u.g0, n)
        y = discrete_log(g, u.g1, n)
    except NotInSubgroup as e:
        raise NotRootOfUnity(f"{u} is not {n}-torsion") from e
    return QuadInt(x, y, order)


def format_exponents(u: GmElement, h: Optional[FieldElement] = None) -> str:
    e0, e1 = exponents(u, h)
    return f"h^{{{e0}+{e1}*tau}}"


class PairingValue:
    """配对值及其所在商群的模数据

    alpha 为零表示精确值；此时 torsion 给出其所在的挠子群 G[torsion]。
    """

    __slots__ = ('raw', 'alpha', 'field', 'reduced', 'op', 'torsion')

    def __init__(self, raw: GmElement, alpha: QuadInt, reduced: Optional[QuadInt] = None,
                 op: str = '', torsion: Optional[QuadInt] = None):
        self.raw = raw
        self.alpha = alpha
        self.field = raw.field
        self.reduced = reduced
        self.op = op
        self.torsion = torsion

    @classmethod
    def coset(cls, raw: GmElement, alpha: QuadInt, op: str = '') -> 'PairingValue':
        """模 α-幂的陪集值；μ_m ⊂ F_q 时附带约化形式"""
        m = residue_ring(alpha).exponent
        reduced = None
        if (raw.field.q - 1) % m == 0:
            reduced = reduced_form(raw, m, alpha)
        return cls(raw, alpha, reduced=reduced, op=op)

    @classmethod
    def exact(cls, raw: GmElement, torsion: QuadInt, op: str = '') -> 'PairingValue':
        """G[torsion] 中的精确值；约化形式为 R/mR 中的指数"""
        order = torsion.order
        m = residue_ring(torsion).exponent
        reduced = None
        if (raw.field.q - 1) % m == 0:
            reduced = residue_ring(QuadInt(m, 0, order)).reduce(torsion_form(raw, m, order))
        return cls(raw, QuadInt(0, 0, order), reduced=reduced, op=op, torsion=torsion)

    @property
    def is_exact(self) -> bool:
        return self.alpha.is_zero()

    @property
    def order(self) -> QuadOrder:
        return self.alpha.order

    def __eq__(self, other) -> bool:
        if not isinstance(other, PairingValue):
            return NotImplemented
        if self.field != other.field or self.alpha != other.alpha:
            raise ModulusMismatch(
                f"cannot compare values mod ({self.alpha}) in {self.field} "
                f"with values mod ({other.alpha}) in {other.field}")
        return equal_mod_alpha_powers(self.raw, other.raw, self.alpha)

    def __ne__(self, other) -> bool:
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    __hash__ = None

    def is_identity(self) -> bool:
        return equal_mod_alpha_powers(self.raw, GmElement.identity(self.field), self.alpha)

    def exponents(self) -> Tuple[int, int]:
        return exponents(self.raw)

    def display(self) -> str:
        text = format_exponents(self.raw)
        if self.reduced is not None:
            text += f" = g^{{{self.reduced}}}"
        return text

    def __repr__(self) -> str:
        modulus = f"exact in G[{self.torsion}]" if self.is_exact else f"mod ({self.alpha})-powers"
        return f"PairingValue({self.display()}, {modulus})"

    def to_record(self) -> Dict[str, Any]:
        return {
            'op': self.op,
            'q': self.field.q,
            'order': [self.order.trace_tau, self.order.norm_tau],
            'alpha': list(self.alpha.coords()),
            'torsion': list(self.torsion.coords()) if self.torsion is not None else None,
            'raw': list(self.raw.as_tuple()),
            'exponents': list(self.exponents()),
            'reduced': list(self.reduced.coords()) if self.reduced is not None else None,
            'display': self.display(),
        }

    @classmethod
    def from_record(cls, record: Dict[str, Any]) -> 'PairingValue':
        field = PrimeField(int(record['q']))
        order = QuadOrder(*[int(v) for v in record['order']])
        raw = GmElement(field(record['raw'][0]), field(record['raw'][1]))
        alpha = QuadInt(*record['alpha'], order)
        torsion = QuadInt(*record['torsion'], order) if record.get('torsion') is not None else None
        reduced = QuadInt(*record['reduced'], order) if record.get('reduced') is not None else None
        return cls(raw, alpha, reduced=reduced, op=record.get('op', ''), torsion=torsion)

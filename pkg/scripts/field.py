#!/usr/bin/env python3
"""
Field - 素域算术

F_q 上的精确算术、F_q^* 的最小生成元，以及用于规范化配对值的小阶离散对数。

核心功能：
1. PrimeField / FieldElement - 不可变值类型，运算结果始终约化到 [0, q)
2. multiplicative_generator - 最小的原根（通过 q-1 的分解验证）
3. discrete_log - 已知阶的循环子群中的离散对数
4. roots_of - 多项式根（平方根、三次单位根等），用于内置 CM 映射

Author: Bobo (Sesquilinear Pairings)
"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Dict, List, Union

from sympy import factorint, isprime
from sympy.ntheory import discrete_log as sympy_discrete_log
from sympy.ntheory import sqrt_mod

from errors import (DivisionByZero, FactorizationFailure, FieldMismatch,
                    NotInSubgroup, PairingError)

logger = logging.getLogger(__name__)

# 64 位模数；q - 1 的试除上限
MAX_MODULUS = 1 << 64
FACTOR_LIMIT = 1 << 24


@dataclass(frozen=True)
class PrimeField:
    """素域 F_q"""

    q: int

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 3 or self.q >= MAX_MODULUS:
            raise PairingError(f"modulus out of range: {self.q!r}")
        if self.q % 2 == 0 or not isprime(self.q):
            raise PairingError(f"modulus is not an odd prime: {self.q}")

    def __call__(self, value: int) -> 'FieldElement':
        return FieldElement(int(value) % self.q, self)

    def __repr__(self) -> str:
        return f"F_{self.q}"

    @property
    def zero(self) -> 'FieldElement':
        return FieldElement(0, self)

    @property
    def one(self) -> 'FieldElement':
        return FieldElement(1, self)

    def factor_group_order(self) -> Dict[int, int]:
        """Factor q - 1 by trial division up to FACTOR_LIMIT

        Raises:
            FactorizationFailure: if a composite cofactor survives the bound
        """
        factors = factorint(self.q - 1, limit=FACTOR_LIMIT)
        for p in factors:
            if not isprime(p):
                raise FactorizationFailure(
                    f"q-1 = {self.q - 1} has unfactored cofactor {p}")
        return factors

    @cached_property
    def generator(self) -> 'FieldElement':
        return multiplicative_generator(self)

    def roots_of(self, coeffs: List[int]) -> List['FieldElement']:
        """Roots in F_q of a monic polynomial of degree <= 2, sorted ascending

        Args:
            coeffs: [c1, c0] for X^2 + c1 X + c0, or [c0] for X + c0
        """
        if len(coeffs) == 1:
            return [self(-coeffs[0])]
        c1, c0 = coeffs
        # X = (-c1 ± sqrt(c1^2 - 4 c0)) / 2
        disc = (c1 * c1 - 4 * c0) % self.q
        half = pow(2, -1, self.q)
        roots = {((-c1 + s) * half) % self.q
                 for s in (sqrt_mod(disc, self.q, all_roots=True) or [])}
        return [self(r) for r in sorted(roots)]


Operand = Union['FieldElement', int]


@dataclass(frozen=True)
class FieldElement:
    """F_q 中的元素，value 始终约化"""

    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.q:
            object.__setattr__(self, 'value', self.value % self.field.q)

    def _coerce(self, other: Operand) -> 'FieldElement':
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def __add__(self, other: Operand) -> 'FieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value + other.value) % self.field.q, self.field)

    __radd__ = __add__

    def __sub__(self, other: Operand) -> 'FieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value - other.value) % self.field.q, self.field)

    def __rsub__(self, other: Operand) -> 'FieldElement':
        return self._coerce(other) - self

    def __mul__(self, other: Operand) -> 'FieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FieldElement((self.value * other.value) % self.field.q, self.field)

    __rmul__ = __mul__

    def __neg__(self) -> 'FieldElement':
        return FieldElement(-self.value % self.field.q, self.field)

    def inverse(self) -> 'FieldElement':
        if self.value == 0:
            raise DivisionByZero(f"inverse of 0 in {self.field}")
        return FieldElement(pow(self.value, -1, self.field.q), self.field)

    def __truediv__(self, other: Operand) -> 'FieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other: Operand) -> 'FieldElement':
        return self._coerce(other) / self

    def __pow__(self, exponent: int) -> 'FieldElement':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElement(pow(self.value, exponent, self.field.q), self.field)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self.value == other % self.field.q
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.value)

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return str(self.value)

    def signed(self) -> int:
        """Representative in (-q/2, q/2]"""
        return self.value - self.field.q if self.value > self.field.q // 2 else self.value

    def is_square(self) -> bool:
        return self.value == 0 or pow(self.value, (self.field.q - 1) // 2, self.field.q) == 1

    def sqrt(self) -> List['FieldElement']:
        """All square roots, ascending"""
        roots = sqrt_mod(self.value, self.field.q, all_roots=True) or []
        return [self.field(r) for r in sorted(roots)]

    def multiplicative_order(self) -> int:
        if self.value == 0:
            raise DivisionByZero("order of 0")
        order = self.field.q - 1
        for p, e in self.field.factor_group_order().items():
            for _ in range(e):
                if pow(self.value, order // p, self.field.q) == 1:
                    order //= p
                else:
                    break
        return order


def multiplicative_generator(field: PrimeField) -> FieldElement:
    """最小的 F_q^* 生成元

    对每个素因子 l | q-1 检查 g^((q-1)/l) != 1。
    """
    n = field.q - 1
    primes = list(field.factor_group_order())
    for candidate in range(2, field.q):
        if all(pow(candidate, n // p, field.q) != 1 for p in primes):
            logger.debug("generator of %s: %d", field, candidate)
            return field(candidate)
    raise PairingError(f"no generator found for {field}")


@lru_cache(maxsize=4096)
def _dlog(q: int, g: int, x: int, n: int) -> int:
    return int(sympy_discrete_log(q, x, g, n))


def discrete_log(g: FieldElement, x: FieldElement, n: int) -> int:
    """离散对数 e ∈ [0, n)，满足 g^e = x

    Args:
        g: 阶恰为 n 的元素
        x: ⟨g⟩ 中的元素
        n: g 的阶

    Raises:
        NotInSubgroup: x 不在 ⟨g⟩ 中
    """
    if g.field != x.field:
        raise FieldMismatch(f"{g.field} vs {x.field}")
    if x.value == 0:
        raise NotInSubgroup("0 is not in any multiplicative subgroup")
    if n == 1:
        if x.value != 1:
            raise NotInSubgroup(f"{x} not in the trivial subgroup")
        return 0
    if pow(x.value, n, x.field.q) != 1:
        raise NotInSubgroup(f"{x} not in <{g}> of order {n}")
    try:
        return _dlog(g.field.q, g.value, x.value, n) % n
    except ValueError as e:
        raise NotInSubgroup(f"{x} not in <{g}> of order {n}: {e}") from e

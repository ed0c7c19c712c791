#!/usr/bin/env python3
"""
Nondegeneracy - 非退化性扫描

在 E[ᾱ](F_q) × E(F_q)/[α]E(F_q) 上计算完整的约化 T̂_α 表，
检查左/右非退化性，以及零化子恰为 ᾱR（行）或 αR（列）的输入是否满射到 R/αR。

表项为约化值 g^{r} 中 r 在 R/αR 规范代表元列表中的下标（numpy 整数数组）。

Author: Bobo (Sesquilinear Pairings)
"""

import logging
from math import gcd
from typing import Any, Dict, List

import numpy as np
import pandas as pd

from curve_cm import Point, coset_reps_mod, image_of, kernel_of
from errors import HypothesisViolated
from pairings import PairingContext, t_hat
from quad_order import QuadInt, ResidueRing

logger = logging.getLogger(__name__)


def check_hypotheses(alpha: QuadInt, ctx: PairingContext) -> None:
    """N(α) 与特征、判别式互素，且 μ_{N(α)} ⊂ F_q

    Raises:
        HypothesisViolated: 指明哪一条不满足
    """
    N = alpha.norm()
    q = ctx.field.q
    disc = ctx.order.discriminant
    if gcd(N, q) != 1:
        raise HypothesisViolated(f"N({alpha}) = {N} is not coprime to the characteristic {q}")
    if gcd(N, disc) != 1:
        raise HypothesisViolated(f"N({alpha}) = {N} is not coprime to disc(R) = {disc}")
    if (q - 1) % N:
        raise HypothesisViolated(f"mu_{N} is not contained in F_{q}")


def _exact_row(P: Point, alpha_bar: QuadInt, ctx: PairingContext) -> bool:
    """零化子恰为 ᾱR：R/ᾱR 的非零代表元都不杀死 P"""
    ring = ResidueRing(alpha_bar)
    return all(not ctx.mul(beta, P).is_infinity
               for beta in ring.representatives if not beta.is_zero())


def _exact_col(Q: Point, alpha: QuadInt, ctx: PairingContext) -> bool:
    """零化子恰为 αR：R/αR 的非零代表元都不把 Q 送入 [α]E"""
    ring = ResidueRing(alpha)
    image = image_of(alpha, ctx.curve, ctx.endo)
    return all(ctx.mul(beta, Q) not in image
               for beta in ring.representatives if not beta.is_zero())


def nondegeneracy_scan(alpha: QuadInt, ctx: PairingContext) -> Dict[str, Any]:
    """计算完整表并检查非退化性与满射性"""
    check_hypotheses(alpha, ctx)
    alpha_bar = alpha.conj()
    rows: List[Point] = kernel_of(alpha_bar, ctx.curve, ctx.endo)
    cols: List[Point] = coset_reps_mod(alpha, ctx.curve, ctx.endo)
    ring = ResidueRing(alpha)
    logger.info("scanning alpha = %s: %d x %d table over %s", alpha, len(rows), len(cols), ring)

    table = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for i, P in enumerate(rows):
        for j, Q in enumerate(cols):
            table[i, j] = ring.index(t_hat(P, Q, alpha, ctx).reduced)

    image = image_of(alpha, ctx.curve, ctx.endo)
    nonzero_rows = np.array([not P.is_infinity for P in rows])
    nonzero_cols = np.array([Q not in image for Q in cols])
    hits = table != 0
    violations = []

    for i in np.flatnonzero(nonzero_rows & ~hits.any(axis=1)):
        violations.append(f"row {rows[i]} pairs trivially with every column")
    for j in np.flatnonzero(nonzero_cols & ~hits.any(axis=0)):
        violations.append(f"column {cols[j]} pairs trivially with every row")

    everything = set(range(ring.size))
    exact_rows = [i for i, P in enumerate(rows) if nonzero_rows[i] and _exact_row(P, alpha_bar, ctx)]
    exact_cols = [j for j, Q in enumerate(cols) if nonzero_cols[j] and _exact_col(Q, alpha, ctx)]
    for i in exact_rows:
        if set(table[i].tolist()) != everything:
            violations.append(f"row {rows[i]} is annihilated exactly by ({alpha_bar}) but misses residues")
    for j in exact_cols:
        if set(table[:, j].tolist()) != everything:
            violations.append(f"column {cols[j]} is annihilated exactly by ({alpha}) but misses residues")

    if not nonzero_rows.any() and not nonzero_cols.any():
        logger.warning("alpha = %s gives a trivial table; the scan passes vacuously", alpha)

    return {
        'alpha': str(alpha),
        'rows': [str(P) for P in rows],
        'cols': [str(Q) for Q in cols],
        'residues': [str(r) for r in ring.representatives],
        'table': table,
        'exact_rows': len(exact_rows),
        'exact_cols': len(exact_cols),
        'violations': violations,
        'passed': not violations,
    }


def format_scan(report: Dict[str, Any]) -> str:
    """表项显示为 R/αR 的代表元"""
    residues = report['residues']
    frame = pd.DataFrame([[residues[v] for v in row] for row in report['table'].tolist()],
                         index=report['rows'], columns=report['cols'])
    lines = []
    lines.append("=" * 60)
    lines.append(f"Non-degeneracy Scan: alpha = {report['alpha']}")
    lines.append("=" * 60)
    lines.append(f"Table: {len(report['rows'])} x {len(report['cols'])}, "
                 f"entries r with T_hat = g^r in R/({report['alpha']})R")
    lines.append("")
    lines.append(frame.to_string())
    lines.append("")
    lines.append(f"Annihilator-exact rows: {report['exact_rows']}    "
                 f"columns: {report['exact_cols']}")
    for violation in report['violations']:
        lines.append(f"  ❌ {violation}")
    lines.append("=" * 60)
    lines.append(f"Result: {'PASS' if report['passed'] else 'FAIL'}")
    lines.append("=" * 60)
    return "\n".join(lines)

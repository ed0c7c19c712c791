#!/usr/bin/env python3
"""
Job Config - 任务配置

加载 config.yaml（PyYAML），与内置默认值逐节合并，校验后构造配对上下文。
默认值即 F_401 上 y² = x³ - x 的示例任务。

Author: Bobo (Sesquilinear Pairings)
"""

import copy
import logging
import random
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from curve_cm import CMEndo, Curve, Point, parse_point
from errors import InvalidConfig, PairingError
from pairings import DEFAULT_RETRIES, OPERATIONS, PairingContext
from quad_order import QuadInt, QuadOrder

logger = logging.getLogger(__name__)

SCRIPT_DIR = Path(__file__).parent
PROJECT_ROOT = SCRIPT_DIR.parent

OPERATION_NAMES = sorted(list(OPERATIONS) + ['norm_relation'])
ENDO_KINDS = ('j1728', 'j0', 'table')
OUTPUT_FORMATS = ('human', 'jsonl')
LOG_LEVELS = ('debug', 'info', 'warning', 'error')

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    'field': {'q': 401},
    'curve': {'a': -1, 'b': 0},
    'order': {'trace': 0, 'norm': 1},
    'endomorphism': {'kind': 'j1728', 'root': 20, 'table': None},
    'pairing': {
        'op': 't_hat',
        'alpha': [1, -2],
        'p': [204, 283],
        'q': [56, 137],
        'aux': None,
        'n': None,
    },
    'run': {'seed': 0, 'retries': DEFAULT_RETRIES, 'trials': 500},
    'output': {'format': 'human'},
    'logging': {'level': 'warning', 'file': None},
}

PointSpec = Union[None, str, List[int]]


@dataclass(frozen=True)
class JobConfig:
    """一次运行的全部参数"""

    q: int
    a: int
    b: int
    trace: int
    norm: int
    endo_kind: str
    endo_root: Optional[int]
    endo_table: Optional[Tuple[Tuple[Tuple[int, int], Tuple[int, int]], ...]]
    op: str
    alpha: Tuple[int, int]
    p: PointSpec
    q_point: PointSpec
    aux: PointSpec
    n: Optional[int]
    seed: int
    retries: int
    trials: int
    output_format: str
    log_level: str
    log_file: Optional[str]

    @classmethod
    def from_dict(cls, raw: Optional[Dict[str, Any]]) -> 'JobConfig':
        """合并默认值并做类型/取值校验

        Raises:
            InvalidConfig: 未知节、类型错误或取值越界
        """
        merged = _merge_defaults(raw or {})
        try:
            field, curve, order = merged['field'], merged['curve'], merged['order']
            endo, pairing, run = merged['endomorphism'], merged['pairing'], merged['run']
            table = endo.get('table')
            job = cls(
                q=int(field['q']),
                a=int(curve['a']),
                b=int(curve['b']),
                trace=int(order['trace']),
                norm=int(order['norm']),
                endo_kind=str(endo['kind']),
                endo_root=None if endo.get('root') is None else int(endo['root']),
                endo_table=None if table is None else tuple(
                    (tuple(int(v) for v in src), tuple(int(v) for v in dst)) for src, dst in table),
                op=str(pairing['op']),
                alpha=parse_coords(pairing['alpha']),
                p=pairing.get('p'),
                q_point=pairing.get('q'),
                aux=pairing.get('aux'),
                n=None if pairing.get('n') is None else int(pairing['n']),
                seed=int(run['seed']),
                retries=int(run['retries']),
                trials=int(run['trials']),
                output_format=str(merged['output']['format']),
                log_level=str(merged['logging']['level']).lower(),
                log_file=merged['logging'].get('file'),
            )
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidConfig(f"malformed config: {e}") from e
        job.validate()
        return job

    def validate(self) -> None:
        if self.endo_kind not in ENDO_KINDS:
            raise InvalidConfig(f"endomorphism.kind must be one of {ENDO_KINDS}, got {self.endo_kind!r}")
        if self.endo_kind == 'table' and not self.endo_table:
            raise InvalidConfig("endomorphism.kind = table needs endomorphism.table")
        if self.endo_kind == 'j1728' and (self.trace, self.norm) != (0, 1):
            raise InvalidConfig("j1728 endomorphism needs order.trace = 0, order.norm = 1")
        if self.endo_kind == 'j0' and (self.trace, self.norm) != (-1, 1):
            raise InvalidConfig("j0 endomorphism needs order.trace = -1, order.norm = 1")
        if self.op not in OPERATION_NAMES:
            raise InvalidConfig(f"pairing.op must be one of {OPERATION_NAMES}, got {self.op!r}")
        if self.alpha == (0, 0):
            raise InvalidConfig("pairing.alpha must be nonzero")
        if self.n is not None and self.n < 1:
            raise InvalidConfig(f"pairing.n must be positive, got {self.n}")
        if not 0 <= self.seed < 1 << 64:
            raise InvalidConfig(f"run.seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.retries < 1 or self.trials < 0:
            raise InvalidConfig("run.retries must be positive and run.trials non-negative")
        if self.output_format not in OUTPUT_FORMATS:
            raise InvalidConfig(f"output.format must be one of {OUTPUT_FORMATS}")
        if self.log_level not in LOG_LEVELS:
            raise InvalidConfig(f"logging.level must be one of {LOG_LEVELS}")

    def with_overrides(self, **overrides) -> 'JobConfig':
        """命令行参数覆盖（值为 None 的项忽略）"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        if not changes:
            return self
        job = replace(self, **changes)
        job.validate()
        return job

    # ---- construction -------------------------------------------------------

    @property
    def order(self) -> QuadOrder:
        try:
            return QuadOrder(self.trace, self.norm)
        except PairingError as e:
            raise InvalidConfig(str(e)) from e

    def alpha_element(self) -> QuadInt:
        """经典配对（tate / weil / *_via_*）使用 pairing.n（若给出）"""
        if self.n is not None and self.op in ('tate', 'weil', 't_hat_via_tn', 'w_hat_via_en'):
            return QuadInt(self.n, 0, self.order)
        return QuadInt(*self.alpha, self.order)

    def build_context(self) -> PairingContext:
        """曲线 + CM 自同态 + 上下文

        Raises:
            InvalidConfig: 模数非素数、曲线奇异、自同态与曲线不符等
        """
        try:
            curve = Curve.from_ints(self.q, self.a, self.b)
            order = self.order
            if self.endo_kind == 'j1728':
                endo = CMEndo.j1728(curve, self.endo_root)
            elif self.endo_kind == 'j0':
                endo = CMEndo.j0(curve, self.endo_root)
            else:
                mapping = {curve.point(*src): curve.point(*dst) for src, dst in self.endo_table}
                endo = CMEndo.from_table(curve, order, mapping)
            endo.validate(random.Random(self.seed))
            return PairingContext(curve, endo, seed=self.seed, retries=self.retries)
        except InvalidConfig:
            raise
        except PairingError as e:
            raise InvalidConfig(f"{type(e).__name__}: {e}") from e

    def points(self, ctx: PairingContext) -> Tuple[Point, Point, Optional[Point]]:
        """(P, Q, aux)"""
        try:
            P = parse_point(self.p, ctx.curve)
            Q = parse_point(self.q_point, ctx.curve)
            aux = None if self.aux is None else parse_point(self.aux, ctx.curve)
        except (PairingError, ValueError) as e:
            raise InvalidConfig(f"bad point: {e}") from e
        return P, Q, aux


def parse_coords(value: Union[int, str, List[int]]) -> Tuple[int, int]:
    """'x,y' / [x, y] / 整数 → (x, y)"""
    if isinstance(value, int):
        return (value, 0)
    parts = value.split(',') if isinstance(value, str) else list(value)
    if len(parts) == 1:
        parts.append(0)
    if len(parts) != 2:
        raise ValueError(f"expected x,y for an element of R, got {value!r}")
    return (int(parts[0]), int(parts[1]))


def _merge_defaults(raw: Dict[str, Any]) -> Dict[str, Dict[str, Any]]:
    if not isinstance(raw, dict):
        raise InvalidConfig(f"config root must be a mapping, got {type(raw).__name__}")
    merged = copy.deepcopy(DEFAULT_CONFIG)
    for section, values in raw.items():
        if section not in merged:
            raise InvalidConfig(f"unknown config section {section!r}")
        if values is None:
            continue
        if not isinstance(values, dict):
            raise InvalidConfig(f"section {section!r} must be a mapping")
        unknown = set(values) - set(merged[section])
        if unknown:
            raise InvalidConfig(f"unknown keys in {section!r}: {', '.join(sorted(unknown))}")
        merged[section].update(values)
    return merged


def load_job(config_path: Optional[Union[str, Path]] = None) -> JobConfig:
    """加载配置文件

    缺省路径为项目根目录的 config.yaml；文件不存在时警告并使用默认值。

    Raises:
        InvalidConfig: YAML 无法解析或内容不合法
    """
    explicit = config_path is not None
    path = Path(config_path) if explicit else PROJECT_ROOT / 'config.yaml'

    if not path.exists():
        if explicit:
            raise InvalidConfig(f"config file not found: {path}")
        logger.warning("config file not found at %s, using defaults", path)
        return JobConfig.from_dict({})

    try:
        with open(path, 'r', encoding='utf-8') as f:
            raw = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise InvalidConfig(f"failed to load {path}: {e}") from e
    logger.debug("loaded config from %s", path)
    return JobConfig.from_dict(raw)

#!/usr/bin/env python3
"""
Sesquilinear Pairings CLI - 统一命令行工具

在带 CM 的椭圆曲线上计算 T̂_α / Ŵ_α 等配对，复现 F_401 示例，运行定律套件与非退化性扫描。

用法:
    python cli.py <command> [options]

命令:
    pair         - 计算单个配对值
    example      - 重新计算 F_401 示例并与黄金值比对
    selftest     - 运行随机化定律套件 + 非退化性扫描
    scan         - 打印完整的约化配对表并检查非退化性

示例:
    python cli.py pair --op t_hat --aux 0,0
    python cli.py pair --op w_hat --p 204,283 --q 345,334 --format jsonl
    python cli.py example --root 381
    python cli.py selftest --trials 50 --seed 7
    python cli.py scan --alpha 5,0
    python cli.py pair --config data/examples/f43_j0.yaml

退出码: 0 成功，1 黄金值或定律失败，2 输入无效，130 用户中断

Author: Bobo (Sesquilinear Pairings)
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

PROJECT_ROOT = Path(__file__).parent
SCRIPT_DIR = PROJECT_ROOT / 'scripts'
sys.path.insert(0, str(SCRIPT_DIR))

from curve_cm import Curve, parse_point  # noqa: E402
from errors import InvalidConfig, PairingError  # noqa: E402
from example import Q_FIELD, format_example_report, run_example  # noqa: E402
from job_config import JobConfig, load_job, parse_coords  # noqa: E402
from law_suite import format_report, property_suite  # noqa: E402
from nondegeneracy import format_scan, nondegeneracy_scan  # noqa: E402
from pairings import compute, norm_relation_check  # noqa: E402

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_INVALID, EXIT_INTERRUPTED = 0, 1, 2, 130


def configure_logging(level: str, log_file: Optional[str] = None) -> None:
    """日志只写 stderr（及可选文件），stdout 只承载确定性结果"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file))
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.WARNING),
        format='%(asctime)s [%(levelname)s] %(message)s',
        handlers=handlers,
        force=True,
    )


class CLI:
    """统一命令行工具"""

    def __init__(self):
        self.commands = {
            'pair': self.cmd_pair,
            'example': self.cmd_example,
            'selftest': self.cmd_selftest,
            'scan': self.cmd_scan,
        }

    def load(self, args: argparse.Namespace) -> JobConfig:
        """配置文件 + 命令行覆盖"""
        job = load_job(args.config)
        overrides = {
            'seed': args.seed,
            'output_format': args.format,
            'log_level': args.log_level,
            'op': getattr(args, 'op', None),
            'p': getattr(args, 'p', None),
            'q_point': getattr(args, 'q_point', None),
            'aux': getattr(args, 'aux', None),
            'n': getattr(args, 'n', None),
            'trials': getattr(args, 'trials', None),
        }
        alpha = getattr(args, 'alpha', None)
        if alpha is not None:
            try:
                overrides['alpha'] = parse_coords(alpha)
            except ValueError as e:
                raise InvalidConfig(str(e)) from e
        job = job.with_overrides(**overrides)
        configure_logging(job.log_level, job.log_file)
        return job

    def emit(self, job: JobConfig, human: str, record) -> None:
        if job.output_format == 'jsonl':
            records = record if isinstance(record, list) else [record]
            for item in records:
                print(json.dumps(item, sort_keys=True, ensure_ascii=False))
        else:
            print(human)

    def cmd_pair(self, args: argparse.Namespace) -> int:
        """计算单个配对值"""
        job = self.load(args)
        ctx = job.build_context()
        P, Q, aux = job.points(ctx)
        alpha = job.alpha_element()

        if job.op == 'norm_relation':
            holds = norm_relation_check(P, Q, alpha, ctx)
            self.emit(job, f"{'✅' if holds else '❌'} norm relation for {P}, {Q}, alpha = {alpha}: {holds}",
                      {'op': 'norm_relation', 'alpha': list(alpha.coords()),
                       'p': str(P), 'q': str(Q), 'holds': holds})
            return EXIT_OK if holds else EXIT_FAILED

        value = compute(job.op, P, Q, alpha, ctx, aux)
        self.emit(job, f"{job.op}({P}, {Q}) with alpha = {alpha}: {value.display()}",
                  value.to_record())
        return EXIT_OK

    def cmd_example(self, args: argparse.Namespace) -> int:
        """重新计算示例"""
        job = self.load(args)
        aux = None
        if args.aux is not None:
            try:
                aux = parse_point(args.aux, Curve.from_ints(Q_FIELD, -1, 0))
            except (PairingError, ValueError) as e:
                raise InvalidConfig(f"bad auxiliary point: {e}") from e
        report = run_example(root=args.root, aux=aux, seed=job.seed)
        self.emit(job, format_example_report(report), report['rows'])
        return EXIT_OK if report['passed'] else EXIT_FAILED

    def cmd_selftest(self, args: argparse.Namespace) -> int:
        """定律套件 + 非退化性扫描"""
        job = self.load(args)
        ctx = job.build_context()
        alpha = job.alpha_element()
        report = property_suite(ctx, alpha, job.trials, only=args.laws)
        scan = nondegeneracy_scan(alpha, ctx)
        self.emit(job, format_report(report) + "\n\n" + format_scan(scan),
                  [{'laws': report['laws'], 'all_passed': report['all_passed']},
                   _scan_record(scan)])
        return EXIT_OK if report['all_passed'] and scan['passed'] else EXIT_FAILED

    def cmd_scan(self, args: argparse.Namespace) -> int:
        """非退化性扫描"""
        job = self.load(args)
        ctx = job.build_context()
        scan = nondegeneracy_scan(job.alpha_element(), ctx)
        self.emit(job, format_scan(scan), _scan_record(scan))
        return EXIT_OK if scan['passed'] else EXIT_FAILED

    def run(self, argv: List[str]) -> int:
        """主入口

        Args:
            argv: 命令行参数

        Returns:
            退出代码
        """
        common = argparse.ArgumentParser(add_help=False)
        common.add_argument('--config', type=str, default=None,
                            help='YAML 配置文件（默认: 项目根目录 config.yaml）')
        common.add_argument('--seed', type=int, default=None, help='辅助点搜索的随机种子')
        common.add_argument('--format', choices=['human', 'jsonl'], default=None, help='输出格式')
        common.add_argument('--log-level', choices=['debug', 'info', 'warning', 'error'],
                            default=None, help='日志级别（输出到 stderr）')

        parser = argparse.ArgumentParser(
            description='Sesquilinear Pairings CLI - 统一命令行工具',
            epilog='Example: python cli.py pair --op t_hat --aux 0,0'
        )
        subparsers = parser.add_subparsers(dest='command', help='可用命令')

        # pair 命令
        pair_parser = subparsers.add_parser('pair', parents=[common], help='计算单个配对值')
        pair_parser.add_argument('--op', type=str, default=None,
                                 help='t_hat, w_hat, t_hat_via_tn, w_hat_via_en, t_alpha, w_alpha, '
                                      'tate, weil, norm_relation')
        pair_parser.add_argument('--alpha', type=str, default=None, help='α = x + yτ，写作 x,y')
        pair_parser.add_argument('--p', type=str, default=None, help='点 P，写作 x,y 或 O')
        pair_parser.add_argument('--q', dest='q_point', type=str, default=None, help='点 Q')
        pair_parser.add_argument('--aux', type=str, default=None, help='辅助点 S')
        pair_parser.add_argument('--n', type=int, default=None, help='经典配对的整数 n')

        # example 命令
        example_parser = subparsers.add_parser('example', parents=[common], help='复现 F_401 示例')
        example_parser.add_argument('--root', type=int, default=None,
                                    help='[i] 使用的 -1 平方根（默认: 20）')
        example_parser.add_argument('--aux', type=str, default=None,
                                    help='额外检查的辅助点 S')

        # selftest 命令
        selftest_parser = subparsers.add_parser('selftest', parents=[common], help='运行定律套件')
        selftest_parser.add_argument('--alpha', type=str, default=None, help='α，写作 x,y')
        selftest_parser.add_argument('--trials', type=int, default=None,
                                     help='每条定律的试验次数（默认: 500）')
        selftest_parser.add_argument('--laws', nargs='+', default=None, help='只运行指定定律')

        # scan 命令
        scan_parser = subparsers.add_parser('scan', parents=[common], help='非退化性扫描')
        scan_parser.add_argument('--alpha', type=str, default=None, help='α，写作 x,y')

        if len(argv) == 0:
            parser.print_help()
            return EXIT_OK

        args = parser.parse_args(argv)

        if not args.command:
            parser.print_help()
            return EXIT_OK

        try:
            return self.commands[args.command](args)
        except KeyboardInterrupt:
            print("\n⚠️  Interrupted by user", file=sys.stderr)
            return EXIT_INTERRUPTED
        except PairingError as e:
            print(f"❌ {type(e).__name__}: {e}", file=sys.stderr)
            return EXIT_INVALID
        except Exception as e:
            print(f"❌ Error: {e}", file=sys.stderr)
            import traceback
            traceback.print_exc()
            return EXIT_FAILED


def _scan_record(scan) -> dict:
    record = dict(scan)
    record['table'] = scan['table'].tolist()
    return record


def main():
    """入口函数"""
    cli = CLI()
    sys.exit(cli.run(sys.argv[1:]))


if __name__ == '__main__':
    main()

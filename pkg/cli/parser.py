# cli/parser.py
from __future__ import annotations

import argparse
import re
import sys
from typing import List, Optional, Sequence

import config
from cli.checks import SUITES

MODELS = ("sextic", "coulomb")

# 以 '-' 开头的数值或网格，例如 -6:6:0.1、-2、-.5
_NEGATIVE_VALUE = re.compile(r"^-(\d|\.\d)")


def normalize_argv(argv: Sequence[str]) -> List[str]:
    """把 `--b -6:6:0.1` 合并成 `--b=-6:6:0.1`，否则 argparse 会把负网格当成选项。"""
    out: List[str] = []
    i = 0
    while i < len(argv):
        token = argv[i]
        if (token.startswith("--") and "=" not in token and i + 1 < len(argv)
                and _NEGATIVE_VALUE.match(argv[i + 1])):
            out.append(f"{token}={argv[i + 1]}")
            i += 2
            continue
        out.append(token)
        i += 1
    return out


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str], default: str):
    p.add_argument("--format", choices=formats, default=default, help="输出格式")
    p.add_argument("--out", default=None, help="输出文件路径（缺省写到标准输出）")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qes-spectra",
        description="条件可解模型（六次振子、微扰库仑）的截断解与变分谱。",
    )
    parser.add_argument("--log-level", default=None, help="覆盖 QES_LOG_LEVEL")
    sub = parser.add_subparsers(dest="command", required=True)

    # --- exact ---
    p = sub.add_parser("exact", help="截断条件给出的精确解")
    p.add_argument("model", choices=MODELS)
    p.add_argument("--n", type=int, required=True, help="截断阶数")
    p.add_argument("--s", type=int, choices=(0, 1), default=0, help="宇称（振子）")
    p.add_argument("--gamma", type=float, default=None, help="γ（库仑）")
    p.add_argument("--b", type=float, default=0.0)
    _add_output(p, ("csv", "json"), "csv")

    # --- sweep ---
    p = sub.add_parser("sweep", help="参数扫描（变分曲线 + 截断点）")
    p.add_argument("model", choices=MODELS)
    p.add_argument("--a", default=None, help="数值或 start:stop:step 网格")
    p.add_argument("--b", default=None, help="数值或 start:stop:step 网格")
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--figure", choices=sorted(config.FIGURES), default=None, help="使用预设的图形扫描")
    p.add_argument("--levels", type=int, default=None)
    p.add_argument("--s", type=int, choices=(0, 1), default=None, help="只计算一个宇称扇区")
    p.add_argument("--full-line", action="store_true", help="振子两个扇区按能量合并编号")
    p.add_argument("--max-order", type=int, default=config.SWEEP_CONFIG.get("max_order", 12))
    p.add_argument("--basis", type=int, default=None, help="最大基组大小")
    p.add_argument("--jobs", type=int, default=config.DEFAULT_JOBS)
    _add_output(p, ("csv", "json", "svg"), "csv")

    # --- threshold ---
    p = sub.add_parser("threshold", help="能级过零点")
    p.add_argument("model", choices=MODELS)
    p.add_argument("--sweep", choices=("a", "b"), required=True)
    p.add_argument("--a", type=float, default=0.0)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--level", type=int, default=0)
    p.add_argument("--s", type=int, choices=(0, 1), default=None,
                   help="给出时 level 是扇区内编号，否则是全直线编号")
    p.add_argument("--bracket", default=None, help="lo:hi")
    p.add_argument("--basis", type=int, default=None)
    _add_output(p, ("csv", "json"), "json")

    # --- check ---
    p = sub.add_parser("check", help="一致性检查")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    _add_output(p, ("csv", "json"), "json")

    # --- moments ---
    p = sub.add_parser("moments", help="加权幂矩量表")
    p.add_argument("model", choices=MODELS)
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--max", dest="m_max", type=int, required=True, help="最高阶数")
    _add_output(p, ("csv", "json"), "csv")

    return parser


def parse_args(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    raw = list(sys.argv[1:] if argv is None else argv)
    return build_parser().parse_args(normalize_argv(raw))

# utility/helpers.py
from __future__ import annotations

import math
import re

import numpy as np

from utility.errors import UsageError

# 形如 start:stop:step 的网格写法
GRID_PATTERN = re.compile(r"^\s*([-+0-9.eE]+)\s*:\s*([-+0-9.eE]+)\s*:\s*([-+0-9.eE]+)\s*$")


def parse_grid(text: str) -> np.ndarray:
    """
    解析 'start:stop:step' 网格，端点在半步容差内包含在内。
    网格值按 12 位有效数字取整，保证输出稳定。
    """
    match = GRID_PATTERN.match(text)
    if not match:
        raise UsageError(f"无效的网格写法 '{text}'，应为 start:stop:step。")
    start, stop, step = (float(g) for g in match.groups())
    if step == 0 or not all(math.isfinite(v) for v in (start, stop, step)):
        raise UsageError(f"网格 '{text}' 的步长必须为非零有限值。")
    span = (stop - start) / step
    if span < -0.5:
        raise UsageError(f"网格 '{text}' 不是单调的：步长方向与区间相反。")
    count = int(math.floor(span + 0.5)) + 1
    values = start + step * np.arange(count)
    return np.array([float(f"{v:.12g}") for v in values])


def is_grid(text: str) -> bool:
    return bool(GRID_PATTERN.match(text))


def parse_bracket(text: str) -> tuple[float, float]:
    """解析 'lo:hi' 形式的区间。"""
    parts = text.split(":")
    if len(parts) != 2:
        raise UsageError(f"无效的区间 '{text}'，应为 lo:hi。")
    try:
        lo, hi = float(parts[0]), float(parts[1])
    except ValueError:
        raise UsageError(f"无效的区间 '{text}'。")
    if not lo < hi:
        raise UsageError(f"区间 '{text}' 需满足 lo < hi。")
    return lo, hi


def format_float(value: float, spec: str = ".12g") -> str:
    """固定格式输出浮点数；-0 统一写成 0。"""
    if value == 0:
        value = 0.0
    return format(value, spec)


def create_progress_bar(current: int, total: int, bar_length: int = 20) -> str:
    """创建一个文本格式的进度条。"""
    if total == 0:
        return f"[{'░' * bar_length}] 0.0%"
    fraction = current / total
    filled_length = int(bar_length * fraction)
    bar = '█' * filled_length + '░' * (bar_length - filled_length)
    return f"[{bar}] {fraction:.1%}"


def format_duration_hms(total_seconds: float) -> str:
    """将总秒数格式化为 'X小时 Y分钟 Z秒' 的字符串，不足一秒时保留两位小数。"""
    if total_seconds <= 0: return "0 秒"
    if total_seconds < 60: return f"{total_seconds:.2f} 秒"
    seconds, hours, minutes = int(total_seconds), 0, 0
    if seconds >= 3600: hours, seconds = divmod(seconds, 3600)
    if seconds >= 60: minutes, seconds = divmod(seconds, 60)
    parts = []
    if hours > 0: parts.append(f"{hours} 小时")
    if minutes > 0: parts.append(f"{minutes} 分钟")
    if seconds > 0 or not parts: parts.append(f"{seconds} 秒")
    return " ".join(parts)

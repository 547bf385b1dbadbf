# cli/emitters.py
"""
CSV / JSON / SVG 输出。所有浮点数用同一个格式串，保证相同输入得到逐字节相同的输出。
"""
from __future__ import annotations

import csv
import io
from collections import defaultdict
from typing import Any, Iterable, List, Sequence

import matplotlib
from matplotlib.figure import Figure
from pydantic import BaseModel, TypeAdapter

import config
from cli.records import Provenance, SweepRecord
from utility.helpers import format_float

# svg 内部 id 默认带随机后缀
matplotlib.rcParams["svg.hashsalt"] = "qes-spectra"

SWEEP_HEADER = ("model", "param", "value", "nu", "sector", "energy", "provenance", "converged")


def _fmt(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value, config.SWEEP_CONFIG.get("float_format", ".12g"))
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt(v) for v in value)
    if hasattr(value, "value"):
        return str(value.value)
    return str(value)


def _csv(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buffer.getvalue()


def sweep_csv(records: Sequence[SweepRecord]) -> str:
    return _csv(SWEEP_HEADER, (
        (r.model, r.param, r.value, r.nu, r.sector, r.energy, r.provenance, r.converged_field)
        for r in records
    ))


def records_csv(records: Sequence[BaseModel], columns: Sequence[str]) -> str:
    """通用 CSV：按给定列名取字段。"""
    return _csv(columns, ([getattr(r, c) for c in columns] for r in records))


def to_json(payload: Any) -> str:
    if isinstance(payload, list):
        kind = List[type(payload[0])] if payload else List[Any]
    else:
        kind = type(payload)
    return TypeAdapter(kind).dump_json(payload, indent=2).decode("utf-8") + "\n"


# ===================================================================
# SVG
# ===================================================================

def sweep_svg(records: Sequence[SweepRecord], title: str = "") -> str:
    """红线为变分能级，蓝点为截断点。"""
    curves = defaultdict(list)
    dots_x, dots_y = [], []
    for r in records:
        if r.provenance is Provenance.VARIATIONAL:
            curves[(r.sector, r.nu)].append((r.value, r.energy))
        else:
            dots_x.append(r.value)
            dots_y.append(r.energy)

    fig = Figure(figsize=(6.4, 4.8))
    ax = fig.add_subplot()
    for key in sorted(curves):
        points = sorted(curves[key])
        ax.plot([p[0] for p in points], [p[1] for p in points], color="red", linewidth=1.0)
    if dots_x:
        ax.scatter(dots_x, dots_y, color="blue", s=12, zorder=3)
    if records:
        ax.set_xlabel(records[0].param)
    ax.set_ylabel("E")
    if title:
        ax.set_title(title)
    buffer = io.StringIO()
    fig.savefig(buffer, format="svg", metadata={"Date": None})
    return buffer.getvalue()

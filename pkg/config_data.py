# config_data.py

# ===================================================================
# 图形复现 (`sweep`) 的预设
# ===================================================================

# 每一项对应一张能级分布图：固定参数 + 扫描参数的网格 (start, stop, step)
FIGURE_SWEEPS = {
    # --- 六次振子，a=0，扫描 b（单阱到双阱，对称图） ---
    "sextic_a0": {
        "model": "sextic",
        "fixed": {"a": 0.0},
        "sweep": ("b", -6.0, 6.0, 0.1),
        "levels": 8,
    },
    # --- 六次振子，b=0，扫描 a ---
    "sextic_b0": {
        "model": "sextic",
        "fixed": {"b": 0.0},
        "sweep": ("a", 0.0, 14.0, 0.1),
        "levels": 8,
    },
    # --- 六次振子，b=1，扫描 a ---
    "sextic_b1": {
        "model": "sextic",
        "fixed": {"b": 1.0},
        "sweep": ("a", 0.0, 14.0, 0.1),
        "levels": 8,
    },
    # --- 微扰库仑模型，γ=1，b=1，扫描 a ---
    "coulomb_g1_b1": {
        "model": "coulomb",
        "fixed": {"gamma": 1.0, "b": 1.0},
        "sweep": ("a", -10.0, 10.0, 0.1),
        "levels": 8,
    },
}

# ===================================================================
# 已发表的能级过零点 (`threshold` / `check thresholds`)
# ===================================================================

# level 是全直线（两个宇称合并）意义下的能级序号
PUBLISHED_THRESHOLDS = [
    # a=0 时扫描 b
    {"fixed": {"a": 0.0}, "sweep": "b", "level": 0, "value": 2.491322600, "tol": 1e-5, "bracket": (2.0, 3.0)},
    {"fixed": {"a": 0.0}, "sweep": "b", "level": 1, "value": 3.037089563, "tol": 1e-5, "bracket": (2.5, 3.5)},
    # b=0 时扫描 a，两者都恰好落在截断点 E=0 上
    {"fixed": {"b": 0.0}, "sweep": "a", "level": 0, "value": 3.0, "tol": 1e-7, "bracket": (2.0, 4.0)},
    {"fixed": {"b": 0.0}, "sweep": "a", "level": 1, "value": 5.0, "tol": 1e-7, "bracket": (4.0, 6.0)},
    # b=1 时扫描 a
    {"fixed": {"b": 1.0}, "sweep": "a", "level": 0, "value": 1.901043863, "tol": 1e-5, "bracket": (1.0, 3.0)},
    {"fixed": {"b": 1.0}, "sweep": "a", "level": 1, "value": 3.508348408, "tol": 1e-5, "bracket": (3.0, 4.5)},
]

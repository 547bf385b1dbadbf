import os

import psutil
from dotenv import load_dotenv

from config_data import FIGURE_SWEEPS, PUBLISHED_THRESHOLDS

load_dotenv()
# ===================================================================
# 核心配置
# ===================================================================

# 日志级别，优先从环境变量 'QES_LOG_LEVEL' 获取
LOG_LEVEL = os.getenv("QES_LOG_LEVEL", "INFO").upper()

# 扫描时的默认并发数
# 优先从环境变量 'QES_JOBS' 获取，否则使用物理核心数（取不到时为 1）
DEFAULT_JOBS = int(os.getenv("QES_JOBS", psutil.cpu_count(logical=False) or 1))

# ===================================================================
# 三项递推 (ttrr) 配置
# ===================================================================
RECURRENCE_CONFIG = {
    # |c_j| 超过该值时对工作对 (c_j, c_{j-1}) 做重标度
    "rescale_threshold": 1e150,
}

# ===================================================================
# 矩量表配置
# ===================================================================
MOMENT_CONFIG = {
    # 种子积分的目标相对精度
    "quadrature_rtol": 1e-13,
    # 实际达到的相对误差超过该值时抛出 PrecisionError
    "quadrature_fail_rtol": 1e-11,
    # 递推误差估计超过该值时改用积分结果
    "recheck_rtol": 1e-12,
    # 积分区间切分的面板数（面板结果做补偿求和）
    "panels": 8,
    # 振子权重的最小截断点 X
    "oscillator_min_cutoff": 6.0,
    # 库仑权重的最小截断点 R
    "coulomb_min_cutoff": 8.0,
}

# ===================================================================
# 截断条件配置
# ===================================================================
TRUNCATION_CONFIG = {
    # 超过该阶数双精度不再可靠
    "max_order": 60,
    # 伴随矩阵根的虚部容差（相对 1+|实部|）
    "imag_tolerance": 1e-7,
    # 根的去重容差
    "dedup_tolerance": 1e-9,
    # 根距区间端点的最小距离
    "endpoint_tolerance": 1e-7,
}

# ===================================================================
# 变分 (Rayleigh–Ritz) 配置
# ===================================================================
VARIATIONAL_CONFIG = {
    # 最大基组大小
    "basis_size": int(os.getenv("QES_BASIS_SIZE", 25)),
    # 每次加大基组的步长
    "basis_step": 5,
    # Gram 矩阵条件数上限
    "condition_threshold": float(os.getenv("QES_CONDITION_THRESHOLD", 1e13)),
    # 变分约化使用的十进制位数（mpmath）；条件数上限按多出的位数放宽
    "working_dps": int(os.getenv("QES_WORKING_DPS", 64)),
    # |E(N) - E(N-5)| 小于该值视为收敛
    "convergence_tol": 1e-9,
    # 残差 ||Hc - ESc|| 相对 ||H|| 的上限
    "residual_tol": 1e-8,
    # 哈密顿矩阵非对称缺陷相对 ||H|| 的上限
    "asymmetry_tol": 1e-8,
}

# Hellmann–Feynman 检查
HF_CONFIG = {
    "delta": 1e-4,
    "gap_tol": 1e-5,
    # 检查的最高能级（含）
    "max_level": 3,
    # 随机抽样时最多尝试的点数 = random_samples × draw_factor
    "draw_factor": 6,
}

# ===================================================================
# 命令行功能配置
# ===================================================================
SWEEP_CONFIG = {
    # 默认能级数
    "levels": 8,
    # 扫描窗口内查找截断点时的最大阶数
    "max_order": 12,
    # 输出中浮点数的格式（保证逐字节可复现）
    "float_format": ".12g",
    # 截断点与变分曲线的允许偏差
    "overlay_tol": 1e-6,
    # 扫描时按 Gram 度规重叠追踪能级
    "track_levels": True,
}

THRESHOLD_CONFIG = {
    # 参数容差
    "xtol": 1e-10,
    # 残差 |E_ν(root)| 上限
    "residual_tol": 1e-8,
    # 自动括号的粗扫范围与步长
    "scan_ranges": {
        "a": (-10.0, 20.0, 0.5),
        "b": (0.0, 8.0, 0.25),
    },
}

CHECK_CONFIG = {
    "seed": 20240611,
    "random_samples": 10,
}

# 方便外部直接引用的静态数据
FIGURES = FIGURE_SWEEPS
THRESHOLDS = PUBLISHED_THRESHOLDS

# main.py
import asyncio
import logging
import sys
from typing import Optional, Sequence

from pydantic import ValidationError

import config
from cli.commands import COMMANDS
from cli.parser import parse_args
from utility.errors import QesError, UsageError

# ===================================================================
# 日志设置
# ===================================================================
# 1. 创建一个格式化器
formatter = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

# 2. 处理器输出到 stderr，stdout 只留给 CSV/JSON/SVG 结果
handler = logging.StreamHandler(sys.stderr)
handler.setFormatter(formatter)

# 3. 获取并配置项目自己的 logger ('qes_spectra')
logger = logging.getLogger('qes_spectra')
logger.setLevel(config.LOG_LEVEL)
logger.addHandler(handler)
# 防止日志消息向上传播到根 logger，避免重复打印
logger.propagate = False


# ===================================================================
# 入口
# ===================================================================
async def run(argv: Optional[Sequence[str]] = None) -> int:
    """解析参数并执行子命令，返回退出码。"""
    args = parse_args(argv)
    if args.log_level:
        logger.setLevel(args.log_level.upper())
    try:
        return await COMMANDS[args.command](args)
    except (UsageError, ValidationError) as e:
        logger.error(f"参数错误: {e}")
        return 2
    except QesError as e:
        logger.error(f"计算失败: {e}")
        return 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return asyncio.run(run(argv))
    except KeyboardInterrupt:
        logger.info("收到中断信号，退出。")
        return 1


if __name__ == '__main__':
    sys.exit(main())

# utility/result_writer.py
from __future__ import annotations

import asyncio
import logging
import os
import sys
from typing import Optional

LOGGER_NAME = "qes_spectra"


class AsyncResultWriter:
    """
    结果输出器。
    有目标路径时先写临时文件再 os.replace，保证文件要么完整要么不存在；
    没有路径时写到标准输出。磁盘 IO 在线程池中执行。
    """

    def __init__(self, out_path: Optional[str] = None, logger: Optional[logging.Logger] = None):
        self.out_path = out_path
        self.logger = logger or logging.getLogger(LOGGER_NAME).getChild(self.__class__.__name__)

    def _write_to_file_sync(self, content: str):
        """同步写入逻辑（在线程池中执行）。只负责写磁盘。"""
        temp_file = f"{self.out_path}.tmp"
        directory = os.path.dirname(self.out_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        try:
            with open(temp_file, 'w', encoding='utf-8', newline='') as f:
                f.write(content)
            os.replace(temp_file, self.out_path)
        except Exception as e:
            self.logger.error(f"写入结果文件失败 {self.out_path}: {e}")
            # 写入失败时尝试删除临时文件
            try:
                if os.path.exists(temp_file):
                    os.remove(temp_file)
            except Exception as cleanup_error:
                self.logger.error(f"清理临时文件失败 {temp_file}: {cleanup_error}")
            raise

    async def write(self, content: str):
        """异步写入：文件走线程池，标准输出直接写。"""
        if self.out_path:
            await asyncio.to_thread(self._write_to_file_sync, content)
            self.logger.info(f"结果已写入 {self.out_path} ({len(content)} 字节)")
        else:
            sys.stdout.write(content)
            sys.stdout.flush()

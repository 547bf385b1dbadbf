# tests/conftest.py
import numpy as np
import pytest

import config


@pytest.fixture
def rng():
    return np.random.default_rng(config.CHECK_CONFIG.get("seed", 20240611))


@pytest.fixture
def run_cli(capsys):
    """运行命令行入口，返回 (退出码, 标准输出)。"""
    import main

    def _run(*argv):
        code = main.main(list(argv))
        return code, capsys.readouterr().out

    return _run

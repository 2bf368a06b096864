"""
Sweep Configuration Loader

从 YAML profile 加载扫描/重现的默认参数（OmegaConf 解析 ${oc.env:VAR,default}）；
另外读取 --config 指定的扁平键值文件。
"""

import copy
import logging
from pathlib import Path
from typing import Any

import yaml
from omegaconf import OmegaConf

logger = logging.getLogger(__name__)

# --config 文件允许的键，与命令行参数一一对应
CONFIG_FILE_KEYS = frozenset({"a0", "eps", "n", "sigma", "runs", "seed", "workers", "out"})


class SweepConfig:
    """
    扫描配置管理器

    支持多个 profile（desk/full），加载时解析 oc.env 插值。
    """

    DEFAULTS: dict[str, Any] = {
        "sweep": {
            "a0": [0.5, 0.98, 1.01, 1.1],
            "eps": [0.01, 0.1, 0.5, 1.0, 2.0, 5.0],
            "n": [2, 5, 10, 25, 50, 100],
            "sigma": 1.0,
            "runs": 10000,
            "seed": 0,
            "out": "sweep.csv",
        },
        "reproduce": {
            "runs": 10000,
            "seed": 0,
            "out": "figures",
        },
    }

    def __init__(self, profile: str = "desk"):
        self.profile = profile
        self._config: dict[str, Any] | None = None

    def load(self) -> dict[str, Any]:
        """加载配置"""
        if self._config is None:
            self._config = self._load_config()
        return self._config

    def _load_config(self) -> dict[str, Any]:
        yaml_config = self._load_yaml_config()
        if yaml_config:
            return self._merge_with_defaults(yaml_config)
        return copy.deepcopy(self.DEFAULTS)

    def _load_yaml_config(self) -> dict[str, Any] | None:
        """从 profiles/<profile>.yaml 加载"""
        config_file = Path(__file__).parent / "profiles" / f"{self.profile}.yaml"
        if not config_file.exists():
            logger.warning(f"配置文件不存在: {config_file}")
            return None

        return OmegaConf.to_container(OmegaConf.load(config_file), resolve=True)

    def _merge_with_defaults(self, config: dict[str, Any]) -> dict[str, Any]:
        merged = copy.deepcopy(self.DEFAULTS)

        def deep_update(base: dict, update: dict) -> dict:
            for key, value in update.items():
                if key in base and isinstance(base[key], dict) and isinstance(value, dict):
                    deep_update(base[key], value)
                else:
                    base[key] = value
            return base

        return deep_update(merged, config)

    def get(self, key: str, default: Any = None) -> Any:
        """
        获取配置值

        支持点分隔的路径，如 "sweep.runs"
        """
        value: Any = self.load()
        for k in key.split("."):
            if not isinstance(value, dict):
                return default
            value = value.get(k)
        return value if value is not None else default


_configs: dict[str, SweepConfig] = {}


def get_sweep_config(profile: str = "desk") -> SweepConfig:
    """获取（缓存的）profile 配置实例"""
    if profile not in _configs:
        _configs[profile] = SweepConfig(profile)
    return _configs[profile]


def load_config_file(path: str | Path) -> dict[str, Any]:
    """
    读取 --config 指定的扁平 YAML 键值文件

    Raises:
        ValueError: 顶层不是映射或包含未知键
        OSError: 文件无法读取
    """
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ValueError(f"配置文件顶层必须是键值映射: {path}")
    unknown = sorted(set(data) - CONFIG_FILE_KEYS)
    if unknown:
        raise ValueError(f"配置文件包含未知键: {', '.join(map(str, unknown))}")
    return data

"""
arbound Configuration Management

从环境变量和 .env 文件中读取运行配置。
"""

import psutil
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """arbound 配置"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="ARBOUND_",
        extra="ignore",
    )

    # Logging
    log_level: str = Field(default="INFO")
    log_format: str = Field(default="text")

    # Monte Carlo
    workers: int | None = Field(default=None, ge=1, description="并行进程数，None 表示按 CPU 数")
    mc_chunk_size: int = Field(default=2048, ge=1, description="每个任务的运行次数，不影响结果")

    # Sweep profiles
    default_profile: str = Field(default="desk")

    @field_validator("log_format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """只接受 text / json"""
        if v not in ("text", "json"):
            raise ValueError(f"不支持的日志格式: {v}")
        return v

    @property
    def resolved_workers(self) -> int:
        """实际使用的进程数"""
        if self.workers is not None:
            return self.workers
        return psutil.cpu_count(logical=True) or 1


# 全局配置实例
_settings: Settings | None = None


def get_settings() -> Settings:
    """获取全局配置实例"""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def reload_settings() -> Settings:
    """重新加载配置"""
    global _settings
    _settings = Settings()
    return _settings

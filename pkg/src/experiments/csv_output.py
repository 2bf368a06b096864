"""
CSV 输出

固定表头；浮点数写成可精确回读的最短十进制形式。先写临时文件再原子替换，
失败时不留下残缺文件。
"""

import csv
import logging
import os
import tempfile
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

logger = logging.getLogger(__name__)


def format_cell(value: Any) -> str:
    """float 用 repr（最短往返表示），bool 写成 0/1，None 写成空串"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(
    path: str | Path, columns: Sequence[str], rows: Iterable[Mapping[str, Any]]
) -> Path:
    """
    原子地写出 CSV

    rows 可以是生成器；生成过程中抛出的异常同样会清理临时文件。

    Raises:
        OSError: 目标目录不可写等 I/O 错误
    """
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=target.parent)
    count = 0
    try:
        with os.fdopen(fd, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_cell(row[c]) for c in columns])
                count += 1
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise

    logger.info(f"写出 {count} 行: {target}")
    return target

"""
可复现的随机数生成

固定算法，保证相同种子在任何进程调度下得到相同的噪声序列：

1. 单次运行种子：SplitMix64(base_seed + (r + 1) * 0x9E3779B97F4A7C15 mod 2^64)
2. 位生成器：numpy PCG64（经 SeedSequence 初始化），仅使用 random_raw 的 64 位输出
3. 均匀数：取原始输出的高 53 位，u = (x >> 11) * 2^-53 ∈ [0, 1)
4. 高斯数：极坐标 Box-Muller（Marsaglia polar method），每对接受样本产出两个标准正态数
"""

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15
_TWO_POW_MINUS_53 = 1.0 / 9007199254740992.0

# 接受率 pi/4，每轮多取一些避免反复补抽
_POLAR_OVERDRAW = 1.3


def splitmix64(x: int) -> int:
    """SplitMix64 终结混合函数"""
    z = (x + _GOLDEN_GAMMA) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_run_seed(base_seed: int, run_index: int) -> int:
    """
    由 (base_seed, run_index) 派生单次运行种子

    Args:
        base_seed: 64 位基础种子
        run_index: 运行序号（从 0 开始）

    Returns:
        64 位无符号种子
    """
    if run_index < 0:
        raise ValueError(f"run_index 必须非负: {run_index}")
    return splitmix64((base_seed + (run_index + 1) * _GOLDEN_GAMMA) & _MASK64)


class GaussianStream:
    """
    单个种子对应的标准正态序列

    只依赖 PCG64 的原始输出，不使用 numpy Generator 的分布实现。
    """

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self._bit_generator = np.random.PCG64(self.seed)

    def uniforms(self, count: int) -> np.ndarray:
        """[0, 1) 上的均匀数"""
        raw = self._bit_generator.random_raw(count)
        return (raw >> np.uint64(11)).astype(np.float64) * _TWO_POW_MINUS_53

    def normals(self, count: int) -> np.ndarray:
        """
        生成 count 个标准正态数

        Args:
            count: 需要的数量

        Returns:
            长度为 count 的 float64 数组
        """
        out = np.empty(count, dtype=np.float64)
        filled = 0
        while filled < count:
            pairs = int((count - filled) / 2 * _POLAR_OVERDRAW) + 4
            uv = 2.0 * self.uniforms(2 * pairs) - 1.0
            u, v = uv[0::2], uv[1::2]
            s = u * u + v * v
            accept = (s > 0.0) & (s < 1.0)
            u, v, s = u[accept], v[accept], s[accept]
            factor = np.sqrt(-2.0 * np.log(s) / s)
            batch = np.empty(2 * s.size, dtype=np.float64)
            batch[0::2] = u * factor
            batch[1::2] = v * factor
            take = min(batch.size, count - filled)
            out[filled : filled + take] = batch[:take]
            filled += take
        return out

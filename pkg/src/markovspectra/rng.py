"""Counter-based splittable random streams.

The generator is stateless under the hood: output word ``k`` of a stream is
``mix64(key + (k+1)*GOLDEN)`` where ``key = mix64(master_seed + GOLDEN*stream_index)``
and ``mix64`` is the 64-bit avalanche finalizer of SplitMix64.  The stream
splitting function ``index -> key`` is a bijection composed with an affine
map, so distinct stream indices under one master seed can never collide.
Because every word is a pure function of (master_seed, stream_index, k),
samples are reproducible regardless of thread scheduling or chunk sizes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = ["SeededStream", "mix64"]

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_U64 = np.uint64


def mix64(x: np.ndarray) -> np.ndarray:
    """SplitMix64 avalanche finalizer (bijective on 64-bit words)."""
    x = np.atleast_1d(np.asarray(x, dtype=np.uint64)).copy()
    x ^= x >> _U64(30)
    x *= _U64(0xBF58476D1CE4E5B9)
    x ^= x >> _U64(27)
    x *= _U64(0x94D049BB133111EB)
    x ^= x >> _U64(31)
    return x


@dataclass
class SeededStream:
    """One reproducible sample stream identified by (master_seed, stream_index).

    The cursor advances as values are drawn; two freshly constructed streams
    with equal identity yield bit-identical sequences.
    """

    master_seed: int
    stream_index: int = 0
    _cursor: int = field(default=0, repr=False, compare=False)

    def __post_init__(self):
        raw_key = (self.master_seed + _GOLDEN * self.stream_index) & _MASK
        self._key = int(mix64(raw_key)[0])

    def substream(self, index: int) -> "SeededStream":
        """Derive a child stream; children of distinct indices never collide."""
        return SeededStream(self._key, index)

    def raw(self, count: int) -> np.ndarray:
        """Next ``count`` raw 64-bit words."""
        start = self._cursor
        self._cursor += count
        counters = np.arange(start + 1, start + count + 1, dtype=np.uint64)
        counters *= _U64(_GOLDEN)
        counters += _U64(self._key)
        return mix64(counters)

    def uniform(self, count: int) -> np.ndarray:
        """``count`` doubles uniform on [0, 1) with 53-bit resolution."""
        return (self.raw(count) >> _U64(11)) * (2.0**-53)

    def uniform_open(self, count: int) -> np.ndarray:
        """Uniform on the open interval (0, 1): exact zeros are redrawn."""
        u = self.uniform(count)
        while True:
            zero = u == 0.0
            if not zero.any():
                return u
            u[zero] = self.uniform(int(zero.sum()))

    def normal(self, count: int) -> np.ndarray:
        """Standard normals via Box-Muller on consecutive uniform pairs."""
        half = (count + 1) // 2
        u1 = self.uniform(half)
        u2 = self.uniform(half)
        r = np.sqrt(-2.0 * np.log1p(-u1))  # 1-u1 in (2^-53, 1], log finite
        z = np.concatenate([r * np.cos(2.0 * np.pi * u2), r * np.sin(2.0 * np.pi * u2)])
        return z[:count]

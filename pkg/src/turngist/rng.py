"""Deterministic random streams keyed by record id.

Every stochastic decision in the pipeline draws from a stream seeded by
``fnv1a64(record_id) XOR global_seed`` and advanced with splitmix64. Seeding
by id rather than by call order makes results independent of worker count,
record order, and batching, and the two primitives are trivial to reimplement
bit-for-bit in any language that has 64-bit integers.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1

_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
_SPLITMIX_MUL2 = 0x94D049BB133111EB


def fnv1a64(data: str | bytes) -> int:
    """FNV-1a 64-bit hash of ``data`` (strings are hashed as UTF-8 bytes)."""
    if isinstance(data, str):
        data = data.encode("utf-8")
    h = _FNV_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV_PRIME) & _MASK64
    return h


class RandomStream:
    """splitmix64 stream. One instance per example; never share across records."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _SPLITMIX_GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * _SPLITMIX_MUL1) & _MASK64
        z = ((z ^ (z >> 27)) * _SPLITMIX_MUL2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        """Uniform float in [0, 1): next_u64 / 2**64."""
        return self.next_u64() / 18446744073709551616.0

    def bernoulli(self, probability: float) -> bool:
        """True iff the next uniform draw is strictly below ``probability``."""
        return self.uniform() < probability


def derive_example_rng(global_seed: int, record_id: str) -> RandomStream:
    """Stream for one record: seeded by fnv1a64(record_id) XOR global_seed."""
    return RandomStream(fnv1a64(record_id) ^ (global_seed & _MASK64))

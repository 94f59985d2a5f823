"""Bitstring solutions and the seeded randomness contract.

Every stochastic component in this package draws from a :class:`RandomSource`.
The exact order and kind of primitive draws (the "draw protocol") is part of
the reproducibility contract: the compiled engine in ``_fast`` consumes the
same PCG64 stream in the same order, so seeded runs are bit-identical across
engines.
"""

from __future__ import annotations

import numpy as np


class Bitstring:
    """Immutable fixed-length binary string packed into a Python integer.

    Bit ``i`` of :attr:`value` stores position ``i``, so counting 1-bits is a
    single population count over the packed words.
    """

    __slots__ = ("_value", "_n")

    def __init__(self, value: int, n: int):
        if n < 1:
            raise ValueError(f"bitstring length must be at least 1, got {n}")
        if value < 0 or value >> n:
            raise ValueError("value has bits set outside the configured length")
        self._value = value
        self._n = n

    @property
    def value(self) -> int:
        return self._value

    @property
    def n(self) -> int:
        return self._n

    @classmethod
    def zeros(cls, n: int) -> "Bitstring":
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "Bitstring":
        return cls((1 << n) - 1, n)

    @classmethod
    def from_string(cls, s: str) -> "Bitstring":
        """Parse ``"0101..."``; character ``i`` becomes bit ``i``."""
        if not s or set(s) - {"0", "1"}:
            raise ValueError(f"not a binary string: {s!r}")
        value = 0
        for i, c in enumerate(s):
            if c == "1":
                value |= 1 << i
        return cls(value, len(s))

    def bit(self, i: int) -> int:
        if not 0 <= i < self._n:
            raise IndexError(f"bit index {i} out of range for length {self._n}")
        return (self._value >> i) & 1

    def complement(self) -> "Bitstring":
        return Bitstring(self._value ^ ((1 << self._n) - 1), self._n)

    def __len__(self) -> int:
        return self._n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bitstring):
            return NotImplemented
        return self._n == other._n and self._value == other._value

    def __hash__(self) -> int:
        return hash((self._value, self._n))

    def __str__(self) -> str:
        return "".join("1" if (self._value >> i) & 1 else "0" for i in range(self._n))

    def __repr__(self) -> str:
        return f"Bitstring('{self}')"


def ones_count(x: Bitstring) -> int:
    """Number of 1-valued positions in ``x``."""
    return x.value.bit_count()


def zeros_count(x: Bitstring) -> int:
    """Number of 0-valued positions in ``x``."""
    return x.n - x.value.bit_count()


def _pack_mask(mask: np.ndarray) -> int:
    """Pack a boolean array into an integer, array index i -> bit i."""
    packed = np.packbits(mask, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


class RandomSource:
    """Seeded PCG64 stream with the primitive draws used by the algorithms.

    One instance per trial; never share an instance across concurrent runs.
    Identical seeds produce identical draw streams on the same build.
    """

    __slots__ = ("seed", "generator")

    def __init__(self, seed: int):
        self.seed = int(seed)
        if self.seed < 0 or self.seed >= 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        self.generator = np.random.Generator(np.random.PCG64(self.seed))

    def integer(self, m: int) -> int:
        """Uniform integer in ``[0, m)``."""
        if m < 1:
            raise ValueError(f"integer bound must be positive, got {m}")
        return int(self.generator.integers(0, m))

    def uniform(self) -> float:
        """Uniform double in ``[0, 1)``."""
        return float(self.generator.random())

    def bernoulli(self, p: float) -> bool:
        return bool(self.generator.random() < p)

    def subset(self, m: int, size: int) -> list[int]:
        """Uniform subset of ``size`` indices from ``[0, m)``, no replacement.

        Implemented as a partial Fisher-Yates shuffle consuming exactly
        ``size`` integer draws; the compiled engine replays the identical
        sequence. The returned order is the sampling order.
        """
        if not 1 <= size <= m:
            raise ValueError(f"subset size {size} out of range [1, {m}]")
        pool = list(range(m))
        for i in range(size):
            j = i + int(self.generator.integers(0, m - i))
            pool[i], pool[j] = pool[j], pool[i]
        return pool[:size]


def random_bitstring(n: int, rng: RandomSource) -> Bitstring:
    """Draw a uniform random bitstring of length ``n``.

    Consumes ``n`` doubles; bit ``i`` is 1 iff draw ``i`` is below 1/2.
    """
    if n < 1:
        raise ValueError(f"bitstring length must be at least 1, got {n}")
    mask = rng.generator.random(n) < 0.5
    return Bitstring(_pack_mask(mask), n)


def bitwise_mutate(x: Bitstring, rng: RandomSource) -> Bitstring:
    """Flip each bit of ``x`` independently with probability ``1/n``.

    Returns a new bitstring; the input is never modified. Consumes ``n``
    doubles, one per position.
    """
    mask = rng.generator.random(x.n) < 1.0 / x.n
    return Bitstring(x.value ^ _pack_mask(mask), x.n)

"""Binary words, slicing helpers, inner products and the paired (track) alphabet.

Words are 0/1 text with position 1 the leftmost symbol. Everything that takes
a word accepts either a plain ``str`` or a :class:`BitString`; the class only
adds validation and a couple of conversions.
"""
from __future__ import annotations

import itertools
import os
from typing import Iterator, Sequence

import numpy as np

from .errors import BoundsError, DimensionError, ResourceError

# Exhaustive sweeps over more than 2**MAX_ENUM_BITS words raise ResourceError.
MAX_ENUM_BITS = int(os.environ.get("CFLPRG_MAX_ENUM_BITS", "24"))


class BitString(str):
    """Immutable word over {0, 1}, stored as its ASCII text."""

    __slots__ = ()

    def __new__(cls, bits=""):
        if isinstance(bits, BitString):
            return bits
        if not isinstance(bits, str):
            bits = "".join(str(int(b)) for b in bits)
        if bits.strip("01"):
            raise ValueError(f"not a binary word: {bits!r}")
        return super().__new__(cls, bits)

    @classmethod
    def from_int(cls, value: int, length: int) -> "BitString":
        if value < 0 or value >> length:
            raise ValueError(f"{value} does not fit in {length} bits")
        return cls(format(value, f"0{length}b") if length else "")

    def to_int(self) -> int:
        return int(self, 2) if self else 0

    def bits(self) -> tuple[int, ...]:
        return tuple(1 if c == "1" else 0 for c in self)

    def flip(self, i: int) -> "BitString":
        """Copy with the bit at 0-based index ``i`` complemented."""
        return BitString(self[:i] + ("0" if self[i] == "1" else "1") + self[i + 1:])

    def __repr__(self):
        return f"BitString({str.__repr__(self)})"


def check_budget(n_bits: int, budget: int | None = None) -> None:
    limit = MAX_ENUM_BITS if budget is None else budget
    if n_bits > limit:
        raise ResourceError(f"enumerating 2^{n_bits} words exceeds budget 2^{limit}")


def words(n: int, budget: int | None = None) -> Iterator[str]:
    """All words of length ``n`` in lexicographic (= numeric) order."""
    check_budget(n, budget)
    if n == 0:
        yield ""
        return
    for t in itertools.product("01", repeat=n):
        yield "".join(t)


def words_upto(n: int, budget: int | None = None) -> Iterator[str]:
    for k in range(n + 1):
        yield from words(k, budget)


def bit_matrix(n: int, budget: int | None = None) -> np.ndarray:
    """``(2**n, n)`` uint8 array; row v holds the bits of v, most significant first."""
    check_budget(n, budget)
    v = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((v[:, None] >> shifts) & 1).astype(np.uint8)


def inner_product_parity(u: str, v: str) -> int:
    """``sum(u_i * v_i) mod 2``."""
    if len(u) != len(v):
        raise DimensionError(f"inner product of lengths {len(u)} and {len(v)}")
    return sum(1 for a, b in zip(u, v) if a == "1" and b == "1") & 1


def _check_slice(n: int, i: int, j: int) -> None:
    if not 0 <= i <= j <= n:
        raise BoundsError(f"need 0 <= {i} <= {j} <= {n}")


def pref(x: str, i: int) -> BitString:
    """First ``i`` symbols."""
    _check_slice(len(x), i, i)
    return BitString(x[:i])


def suf(x: str, j: int) -> BitString:
    """Last ``j`` symbols."""
    _check_slice(len(x), j, j)
    return BitString(x[len(x) - j:])


def midd(x: str, i: int, j: int) -> BitString:
    """Drop the first ``i`` and the last ``len(x) - j`` symbols."""
    _check_slice(len(x), i, j)
    return BitString(x[i:j])


class PairedString(tuple):
    """A word over a paired alphabet: a tuple of ``(sigma, gamma)`` symbol pairs."""

    __slots__ = ()

    @property
    def left(self) -> str:
        return "".join(p[0] for p in self)

    @property
    def right(self) -> str:
        return "".join(p[1] for p in self)

    def symbols(self) -> tuple[str, ...]:
        """The pairs in their serialized ``"s|g"`` form."""
        return tuple(f"{a}|{b}" for a, b in self)

    def __str__(self):
        return " ".join(self.symbols())


def track(x: Sequence[str], y: Sequence[str]) -> PairedString:
    """Position-wise pairing of two equal-length words."""
    if len(x) != len(y):
        raise DimensionError(f"track of lengths {len(x)} and {len(y)}")
    return PairedString(zip(x, y))


def parse_paired_symbol(sym: str) -> tuple[str, str]:
    left, sep, right = sym.partition("|")
    if not sep:
        raise ValueError(f"paired symbol must look like 'a|b': {sym!r}")
    return left, right

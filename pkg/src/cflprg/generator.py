"""The stretch-one generator whose range is exactly IP(3)+.

An input ``w`` of length N >= 3 is read as ``a x y b z`` with
``|a| = (N + 1) mod 4``, ``|x| = m``, ``|y| = 2m - 1``, ``b`` one bit and
``|z| = m - 1``. Then ``z x`` and ``y`` both have length ``2m - 1`` and the
output ``a ++ core(x, y, b, z)`` parses as an IP word ``a x' y' z'`` with
``y' = c y`` and ``z' = d z`` for the two inserted bits ``c, d``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .core import BitString, check_budget, inner_product_parity, words
from .errors import DomainError
from .iplang import ip_member, ip_membership_vector, ip_parse


@dataclass(frozen=True)
class GenParse:
    a: BitString
    x: BitString
    y: BitString
    b: str
    z: BitString

    @property
    def m(self) -> int:
        return len(self.x)

    def word(self) -> BitString:
        return BitString(self.a + self.x + self.y + self.b + self.z)


def gen_parse(w: str) -> GenParse:
    n = len(w)
    if n < 3:
        raise DomainError(f"inputs shorter than 3 bits have no parse (got {n})")
    r = (n + 1) % 4
    m = (n + 1 - r) // 4
    core = w[r:]
    return GenParse(BitString(w[:r]), BitString(core[:m]), BitString(core[m:3 * m - 1]),
                    core[3 * m - 1], BitString(core[3 * m:]))


def _flip(s: str, i: int) -> str:
    return s[:i] + ("0" if s[i] == "1" else "1") + s[i + 1:]


def generate_case(p: GenParse) -> str:
    """Which branch of the case machine ``p`` falls into: 1, 2, 3a, 3b or 3c."""
    if inner_product_parity(p.z + p.x, p.y) == 1:
        return "1"
    if p.b == "1":
        return "2"
    i = p.y.find("1")
    if i < 0:
        return "3c"
    return "3a" if i + 1 <= p.m - 1 else "3b"


def _core(x: str, y: str, b: str, z: str) -> str:
    m = len(x)
    if inner_product_parity(z + x, y) == 1:
        return x + ("0" if b == "1" else "1") + y + b + z
    if b == "1":
        return x + "1" + y + "1" + z
    i = y.find("1")  # 0-based, so the 1-based index is i + 1
    if i < 0:
        return x + "1" + y + "1" + z
    if i + 1 <= m - 1:
        return x + "0" + y + "0" + _flip(z, i)
    # y_(i+1) pairs with x_(i+2-m) inside z x
    return _flip(x, i + 1 - m) + "0" + y + "0" + z


def generate(w: str) -> BitString:
    if len(w) < 3:
        return BitString(w + "0")
    p = gen_parse(w)
    return BitString(p.a + _core(p.x, p.y, p.b, p.z))


def invert(u: str) -> set[BitString]:
    """Every ``w`` with ``generate(w) == u``."""
    if len(u) == 0:
        return set()
    if len(u) <= 3:
        return {BitString(u[:-1])} if u[-1] == "0" else set()
    ip = ip_parse(u)
    x, y1, z1 = ip.x, ip.y, ip.z
    c, y, d, z = y1[0], y1[1:], z1[0], z1[1:]
    m = len(x)
    candidates = []
    if c != d:
        candidates.append((x, y, d, z))  # case 1
    elif c == "1":
        candidates += [(x, y, "1", z), (x, y, "0", z)]  # case 2 and 3c
    else:
        i = y.find("1")
        if i >= 0:
            if i + 1 <= m - 1:
                candidates.append((x, y, "0", _flip(z, i)))
            else:
                candidates.append((_flip(x, i + 1 - m), y, "0", z))
    out = set()
    for cx, cy, cb, cz in candidates:
        w = BitString(ip.a + cx + cy + cb + cz)
        if generate(w) == u:
            out.add(w)
    return out


def is_doubled(u: str) -> bool:
    """True when the core of ``u`` reads ``x 1 0^(2m-1) 1 z`` (two preimages)."""
    if len(u) < 4:
        return False
    ip = ip_parse(u)
    return ip.y[0] == "1" and ip.z[0] == "1" and "1" not in ip.y[1:]


@lru_cache(maxsize=32)
def _image_table(n: int) -> np.ndarray:
    return np.fromiter((int(generate(w), 2) for w in words(n)), dtype=np.int64, count=1 << n)


def image_table(n: int, budget: int | None = None) -> np.ndarray:
    """``table[v]`` is the integer value of ``generate`` on the ``n``-bit word ``v``."""
    check_budget(n + 1, budget)
    return _image_table(n)


@dataclass(frozen=True)
class RangeStats:
    n: int
    range_size: int
    collisions: int  # number of outputs hit twice

    @property
    def tau(self) -> Fraction:
        return 1 - Fraction(self.range_size, 2 ** self.n)


def range_stats(n: int, budget: int | None = None) -> RangeStats:
    table = image_table(n, budget)
    counts = np.bincount(table, minlength=1 << (n + 1))
    return RangeStats(n, int(np.count_nonzero(counts)), int(np.count_nonzero(counts == 2)))


def verify_range_equals_ip(n: int, budget: int | None = None) -> bool:
    """Is ``{generate(w) : |w| = n}`` exactly ``IP ∩ {0,1}^(n+1)``?"""
    table = image_table(n, budget)
    hit = np.zeros(1 << (n + 1), dtype=bool)
    hit[table] = True
    return bool(np.array_equal(hit, ip_membership_vector(n + 1, budget)))


def generated_in_ip(w: str) -> bool:
    return ip_member(generate(w))

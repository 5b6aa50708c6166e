"""The inner-product language IP(3)+ and the gap statistic.

A word of length N splits uniquely as ``a x y z`` with ``|a| = N mod 4``,
``|x| = |z| = m`` and ``|y| = 2m``. It is a member iff ``(z x) . y`` is odd.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .adversaries import Language, as_language
from .core import BitString, bit_matrix, check_budget, inner_product_parity


@dataclass(frozen=True)
class IpParse:
    a: BitString
    x: BitString
    y: BitString
    z: BitString

    @property
    def m(self) -> int:
        return len(self.x)

    def word(self) -> BitString:
        return BitString(self.a + self.x + self.y + self.z)


def ip_parse(u: str) -> IpParse:
    r = len(u) % 4
    m = (len(u) - r) // 4
    core = u[r:]
    return IpParse(BitString(u[:r]), BitString(core[:m]), BitString(core[m:3 * m]), BitString(core[3 * m:]))


def ip_member(u: str) -> bool:
    p = ip_parse(u)
    if p.m == 0:
        return False
    return inner_product_parity(p.z + p.x, p.y) == 1


def ip_membership_vector(n: int, budget: int | None = None) -> np.ndarray:
    """Membership of every word of length ``n``, by enumerating all of them."""
    check_budget(n, budget)
    r = n % 4
    m = (n - r) // 4
    if m == 0:
        return np.zeros(1 << n, dtype=bool)
    bits = bit_matrix(n, budget)[:, r:]
    x, y, z = bits[:, :m], bits[:, m:3 * m], bits[:, 3 * m:]
    zx = np.concatenate([z, x], axis=1)
    return (np.sum(zx & y, axis=1, dtype=np.int64) & 1).astype(bool)


def ip_dense_closed_form(n: int) -> int:
    r = n % 4
    m = (n - r) // 4
    if m == 0:
        return 0
    return 2 ** r * (2 ** (2 * m) - 1) * 2 ** (2 * m - 1)


def ip_dense(n: int, closed_form: bool = False, budget: int | None = None) -> int:
    """``|IP ∩ {0,1}^n|``; exhaustive unless ``closed_form`` is set."""
    if n < 0:
        raise ValueError("length must be nonnegative")
    if closed_form:
        return ip_dense_closed_form(n)
    return int(np.count_nonzero(ip_membership_vector(n, budget)))


class _IpLanguage(Language):
    name = "ip"

    def accepts(self, word):
        return ip_member("".join(word))

    def membership_vector(self, n, budget=None):
        return ip_membership_vector(n, budget)


IP = _IpLanguage()


@dataclass(frozen=True)
class GapStat:
    n: int
    u1: int  # |L ∩ A ∩ Σ^n|
    u0: int  # |complement(L) ∩ A ∩ Σ^n|

    @property
    def value(self) -> Fraction:
        return Fraction(abs(self.u1 - self.u0), 2 ** self.n)


def gap_stat(lang, adversary, n: int, budget: int | None = None) -> GapStat:
    """Exact ``|dense(L∩A)(n) - dense(co-L∩A)(n)| / 2^n`` with both counts."""
    in_l = as_language(lang).membership_vector(n, budget)
    in_a = as_language(adversary).membership_vector(n, budget)
    u1 = int(np.count_nonzero(in_l & in_a))
    u0 = int(np.count_nonzero(~in_l & in_a))
    return GapStat(n, u1, u0)

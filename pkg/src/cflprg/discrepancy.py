"""Exact discrepancy of the inner-product sign matrix and the T-set constructions.

Words here have length ``2n``; ``n`` is the half-length parameter and is not
the generator's seed length. A pair set is held either as a :class:`PairSet`
of word pairs or as a boolean ``2^(2n) x 2^(2n)`` matrix indexed by the
integer values of the two words.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .core import BitString
from .errors import DomainError


@dataclass(frozen=True)
class PairSet:
    n: int
    pairs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset(self.pairs))
        for x, y in self.pairs:
            if len(x) != 2 * self.n or len(y) != 2 * self.n:
                raise DomainError(f"pair ({x}, {y}) does not have length {2 * self.n}")

    def __len__(self):
        return len(self.pairs)

    def to_matrix(self) -> np.ndarray:
        size = 1 << (2 * self.n)
        mat = np.zeros((size, size), dtype=bool)
        for x, y in self.pairs:
            mat[int(x, 2) if x else 0, int(y, 2) if y else 0] = True
        return mat

    @classmethod
    def from_matrix(cls, n: int, mat: np.ndarray) -> "PairSet":
        w = 2 * n
        xs, ys = np.nonzero(mat)
        return cls(n, frozenset((BitString.from_int(int(a), w), BitString.from_int(int(b), w))
                                for a, b in zip(xs, ys)))


@dataclass(frozen=True)
class CaseParams:
    n: int
    j: int
    a: frozenset  # words of length 4n - j
    b: frozenset  # words of length j
    case: int

    def __post_init__(self):
        n, j = self.n, self.j
        if self.case == 1:
            ok = n <= j <= 2 * n
        elif self.case == 2:
            ok = 2 * n < j <= 3 * n
        else:
            raise DomainError(f"case must be 1 or 2, got {self.case}")
        if not ok:
            raise DomainError(f"j={j} outside the range of case {self.case} for n={n}")
        object.__setattr__(self, "a", frozenset(self.a))
        object.__setattr__(self, "b", frozenset(self.b))
        if any(len(w) != 4 * n - j for w in self.a) or any(len(w) != j for w in self.b):
            raise DomainError("A must hold words of length 4n-j and B words of length j")

    @property
    def bound(self) -> Fraction:
        """Discrepancy ceiling: ``2^(n-j)`` in case 1, ``2^(j-3n)`` in case 2."""
        e = self.n - self.j if self.case == 1 else self.j - 3 * self.n
        return Fraction(2) ** e


def sign_matrix(n: int) -> np.ndarray:
    """``F[x, y] = (-1)^(x . y)`` over words of length ``2n``."""
    v = np.arange(1 << (2 * n), dtype=np.int64)
    anded = v[:, None] & v[None, :]
    parity = np.zeros_like(anded)
    for k in range(2 * n):
        parity ^= (anded >> k) & 1
    return 1 - 2 * parity


def _as_matrix(t, n: int | None) -> tuple[int, np.ndarray]:
    if isinstance(t, PairSet):
        return t.n, t.to_matrix()
    if n is None:
        raise DomainError("a bare matrix needs its n")
    return n, np.asarray(t, dtype=bool)


def char_sum(t, n: int | None = None) -> int:
    """``sum over T of (-1)^(x . y)``."""
    n, mat = _as_matrix(t, n)
    return int(np.sum(sign_matrix(n)[mat]))


def disc(t, n: int | None = None) -> Fraction:
    n, mat = _as_matrix(t, n)
    return Fraction(abs(char_sum(mat, n)), 2 ** (4 * n))


def _vector(words: Iterable[str], length: int) -> np.ndarray:
    vec = np.zeros(1 << length, dtype=bool)
    for w in words:
        vec[int(w, 2) if w else 0] = True
    return vec


@dataclass(frozen=True)
class BoundCheck:
    disc: Fraction
    bound_sq: Fraction  # the bound is compared squared where it is a square root
    ok: bool


def rectangle_bound_check(a: Iterable[str], b: Iterable[str], n: int) -> BoundCheck:
    """``disc(A' x B') <= 2^(-3n) sqrt(|A'||B'|)``, compared after squaring."""
    a, b = set(a), set(b)
    mat = np.outer(_vector(a, 2 * n), _vector(b, 2 * n))
    d = disc(mat, n)
    bound_sq = Fraction(len(a) * len(b), 2 ** (6 * n))
    return BoundCheck(d, bound_sq, d * d <= bound_sq)


def _codes(n: int):
    size = 1 << (2 * n)
    v = np.arange(size, dtype=np.int64)
    return np.broadcast_to(v[:, None], (size, size)), np.broadcast_to(v[None, :], (size, size))


def _mask(k: int) -> int:
    return (1 << k) - 1


def build_t_case1_matrix(p: CaseParams) -> np.ndarray:
    """Pairs with some split ``x = x1 x2 x3, y = y1 y2 y3`` such that
    ``|x1| = |y1| = t``, ``|x2| = |y2| = 2n - j``, ``|x3| = |y3| = j - t`` and
    ``y2 y3 x1 x2 in A``, ``x3 y1 in B``."""
    if p.case != 1:
        raise DomainError("case-1 builder called with case-2 parameters")
    n, j = p.n, p.j
    w, mid = 2 * n, 2 * n - j
    in_a, in_b = _vector(p.a, 4 * n - j), _vector(p.b, j)
    x, y = _codes(n)
    out = np.zeros(x.shape, dtype=bool)
    for t in range(j + 1):
        r = j - t
        x1, x2, x3 = x >> (w - t), (x >> r) & _mask(mid), x & _mask(r)
        y1, y2, y3 = y >> (w - t), (y >> r) & _mask(mid), y & _mask(r)
        a_word = (((y2 << r | y3) << t | x1) << mid) | x2
        b_word = x3 << t | y1
        out |= in_a[a_word] & in_b[b_word]
    return out


def build_t_case2_matrix(p: CaseParams) -> np.ndarray:
    """Pairs with a split where ``|x2| = |y2| = 4n - j``, ``|x1| + |x3| = j - 2n``,
    ``x2 in A`` and ``x3 y1 y2 y3 x1 in B``."""
    if p.case != 2:
        raise DomainError("case-2 builder called with case-1 parameters")
    n, j = p.n, p.j
    w, mid, outer = 2 * n, 4 * n - j, j - 2 * n
    in_a, in_b = _vector(p.a, mid), _vector(p.b, j)
    x, y = _codes(n)
    out = np.zeros(x.shape, dtype=bool)
    for t in range(outer + 1):
        r = outer - t
        x1, x2, x3 = x >> (w - t), (x >> r) & _mask(mid), x & _mask(r)
        b_word = ((x3 << w | y) << t) | x1
        out |= in_a[x2] & in_b[b_word]
    return out


def build_t_case1(p: CaseParams) -> PairSet:
    return PairSet.from_matrix(p.n, build_t_case1_matrix(p))


def build_t_case2(p: CaseParams) -> PairSet:
    return PairSet.from_matrix(p.n, build_t_case2_matrix(p))


def build_t_matrix(p: CaseParams) -> np.ndarray:
    return build_t_case1_matrix(p) if p.case == 1 else build_t_case2_matrix(p)


def case_bound_check(p: CaseParams) -> BoundCheck:
    d = disc(build_t_matrix(p), p.n)
    return BoundCheck(d, p.bound ** 2, d <= p.bound)


def leftmost_split(x: str, y: str, p: CaseParams) -> int | None:
    """Smallest ``|x1|`` witnessing membership of ``(x, y)`` in the case-1 T-set."""
    n, j = p.n, p.j
    mid = 2 * n - j
    for t in range(j + 1):
        x1, x2, x3 = x[:t], x[t:t + mid], x[t + mid:]
        y1, y2, y3 = y[:t], y[t:t + mid], y[t + mid:]
        if y2 + y3 + x1 + x2 in p.a and x3 + y1 in p.b:
            return t
    return None


@dataclass(frozen=True)
class MuCheck:
    size: int
    injective: bool
    sign_preserving: bool
    collision: tuple | None = None

    @property
    def ok(self) -> bool:
        return self.injective and self.sign_preserving


def mu_check(p: CaseParams) -> MuCheck:
    """``mu(x, y) = (x1 x2 y3, y1 y2 x3)`` under the leftmost split: injective and sign-preserving?"""
    if p.case != 1:
        raise DomainError("mu is defined for case-1 parameters")
    from .core import inner_product_parity
    mid = 2 * p.n - p.j
    seen: dict = {}
    sign_ok = True
    collision = None
    t_set = build_t_case1(p)
    for x, y in sorted(t_set.pairs):
        t = leftmost_split(x, y, p)
        x1, x2, x3 = x[:t], x[t:t + mid], x[t + mid:]
        y1, y2, y3 = y[:t], y[t:t + mid], y[t + mid:]
        image = (x1 + x2 + y3, y1 + y2 + x3)
        if inner_product_parity(x, y) != inner_product_parity(*image):
            sign_ok = False
        if image in seen and collision is None:
            collision = (seen[image], (x, y))
        seen.setdefault(image, (x, y))
    return MuCheck(len(t_set), collision is None, sign_ok, collision)


def random_subset(length: int, rng: np.random.Generator, density: float = 0.5) -> frozenset:
    keep = rng.random(1 << length) < density
    return frozenset(BitString.from_int(int(v), length) for v in np.flatnonzero(keep))


def full_set(length: int) -> frozenset:
    return frozenset(BitString.from_int(v, length) for v in range(1 << length))


# ------------------------------------------------------------- serialization

def words_to_hex(words: Iterable[str], length: int) -> dict:
    return {"length": length, "words": [format(int(w, 2) if w else 0, "x") for w in sorted(words)]}


def words_from_hex(obj: dict) -> frozenset:
    length = int(obj["length"])
    return frozenset(BitString.from_int(int(h, 16), length) for h in obj["words"])

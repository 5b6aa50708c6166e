"""Fooling statistics for the generator, exact and sampled.

``ell(n) = |Pr_x[G(x) in A] - Pr_y[y in A]|`` with ``x`` uniform over
``{0,1}^n`` and ``y`` uniform over ``{0,1}^(n+1)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .adversaries import as_language
from .errors import DomainError, IdentityViolation
from .generator import generate, image_table, is_doubled
from .iplang import IP, gap_stat


@dataclass(frozen=True)
class FoolReport:
    n: int
    p_gen: Fraction
    p_unif: Fraction
    mode: str = "exhaustive"
    samples: int | None = None
    seed: int | None = None
    delta: float | None = None
    radius: float | None = None  # Hoeffding radius of each probability estimate

    @property
    def ell(self) -> Fraction:
        return abs(self.p_gen - self.p_unif)


def fool_exact(adversary, n: int, budget: int | None = None) -> FoolReport:
    lang = as_language(adversary)
    in_a = lang.membership_vector(n + 1, budget)
    table = image_table(n, budget)
    hits = int(np.count_nonzero(in_a[table]))
    return FoolReport(n, Fraction(hits, 2 ** n), Fraction(int(np.count_nonzero(in_a)), 2 ** (n + 1)))


def hoeffding_radius(samples: int, delta: float = 0.05) -> float:
    return math.sqrt(math.log(2 / delta) / (2 * samples))


def _random_words(rng: np.random.Generator, length: int, count: int) -> list[str]:
    bits = rng.integers(0, 2, size=(count, length), dtype=np.uint8)
    return ["".join(map(str, row)) for row in bits.tolist()]


def fool_sampled(adversary, n: int, samples: int, seed: int, delta: float = 0.05) -> FoolReport:
    """Monte Carlo estimate; two independent child streams of ``seed`` feed the two sides."""
    if samples < 1:
        raise DomainError("samples must be >= 1")
    lang = as_language(adversary)
    seeds = np.random.SeedSequence(seed).spawn(2)
    gen_rng, unif_rng = (np.random.default_rng(s) for s in seeds)
    gen_hits = sum(lang.accepts(generate(w)) for w in _random_words(gen_rng, n, samples))
    unif_hits = sum(lang.accepts(y) for y in _random_words(unif_rng, n + 1, samples))
    return FoolReport(n, Fraction(gen_hits, samples), Fraction(unif_hits, samples), "sampled",
                      samples, seed, delta, hoeffding_radius(samples, delta))


@dataclass(frozen=True)
class EquivalenceReport:
    n: int
    ell: Fraction
    gap: Fraction
    u1: int
    u0: int
    doubled_in_a: int  # |A ∩ D|
    identity_rhs: Fraction = field(repr=False)
    bound: Fraction = field(repr=False)

    @property
    def identity_ok(self) -> bool:
        return self.ell == self.identity_rhs

    @property
    def bound_ok(self) -> bool:
        return abs(self.ell - self.gap) <= self.bound


def equivalence_report(adversary, n: int, budget: int | None = None, strict: bool = True) -> EquivalenceReport:
    """Tie ``ell(n)`` to the gap statistic of IP at length ``n + 1``.

    Every IP word has one preimage except the doubled set D, whose words have
    two; hence ``ell = |(U1 - U0) + 2|A ∩ D|| / 2^(n+1)`` and
    ``|ell - gap| <= |D| / 2^n = 2^(-2m)``.
    """
    if n % 4 != 3:
        raise DomainError(f"equivalence check needs n = 3 mod 4, got {n}")
    m = (n + 1) // 4
    lang = as_language(adversary)
    fr = fool_exact(lang, n, budget)
    gs = gap_stat(IP, lang, n + 1, budget)
    in_a = lang.membership_vector(n + 1, budget)
    doubled = _doubled_vector(n + 1)
    a_d = int(np.count_nonzero(in_a & doubled))
    rhs = Fraction(abs(gs.u1 - gs.u0 + 2 * a_d), 2 ** (n + 1))
    rep = EquivalenceReport(n, fr.ell, gs.value, gs.u1, gs.u0, a_d, rhs, Fraction(1, 2 ** (2 * m)))
    if strict and not (rep.identity_ok and rep.bound_ok):
        raise IdentityViolation(f"fooling/gap identity failed for {getattr(lang, 'name', lang)} at n={n}", rep)
    return rep


def _doubled_vector(length: int) -> np.ndarray:
    m = length // 4
    out = np.zeros(1 << length, dtype=bool)
    # x 1 0^(2m-1) 1 z with |x| = m, |z| = m - 1
    for x in range(1 << m):
        for z in range(1 << (m - 1)):
            v = (((x << 1 | 1) << (2 * m - 1)) << 1 | 1) << (m - 1) | z
            out[v] = True
    return out


def doubled_outputs(length: int) -> set[str]:
    """Reference enumeration of D used by tests."""
    from .core import words
    return {u for u in words(length) if is_doubled(u)}

"""Finite checks run by ``report all``: one function per claim, each returning a row.

Rows are plain dicts ``{"check", "ok", "detail"}`` so the CLI can print them
as JSON or CSV. Sizes scale with ``max_n``; randomness is seeded.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import adversaries as adv
from .core import words, words_upto
from .discrepancy import (CaseParams, case_bound_check, disc, full_set, mu_check, random_subset,
                          rectangle_bound_check)
from .generator import generate, range_stats, verify_range_equals_ip
from .iplang import IP, ip_dense, ip_dense_closed_form, ip_member
from .npda_swap import (FIXTURE_TRANSDUCERS, accepting_transitions, anbn_npda, build_swap_family,
                        dyck_npda, equal_count_npda, find_ideal_subinterval, range_acceptor, transduce,
                        verify_swapping)
from .prg_eval import equivalence_report, fool_exact


def _row(check, ok, **detail):
    return {"check": check, "ok": bool(ok), "detail": detail}


def standard_adversaries(seed: int = 2024) -> list:
    """The adversary panel: random 6-state DFAs, parity, Dyck, an advised language, Σ*, ∅ and IP."""
    rng = np.random.default_rng(seed)
    advice = {n: "".join(rng.choice(["0", "1"], size=n)) for n in range(0, 24)}
    equal_to_advice = adv.Dfa(("ok", "bad"), ("0|0", "0|1", "1|0", "1|1"),
                              {("ok", "0|0"): "ok", ("ok", "1|1"): "ok", ("ok", "0|1"): "bad",
                               ("ok", "1|0"): "bad", **{("bad", s): "bad" for s in ("0|0", "0|1", "1|0", "1|1")}},
                              "ok", frozenset({"ok"}), "equals-advice")
    panel = [adv.random_dfa(6, seed + k) for k in range(6)]
    panel += [adv.parity_dfa(), adv.dyck_grammar(), adv.all_strings_dfa(), adv.empty_dfa(),
              adv.first_bit_dfa(), IP,
              adv.AdvisedLanguage(equal_to_advice, advice, "advised-equals"),
              adv.AdvisedLanguage(adv.pair_grammar(adv.dyck_grammar()), advice, "advised-dyck")]
    return panel


def range_identity(max_n):
    ns = [n for n in (3, 7, 11, 15) if n <= max_n]
    res = {n: verify_range_equals_ip(n) for n in ns}
    return _row("range = IP", all(res.values()), lengths=ns)


def almost_one_one(max_n):
    rows = {}
    for m in range(1, 6):
        n = 4 * m - 1
        if n > max_n:
            break
        rows[n] = range_stats(n).tau == Fraction(1, 4 ** m)
    return _row("tau(4m-1) = 2^-2m", all(rows.values()), lengths=sorted(rows))


def density(max_n):
    top = min(max_n, 20)
    ok = all(ip_dense(n) == ip_dense_closed_form(n) for n in range(top + 1))
    return _row("IP density closed form", ok, max_length=top)


def stretch_soundness(max_n):
    top = min(max_n, 15)
    bad = [w for w in words_upto(top) if len(generate(w)) != len(w) + 1
           or (len(w) >= 3 and not ip_member(generate(w)))]
    return _row("stretch and soundness", not bad, max_length=top, failures=len(bad))


def equivalence(max_n):
    ns = [n for n in (3, 7, 11) if n <= max_n]
    failures = 0
    for lang in standard_adversaries():
        for n in ns:
            rep = equivalence_report(lang, n, strict=False)
            failures += not (rep.identity_ok and rep.bound_ok)
    return _row("fooling/gap identity", failures == 0, lengths=ns,
                adversaries=len(standard_adversaries()), failures=failures)


def discrepancy(max_n, seed=7):
    rng = np.random.default_rng(seed)
    failures = 0
    full_ok = all(disc(np.ones((1 << 2 * n,) * 2, dtype=bool), n) == Fraction(1, 4 ** n) for n in (1, 2, 3))
    for _ in range(100):
        failures += not rectangle_bound_check(random_subset(4, rng), random_subset(4, rng), 2).ok
    for n in (2, 3):
        for case, js in ((1, range(n, 2 * n + 1)), (2, range(2 * n + 1, 3 * n + 1))):
            for j in js:
                for _ in range(50):
                    p = CaseParams(n, j, random_subset(4 * n - j, rng), random_subset(j, rng), case)
                    failures += not case_bound_check(p).ok
    mu_ok = mu_check(CaseParams(2, 2, full_set(6), full_set(2), 1)).ok
    return _row("discrepancy bounds", full_ok and mu_ok and failures == 0, failures=failures)


def swapping(max_n):
    machines = [dyck_npda(), anbn_npda(), equal_count_npda()]
    failures = 0
    for m in machines:
        for n in range(4, 9):
            fam = build_swap_family(m, n, 2, 4)
            failures += not verify_swapping(fam, m, n).ok
            for w in words(n):
                for gamma in accepting_transitions(m, w).paths:
                    find_ideal_subinterval(gamma, 2, 4)
    return _row("swapping property", failures == 0, machines=[m.name for m in machines], failures=failures)


def range_acceptors(max_len=10):
    ok = True
    for name, make in sorted(FIXTURE_TRANSDUCERS.items()):
        t = make()
        acc = range_acceptor(t)
        image = {o for x in words_upto(max_len) for o in transduce(t, x) if len(o) <= max_len}
        ok &= image == {y for y in words_upto(max_len) if acc.accepts(y)}
    return _row("range acceptor", ok, max_length=max_len)


def fooling_trend(max_n):
    ns = [n for n in (3, 7, 11, 15) if n <= max_n]
    rows = {}
    ok = True
    for lang in (adv.parity_dfa(), adv.dyck_grammar()):
        ells = [fool_exact(lang, n).ell for n in ns]
        gaps = [equivalence_report(lang, n).gap for n in ns]
        ok &= all(a >= b for a, b in zip(ells, ells[1:]))
        ok &= all(e <= Fraction(1, 4 ** ((n + 1) // 4)) + g for e, g, n in zip(ells, gaps, ns))
        rows[lang.name] = [str(e) for e in ells]
    return _row("fooling trend", ok, lengths=ns, ell=rows)


def run_all(max_n: int) -> list[dict]:
    return [range_identity(max_n), almost_one_one(max_n), density(max_n), stretch_soundness(max_n),
            equivalence(max_n), discrepancy(max_n), swapping(max_n), range_acceptors(),
            fooling_trend(max_n)]

"""Adversary languages: DFAs, CNF grammars (decided by CYK) and advised wrappers.

Every adversary is a :class:`Language`: it answers ``accepts(word)`` and can
produce a membership vector over all of ``{0,1}^N`` (indexed by the integer
value of the word, leftmost bit most significant). Subclasses override the
vector method when they have something faster than a per-word loop.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Sequence

import numpy as np

from .core import bit_matrix, check_budget, parse_paired_symbol, track, words
from .errors import AlphabetError, ConfigurationError, ResourceError


class Language:
    name = "language"

    def accepts(self, word: Sequence[str]) -> bool:
        raise NotImplementedError

    def __contains__(self, word) -> bool:
        return self.accepts(word)

    def membership_vector(self, n: int, budget: int | None = None) -> np.ndarray:
        check_budget(n, budget)
        return np.fromiter((self.accepts(w) for w in words(n)), dtype=bool, count=1 << n)


class PredicateLanguage(Language):
    """Wraps a plain ``str -> bool`` callable."""

    def __init__(self, predicate: Callable[[str], bool], name: str = "predicate",
                 vector: Callable[[int], np.ndarray] | None = None):
        self.predicate = predicate
        self.name = name
        self._vector = vector

    def accepts(self, word):
        return bool(self.predicate("".join(word)))

    def membership_vector(self, n, budget=None):
        check_budget(n, budget)
        if self._vector is not None:
            return self._vector(n)
        return super().membership_vector(n, budget)


def as_language(obj) -> Language:
    if isinstance(obj, Language):
        return obj
    if callable(obj):
        return PredicateLanguage(obj, getattr(obj, "__name__", "predicate"))
    raise TypeError(f"cannot use {obj!r} as a language")


# --------------------------------------------------------------------- DFA

@dataclass(frozen=True, eq=False)
class Dfa(Language):
    states: tuple
    alphabet: tuple
    delta: Mapping  # (state, symbol) -> state, total
    start: object
    accepting: frozenset
    name: str = "dfa"

    def __post_init__(self):
        missing = [(q, a) for q in self.states for a in self.alphabet if (q, a) not in self.delta]
        if missing:
            raise ConfigurationError(f"transition table not total, missing {missing[:3]}")
        if self.start not in self.states:
            raise ConfigurationError(f"start state {self.start!r} unknown")
        object.__setattr__(self, "accepting", frozenset(self.accepting))

    def accepts(self, word):
        return dfa_member(self, word)

    def membership_vector(self, n, budget=None):
        if set(self.alphabet) != {"0", "1"}:
            return super().membership_vector(n, budget)
        index = {q: k for k, q in enumerate(self.states)}
        table = np.array([[index[self.delta[q, a]] for a in "01"] for q in self.states], dtype=np.int64)
        bits = bit_matrix(n, budget)
        cur = np.full(1 << n, index[self.start], dtype=np.int64)
        for col in range(n):
            cur = table[cur, bits[:, col]]
        acc = np.array([q in self.accepting for q in self.states], dtype=bool)
        return acc[cur]


def dfa_member(dfa: Dfa, word: Sequence[str]) -> bool:
    q = dfa.start
    for a in word:
        try:
            q = dfa.delta[q, a]
        except KeyError:
            raise AlphabetError(f"symbol {a!r} not in DFA alphabet {dfa.alphabet}") from None
    return q in dfa.accepting


def all_strings_dfa(alphabet=("0", "1")) -> Dfa:
    return Dfa(("q",), tuple(alphabet), {("q", a): "q" for a in alphabet}, "q", frozenset({"q"}), "all")


def empty_dfa(alphabet=("0", "1")) -> Dfa:
    return Dfa(("q",), tuple(alphabet), {("q", a): "q" for a in alphabet}, "q", frozenset(), "empty")


def parity_dfa() -> Dfa:
    """Accepts words with an odd number of 1s."""
    delta = {("even", "0"): "even", ("even", "1"): "odd", ("odd", "0"): "odd", ("odd", "1"): "even"}
    return Dfa(("even", "odd"), ("0", "1"), delta, "even", frozenset({"odd"}), "parity")


def first_bit_dfa() -> Dfa:
    """Accepts words whose first symbol is 1."""
    delta = {("s", "0"): "no", ("s", "1"): "yes"}
    for q in ("no", "yes"):
        delta[q, "0"] = delta[q, "1"] = q
    return Dfa(("s", "no", "yes"), ("0", "1"), delta, "s", frozenset({"yes"}), "first-bit")


def random_dfa(n_states: int, seed: int, alphabet=("0", "1")) -> Dfa:
    rng = random.Random(seed)
    states = tuple(range(n_states))
    delta = {(q, a): rng.randrange(n_states) for q in states for a in alphabet}
    accepting = frozenset(q for q in states if rng.random() < 0.5)
    return Dfa(states, tuple(alphabet), delta, 0, accepting, f"random-dfa-{n_states}-{seed}")


# --------------------------------------------------------------------- CNF

@dataclass(frozen=True, eq=False)
class CnfGrammar(Language):
    """Grammar with rules ``A -> B C`` and ``A -> t``; the empty word via a flag."""

    nonterminals: tuple
    terminals: tuple
    binary: tuple  # (A, B, C)
    unary: tuple  # (A, t)
    start: str
    accepts_empty: bool = False
    name: str = "cnf"
    max_length: int = 256
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        nts = set(self.nonterminals)
        for rule in self.binary:
            if len(rule) != 3 or not set(rule) <= nts:
                raise ConfigurationError(f"bad binary rule {rule!r}")
        for lhs, t in self.unary:
            if lhs not in nts or t not in self.terminals:
                raise ConfigurationError(f"bad terminal rule {(lhs, t)!r}")
        if self.start not in nts:
            raise ConfigurationError(f"start symbol {self.start!r} is not a nonterminal")
        bit = {a: 1 << k for k, a in enumerate(self.nonterminals)}
        object.__setattr__(self, "_bit", bit)
        object.__setattr__(self, "_pairs", tuple((bit[a], bit[b], bit[c]) for a, b, c in self.binary))
        lex: dict = {}
        for lhs, t in self.unary:
            lex[t] = lex.get(t, 0) | bit[lhs]
        object.__setattr__(self, "_lex", lex)

    def accepts(self, word):
        return cfg_member(self, word)

    def _derivers(self, s: tuple) -> int:
        """Bitmask of nonterminals deriving ``s``; memoized over substrings (CYK)."""
        got = self._cache.get(s)
        if got is not None:
            return got
        if len(s) == 1:
            if s[0] not in self.terminals:
                raise AlphabetError(f"symbol {s[0]!r} not a terminal of {self.name}")
            mask = self._lex.get(s[0], 0)
        else:
            mask = 0
            for k in range(1, len(s)):
                left = self._derivers(s[:k])
                if not left:
                    continue
                right = self._derivers(s[k:])
                if not right:
                    continue
                for a, b, c in self._pairs:
                    if left & b and right & c:
                        mask |= a
        self._cache[s] = mask
        return mask

    def clear_cache(self):
        self._cache.clear()


def cfg_member(grammar: CnfGrammar, word: Sequence[str]) -> bool:
    word = tuple(word)
    if not word:
        return grammar.accepts_empty
    if len(word) > grammar.max_length:
        raise ResourceError(f"CYK on length {len(word)} exceeds max_length {grammar.max_length}")
    return bool(grammar._derivers(word) & grammar._bit[grammar.start])


def cnf_from_rules(rules, start="S", accepts_empty=False, name="cnf", terminals=None) -> CnfGrammar:
    """Build a grammar from ``[lhs, rhs...]`` lists (one terminal or two nonterminals)."""
    lhs_set = []
    for r in rules:
        if r[0] not in lhs_set:
            lhs_set.append(r[0])
    binary, unary, terms = [], [], []
    for r in rules:
        if len(r) == 3:
            binary.append(tuple(r))
        elif len(r) == 2:
            unary.append(tuple(r))
            if r[1] not in terms:
                terms.append(r[1])
        else:
            raise ConfigurationError(f"rule {r!r} is not in Chomsky normal form")
    nts = list(lhs_set)
    for _, b, c in binary:
        for s in (b, c):
            if s not in nts:
                nts.append(s)
    if start not in nts:
        nts.append(start)
    return CnfGrammar(tuple(nts), tuple(terminals or terms), tuple(binary), tuple(unary),
                      start, accepts_empty, name)


def dyck_grammar(accepts_empty: bool = True) -> CnfGrammar:
    """Balanced words with 0 as the opening and 1 as the closing bracket."""
    rules = [["S", "S", "S"], ["S", "L", "R"], ["S", "L", "X"], ["X", "S", "R"],
             ["L", "0"], ["R", "1"]]
    return cnf_from_rules(rules, "S", accepts_empty, "dyck", terminals=("0", "1"))


# --------------------------------------------------------------- advice

@dataclass(frozen=True, eq=False)
class AdvisedLanguage(Language):
    """``w`` is a member iff ``track(w, advice[|w|])`` is in the base language.

    The base language reads paired symbols in their ``"s|g"`` form.
    """

    base: Language
    advice: Mapping[int, str]
    name: str = "advised"

    def advice_for(self, n: int) -> str:
        try:
            h = self.advice[n]
        except KeyError:
            raise ConfigurationError(f"no advice for length {n}") from None
        if len(h) != n:
            raise ConfigurationError(f"advice for length {n} has length {len(h)}")
        return h

    def accepts(self, word):
        return advised_member(self, word)


def advised_member(lang: AdvisedLanguage, word: Sequence[str]) -> bool:
    paired = track(tuple(word), tuple(lang.advice_for(len(word))))
    return lang.base.accepts(paired.symbols())


def project_left(grammar: CnfGrammar) -> CnfGrammar:
    """Replace each paired terminal ``a|g`` by its left component ``a``."""
    unary = tuple(dict.fromkeys((lhs, parse_paired_symbol(t)[0]) for lhs, t in grammar.unary))
    terms = tuple(dict.fromkeys(t for _, t in unary))
    return CnfGrammar(grammar.nonterminals, terms, grammar.binary, unary, grammar.start,
                      grammar.accepts_empty, grammar.name + "-projected")


def pair_grammar(grammar: CnfGrammar, advice_alphabet=("0", "1")) -> CnfGrammar:
    """Lift a binary grammar to the paired alphabet, ignoring the advice track."""
    unary = tuple((lhs, f"{t}|{g}") for lhs, t in grammar.unary for g in advice_alphabet)
    terms = tuple(f"{t}|{g}" for t in grammar.terminals for g in advice_alphabet)
    return CnfGrammar(grammar.nonterminals, terms, grammar.binary, unary, grammar.start,
                      grammar.accepts_empty, grammar.name + "-paired")


# --------------------------------------------------------------- file format

def language_from_dict(spec: dict) -> Language:
    """Build an adversary from its JSON description (see README for the schema)."""
    if not isinstance(spec, dict) or "type" not in spec:
        raise ConfigurationError("adversary description needs a 'type' field")
    kind = spec["type"]
    try:
        if kind == "dfa":
            alphabet = tuple(spec.get("alphabet", ("0", "1")))
            states = tuple(spec["states"])
            delta = {(q, a): nxt for q, row in spec["transitions"].items() for a, nxt in row.items()}
            return Dfa(states, alphabet, delta, spec["start"], frozenset(spec["accepting"]),
                       spec.get("name", "dfa"))
        if kind == "cnf":
            return cnf_from_rules(spec["rules"], spec.get("start", "S"), bool(spec.get("accepts_empty", False)),
                                  spec.get("name", "cnf"), spec.get("terminals"))
        if kind == "npda":
            from .npda_swap import npda_from_dict
            return npda_from_dict(spec)
        if kind == "advised":
            advice = {int(k): v for k, v in spec["advice"].items()}
            return AdvisedLanguage(language_from_dict(spec["base"]), advice, spec.get("name", "advised"))
        if kind == "builtin":
            return builtin_language(spec["name"])
    except (KeyError, TypeError, AttributeError) as exc:
        raise ConfigurationError(f"malformed {kind} description: {exc!r}") from exc
    raise ConfigurationError(f"unknown adversary type {kind!r}")


def builtin_language(name: str) -> Language:
    if name == "ip":
        from .iplang import IP
        return IP
    table = {
        "all": all_strings_dfa,
        "empty": empty_dfa,
        "parity": parity_dfa,
        "first-bit": first_bit_dfa,
        "dyck": dyck_grammar,
    }
    if name not in table:
        raise ConfigurationError(f"unknown builtin language {name!r}")
    return table[name]()


def load_language(path) -> Language:
    try:
        spec = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"cannot read adversary file {path}: {exc}") from exc
    return language_from_dict(spec)

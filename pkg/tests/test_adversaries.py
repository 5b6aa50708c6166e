import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cflprg import adversaries as adv
from cflprg.errors import AlphabetError, ConfigurationError, ResourceError

from oracles import all_words, cnf_language

DATA = __import__("pathlib").Path(__file__).resolve().parent.parent / "data" / "adversaries"

# extra grammars, besides Dyck, that the CYK decider is checked against
ANBN = adv.cnf_from_rules([["S", "A", "B"], ["S", "A", "T"], ["T", "S", "B"], ["A", "0"], ["B", "1"]],
                          name="anbn")
PAL = adv.cnf_from_rules([["S", "A", "P"], ["S", "B", "Q"], ["P", "S", "A"], ["Q", "S", "B"],
                          ["S", "A", "A"], ["S", "B", "B"], ["S", "0"], ["S", "1"], ["A", "0"], ["B", "1"]],
                         name="palindromes")


def test_dfa_examples():
    assert adv.dfa_member(adv.parity_dfa(), "1101") is True
    assert adv.dfa_member(adv.parity_dfa(), "") is False
    assert adv.dfa_member(adv.all_strings_dfa(), "0") is True
    with pytest.raises(AlphabetError):
        adv.dfa_member(adv.parity_dfa(), "2")


@pytest.mark.parametrize("seed", range(5))
def test_dfa_vector_matches_scalar(seed):
    d = adv.random_dfa(6, seed)
    for n in range(0, 9):
        assert list(d.membership_vector(n)) == [d.accepts(w) for w in all_words(n)]


def test_random_dfa_is_seeded():
    assert adv.random_dfa(6, 3).delta == adv.random_dfa(6, 3).delta


def test_cfg_examples():
    g = adv.dyck_grammar()
    assert adv.cfg_member(g, "0011")
    assert not adv.cfg_member(g, "10")
    assert adv.cfg_member(g, "") is True
    assert adv.cfg_member(adv.dyck_grammar(accepts_empty=False), "") is False


@pytest.mark.parametrize("grammar", [adv.dyck_grammar(), ANBN, PAL], ids=lambda g: g.name)
def test_cfg_matches_derivation_enumerator(grammar):
    lang = cnf_language(grammar.binary, grammar.unary, grammar.start, 8, grammar.accepts_empty)
    for n in range(0, 9):
        for w in all_words(n):
            assert adv.cfg_member(grammar, w) == (w in lang), w


def test_cfg_length_cap():
    g = adv.dyck_grammar()
    with pytest.raises(ResourceError):
        adv.cfg_member(g, "01" * 200)


def test_cnf_rejects_long_rules():
    with pytest.raises(ConfigurationError):
        adv.cnf_from_rules([["S", "A", "B", "C"]])


def test_advised_examples():
    lang = adv.language_from_dict(json.loads((DATA / "advised-equals.json").read_text()))
    eq = adv.AdvisedLanguage(lang.base, {3: "101"})
    assert adv.advised_member(eq, "101") is True
    assert adv.advised_member(eq, "100") is False
    with pytest.raises(ConfigurationError):
        adv.advised_member(eq, "10101")
    with pytest.raises(ConfigurationError):
        adv.AdvisedLanguage(lang.base, {2: "1"}).accepts("01")


def test_advice_ignoring_grammar_projects():
    paired = adv.pair_grammar(adv.dyck_grammar())
    projected = adv.project_left(paired)
    lang = adv.AdvisedLanguage(paired, {n: "0" * n for n in range(9)})
    for n in range(0, 9):
        for w in all_words(n):
            assert adv.advised_member(lang, w) == adv.cfg_member(projected, w) == adv.cfg_member(adv.dyck_grammar(), w)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.text("01", min_size=6, max_size=6), min_size=1, max_size=1))
def test_advice_does_not_matter_for_ignoring_grammar(h):
    lang = adv.AdvisedLanguage(adv.pair_grammar(adv.dyck_grammar()), {6: h[0]})
    assert [lang.accepts(w) for w in all_words(6)] == [adv.dyck_grammar().accepts(w) for w in all_words(6)]


def test_vectors_are_boolean_and_ordered():
    vec = adv.dyck_grammar().membership_vector(4)
    assert vec.dtype == bool and vec.shape == (16,)
    assert np.flatnonzero(vec).tolist() == [int("0011", 2), int("0101", 2)]


@pytest.mark.parametrize("path", sorted(DATA.glob("*.json")), ids=lambda p: p.stem)
def test_shipped_adversaries_load(path):
    lang = adv.load_language(path)
    assert lang.membership_vector(4).shape == (16,)


@pytest.mark.parametrize("text", ["{}", '{"type": "dfa"}', '{"type": "nope"}', "not json",
                                  '{"type": "builtin", "name": "zzz"}'])
def test_malformed_descriptions(tmp_path, text):
    f = tmp_path / "a.json"
    f.write_text(text)
    with pytest.raises(ConfigurationError):
        adv.load_language(f)


def test_predicate_wrapping():
    lang = adv.as_language(lambda w: w.endswith("1"))
    assert lang.accepts("01") and not lang.accepts("10")
    assert lang.membership_vector(2).tolist() == [False, True, False, True]

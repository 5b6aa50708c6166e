from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cflprg.adversaries import all_strings_dfa, empty_dfa, parity_dfa
from cflprg.iplang import (IP, gap_stat, ip_dense, ip_dense_closed_form, ip_member, ip_membership_vector,
                           ip_parse)

from oracles import all_words, ip_member_existential


@pytest.mark.parametrize("u, parts", [
    ("1101", ("", "1", "10", "1")),
    ("11011", ("1", "1", "01", "1")),
    ("110", ("110", "", "", "")),
])
def test_parse_examples(u, parts):
    p = ip_parse(u)
    assert (p.a, p.x, p.y, p.z) == parts
    assert p.word() == u


@pytest.mark.parametrize("u, expected", [("1011", True), ("0000", False), ("11011", True)])
def test_member_examples(u, expected):
    assert ip_member(u) is expected


def test_member_matches_existential_definition():
    for n in range(0, 13):
        for u in all_words(n):
            assert ip_member(u) == ip_member_existential(u), u


@given(st.text("01", max_size=64))
def test_member_matches_existential_property(u):
    assert ip_member(u) == ip_member_existential(u)


def test_membership_vector_matches_scalar():
    for n in range(0, 11):
        vec = ip_membership_vector(n)
        assert [bool(b) for b in vec] == [ip_member(u) for u in all_words(n)]


@pytest.mark.parametrize("n, count", [(4, 6), (3, 0), (8, 120)])
def test_dense_examples(n, count):
    assert ip_dense(n) == count
    assert ip_dense_closed_form(n) == count


def test_dense_closed_form_small():
    for n in range(0, 14):
        assert ip_dense(n) == sum(ip_member_existential(u) for u in all_words(n))


def test_gap_examples():
    assert gap_stat(IP, all_strings_dfa(), 4).value == Fraction(1, 4)
    assert gap_stat(IP, empty_dfa(), 4).value == 0
    assert gap_stat(IP, all_strings_dfa(), 8).value == Fraction(1, 16)


def test_gap_is_bounded_and_exact():
    g = gap_stat(IP, parity_dfa(), 8)
    assert 0 <= g.value <= 1
    assert g.value.denominator <= 256
    assert g.u1 + g.u0 == sum(parity_dfa().accepts(u) for u in all_words(8))


def test_language_object():
    assert "1011" in IP and "0000" not in IP

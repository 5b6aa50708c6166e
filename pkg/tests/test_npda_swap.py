import pytest
from hypothesis import given, settings, strategies as st

from cflprg import adversaries as adv
from cflprg.core import words, words_upto
from cflprg.errors import CapExceeded, DomainError, LemmaViolation
from cflprg.npda_swap import (EPS, FIXTURE_MACHINES, FIXTURE_TRANSDUCERS, Caps, Npda, StackTransition,
                              SwapFamily, Transition, accepting_transitions, accepts, build_swap_family,
                              decompose, find_ideal_subinterval, is_normalized, minwid_maxwid, npda_from_dict,
                              npda_from_gnf, npda_to_dict, range_acceptor, transduce, verify_swapping)

from oracles import all_words

REFERENCE = {
    "dyck": adv.dyck_grammar(accepts_empty=False),
    "anbn": lambda w: len(w) > 0 and w == "0" * (len(w) // 2) + "1" * (len(w) // 2),
    "equal-count": lambda w: len(w) > 0 and w.count("0") == w.count("1"),
    "palindrome": lambda w: len(w) > 0 and len(w) % 2 == 0 and w == w[::-1],
}


def reference(name):
    return adv.as_language(REFERENCE[name])


def synthetic(heights):
    """A stack transition with the given boundary heights, starting at boundary 0."""
    stacks = tuple(("a",) * (h - 1) + ("z",) for h in heights)
    return StackTransition(len(heights) - 1, stacks, (), 0)


@pytest.mark.parametrize("name", sorted(FIXTURE_MACHINES))
def test_fixtures_are_normalized_and_correct(name):
    m = FIXTURE_MACHINES[name]()
    assert is_normalized(m)
    ref = reference(name)
    for w in words_upto(10):
        assert accepts(m, w) == ref.accepts(w), w


def test_accepts_examples():
    m = FIXTURE_MACHINES["dyck"]()
    assert accepts(m, "0011")
    assert not accepts(m, "10")
    assert not accepts(m, "")


def test_cap_exhaustion_is_not_a_rejection():
    loop = Npda(("q0", "q1", "qf"), ("0", "1"), ("z", "A"),
                (Transition("q0", "¢", "z", ("A", "z"), "q1"), Transition("q1", EPS, "A", ("A", "A"), "q1")),
                "q0", frozenset({"qf"}))
    with pytest.raises(CapExceeded):
        accepts(loop, "01")


def test_accepting_paths_dyck_01():
    paths = accepting_transitions(FIXTURE_MACHINES["dyck"](), "01").paths
    assert len(paths) == 1
    g = paths[0]
    # boundaries -1 (before the left endmarker) through n + 1 (after the right one)
    assert g.heights == (1, 2, 2, 1, 1)
    assert g.stack(0) == ("S", "z")


def test_accepting_paths_rejected_and_ambiguous():
    assert accepting_transitions(FIXTURE_MACHINES["dyck"](), "10").paths == ()
    paths = accepting_transitions(FIXTURE_MACHINES["equal-count"](), "0101").paths
    assert len(paths) >= 2
    assert all(g.stack(0) == ("S", "z") for g in paths)


@pytest.mark.parametrize("name", sorted(FIXTURE_MACHINES))
def test_paths_exist_iff_accepted(name):
    m = FIXTURE_MACHINES[name]()
    for w in words_upto(8):
        assert bool(accepting_transitions(m, w).paths) == accepts(m, w)


def test_minwid_maxwid_examples():
    g = synthetic((1, 2, 3, 3, 2, 1))
    assert minwid_maxwid(g, (0, 5), 2) == (3, 3)
    assert minwid_maxwid(g, (0, 5), 9) is None
    assert minwid_maxwid(synthetic((2, 3, 2)), (0, 2), 2) == (2, 2)
    with pytest.raises(DomainError):
        minwid_maxwid(g, (0, 9), 2)


def test_find_ideal_examples():
    flat = synthetic((1,) * 9)
    r = find_ideal_subinterval(flat, 2, 4)
    assert 2 <= r.width <= 4 and r.level == 1
    with pytest.raises(DomainError):
        find_ideal_subinterval(flat, 3, 4)
    with pytest.raises(LemmaViolation):
        find_ideal_subinterval(synthetic(tuple(range(1, 10))), 2, 4)


@pytest.mark.parametrize("name", sorted(FIXTURE_MACHINES))
def test_find_ideal_on_every_accepting_path(name):
    m = FIXTURE_MACHINES[name]()
    for w in words(8):
        for g in accepting_transitions(m, w).paths:
            r = find_ideal_subinterval(g, 2, 4)
            assert g.height(r.start) == g.height(r.end) == r.level
            assert all(g.height(c) >= r.level for c in range(r.start, r.end + 1))
            assert r.minwid <= r.width <= r.maxwid


def replay(m, word, d):
    """Re-run the moves of the chosen path and check the decomposition from scratch."""
    g = accepting_transitions(m, word).paths[d.path_id]
    stack = (m.bottom,)
    snapshots = []  # (cells consumed after the move, stack before, stack after)
    for pos, t, _h in g.moves:
        consumed = pos + (0 if t.read == EPS else 1)
        assert stack[0] == t.pop
        new = t.push + stack[1:]
        snapshots.append((consumed, stack, new))
        stack = new

    def content(boundary):
        out = (m.bottom,)
        for consumed, _before, after in snapshots:
            if consumed <= boundary + 1:
                out = after
        return out

    i, j = d.i, d.i + d.j
    assert content(i) == (d.u, *d.rooted) and content(j) == (d.v, *d.rooted)
    for consumed, before, _after in snapshots:
        if i + 1 < consumed <= j + 1:
            assert len(before) > len(d.rooted) and before[len(before) - len(d.rooted):] == d.rooted
    assert d.x + d.y + d.z == word and len(d.x) == d.i and len(d.y) == d.j


def test_decompose_replay():
    m = FIXTURE_MACHINES["dyck"]()
    d = decompose(m, "00110011", 2, 4)
    replay(m, "00110011", d)
    with pytest.raises(DomainError):
        decompose(m, "1100", 2, 4)


def test_decompose_flat_segment():
    m = FIXTURE_MACHINES["dyck"]()
    d = decompose(m, "0101", 2, 4)
    assert d.u == d.v
    assert d.rooted == ("z",)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(sorted(FIXTURE_MACHINES)), st.integers(4, 10), st.data())
def test_decompose_replay_property(name, n, data):
    m = FIXTURE_MACHINES[name]()
    accepted = [w for w in all_words(n) if accepts(m, w)]
    if not accepted:
        return
    w = data.draw(st.sampled_from(accepted))
    replay(m, w, decompose(m, w, 2, 4))


@pytest.mark.parametrize("name", sorted(FIXTURE_MACHINES))
@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_swap_families(name, n):
    m = FIXTURE_MACHINES[name]()
    fam = build_swap_family(m, n, 2, 4)
    rep = verify_swapping(fam, m, n)
    assert rep.ok, rep.counterexamples
    assert not fam.truncated
    if any(accepts(m, w) for w in words(n)):
        assert fam.indices()
    else:
        assert all(not fam.A[e] and not fam.B[e] for e in fam.indices())


def test_corrupted_family_is_caught():
    m = FIXTURE_MACHINES["dyck"]()
    fam = build_swap_family(m, 6, 2, 4)
    e = next(e for e in fam.indices() if fam.B[e])
    bad = SwapFamily(fam.n, fam.j0, fam.k, dict(fam.A), dict(fam.B))
    bad.B[e] = fam.B[e] | {"1" * e[1]}
    rep = verify_swapping(bad, m, 6)
    assert not rep.swap_ok and rep.counterexamples
    empty = verify_swapping(SwapFamily(6, 2, 4), m, 6)
    assert not empty.coverage_ok


def test_empty_language_slice():
    m = FIXTURE_MACHINES["dyck"]()
    fam = build_swap_family(m, 5, 2, 4)
    assert verify_swapping(fam, m, 5).ok


def test_gnf_builder_rejects_long_rules():
    with pytest.raises(Exception):
        npda_from_gnf([["S", "0", "A", "B", "C"]])


@pytest.mark.parametrize("name", sorted(FIXTURE_TRANSDUCERS))
def test_range_acceptor_matches_enumeration(name):
    t = FIXTURE_TRANSDUCERS[name]()
    acc = range_acceptor(t)
    image = {o for x in words_upto(8) for o in transduce(t, x) if len(o) <= 8}
    assert image == {y for y in words_upto(8) if acc.accepts(y)}


def test_append_zero_acceptor():
    acc = range_acceptor(FIXTURE_TRANSDUCERS["append-zero"]())
    assert acc.accepts("10") and not acc.accepts("1")
    assert transduce(FIXTURE_TRANSDUCERS["append-zero"](), "011") == {"0110"}


@pytest.mark.parametrize("name", sorted(FIXTURE_MACHINES))
def test_npda_json_roundtrip(name):
    m = FIXTURE_MACHINES[name]()
    back = npda_from_dict(npda_to_dict(m))
    assert npda_to_dict(back) == npda_to_dict(m)
    assert [back.accepts(w) for w in words_upto(6)] == [m.accepts(w) for w in words_upto(6)]


def test_caps_scale_with_length():
    assert Caps.default(4, 10) == Caps(60, 60)

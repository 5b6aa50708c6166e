"""Pushdown automata with endmarkers, stack transitions and the swapping decomposition.

Input tapes read ``¢ w $``: the left endmarker sits in cell 0, ``w`` in cells
1..n and ``$`` in cell n+1. Stacks are tuples with the top first. The stack
content at intercell boundary ``b`` is the content after the move that reads
cell ``b`` and any lambda-moves that follow it, i.e. just before cell ``b+1``
is read; boundary -1 is the initial stack.

Normalized machines (three states, ``¢`` pushes ``S z``, ``$`` needs ``z`` on
top, reading moves push at most two symbols) are what the swapping analysis
works with. They are conveniently built from a Greibach-form grammar whose
rules have at most two nonterminals on the right, see :func:`npda_from_gnf`.
"""
from __future__ import annotations

import os
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .adversaries import Language
from .core import words
from .errors import CapExceeded, ConfigurationError, DomainError, LemmaViolation

LEFT = "¢"
RIGHT = "$"
EPS = "eps"

CAP_FACTOR = int(os.environ.get("CFLPRG_CAP_FACTOR", "64"))
PATH_CAP = 10 ** 4


@dataclass(frozen=True)
class Transition:
    state: str
    read: str  # input symbol, LEFT, RIGHT or EPS
    pop: str
    push: tuple  # top first
    next: str
    emit: str = ""


@dataclass(frozen=True)
class Caps:
    step_cap: int
    stack_cap: int

    @classmethod
    def default(cls, n: int, factor: int | None = None) -> "Caps":
        c = CAP_FACTOR if factor is None else factor
        return cls(c * (n + 2), c * (n + 2))


@dataclass(frozen=True, eq=False)
class Npda(Language):
    states: tuple
    input_alphabet: tuple
    stack_alphabet: tuple
    transitions: tuple
    start: str
    final: frozenset
    bottom: str = "z"
    start_symbol: str = "S"
    name: str = "npda"

    def __post_init__(self):
        object.__setattr__(self, "final", frozenset(self.final))
        index = defaultdict(list)
        for t in self.transitions:
            if t.state not in self.states or t.next not in self.states:
                raise ConfigurationError(f"transition {t} uses an unknown state")
            if t.read not in (EPS, LEFT, RIGHT) and t.read not in self.input_alphabet:
                raise ConfigurationError(f"transition {t} reads unknown symbol {t.read!r}")
            index[t.state, t.read, t.pop].append(t)
        object.__setattr__(self, "_index", dict(index))

    def moves(self, state, read, top):
        return self._index.get((state, read, top), ())

    def accepts(self, word):
        return accepts(self, word)


def _tape(word) -> tuple:
    return (LEFT, *tuple(word), RIGHT)


def accepts(m: Npda, word: Sequence[str], caps: Caps | None = None) -> bool:
    """Breadth-first search over configurations ``(state, position, stack)``.

    Raises :class:`CapExceeded` when no accepting configuration was found but
    some configuration was cut off by a cap.
    """
    tape = _tape(word)
    end = len(tape)
    caps = caps or Caps.default(len(tape) - 2)
    start = (m.start, 0, (m.bottom,))
    seen = {start}
    frontier = deque([(start, 0)])
    capped = False
    while frontier:
        (q, pos, stack), steps = frontier.popleft()
        if q in m.final and pos == end:
            return True
        if not stack:
            continue
        succ = []
        if pos < end:
            succ += [(t, pos + 1) for t in m.moves(q, tape[pos], stack[0])]
        succ += [(t, pos) for t in m.moves(q, EPS, stack[0])]
        if succ and steps >= caps.step_cap:
            capped = True
            continue
        for t, npos in succ:
            new_stack = t.push + stack[1:]
            if len(new_stack) > caps.stack_cap:
                capped = True
                continue
            cfg = (t.next, npos, new_stack)
            if cfg not in seen:
                seen.add(cfg)
                frontier.append((cfg, steps + 1))
    if capped:
        raise CapExceeded(f"{m.name}: caps {caps} reached on {''.join(word)!r} without acceptance")
    return False


@dataclass(frozen=True)
class StackTransition:
    """Stack contents ``s_-1 .. s_(n+1)`` along one accepting path."""

    n: int
    stacks: tuple
    moves: tuple = field(default=(), repr=False)  # (position, Transition, height before)
    first: int = -1

    def stack(self, b: int) -> tuple:
        return self.stacks[b - self.first]

    def height(self, b: int) -> int:
        return len(self.stack(b))

    @property
    def last(self) -> int:
        return self.first + len(self.stacks) - 1

    @property
    def heights(self) -> tuple:
        return tuple(len(s) for s in self.stacks)

    def move_heights(self, lo: int, hi: int) -> list[int]:
        """Stack heights before every move made strictly after boundary ``lo``
        is fixed and up to boundary ``hi``."""
        out = []
        for pos, _t, height in self.moves:
            # a move reading cell c (pos == c) or a lambda-move at pos == c + 1
            # belongs to the segment that ends at boundary c
            if lo + 1 <= pos - (0 if _t.read != EPS else 1) <= hi:
                out.append(height)
        return out


@dataclass(frozen=True)
class PathSet:
    paths: tuple
    truncated: bool = False


def accepting_transitions(m: Npda, word: Sequence[str], caps: Caps | None = None,
                          path_cap: int = PATH_CAP) -> PathSet:
    """All accepting paths on ``word`` (at most ``path_cap``), as stack transitions."""
    tape = _tape(word)
    end = len(tape)
    n = end - 2
    caps = caps or Caps.default(n)
    found: list[StackTransition] = []
    truncated = False

    def dfs(q, pos, stack, bounds, moves, steps):
        nonlocal truncated
        if len(found) >= path_cap:
            truncated = True
            return
        if q in m.final and pos == end:
            found.append(StackTransition(n, tuple(bounds), tuple(moves)))
        if not stack or steps >= caps.step_cap:
            if stack and (pos < end and m.moves(q, tape[pos], stack[0]) or m.moves(q, EPS, stack[0])):
                truncated = True
            return
        if pos < end:
            for t in m.moves(q, tape[pos], stack[0]):
                new = t.push + stack[1:]
                if len(new) > caps.stack_cap:
                    truncated = True
                    continue
                moves.append((pos, t, len(stack)))
                bounds.append(new)
                dfs(t.next, pos + 1, new, bounds, moves, steps + 1)
                bounds.pop()
                moves.pop()
        for t in m.moves(q, EPS, stack[0]):
            new = t.push + stack[1:]
            if len(new) > caps.stack_cap:
                truncated = True
                continue
            moves.append((pos, t, len(stack)))
            saved = bounds[-1]
            bounds[-1] = new
            dfs(t.next, pos, new, bounds, moves, steps + 1)
            bounds[-1] = saved
            moves.pop()

    dfs(m.start, 0, (m.bottom,), [(m.bottom,)], [], 0)
    return PathSet(tuple(found), truncated)


# ------------------------------------------------------------ normal form

def normalized_violations(m: Npda) -> list[str]:
    """Reasons ``m`` is not in the three-state normal form (empty when it is)."""
    out = []
    if len(m.states) != 3 or len(m.final) != 1:
        return ["needs exactly three states and one final state"]
    q0, qf = m.start, next(iter(m.final))
    rest = [q for q in m.states if q not in (q0, qf)]
    if len(rest) != 1:
        return ["start and final states must differ"]
    q1, z, s = rest[0], m.bottom, m.start_symbol
    left = [t for t in m.transitions if t.read == LEFT]
    if [(t.state, t.pop, t.push, t.next) for t in left] != [(q0, z, (s, z), q1)]:
        out.append("the only ¢-move must be (q0, ¢, z) -> (q1, S z)")
    right = [t for t in m.transitions if t.read == RIGHT]
    if [(t.state, t.pop, t.push, t.next) for t in right] != [(q1, z, (z,), qf)]:
        out.append("the only $-move must be (q1, $, z) -> (qf, z)")
    for t in m.transitions:
        if t.read in m.input_alphabet and t.state == q1:
            if t.pop == z:
                out.append(f"reading move on bottom symbol: {t}")
            if t.next == q1 and len(t.push) > 2:
                out.append(f"push longer than 2: {t}")
    return out


def is_normalized(m: Npda) -> bool:
    return not normalized_violations(m)


def npda_from_gnf(rules: Iterable[Sequence[str]], name: str = "gnf",
                  alphabet=("0", "1")) -> Npda:
    """Normalized machine for a grammar with rules ``A -> a B1 .. Bk`` (k <= 2).

    The start nonterminal is ``S``; the stack holds the pending nonterminals.
    """
    q0, q1, qf = "q0", "q1", "qf"
    trans = [Transition(q0, LEFT, "z", ("S", "z"), q1), Transition(q1, RIGHT, "z", ("z",), qf)]
    gamma = ["z", "S"]
    for lhs, a, *rhs in rules:
        if len(rhs) > 2:
            raise ConfigurationError(f"rule {lhs} -> {a} {' '.join(rhs)} has more than two nonterminals")
        trans.append(Transition(q1, a, lhs, tuple(rhs), q1))
        for sym in (lhs, *rhs):
            if sym not in gamma:
                gamma.append(sym)
    return Npda((q0, q1, qf), tuple(alphabet), tuple(gamma), tuple(trans), q0, frozenset({qf}), name=name)


def dyck_npda() -> Npda:
    """Nonempty balanced words (0 opens, 1 closes)."""
    # S = nonempty Dyck, C = (Dyck*) 1
    return npda_from_gnf([("S", "0", "C"), ("S", "0", "C", "S"), ("C", "1"), ("C", "0", "C", "C")], "dyck-npda")


def anbn_npda() -> Npda:
    """``0^k 1^k`` for ``k >= 1``."""
    return npda_from_gnf([("S", "0", "B"), ("S", "0", "S", "B"), ("B", "1")], "anbn-npda")


def equal_count_npda() -> Npda:
    """Nonempty words with as many 0s as 1s; the grammar is ambiguous."""
    rules = [("S", "0", "B"), ("S", "1", "A"), ("S", "0", "B", "S"), ("S", "1", "A", "S"),
             ("A", "0"), ("A", "0", "S"), ("A", "1", "A", "A"),
             ("B", "1"), ("B", "1", "S"), ("B", "0", "B", "B")]
    return npda_from_gnf(rules, "equal-count-npda")


def palindrome_npda() -> Npda:
    """Even-length palindromes ``w w^R`` with ``|w| >= 1``."""
    rules = [("S", "0", "S", "Z"), ("S", "1", "S", "O"), ("S", "0", "Z"), ("S", "1", "O"),
             ("Z", "0"), ("O", "1")]
    return npda_from_gnf(rules, "palindrome-npda")


FIXTURE_MACHINES = {
    "dyck": dyck_npda,
    "anbn": anbn_npda,
    "equal-count": equal_count_npda,
    "palindrome": palindrome_npda,
}


# ------------------------------------------------------------ widths

def _qualifies(gamma: StackTransition, a: int, b: int, level: int) -> bool:
    if gamma.height(a) != level or gamma.height(b) != level:
        return False
    return all(gamma.height(c) >= level for c in range(a, b + 1))


def minwid_maxwid(gamma: StackTransition, interval: tuple[int, int], level: int):
    """``(minwid, maxwid)`` of height-``level`` floored subintervals of ``interval``, or None."""
    lo, hi = interval
    if lo < gamma.first or hi > gamma.last or lo > hi:
        raise DomainError(f"interval {interval} outside [{gamma.first}, {gamma.last}]")
    widths = [b - a for a in range(lo, hi + 1) for b in range(a + 1, hi + 1)
              if _qualifies(gamma, a, b, level)]
    if not widths:
        return None
    return min(widths), max(widths)


@dataclass(frozen=True)
class IdealSubinterval:
    start: int
    end: int
    level: int
    minwid: int
    maxwid: int

    @property
    def width(self) -> int:
        return self.end - self.start


def _check_jk(j0: int, k: int, n: int) -> None:
    if not (j0 >= 2 and 2 * j0 <= k <= n):
        raise DomainError(f"need j0 >= 2 and 2*j0 <= k <= n, got j0={j0}, k={k}, n={n}")


def ideal_subintervals(gamma: StackTransition, j0: int, k: int):
    """Every ``(a, b, level)`` with ``0 <= a < b <= n``, ``j0 <= b - a <= k``,
    equal heights at ``a`` and ``b`` and no lower height in between."""
    n = gamma.n
    for a in range(max(0, gamma.first), n + 1):
        level = gamma.height(a)
        floor = level
        for b in range(a + 1, min(a + k, n, gamma.last) + 1):
            floor = min(floor, gamma.height(b))
            if floor < level:
                break
            if b - a >= j0 and gamma.height(b) == level:
                yield a, b, level


def find_ideal_subinterval(gamma: StackTransition, j0: int, k: int,
                           interval: tuple[int, int] | None = None) -> IdealSubinterval:
    """Exhaustive search for the subinterval promised by the height-interval lemma."""
    _check_jk(j0, k, gamma.n)
    interval = interval or (gamma.first, gamma.last)
    for a, b, level in ideal_subintervals(gamma, j0, k):
        if interval[0] <= a and b <= interval[1]:
            lo, hi = minwid_maxwid(gamma, interval, level)
            return IdealSubinterval(a, b, level, lo, hi)
    raise LemmaViolation(f"no ideal subinterval with width in [{j0}, {k}]", gamma)


# ------------------------------------------------------------ decomposition

def rooted_untouched(gamma: StackTransition, a: int, b: int, level: int) -> bool:
    """No move between boundaries ``a`` and ``b`` pops below height ``level``."""
    return all(h >= level for h in gamma.move_heights(a, b))


@dataclass(frozen=True)
class Decomposition:
    i: int
    j: int
    u: str
    v: str
    rooted: tuple
    path_id: int
    x: str
    y: str
    z: str


def decompose(m: Npda, word: str, j0: int, k: int, caps: Caps | None = None) -> Decomposition:
    """Split ``word = x y z`` so that along one accepting path the stack reads
    ``u s`` after ``x`` and ``v s`` after ``y`` with ``s`` untouched while reading ``y``."""
    _check_jk(j0, k, len(word))
    paths = accepting_transitions(m, word, caps).paths
    if not paths:
        raise DomainError(f"{m.name} does not accept {word!r}; nothing to decompose")
    for pid, gamma in enumerate(paths):
        for a, b, level in ideal_subintervals(gamma, j0, k):
            if not rooted_untouched(gamma, a, b, level):
                continue
            sa, sb = gamma.stack(a), gamma.stack(b)
            return Decomposition(a, b - a, sa[0], sb[0], sa[1:], pid, word[:a], word[a:b], word[b:])
    raise LemmaViolation(f"no decomposition of {word!r} with j in [{j0}, {k}]")


# ------------------------------------------------------------ swap families

@dataclass
class SwapFamily:
    """``A[e]`` holds pairs ``(z, x)``, ``B[e]`` words ``y``, for ``e = (i, j, u, v)``."""

    n: int
    j0: int
    k: int
    A: dict = field(default_factory=dict)
    B: dict = field(default_factory=dict)
    truncated: bool = False

    def indices(self):
        return sorted(set(self.A) | set(self.B))


def build_swap_family(m: Npda, n: int, j0: int, k: int, caps: Caps | None = None,
                      path_cap: int = PATH_CAP) -> SwapFamily:
    _check_jk(j0, k, n)
    t1 = defaultdict(set)  # (i, u) -> {(x, s)}
    t2 = defaultdict(set)  # (i, j, v) -> {(z, s)}
    fam = SwapFamily(n, j0, k)
    b_sets = defaultdict(set)
    for w in words(n):
        found = accepting_transitions(m, w, caps, path_cap)
        fam.truncated |= found.truncated
        for gamma in found.paths:
            for a, b, level in ideal_subintervals(gamma, j0, k):
                if not rooted_untouched(gamma, a, b, level):
                    continue
                sa, sb = gamma.stack(a), gamma.stack(b)
                u, v, s = sa[0], sb[0], sa[1:]
                e = (a, b - a, u, v)
                t1[a, u].add((w[:a], s))
                t2[a, b - a, v].add((w[b:], s))
                b_sets[e].add(w[a:b])
    for e, ys in b_sets.items():
        i, j, u, v = e
        by_root = defaultdict(set)
        for z, s in t2[i, j, v]:
            by_root[s].add(z)
        pairs = {(z, x) for x, s in t1[i, u] for z in by_root.get(s, ())}
        fam.A[e] = frozenset(pairs)
        fam.B[e] = frozenset(ys)
    return fam


@dataclass
class SwapReport:
    shape_ok: bool = True
    coverage_ok: bool = True
    swap_ok: bool = True
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.shape_ok and self.coverage_ok and self.swap_ok


def verify_swapping(fam: SwapFamily, m: Npda, n: int, max_counterexamples: int = 20) -> SwapReport:
    rep = SwapReport()
    accepted = {w for w in words(n) if m.accepts(w)}

    def note(kind, *detail):
        if len(rep.counterexamples) < max_counterexamples:
            rep.counterexamples.append((kind, *detail))

    for e in fam.indices():
        i, j, _u, _v = e
        if not (0 <= i <= n and fam.j0 <= j <= fam.k and i + j <= n):
            rep.shape_ok = False
            note("index", e)
        for z, x in fam.A.get(e, ()):
            if len(z) != n - i - j or len(x) != i:
                rep.shape_ok = False
                note("shape-A", e, (z, x))
        for y in fam.B.get(e, ()):
            if len(y) != j:
                rep.shape_ok = False
                note("shape-B", e, y)

    covered = set()
    for e in fam.indices():
        for z, x in fam.A.get(e, ()):
            for y in fam.B.get(e, ()):
                w = x + y + z
                covered.add(w)
                if w not in accepted:
                    rep.swap_ok = False
                    note("swap", e, (z, x), y)
    if covered != accepted:
        rep.coverage_ok = False
        for w in sorted(accepted - covered)[:5]:
            note("uncovered", w)
        for w in sorted(covered - accepted)[:5]:
            note("spurious", w)
    return rep


# ------------------------------------------------------------ transducers

def transduce(t: Npda, word: Sequence[str], caps: Caps | None = None) -> set[str]:
    """Outputs written along accepting paths of a transducer (``emit`` on each move)."""
    tape = _tape(word)
    end = len(tape)
    caps = caps or Caps.default(end - 2)
    out = set()
    start = (t.start, 0, (t.bottom,), "")
    seen = {start}
    stack_ = [(start, 0)]
    capped = False
    while stack_:
        (q, pos, st, written), steps = stack_.pop()
        if q in t.final and pos == end:
            out.add(written)
        if not st:
            continue
        succ = ([(tr, pos + 1) for tr in t.moves(q, tape[pos], st[0])] if pos < end else [])
        succ += [(tr, pos) for tr in t.moves(q, EPS, st[0])]
        if succ and steps >= caps.step_cap:
            capped = True
            continue
        for tr, npos in succ:
            new = tr.push + st[1:]
            if len(new) > caps.stack_cap:
                capped = True
                continue
            cfg = (tr.next, npos, new, written + tr.emit)
            if cfg not in seen:
                seen.add(cfg)
                stack_.append((cfg, steps + 1))
    if capped and not out:
        raise CapExceeded(f"{t.name}: caps reached on {''.join(word)!r}")
    return out


def range_acceptor(t: Npda) -> Npda:
    """Machine accepting exactly the outputs of transducer ``t``.

    Each input-reading move of ``t`` becomes a lambda-move (the guessed input
    bit), followed by moves that read the emitted bits off the real input and
    leave the stack alone. ``t``'s ``$``-move is replayed after its output has
    been matched.
    """
    gamma = list(t.stack_alphabet)
    for tr in t.transitions:
        for sym in (tr.pop, *tr.push):
            if sym not in gamma:
                gamma.append(sym)
    states = list(t.states)
    trans = []

    def fresh(label):
        states.append(label)
        return label

    def match_chain(idx, emit, target, then_right=False):
        """States reading ``emit`` (and then ``$`` if asked) and landing in ``target``."""
        if not emit and not then_right:
            return target
        first = fresh(f"#{idx}.0")
        cur = first
        for k, bit in enumerate(emit):
            nxt = target if (k == len(emit) - 1 and not then_right) else fresh(f"#{idx}.{k + 1}")
            trans.extend(Transition(cur, bit, y, (y,), nxt) for y in gamma)
            cur = nxt
        if then_right:
            trans.extend(Transition(cur, RIGHT, y, (y,), target) for y in gamma)
        return first

    for idx, tr in enumerate(t.transitions):
        if tr.read == LEFT:
            entry = match_chain(idx, tr.emit, tr.next)
            trans.append(Transition(tr.state, LEFT, tr.pop, tr.push, entry))
        elif tr.read == RIGHT:
            entry = match_chain(idx, tr.emit, tr.next, then_right=True)
            trans.append(Transition(tr.state, EPS, tr.pop, tr.push, entry))
        else:
            entry = match_chain(idx, tr.emit, tr.next)
            trans.append(Transition(tr.state, EPS, tr.pop, tr.push, entry))
    return Npda(tuple(states), t.input_alphabet, tuple(gamma), tuple(trans), t.start, t.final,
                t.bottom, t.start_symbol, f"range({t.name})")


def _simple_transducer(name, per_symbol, on_right) -> Npda:
    """Three-state transducer over a one-symbol stack."""
    q0, q1, qf = "q0", "q1", "qf"
    trans = [Transition(q0, LEFT, "z", ("z",), q1), Transition(q1, RIGHT, "z", ("z",), qf, on_right)]
    trans += [Transition(q1, a, "z", ("z",), q1, per_symbol(a)) for a in "01"]
    return Npda((q0, q1, qf), ("0", "1"), ("z",), tuple(trans), q0, frozenset({qf}), name=name)


def append_zero_transducer() -> Npda:
    """``x -> x 0``."""
    return _simple_transducer("append-zero", lambda a: a, "0")


def constant_one_transducer() -> Npda:
    """``x -> 1`` for every ``x``."""
    return _simple_transducer("constant-one", lambda a: "", "1")


def dyck_identity_transducer() -> Npda:
    """Identity on nonempty balanced words, undefined elsewhere."""
    m = dyck_npda()
    trans = tuple(Transition(t.state, t.read, t.pop, t.push, t.next, t.read if t.read in ("0", "1") else "")
                  for t in m.transitions)
    return Npda(m.states, m.input_alphabet, m.stack_alphabet, trans, m.start, m.final, name="dyck-identity")


FIXTURE_TRANSDUCERS = {
    "append-zero": append_zero_transducer,
    "constant-one": constant_one_transducer,
    "dyck-identity": dyck_identity_transducer,
}


# ------------------------------------------------------------ file format

def npda_to_dict(m: Npda) -> dict:
    return {
        "type": "npda",
        "name": m.name,
        "states": list(m.states),
        "input_alphabet": list(m.input_alphabet),
        "stack_alphabet": list(m.stack_alphabet),
        "start": m.start,
        "final": sorted(m.final),
        "bottom": m.bottom,
        "start_symbol": m.start_symbol,
        "transitions": [
            {"state": t.state, "read": t.read, "pop": t.pop, "push": list(t.push), "next": t.next,
             **({"emit": t.emit} if t.emit else {})}
            for t in m.transitions
        ],
    }


def npda_from_dict(spec: dict) -> Npda:
    try:
        trans = []
        for d in spec["transitions"]:
            push = d.get("push", [])
            push = tuple(push) if not isinstance(push, str) else tuple(push)
            trans.append(Transition(d["state"], d["read"], d["pop"], push, d["next"], d.get("emit", "")))
        gamma = spec.get("stack_alphabet")
        if gamma is None:
            gamma = sorted({t.pop for t in trans} | {s for t in trans for s in t.push})
        return Npda(tuple(spec["states"]), tuple(spec.get("input_alphabet", ("0", "1"))), tuple(gamma),
                    tuple(trans), spec["start"], frozenset(spec["final"]), spec.get("bottom", "z"),
                    spec.get("start_symbol", "S"), spec.get("name", "npda"))
    except (KeyError, TypeError) as exc:
        raise ConfigurationError(f"malformed npda description: {exc!r}") from exc

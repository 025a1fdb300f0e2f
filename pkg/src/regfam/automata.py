"""Regular expressions over {a, b}, finite automata, and b-torsion data."""
from __future__ import annotations

import warnings
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .config import DEFAULT_CAPS
from .errors import LanguageWarning, ParseError, ResourceError

SIGMA = ("a", "b")


# -- regex syntax --------------------------------------------------------------

@dataclass(frozen=True)
class Regex:
    """AST node.  ``op`` is one of lit, eps, cat, alt, star."""

    op: str
    args: tuple = ()
    sym: str = ""

    def __str__(self):
        if self.op == "lit":
            return self.sym
        if self.op == "eps":
            return "()"
        if self.op == "star":
            return f"({self.args[0]})*"
        joiner = "|" if self.op == "alt" else ""
        return "(" + joiner.join(str(a) for a in self.args) + ")"


EPS = Regex("eps")


def lit(c: str) -> Regex:
    return Regex("lit", sym=c)


def cat(*parts: Regex) -> Regex:
    flat = []
    for p in parts:
        if p.op == "cat":
            flat.extend(p.args)
        elif p.op != "eps":
            flat.append(p)
    if not flat:
        return EPS
    return flat[0] if len(flat) == 1 else Regex("cat", tuple(flat))


def alt(*parts: Regex) -> Regex:
    return parts[0] if len(parts) == 1 else Regex("alt", tuple(parts))


def star(r: Regex) -> Regex:
    return r if r.op == "eps" else Regex("star", (r,))


def repeat(r: Regex, lo: int, hi: int | None) -> Regex:
    """Expand ``r{lo,hi}``; ``hi=None`` means unbounded."""
    if hi is not None and hi < lo:
        raise ValueError(f"bad repetition bounds {{{lo},{hi}}}")
    head = [r] * lo
    if hi is None:
        return cat(*head, star(r))
    opt = alt(r, EPS)
    return cat(*head, *([opt] * (hi - lo)))


class _Parser:
    def __init__(self, text: str, alphabet: tuple = SIGMA):
        self.text = text
        self.alphabet = alphabet
        self.pos = 0

    def peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Regex:
        r = self.alternation()
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)
        return r

    def alternation(self):
        parts = [self.concatenation()]
        while self.peek() == "|":
            self.pos += 1
            parts.append(self.concatenation())
        return alt(*parts)

    def concatenation(self):
        parts = []
        while self.peek() and self.peek() not in "|)":
            parts.append(self.postfix())
        return cat(*parts)

    def postfix(self):
        r = self.atom()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                r = star(r)
            elif c == "+":
                self.pos += 1
                r = cat(r, star(r))
            elif c == "?":
                self.pos += 1
                r = alt(r, EPS)
            elif c == "{":
                r = self.bounds(r)
            else:
                return r

    def bounds(self, r):
        start = self.pos
        close = self.text.find("}", start)
        if close < 0:
            raise ParseError("unterminated '{'", start)
        body = self.text[start + 1 : close].replace(" ", "")
        lo_s, comma, hi_s = body.partition(",")
        try:
            lo = int(lo_s)
            hi = (None if hi_s == "" else int(hi_s)) if comma else lo
        except ValueError:
            raise ParseError(f"bad repetition {{{body}}}", start) from None
        if lo < 0 or (hi is not None and hi < lo):
            raise ParseError(f"bad repetition bounds {{{body}}}", start)
        self.pos = close + 1
        return repeat(r, lo, hi)

    def atom(self):
        c = self.peek()
        if c and c in self.alphabet:
            self.pos += 1
            return lit(c)
        if c == "(":
            open_at = self.pos
            self.pos += 1
            r = self.alternation()
            if self.peek() != ")":
                raise ParseError("missing ')'", open_at)
            self.pos += 1
            return r
        if not c:
            raise ParseError("unexpected end of pattern", self.pos)
        raise ParseError(f"unexpected {c!r}", self.pos)


def parse_regex(text: str, alphabet: tuple = SIGMA) -> Regex:
    return _Parser(text, alphabet).parse()


# -- NFA -----------------------------------------------------------------------

@dataclass
class Nfa:
    n: int
    start: int
    accept: int
    moves: list[dict[str, set[int]]] = field(default_factory=list)
    eps: list[set[int]] = field(default_factory=list)

    def new_state(self) -> int:
        self.moves.append({})
        self.eps.append(set())
        self.n += 1
        return self.n - 1


def to_nfa(r: Regex) -> Nfa:
    """Thompson construction."""
    nfa = Nfa(0, 0, 0)

    def build(node) -> tuple[int, int]:
        s, f = nfa.new_state(), nfa.new_state()
        if node.op == "lit":
            nfa.moves[s].setdefault(node.sym, set()).add(f)
        elif node.op == "eps":
            nfa.eps[s].add(f)
        elif node.op == "cat":
            prev = s
            for part in node.args:
                a, b = build(part)
                nfa.eps[prev].add(a)
                prev = b
            nfa.eps[prev].add(f)
        elif node.op == "alt":
            for part in node.args:
                a, b = build(part)
                nfa.eps[s].add(a)
                nfa.eps[b].add(f)
        elif node.op == "star":
            a, b = build(node.args[0])
            nfa.eps[s] |= {a, f}
            nfa.eps[b] |= {a, f}
        else:
            raise ValueError(f"unknown regex node {node.op}")
        return s, f

    nfa.start, nfa.accept = build(r)
    return nfa


def _closure(nfa: Nfa, states: Iterable[int]) -> frozenset[int]:
    seen = set(states)
    stack = list(seen)
    while stack:
        for t in nfa.eps[stack.pop()]:
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return frozenset(seen)


# -- DFA -----------------------------------------------------------------------

@dataclass(frozen=True)
class Dfa:
    """Total DFA with dense states ``0..n-1``.

    ``delta[q][k]`` is the successor of ``q`` on ``alphabet[k]``.
    """

    alphabet: tuple
    delta: tuple[tuple[int, ...], ...]
    start: int
    accepting: frozenset[int]

    @property
    def n(self) -> int:
        return len(self.delta)

    def index(self, sym) -> int:
        return self.alphabet.index(sym)

    def step(self, q: int, sym) -> int:
        return self.delta[q][self.alphabet.index(sym)]

    def run(self, word: Sequence, q: int | None = None) -> int:
        q = self.start if q is None else q
        idx = {s: k for k, s in enumerate(self.alphabet)}
        for sym in word:
            q = self.delta[q][idx[sym]]
        return q

    def accepts(self, word: Sequence) -> bool:
        if any(sym not in self.alphabet for sym in word):
            return False
        return self.run(word) in self.accepting

    def transformation(self, word: Sequence) -> tuple[int, ...]:
        return tuple(self.run(word, q) for q in range(self.n))

    def coreachable(self) -> frozenset[int]:
        """States from which some accepting state is reachable."""
        back = [set() for _ in range(self.n)]
        for q, row in enumerate(self.delta):
            for r in row:
                back[r].add(q)
        seen = set(self.accepting)
        stack = list(seen)
        while stack:
            for q in back[stack.pop()]:
                if q not in seen:
                    seen.add(q)
                    stack.append(q)
        return frozenset(seen)

    def is_empty(self) -> bool:
        return self.start not in self.coreachable()


def determinize(nfa: Nfa, alphabet: tuple = SIGMA) -> Dfa:
    start = _closure(nfa, [nfa.start])
    ids = {start: 0}
    order = [start]
    rows = []
    k = 0
    while k < len(order):
        cur = order[k]
        row = []
        for sym in alphabet:
            nxt = set()
            for s in cur:
                nxt |= nfa.moves[s].get(sym, set())
            target = _closure(nfa, nxt)
            if target not in ids:
                ids[target] = len(order)
                order.append(target)
            row.append(ids[target])
        rows.append(tuple(row))
        k += 1
    accepting = frozenset(i for i, st in enumerate(order) if nfa.accept in st)
    return Dfa(alphabet, tuple(rows), 0, accepting)


def _reachable(d: Dfa) -> list[int]:
    seen = {d.start}
    order = [d.start]
    queue = deque(order)
    while queue:
        q = queue.popleft()
        for r in d.delta[q]:
            if r not in seen:
                seen.add(r)
                order.append(r)
                queue.append(r)
    return order


def minimize(d: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part, BFS-renumbered."""
    states = _reachable(d)
    block = {q: int(q in d.accepting) for q in states}
    n_blocks = len(set(block.values()))
    while True:
        sigs = {}
        new_block = {}
        for q in states:
            sig = (block[q],) + tuple(block[r] for r in d.delta[q])
            new_block[q] = sigs.setdefault(sig, len(sigs))
        block = new_block
        if len(sigs) == n_blocks:
            break
        n_blocks = len(sigs)
    # BFS renumbering from the start block gives a canonical numbering
    rep = {}
    for q in states:
        rep.setdefault(block[q], q)
    number = {block[d.start]: 0}
    order = [block[d.start]]
    rows = []
    k = 0
    while k < len(order):
        q = rep[order[k]]
        row = []
        for r in d.delta[q]:
            b = block[r]
            if b not in number:
                number[b] = len(order)
                order.append(b)
            row.append(number[b])
        rows.append(tuple(row))
        k += 1
    accepting = frozenset(number[block[q]] for q in states if q in d.accepting)
    return Dfa(d.alphabet, tuple(rows), 0, accepting)


def product(d1: Dfa, d2: Dfa, mode: str = "and") -> Dfa:
    if d1.alphabet != d2.alphabet:
        raise ValueError("product of automata over different alphabets")
    ops = {
        "and": lambda x, y: x and y,
        "or": lambda x, y: x or y,
        "diff": lambda x, y: x and not y,
        "xor": lambda x, y: x != y,
    }
    keep = ops[mode]
    start = (d1.start, d2.start)
    ids = {start: 0}
    order = [start]
    rows = []
    k = 0
    while k < len(order):
        p, q = order[k]
        row = []
        for i in range(len(d1.alphabet)):
            nxt = (d1.delta[p][i], d2.delta[q][i])
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        rows.append(tuple(row))
        k += 1
    accepting = frozenset(
        i for i, (p, q) in enumerate(order) if keep(p in d1.accepting, q in d2.accepting)
    )
    return Dfa(d1.alphabet, tuple(rows), 0, accepting)


def complement(d: Dfa) -> Dfa:
    return Dfa(d.alphabet, d.delta, d.start, frozenset(range(d.n)) - d.accepting)


def equivalent(d1: Dfa, d2: Dfa) -> bool:
    return product(d1, d2, "xor").is_empty()


def compile_regex(text: str, alphabet: tuple = SIGMA) -> Dfa:
    return minimize(determinize(to_nfa(parse_regex(text, alphabet)), alphabet))


_G_DFA: Dfa | None = None


def G_dfa() -> Dfa:
    """Minimal DFA of the code language: (vertex | vertex aab+a)*."""
    global _G_DFA
    if _G_DFA is None:
        _G_DFA = compile_regex("(ab+a(aab+a)?)*")
    return _G_DFA


def intersect_with_G(d: Dfa, warn: bool = True) -> Dfa:
    inter = minimize(product(d, G_dfa(), "and"))
    if warn and not equivalent(inter, d):
        warnings.warn(
            "language contains words outside the graph code; they are dropped",
            LanguageWarning,
            stacklevel=2,
        )
    return inter


# -- torsion -------------------------------------------------------------------

@dataclass(frozen=True)
class Torsion:
    t: int
    p: int

    def __post_init__(self):
        if self.t < 0 or self.p < 1:
            raise ValueError(f"invalid torsion pair ({self.t},{self.p})")

    @property
    def ell(self) -> int:
        """Largest reduced exponent, t + p - 1."""
        return self.t + self.p - 1

    def rep(self, n: int) -> int:
        return class_rep(self, n)

    def is_big(self, c: int) -> bool:
        return c >= self.t


def torsion_pair(d: Dfa, letter: str = "b") -> Torsion:
    k = d.index(letter)
    f = tuple(row[k] for row in d.delta)
    power = tuple(range(d.n))
    seen = {power: 0}
    i = 0
    while True:
        power = tuple(f[x] for x in power)
        i += 1
        if power in seen:
            t = seen[power]
            return Torsion(t, i - t)
        seen[power] = i


def class_rep(tor: Torsion, n: int) -> int:
    if n < tor.t:
        return n
    return tor.t + (n - tor.t) % tor.p


def transition_monoid(d: Dfa, cap: int = DEFAULT_CAPS.monoid_size) -> set[tuple[int, ...]]:
    gens = [tuple(row[k] for row in d.delta) for k in range(len(d.alphabet))]
    ident = tuple(range(d.n))
    seen = {ident}
    queue = deque([ident])
    while queue:
        m = queue.popleft()
        for g in gens:
            prod = tuple(g[x] for x in m)
            if prod not in seen:
                seen.add(prod)
                if len(seen) > cap:
                    raise ResourceError(f"transition monoid exceeds {cap} elements")
                queue.append(prod)
    return seen


def is_aperiodic(d: Dfa, cap: int = DEFAULT_CAPS.monoid_size) -> bool:
    for m in transition_monoid(d, cap):
        power = m
        seen = {power: 1}
        k = 1
        while True:
            nxt = tuple(m[x] for x in power)
            k += 1
            if nxt in seen:
                if k - seen[nxt] != 1:
                    return False
                break
            seen[nxt] = k
            power = nxt
    return True


def language_upto(d: Dfa, max_len: int) -> set[str]:
    """All accepted words up to ``max_len`` (small alphabets, test helper)."""
    out = set()
    frontier = [("", d.start)]
    for _ in range(max_len + 1):
        nxt = []
        for w, q in frontier:
            if q in d.accepting:
                out.add(w)
            for k, sym in enumerate(d.alphabet):
                nxt.append((w + sym, d.delta[q][k]))
        frontier = nxt
    return out

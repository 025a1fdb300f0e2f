"""Reduced letters, the letter automaton and its Parikh image."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .automata import Dfa, Torsion, class_rep
from .codec import codeword, split_codewords
from .config import DEFAULT_CAPS
from .errors import ParseError, ResourceError
from .semilinear import LinearPiece, SemilinearSet, unit


@dataclass(frozen=True)
class Letter:
    kind: str  # "V" or "E"
    blocks: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ("V", "E") or len(self.blocks) != (1 if self.kind == "V" else 2):
            raise ValueError(f"malformed letter {self.kind}{self.blocks}")
        if min(self.blocks) < 1:
            raise ValueError("letter exponents are positive")

    @property
    def is_edge(self) -> bool:
        return self.kind == "E"

    def word(self, exps: tuple[int, ...] | None = None) -> str:
        return codeword(self.blocks if exps is None else tuple(exps))

    def sort_key(self):
        w = self.word()
        return (0 if self.is_edge else 1, len(w), w)

    def __str__(self):
        return f"{self.kind}({','.join(map(str, self.blocks))})"

    @classmethod
    def parse(cls, text: str) -> "Letter":
        text = text.strip()
        try:
            kind, rest = text[0], text[1:]
            assert rest[0] == "(" and rest[-1] == ")"
            blocks = tuple(int(x) for x in rest[1:-1].split(","))
            return cls(kind, blocks)
        except (AssertionError, IndexError, ValueError):
            raise ParseError(f"bad letter {text!r}") from None


@dataclass(frozen=True)
class LetterAlphabet:
    letters: tuple[Letter, ...]
    torsion: Torsion

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(sorted(set(self.letters), key=Letter.sort_key)))

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def index(self, z: Letter) -> int:
        return self.letters.index(z)

    def names(self) -> list[str]:
        return [str(z) for z in self.letters]


@dataclass(frozen=True)
class ExponentClass:
    """Exponents ``start + step*k``; ``step == 0`` means just ``{start}``."""

    start: int
    step: int

    def __contains__(self, n: int) -> bool:
        if self.step == 0:
            return n == self.start
        return n >= self.start and (n - self.start) % self.step == 0

    def nth(self, k: int) -> int:
        if self.step == 0 and k:
            raise IndexError("singleton exponent class")
        return self.start + k * self.step

    def __str__(self):
        return f"{{{self.start}}}" if self.step == 0 else f"{self.start}+{self.step}N"


def exponent_class(c: int, tor: Torsion) -> ExponentClass:
    return ExponentClass(c, tor.p if c >= tor.t else 0)


def saturation_class(z: Letter, tor: Torsion) -> tuple[ExponentClass, ...]:
    return tuple(exponent_class(c, tor) for c in z.blocks)


def reduce_item(item: tuple[int, ...], tor: Torsion) -> tuple[int, ...]:
    out = tuple(class_rep(tor, n) for n in item)
    if min(out) < 1:
        raise ValueError(f"exponent {item} reduces to zero under ({tor.t},{tor.p})")
    return out


def letter_of(item: tuple[int, ...], tor: Torsion) -> Letter:
    return Letter("V" if len(item) == 1 else "E", reduce_item(item, tor))


def reduced_form(w: str, tor: Torsion) -> str:
    return "".join(codeword(reduce_item(item, tor)) for item in split_codewords(w))


def all_letters(tor: Torsion) -> list[Letter]:
    ell = tor.ell
    out = [Letter("E", (c, d)) for c in range(1, ell + 1) for d in range(1, ell + 1)]
    out += [Letter("V", (c,)) for c in range(1, ell + 1)]
    return sorted(out, key=Letter.sort_key)


@dataclass
class LetterDfa:
    """Trimmed automaton over letters; ``trans[q]`` maps letter index to state."""

    alphabet: LetterAlphabet
    start: int
    accepting: frozenset[int]
    trans: list[dict[int, int]] = field(default_factory=list)
    # the underlying {a,b} state of each letter-DFA state
    origin: list[int] = field(default_factory=list)

    @property
    def n(self) -> int:
        return len(self.trans)

    def accepts(self, letters) -> bool:
        q = self.start
        for z in letters:
            k = z if isinstance(z, int) else self.alphabet.index(z)
            if q is None or k not in self.trans[q]:
                return False
            q = self.trans[q][k]
        return q in self.accepting

    def words(self, max_len: int):
        """Accepted letter-index tuples of length at most ``max_len``."""
        frontier = [((), self.start)] if self.n else []
        for _ in range(max_len + 1):
            nxt = []
            for w, q in frontier:
                if q in self.accepting:
                    yield w
                for k, r in self.trans[q].items():
                    nxt.append((w + (k,), r))
            frontier = nxt


def build_letter_dfa(d: Dfa, tor: Torsion) -> LetterDfa:
    """Letter automaton of a minimal DFA whose language lies in the code.

    A letter moves the DFA by its reduced codeword; every concrete member of
    the letter's class induces the same transformation.
    """
    candidates = all_letters(tor)
    moves = {z: d.transformation(z.word()) for z in candidates}
    # forward from start
    seen = {d.start}
    queue = deque([d.start])
    while queue:
        q = queue.popleft()
        for z in candidates:
            r = moves[z][q]
            if r not in seen:
                seen.add(r)
                queue.append(r)
    # backward from accepting, inside the forward set
    back: dict[int, set[int]] = {q: set() for q in seen}
    for q in seen:
        for z in candidates:
            back[moves[z][q]].add(q)
    alive = {q for q in seen if q in d.accepting}
    stack = list(alive)
    while stack:
        for q in back[stack.pop()]:
            if q not in alive:
                alive.add(q)
                stack.append(q)
    used = sorted(
        {z for z in candidates for q in alive if moves[z][q] in alive},
        key=Letter.sort_key,
    )
    alphabet = LetterAlphabet(tuple(used), tor)
    if d.start not in alive:
        return LetterDfa(alphabet, 0, frozenset(), [{}], [d.start])
    number = {d.start: 0}
    order = [d.start]
    trans: list[dict[int, int]] = []
    k = 0
    while k < len(order):
        q = order[k]
        row = {}
        for i, z in enumerate(alphabet.letters):
            r = moves[z][q]
            if r in alive:
                if r not in number:
                    number[r] = len(order)
                    order.append(r)
                row[i] = number[r]
        trans.append(row)
        k += 1
    accepting = frozenset(number[q] for q in order if q in d.accepting)
    return LetterDfa(alphabet, 0, accepting, trans, order)


def trim_dfa(d: Dfa) -> LetterDfa:
    """Useful part of a symbol DFA as a partial automaton over symbol indices."""
    alive = d.coreachable()
    if d.start not in alive:
        return LetterDfa(d.alphabet, 0, frozenset(), [{}], [d.start])
    number = {d.start: 0}
    order = [d.start]
    trans = []
    k = 0
    while k < len(order):
        q = order[k]
        row = {}
        for i, r in enumerate(d.delta[q]):
            if r in alive:
                if r not in number:
                    number[r] = len(order)
                    order.append(r)
                row[i] = number[r]
        trans.append(row)
        k += 1
    return LetterDfa(d.alphabet, 0, frozenset(number[q] for q in order if q in d.accepting), trans, order)


# -- Parikh image by state elimination ----------------------------------------

class _RegexDag:
    """Hash-consed regular expressions over letter indices."""

    EMPTY, EPS = 0, 1

    def __init__(self, cap: int):
        self.cap = cap
        self.nodes: list[tuple] = [("empty",), ("eps",)]
        self.ids: dict[tuple, int] = {("empty",): 0, ("eps",): 1}

    def _make(self, node: tuple) -> int:
        got = self.ids.get(node)
        if got is not None:
            return got
        if len(self.nodes) >= self.cap:
            raise ResourceError(f"regex exceeds {self.cap} nodes during state elimination")
        self.ids[node] = len(self.nodes)
        self.nodes.append(node)
        return len(self.nodes) - 1

    def lit(self, k: int) -> int:
        return self._make(("lit", k))

    def alt(self, x: int, y: int) -> int:
        if x == self.EMPTY:
            return y
        if y == self.EMPTY or x == y:
            return x
        return self._make(("alt", min(x, y), max(x, y)))

    def cat(self, x: int, y: int) -> int:
        if x == self.EMPTY or y == self.EMPTY:
            return self.EMPTY
        if x == self.EPS:
            return y
        if y == self.EPS:
            return x
        return self._make(("cat", x, y))

    def star(self, x: int) -> int:
        if x in (self.EMPTY, self.EPS):
            return self.EPS
        if self.nodes[x][0] == "star":
            return x
        return self._make(("star", x))


def eliminate(ldfa: LetterDfa, cap: int = DEFAULT_CAPS.regex_nodes) -> tuple[_RegexDag, int]:
    """State elimination to a single regex from a fresh source to a fresh sink."""
    dag = _RegexDag(cap)
    n = ldfa.n
    src, dst = n, n + 1
    edges: dict[int, dict[int, int]] = {q: {} for q in range(n + 2)}
    preds: dict[int, set[int]] = {q: set() for q in range(n + 2)}

    def add(i, j, x):
        edges[i][j] = dag.alt(edges[i].get(j, dag.EMPTY), x)
        preds[j].add(i)

    if n:
        add(src, ldfa.start, dag.EPS)
    for q in range(n):
        for k, r in ldfa.trans[q].items():
            add(q, r, dag.lit(k))
        if q in ldfa.accepting:
            add(q, dst, dag.EPS)
    remaining = set(range(n))
    while remaining:
        # lowest degree first
        k = min(remaining, key=lambda s: (len(preds[s]) + len(edges[s]), s))
        remaining.discard(k)
        loop = dag.star(edges[k].get(k, dag.EMPTY))
        ins = [i for i in preds[k] if i != k]
        outs = [(j, x) for j, x in edges[k].items() if j != k]
        for i in ins:
            head = dag.cat(edges[i][k], loop)
            for j, x in outs:
                add(i, j, dag.cat(head, x))
        for i in ins:
            del edges[i][k]
        for j, _ in outs:
            preds[j].discard(k)
        edges[k] = {}
        preds[k] = set()
    return dag, edges[src].get(dst, dag.EMPTY)


def parikh(ldfa: LetterDfa, caps=DEFAULT_CAPS, dim: int | None = None) -> SemilinearSet:
    """Exact Parikh image of a trimmed automaton (not yet normalized).

    ``dim`` defaults to the alphabet size; pass it when ``ldfa`` carries a
    plain symbol alphabet instead of letters.
    """
    if ldfa.n > caps.parikh_states:
        raise ResourceError(f"letter automaton has {ldfa.n} states, cap is {caps.parikh_states}")
    dim = len(ldfa.alphabet) if dim is None else dim
    dag, root = eliminate(ldfa, caps.regex_nodes)
    memo: dict[int, SemilinearSet] = {}

    def check(s: SemilinearSet) -> SemilinearSet:
        if len(s.pieces) > caps.pieces:
            raise ResourceError(f"Parikh image exceeds {caps.pieces} linear pieces")
        return s

    def ev(x: int) -> SemilinearSet:
        got = memo.get(x)
        if got is not None:
            return got
        node = dag.nodes[x]
        tag = node[0]
        if tag == "empty":
            res = SemilinearSet.empty(dim)
        elif tag == "eps":
            res = SemilinearSet.zero(dim)
        elif tag == "lit":
            res = SemilinearSet(dim, (LinearPiece(unit(dim, node[1])),))
        elif tag == "alt":
            res = check(ev(node[1]).union(ev(node[2])).simplify())
        elif tag == "cat":
            res = check(ev(node[1]).sum(ev(node[2])).simplify())
        else:
            res = ev(node[1]).star(caps.star_pieces)
        memo[x] = res
        return res

    # iterative post-order so deep DAGs do not hit the recursion limit
    stack = [(root, False)]
    while stack:
        x, ready = stack.pop()
        if x in memo:
            continue
        node = dag.nodes[x]
        kids = [c for c in node[1:] if node[0] in ("alt", "cat", "star")]
        if ready or not kids:
            ev(x)
        else:
            stack.append((x, True))
            stack.extend((c, False) for c in kids if c not in memo)
    return ev(root)

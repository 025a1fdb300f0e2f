"""Graph families of regular languages: pieces, marked graphs, membership.

Normal linear pieces of the Parikh image become ``FamilyPiece`` objects.
The graphs of a piece are obtained by picking, for every letter ``z`` in its
support, between 1 and ``alpha[z]`` concrete instances of ``z`` and decoding
the union of the chosen codewords.  A vertex is described by its exponent
class: a small class ``c < t`` names exactly one exponent, a big class
``c >= t`` names all of ``c + p*N``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator

from .alphabet import Letter, LetterAlphabet, LetterDfa, build_letter_dfa, parikh
from .automata import Dfa, Torsion, compile_regex, intersect_with_G, torsion_pair
from .codec import Graph, canonical_form, canonical_order, codeword, decode, undirected_simplification
from .config import DEFAULT_CAPS, Caps
from .errors import ResourceError
from .semilinear import SemilinearSet, Vector, period_subsets, vadd, vsum

INF = math.inf


@dataclass(frozen=True)
class MarkedGraph:
    """Graph on reduced exponents with marked vertices and edges."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    marked_vertices: frozenset[int]
    marked_edges: frozenset[tuple[int, int]]

    @property
    def graph(self) -> Graph:
        return Graph(frozenset(self.vertices), frozenset(self.edges))

    def marked_loops(self) -> list[tuple[int, int]]:
        return [e for e in self.marked_edges if e[0] == e[1]]

    def doubly_marked(self) -> list[tuple[int, int]]:
        return [
            (u, v)
            for u, v in self.marked_edges
            if u != v and u in self.marked_vertices and v in self.marked_vertices
        ]

    def to_json(self) -> dict:
        marks = [f"v{v}" for v in sorted(self.marked_vertices)]
        marks += [f"e{u}-{v}" for u, v in sorted(self.marked_edges)]
        return {
            "vertices": list(self.vertices),
            "edges": [list(e) for e in self.edges],
            "marks": marks,
        }


@dataclass
class FamilyPiece:
    index: int
    alphabet: LetterAlphabet
    base: Vector
    periods: tuple[Vector, ...]
    letters: tuple[Letter, ...] = field(init=False)
    alpha: dict[Letter, float] = field(init=False)

    def __post_init__(self):
        tor = self.torsion
        r = vsum(self.periods, len(self.base))
        self.letters = tuple(z for i, z in enumerate(self.alphabet.letters) if self.base[i] > 0)
        self.alpha = {}
        for i, z in enumerate(self.alphabet.letters):
            if self.base[i] == 0:
                continue
            has_big = any(tor.is_big(c) for c in z.blocks)
            if not has_big:
                self.alpha[z] = 1
            elif r[i] == 0:
                self.alpha[z] = self.base[i]
            else:
                self.alpha[z] = INF

    @property
    def torsion(self) -> Torsion:
        return self.alphabet.torsion

    @property
    def r(self) -> Vector:
        return vsum(self.periods, len(self.base))

    @property
    def edge_letters(self) -> list[Letter]:
        return [z for z in self.letters if z.is_edge]

    @property
    def vertex_letters(self) -> list[Letter]:
        return [z for z in self.letters if not z.is_edge]

    @property
    def classes(self) -> list[int]:
        return sorted({c for z in self.letters for c in z.blocks})

    @property
    def small_classes(self) -> list[int]:
        return [c for c in self.classes if c < self.torsion.t]

    @property
    def big_classes(self) -> list[int]:
        return [c for c in self.classes if c >= self.torsion.t]

    def big_blocks(self, z: Letter) -> int:
        return sum(1 for c in z.blocks if self.torsion.is_big(c))

    @property
    def is_finite(self) -> bool:
        return all(a != INF for a in self.alpha.values())

    @property
    def core_size(self) -> int:
        """Vertices needed to realize one instance of every letter."""
        return len(self.small_classes) + sum(self.big_blocks(z) for z in self.letters)

    def finite_size(self) -> int:
        """Largest vertex count of a member when every alpha is finite."""
        if not self.is_finite:
            raise ValueError("piece has unbounded letters")
        total = len(self.small_classes)
        for z in self.letters:
            total += int(self.alpha[z]) * self.big_blocks(z)
        return total

    @property
    def rank(self) -> int:
        tor = self.torsion
        best = 1
        for z, a in self.alpha.items():
            if a != INF:
                continue
            best = max(best, 2)
            if z.is_edge and all(tor.is_big(c) for c in z.blocks):
                if z.blocks[0] == z.blocks[1]:
                    return 4
                best = 3
        return best

    def exponent_of(self, c: int, k: int) -> int:
        """Concrete exponent of the k-th vertex (from 0) of class c."""
        if c < self.torsion.t:
            if k:
                raise ValueError(f"small class {c} holds one vertex")
            return c
        return c + k * self.torsion.p

    def alpha_json(self) -> dict[str, object]:
        return {str(z): ("inf" if a == INF else int(a)) for z, a in self.alpha.items()}


def marked_graph(piece: FamilyPiece, collapse: bool = True) -> MarkedGraph:
    tor = piece.torsion
    vertices = piece.classes
    edges = [z.blocks for z in piece.edge_letters]
    marked_v = set()
    marked_e = set()
    for z in piece.letters:
        if piece.alpha[z] != INF:
            continue
        marked_v.update(c for c in z.blocks if tor.is_big(c))
        if z.is_edge:
            marked_e.add(z.blocks)
    if collapse:
        touched = {c for e in edges for c in e}
        iso_marked = sorted(v for v in marked_v if v not in touched)
        for v in iso_marked[1:]:
            vertices = [u for u in vertices if u != v]
            marked_v.discard(v)
    return MarkedGraph(tuple(vertices), tuple(edges), frozenset(marked_v), frozenset(marked_e))


def width_bounds(piece: FamilyPiece) -> tuple[int, int] | None:
    """Bounds on minimum vertex cover and tree-decomposition bag size.

    ``None`` when the piece has an unbounded edge letter with two big ends,
    where both quantities are unbounded over the family.
    """
    if piece.rank >= 3:
        return None
    tor = piece.torsion
    n_f = len(marked_graph(piece).vertices)
    # small vertices cover every edge with a small end; the remaining edges
    # come from finite letters with two big ends
    cover = len(piece.small_classes)
    for z in piece.edge_letters:
        if all(tor.is_big(c) for c in z.blocks):
            cover += int(piece.alpha[z])
    bag = cover + (1 if piece.big_classes else 0)
    return max(n_f, cover), max(n_f, bag)


# -- the analyzed family -------------------------------------------------------

@dataclass
class Family:
    source: str
    dfa: Dfa
    torsion: Torsion
    letter_dfa: LetterDfa
    image: SemilinearSet
    pieces: list[FamilyPiece]
    accepts_empty: bool
    caps: Caps = DEFAULT_CAPS

    @property
    def alphabet(self) -> LetterAlphabet:
        return self.letter_dfa.alphabet

    @property
    def rank(self) -> int:
        return overall_rank(self.pieces)

    @property
    def is_empty(self) -> bool:
        return not self.pieces and not self.accepts_empty

    def report(self) -> dict:
        chi = chromatic_sup(self)
        return {
            "language": self.source,
            "torsion": {"t": self.torsion.t, "p": self.torsion.p},
            "alphabet": self.alphabet.names(),
            "acceptsEmpty": self.accepts_empty,
            "pieces": [
                {
                    "q": list(pc.base),
                    "periods": [list(p) for p in pc.periods],
                    "alpha": pc.alpha_json(),
                    "markedGraph": marked_graph(pc).to_json(),
                    "rank": pc.rank,
                    "widthBounds": (list(wb) if (wb := width_bounds(pc)) else "unbounded"),
                }
                for pc in self.pieces
            ],
            "overallRank": self.rank,
            "chromaticSup": "inf" if chi == INF else int(chi),
        }


def build_pieces(image: SemilinearSet, alphabet: LetterAlphabet, cap: int = DEFAULT_CAPS.pieces) -> tuple[list[FamilyPiece], bool]:
    """Family pieces of a Parikh image, plus whether the zero vector occurs.

    Each linear piece q + N P is the union of the normal pieces
    q + sum(T) + N T over subsets T of P.  Two such pieces with the same
    letters and the same instance bounds give the same graphs, so one is
    kept per union of period supports, and pieces whose bounds are dominated
    by another piece on the same letters are dropped.
    """
    cands: dict[tuple, FamilyPiece] = {}
    has_zero = False
    for lp in image.pieces:
        for chosen in period_subsets(lp, cap):
            base = vadd(lp.base, vsum(chosen, image.dim))
            if not any(base):
                has_zero = True
                continue
            pc = FamilyPiece(0, alphabet, base, chosen)
            key = (tuple(pc.letters), tuple(pc.alpha[z] for z in pc.letters))
            cands.setdefault(key, pc)
            if len(cands) > cap:
                raise ResourceError(f"family exceeds {cap} pieces")
    by_letters: dict[tuple, list[tuple]] = {}
    for letters, bounds in cands:
        by_letters.setdefault(letters, []).append(bounds)
    kept = [
        pc
        for (letters, bounds), pc in cands.items()
        if not any(
            other != bounds and all(a <= b for a, b in zip(bounds, other))
            for other in by_letters[letters]
        )
    ]
    pieces = [FamilyPiece(i, alphabet, pc.base, pc.periods) for i, pc in enumerate(kept)]
    return pieces, has_zero


def analyze(source: str | Dfa, caps: Caps = DEFAULT_CAPS, warn: bool = True) -> Family:
    d = compile_regex(source) if isinstance(source, str) else source
    d = intersect_with_G(d, warn=warn)
    tor = torsion_pair(d)
    ldfa = build_letter_dfa(d, tor)
    image = parikh(ldfa, caps)
    pieces, has_zero = build_pieces(image, ldfa.alphabet, caps.pieces)
    accepts_empty = d.start in d.accepting
    name = source if isinstance(source, str) else "<dfa>"
    return Family(name, d, tor, ldfa, image, pieces, accepts_empty, caps)


def overall_rank(pieces: list[FamilyPiece]) -> int:
    return max((pc.rank for pc in pieces), default=1)


# -- membership ----------------------------------------------------------------

@dataclass
class Assignment:
    piece: FamilyPiece
    classes: dict[int, int]  # vertex of g -> exponent class

    def names(self) -> dict[int, int]:
        """Concrete distinct exponents consistent with the classes."""
        used: dict[int, int] = {}
        out = {}
        for v in sorted(self.classes):
            c = self.classes[v]
            k = used.get(c, 0)
            used[c] = k + 1
            out[v] = self.piece.exponent_of(c, k)
        return out


def _letter(item: tuple[int, ...]) -> Letter:
    return Letter("V" if len(item) == 1 else "E", item)


def find_assignment(piece: FamilyPiece, g: Graph, budget: int = DEFAULT_CAPS.search_budget) -> Assignment | None:
    if g.n == 0:
        return None
    if g.n > len(piece.small_classes) + (g.n if piece.big_classes else 0):
        return None
    alpha = piece.alpha
    iso = g.isolated()
    nbrs: dict[int, set[int]] = {v: set() for v in g.vertices}
    for u, v in g.edges:
        nbrs[u].add(v)
        nbrs[v].add(u)
    # connected, high-degree vertices first so edge checks fire early
    order: list[int] = []
    rest = sorted(g.vertices, key=lambda v: (-len(nbrs[v]), v))
    while rest:
        seed = rest[0]
        stack = [seed]
        seen = {seed}
        while stack:
            v = stack.pop()
            order.append(v)
            for u in sorted(nbrs[v] - seen, key=lambda x: -len(nbrs[x])):
                seen.add(u)
                stack.append(u)
        rest = [v for v in rest if v not in seen]
    domain = piece.classes
    small = set(piece.small_classes)
    vertex_ok = {c for c in domain if Letter("V", (c,)) in alpha}
    cls: dict[int, int] = {}
    edge_count: dict[Letter, int] = {}
    iso_count: dict[Letter, int] = {}
    used_small: set[int] = set()
    steps = 0

    def edges_at(v):
        out = []
        for u in nbrs[v] | ({v} if (v, v) in g.edges else set()):
            if u in cls or u == v:
                if (v, u) in g.edges:
                    out.append((v, u))
                if (u, v) in g.edges and u != v:
                    out.append((u, v))
        return out

    def rec(i) -> bool:
        nonlocal steps
        steps += 1
        if steps > budget:
            raise ResourceError(f"membership search exceeded {budget} steps (piece {piece.index})")
        if i == len(order):
            if any(edge_count.get(z, 0) < 1 for z in piece.edge_letters):
                return False
            present = set(cls.values())
            return all(z.blocks[0] in present for z in piece.vertex_letters)
        v = order[i]
        for c in domain:
            if c in small and c in used_small:
                continue
            if v in iso and c not in vertex_ok:
                continue
            cls[v] = c
            added = []
            ok = True
            for a, b in edges_at(v):
                z = Letter("E", (cls[a], cls[b]))
                if z not in alpha or edge_count.get(z, 0) + 1 > alpha[z]:
                    ok = False
                    break
                edge_count[z] = edge_count.get(z, 0) + 1
                added.append(z)
            zv = Letter("V", (c,))
            if ok and v in iso:
                if iso_count.get(zv, 0) + 1 > alpha[zv]:
                    ok = False
                else:
                    iso_count[zv] = iso_count.get(zv, 0) + 1
            if ok:
                if c in small:
                    used_small.add(c)
                if rec(i + 1):
                    return True
                if c in small:
                    used_small.discard(c)
                if v in iso:
                    iso_count[zv] -= 1
            for z in added:
                edge_count[z] -= 1
            del cls[v]
        return False

    return Assignment(piece, dict(cls)) if rec(0) else None


@dataclass
class MemberResult:
    member: bool
    piece: int | None = None
    assignment: Assignment | None = None
    word: str | None = None

    def __bool__(self):
        return self.member


def member(family: Family, g: Graph, witness: bool = True) -> MemberResult:
    if g.n == 0:
        return MemberResult(family.accepts_empty, None, None, "" if family.accepts_empty else None)
    if g.n > family.caps.canon_vertices:
        raise ResourceError(f"graph has {g.n} vertices, cap is {family.caps.canon_vertices}")
    for pc in family.pieces:
        a = find_assignment(pc, g, family.caps.search_budget)
        if a is not None:
            word = witness_word(family, a, g) if witness else None
            return MemberResult(True, pc.index, a, word)
    return MemberResult(False)


def _instances(a: Assignment, g: Graph) -> dict[Letter, list[tuple[int, ...]]]:
    """Concrete codeword items for each letter, realizing ``g``."""
    name = a.names()
    out: dict[Letter, list[tuple[int, ...]]] = {z: [] for z in a.piece.letters}
    for u, v in sorted(g.edges):
        out[_letter((a.classes[u], a.classes[v]))].append((name[u], name[v]))
    iso = g.isolated()
    for z in a.piece.vertex_letters:
        c = z.blocks[0]
        items = [(name[v],) for v in sorted(iso) if a.classes[v] == c]
        if not items:
            items = [(name[min(v for v in g.vertices if a.classes[v] == c)],)]
        out[z] = items
    return out


def witness_vector(a: Assignment, g: Graph) -> tuple[Vector, dict[Letter, list[tuple[int, ...]]]]:
    pc = a.piece
    inst = _instances(a, g)
    r = pc.r
    m = 0
    for i, z in enumerate(pc.alphabet.letters):
        if z in inst and r[i]:
            m = max(m, -(-max(0, len(inst[z]) - pc.base[i]) // r[i]))
    v = vadd(pc.base, tuple(m * x for x in r))
    return v, inst


def letter_word_with_vector(ldfa: LetterDfa, v: Vector, budget: int = DEFAULT_CAPS.search_budget) -> list[int] | None:
    """An accepted letter word whose Parikh vector is exactly ``v``."""
    failed: set[tuple[int, Vector]] = set()
    steps = 0

    def rec(q, rem) -> list[int] | None:
        nonlocal steps
        if not any(rem):
            return [] if q in ldfa.accepting else None
        if (q, rem) in failed:
            return None
        steps += 1
        if steps > budget:
            raise ResourceError("witness word search exceeded budget")
        for k, r in ldfa.trans[q].items():
            if rem[k]:
                nxt = rem[:k] + (rem[k] - 1,) + rem[k + 1 :]
                tail = rec(r, nxt)
                if tail is not None:
                    return [k] + tail
        failed.add((q, rem))
        return None

    return rec(ldfa.start, tuple(v))


def witness_word(family: Family, a: Assignment, g: Graph) -> str:
    v, inst = witness_vector(a, g)
    letters = letter_word_with_vector(family.letter_dfa, v, family.caps.search_budget)
    if letters is None:
        raise AssertionError("no letter word with the piece's vector; Parikh image is inconsistent")
    alphabet = family.alphabet.letters
    seen: dict[Letter, int] = {}
    parts = []
    for k in letters:
        z = alphabet[k]
        i = seen.get(z, 0)
        seen[z] = i + 1
        items = inst[z]
        parts.append(codeword(items[i % len(items)]))
    return "".join(parts)


def witness_length_bound(a: Assignment, g: Graph) -> int:
    """Upper bound on the length of the word built by ``witness_word``."""
    v, _ = witness_vector(a, g)
    tor = a.piece.torsion
    top = tor.ell + tor.p * g.n
    return sum(v) * (2 * top + 5)


# -- enumeration ---------------------------------------------------------------

def _count_vectors(big: list[int], n_small: int, max_vertices: int, class_caps: dict[int, int]) -> Iterator[dict[int, int]]:
    room = max_vertices - n_small
    if room < len(big):
        return

    def rec(i, left, acc):
        if i == len(big):
            yield dict(acc)
            return
        c = big[i]
        hi = min(left - (len(big) - i - 1), class_caps.get(c, left))
        for k in range(1, hi + 1):
            acc[c] = k
            yield from rec(i + 1, left - k, acc)
        acc.pop(c, None)

    yield from rec(0, room, {})


def piece_graphs(
    piece: FamilyPiece,
    max_vertices: int,
    maximal: bool = False,
    class_caps: dict[int, int] | None = None,
    budget: int = DEFAULT_CAPS.search_budget,
) -> Iterator[tuple[Graph, dict[int, int]]]:
    """Labeled members of a piece with at most ``max_vertices`` vertices.

    With ``maximal`` only edge-maximal members are produced: every unbounded
    letter takes all candidate pairs and bounded letters take as many as
    allowed.  Yields (graph, vertex -> class).
    """
    small = piece.small_classes
    big = piece.big_classes
    class_caps = dict(class_caps or {})
    if piece.is_finite:
        # a big class can hold no more vertices than its letters can name
        for c in big:
            cap = sum(int(piece.alpha[z]) * z.blocks.count(c) for z in piece.letters)
            class_caps[c] = min(class_caps.get(c, cap), cap)
    steps = 0
    for counts in _count_vectors(big, len(small), max_vertices, class_caps):
        label: dict[int, int] = {}
        members: dict[int, list[int]] = {}
        nxt = 1
        for c in small:
            label[nxt] = c
            members[c] = [nxt]
            nxt += 1
        for c in big:
            members[c] = list(range(nxt, nxt + counts[c]))
            for v in members[c]:
                label[v] = c
            nxt += counts[c]
        n = nxt - 1
        choices = []
        for z in piece.edge_letters:
            c, d = z.blocks
            cand = [(u, v) for u in members[c] for v in members[d]]
            a = piece.alpha[z]
            if maximal:
                if a == INF or a >= len(cand):
                    opts = [tuple(cand)]
                else:
                    opts = list(itertools.combinations(cand, int(a)))
            else:
                top = len(cand) if a == INF else min(int(a), len(cand))
                opts = [s for k in range(1, top + 1) for s in itertools.combinations(cand, k)]
            choices.append(opts)
        vertex_alpha = {z.blocks[0]: piece.alpha[z] for z in piece.vertex_letters}
        for pick in itertools.product(*choices):
            steps += 1
            if steps > budget:
                raise ResourceError(f"enumeration exceeded {budget} candidates (piece {piece.index})")
            edges = frozenset(e for part in pick for e in part)
            covered = {x for e in edges for x in e}
            ok = True
            uncovered: dict[int, int] = {}
            for v in range(1, n + 1):
                if v not in covered:
                    c = label[v]
                    uncovered[c] = uncovered.get(c, 0) + 1
            for c, k in uncovered.items():
                if c not in vertex_alpha or k > vertex_alpha[c]:
                    ok = False
                    break
            if ok:
                yield Graph(frozenset(range(1, n + 1)), edges), label


def enumerate_family(family: Family, max_vertices: int | None = None) -> list[Graph]:
    """Canonical members with at most ``max_vertices`` vertices, sorted."""
    if max_vertices is None:
        if family.rank > 1:
            raise ValueError("family is infinite; give max_vertices")
        max_vertices = max((pc.finite_size() for pc in family.pieces), default=0)
    seen: dict[tuple, Graph] = {}
    if family.accepts_empty:
        seen[((), ())] = Graph.empty()
    cap = family.caps.canon_vertices
    for pc in family.pieces:
        for g, _ in piece_graphs(pc, max_vertices, budget=family.caps.search_budget):
            order, bits = canonical_order(g, cap)
            key = (g.n, bits)
            if key not in seen:
                seen[key] = g.relabel({v: i for i, v in enumerate(order, start=1)})
    return [seen[k] for k in sorted(seen)]


# -- chromatic number ----------------------------------------------------------

def chromatic_number(g: Graph) -> int:
    """Exact chromatic number of the undirected simplification."""
    h = undirected_simplification(g)
    verts = sorted(h.vertices, key=lambda v: -sum(1 for e in h.edges if e[0] == v))
    if not verts:
        return 0
    adj = {v: {u for (x, u) in h.edges if x == v} for v in verts}
    for k in range(1, len(verts) + 1):
        color: dict[int, int] = {}

        def rec(i):
            if i == len(verts):
                return True
            v = verts[i]
            used = {color[u] for u in adj[v] if u in color}
            # symmetry: never open more than one new color at a time
            top = min(k, max(color.values(), default=-1) + 2)
            for col in range(top):
                if col not in used:
                    color[v] = col
                    if rec(i + 1):
                        return True
                    del color[v]
            return False

        if rec(0):
            return k
    return len(verts)


def chromatic_bound_caps(piece: FamilyPiece) -> dict[int, int]:
    """Per big class, the vertex count that suffices for the maximum chromatic number.

    Vertices of a big class without same-class edges can be merged into one;
    same-class edges touch at most twice the letter's multiplicity.
    """
    caps = {}
    for c in piece.big_classes:
        z = Letter("E", (c, c))
        k = int(piece.alpha[z]) if z in piece.alpha else 0
        caps[c] = 2 * k + 1
    return caps


def chromatic_sup(family: Family) -> float:
    if any(pc.rank == 4 for pc in family.pieces):
        return INF
    best = 0
    for pc in family.pieces:
        caps = chromatic_bound_caps(pc)
        limit = len(pc.small_classes) + sum(caps.values())
        for g, _ in piece_graphs(pc, limit, maximal=True, class_caps=caps, budget=family.caps.search_budget):
            best = max(best, chromatic_number(g))
    return best


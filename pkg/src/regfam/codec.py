"""Words over {a, b} as finite directed graphs.

Vertex ``i`` is written ``a b^i a`` and the edge ``(i, j)`` is written
``a b^i aaa b^j a``.  A word of the code language is any concatenation of such
codewords; the graph it denotes depends only on the set of codewords used.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .config import DEFAULT_CAPS
from .errors import ParseError, ResourceError


@dataclass(frozen=True)
class Graph:
    """Finite directed graph on positive integer vertex names; loops allowed."""

    vertices: frozenset[int]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "edges", frozenset((int(u), int(v)) for u, v in self.edges))
        for u, v in self.edges:
            if u not in self.vertices or v not in self.vertices:
                raise ValueError(f"edge ({u},{v}) has an endpoint outside the vertex set")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]] = ()) -> "Graph":
        return cls(frozenset(range(1, n + 1)), frozenset(edges))

    @classmethod
    def empty(cls) -> "Graph":
        return cls(frozenset(), frozenset())

    @property
    def n(self) -> int:
        return len(self.vertices)

    def isolated(self) -> frozenset[int]:
        touched = {u for e in self.edges for u in e}
        return frozenset(v for v in self.vertices if v not in touched)

    def relabel(self, mapping: dict[int, int]) -> "Graph":
        return Graph(
            frozenset(mapping[v] for v in self.vertices),
            frozenset((mapping[u], mapping[v]) for u, v in self.edges),
        )

    def dense(self) -> "Graph":
        """Order-preserving relabeling onto 1..n."""
        mapping = {v: i for i, v in enumerate(sorted(self.vertices), start=1)}
        return self.relabel(mapping)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = max(self.vertices, default=0)
        moved = other.relabel({v: v + shift for v in other.vertices})
        return Graph(self.vertices | moved.vertices, self.edges | moved.edges)

    def induced(self, keep: Iterable[int]) -> "Graph":
        keep = frozenset(keep)
        return Graph(keep, frozenset(e for e in self.edges if e[0] in keep and e[1] in keep))

    def to_text(self) -> str:
        g = self.dense()
        lines = [f"n={g.n}"]
        lines += [f"e {u} {v}" for u, v in sorted(g.edges)]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        n = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if n is None:
                key, _, value = line.partition("=")
                if key.strip() != "n" or not value.strip().isdigit():
                    raise ParseError(f"line {lineno}: expected 'n=<count>', got {raw!r}")
                n = int(value)
                continue
            parts = line.split()
            if len(parts) != 3 or parts[0] != "e" or not (parts[1].isdigit() and parts[2].isdigit()):
                raise ParseError(f"line {lineno}: expected 'e <u> <v>', got {raw!r}")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"line {lineno}: endpoint outside 1..{n}")
            edges.append((u, v))
        if n is None:
            raise ParseError("missing 'n=<count>' line")
        return cls.from_edges(n, edges)

    def __repr__(self):
        return f"Graph(V={sorted(self.vertices)}, E={sorted(self.edges)})"


# -- codewords ---------------------------------------------------------------

def vertex_word(i: int) -> str:
    return "a" + "b" * i + "a"


def edge_word(i: int, j: int) -> str:
    return "a" + "b" * i + "aaa" + "b" * j + "a"


def codeword(item: tuple[int, ...]) -> str:
    return vertex_word(*item) if len(item) == 1 else edge_word(*item)


def split_codewords(w: str) -> list[tuple[int, ...]]:
    """Greedy left-to-right factorization of ``w`` into codewords.

    Returns ``(i,)`` for a vertex codeword and ``(i, j)`` for an edge codeword.
    The code is prefix-decodable: after ``a b^i a`` an edge continues iff the
    next three letters are ``aab``.
    """
    out = []
    k, n = 0, len(w)

    def block(pos):
        end = pos
        while end < n and w[end] == "b":
            end += 1
        return end

    while k < n:
        if w[k] != "a":
            raise ParseError("codeword must start with 'a'", k)
        end = block(k + 1)
        if end == k + 1:
            raise ParseError("expected 'b' after 'a'", k + 1)
        if end >= n or w[end] != "a":
            raise ParseError("unterminated b-block", end)
        i = end - k - 1
        k = end + 1
        if w.startswith("aab", k):
            end = block(k + 2)
            if end >= n or w[end] != "a":
                raise ParseError("unterminated b-block", end)
            out.append((i, end - k - 2))
            k = end + 1
        else:
            out.append((i,))
    return out


def is_in_G(w: str) -> bool:
    if set(w) - {"a", "b"}:
        return False
    try:
        split_codewords(w)
    except ParseError:
        return False
    return True


def graph_of_items(items: Iterable[tuple[int, ...]]) -> Graph:
    vertices, edges = set(), set()
    for item in items:
        vertices.update(item)
        if len(item) == 2:
            edges.add(item)
    return Graph(frozenset(vertices), frozenset(edges))


def decode(w: str) -> Graph:
    bad = set(w) - {"a", "b"}
    if bad:
        raise ParseError(f"letters outside {{a,b}}: {''.join(sorted(bad))}")
    return graph_of_items(split_codewords(w))


def _concat_min(words: list[str]) -> str:
    # x+y < y+x ordering gives the lexicographically least concatenation
    key = functools.cmp_to_key(lambda x, y: (x + y > y + x) - (x + y < y + x))
    return "".join(sorted(words, key=key))


def encode(g: Graph, cap: int = DEFAULT_CAPS.canon_vertices) -> str:
    """Short-lex least word of shape (edges)(isolated vertices) denoting ``g``."""
    if g.n > cap:
        raise ResourceError(f"encode: {g.n} vertices exceeds cap {cap}")
    verts = sorted(g.vertices)
    iso = g.isolated()
    best = None
    for perm in itertools.permutations(range(1, g.n + 1)):
        name = dict(zip(verts, perm))
        length = sum(name[u] + name[v] + 5 for u, v in g.edges) + sum(name[v] + 2 for v in iso)
        if best is not None and length > len(best):
            continue
        word = _concat_min([edge_word(name[u], name[v]) for u, v in g.edges]) + _concat_min(
            [vertex_word(name[v]) for v in iso]
        )
        if best is None or (len(word), word) < (len(best), best):
            best = word
    return best if best is not None else ""


# -- isomorphism ---------------------------------------------------------------

def _swap_automorphisms(g: Graph, verts: list[int]) -> set[tuple[int, int]]:
    out_n = {v: set() for v in verts}
    in_n = {v: set() for v in verts}
    for u, v in g.edges:
        out_n[u].add(v)
        in_n[v].add(u)
    twins = set()
    for u, v in itertools.combinations(verts, 2):
        if ((u, u) in g.edges) != ((v, v) in g.edges):
            continue
        if ((u, v) in g.edges) != ((v, u) in g.edges):
            continue
        if out_n[u] - {u, v} != out_n[v] - {u, v} or in_n[u] - {u, v} != in_n[v] - {u, v}:
            continue
        twins.add((u, v))
        twins.add((v, u))
    return twins


def canonical_order(g: Graph, cap: int = DEFAULT_CAPS.canon_vertices) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Vertex order minimizing the non-adjacency bit string, and that bit string.

    Bits are read shell by shell: for position k, the loop bit of k, then
    the pairs (i, k), (k, i) for i < k; a bit is 0 for an edge, so edges
    land on the smallest labels.  Branch and bound over all orders;
    branches that swap two structural twins are skipped as they give
    identical strings.
    """
    if g.n > cap:
        raise ResourceError(f"canonical form: {g.n} vertices exceeds cap {cap}")
    verts = sorted(g.vertices)
    edges = g.edges
    twins = _swap_automorphisms(g, verts)
    best_bits: list[int] | None = None
    best_order: list[int] | None = None

    def shell(order, v):
        bits = [0 if (v, v) in edges else 1]
        for u in order:
            bits.append(0 if (u, v) in edges else 1)
            bits.append(0 if (v, u) in edges else 1)
        return bits

    def rec(order, remaining, bits):
        nonlocal best_bits, best_order
        if not remaining:
            if best_bits is None or bits < best_bits:
                best_bits, best_order = bits, list(order)
            return
        tried = []
        for v in remaining:
            if any((u, v) in twins for u in tried):
                continue
            tried.append(v)
            new = bits + shell(order, v)
            if best_bits is not None and new > best_bits[: len(new)]:
                continue
            order.append(v)
            rec(order, [x for x in remaining if x != v], new)
            order.pop()

    rec([], verts, [])
    return tuple(best_order or ()), tuple(best_bits or ())


def canonical_form(g: Graph, cap: int = DEFAULT_CAPS.canon_vertices) -> Graph:
    order, _ = canonical_order(g, cap)
    return g.relabel({v: i for i, v in enumerate(order, start=1)})


def is_isomorphic(g: Graph, h: Graph, cap: int = DEFAULT_CAPS.canon_vertices) -> bool:
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    return canonical_form(g, cap) == canonical_form(h, cap)


def undirected_simplification(g: Graph) -> Graph:
    edges = {(u, v) for u, v in g.edges if u != v}
    edges |= {(v, u) for u, v in edges}
    return Graph(g.vertices, frozenset(edges))


def all_graphs(n: int, loops: bool = True) -> Iterator[Graph]:
    """Every labeled digraph on 1..n (desk scale only)."""
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if loops or u != v]
    for mask in range(1 << len(pairs)):
        yield Graph.from_edges(n, (pairs[i] for i in range(len(pairs)) if mask >> i & 1))

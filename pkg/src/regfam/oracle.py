"""Brute-force ground truth by enumerating accepted words."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .automata import Dfa
from .codec import Graph, canonical_order, codeword, decode
from .config import DEFAULT_CAPS


def _distance_to_accept(d: Dfa) -> list[float]:
    """Shortest number of letters from each state to an accepting state."""
    inf = float("inf")
    dist = [inf] * d.n
    back = [[] for _ in range(d.n)]
    for q, row in enumerate(d.delta):
        for r in row:
            back[r].append(q)
    queue = deque()
    for q in d.accepting:
        dist[q] = 0
        queue.append(q)
    while queue:
        r = queue.popleft()
        for q in back[r]:
            if dist[q] == inf:
                dist[q] = dist[r] + 1
                queue.append(q)
    return dist


def enumerate_words(d: Dfa, max_len: int, cap: int = DEFAULT_CAPS.oracle_max_len) -> Iterator[str]:
    """Accepted words by length, then lexicographically."""
    if max_len > cap:
        raise ValueError(f"max_len {max_len} exceeds cap {cap}")
    dist = _distance_to_accept(d)
    layer = [("", d.start)] if dist[d.start] <= max_len else []
    for length in range(max_len + 1):
        for w, q in layer:
            if q in d.accepting:
                yield w
        if length == max_len:
            break
        room = max_len - length - 1
        nxt = []
        for w, q in layer:
            for k, sym in enumerate(d.alphabet):
                r = d.delta[q][k]
                if dist[r] <= room:
                    nxt.append((w + sym, r))
        layer = nxt


@dataclass
class OracleRun:
    dfa: Dfa
    max_len: int
    max_vertices: int | None
    graphs: dict[tuple, Graph] = field(default_factory=dict)
    witnesses: dict[tuple, str] = field(default_factory=dict)
    too_large: int = 0

    def members(self) -> list[Graph]:
        return [self.graphs[k] for k in sorted(self.graphs)]

    def witness(self, g: Graph) -> str | None:
        return self.witnesses.get(graph_key(g))


def graph_key(g: Graph) -> tuple:
    return (g.n, canonical_order(g, max(g.n, 1))[1])


def oracle_members(
    d: Dfa,
    max_len: int,
    max_vertices: int | None = None,
    store_vertices: int = DEFAULT_CAPS.oracle_store_vertices,
    cap: int = DEFAULT_CAPS.oracle_max_len,
) -> OracleRun:
    """Canonical graphs of all accepted words up to ``max_len``.

    Explores words one codeword at a time.  Two prefixes reaching the same
    automaton state with the same labeled graph have the same futures, so only
    the shorter is kept.  Prefix graphs only grow, which justifies pruning by
    ``max_vertices``.
    """
    if max_len > cap:
        raise ValueError(f"max_len {max_len} exceeds cap {cap}")
    run = OracleRun(d, max_len, max_vertices)
    dist = _distance_to_accept(d)
    # codewords sorted by length; items are (length, item, word)
    items = []
    for i in range(1, max_len - 1):
        items.append((i + 2, (i,)))
        for j in range(1, max_len - i - 4):
            items.append((i + j + 5, (i, j)))
    items.sort()
    words = {it: codeword(it) for _, it in items}
    step_cache: dict[tuple[int, tuple], int] = {}

    def step(q, it):
        key = (q, it)
        r = step_cache.get(key)
        if r is None:
            r = d.run(words[it], q)
            step_cache[key] = r
        return r

    start = (d.start, frozenset(), frozenset())
    buckets: list[list[tuple]] = [[] for _ in range(max_len + 1)]
    best: dict[tuple, int] = {start: 0}
    prefix: dict[tuple, str] = {start: ""}
    if dist[d.start] <= max_len:
        buckets[0].append(start)
    for length in range(max_len + 1):
        for cfg in buckets[length]:
            if best[cfg] != length:
                continue
            q, verts, edges = cfg
            w = prefix[cfg]
            if q in d.accepting:
                _record(run, verts, edges, w, store_vertices)
            room = max_len - length
            for size, it in items:
                if size > room:
                    break
                r = step(q, it)
                if dist[r] > room - size:
                    continue
                nv = verts | set(it)
                if max_vertices is not None and len(nv) > max_vertices:
                    continue
                ne = edges | {it} if len(it) == 2 else edges
                nxt = (r, nv, ne)
                nl = length + size
                if nxt not in best or best[nxt] > nl:
                    best[nxt] = nl
                    prefix[nxt] = w + words[it]
                    buckets[nl].append(nxt)
        buckets[length] = []
    return run


def _record(run: OracleRun, verts, edges, word: str, store_vertices: int):
    if run.max_vertices is not None and len(verts) > run.max_vertices:
        return
    if len(verts) > store_vertices:
        run.too_large += 1
        return
    g = Graph(frozenset(verts), frozenset(edges))
    key = graph_key(g)
    old = run.witnesses.get(key)
    if old is None or (len(word), word) < (len(old), old):
        order, _ = canonical_order(g, max(g.n, 1))
        run.graphs[key] = g.relabel({v: i for i, v in enumerate(order, start=1)})
        run.witnesses[key] = word


def verify_witness(d: Dfa, word: str, g: Graph) -> bool:
    """``word`` is accepted and decodes to a graph isomorphic to ``g``."""
    if not d.accepts(word):
        return False
    h = decode(word)
    return graph_key(h) == graph_key(g)

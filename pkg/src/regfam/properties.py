"""Deciding whether a family contains a graph with a given property.

Three strategies, tried in order per piece:

* hereditary properties only need members with at most ``core_size``
  vertices, since every member contains such a member as an induced subgraph;
* per-property shortcuts answer Yes when a piece can grow in a way that forces
  the property (for example unbounded stars for small dominating sets);
* otherwise members up to the plugin's witness bound are searched.  For
  edge-monotone properties only edge-maximal members are tried.
"""
from __future__ import annotations

import importlib
import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import networkx as nx

from .codec import Graph, undirected_simplification
from .errors import ResourceError
from .family import INF, Family, FamilyPiece, marked_graph, member, piece_graphs

Predicate = Callable[[Graph], bool]


# -- predicates on simple undirected graphs ------------------------------------

def _adjacency(g: Graph) -> dict[int, set[int]]:
    adj = {v: set() for v in g.vertices}
    for u, v in g.edges:
        if u != v:
            adj[u].add(v)
            adj[v].add(u)
    return adj


def has_hamiltonian_cycle(g: Graph) -> bool:
    if g.n < 3:
        return False
    adj = _adjacency(g)
    verts = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    nb = [0] * n
    for v in verts:
        for u in adj[v]:
            nb[idx[v]] |= 1 << idx[u]
    # reach[mask] = bitset of end vertices of paths from vertex 0 covering mask
    reach = [0] * (1 << n)
    reach[1] = 1
    for mask in range(1, 1 << n):
        ends = reach[mask]
        if not ends or not mask & 1:
            continue
        for v in range(n):
            if ends >> v & 1:
                new = nb[v] & ~mask
                while new:
                    low = new & -new
                    reach[mask | low] |= low
                    new ^= low
    full = (1 << n) - 1
    return bool(reach[full] & nb[0])


def has_perfect_matching(g: Graph) -> bool:
    if g.n == 0 or g.n % 2:
        return False
    adj = _adjacency(g)

    def rec(free: frozenset[int]) -> bool:
        if not free:
            return True
        v = min(free)
        return any(rec(free - {v, u}) for u in adj[v] if u in free)

    return rec(frozenset(g.vertices))


def _log_budget(n: int) -> int:
    return int(math.floor(math.log2(n))) if n else -1


def has_small_dominating_set(g: Graph) -> bool:
    """Dominating set of size at most log2 |V|."""
    k = _log_budget(g.n)
    if k < 1:
        return False
    adj = _adjacency(g)
    closed = {v: adj[v] | {v} for v in g.vertices}
    verts = sorted(g.vertices)
    for size in range(1, k + 1):
        for d in itertools.combinations(verts, size):
            covered = set().union(*(closed[v] for v in d))
            if len(covered) == g.n:
                return True
    return False


def has_small_defensive_alliance(g: Graph) -> bool:
    """Nonempty alliance of size at most log2 |V|."""
    k = _log_budget(g.n)
    if k < 1:
        return False
    adj = _adjacency(g)
    closed = {v: adj[v] | {v} for v in g.vertices}
    verts = sorted(g.vertices)
    for size in range(1, k + 1):
        for d in itertools.combinations(verts, size):
            ds = set(d)
            if all(2 * len(closed[v] & ds) >= len(closed[v]) for v in d):
                return True
    return False


def is_planar(g: Graph) -> bool:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from((u, v) for u, v in g.edges if u != v)
    return nx.check_planarity(h)[0]


def is_bipartite(g: Graph) -> bool:
    adj = _adjacency(g)
    side: dict[int, int] = {}
    for s in g.vertices:
        if s in side:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in side:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    return False
    return True


def has_triangle(g: Graph) -> bool:
    adj = _adjacency(g)
    return any(adj[u] & adj[v] for u in adj for v in adj[u] if u < v)


# -- plugins -------------------------------------------------------------------

@dataclass
class Verdict:
    answer: str  # "yes", "no" or "resource"
    witness: Optional[Graph] = None
    word: Optional[str] = None
    piece: Optional[int] = None
    reason: str = ""

    def to_json(self) -> dict:
        out: dict = {"answer": self.answer, "piece": self.piece, "reason": self.reason}
        if self.witness is not None:
            out["witnessGraph"] = self.witness.to_text()
        if self.word is not None:
            out["witnessWord"] = self.word
        return out


@dataclass
class PropertyPlugin:
    name: str
    predicate: Predicate
    hereditary: bool = False
    component_local: bool = False
    edge_monotone: bool = False
    directed: bool = False
    # piece -> vertex bound for a witness, or None when unbounded
    witness_bound: Optional[Callable[[FamilyPiece], Optional[int]]] = None
    # piece -> reason string when the piece certainly holds a witness
    shortcut: Optional[Callable[[FamilyPiece], Optional[str]]] = field(default=None, repr=False)

    def holds(self, g: Graph) -> bool:
        return self.predicate(g if self.directed else undirected_simplification(g))


def _f_size(pc: FamilyPiece) -> int:
    return max(len(marked_graph(pc).vertices), pc.core_size)


def hamiltonian_bound(pc: FamilyPiece) -> int:
    tor = pc.torsion
    k = _f_size(pc)
    return max((tor.p + 1) * (k + 2) + 1, 3, (tor.p + 1) * k + tor.t - 1)


def matching_bound(pc: FamilyPiece) -> int:
    return 2 * pc.core_size


def dominating_bound(pc: FamilyPiece) -> Optional[int]:
    if any(pc.alpha[z] == INF for z in pc.edge_letters):
        return None
    n = len(pc.small_classes) + len(pc.vertex_letters)
    n += sum(int(pc.alpha[z]) * pc.big_blocks(z) for z in pc.edge_letters)
    return n


def _unbounded_edge(pc: FamilyPiece) -> Optional[str]:
    for z in pc.edge_letters:
        if pc.alpha[z] == INF:
            return f"{z} is unbounded: stars of any size attach to a fixed vertex"
    return None


def _any_unbounded(pc: FamilyPiece) -> Optional[str]:
    for z in pc.letters:
        if pc.alpha[z] == INF:
            return f"{z} is unbounded: a vertex of degree at most one forms an alliance"
    return None


def _alliance_bound(pc: FamilyPiece) -> Optional[int]:
    return pc.finite_size() if pc.is_finite else None


HAMILTONIAN = PropertyPlugin(
    "hamiltonian", has_hamiltonian_cycle, edge_monotone=True, witness_bound=hamiltonian_bound
)
PERFECT_MATCHING = PropertyPlugin(
    "perfect-matching", has_perfect_matching, edge_monotone=True, witness_bound=matching_bound
)
DOMINATING_LOG = PropertyPlugin(
    "dominating-log",
    has_small_dominating_set,
    edge_monotone=True,
    witness_bound=dominating_bound,
    shortcut=_unbounded_edge,
)
DEFENSIVE_ALLIANCE_LOG = PropertyPlugin(
    "defensive-alliance-log",
    has_small_defensive_alliance,
    witness_bound=_alliance_bound,
    shortcut=_any_unbounded,
)
PLANAR = PropertyPlugin("planar", is_planar, hereditary=True)
BIPARTITE = PropertyPlugin("bipartite", is_bipartite, hereditary=True)
TRIANGLE = PropertyPlugin(
    "triangle",
    has_triangle,
    component_local=True,
    edge_monotone=True,
    witness_bound=lambda pc: pc.core_size + 3,
)

PLUGINS = {
    p.name: p
    for p in (HAMILTONIAN, PERFECT_MATCHING, DOMINATING_LOG, DEFENSIVE_ALLIANCE_LOG, PLANAR, BIPARTITE, TRIANGLE)
}


def load_custom(spec: str, **flags) -> PropertyPlugin:
    """Plugin from ``package.module:function``; flags as in PropertyPlugin."""
    mod_name, _, func_name = spec.partition(":")
    if not func_name:
        raise ValueError(f"custom property must look like module:function, got {spec!r}")
    func = getattr(importlib.import_module(mod_name), func_name)
    bound = flags.pop("bound", None)
    wb = None if bound is None else (lambda pc, b=bound: b)
    return PropertyPlugin(func_name, func, witness_bound=wb, **flags)


# -- the engine ----------------------------------------------------------------

def _probe_graphs(rank: int) -> list[Graph]:
    if rank == 4:
        out = [Graph.from_edges(1)]
        for n in range(2, 5):
            pairs = list(itertools.combinations(range(1, n + 1), 2))
            for mask in range(1, 1 << len(pairs)):
                out.append(Graph.from_edges(n, [pairs[i] for i in range(len(pairs)) if mask >> i & 1]))
        return out
    return [Graph.from_edges(k, [(i, i + 1) for i in range(1, k)]) for k in range(2, 7)]


def _attach(piece: FamilyPiece, base: Graph, h: Graph) -> Graph:
    """Disjoint union of ``base`` and ``h`` drawn on unbounded letters."""
    mg = marked_graph(piece)
    if mg.marked_loops():
        c = mg.marked_loops()[0][0]
        side = {v: c for v in h.vertices}
        loops = [(v, v) for v in h.vertices if not any(v in e for e in h.edges)]
    else:
        c, d = mg.doubly_marked()[0]
        colour = _two_colouring(h)
        side = {v: (c if colour[v] == 0 else d) for v in h.vertices}
        loops = []
    shift = max(base.vertices, default=0)
    edges = set(base.edges)
    for u, v in h.edges:
        if side[u] == side[v]:
            edges.add((u + shift, v + shift))
        else:
            a, b = (u, v) if side[u] == c else (v, u)
            edges.add((a + shift, b + shift))
    edges |= {(u + shift, v + shift) for u, v in loops}
    verts = set(base.vertices) | {v + shift for v in h.vertices}
    return Graph(frozenset(verts), frozenset(edges))


def _two_colouring(h: Graph) -> dict[int, int]:
    adj = _adjacency(h)
    out: dict[int, int] = {}
    for s in sorted(h.vertices):
        if s in out:
            continue
        out[s] = 0
        stack = [s]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in out:
                    out[u] = 1 - out[v]
                    stack.append(u)
    return out


def shrink_witness(family: Family, plugin: PropertyPlugin, g: Graph) -> Graph:
    """Greedily drop edges while the graph stays a member with the property."""
    edges = sorted(g.edges, key=lambda e: (e[0] != e[1], e), reverse=False)
    cur = g
    for e in edges:
        trial = Graph(cur.vertices, cur.edges - {e})
        if plugin.holds(trial) and member(family, trial, witness=False).member:
            cur = trial
    return cur


def _with_word(family: Family, g: Graph) -> Optional[str]:
    if g.n > family.caps.canon_vertices:
        return None
    res = member(family, g)
    if not res.member:
        raise AssertionError(f"constructed witness {g} is not a member")
    return res.word


def _search(family: Family, pc: FamilyPiece, plugin: PropertyPlugin, bound: int, maximal: bool):
    for g, labels in piece_graphs(pc, bound, maximal=maximal, budget=family.caps.search_budget):
        if plugin.holds(g):
            if g.n <= family.caps.canon_vertices:
                g = shrink_witness(family, plugin, g)
            return g, labels
    return None


def decide_piece(family: Family, pc: FamilyPiece, plugin: PropertyPlugin) -> Verdict:
    if plugin.hereditary:
        found = _search(family, pc, plugin, pc.core_size, maximal=False)
        if found:
            return Verdict("yes", found[0], _with_word(family, found[0]), pc.index, "small induced member")
        return Verdict("no", piece=pc.index, reason=f"no member with at most {pc.core_size} vertices")
    if plugin.shortcut is not None:
        why = plugin.shortcut(pc)
        if why:
            found = _search(family, pc, plugin, min(pc.core_size + 4, family.caps.canon_vertices), True)
            g = found[0] if found else None
            return Verdict("yes", g, _with_word(family, g) if g else None, pc.index, why)
    if plugin.component_local and pc.rank >= 3:
        probes = [h for h in _probe_graphs(pc.rank) if plugin.holds(h)]
        if probes:
            core = next(piece_graphs(pc, pc.core_size, budget=family.caps.search_budget))
            g = _attach(pc, core[0], probes[0])
            return Verdict("yes", g, _with_word(family, g), pc.index, "component attached to an unbounded part")
    bound = plugin.witness_bound(pc) if plugin.witness_bound else None
    if bound is None:
        return Verdict("resource", piece=pc.index, reason="no witness bound for this piece")
    found = _search(family, pc, plugin, bound, maximal=plugin.edge_monotone)
    if found:
        return Verdict("yes", found[0], _with_word(family, found[0]), pc.index, f"found searching members up to {bound} vertices")
    return Verdict("no", piece=pc.index, reason=f"no member with at most {bound} vertices")


def decide(family: Family, plugin: PropertyPlugin) -> Verdict:
    if family.accepts_empty and plugin.holds(Graph.empty()):
        return Verdict("yes", Graph.empty(), "", None, "empty graph")
    pending = None
    for pc in family.pieces:
        try:
            v = decide_piece(family, pc, plugin)
        except ResourceError as exc:
            v = Verdict("resource", piece=pc.index, reason=str(exc))
        if v.answer == "yes":
            return v
        if v.answer == "resource" and pending is None:
            pending = v
    return pending or Verdict("no", reason="no piece holds a witness")


def hamiltonian(family: Family) -> Verdict:
    return decide(family, HAMILTONIAN)


def perfect_matching(family: Family) -> Verdict:
    return decide(family, PERFECT_MATCHING)


def dominating_set_log(family: Family) -> Verdict:
    return decide(family, DOMINATING_LOG)


def defensive_alliance_log(family: Family) -> Verdict:
    return decide(family, DEFENSIVE_ALLIANCE_LOG)

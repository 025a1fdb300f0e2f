import pytest
from corpus import RANDOM
from oracles import re_language

from regfam.automata import Dfa, compile_regex
from regfam.codec import Graph, decode
from regfam.family import analyze, enumerate_family
from regfam.languages import CLIQUES, SINGLE_VERTEX, STARS, crown_regex
from regfam.oracle import enumerate_words, graph_key, oracle_members, verify_witness


def star(rays: int) -> Graph:
    return Graph.from_edges(rays + 1, [(1, k) for k in range(2, rays + 2)])


class TestWords:
    def test_single_vertex(self):
        d = compile_regex(SINGLE_VERTEX)
        assert list(enumerate_words(d, 5)) == ["aba"]
        assert list(enumerate_words(d, 7)) == ["aba", "abaaba"]

    def test_cliques(self):
        d = compile_regex(CLIQUES)
        assert list(enumerate_words(d, 8)) == ["abaaaba", "abaaabba", "abbaaaba"]

    def test_matches_re_in_order(self):
        rx = "(abaaabbb*a)*(aba)"
        got = list(enumerate_words(compile_regex(rx), 20))
        assert got == sorted(re_language(rx, 20), key=lambda w: (len(w), w))

    def test_empty_language(self):
        empty = Dfa(("a", "b"), ((0, 0),), 0, frozenset())
        assert list(enumerate_words(empty, 10)) == []
        assert list(enumerate_words(analyze("a*", warn=False).dfa, 10)) == [""]

    def test_cap(self):
        with pytest.raises(ValueError):
            list(enumerate_words(compile_regex("a*"), 100))


class TestMembers:
    def test_single_vertex(self):
        run = oracle_members(compile_regex(SINGLE_VERTEX), 12, 3)
        assert run.members() == [Graph.from_edges(1)]
        assert run.witness(Graph.from_edges(1)) == "aba"

    def test_stars(self):
        run = oracle_members(compile_regex(STARS), 40, 4)
        want = {graph_key(star(k)) for k in range(4)}
        assert set(run.graphs) == want

    def test_crown_three(self):
        fam = analyze(crown_regex(3))
        run = oracle_members(fam.dfa, 64)
        # the 8 cusp subsets fall into 4 classes under rotation of the directed triangle
        assert run.members() == enumerate_family(fam)
        assert len(run.graphs) == 4

    def test_witnesses_verify(self):
        d = compile_regex(STARS)
        run = oracle_members(d, 30)
        for g in run.members():
            w = run.witness(g)
            assert verify_witness(d, w, g)
            assert graph_key(decode(w)) == graph_key(g)

    def test_large_graphs_counted_not_stored(self):
        run = oracle_members(compile_regex(STARS), 40, store_vertices=2)
        assert run.too_large > 0
        assert all(g.n <= 2 for g in run.members())

    def test_verify_rejects(self):
        d = compile_regex(STARS)
        assert not verify_witness(d, "abaaabba", star(1))
        assert not verify_witness(d, "abaaabbaaba", star(2))


@pytest.mark.parametrize("rx, length", [(SINGLE_VERTEX, 12), (crown_regex(3), 64), (RANDOM[0], 30)])
def test_finite_families_stabilize(rx, length):
    fam = analyze(rx, warn=False)
    assert fam.rank == 1
    a = oracle_members(fam.dfa, length, cap=80)
    b = oracle_members(fam.dfa, length + 10, cap=80)
    assert set(a.graphs) == set(b.graphs)

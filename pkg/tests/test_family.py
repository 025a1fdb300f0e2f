import json

import pytest
from corpus import CORPUS, CROWNS

from regfam.alphabet import Letter
from regfam.codec import Graph, decode, is_isomorphic
from regfam.family import (
    INF,
    FamilyPiece,
    analyze,
    chromatic_number,
    chromatic_sup,
    enumerate_family,
    marked_graph,
    member,
    piece_graphs,
    width_bounds,
    witness_length_bound,
)
from regfam.languages import BICLIQUES, CLIQUES, SINGLE_VERTEX, STARS
from regfam.oracle import oracle_members


@pytest.fixture(scope="module")
def fams():
    return {rx: analyze(rx, warn=False) for rx in CORPUS}


def star(rays: int) -> Graph:
    return Graph.from_edges(rays + 1, [(1, k) for k in range(2, rays + 2)])


def alpha_of(fam, piece=0):
    return {str(z): a for z, a in fam.pieces[piece].alpha.items()}


class TestPieces:
    def test_single_vertex(self, fams):
        fam = fams[SINGLE_VERTEX]
        assert len(fam.pieces) == 1
        assert alpha_of(fam) == {"V(1)": 1}
        assert fam.pieces[0].is_finite

    def test_cliques(self, fams):
        fam = fams[CLIQUES]
        assert len(fam.pieces) == 1
        assert alpha_of(fam) == {"E(1,1)": INF}

    def test_single_word(self):
        fam = analyze("abaaabba")
        assert fam.torsion.t == 3
        assert alpha_of(fam) == {"E(1,2)": 1}
        assert fam.rank == 1

    @pytest.mark.parametrize("rx", CORPUS)
    def test_pieces_are_normal(self, fams, rx):
        for pc in fams[rx].pieces:
            r = pc.r
            assert all(x >= y for x, y in zip(pc.base, r))
            assert all(pc.base[i] >= 1 for i, z in enumerate(pc.alphabet.letters) if z in pc.alpha)
            for z, a in pc.alpha.items():
                i = pc.alphabet.index(z)
                big = any(pc.torsion.is_big(c) for c in z.blocks)
                assert a == (1 if not big else (pc.base[i] if r[i] == 0 else INF))

    def test_image_contains_pieces(self, fams):
        for rx in CORPUS:
            fam = fams[rx]
            for pc in fam.pieces:
                assert fam.image.contains(pc.base)
                assert fam.image.contains(tuple(x + y for x, y in zip(pc.base, pc.r)))


class TestMarkedGraph:
    def test_cliques(self, fams):
        mg = marked_graph(fams[CLIQUES].pieces[0])
        assert mg.to_json() == {"vertices": [1], "edges": [[1, 1]], "marks": ["v1", "e1-1"]}
        assert mg.marked_loops() == [(1, 1)]

    def test_single_vertex(self, fams):
        assert marked_graph(fams[SINGLE_VERTEX].pieces[0]).to_json() == {"vertices": [1], "edges": [], "marks": []}

    def test_stars(self, fams):
        fam = fams[STARS]
        (pc,) = [pc for pc in fam.pieces if pc.edge_letters]
        mg = marked_graph(pc)
        assert mg.graph == Graph.from_edges(2, [(1, 2)])
        assert mg.marked_vertices == {2}
        assert mg.marked_edges == {(1, 2)}

    @pytest.mark.parametrize("rx", CORPUS)
    def test_mark_rules(self, fams, rx):
        for pc in fams[rx].pieces:
            mg = marked_graph(pc)
            for e in mg.marked_edges:
                assert set(e) & mg.marked_vertices
            touched = {c for e in mg.edges for c in e}
            assert len([v for v in mg.marked_vertices if v not in touched]) <= 1


class TestRank:
    @pytest.mark.parametrize("rx, rank", [(CLIQUES, 4), (STARS, 2), (SINGLE_VERTEX, 1), (BICLIQUES, 3)] + [(c, 1) for c in CROWNS])
    def test_examples(self, fams, rx, rank):
        assert fams[rx].rank == rank

    @pytest.mark.parametrize("rx", CORPUS)
    def test_dropping_a_period_never_raises_rank(self, fams, rx):
        for pc in fams[rx].pieces:
            for p in pc.periods:
                smaller = FamilyPiece(pc.index, pc.alphabet, pc.base, tuple(x for x in pc.periods if x != p))
                assert smaller.rank <= pc.rank


class TestMember:
    def test_star_and_triangle(self, fams):
        fam = fams[STARS]
        res = member(fam, star(3))
        assert res.member
        assert fam.dfa.accepts(res.word)
        assert is_isomorphic(decode(res.word).dense(), star(3))
        assert not member(fam, Graph.from_edges(3, [(1, 2), (2, 3), (3, 1)])).member

    def test_known_star_word(self, fams):
        w = "abaaabba" + "abaaabbba" + "abaaabbbba" + "aba"
        assert fams[STARS].dfa.accepts(w)
        assert is_isomorphic(decode(w).dense(), star(3))

    def test_biclique(self, fams):
        k22 = Graph.from_edges(4, [(1, 3), (1, 4), (2, 3), (2, 4)])
        res = member(fams[CLIQUES], k22)
        assert res.member
        assert fams[CLIQUES].dfa.accepts(res.word)
        assert is_isomorphic(decode(res.word).dense(), k22)

    def test_empty_graph(self, fams):
        assert not member(fams[SINGLE_VERTEX], Graph.empty()).member
        assert member(analyze("(aba)*"), Graph.empty()).member

    def test_witness_within_bound(self, fams):
        for rx in (STARS, CLIQUES, BICLIQUES):
            fam = fams[rx]
            for g in enumerate_family(fam, 3):
                res = member(fam, g)
                assert len(res.word) <= witness_length_bound(res.assignment, g)

    def test_assignment_names_distinct(self, fams):
        res = member(fams[CLIQUES], Graph.from_edges(3, [(1, 2), (2, 3)]))
        names = res.assignment.names()
        assert len(set(names.values())) == 3

    def test_rank_three_union_with_square(self, fams):
        fam = fams[BICLIQUES]
        (pc,) = [pc for pc in fam.pieces if pc.rank == 3]
        f = marked_graph(pc).graph.dense()
        square = Graph.from_edges(4, [(1, 2), (3, 2), (3, 4), (1, 4)])
        assert member(fam, f.disjoint_union(square)).member

    def test_rank_four_union_with_triangle(self, fams):
        fam = fams[CLIQUES]
        f = marked_graph(fam.pieces[0]).graph.dense()
        tri = Graph.from_edges(3, [(1, 2), (2, 3), (3, 1)])
        assert member(fam, f.disjoint_union(tri)).member


class TestEnumerate:
    def test_single_vertex(self, fams):
        assert enumerate_family(fams[SINGLE_VERTEX]) == [Graph.from_edges(1)]

    def test_crowns(self, fams):
        assert [len(enumerate_family(fams[c])) for c in CROWNS] == [4, 6, 8]

    def test_infinite_needs_bound(self, fams):
        with pytest.raises(ValueError):
            enumerate_family(fams[STARS])

    def test_cliques_two_vertices_match_oracle(self, fams):
        fam = fams[CLIQUES]
        got = enumerate_family(fam, 2)
        run = oracle_members(fam.dfa, 40, 2)
        assert got == run.members()
        # one looped vertex, plus 8 edge sets covering two vertices up to swapping them
        assert len(got) == 9

    @pytest.mark.parametrize("rx", CORPUS)
    def test_class_map_is_a_morphism_onto_f(self, fams, rx):
        for pc in fams[rx].pieces:
            f = marked_graph(pc, collapse=False)
            f_edges = set(f.edges)
            for g, label in piece_graphs(pc, 4):
                image = {(label[u], label[v]) for u, v in g.edges}
                assert image == f_edges
                assert set(label.values()) == set(f.vertices)


class TestChromatic:
    def test_examples(self, fams):
        assert chromatic_sup(fams[CLIQUES]) == INF
        assert chromatic_sup(fams[STARS]) == 2
        assert chromatic_sup(fams[SINGLE_VERTEX]) == 1
        assert chromatic_sup(fams[BICLIQUES]) == 2

    def test_chromatic_number(self):
        assert chromatic_number(Graph.from_edges(3, [(1, 2), (2, 3), (3, 1), (1, 1)])) == 3
        assert chromatic_number(Graph.from_edges(4, [(1, 2), (2, 3), (3, 4), (4, 1)])) == 2
        assert chromatic_number(Graph.empty()) == 0

    def test_finite_families_by_enumeration(self, fams):
        for rx in CROWNS:
            fam = fams[rx]
            assert chromatic_sup(fam) == max(chromatic_number(g) for g in enumerate_family(fam))


class TestWidthBounds:
    def test_examples(self, fams):
        (pc,) = [pc for pc in fams[STARS].pieces if pc.edge_letters]
        assert width_bounds(pc) == (2, 2)
        assert width_bounds(fams[SINGLE_VERTEX].pieces[0]) == (1, 1)
        assert width_bounds(fams[BICLIQUES].pieces[0]) is None


def test_report_is_json(fams):
    rep = fams[STARS].report()
    assert json.loads(json.dumps(rep)) == rep
    assert rep["overallRank"] == 2
    assert rep["torsion"] == {"t": 2, "p": 1}
    assert rep["alphabet"] == ["E(1,2)", "V(1)"]
    assert set(rep["pieces"][0]) == {"q", "periods", "alpha", "markedGraph", "rank", "widthBounds"}


def test_vertex_letter_parse():
    assert str(Letter("V", (3,))) == "V(3)"

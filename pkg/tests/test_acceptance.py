"""Acceptance gate: seven end-to-end criteria, one PASS/FAIL line each.

Run under pytest, or directly with ``python3 tests/test_acceptance.py``.
"""
from __future__ import annotations

import random
import sys
import time
from pathlib import Path

import networkx as nx
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from corpus import CORPUS  # noqa: E402
from oracles import closure_star, closure_sum, random_pieces, sampled_torsion, set_members  # noqa: E402

from regfam.automata import compile_regex, torsion_pair  # noqa: E402
from regfam.family import INF, analyze, chromatic_sup, enumerate_family, member, witness_length_bound  # noqa: E402
from regfam.languages import BICLIQUES, CLIQUES, SINGLE_VERTEX, STARS, crown_regex  # noqa: E402
from regfam.oracle import graph_key, oracle_members, verify_witness  # noqa: E402
from regfam.properties import PLUGINS, decide  # noqa: E402
from regfam.semilinear import LinearPiece, SemilinearSet, box  # noqa: E402

ORACLE_LEN = 40


def criterion_1() -> list[str]:
    fails = []
    for rx, want in [(CLIQUES, 4), (STARS, 2), (SINGLE_VERTEX, 1), (BICLIQUES, 3)]:
        t0 = time.perf_counter()
        got = analyze(rx).rank
        dt = time.perf_counter() - t0
        if got != want:
            fails.append(f"{rx}: rank {got}, want {want}")
        if dt >= 5:
            fails.append(f"{rx}: {dt:.1f}s")
    return fails


def criterion_2() -> list[str]:
    fails = []
    t0 = time.perf_counter()
    for rx in CORPUS:
        fam = analyze(rx, warn=False)
        run = oracle_members(fam.dfa, ORACLE_LEN)
        if run.too_large:
            fails.append(f"{rx}: {run.too_large} oracle graphs too large to check")
        for g in run.members():
            if not member(fam, g, witness=False).member:
                fails.append(f"{rx}: oracle graph {g} rejected")
        found = set(run.graphs)
        for g in enumerate_family(fam, 4):
            res = member(fam, g)
            if not res.member:
                fails.append(f"{rx}: enumerated {g} rejected")
                continue
            bound = witness_length_bound(res.assignment, g)
            if len(res.word) > bound or not verify_witness(fam.dfa, res.word, g):
                fails.append(f"{rx}: bad witness for {g}")
            elif len(res.word) <= ORACLE_LEN and graph_key(g) not in found:
                fails.append(f"{rx}: {g} has a witness of length {len(res.word)} but the oracle missed it")
    dt = time.perf_counter() - t0
    if dt >= 300:
        fails.append(f"runtime {dt:.0f}s")
    return fails


def _crown_brute(n: int) -> int:
    """Cusp subsets of the directed n-cycle, deduplicated with networkx."""
    reps: list[nx.DiGraph] = []
    for mask in range(1 << n):
        h = nx.DiGraph([(i, i % n + 1) for i in range(1, n + 1)])
        h.add_edges_from((n + i, i) for i in range(1, n + 1) if mask >> (i - 1) & 1)
        if not any(nx.is_isomorphic(h, r) for r in reps):
            reps.append(h)
    return len(reps)


def criterion_3() -> list[str]:
    got = len(enumerate_family(analyze(crown_regex(5))))
    brute = _crown_brute(5)
    fails = []
    if got != 8 or brute != 8:
        fails.append(f"enumerate {got}, brute force {brute}, want 8")
    if not got > 2**5 / (2 * 5):
        fails.append("count not above 2^n/2n")
    return fails


def criterion_4() -> list[str]:
    fails = []
    for rx, want in [(CLIQUES, INF), (STARS, 2), (SINGLE_VERTEX, 1)]:
        got = chromatic_sup(analyze(rx))
        if got != want:
            fails.append(f"{rx}: {got}, want {want}")
    return fails


def criterion_5() -> list[str]:
    fails = []
    t0 = time.perf_counter()
    checks = [(CLIQUES, name, "yes") for name in ("hamiltonian", "perfect-matching", "dominating-log", "defensive-alliance-log")]
    checks.append((STARS, "hamiltonian", "no"))
    runs = {}
    for rx, name, want in checks:
        fam = analyze(rx)
        plugin = PLUGINS[name]
        v = decide(fam, plugin)
        if v.answer != want:
            fails.append(f"{name} on {rx}: {v.answer}, want {want}")
            continue
        if rx not in runs:
            runs[rx] = oracle_members(fam.dfa, ORACLE_LEN)
        sat = [g for g in runs[rx].members() if plugin.holds(g)]
        if want == "no" and sat:
            fails.append(f"{name} on {rx}: oracle found {sat[0]}")
        if want == "yes":
            if not (v.witness is not None and plugin.holds(v.witness) and verify_witness(fam.dfa, v.word, v.witness)):
                fails.append(f"{name} on {rx}: witness does not check out")
            elif not sat:
                fails.append(f"{name} on {rx}: oracle has no satisfying member")
    dt = time.perf_counter() - t0
    if dt >= 60:
        fails.append(f"runtime {dt:.0f}s")
    return fails


def criterion_6() -> list[str]:
    fails = []
    for rx, want in [(SINGLE_VERTEX, (2, 1)), (CLIQUES, (1, 1)), (BICLIQUES, None)]:
        tor = torsion_pair(compile_regex(rx))
        got = (tor.t, tor.p)
        sampled = sampled_torsion(rx, 8)
        if want is not None and got != want:
            fails.append(f"{rx}: {got}, want {want}")
        if want is None and tor.p != 2:
            fails.append(f"{rx}: period {tor.p}, want 2")
        if sampled != got:
            fails.append(f"{rx}: congruence sampling gives {sampled}, automaton gives {got}")
    return fails


def criterion_7(instances: int = 50, bound: int = 6) -> list[str]:
    fails = []
    rng = random.Random(2024)
    for k in range(instances):
        dim = rng.choice([1, 2, 3])
        a_spec = random_pieces(rng, dim, rng.randint(1, 3), max_periods=3)
        b_spec = random_pieces(rng, dim, rng.randint(1, 2))
        a = SemilinearSet(dim, tuple(LinearPiece(q, tuple(p)) for q, p in a_spec))
        b = SemilinearSet(dim, tuple(LinearPiece(q, tuple(p)) for q, p in b_spec))
        ma, mb = set_members(a_spec, bound), set_members(b_spec, bound)
        want = {
            "normalize": ma,
            "sum": closure_sum(ma, mb, bound),
            "star": closure_star(ma, dim, bound),
        }
        got = {"normalize": a.normalize(), "sum": a.sum(b), "star": a.star()}
        for op, s in got.items():
            bad = [v for v in box(dim, bound) if s.contains(v) != (v in want[op])]
            if bad:
                fails.append(f"instance {k} {op}: disagrees at {bad[0]}")
    return fails


CRITERIA = [
    (1, "rank reproduction", criterion_1),
    (2, "oracle equivalence", criterion_2),
    (3, "crown count", criterion_3),
    (4, "chromatic supremum", criterion_4),
    (5, "property engines", criterion_5),
    (6, "torsion pairs", criterion_6),
    (7, "algebra properties", criterion_7),
]


def _line(num: int, title: str, fails: list[str], dt: float) -> str:
    status = "PASS" if not fails else "FAIL"
    detail = "" if not fails else " :: " + "; ".join(fails[:3])
    return f"criterion {num} ({title}): {status} [{dt:.1f}s]{detail}"


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn, capsys):
    t0 = time.perf_counter()
    fails = fn()
    with capsys.disabled():
        print("\n" + _line(num, title, fails, time.perf_counter() - t0))
    assert not fails, fails


if __name__ == "__main__":
    failed = 0
    for num, title, fn in CRITERIA:
        t0 = time.perf_counter()
        fails = fn()
        failed += bool(fails)
        print(_line(num, title, fails, time.perf_counter() - t0), flush=True)
    sys.exit(1 if failed else 0)

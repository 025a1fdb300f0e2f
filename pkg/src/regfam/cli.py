"""Command line interface: ``regfam <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import properties as props
from .codec import Graph, decode, encode
from .config import DEFAULT_CAPS, Caps
from .errors import ParseError, ResourceError
from .family import analyze, enumerate_family, marked_graph, member
from .languages import crown_regex
from .oracle import oracle_members

EXIT_NO, EXIT_PARSE, EXIT_RESOURCE, EXIT_IO = 1, 2, 3, 4


def _common(p: argparse.ArgumentParser, lang: bool = True):
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--cap-canon-vertices", type=int, default=DEFAULT_CAPS.canon_vertices)
    p.add_argument("--cap-pieces", type=int, default=DEFAULT_CAPS.pieces)
    p.add_argument("--cap-regex-nodes", type=int, default=DEFAULT_CAPS.regex_nodes)
    p.add_argument("--cap-search-budget", type=int, default=DEFAULT_CAPS.search_budget)
    p.add_argument("--cap-star-pieces", type=int, default=DEFAULT_CAPS.star_pieces)
    if lang:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--lang", help="regular expression over a, b")
        src.add_argument("--crown", type=int, metavar="N", help="use the crown language with N cusps")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="regfam", description="Graph families given by regular languages.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="torsion, pieces, marked graphs, rank")
    _common(p)
    p.add_argument("--plot-dir", type=Path, help="write marked-graph figures here")

    p = sub.add_parser("member", help="is a graph in the family")
    _common(p)
    p.add_argument("--graph", required=True, help="graph file ('-' for stdin)")

    p = sub.add_parser("enumerate", help="members up to a vertex count")
    _common(p)
    p.add_argument("--max-vertices", type=int, help="required for infinite families")
    p.add_argument("--plot-dir", type=Path, help="write a grid of the members here")

    p = sub.add_parser("decide", help="does the family contain a graph with a property")
    _common(p)
    p.add_argument("--property", required=True, choices=sorted(props.PLUGINS) + ["custom"])
    p.add_argument("--custom", metavar="MODULE:FUNC", help="predicate for --property custom")
    p.add_argument("--hereditary", action="store_true")
    p.add_argument("--component-local", action="store_true")
    p.add_argument("--edge-monotone", action="store_true")
    p.add_argument("--bound", type=int, help="witness vertex bound for a custom property")

    p = sub.add_parser("encode", help="short-lex word of a graph")
    _common(p, lang=False)
    p.add_argument("--graph", required=True, help="graph file ('-' for stdin)")

    p = sub.add_parser("decode", help="graph of a word")
    _common(p, lang=False)
    p.add_argument("word")

    p = sub.add_parser("oracle", help="brute-force members with shortest words")
    _common(p)
    p.add_argument("--max-len", type=int, default=20)
    p.add_argument("--max-vertices", type=int)
    return ap


def _caps(args) -> Caps:
    return DEFAULT_CAPS.with_(
        canon_vertices=args.cap_canon_vertices,
        pieces=args.cap_pieces,
        regex_nodes=args.cap_regex_nodes,
        search_budget=args.cap_search_budget,
        star_pieces=args.cap_star_pieces,
    )


def _lang(args) -> str:
    return crown_regex(args.crown) if args.crown is not None else args.lang


def _read_graph(spec: str) -> Graph:
    text = sys.stdin.read() if spec == "-" else Path(spec).read_text()
    return Graph.from_text(text)


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def cmd_analyze(args) -> int:
    fam = analyze(_lang(args), _caps(args))
    report = fam.report()
    lines = [
        f"torsion\tt={fam.torsion.t}\tp={fam.torsion.p}",
        "alphabet\t" + " ".join(report["alphabet"]),
        f"accepts_empty\t{str(fam.accepts_empty).lower()}",
    ]
    for pc, rep in zip(fam.pieces, report["pieces"]):
        mg = rep["markedGraph"]
        alpha = " ".join(f"{k}={v}" for k, v in rep["alpha"].items())
        wb = rep["widthBounds"]
        lines += [
            f"piece\t{pc.index}\tq={','.join(map(str, pc.base))}\tP={{{';'.join(','.join(map(str, p)) for p in pc.periods)}}}",
            f"  alpha\t{alpha}",
            f"  marked_graph\tV={mg['vertices']}\tE={mg['edges']}\tmarks={','.join(mg['marks']) or '-'}",
            f"  rank\t{rep['rank']}",
            f"  width_bounds\t{wb if wb == 'unbounded' else ','.join(map(str, wb))}",
        ]
    lines += [f"overall_rank\t{report['overallRank']}", f"chromatic_sup\t{report['chromaticSup']}"]
    if args.plot_dir:
        from .plotting import plot_marked_graph

        args.plot_dir.mkdir(parents=True, exist_ok=True)
        for pc in fam.pieces:
            out = plot_marked_graph(marked_graph(pc), args.plot_dir / f"piece{pc.index}.png", f"piece {pc.index}, rank {pc.rank}")
            lines.append(f"figure\t{out}")
    _emit(args, report, lines)
    return 0


def cmd_member(args) -> int:
    fam = analyze(_lang(args), _caps(args))
    g = _read_graph(args.graph)
    res = member(fam, g)
    payload = {"member": res.member, "piece": res.piece, "witnessWord": res.word}
    lines = [f"member\t{'yes' if res.member else 'no'}"]
    if res.member:
        lines += [f"piece\t{res.piece}", f"witness\t{res.word}"]
    _emit(args, payload, lines)
    return 0 if res.member else EXIT_NO


def cmd_enumerate(args) -> int:
    fam = analyze(_lang(args), _caps(args))
    graphs = enumerate_family(fam, args.max_vertices)
    payload = {"count": len(graphs), "graphs": [g.to_text() for g in graphs]}
    lines = [f"count\t{len(graphs)}"]
    for g in graphs:
        lines += ["---", g.to_text().rstrip("\n")]
    if args.plot_dir:
        from .plotting import plot_graphs

        args.plot_dir.mkdir(parents=True, exist_ok=True)
        out = plot_graphs(graphs, args.plot_dir / "members.png", f"{len(graphs)} members")
        lines.append(f"figure\t{out}")
    _emit(args, payload, lines)
    return 0


def cmd_decide(args) -> int:
    fam = analyze(_lang(args), _caps(args))
    if args.property == "custom":
        if not args.custom:
            raise ParseError("--property custom needs --custom MODULE:FUNC")
        plugin = props.load_custom(
            args.custom,
            hereditary=args.hereditary,
            component_local=args.component_local,
            edge_monotone=args.edge_monotone,
            bound=args.bound,
        )
    else:
        plugin = props.PLUGINS[args.property]
    v = props.decide(fam, plugin)
    lines = [f"answer\t{v.answer}", f"reason\t{v.reason}"]
    if v.piece is not None:
        lines.append(f"piece\t{v.piece}")
    if v.word is not None:
        lines.append(f"witness_word\t{v.word}")
    if v.witness is not None:
        lines += ["witness_graph", v.witness.dense().to_text().rstrip("\n")]
    _emit(args, v.to_json(), lines)
    return EXIT_RESOURCE if v.answer == "resource" else 0


def cmd_encode(args) -> int:
    g = _read_graph(args.graph)
    w = encode(g, args.cap_canon_vertices)
    _emit(args, {"word": w}, [w])
    return 0


def cmd_decode(args) -> int:
    g = decode(args.word).dense()
    _emit(args, {"graph": g.to_text()}, [g.to_text().rstrip("\n")])
    return 0


def cmd_oracle(args) -> int:
    fam = analyze(_lang(args), _caps(args))
    run = oracle_members(fam.dfa, args.max_len, args.max_vertices)
    entries = [(g, run.witness(g)) for g in run.members()]
    payload = {
        "count": len(entries),
        "unstored": run.too_large,
        "graphs": [{"graph": g.to_text(), "word": w} for g, w in entries],
    }
    lines = [f"count\t{len(entries)}", f"unstored\t{run.too_large}"]
    for g, w in entries:
        lines += ["---", f"word\t{w}", g.to_text().rstrip("\n")]
    _emit(args, payload, lines)
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "member": cmd_member,
    "enumerate": cmd_enumerate,
    "decide": cmd_decide,
    "encode": cmd_encode,
    "decode": cmd_decode,
    "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

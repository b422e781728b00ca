"""Command-line front end: ``gbskit <command> <file> ...``.

Exit status is 0 on success, 1 for an invalid document or word and 2 when
a file cannot be read or written.
"""

from __future__ import annotations

import argparse
import sys

from .core import classify_component, extract_core
from .development import (
    BallLimits,
    centralizer_elements,
    centralizer_of_power,
    elliptic_conjugate,
)
from .errors import GBSError
from .graph import build_spec, export_dot, gbs_graph_of, load_document, parse_spec, validate
from .report import analyze, render_report
from .twists import fixes_centralizer_check, twist_from_centralizers
from .words import britton_reduce, canonical_form, classify_element, equals, parse_word


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(spec):
    """The GBS graph words are read in: the document graph itself when all vertices are cyclic, else its core."""
    return gbs_graph_of(spec) if spec.is_gbs() else extract_core(spec).core


def _limits(args) -> BallLimits:
    return BallLimits(args.max_vertices, args.max_index)


def cmd_validate(args) -> int:
    spec = build_spec(load_document(_read(args.file)))
    problems = validate(spec)
    if not problems:
        print("valid")
        return 0
    for p in problems:
        print(p)
    return 1


def cmd_core(args) -> int:
    dec = extract_core(parse_spec(_read(args.file)))
    print(f"roots: {' '.join(map(str, dec.core.vertices))}")
    for e, u, v, a, b in dec.core.edge_records():
        print(f"  {e}: {u} -- {v}  ({a}, {b})")
    print(f"k = {dec.k}")
    for i, c in enumerate(dec.components, 1):
        edges = " ".join(str(e) for e in c.geometric_edges()) or "-"
        print(f"  D{i}: vertices {' '.join(map(str, c.vertices))}  edges {edges}")
    return 0


def cmd_classify(args) -> int:
    dec = extract_core(parse_spec(_read(args.file)))
    for i, c in enumerate(dec.components, 1):
        print(f"D{i}: {classify_component(c).value}")
    return 0


def cmd_reduce(args) -> int:
    g = _graph(parse_spec(_read(args.file)))
    w = parse_word(g, args.word)
    print(f"reduced: {britton_reduce(w)}")
    print(f"canonical: {canonical_form(w)}")
    if w.start == w.end:
        print(f"type: {classify_element(w).value}")
    return 0


def cmd_equal(args) -> int:
    g = _graph(parse_spec(_read(args.file)))
    print("true" if equals(parse_word(g, args.left), parse_word(g, args.right)) else "false")
    return 0


def cmd_centralizer(args) -> int:
    g = _graph(parse_spec(_read(args.file)))
    rep = centralizer_of_power(g, args.vertex, args.power, _limits(args))
    s = rep.summary()
    print(f"status: {s['status']} ({s['vertices']} vertices, {s['edges']} edges)")
    if rep.presentation is not None:
        print(f"presentation: {rep.presentation}")
    for name, w in rep.generator_words.items():
        print(f"  {name} = {w}")
    return 0


def _pair(text: str):
    parts = text.split(",")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"expected v,n,u,m, got {text!r}")
    v, n, u, m = parts
    try:
        return v.strip(), int(n), u.strip(), int(m)
    except ValueError:
        raise argparse.ArgumentTypeError(f"powers must be integers in {text!r}") from None


def cmd_conjugate(args) -> int:
    g = _graph(parse_spec(_read(args.file)))
    for v, n, u, m in args.pairs:
        res = elliptic_conjugate(g, v, n, u, m, _limits(args))
        line = f"{v}^{n} ~ {u}^{m}: {res.answer.value}"
        if res.word is not None:
            line += f"  via {res.word}"
        print(line)
    return 0


def cmd_twist(args) -> int:
    g = _graph(parse_spec(_read(args.file)))
    assignment = {}
    for item in args.twist:
        root, sep, text = item.partition("=")
        if not sep:
            raise GBSError(f"expected root=word, got {item!r}")
        assignment[root.strip()] = parse_word(g, text, start=root.strip())
    theta, _ = twist_from_centralizers(assignment, g)
    for e in g.geometric_edges():
        print(f"{e} -> {theta.images[e]}")
    if args.check_fixes_centralizers:
        lim = _limits(args)
        for v in g.vertices:
            rep = centralizer_of_power(g, v, 1, lim)
            samples = centralizer_elements(rep, args.samples)
            ok = fixes_centralizer_check(theta, v, samples)
            print(f"fixes C({v}) on {len(samples)} samples: {'true' if ok else 'false'}")
    return 0


def cmd_analyze(args) -> int:
    spec = parse_spec(_read(args.file))
    report = analyze(spec, _limits(args))
    sys.stdout.write(render_report(report, args.format))
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(export_dot(extract_core(spec).core, name="core"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gbskit", description="Graphs of groups with cyclic edge groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("file", help="gogspec-v1 JSON document, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    def limits(sp):
        sp.add_argument("--max-vertices", type=int, default=256)
        sp.add_argument("--max-index", type=int, default=10**9)

    add("validate", cmd_validate, "check a document and list violations")
    add("core", cmd_core, "print the GBS core and its components")
    add("classify", cmd_classify, "classify each core component")
    sp = add("reduce", cmd_reduce, "reduce a word")
    sp.add_argument("--word", required=True)
    sp = add("equal", cmd_equal, "decide whether two words are equal")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp = add("centralizer", cmd_centralizer, "centralizer of a vertex generator power")
    sp.add_argument("--vertex", required=True)
    sp.add_argument("--power", type=int, required=True)
    limits(sp)
    sp = add("conjugate", cmd_conjugate, "are two elliptic powers conjugate?")
    sp.add_argument("--pairs", type=_pair, nargs="+", required=True, metavar="v,n,u,m")
    limits(sp)
    sp = add("twist", cmd_twist, "build a centralizer twist")
    sp.add_argument("--twist", action="append", required=True, metavar="root=word")
    sp.add_argument("--check-fixes-centralizers", action="store_true")
    sp.add_argument("--samples", type=int, default=10, help="centralizer samples per root")
    limits(sp)
    sp = add("analyze", cmd_analyze, "full report")
    sp.add_argument("--format", choices=("text", "machine"), default="text")
    sp.add_argument("--dot", metavar="OUT", help="also write the core as Graphviz")
    limits(sp)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GBSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

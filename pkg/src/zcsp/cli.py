"""Command-line interface.

Subcommands:
  analyze   value types, components, core, contraction, weak separability
  classify  tractability verdicts for size/cardinality constraints
  solve     solve an instance (fixed-parameter pipeline or brute force)
  gadget    emit reduction instances (mis / implications / clique2mimp)
  encode    emit a graph-problem encoding as language + instance files

Exit codes: 0 solution found / tractable, 1 no solution / hard, 2 usage or
input error, 3 resource guard exceeded, 4 internal cross-check failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import formats
from .classify import CcspVerdict, OcspVerdict, classify_ccsp, classify_ocsp
from .errors import GuardError, ParseError
from .gadgets import clique_to_mimp, encode_graph_problem, reduce_implications, reduce_mis
from .graphs import Digraph
from .morphisms import (
    all_components,
    core,
    find_counterexample,
    find_min_contraction,
    is_core,
    value_types,
)
from .relations import Language, cc0_complete, zero_valid_sublanguage
from .solver import brute_force, solve_ccsp, solve_ocsp

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_CROSSCHECK = 4


def _load_language(path: str, closure: bool) -> Language:
    g = formats.parse_language(Path(path).read_text())
    if closure:
        if not g.zero_valid:
            g = zero_valid_sublanguage(g)
        g = cc0_complete(g)
    return g


def _write_dump(path, pairs) -> None:
    if path:
        Path(path).write_text(formats.dump_lines(pairs))


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    g = _load_language(args.language, args.closure)
    types = value_types(g)
    comps = all_components(g)
    core_values = core(g)
    contraction = find_min_contraction(g)
    cex = find_counterexample(g, component_normalized=False)

    print(f"domain: {formats.fmt_values(g.domain)}")
    print(f"relations: {', '.join(r.name for r in g.relations)}")
    print(f"zero_valid: {g.zero_valid}  cc0: {g.cc0}")
    for d in sorted(types):
        print(f"value {d}: {types[d].name.lower().replace('_', '-')}")
    print(f"components: {'; '.join(formats.fmt_values(c) for c in comps)}")
    print(f"core: {formats.fmt_values(core_values)}  is_core: {is_core(g)}")
    print(f"min contraction: " +
          " ".join(f"{a}->{b}" for a, b in contraction.pairs))
    if cex is None:
        print("weakly separable: yes")
    else:
        print(f"weakly separable: no ({cex.kind} counterexample on "
              f"{cex.relation.name}: {cex.t1} vs {cex.t2})")

    pairs = [("domain", formats.fmt_values(g.domain)),
             ("zero_valid", str(g.zero_valid).lower()),
             ("cc0", str(g.cc0).lower())]
    for r in g.relations:
        pairs.append((f"relation.{r.name}.arity", str(r.arity)))
        pairs.append((f"relation.{r.name}.tuples",
                      " | ".join(formats.fmt_tuple(t) for t in r.sorted_tuples)))
    for d in sorted(types):
        pairs.append((f"type.{d}", types[d].name.lower().replace("_", "-")))
    for i, c in enumerate(comps):
        pairs.append((f"component.{i}", formats.fmt_values(c)))
    pairs.append(("core", formats.fmt_values(core_values)))
    pairs.append(("is_core", str(is_core(g)).lower()))
    pairs.append(("min_contraction",
                  " ".join(f"{a}:{b}" for a, b in contraction.pairs)))
    pairs.append(("weakly_separable", str(cex is None).lower()))
    if cex is not None:
        pairs.append(("counterexample.kind", cex.kind))
        pairs.append(("counterexample.relation", cex.relation.name))
        pairs.append(("counterexample.t1", formats.fmt_tuple(cex.t1)))
        pairs.append(("counterexample.t2", formats.fmt_tuple(cex.t2)))
    _write_dump(args.dump, pairs)
    return EXIT_OK


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------

def _cmd_classify(args) -> int:
    g = _load_language(args.language, args.closure)
    if not (g.zero_valid and g.cc0):
        print("language is not substitution-closed 0-valid; rerun with --closure",
              file=sys.stderr)
        return EXIT_USAGE
    pairs = []
    hard = False
    if args.problem in ("ocsp", "both"):
        rep = classify_ocsp(g)
        print(f"size constraints: {rep.verdict.value}")
        pairs.append(("ocsp.verdict", rep.verdict.value))
        if rep.witness is not None:
            hard = True
            w = rep.witness
            print(f"  witness: D1={formats.fmt_values(w.d1)} "
                  f"D2={formats.fmt_values(w.d2)} "
                  f"({w.counterexample.kind} counterexample on "
                  f"{w.counterexample.relation.name})")
            pairs.append(("ocsp.witness.d1", formats.fmt_values(w.d1)))
            pairs.append(("ocsp.witness.d2", formats.fmt_values(w.d2)))
            pairs.append(("ocsp.witness.counterexample.kind", w.counterexample.kind))
            pairs.append(("ocsp.witness.counterexample.relation",
                          w.counterexample.relation.name))
            pairs.append(("ocsp.witness.counterexample.t1",
                          formats.fmt_tuple(w.counterexample.t1)))
            pairs.append(("ocsp.witness.counterexample.t2",
                          formats.fmt_tuple(w.counterexample.t2)))
    if args.problem in ("ccsp", "both"):
        rep = classify_ccsp(g)
        print(f"cardinality constraints: {rep.verdict.value}")
        pairs.append(("ccsp.verdict", rep.verdict.value))
        if rep.witness is not None:
            hard = True
            print(f"  witness: D'={formats.fmt_values(rep.witness)} "
                  f"family: {rep.refinement}")
            pairs.append(("ccsp.witness", formats.fmt_values(rep.witness)))
            pairs.append(("ccsp.refinement", rep.refinement))
    _write_dump(args.dump, pairs)
    return EXIT_NEGATIVE if hard else EXIT_OK


# ---------------------------------------------------------------------------
# solve
# ---------------------------------------------------------------------------

def _cmd_solve(args) -> int:
    g = _load_language(args.language, args.closure)
    inst = formats.parse_instance(Path(args.instance).read_text(), g)
    if inst.pi is None:
        tractable = (g.zero_valid and g.cc0
                     and classify_ocsp(g).verdict is OcspVerdict.FPT)
        solver = solve_ocsp
    else:
        tractable = (g.zero_valid and g.cc0
                     and classify_ccsp(g).verdict is CcspVerdict.FPT)
        solver = solve_ccsp
    if tractable:
        result = solver(inst)
        method = "fpt"
    else:
        result = brute_force(inst)
        method = "brute-force"
    if args.oracle and method == "fpt":
        reference = brute_force(inst)
        if reference.status != result.status:
            print("oracle cross-check FAILED: "
                  f"pipeline={result.status} oracle={reference.status}",
                  file=sys.stderr)
            return EXIT_CROSSCHECK
        print("oracle cross-check: ok")
    print(f"method: {method}")
    print(f"status: {result.status}")
    pairs = [("method", method), ("status", result.status)]
    if result.assignment is not None:
        print("assignment: " + formats.fmt_tuple(result.assignment))
        pairs.append(("assignment", formats.fmt_tuple(result.assignment)))
    pairs.append(("nodes", str(result.stats.nodes)))
    pairs.append(("minimal_enumerated", str(result.stats.minimal_enumerated)))
    _write_dump(args.dump, pairs)
    return EXIT_OK if result.found else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# gadget
# ---------------------------------------------------------------------------

def _parse_sizes(spec: str):
    if spec == "paper":
        return "paper", None
    if spec == "unit":
        return 1, "unit"
    if spec.startswith("file:"):
        table = {}
        for lineno, line in enumerate(Path(spec[5:]).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 3:
                raise ParseError(f"sizes line {lineno}: expected <group> <value> <size>")
            table[(int(parts[0]), int(parts[1]))] = int(parts[2])
        return table, "file"
    raise ParseError(f"unknown sizes spec {spec!r}")


def _cmd_gadget(args) -> int:
    base, groups = formats.parse_graph(Path(args.graph).read_text())
    if args.reduction == "clique2mimp":
        if args.k is None:
            print("clique2mimp needs --k", file=sys.stderr)
            return EXIT_USAGE
        out = clique_to_mimp(base, args.k)
        text = formats.serialize_graph(out.base, out.groups)
        if args.out:
            Path(args.out).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK

    if not args.language:
        print("this reduction needs a language file", file=sys.stderr)
        return EXIT_USAGE
    g = _load_language(args.language, args.closure)
    dprime = frozenset(int(v) for v in args.dprime.split(",")) | {0} \
        if args.dprime else g.domain
    cg = formats.grouped(base, groups)
    sizes, mode = _parse_sizes(args.sizes)
    k = args.k
    if mode == "unit" and k is None:
        k = len(cg.groups) * len(dprime - {0})
    builder = reduce_mis if args.reduction == "mis" else reduce_implications
    out = builder(g, dprime, cg, sizes=sizes, k=k)
    inst_text = formats.serialize_instance(out.instance)
    if args.out:
        Path(args.out).write_text(inst_text)
    else:
        sys.stdout.write(inst_text)
    if args.map:
        lines = [f"faithful {str(out.faithful).lower()}",
                 f"lifting {out.lifting}"]
        for gadget in out.gadgets:
            for value, vs in gadget.bags:
                lines.append(f"gadget {gadget.group} {gadget.item} value {value} vars "
                             + " ".join(map(str, vs)))
        Path(args.map).write_text("\n".join(lines) + "\n")
    if args.out_lang:
        Path(args.out_lang).write_text(formats.serialize_language(out.instance.language))
    return EXIT_OK


# ---------------------------------------------------------------------------
# encode
# ---------------------------------------------------------------------------

def _cmd_encode(args) -> int:
    base, groups = formats.parse_graph(Path(args.graph).read_text())
    kind = args.kind
    params = {}
    if kind == "independent_set":
        params = {"graph": base, "t": args.t}
    elif kind == "vertex_cover":
        params = {"graph": base, "t": args.t}
    elif kind == "implications":
        if not isinstance(base, Digraph):
            print("implications needs arc lines", file=sys.stderr)
            return EXIT_USAGE
        params = {"digraph_": base, "t": args.t}
    elif kind == "biclique":
        if not groups or len(groups) != 2:
            print("biclique needs group 1 and group 2 as the two sides",
                  file=sys.stderr)
            return EXIT_USAGE
        t2 = args.t2 if args.t2 is not None else args.t
        params = {"graph": base, "side_a": groups[0], "side_b": groups[1],
                  "t1": args.t, "t2": t2}
    elif kind == "general_biclique":
        t2 = args.t2 if args.t2 is not None else args.t
        params = {"graph": base, "t1": args.t, "t2": t2}
    elif kind == "p_partite_clique":
        if not groups:
            print("p_partite_clique needs group lines", file=sys.stderr)
            return EXIT_USAGE
        params = {"graph": base, "parts": groups, "t": args.t,
                  "variant": args.variant}
    elif kind == "p_colorable_subgraph":
        params = {"graph": base, "k": args.t, "p": args.p}
    elif kind == "p_partite_complete_subgraph":
        sizes = [int(s) for s in args.sizes_list.split(",")] if args.sizes_list else None
        if sizes is None:
            print("p_partite_complete_subgraph needs --sizes-list", file=sys.stderr)
            return EXIT_USAGE
        params = {"graph": base, "sizes": sizes}
    lang, inst = encode_graph_problem(kind, **params)
    lang_text = formats.serialize_language(lang)
    inst_text = formats.serialize_instance(inst)
    if args.out_lang:
        Path(args.out_lang).write_text(lang_text)
    if args.out:
        Path(args.out).write_text(inst_text)
    if not args.out and not args.out_lang:
        sys.stdout.write(lang_text + "\n" + inst_text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zcsp",
        description="analyze, classify and solve zero-defaulted CSPs with "
                    "size or cardinality constraints")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="algebraic report for a language file")
    p.add_argument("language")
    p.add_argument("--closure", action="store_true",
                   help="close the language under 0-valid constant substitutions first")
    p.add_argument("--dump", help="write the machine-readable report here")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("classify", help="tractability verdicts")
    p.add_argument("language")
    p.add_argument("--problem", choices=["ocsp", "ccsp", "both"], default="both")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--dump")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("language")
    p.add_argument("instance")
    p.add_argument("--oracle", action="store_true",
                   help="cross-check the pipeline against brute force")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--dump")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("gadget", help="emit reduction instances")
    p.add_argument("language", nargs="?",
                   help="language file (not needed for clique2mimp)")
    p.add_argument("--reduction", choices=["mis", "implications", "clique2mimp"],
                   required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--sizes", default="paper",
                   help="paper | unit | file:PATH (group value size per line)")
    p.add_argument("--k", type=int, help="size target for custom bag sizes")
    p.add_argument("--dprime", help="comma-separated nonzero values of the sub-domain")
    p.add_argument("--closure", action="store_true")
    p.add_argument("--out", help="instance (or graph) output file")
    p.add_argument("--out-lang", help="write the instance language here")
    p.add_argument("--map", help="write the gadget variable map here")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("encode", help="encode a graph problem")
    p.add_argument("--kind", required=True,
                   choices=["independent_set", "vertex_cover", "implications",
                            "biclique", "general_biclique", "p_partite_clique",
                            "p_colorable_subgraph", "p_partite_complete_subgraph"])
    p.add_argument("--graph", required=True)
    p.add_argument("--t", type=int, default=1, help="primary size parameter")
    p.add_argument("--t2", type=int, help="second size (biclique variants)")
    p.add_argument("--p", type=int, default=2, help="number of colors")
    p.add_argument("--variant", choices=["tuples", "pairs"], default="tuples")
    p.add_argument("--sizes-list", help="comma-separated part sizes")
    p.add_argument("--out", help="instance output file")
    p.add_argument("--out-lang", help="language output file")
    p.set_defaults(func=_cmd_encode)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GuardError as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Text formats: language files, instance files, graph files, report dumps.

Language file::

    domain 2

    relation R_BC 2
    0 0
    1 0
    0 2

Instance file (``card`` is optional; values absent from it count 0)::

    vars 4
    size 2
    card 1=1 2=1
    constraint R_BC 0 2

Graph file (vertices are 1-based in files; ``edge`` lines make the graph
undirected, ``arc`` lines directed; optional ``group`` lines partition the
vertices)::

    graph 4
    edge 1 3
    group 1 1 2
    group 2 3 4

Lines starting with ``#`` are comments.  Serialization is canonical (tuples
sorted lexicographically, fixed line order), so parse-serialize round-trips
are byte-stable.
"""

from __future__ import annotations

from typing import Optional, Sequence, Tuple

from .errors import ParseError
from .graphs import Digraph, Graph, GroupedGraph
from .relations import (
    Constraint,
    Instance,
    Language,
    Relation,
    instance,
)


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _fail(lineno: int, message: str):
    raise ParseError(f"line {lineno}: {message}")


# ---------------------------------------------------------------------------
# languages
# ---------------------------------------------------------------------------

def parse_language(text: str) -> Language:
    delta = None
    relations = []
    current: Optional[Tuple[int, str, int, list]] = None  # lineno, name, arity, tuples

    def flush():
        nonlocal current
        if current is None:
            return
        lineno, name, arity, tuples = current
        if not tuples:
            _fail(lineno, f"relation {name} has no tuples")
        relations.append(Relation(name, arity, frozenset(tuples)))
        current = None

    for lineno, line in _lines(text):
        parts = line.split()
        if parts[0] == "domain":
            if delta is not None:
                _fail(lineno, "duplicate domain header")
            if len(parts) != 2 or not parts[1].isdigit():
                _fail(lineno, "expected: domain <max-value>")
            delta = int(parts[1])
        elif parts[0] == "relation":
            if delta is None:
                _fail(lineno, "domain header must come first")
            flush()
            if len(parts) != 3 or not parts[2].isdigit():
                _fail(lineno, "expected: relation <name> <arity>")
            name, arity = parts[1], int(parts[2])
            if any(r.name == name for r in relations):
                _fail(lineno, f"duplicate relation name {name}")
            current = (lineno, name, arity, [])
        else:
            if current is None:
                _fail(lineno, f"unexpected line {line!r}")
            try:
                values = tuple(int(p) for p in parts)
            except ValueError:
                _fail(lineno, f"malformed tuple {line!r}")
            if len(values) != current[2]:
                _fail(lineno, f"tuple has {len(values)} entries, arity is {current[2]}")
            if any(v < 0 or v > delta for v in values):
                _fail(lineno, f"tuple value outside 0..{delta}")
            current[3].append(values)
    if delta is None:
        raise ParseError("missing domain header")
    flush()
    return Language(frozenset(range(delta + 1)), tuple(relations))


def serialize_language(g: Language) -> str:
    if g.domain != frozenset(range(g.delta + 1)):
        raise ValueError("only contiguous domains serialize to language files")
    out = [f"domain {g.delta}"]
    for r in g.relations:
        out.append("")
        out.append(f"relation {r.name} {r.arity}")
        for t in r.sorted_tuples:
            out.append(" ".join(map(str, t)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

def parse_instance(text: str, g: Language) -> Instance:
    num_vars = None
    k = None
    pi = None
    constraints = []
    for lineno, line in _lines(text):
        parts = line.split()
        if parts[0] == "vars":
            if len(parts) != 2 or not parts[1].isdigit():
                _fail(lineno, "expected: vars <n>")
            num_vars = int(parts[1])
        elif parts[0] == "size":
            if len(parts) != 2 or not parts[1].isdigit():
                _fail(lineno, "expected: size <k>")
            k = int(parts[1])
        elif parts[0] == "card":
            pi = {}
            for chunk in parts[1:]:
                if "=" not in chunk:
                    _fail(lineno, f"expected value=count, got {chunk!r}")
                v, c = chunk.split("=", 1)
                try:
                    pi[int(v)] = int(c)
                except ValueError:
                    _fail(lineno, f"malformed cardinality entry {chunk!r}")
        elif parts[0] == "constraint":
            if num_vars is None:
                _fail(lineno, "vars header must precede constraints")
            if len(parts) < 2:
                _fail(lineno, "expected: constraint <relation> <vars...>")
            try:
                rel = g.relation_named(parts[1])
            except KeyError:
                _fail(lineno, f"unknown relation {parts[1]!r}")
            try:
                scope = tuple(int(p) for p in parts[2:])
            except ValueError:
                _fail(lineno, "malformed variable index")
            if len(scope) != rel.arity:
                _fail(lineno, f"scope has {len(scope)} variables, arity is {rel.arity}")
            if any(v < 0 or v >= num_vars for v in scope):
                _fail(lineno, "variable index out of range")
            constraints.append(Constraint(scope, rel))
        else:
            _fail(lineno, f"unexpected line {line!r}")
    if num_vars is None:
        raise ParseError("missing vars header")
    if k is None:
        raise ParseError("missing size header")
    try:
        return instance(num_vars, constraints, k, g, pi)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def serialize_instance(inst: Instance) -> str:
    out = [f"vars {inst.num_vars}", f"size {inst.k}"]
    if inst.pi is not None:
        out.append("card " + " ".join(f"{v}={c}" for v, c in inst.pi))
    for c in inst.constraints:
        out.append("constraint " + c.relation.name + " " + " ".join(map(str, c.scope)))
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

def parse_graph(text: str):
    """Returns (Graph or Digraph, groups or None); vertices are converted to
    0-based indices."""
    n = None
    edges = []
    arcs = []
    groups = {}
    for lineno, line in _lines(text):
        parts = line.split()
        if parts[0] == "graph":
            if len(parts) != 2 or not parts[1].isdigit():
                _fail(lineno, "expected: graph <n>")
            n = int(parts[1])
        elif parts[0] in ("edge", "arc"):
            if n is None:
                _fail(lineno, "graph header must come first")
            if len(parts) != 3:
                _fail(lineno, f"expected: {parts[0]} <u> <v>")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                _fail(lineno, "malformed vertex id")
            if not (1 <= u <= n and 1 <= v <= n):
                _fail(lineno, f"vertex id outside 1..{n}")
            (edges if parts[0] == "edge" else arcs).append((u - 1, v - 1))
        elif parts[0] == "group":
            if n is None:
                _fail(lineno, "graph header must come first")
            if len(parts) < 3:
                _fail(lineno, "expected: group <index> <vertices...>")
            try:
                gi = int(parts[1])
                members = [int(p) for p in parts[2:]]
            except ValueError:
                _fail(lineno, "malformed group line")
            if gi in groups:
                _fail(lineno, f"duplicate group {gi}")
            if any(not 1 <= m <= n for m in members):
                _fail(lineno, f"vertex id outside 1..{n}")
            groups[gi] = tuple(m - 1 for m in members)
        else:
            _fail(lineno, f"unexpected line {line!r}")
    if n is None:
        raise ParseError("missing graph header")
    if edges and arcs:
        raise ParseError("a graph file may contain edges or arcs, not both")
    base = Digraph(n, frozenset(arcs)) if arcs else Graph(
        n, frozenset((min(u, v), max(u, v)) for u, v in edges))
    group_list = None
    if groups:
        group_list = tuple(groups[i] for i in sorted(groups))
    return base, group_list


def serialize_graph(base, groups=None) -> str:
    out = [f"graph {base.n}"]
    if isinstance(base, Digraph):
        for u, v in sorted(base.arcs):
            out.append(f"arc {u + 1} {v + 1}")
    else:
        for u, v in sorted(base.edges):
            out.append(f"edge {u + 1} {v + 1}")
    if groups:
        for i, grp in enumerate(groups, start=1):
            out.append("group " + str(i) + " " + " ".join(str(v + 1) for v in grp))
    return "\n".join(out) + "\n"


def grouped(base, groups) -> GroupedGraph:
    if groups is None:
        raise ParseError("this operation needs group lines in the graph file")
    return GroupedGraph(base, groups)


# ---------------------------------------------------------------------------
# report dumps
# ---------------------------------------------------------------------------

def dump_lines(pairs: Sequence[Tuple[str, str]]) -> str:
    """Canonical machine-readable dump: 'key: value' lines in given order."""
    return "\n".join(f"{key}: {value}" for key, value in pairs) + "\n"


def fmt_values(values) -> str:
    return " ".join(str(v) for v in sorted(values))


def fmt_tuple(t) -> str:
    return " ".join(map(str, t))

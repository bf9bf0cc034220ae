"""Hardness-construction machinery and graph-problem encodings.

* Exact bag-size constants whose pairwise multiset sums decode uniquely,
  evaluated in arbitrary-precision integers.
* Morphism gadgets: one bag of variables per nonzero value of a sub-domain,
  constrained so that every satisfying assignment reads off a set-valued
  morphism of the language.
* NAND/IMP linking between two gadgets (union- and difference-style
  incompatibilities).
* Generic reductions from multicolored independent-set and multicolored
  implications problems to size-constrained instances, with exact
  (counting-faithful) or caller-chosen (semantic-only) bag sizes.
* The clique-to-multicolored-implications graph translation.
* Encodings of standard graph problems as instances over fixed small
  languages.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from . import catalog
from .errors import GuardError
from .graphs import (
    Digraph,
    Graph,
    GroupedGraph,
    bipartite_complement,
    complement,
    multicolored_implications,
    multicolored_independent_set,
    multipartite_complement,
)
from .morphisms import find_counterexample
from .relations import (
    VARS_MAX,
    Constraint,
    Instance,
    Language,
    Relation,
    cc0_complete,
    instance,
    language,
    restrict_language,
    satisfies,
    supp_substitute,
    support,
    tuple_union,
    tuples_disjoint,
)


# ---------------------------------------------------------------------------
# bag-size constants
# ---------------------------------------------------------------------------

def z_constant(t: int, delta: int, i: int, d: int) -> int:
    """Exact bag size for group i and value index d among t groups over a
    sub-domain with delta nonzero values:

        (4*t*delta) ** (2*t*delta + (i*delta + d))
      + (4*t*delta) ** (5*t*delta - (i*delta + d))

    Written in base 4*t*delta the two addends occupy the digit positions that
    make distinct multiset sums differ by at least (4*t*delta)**(2*t*delta).
    """
    if not 1 <= i <= t:
        raise ValueError(f"group index {i} out of range 1..{t}")
    if not 1 <= d <= delta:
        raise ValueError(f"value index {d} out of range 1..{delta}")
    base = 4 * t * delta
    e = i * delta + d
    return base ** (2 * t * delta + e) + base ** (5 * t * delta - e)


def z_values(t: int, delta: int) -> dict:
    """All bag sizes, keyed by (group index, value index)."""
    return {(i, d): z_constant(t, delta, i, d)
            for i in range(1, t + 1) for d in range(1, delta + 1)}


def sums_decode_uniquely(t: int, delta: int, chosen: Sequence[int],
                         multiset: Sequence[int]) -> bool:
    """The defining property of the constants: whenever a multiset of bag
    sizes sums to within (4*t*delta)**(2*t*delta) of the sum of a set of bag
    sizes, the multiset equals the set."""
    if len(set(chosen)) != len(chosen):
        raise ValueError("the reference collection must be a set")
    gap = abs(sum(chosen) - sum(multiset))
    if gap >= (4 * t * delta) ** (2 * t * delta):
        return True  # hypothesis void
    return sorted(multiset) == sorted(chosen)


# ---------------------------------------------------------------------------
# morphism gadgets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gadget:
    """Bags of variable indices per nonzero sub-domain value."""

    group: int
    item: int
    bags: tuple  # sorted (value, tuple of variable indices) pairs

    def bag(self, value: int) -> tuple:
        return dict(self.bags)[value]

    def variables(self) -> tuple:
        out = []
        for _, vs in self.bags:
            out.extend(vs)
        return tuple(out)

    def standard_values(self) -> dict:
        """variable -> represented value."""
        out = {}
        for value, vs in self.bags:
            for v in vs:
                out[v] = value
        return out


def build_mvm_gadget(g: Language, dprime: Iterable[int],
                     bag_sizes: Mapping[int, int], start_index: int = 0,
                     group: int = 1, item: int = 1):
    """Allocate bags and emit the gadget constraints.

    For every relation R and tuple t of R restricted to dprime, a constraint
    is laid over every choice of bag variables for t's nonzero coordinates,
    using the relation obtained from R by zeroing the coordinates outside
    t's support.  Returns (gadget, constraints, next free variable index).
    """
    dset = frozenset(dprime)
    if 0 not in dset:
        raise ValueError("the sub-domain must contain 0")
    values = sorted(dset - {0})
    bags = {}
    idx = start_index
    for value in values:
        size = bag_sizes[value]
        if size < 1:
            raise ValueError(f"bag for value {value} must have positive size")
        bags[value] = tuple(range(idx, idx + size))
        idx += size
    gadget = Gadget(group, item, tuple(sorted(bags.items())))
    constraints = _gadget_constraints(g, dset, gadget)
    return gadget, constraints, idx


def _gadget_constraints(g: Language, dset: frozenset, gadget: Gadget) -> list:
    out = []
    seen = set()
    bags = dict(gadget.bags)
    for r in g.relations:
        for t in r.sorted_tuples:
            if any(v not in dset for v in t):
                continue
            supp = support(t)
            if not supp:
                continue
            rel = supp_substitute(r, t)
            for choice in itertools.product(*(bags[t[i]] for i in supp)):
                key = (choice, rel.key())
                if key not in seen:
                    seen.add(key)
                    out.append(Constraint(choice, rel))
    return out


def link_nand(g1: Gadget, g2: Gadget, g: Language, dprime: Iterable[int]) -> list:
    """Constraints forbidding the two gadgets from jointly realizing a union
    of disjoint tuples that leaves a relation.

    For every relation R and ordered pair of disjoint nonzero tuples t1, t2
    of R restricted to dprime, the union's support positions draw variables
    from g1's bags on t1's coordinates and from g2's bags on t2's.
    """
    return _link(g1, g2, g, dprime, mode="nand")


def link_imp(g1: Gadget, g2: Gadget, g: Language, dprime: Iterable[int]) -> list:
    """Directed variant: t1 ranges over differences, i.e. t2 and t1+t2 must
    be members (t1 itself need not be)."""
    return _link(g1, g2, g, dprime, mode="imp")


def _link(g1: Gadget, g2: Gadget, g: Language, dprime: Iterable[int], mode: str) -> list:
    dset = frozenset(dprime)
    if 0 not in dset:
        raise ValueError("the sub-domain must contain 0")
    bags1, bags2 = dict(g1.bags), dict(g2.bags)
    out = []
    seen = set()
    for r in g.relations:
        restricted = [t for t in r.sorted_tuples if all(v in dset for v in t)]
        for t2 in restricted:
            if mode == "nand":
                candidates = [t1 for t1 in restricted if tuples_disjoint(t1, t2)]
            else:
                # every disjoint t1 with t1+t2 still in the restriction
                candidates = []
                for u in restricted:
                    ok = all(b == 0 or a == b for a, b in zip(u, t2))
                    if ok:
                        t1 = tuple(a if b == 0 else 0 for a, b in zip(u, t2))
                        candidates.append(t1)
            for t1 in candidates:
                if all(v == 0 for v in t1) or all(v == 0 for v in t2):
                    continue
                u = tuple_union(t1, t2)
                rel = _supp_like(r, u)  # the union itself need not be a member
                supp = support(u)
                pools = []
                for i in supp:
                    pools.append(bags1[t1[i]] if t1[i] != 0 else bags2[t2[i]])
                for choice in itertools.product(*pools):
                    key = (choice, rel.key())
                    if key not in seen:
                        seen.add(key)
                        out.append(Constraint(choice, rel))
    return out


def _supp_like(r: Relation, u: Sequence[int]) -> Relation:
    """supp-substitution indexed by an arbitrary support pattern (the union
    tuple need not belong to the relation)."""
    supp = support(u)
    from .relations import substitute_constants

    zero_positions = tuple(i for i in range(r.arity) if i not in supp)
    return substitute_constants(r, zero_positions, (0,) * len(zero_positions))


# ---------------------------------------------------------------------------
# instance assembly
# ---------------------------------------------------------------------------

def _assemble(base: Language, num_vars: int, constraints: Sequence[Constraint],
              k: int, pi: Optional[Mapping[int, int]]) -> Instance:
    """Deduplicate constraint relations against the base language (by tuple
    set) and build the instance; genuinely new relations are appended."""
    pool = {r.key(): r for r in base.relations}
    extra = []
    fixed = []
    names = {r.name for r in base.relations}
    for c in constraints:
        rel = pool.get(c.relation.key())
        if rel is None:
            rel = c.relation
            while rel.name in names:
                rel = Relation(rel.name + "'", rel.arity, rel.tuples)
            names.add(rel.name)
            pool[rel.key()] = rel
            extra.append(rel)
        fixed.append(Constraint(c.scope, rel))
    lang = Language(base.domain, base.relations + tuple(extra))
    return instance(num_vars, fixed, k, lang, pi)


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionOutput:
    instance: Instance
    gadgets: tuple
    faithful: bool  # exact bag sizes (counting argument applies) or not
    lifting: str

    def standard_assignment(self, selection: Mapping[int, int]) -> tuple:
        """Assignment placing the standard values on the selected gadget of
        each group (selection maps group index -> item index) and 0
        elsewhere."""
        values = [0] * self.instance.num_vars
        for gadget in self.gadgets:
            if selection.get(gadget.group) == gadget.item:
                for v, value in gadget.standard_values().items():
                    values[v] = value
        return tuple(values)


def _bag_size_table(sizes, t: int, values: Sequence[int]):
    """Normalize the sizes argument: "paper" -> exact constants by value rank
    per group; an int -> uniform; a mapping (group, value) -> size."""
    delta = len(values)
    rank = {v: i + 1 for i, v in enumerate(values)}
    if sizes == "paper":
        return (lambda x, d: z_constant(t, delta, x, rank[d])), True
    if isinstance(sizes, int):
        return (lambda x, d: sizes), False
    table = dict(sizes)
    return (lambda x, d: table[(x, d)]), False


def _reduce_common(g: Language, dprime: Iterable[int], grouped: GroupedGraph,
                   sizes, k: Optional[int], kind: str, verify: bool) -> ReductionOutput:
    dset = frozenset(dprime)
    sub = restrict_language(g, dset)
    cex = find_counterexample(sub, component_normalized=True)
    want = "union" if kind == "mis" else "difference"
    if cex is None or cex.kind != want:
        raise ValueError(f"the restriction has no {want} counterexample")
    values = sorted(dset - {0})
    t = len(grouped.groups)
    size_of, faithful = _bag_size_table(sizes, t, values)
    total_vars = sum(size_of(x, d)
                     for x, grp in enumerate(grouped.groups, start=1)
                     for _ in grp for d in values)
    if total_vars > VARS_MAX:
        raise GuardError("the reduction needs more variables than the guard allows")
    if faithful:
        if k is not None:
            raise ValueError("the size target is computed for exact bag sizes")
        k = sum(size_of(x + 1, d) for x in range(t) for d in values)
    elif k is None:
        raise ValueError("custom bag sizes require an explicit size target k")

    gadgets = []
    constraints = []
    idx = 0
    gadget_of_vertex = {}
    for x, grp in enumerate(grouped.groups, start=1):
        for y, vertex in enumerate(grp, start=1):
            gadget, cons, idx = build_mvm_gadget(
                g, dset, {d: size_of(x, d) for d in values}, idx, x, y)
            gadgets.append(gadget)
            constraints.extend(cons)
            gadget_of_vertex[vertex] = gadget
    if idx > VARS_MAX:
        raise GuardError("reduction exceeds the variable guard")

    if kind == "mis":
        # link_nand ranges over ordered tuple pairs, so one call per edge
        # already covers both orientations
        base: Graph = grouped.base
        for u, v in sorted(base.edges):
            constraints.extend(link_nand(gadget_of_vertex[u], gadget_of_vertex[v], g, dset))
        for grp in grouped.groups:
            for u, v in itertools.combinations(grp, 2):
                constraints.extend(link_nand(gadget_of_vertex[u], gadget_of_vertex[v], g, dset))
    else:
        base: Digraph = grouped.base
        for u, v in sorted(base.arcs):
            constraints.extend(link_imp(gadget_of_vertex[u], gadget_of_vertex[v], g, dset))

    out = ReductionOutput(
        _assemble(g, idx, constraints, k, None),
        tuple(gadgets),
        faithful,
        "one gadget per source vertex; a source solution maps to the standard "
        "assignment on the selected gadgets (all other variables 0)",
    )
    if verify and grouped.base.n <= 64:
        _verify_forward(out, grouped, kind)
    return out


def _verify_forward(out: ReductionOutput, grouped: GroupedGraph, kind: str) -> None:
    if kind == "mis":
        solution = multicolored_independent_set(grouped)
    else:
        solution = multicolored_implications(grouped)
    if solution is None:
        return
    vertex_to_pos = {}
    for gi, grp in enumerate(grouped.groups, start=1):
        for yi, vertex in enumerate(grp, start=1):
            vertex_to_pos[vertex] = (gi, yi)
    selection = dict(vertex_to_pos[v] for v in solution)
    assignment = out.standard_assignment(selection)
    if not satisfies(out.instance, assignment):
        raise RuntimeError("internal: standard assignment of a source solution "
                           "does not satisfy the reduction output")
    # with caller-chosen bag sizes the caller also owns the size target, so
    # only exact sizes pin the standard assignment to k
    if out.faithful and sum(1 for v in assignment if v != 0) != out.instance.k:
        raise RuntimeError("internal: standard assignment misses the size target")


def reduce_mis(g: Language, dprime: Iterable[int], grouped: GroupedGraph,
               sizes="paper", k: Optional[int] = None, verify: bool = True) -> ReductionOutput:
    """Reduction from multicolored independent set: NAND links along edges
    and between same-group gadgets; needs a union counterexample in the
    dprime-restriction."""
    return _reduce_common(g, dprime, grouped, sizes, k, "mis", verify)


def reduce_implications(g: Language, dprime: Iterable[int], grouped: GroupedGraph,
                        sizes="paper", k: Optional[int] = None,
                        verify: bool = True) -> ReductionOutput:
    """Reduction from multicolored implications: IMP links along arcs; needs
    a difference counterexample in the dprime-restriction."""
    return _reduce_common(g, dprime, grouped, sizes, k, "imp", verify)


# ---------------------------------------------------------------------------
# clique -> multicolored implications
# ---------------------------------------------------------------------------

def clique_to_mimp(g: Graph, k: int) -> GroupedGraph:
    """Translate clique-of-size-k into a multicolored implications instance
    with k + C(k,2) groups of |E| vertices each.

    Vertex groups 1..k pick the clique members, pair groups pick the
    connecting edges; each edge choice forces its two endpoints through arcs.
    The input must satisfy |V| <= |E| (isolated vertices are added to reach
    equality; larger vertex counts are rejected rather than trimmed).
    """
    edges = sorted(g.edges)
    if g.n > len(edges):
        raise ValueError("the translation needs at least as many edges as vertices")
    n = len(edges)  # vertices padded up to the edge count
    t = k + k * (k - 1) // 2
    pair_index = {}
    nxt = k + 1
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            pair_index[(i, j)] = nxt
            nxt += 1

    def vid(i: int, j: int) -> int:
        return (i - 1) * n + (j - 1)

    arcs = set()
    for (i, j), grp in pair_index.items():
        for s, (a, b) in enumerate(edges, start=1):
            arcs.add((vid(grp, s), vid(i, a + 1)))
            arcs.add((vid(grp, s), vid(j, b + 1)))
    groups = tuple(tuple(vid(i, j) for j in range(1, n + 1)) for i in range(1, t + 1))
    return GroupedGraph(Digraph(t * n, frozenset(arcs)), groups)


# ---------------------------------------------------------------------------
# graph-problem encodings
# ---------------------------------------------------------------------------

def encode_graph_problem(kind: str, **params):
    """Encode a graph problem as (language, instance) over a fixed relation.

    Kinds and parameters:
      independent_set(graph, t)            size target, language of R_IS
      vertex_cover(graph, t)               size target, R_VC (not 0-valid)
      implications(digraph, t)             size target, R_IM
      biclique(graph, side_a, side_b, t1, t2)
                                           counts, R_BC on bipartite-complement
                                           pairs plus per-side unary relations
      general_biclique(graph, t1, t2)      counts, symmetric pair relation on
                                           complement pairs; equivalent to a
                                           clique of size t1+t2 split in two
      p_partite_clique(graph, parts, t, variant="tuples"|"pairs")
                                           counts, forbidden all-selected
                                           cross-tuples / pairs, with per-part
                                           unary relations
      p_colorable_subgraph(graph, k, p)    size target, coloring relation
      p_partite_complete_subgraph(graph, sizes)
                                           counts, same-part-or-adjacent pairs
    """
    encoders = {
        "independent_set": _encode_independent_set,
        "vertex_cover": _encode_vertex_cover,
        "implications": _encode_implications,
        "biclique": _encode_biclique,
        "general_biclique": _encode_general_biclique,
        "p_partite_clique": _encode_p_partite_clique,
        "p_colorable_subgraph": _encode_p_colorable,
        "p_partite_complete_subgraph": _encode_p_complete_subgraph,
    }
    if kind not in encoders:
        raise ValueError(f"unknown encoding kind {kind!r}")
    return encoders[kind](**params)


def _encode_independent_set(graph: Graph, t: int):
    lang = cc0_complete(language([catalog.r_independent_set()]))
    rel = lang.relation_named("R_IS")
    cons = [Constraint((u, v), rel) for u, v in sorted(graph.edges)]
    return lang, instance(graph.n, cons, t, lang)


def _encode_vertex_cover(graph: Graph, t: int):
    lang = language([catalog.r_vertex_cover()])
    rel = lang.relation_named("R_VC")
    cons = [Constraint((u, v), rel) for u, v in sorted(graph.edges)]
    return lang, instance(graph.n, cons, t, lang)


def _encode_implications(digraph_: Digraph, t: int):
    lang = cc0_complete(language([catalog.r_implication()]))
    rel = lang.relation_named("R_IM")
    cons = [Constraint((u, v), rel) for u, v in sorted(digraph_.arcs)]
    return lang, instance(digraph_.n, cons, t, lang)


def _encode_biclique(graph: Graph, side_a: Sequence[int], side_b: Sequence[int],
                     t1: int, t2: int):
    if set(side_a) & set(side_b):
        raise ValueError("the two sides must be disjoint")
    lang = cc0_complete(language([catalog.r_biclique()]))
    rel = lang.relation_named("R_BC")
    u1 = lang.find_extensional(1, [(0,), (1,)])
    u2 = lang.find_extensional(1, [(0,), (2,)])
    comp = bipartite_complement(graph, side_a, side_b)
    cons = []
    side_b_set = set(side_b)
    for u, v in sorted(comp.edges):
        a, b = (u, v) if v in side_b_set else (v, u)
        cons.append(Constraint((a, b), rel))
    for v in sorted(side_a):
        cons.append(Constraint((v,), u1))
    for v in sorted(side_b):
        cons.append(Constraint((v,), u2))
    return lang, instance(graph.n, cons, t1 + t2, lang, {1: t1, 2: t2})


def _encode_general_biclique(graph: Graph, t1: int, t2: int):
    lang = cc0_complete(language([catalog.r_biclique_general()]))
    rel = lang.relation_named("R_BCG")
    comp = complement(graph)
    cons = [Constraint((u, v), rel) for u, v in sorted(comp.edges)]
    return lang, instance(graph.n, cons, t1 + t2, lang, {1: t1, 2: t2})


def _encode_p_partite_clique(graph: Graph, parts: Sequence[Sequence[int]], t: int,
                             variant: str = "tuples"):
    p = len(parts)
    comp = multipartite_complement(graph, parts)
    if variant == "pairs":
        rels = [catalog.r_partite_pairs(p)] + [catalog.r_value_unary(i)
                                               for i in range(1, p + 1)]
        lang = cc0_complete(language(rels, domain=range(p + 1)))
        pair_rel = lang.relation_named(f"R_PC{p}")
        cons = []
        for u, v in sorted(comp.edges):
            cons.append(Constraint((u, v), pair_rel))
        for i, part in enumerate(parts, start=1):
            unary = lang.relation_named(f"R_U{i}")
            for v in sorted(part):
                cons.append(Constraint((v,), unary))
        pi = {i: t for i in range(1, p + 1)}
        return lang, instance(graph.n, cons, p * t, lang, pi)
    if variant != "tuples":
        raise ValueError("variant must be 'tuples' or 'pairs'")
    lang = cc0_complete(language([catalog.r_multipartite_clique(p)], domain=range(p + 1)))
    rel = lang.relation_named(f"R_MC{p}")
    cons = []
    for combo in itertools.product(*(sorted(part) for part in parts)):
        if any(comp.adjacent(u, v) for u, v in itertools.combinations(combo, 2)):
            cons.append(Constraint(tuple(combo), rel))
    for i, part in enumerate(parts, start=1):
        unary = lang.find_extensional(1, [(0,), (i,)])
        for v in sorted(part):
            cons.append(Constraint((v,), unary))
    pi = {i: t for i in range(1, p + 1)}
    return lang, instance(graph.n, cons, p * t, lang, pi)


def _encode_p_colorable(graph: Graph, k: int, p: int):
    lang = cc0_complete(language([catalog.r_colorable(p)], domain=range(p + 1)))
    rel = lang.relation_named(f"R_COL{p}")
    cons = [Constraint((u, v), rel) for u, v in sorted(graph.edges)]
    return lang, instance(graph.n, cons, k, lang)


def _encode_p_complete_subgraph(graph: Graph, sizes: Sequence[int]):
    p = len(sizes)
    lang = cc0_complete(language([catalog.r_same_part(p)], domain=range(p + 1)))
    rel = lang.relation_named(f"R_CS{p}")
    comp = complement(graph)
    cons = [Constraint((u, v), rel) for u, v in sorted(comp.edges)]
    pi = {i: sizes[i - 1] for i in range(1, p + 1)}
    return lang, instance(graph.n, cons, sum(sizes), lang, pi)

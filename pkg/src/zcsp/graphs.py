"""Graph containers and small brute-force deciders for the source problems.

The deciders are deliberately naive (subset/product enumeration with light
pruning); they act as independent references when verifying that reductions
and encodings preserve answers, so they must not share machinery with the
constructions they check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


@dataclass(frozen=True)
class Graph:
    """Undirected graph on vertices 0..n-1; edges stored as sorted pairs."""

    n: int
    edges: frozenset

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.n and 0 <= v < self.n) or u >= v:
                raise ValueError(f"bad edge ({u}, {v})")

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges


@dataclass(frozen=True)
class Digraph:
    """Directed graph on vertices 0..n-1."""

    n: int
    arcs: frozenset

    def __post_init__(self):
        for u, v in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"bad arc ({u}, {v})")


@dataclass(frozen=True)
class GroupedGraph:
    """A graph or digraph whose vertices are partitioned into groups."""

    base: object  # Graph | Digraph
    groups: tuple  # tuple of tuples of vertex indices

    def __post_init__(self):
        seen = set()
        for grp in self.groups:
            for v in grp:
                if not 0 <= v < self.base.n or v in seen:
                    raise ValueError("groups must partition distinct vertices")
                seen.add(v)
        if len(seen) != self.base.n:
            raise ValueError("groups must cover every vertex")


def graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    return Graph(n, frozenset((min(u, v), max(u, v)) for u, v in edges))


def digraph(n: int, arcs: Iterable[Sequence[int]]) -> Digraph:
    return Digraph(n, frozenset((u, v) for u, v in arcs))


def complement(g: Graph) -> Graph:
    all_pairs = {(u, v) for u in range(g.n) for v in range(u + 1, g.n)}
    return Graph(g.n, frozenset(all_pairs - g.edges))


def bipartite_complement(g: Graph, side_a: Sequence[int], side_b: Sequence[int]) -> Graph:
    pairs = {(min(u, v), max(u, v)) for u in side_a for v in side_b}
    return Graph(g.n, frozenset(pairs - g.edges))


def multipartite_complement(g: Graph, parts: Sequence[Sequence[int]]) -> Graph:
    pairs = set()
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            for u in parts[i]:
                for v in parts[j]:
                    pairs.add((min(u, v), max(u, v)))
    return Graph(g.n, frozenset(pairs - g.edges))


# ---------------------------------------------------------------------------
# brute-force deciders
# ---------------------------------------------------------------------------

def independent_set_exists(g: Graph, t: int) -> bool:
    for combo in itertools.combinations(range(g.n), t):
        if all(not g.adjacent(u, v) for u, v in itertools.combinations(combo, 2)):
            return True
    return False


def vertex_cover_exists(g: Graph, t: int) -> bool:
    for combo in itertools.combinations(range(g.n), t):
        chosen = set(combo)
        if all(u in chosen or v in chosen for u, v in g.edges):
            return True
    return False


def clique_exists(g: Graph, t: int) -> bool:
    for combo in itertools.combinations(range(g.n), t):
        if all(g.adjacent(u, v) for u, v in itertools.combinations(combo, 2)):
            return True
    return False


def implications_solution_exists(dg: Digraph, t: int) -> bool:
    """A set of exactly t vertices with no arc leaving it."""
    for combo in itertools.combinations(range(dg.n), t):
        chosen = set(combo)
        if all(not (u in chosen and v not in chosen) for u, v in dg.arcs):
            return True
    return False


def multicolored_independent_set(cg: GroupedGraph) -> Optional[tuple]:
    """One vertex per group, pairwise nonadjacent; None when impossible."""
    g: Graph = cg.base

    def rec(i: int, acc: list) -> Optional[tuple]:
        if i == len(cg.groups):
            return tuple(acc)
        for v in cg.groups[i]:
            if all(not g.adjacent(v, u) for u in acc):
                acc.append(v)
            else:
                continue
            found = rec(i + 1, acc)
            if found is not None:
                return found
            acc.pop()
        return None

    return rec(0, [])


def multicolored_implications(cg: GroupedGraph) -> Optional[tuple]:
    """One vertex per group forming an arc-closed set; None when impossible.

    Backtracking with forward propagation along outgoing arcs, so padded
    instances with many groups stay tractable.
    """
    dg: Digraph = cg.base
    group_of = {}
    for gi, grp in enumerate(cg.groups):
        for v in grp:
            group_of[v] = gi
    out_arcs = {v: [] for v in range(dg.n)}
    for u, v in sorted(dg.arcs):
        out_arcs[u].append(v)

    t = len(cg.groups)

    def propagate(chosen: dict, v: int) -> Optional[list]:
        """Force v into the set; returns newly decided groups or None."""
        added = []
        stack = [v]
        while stack:
            w = stack.pop()
            gi = group_of[w]
            if gi in chosen:
                if chosen[gi] != w:
                    for g_ in added:
                        del chosen[g_]
                    return None
                continue
            chosen[gi] = w
            added.append(gi)
            stack.extend(out_arcs[w])
        return added

    def rec(chosen: dict) -> Optional[dict]:
        if len(chosen) == t:
            return dict(chosen)
        gi = min(i for i in range(t) if i not in chosen)
        for v in cg.groups[gi]:
            added = propagate(chosen, v)
            if added is None:
                continue
            found = rec(chosen)
            if found is not None:
                return found
            for g_ in added:
                del chosen[g_]
        return None

    solution = rec({})
    if solution is None:
        return None
    return tuple(solution[i] for i in range(t))


def biclique_exists(g: Graph, side_a: Sequence[int], side_b: Sequence[int],
                    t1: int, t2: int) -> bool:
    """t1 vertices of side_a and t2 of side_b, all pairs adjacent."""
    for combo_a in itertools.combinations(side_a, t1):
        for combo_b in itertools.combinations(side_b, t2):
            if all(g.adjacent(u, v) for u in combo_a for v in combo_b):
                return True
    return False


def multipartite_clique_exists(g: Graph, parts: Sequence[Sequence[int]], t: int) -> bool:
    """t vertices per part, every cross-part pair adjacent."""

    def rec(i: int, acc: list) -> bool:
        if i == len(parts):
            return True
        for combo in itertools.combinations(parts[i], t):
            if all(g.adjacent(u, v) for u in combo for grp in acc for v in grp):
                acc.append(combo)
                if rec(i + 1, acc):
                    return True
                acc.pop()
        return False

    return rec(0, [])


def cross_adjacent_split_exists(g: Graph, sizes: Sequence[int]) -> bool:
    """Disjoint vertex sets of the given sizes with every pair of vertices
    from different sets adjacent (membership within a set is unconstrained)."""

    def rec(i: int, used: set, acc: list) -> bool:
        if i == len(sizes):
            return True
        for combo in itertools.combinations(sorted(set(range(g.n)) - used), sizes[i]):
            if all(g.adjacent(u, v) for u in combo for grp in acc for v in grp):
                acc.append(combo)
                if rec(i + 1, used | set(combo), acc):
                    return True
                acc.pop()
        return False

    return rec(0, set(), [])


def colorable_subgraph_exists(g: Graph, k: int, p: int) -> bool:
    """A set of k vertices inducing a p-colorable subgraph."""
    for combo in itertools.combinations(range(g.n), k):
        for coloring in itertools.product(range(p), repeat=k):
            colors = dict(zip(combo, coloring))
            if all(colors[u] != colors[v]
                   for u, v in itertools.combinations(combo, 2) if g.adjacent(u, v)):
                return True
    return False

"""Standard relations used by the graph-problem encoders and the test suite.

Tuples are written out explicitly; every builder returns a plain Relation so
callers can assemble and close languages as needed.
"""

from __future__ import annotations

import itertools

from .relations import Relation, relation


def r_independent_set() -> Relation:
    """Binary on {0,1}: forbids both endpoints taking 1."""
    return relation("R_IS", [(0, 0), (1, 0), (0, 1)])


def r_implication() -> Relation:
    """Binary on {0,1}: a selected first endpoint forces the second."""
    return relation("R_IM", [(0, 0), (0, 1), (1, 1)])


def r_vertex_cover() -> Relation:
    """Binary on {0,1}: at least one endpoint selected (not 0-valid)."""
    return relation("R_VC", [(0, 1), (1, 0), (1, 1)])


def r_biclique() -> Relation:
    """Binary on {0,1,2}: forbids 1 on the first with 2 on the second."""
    return relation("R_BC", [(0, 0), (1, 0), (0, 2)])


def r_biclique_general() -> Relation:
    """Symmetric variant over {0,1,2}: at most one endpoint nonzero."""
    return relation("R_BCG", [(0, 0), (1, 0), (0, 2), (2, 0), (0, 1)])


def r_multipartite_clique(p: int) -> Relation:
    """p-ary: coordinate i ranges over {0, i}; the all-selected tuple is cut."""
    cube = itertools.product(*[(0, i) for i in range(1, p + 1)])
    full = tuple(range(1, p + 1))
    return relation(f"R_MC{p}", [t for t in cube if t != full], arity=p)


def r_partite_pairs(p: int) -> Relation:
    """Binary over {0..p}: at most one endpoint nonzero."""
    tuples = [(0, 0)]
    for i in range(1, p + 1):
        tuples += [(i, 0), (0, i)]
    return relation(f"R_PC{p}", tuples)


def r_value_unary(i: int) -> Relation:
    return relation(f"R_U{i}", [(0,), (i,)])


def r_colorable(p: int) -> Relation:
    """Binary over {0..p}: forbids equal nonzero colors on the endpoints."""
    dom = range(p + 1)
    return relation(f"R_COL{p}",
                    [(a, b) for a in dom for b in dom if a == 0 or a != b])


def r_same_part(p: int) -> Relation:
    """Binary over {0..p}: the nonzero parts of the endpoints agree."""
    tuples = {(0, 0)}
    for i in range(1, p + 1):
        tuples |= {(i, 0), (0, i), (i, i)}
    return relation(f"R_CS{p}", sorted(tuples))


def r_even(arity: int) -> Relation:
    """Boolean tuples with an even number of ones."""
    return relation(f"R_EVEN{arity}",
                    [t for t in itertools.product((0, 1), repeat=arity)
                     if sum(t) % 2 == 0], arity=arity)


def r_mod(p: int, d: int, arity: int) -> Relation:
    """Tuples over {0..d} whose coordinate sum is divisible by p."""
    return relation(f"R_MOD{p}",
                    [t for t in itertools.product(range(d + 1), repeat=arity)
                     if sum(t) % p == 0], arity=arity)


def r_le(d: int) -> Relation:
    """Order relation x <= y over {0..d}."""
    return relation(f"R_LE{d}",
                    [(x, y) for x in range(d + 1) for y in range(d + 1) if x <= y])


def r_lt(d: int) -> Relation:
    """Strict order x < y over {0..d}, plus (0,0) to keep it 0-valid."""
    return relation(f"R_LT{d}",
                    [(0, 0)] + [(x, y) for x in range(d + 1) for y in range(d + 1) if x < y])

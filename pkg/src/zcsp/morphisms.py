"""Algebraic analysis of constraint languages: zero-preserving morphisms.

Single-valued morphisms (endomorphisms, inner homomorphisms, retractions,
contractions), multivalued morphisms, the "produces" relation between values,
the four-way value typing it induces, components and the cores they generate,
closed value sets, weak-separability counterexamples, partition sets of
endomorphisms, and recoverability of a tuple through a morphism.

All searches are exhaustive over the (guarded) domain, use backtracking with
partial-tuple pruning, and are deterministic: candidates are enumerated in
ascending value order and the first hit in that order is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .relations import (
    Language,
    Relation,
    is_extension,
    restrict_language,
    tuple_difference,
    tuple_union,
    tuples_disjoint,
)


# ---------------------------------------------------------------------------
# morphism values
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SingleMorphism:
    """A zero-preserving map between value sets, stored as sorted pairs."""

    source: frozenset
    target: frozenset
    pairs: tuple

    def __post_init__(self):
        m = dict(self.pairs)
        if set(m) != set(self.source):
            raise ValueError("mapping must be total over the source")
        if m.get(0, None) != 0:
            raise ValueError("a morphism must map 0 to 0")
        if any(v not in self.target for v in m.values()):
            raise ValueError("mapping leaves the target")

    @classmethod
    def from_dict(cls, mapping: Mapping[int, int], source: Iterable[int],
                  target: Iterable[int]) -> "SingleMorphism":
        src = frozenset(source) | {0}
        tgt = frozenset(target) | {0}
        full = dict(mapping)
        full[0] = 0
        return cls(src, tgt, tuple(sorted(full.items())))

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def __call__(self, v: int) -> int:
        return dict(self.pairs)[v]

    def apply(self, t: Sequence[int]) -> tuple:
        m = dict(self.pairs)
        return tuple(m[v] for v in t)

    def image(self) -> frozenset:
        return frozenset(v for _, v in self.pairs)

    def is_zero_free(self) -> bool:
        """No nonzero value is sent to 0 (the contraction property)."""
        return all(v != 0 for k, v in self.pairs if k != 0)


@dataclass(frozen=True)
class MultiMorphism:
    """A zero-preserving set-valued map; every image set is nonempty."""

    source: frozenset
    target: frozenset
    pairs: tuple  # sorted (value, frozenset) pairs

    def __post_init__(self):
        m = dict(self.pairs)
        if set(m) != set(self.source):
            raise ValueError("mapping must be total over the source")
        if m.get(0, None) != frozenset({0}):
            raise ValueError("a multivalued morphism must map 0 to {0}")
        for v, img in m.items():
            if not img:
                raise ValueError(f"image of {v} is empty")
            if not img <= self.target:
                raise ValueError(f"image of {v} leaves the target")

    @classmethod
    def from_dict(cls, mapping: Mapping[int, Iterable[int]], source: Iterable[int],
                  target: Iterable[int]) -> "MultiMorphism":
        src = frozenset(source) | {0}
        tgt = frozenset(target) | {0}
        full = {v: frozenset(img) for v, img in mapping.items()}
        full[0] = frozenset({0})
        return cls(src, tgt, tuple(sorted(full.items())))

    def as_dict(self) -> dict:
        return dict(self.pairs)

    def __call__(self, v: int) -> frozenset:
        return dict(self.pairs)[v]

    def image(self) -> frozenset:
        out = set()
        for _, img in self.pairs:
            out |= img
        return frozenset(out)

    def apply(self, t: Sequence[int]) -> Iterator[tuple]:
        """All tuples in the coordinatewise image product."""
        m = dict(self.pairs)
        return itertools.product(*(sorted(m[v]) for v in t))


class ValueType(IntEnum):
    REGULAR = 1
    SEMIREGULAR = 2
    SELF_PRODUCING = 3
    DEGENERATE = 4


@dataclass(frozen=True)
class Counterexample:
    """A weak-separability violation: (relation, t1, t2).

    kind == "union":      t1, t2 in R disjoint, t1+t2 not in R.
    kind == "difference": t2 and t1+t2 in R, t1 not in R, t1 and t2 disjoint.
    """

    kind: str
    relation: Relation
    t1: tuple
    t2: tuple

    def verify(self) -> bool:
        r = self.relation
        if not tuples_disjoint(self.t1, self.t2):
            return False
        u = tuple_union(self.t1, self.t2)
        if self.kind == "union":
            return self.t1 in r.tuples and self.t2 in r.tuples and u not in r.tuples
        if self.kind == "difference":
            return self.t2 in r.tuples and u in r.tuples and self.t1 not in r.tuples
        return False


# ---------------------------------------------------------------------------
# direct checks
# ---------------------------------------------------------------------------

def check_single_morphism(g: Language, m: SingleMorphism) -> bool:
    """True iff m maps every tuple of every relation restricted to its source
    back into the relation."""
    src = m.source
    mp = m.as_dict()
    for r in g.relations:
        for t in r.sorted_tuples:
            if all(v in src for v in t):
                if tuple(mp[v] for v in t) not in r.tuples:
                    return False
    return True


def check_multi_morphism(g: Language, m: MultiMorphism) -> bool:
    """True iff the full image product of every source-restricted tuple of
    every relation lies inside the relation."""
    src = m.source
    mp = m.as_dict()
    for r in g.relations:
        for t in r.sorted_tuples:
            if all(v in src for v in t):
                for image_tuple in itertools.product(*(sorted(mp[v]) for v in t)):
                    if image_tuple not in r.tuples:
                        return False
    return True


def identity_morphism(domain: Iterable[int]) -> SingleMorphism:
    dom = frozenset(domain) | {0}
    return SingleMorphism(dom, dom, tuple(sorted((v, v) for v in dom)))


def retract(values: Iterable[int], domain: Iterable[int]) -> SingleMorphism:
    """The map fixing `values` pointwise and sending everything else to 0."""
    vals = frozenset(values)
    dom = frozenset(domain) | {0}
    if 0 in vals:
        raise ValueError("a retraction target must not contain 0")
    if not vals <= dom:
        raise ValueError("retraction values must lie in the domain")
    return SingleMorphism(dom, dom, tuple(sorted((v, v if v in vals else 0) for v in dom)))


def compose(a, b):
    """Left-to-right composition: a first, then b.

    single . single -> single; any combination involving a multivalued
    morphism yields a multivalued morphism.
    """
    if not a.target <= b.source:
        raise ValueError("target of the first morphism must lie in the source of the second")
    single_a = isinstance(a, SingleMorphism)
    single_b = isinstance(b, SingleMorphism)
    if single_a and single_b:
        am, bm = a.as_dict(), b.as_dict()
        return SingleMorphism(a.source, b.target,
                              tuple(sorted((v, bm[am[v]]) for v in a.source)))
    am, bm = a.as_dict(), b.as_dict()
    out = {}
    for v in a.source:
        av = am[v]
        if single_a:
            av = [av]
        images = set()
        for y in av:
            by = bm[y]
            images |= by if not single_b else {by}
        out[v] = frozenset(images)
    return MultiMorphism(a.source, b.target, tuple(sorted(out.items())))


# ---------------------------------------------------------------------------
# backtracking searches over zero-preserving maps
# ---------------------------------------------------------------------------

def _restricted_tuples(g: Language, source: frozenset):
    """(relation, tuple) pairs whose tuples stay within `source`."""
    for r in g.relations:
        for t in r.sorted_tuples:
            if all(v in source for v in t):
                yield r, t


def _checkpoints(g: Language, elems: Sequence[int], source: frozenset):
    """For each position i in elems, the (relation, tuple) pairs that become
    fully checkable once elems[:i+1] have images assigned."""
    pos = {e: i for i, e in enumerate(elems)}
    points = [[] for _ in elems]
    for r, t in _restricted_tuples(g, source):
        nz = {v for v in t if v != 0}
        if not nz:
            continue
        points[max(pos[v] for v in nz)].append((r, t))
    return points


def iter_single_maps(g: Language, source: Iterable[int],
                     candidates: Sequence[int]) -> Iterator[dict]:
    """All zero-preserving maps from `source` into `candidates` that preserve
    every relation of g restricted to `source`, in lexicographic order of the
    image tuple.  Yields plain dicts without the 0 entry."""
    src = frozenset(source) | {0}
    elems = sorted(src - {0})
    cand = sorted(set(candidates))
    points = _checkpoints(g, elems, src)
    mapping = {0: 0}

    def consistent(i: int) -> bool:
        for r, t in points[i]:
            if tuple(mapping[v] for v in t) not in r.tuples:
                return False
        return True

    def rec(i: int) -> Iterator[dict]:
        if i == len(elems):
            yield {e: mapping[e] for e in elems}
            return
        for value in cand:
            mapping[elems[i]] = value
            if consistent(i):
                yield from rec(i + 1)
        mapping.pop(elems[i], None)

    yield from rec(0)


def exists_multi_morphism(g: Language, fixed: Mapping[int, frozenset],
                          singleton_candidates: Optional[Sequence[int]] = None) -> bool:
    """Is there a multivalued morphism of g extending `fixed` with singleton
    images on the unfixed nonzero values?

    Any multivalued morphism whose images contain the fixed sets can be shrunk
    to this shape, so searching singletons is complete.
    """
    cand = sorted(singleton_candidates if singleton_candidates is not None else g.domain)
    fixed_full = {0: frozenset({0})}
    for v, img in fixed.items():
        fixed_full[v] = frozenset(img)
    free = sorted(g.domain - set(fixed_full))
    elems = sorted(g.nonzero_domain)
    images = dict(fixed_full)

    # Checkpoint position per element: fixed elements are decided up front,
    # free ones in ascending order; a tuple is checkable once every value in
    # its support is decided.
    decided_order = [e for e in elems if e in fixed_full] + free
    pos = {e: i for i, e in enumerate(decided_order)}
    tuple_points = [[] for _ in decided_order]
    for r, t in _restricted_tuples(g, g.domain):
        nz = {v for v in t if v != 0}
        if not nz:
            continue
        tuple_points[max(pos[v] for v in nz)].append((r, t))

    def check_at(i: int) -> bool:
        for r, t in tuple_points[i]:
            for image_tuple in itertools.product(*(sorted(images[v]) for v in t)):
                if image_tuple not in r.tuples:
                    return False
        return True

    n_fixed = len(decided_order) - len(free)
    for i in range(n_fixed):
        if not check_at(i):
            return False

    def rec(j: int) -> bool:
        if j == len(free):
            return True
        e = free[j]
        for value in cand:
            images[e] = frozenset({value})
            if check_at(n_fixed + j) and rec(j + 1):
                return True
        del images[e]
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# produces and value types
# ---------------------------------------------------------------------------

def produces(g: Language, x: int, y: int) -> bool:
    """True iff mapping x to {0, y} and every other nonzero value to {0} is a
    multivalued morphism of g."""
    if x == 0 or y == 0:
        raise ValueError("produces is defined for nonzero values")
    if x not in g.domain or y not in g.domain:
        raise ValueError("values must lie in the domain")
    mapping = {v: frozenset({0}) for v in g.nonzero_domain}
    mapping[x] = frozenset({0, y})
    m = MultiMorphism.from_dict(mapping, g.domain, g.domain)
    return check_multi_morphism(g, m)


def producers_of(g: Language, y: int) -> tuple:
    return tuple(x for x in sorted(g.nonzero_domain) if produces(g, x, y))


def value_type(g: Language, y: int) -> ValueType:
    """Classify a nonzero value by the multivalued morphisms it admits."""
    if y == 0:
        raise ValueError("value 0 is not typed")
    if y not in g.domain:
        raise ValueError(f"value {y} is not in the domain")
    witnessed = any(
        exists_multi_morphism(g, {x: frozenset({0, y})})
        for x in sorted(g.nonzero_domain)
    )
    if not witnessed:
        return ValueType.REGULAR
    prods = producers_of(g, y)
    if not prods:
        return ValueType.SEMIREGULAR
    if y in prods and all(produces(g, y, x) for x in prods):
        return ValueType.SELF_PRODUCING
    return ValueType.DEGENERATE


def value_types(g: Language) -> dict:
    return {d: value_type(g, d) for d in sorted(g.nonzero_domain)}


# ---------------------------------------------------------------------------
# components, cores, contractions, closed sets
# ---------------------------------------------------------------------------

def is_component(g: Language, c: Iterable[int]) -> bool:
    """A nonzero value set is a component iff its retraction preserves g."""
    cset = frozenset(c)
    if not cset or 0 in cset:
        raise ValueError("a component is a nonempty set of nonzero values")
    if not cset <= g.domain:
        raise ValueError("component values must lie in the domain")
    return check_single_morphism(g, retract(cset, g.domain))


@lru_cache(maxsize=512)
def all_components(g: Language) -> tuple:
    """Every component, ascending by (size, sorted members)."""
    elems = sorted(g.nonzero_domain)
    out = []
    for size in range(1, len(elems) + 1):
        for combo in itertools.combinations(elems, size):
            if is_component(g, combo):
                out.append(frozenset(combo))
    return tuple(out)


def component_generated(g: Language, x: Iterable[int]) -> frozenset:
    """Smallest component containing x: the union over d in x of the
    intersection of all components containing d."""
    xset = frozenset(x)
    if not xset:
        raise ValueError("the generating set must be nonempty")
    if 0 in xset or not xset <= g.domain:
        raise ValueError("the generating set must consist of nonzero domain values")
    comps = all_components(g)
    out = set()
    for d in sorted(xset):
        containing = [c for c in comps if d in c]
        gen = frozenset.intersection(*containing)
        out |= gen
    return frozenset(out)


def core(g: Language) -> frozenset:
    """Component generated by the nondegenerate values (empty iff the nonzero
    domain is empty)."""
    nondeg = [d for d in sorted(g.nonzero_domain)
              if value_type(g, d) != ValueType.DEGENERATE]
    if not nondeg:
        if g.nonzero_domain:
            raise RuntimeError("internal: a nonempty nonzero domain always has "
                               "a nondegenerate value")
        return frozenset()
    return component_generated(g, nondeg)


def is_core(g: Language) -> bool:
    return core(g) == g.nonzero_domain


def find_min_contraction(g: Language) -> SingleMorphism:
    """A zero-free endomorphism with minimum image size; identity when no
    proper contraction exists.  Ties break lexicographically on the image
    tuple, so the result is deterministic."""
    elems = sorted(g.nonzero_domain)
    if not elems:
        return identity_morphism(g.domain)
    best = None
    best_key = None
    for mapping in iter_single_maps(g, g.domain, elems):
        key = (len(set(mapping.values())), tuple(mapping[e] for e in elems))
        if best_key is None or key < best_key:
            best_key = key
            best = dict(mapping)
    return SingleMorphism.from_dict(best, g.domain, g.domain)


def has_proper_contraction(g: Language) -> bool:
    n = len(g.nonzero_domain)
    if n == 0:
        return False
    for mapping in iter_single_maps(g, g.domain, sorted(g.nonzero_domain)):
        if len(set(mapping.values())) < n:
            return True
    return False


def is_closed(g: Language, dprime: Iterable[int]) -> bool:
    """True iff no inner homomorphism from dprime maps a member outside it."""
    dset = frozenset(dprime)
    if 0 not in dset:
        raise ValueError("a closed set must contain 0")
    if not dset <= g.domain:
        raise ValueError("the set must lie in the domain")
    outside = g.domain - dset
    if not outside:
        return True
    for mapping in iter_single_maps(g, dset, sorted(g.domain)):
        if any(v in outside for v in mapping.values()):
            return False
    return True


# ---------------------------------------------------------------------------
# weak separability
# ---------------------------------------------------------------------------

def _union_counterexamples(r: Relation):
    for t1 in r.sorted_tuples:
        for t2 in r.sorted_tuples:
            if tuples_disjoint(t1, t2) and tuple_union(t1, t2) not in r.tuples:
                yield Counterexample("union", r, t1, t2)


def _difference_counterexamples(r: Relation):
    for u in r.sorted_tuples:
        for t2 in r.sorted_tuples:
            if is_extension(u, t2):
                t1 = tuple_difference(u, t2)
                if t1 not in r.tuples:
                    yield Counterexample("difference", r, t1, t2)


def _contained_in_generated(g: Language, t: Sequence[int]) -> bool:
    vals = frozenset(v for v in t if v != 0)
    if not vals:
        return True
    for a in sorted(g.nonzero_domain):
        if vals <= component_generated(g, {a}):
            return True
    return False


def find_counterexample(g: Language, component_normalized: bool = False) -> Optional[Counterexample]:
    """First weak-separability counterexample in scan order, or None.

    With component_normalized, only counterexamples whose tuples sit inside
    single-value-generated components are reported (union: t1 and t2 each in
    one; difference: t1+t2 in one); whenever any counterexample exists, a
    normalized one does too, so the filtered scan stays complete.
    """
    plain = None
    for r in g.relations:
        for cex in itertools.chain(_union_counterexamples(r),
                                   _difference_counterexamples(r)):
            if plain is None:
                plain = cex
            if not component_normalized:
                return cex
            if cex.kind == "union":
                if _contained_in_generated(g, cex.t1) and _contained_in_generated(g, cex.t2):
                    return cex
            else:
                if _contained_in_generated(g, tuple_union(cex.t1, cex.t2)):
                    return cex
    if plain is not None:
        raise RuntimeError("internal: a counterexample exists but no "
                           "component-normalized one was found")
    return None


def is_weakly_separable(g: Language) -> bool:
    return find_counterexample(g) is None


def value_weakly_separable(g: Language, d: int) -> bool:
    """True iff the restriction of g to {0, d} is weakly separable."""
    if d == 0:
        raise ValueError("weak separability of a value is defined for nonzero values")
    return find_counterexample(restrict_language(g, {0, d})) is None


# ---------------------------------------------------------------------------
# partition sets
# ---------------------------------------------------------------------------

def is_extensional_endomorphism(g: Language, mapping: Mapping[int, int]) -> bool:
    m = dict(mapping)
    m[0] = 0
    for r in g.relations:
        for t in r.sorted_tuples:
            if tuple(m[v] for v in t) not in r.tuples:
                return False
    return True


def find_bad_partition_set(g: Language) -> Optional[tuple]:
    """A bad partition set together with its (non-endomorphism) sum.

    A partition set is a family of endomorphisms in which every nonzero value
    is sent to nonzero by exactly one member; it is bad when the pointwise sum
    of the family fails to be an endomorphism.  Among bad sets, the one whose
    combined image is smallest is returned (ties broken lexicographically on
    the sum map); None when every partition set is good.

    A zero-free map h is a bad-set sum iff h is not an endomorphism and the
    nonzero domain splits into blocks on which the h-masked retraction-like
    maps are endomorphisms, so the search enumerates candidate sums directly.
    """
    elems = sorted(g.nonzero_domain)
    m = len(elems)
    if m == 0:
        return None
    index = {e: i for i, e in enumerate(elems)}

    candidates = sorted(
        itertools.product(sorted(g.nonzero_domain), repeat=m),
        key=lambda img: (len(set(img)), img),
    )
    for img in candidates:
        h = {e: img[i] for i, e in enumerate(elems)}
        if is_extensional_endomorphism(g, h):
            continue
        # masked(S): h on S, 0 elsewhere
        maskable = []
        for size in range(1, m):
            for combo in itertools.combinations(elems, size):
                masked = {e: (h[e] if e in combo else 0) for e in elems}
                if is_extensional_endomorphism(g, masked):
                    mask = 0
                    for e in combo:
                        mask |= 1 << index[e]
                    maskable.append((mask, combo))
        blocks = _exact_cover((1 << m) - 1, maskable)
        if blocks is None:
            continue
        parts = []
        for _, combo in blocks:
            masked = {e: (h[e] if e in combo else 0) for e in elems}
            parts.append(SingleMorphism.from_dict(masked, g.domain, g.domain))
        total = SingleMorphism.from_dict(h, g.domain, g.domain)
        return parts, total
    return None


def _exact_cover(full_mask: int, sets: Sequence[tuple]) -> Optional[list]:
    """Partition full_mask into disjoint masks drawn from sets; the cover with
    lexicographically smallest block sequence is returned."""
    sets = sorted(sets, key=lambda s: s[1])

    def rec(remaining: int, start_bit: int, acc: list) -> Optional[list]:
        if remaining == 0:
            return list(acc)
        lowest = remaining & -remaining
        for mask, combo in sets:
            if mask & lowest and mask & remaining == mask:
                acc.append((mask, combo))
                found = rec(remaining & ~mask, 0, acc)
                if found is not None:
                    return found
                acc.pop()
        return None

    return rec(full_mask, 0, [])


# ---------------------------------------------------------------------------
# recoverability
# ---------------------------------------------------------------------------

def is_recoverable(g: Language, h: SingleMorphism, t: Sequence[int]) -> bool:
    """True iff g has a multivalued morphism phi with t inside phi(h(t)).

    phi is only constrained on the values h takes on t's entries: each such
    image value b must have all its h-preimages among t's entries inside
    phi(b); the remaining values are searched over singleton images, which is
    complete because multivalued morphisms shrink to submorphisms.
    """
    if not check_single_morphism(g, h):
        raise ValueError("h is not an inner homomorphism of the language")
    vals = {v for v in t if v != 0}
    if not vals <= h.source:
        raise ValueError("tuple values must lie in the source of h")
    hm = h.as_dict()
    if any(hm[a] == 0 for a in vals):
        return False
    required = {}
    for a in sorted(vals):
        required.setdefault(hm[a], set()).add(a)
    fixed = {b: frozenset(req) for b, req in required.items()}
    return exists_multi_morphism(g, fixed)

"""Core data model for constraint languages with a distinguished zero value.

Relations are explicit, deduplicated tuple sets over a finite domain that
always contains 0.  A Language bundles relations with its carrier domain; an
Instance is a set of constraints over variables together with a size target k
and an optional per-value cardinality map.  The syntactic operations here
(constant substitution, domain restriction, tuple union/difference, closure
under zero-preserving substitutions) are the building blocks for everything
else in the package.

All types are immutable after construction and safe to share across threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

from .errors import GuardError

# Every downstream search is exponential in these; reject early.
DELTA_MAX = 7
ARITY_MAX = 6
K_MAX = 10
VARS_MAX = 10_000

DomainTuple = tuple  # alias for readability: a fixed-length tuple of ints


# ---------------------------------------------------------------------------
# tuple algebra
# ---------------------------------------------------------------------------

def tuple_size(t: Sequence[int]) -> int:
    """Number of nonzero entries."""
    return sum(1 for v in t if v != 0)


def support(t: Sequence[int]) -> tuple:
    """Indices of the nonzero entries, ascending."""
    return tuple(i for i, v in enumerate(t) if v != 0)


def tuples_disjoint(t1: Sequence[int], t2: Sequence[int]) -> bool:
    """True iff at every coordinate at least one of the tuples is 0."""
    if len(t1) != len(t2):
        raise ValueError("disjointness is defined for tuples of equal length")
    return all(a == 0 or b == 0 for a, b in zip(t1, t2))


def is_extension(big: Sequence[int], small: Sequence[int]) -> bool:
    """True iff big agrees with small on every nonzero coordinate of small."""
    if len(big) != len(small):
        return False
    return all(b == s for b, s in zip(big, small) if s != 0)


def tuple_union(t1: Sequence[int], t2: Sequence[int]) -> tuple:
    """Coordinatewise union of two disjoint tuples."""
    if not tuples_disjoint(t1, t2):
        raise ValueError(f"tuples {t1} and {t2} are not disjoint")
    return tuple(a if a != 0 else b for a, b in zip(t1, t2))


def tuple_difference(big: Sequence[int], small: Sequence[int]) -> tuple:
    """Remove a subset tuple: keep entries of big where small is 0."""
    if len(big) != len(small):
        raise ValueError("difference is defined for tuples of equal length")
    if not is_extension(big, small):
        raise ValueError(f"{big} is not an extension of {small}")
    return tuple(b if s == 0 else 0 for b, s in zip(big, small))


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """A named, fixed-arity set of tuples.

    Equality and hashing include the name; closure-style deduplication uses
    :meth:`key`, which treats relations extensionally.
    """

    name: str
    arity: int
    tuples: frozenset

    def __post_init__(self):
        if self.arity < 0:
            raise ValueError("arity must be nonnegative")
        if self.arity > ARITY_MAX:
            raise GuardError(f"arity {self.arity} exceeds the guard ({ARITY_MAX})")
        for t in self.tuples:
            if len(t) != self.arity:
                raise ValueError(f"tuple {t} does not match arity {self.arity}")
            if any(v < 0 for v in t):
                raise ValueError(f"tuple {t} contains a negative value")

    @cached_property
    def sorted_tuples(self) -> tuple:
        return tuple(sorted(self.tuples))

    @property
    def zero_valid(self) -> bool:
        return (0,) * self.arity in self.tuples

    @cached_property
    def max_value(self) -> int:
        return max((max(t) for t in self.tuples if t), default=0)

    def key(self):
        """Extensional identity: (arity, tuple set), name ignored."""
        return (self.arity, self.tuples)

    def __repr__(self):
        return f"Relation({self.name!r}, arity={self.arity}, {len(self.tuples)} tuples)"


def relation(name: str, tuples: Iterable[Sequence[int]], arity: Optional[int] = None) -> Relation:
    """Convenience constructor; infers arity from the first tuple."""
    tset = frozenset(tuple(t) for t in tuples)
    if arity is None:
        if not tset:
            raise ValueError("cannot infer arity of an empty relation")
        arity = len(next(iter(tset)))
    return Relation(name, arity, tset)


# ---------------------------------------------------------------------------
# languages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Language:
    """A finite set of relations over a carrier domain containing 0.

    The carrier is kept explicit (rather than recomputed from the tuples) so
    that restrictions to arbitrary value subsets stay first-class: a value
    that appears in no tuple still belongs to the domain and behaves as an
    isolated, freely usable value.
    """

    domain: frozenset
    relations: tuple

    def __post_init__(self):
        if 0 not in self.domain:
            raise ValueError("the domain must contain 0")
        if any(v < 0 for v in self.domain):
            raise ValueError("domain values must be nonnegative")
        if max(self.domain) > DELTA_MAX:
            raise GuardError(f"domain maximum {max(self.domain)} exceeds the guard ({DELTA_MAX})")
        seen = set()
        for r in self.relations:
            if r.name in seen:
                raise ValueError(f"duplicate relation name {r.name!r}")
            seen.add(r.name)
            for t in r.tuples:
                if any(v not in self.domain for v in t):
                    raise ValueError(f"relation {r.name}: tuple {t} leaves the domain")

    @property
    def delta(self) -> int:
        return max(self.domain)

    @cached_property
    def nonzero_domain(self) -> frozenset:
        return self.domain - {0}

    @cached_property
    def zero_valid(self) -> bool:
        return all(r.zero_valid for r in self.relations)

    @cached_property
    def r_max(self) -> int:
        return max((r.arity for r in self.relations), default=0)

    @cached_property
    def cc0(self) -> bool:
        """True iff every relation is 0-valid and every 0-valid constant
        substitution of a member is (extensionally) a member."""
        if not self.zero_valid:
            return False
        keys = {r.key() for r in self.relations}
        for r, positions, values in _all_substitutions(self):
            sub = substitute_constants(r, positions, values)
            if sub.zero_valid and sub.key() not in keys:
                return False
        return True

    def relation_named(self, name: str) -> Relation:
        for r in self.relations:
            if r.name == name:
                return r
        raise KeyError(f"no relation named {name!r}")

    def find_extensional(self, arity: int, tuples: Iterable[Sequence[int]]) -> Optional[Relation]:
        key = (arity, frozenset(tuple(t) for t in tuples))
        for r in self.relations:
            if r.key() == key:
                return r
        return None

    def __repr__(self):
        names = ", ".join(r.name for r in self.relations)
        return f"Language(domain={sorted(self.domain)}, [{names}])"


def language(relations: Iterable[Relation], domain: Optional[Iterable[int]] = None) -> Language:
    """Build a language; the domain defaults to the values used plus 0."""
    rels = tuple(relations)
    if domain is None:
        dom = {0}
        for r in rels:
            for t in r.tuples:
                dom.update(t)
    else:
        dom = set(domain) | {0}
    return Language(frozenset(dom), rels)


# ---------------------------------------------------------------------------
# syntactic operations
# ---------------------------------------------------------------------------

def substitute_constants(r: Relation, positions: Sequence[int], values: Sequence[int]) -> Relation:
    """Fix the given coordinates to constants and drop them.

    Keeps exactly the tuples matching the fixed values and removes the fixed
    coordinates; the result has arity ``r.arity - len(positions)``.  Positions
    are 0-based and must be distinct.
    """
    positions = tuple(positions)
    values = tuple(values)
    if len(positions) != len(values):
        raise ValueError("positions and values must have the same length")
    if len(set(positions)) != len(positions):
        raise ValueError("positions must be distinct")
    for p in positions:
        if not 0 <= p < r.arity:
            raise ValueError(f"position {p} out of range for arity {r.arity}")
    fixed = dict(zip(positions, values))
    keep = [i for i in range(r.arity) if i not in fixed]
    out = set()
    for t in r.tuples:
        if all(t[p] == v for p, v in fixed.items()):
            out.add(tuple(t[i] for i in keep))
    name = r.name
    if positions:
        name = f"{r.name}|{','.join(map(str, positions))};{','.join(map(str, values))}"
    return Relation(name, len(keep), frozenset(out))


def restrict(r: Relation, dprime: Iterable[int]) -> Relation:
    """Keep only the tuples whose every entry lies in dprime (0 required)."""
    dset = frozenset(dprime)
    if 0 not in dset:
        raise ValueError("the restriction set must contain 0")
    kept = frozenset(t for t in r.tuples if all(v in dset for v in t))
    return Relation(r.name, r.arity, kept)


def restrict_language(g: Language, dprime: Iterable[int]) -> Language:
    """Pointwise restriction of every relation; the carrier becomes dprime."""
    dset = frozenset(dprime)
    if 0 not in dset:
        raise ValueError("the restriction set must contain 0")
    if not dset <= g.domain:
        raise ValueError("the restriction set must be a subset of the domain")
    return Language(dset, tuple(restrict(r, dset) for r in g.relations))


def zero_valid_sublanguage(g: Language) -> Language:
    """Drop every relation that does not contain the all-zero tuple."""
    return Language(g.domain, tuple(r for r in g.relations if r.zero_valid))


def _all_substitutions(g: Language):
    """Yield (relation, positions, values) for every proper constant
    substitution (at least one coordinate fixed, at least one kept)."""
    dom = sorted(g.domain)
    for r in g.relations:
        for q in range(1, r.arity):
            for positions in itertools.combinations(range(r.arity), q):
                for values in itertools.product(dom, repeat=q):
                    yield r, positions, values


def cc0_complete(g: Language) -> Language:
    """Close a 0-valid language under constant substitutions whose results
    stay 0-valid, deduplicating extensionally.

    Substitutions compose, so a single pass over all position subsets of the
    input relations reaches the full closure.  Results of arity 0 are never
    produced (at least one coordinate is always kept).
    """
    if not g.zero_valid:
        bad = next(r.name for r in g.relations if not r.zero_valid)
        raise ValueError(f"relation {bad} is not 0-valid")
    out = list(g.relations)
    keys = {r.key() for r in out}
    for r, positions, values in _all_substitutions(g):
        sub = substitute_constants(r, positions, values)
        if not sub.zero_valid:
            continue
        if sub.key() in keys:
            continue
        keys.add(sub.key())
        out.append(sub)
    return Language(g.domain, tuple(out))


def supp_substitute(r: Relation, t: Sequence[int]) -> Relation:
    """Fix 0 at every coordinate outside the support of t and project.

    The result lives on the support coordinates of t, in ascending order.
    For the all-zero tuple this is the 0-ary relation containing the empty
    tuple, which keeps gadget construction total.
    """
    t = tuple(t)
    if len(t) != r.arity:
        raise ValueError("tuple length does not match relation arity")
    if t not in r.tuples:
        raise ValueError(f"tuple {t} is not a member of {r.name}")
    supp = support(t)
    zero_positions = tuple(i for i in range(r.arity) if i not in supp)
    return substitute_constants(r, zero_positions, (0,) * len(zero_positions))


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    scope: tuple
    relation: Relation

    def __post_init__(self):
        if len(self.scope) != self.relation.arity:
            raise ValueError(
                f"scope length {len(self.scope)} does not match arity "
                f"{self.relation.arity} of {self.relation.name}"
            )


def normalize_pi(pi: Optional[Mapping[int, int]], domain: frozenset) -> Optional[tuple]:
    """Normalize a cardinality map to a sorted tuple of (value, count) pairs
    covering every nonzero domain value (missing values count 0)."""
    if pi is None:
        return None
    for v, c in pi.items():
        if v == 0 or v not in domain:
            raise ValueError(f"cardinality map uses value {v} outside the nonzero domain")
        if c < 0:
            raise ValueError("cardinality counts must be nonnegative")
    return tuple((v, int(pi.get(v, 0))) for v in sorted(domain - {0}))


@dataclass(frozen=True)
class Instance:
    """Variables, constraints, a size target k, and an optional cardinality
    map pi (as a sorted tuple of (value, count) pairs covering the nonzero
    domain).  The language the constraints draw from travels with the
    instance."""

    num_vars: int
    constraints: tuple
    k: int
    pi: Optional[tuple]
    language: Language

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be nonnegative")
        if self.num_vars > VARS_MAX:
            raise GuardError(f"{self.num_vars} variables exceed the guard ({VARS_MAX})")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        for c in self.constraints:
            for v in c.scope:
                if not 0 <= v < self.num_vars:
                    raise ValueError(f"variable index {v} out of range")
        if self.pi is not None:
            total = sum(c for _, c in self.pi)
            if total != self.k:
                raise ValueError(f"cardinality counts sum to {total}, expected k={self.k}")

    @property
    def has_cardinality(self) -> bool:
        return self.pi is not None

    def pi_dict(self) -> Optional[dict]:
        return None if self.pi is None else dict(self.pi)

    def pi_count(self, value: int) -> int:
        if self.pi is None:
            raise ValueError("instance has no cardinality map")
        return dict(self.pi).get(value, 0)


def instance(num_vars: int, constraints: Iterable[Constraint], k: int,
             language: Language, pi: Optional[Mapping[int, int]] = None) -> Instance:
    return Instance(num_vars, tuple(constraints), k,
                    normalize_pi(pi, language.domain), language)


def satisfies(inst: Instance, assignment: Sequence[int]) -> bool:
    """Check every constraint against the (total) assignment."""
    if len(assignment) != inst.num_vars:
        raise ValueError("assignment length does not match num_vars")
    for c in inst.constraints:
        if tuple(assignment[i] for i in c.scope) not in c.relation.tuples:
            return False
    return True


def first_unsatisfied(inst: Instance, assignment: Sequence[int]) -> Optional[int]:
    """Index of the first violated constraint, or None."""
    for idx, c in enumerate(inst.constraints):
        if tuple(assignment[i] for i in c.scope) not in c.relation.tuples:
            return idx
    return None


def assignment_counts(assignment: Sequence[int], domain: frozenset) -> tuple:
    """Per-value occurrence counts as a sorted (value, count) tuple."""
    return tuple((v, sum(1 for a in assignment if a == v)) for v in sorted(domain - {0}))


def meets_targets(inst: Instance, assignment: Sequence[int]) -> bool:
    """Size k met, and the cardinality map met when present."""
    if tuple_size(assignment) != inst.k:
        return False
    if inst.pi is not None and assignment_counts(assignment, inst.language.domain) != inst.pi:
        return False
    return True

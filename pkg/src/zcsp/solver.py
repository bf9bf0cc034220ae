"""Solving machinery for size- and cardinality-constrained instances.

Contents:

* bounded search-tree enumeration of minimal satisfying extensions and
  minimal satisfying assignments, with the associated instance-independent
  bound functions;
* reduction of an arbitrary instance to 0-valid instances (substituting the
  minimal ways of satisfying the existing constraints);
* reduction to value-frequent instances over closed sub-domains, branching on
  the placements of rare values;
* the solver for weakly separable languages (combine pairwise disjoint
  minimal assignments to hit the target);
* the full fixed-parameter pipelines for size-constrained and
  cardinality-constrained instances, including the greedy extension over
  produced values for the cardinality case;
* enumeration of all cardinality refinements of a size-constrained instance;
* the brute-force oracle (exhaustive scan via the compiled kernel).

Every reduction records its substitutions, so solutions are reported against
the original instance.  All searches branch in a fixed order (constraint
index, scope position, ascending values), making results and statistics
deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from . import kernel
from .classify import CcspVerdict, OcspVerdict, classify_ccsp, classify_ocsp
from .errors import GuardError
from .morphisms import (
    ValueType,
    core,
    find_counterexample,
    find_min_contraction,
    producers_of,
    value_type,
    value_weakly_separable,
)
from .relations import (
    K_MAX,
    Constraint,
    Instance,
    Language,
    Relation,
    assignment_counts,
    first_unsatisfied,
    instance,
    is_extension,
    meets_targets,
    restrict_language,
    satisfies,
    substitute_constants,
    tuple_size,
)

SCAN_GUARD = 10 ** 8


# ---------------------------------------------------------------------------
# results, stats, bounds
# ---------------------------------------------------------------------------

@dataclass
class SolveStats:
    nodes: int = 0
    minimal_enumerated: int = 0

    def merge(self, other: "SolveStats") -> None:
        self.nodes += other.nodes
        self.minimal_enumerated += other.minimal_enumerated


@dataclass(frozen=True)
class SolveResult:
    status: str  # "solution" | "no_solution"
    assignment: Optional[tuple]
    stats: SolveStats

    @property
    def found(self) -> bool:
        return self.status == "solution"


def _solution(inst: Instance, assignment: Sequence[int], stats: SolveStats) -> SolveResult:
    assignment = tuple(assignment)
    if not satisfies(inst, assignment) or not meets_targets(inst, assignment):
        raise RuntimeError("internal: produced assignment fails verification")
    return SolveResult("solution", assignment, stats)


def _no_solution(stats: SolveStats) -> SolveResult:
    return SolveResult("no_solution", None, stats)


class BoundFunctions:
    """Worst-case enumeration bounds derived from the language shape.

    With D the carrier domain and r_max the largest arity:
      extensions_bound(k)        = ((|D|-1) * r_max) ** k
      per_variable_bound(k)      = (|D|-1) * extensions_bound(k)
      signature_cap(k)           = k * per_variable_bound(k)
      frequency_threshold(k)     = k**2 * (|D| + per_variable_bound(k))
    All values are exact integers.
    """

    def __init__(self, g: Language):
        self.domain_size = len(g.domain)
        self.r_max = g.r_max

    def extensions_bound(self, k: int) -> int:
        return ((self.domain_size - 1) * self.r_max) ** k

    def per_variable_bound(self, k: int) -> int:
        return (self.domain_size - 1) * self.extensions_bound(k)

    def signature_cap(self, k: int) -> int:
        return k * self.per_variable_bound(k)

    def frequency_threshold(self, k: int) -> int:
        return k * k * (self.domain_size + self.per_variable_bound(k))


# ---------------------------------------------------------------------------
# solution lifting through reductions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Lift:
    """Maps an assignment of a reduced instance back to the parent instance.

    fixed: parent variable -> value substituted during the reduction.
    index_map: reduced variable index -> parent variable index.
    """

    parent_vars: int
    fixed: tuple
    index_map: tuple

    def apply(self, assignment: Sequence[int]) -> tuple:
        out = [0] * self.parent_vars
        for v, val in self.fixed:
            out[v] = val
        for i, v in enumerate(self.index_map):
            out[v] = assignment[i]
        return tuple(out)


@dataclass(frozen=True)
class Reduction:
    instance: Instance
    lift: Lift


def _substitute_assignment(inst: Instance, f: Sequence[int],
                           target_domain: Optional[frozenset] = None) -> Reduction:
    """Fix the nonzero values of a satisfying assignment f as constants.

    Constraint relations are substituted accordingly (0-ary leftovers are
    satisfied and dropped), k and pi are decremented by what f used, and the
    language optionally restricted to target_domain.
    """
    lang = inst.language
    keep = [v for v in range(inst.num_vars) if f[v] == 0]
    new_index = {v: i for i, v in enumerate(keep)}
    fixed = tuple((v, f[v]) for v in range(inst.num_vars) if f[v] != 0)

    derived: dict = {}

    def register(rel: Relation) -> Relation:
        found = derived.get(rel.key())
        if found is not None:
            return found
        derived[rel.key()] = rel
        return rel

    for r in lang.relations:
        derived.setdefault(r.key(), r)

    new_constraints = []
    for c in inst.constraints:
        fixed_pos = [i for i, v in enumerate(c.scope) if f[v] != 0]
        rel = c.relation
        if fixed_pos:
            rel = substitute_constants(rel, fixed_pos, [f[c.scope[i]] for i in fixed_pos])
        if rel.arity == 0:
            continue  # f satisfies the constraint, so the 0-ary leftover holds
        rel = register(rel)
        scope = tuple(new_index[v] for v in c.scope if f[v] == 0)
        new_constraints.append(Constraint(scope, rel))

    dom = target_domain if target_domain is not None else lang.domain
    rel_list = []
    key_map = {}
    names = set()
    for old in derived.values():
        rel = old
        if target_domain is not None:
            rel = Relation(old.name, old.arity,
                           frozenset(t for t in old.tuples if all(v in dom for v in t)))
        if rel.name in names:
            rel = Relation(f"{rel.name}#{len(names)}", rel.arity, rel.tuples)
        names.add(rel.name)
        rel_list.append(rel)
        key_map[old.key()] = rel
    new_lang = Language(dom, tuple(rel_list))
    new_constraints = [Constraint(c.scope, key_map[c.relation.key()])
                       for c in new_constraints]

    new_k = inst.k - tuple_size(f)
    new_pi = None
    if inst.pi is not None:
        used = dict(assignment_counts(f, lang.domain))
        new_pi = {v: c - used.get(v, 0) for v, c in inst.pi if v in dom}
        if any(c < 0 for c in new_pi.values()):
            raise ValueError("substituted assignment exceeds the cardinality map")
    reduced = instance(len(keep), new_constraints, new_k, new_lang, new_pi)
    return Reduction(reduced, Lift(inst.num_vars, fixed, tuple(keep)))


def _pi_compatible(inst: Instance, f: Sequence[int]) -> bool:
    """Can f still be extended within the cardinality budget?"""
    if tuple_size(f) > inst.k:
        return False
    if inst.pi is None:
        return True
    used = dict(assignment_counts(f, inst.language.domain))
    return all(used.get(v, 0) <= c for v, c in inst.pi)


# ---------------------------------------------------------------------------
# bounded search tree
# ---------------------------------------------------------------------------

def _extension_search(inst: Instance, f: Sequence[int], k: int,
                      stats: Optional[SolveStats], find_all: bool):
    """Bounded-depth search for satisfying extensions of f of size <= k.

    Branches on the zero variables of the first unsatisfied constraint, every
    nonzero value, until the assignment satisfies the instance or the budget
    is spent.  With find_all the full leaf set is returned; otherwise the
    search stops at the first satisfying leaf.
    """
    if k > K_MAX:
        raise GuardError(f"search budget k={k} exceeds the guard ({K_MAX})")
    base = tuple(f)
    if tuple_size(base) > k:
        return []
    nonzero_values = sorted(inst.language.nonzero_domain)
    leaves = []
    seen = set()

    def rec(current: tuple, budget: int) -> bool:
        if stats is not None:
            stats.nodes += 1
        idx = first_unsatisfied(inst, current)
        if idx is None:
            if current not in seen:
                seen.add(current)
                leaves.append(current)
            return True
        if budget == 0:
            return False
        scope = inst.constraints[idx].scope
        hit = False
        for pos in range(len(scope)):
            v = scope[pos]
            if current[v] != 0:
                continue
            if scope.index(v) != pos:
                continue  # repeated variable in scope: branch once
            for value in nonzero_values:
                nxt = current[:v] + (value,) + current[v + 1:]
                if rec(nxt, budget - 1):
                    hit = True
                    if not find_all:
                        return True
        return hit

    rec(base, k - tuple_size(base))
    return leaves


def exists_satisfying_extension(inst: Instance, f: Sequence[int], k: int,
                                stats: Optional[SolveStats] = None) -> bool:
    return bool(_extension_search(inst, f, k, stats, find_all=False))


def minimal_extensions(inst: Instance, f: Sequence[int], k: int,
                       stats: Optional[SolveStats] = None) -> list:
    """All minimal satisfying extensions of f of size <= k, sorted.

    A satisfying leaf is minimal iff reverting any nonempty subset of the
    variables it changed breaks satisfaction.
    """
    base = tuple(f)
    leaves = _extension_search(inst, base, k, stats, find_all=True)
    out = []
    for leaf in leaves:
        changed = [v for v in range(inst.num_vars) if leaf[v] != base[v]]
        minimal = True
        for r in range(1, len(changed) + 1):
            for subset in itertools.combinations(changed, r):
                candidate = list(leaf)
                for v in subset:
                    candidate[v] = base[v]
                if satisfies(inst, candidate):
                    minimal = False
                    break
            if not minimal:
                break
        if minimal:
            out.append(leaf)
    out.sort()
    if stats is not None:
        stats.minimal_enumerated += len(out)
    return out


def minimal_assignments(inst: Instance, k: int,
                        stats: Optional[SolveStats] = None) -> list:
    """All minimal satisfying assignments of size <= k (nonzero, with no
    proper nonzero satisfying subset), sorted and deduplicated."""
    zero = (0,) * inst.num_vars
    candidates = set()
    for v in range(inst.num_vars):
        for d in sorted(inst.language.nonzero_domain):
            delta = zero[:v] + (d,) + zero[v + 1:]
            for ext in minimal_extensions(inst, delta, k, stats):
                candidates.add(ext)
    out = []
    for f in sorted(candidates):
        nz = [v for v in range(inst.num_vars) if f[v] != 0]
        minimal = True
        for r in range(1, len(nz)):
            for subset in itertools.combinations(nz, r):
                candidate = [0] * inst.num_vars
                for v in subset:
                    candidate[v] = f[v]
                if satisfies(inst, candidate):
                    minimal = False
                    break
            if not minimal:
                break
        if minimal:
            out.append(f)
    return out


def disjoint_minimal_decomposition(f: Sequence[int], minimal: Sequence[Sequence[int]]) -> Optional[list]:
    """Express f as a union of pairwise disjoint members of `minimal`, or None.

    Pieces are matched on the first still-uncovered nonzero variable, so the
    search is exhaustive but never revisits an ordering twice.
    """
    f = tuple(f)
    pool = [tuple(m) for m in minimal]

    def rec(rest: tuple, acc: list) -> Optional[list]:
        nz = [v for v, val in enumerate(rest) if val != 0]
        if not nz:
            return list(acc)
        v0 = nz[0]
        for m in pool:
            if m[v0] == rest[v0] and is_extension(rest, m):
                remainder = tuple(0 if m[i] != 0 else rest[i] for i in range(len(rest)))
                acc.append(m)
                found = rec(remainder, acc)
                if found is not None:
                    return found
                acc.pop()
        return None

    return rec(f, [])


# ---------------------------------------------------------------------------
# reduction to 0-valid instances
# ---------------------------------------------------------------------------

def reduce_to_0valid(inst: Instance, stats: Optional[SolveStats] = None) -> list:
    """One 0-valid instance per minimal satisfying extension of the all-zero
    assignment; the original is solvable iff some output is.  Returns
    Reduction records (instance plus lift)."""
    zero = (0,) * inst.num_vars
    out = []
    for f in minimal_extensions(inst, zero, inst.k, stats):
        if not _pi_compatible(inst, f):
            continue
        out.append(_substitute_assignment(inst, f))
    return out


# ---------------------------------------------------------------------------
# reduction to frequent instances
# ---------------------------------------------------------------------------

def is_frequent(inst: Instance, c: int, stats: Optional[SolveStats] = None) -> bool:
    """Every nonzero domain value can appear at >= c variables in satisfying
    assignments of size <= k."""
    return _first_infrequent(inst, c, stats) is None


def _value_support(inst: Instance, d: int, stats: Optional[SolveStats]) -> list:
    zero = (0,) * inst.num_vars
    out = []
    for v in range(inst.num_vars):
        delta = zero[:v] + (d,) + zero[v + 1:]
        if exists_satisfying_extension(inst, delta, inst.k, stats):
            out.append(v)
    return out


def _first_infrequent(inst: Instance, c: int, stats: Optional[SolveStats]):
    for d in sorted(inst.language.nonzero_domain):
        support_vars = _value_support(inst, d, stats)
        if len(support_vars) < c:
            return d, support_vars
    return None


def reduce_to_frequent(inst: Instance, c: int,
                       stats: Optional[SolveStats] = None) -> list:
    """Branch on the placements of infrequent values until every remaining
    value is c-frequent; outputs live over shrinking closed sub-domains.

    For a value d that can appear at fewer than c variables, every placement
    (every subset of its support for size targets; the subsets of cardinality
    pi(d) when a cardinality map is present) is substituted and d is removed
    from the domain.  The original instance is solvable iff some output is.
    """
    out = []

    def rec(current: Instance, lift: Lift) -> None:
        found = _first_infrequent(current, c, stats)
        if found is None:
            out.append(Reduction(current, lift))
            return
        d, support_vars = found
        if current.pi is not None:
            sizes = [current.pi_count(d)]
        else:
            sizes = range(0, min(len(support_vars), current.k) + 1)
        shrunk = current.language.domain - {d}
        for size in sizes:
            for subset in itertools.combinations(support_vars, size):
                placement = tuple(d if v in subset else 0 for v in range(current.num_vars))
                if tuple_size(placement) > current.k:
                    continue
                for f in minimal_extensions(current, placement, current.k, stats):
                    if not _pi_compatible(current, f):
                        continue
                    step = _substitute_assignment(current, f, target_domain=shrunk)
                    rec(step.instance, _compose_lifts(lift, step.lift))

    rec(inst, _identity_lift(inst.num_vars))
    return out


def _identity_lift(n: int) -> Lift:
    return Lift(n, (), tuple(range(n)))


def _compose_lifts(outer: Lift, inner: Lift) -> Lift:
    fixed = dict(outer.fixed)
    for v, val in inner.fixed:
        fixed[outer.index_map[v]] = val
    index_map = tuple(outer.index_map[v] for v in inner.index_map)
    return Lift(outer.parent_vars, tuple(sorted(fixed.items())), index_map)


# ---------------------------------------------------------------------------
# weakly separable solving
# ---------------------------------------------------------------------------

def solve_weakly_separable(inst: Instance, g: Optional[Language] = None,
                           stats: Optional[SolveStats] = None) -> SolveResult:
    """Solve an instance over a weakly separable language (caller-verified).

    Enumerates the minimal satisfying assignments, keeps a bounded number per
    cardinality signature, and searches for a pairwise disjoint family whose
    signatures add up to the target (the cardinality map when present, any
    total of k otherwise).  Correct because every satisfying assignment is a
    disjoint union of minimal ones over such languages.
    """
    stats = stats if stats is not None else SolveStats()
    lang = g if g is not None else inst.language
    zero = (0,) * inst.num_vars
    if inst.k == 0:
        if satisfies(inst, zero):
            return _solution(inst, zero, stats)
        return _no_solution(stats)

    minimal = minimal_assignments(inst, inst.k, stats)
    bounds = BoundFunctions(lang)
    # the cap only has to dominate the true per-signature requirement, and a
    # constraint-free language (r_max = 0) still has its singleton assignments
    cap = max(1, bounds.signature_cap(inst.k))
    kept: dict = {}
    pool = []
    for f in minimal:
        sig = assignment_counts(f, lang.domain)
        bucket = kept.setdefault(sig, 0)
        if bucket < cap:
            kept[sig] = bucket + 1
            pool.append((f, sig))

    values = sorted(lang.nonzero_domain)
    target = dict(inst.pi) if inst.pi is not None else None

    masks = []
    for f, sig in pool:
        mask = 0
        for v in range(inst.num_vars):
            if f[v] != 0:
                mask |= 1 << v
        masks.append((f, sig, mask))

    def rec(start: int, used_mask: int, remaining: dict, rem_total: int, acc: list):
        stats.nodes += 1
        if rem_total == 0:
            return list(acc)
        for i in range(start, len(masks)):
            f, sig, mask = masks[i]
            if mask & used_mask:
                continue
            size = sum(c for _, c in sig)
            if size > rem_total:
                continue
            if target is not None:
                if any(c > remaining[v] for v, c in sig):
                    continue
                for v, c in sig:
                    remaining[v] -= c
            acc.append(f)
            found = rec(i + 1, used_mask | mask, remaining, rem_total - size, acc)
            if found is not None:
                return found
            acc.pop()
            if target is not None:
                for v, c in sig:
                    remaining[v] += c
        return None

    remaining = dict(target) if target is not None else {v: 0 for v in values}
    family = rec(0, 0, remaining, inst.k, [])
    if family is None:
        return _no_solution(stats)
    combined = [0] * inst.num_vars
    for f in family:
        for v in range(inst.num_vars):
            if f[v] != 0:
                combined[v] = f[v]
    return _solution(inst, combined, stats)


# ---------------------------------------------------------------------------
# size-constrained pipeline
# ---------------------------------------------------------------------------

def solve_ocsp(inst: Instance, g: Optional[Language] = None) -> SolveResult:
    """Fixed-parameter pipeline for a size-constrained instance over a
    language whose size-constrained problem is tractable."""
    lang = g if g is not None else inst.language
    if inst.pi is not None:
        raise ValueError("size-constrained solving expects no cardinality map")
    report = classify_ocsp(lang)
    if report.verdict is not OcspVerdict.FPT:
        raise ValueError("language is classified hard for size constraints; "
                         "use brute_force instead")
    stats = SolveStats()
    for red0 in reduce_to_0valid(inst, stats):
        inst0 = red0.instance
        threshold = max(inst0.k, 1)
        for red in reduce_to_frequent(inst0, threshold, stats):
            result = _solve_ocsp_frequent(red.instance, stats)
            if result is not None:
                lifted = red0.lift.apply(red.lift.apply(result))
                return _solution(inst, lifted, stats)
    return _no_solution(stats)


def _solve_ocsp_frequent(inst: Instance, stats: SolveStats) -> Optional[tuple]:
    """Solve one frequent instance over its (closed) sub-domain; returns an
    assignment of this instance or None."""
    lang = inst.language
    if inst.k == 0:
        zero = (0,) * inst.num_vars
        return zero if satisfies(inst, zero) else None
    if not lang.nonzero_domain:
        return None

    # A weakly separable value that is produced inside the domain makes the
    # instance always solvable: it can be placed on any of its producer's
    # support variables, and disjoint placements combine.
    for d in sorted(lang.nonzero_domain):
        t = value_type(lang, d)
        if t not in (ValueType.SELF_PRODUCING, ValueType.DEGENERATE):
            continue
        if not value_weakly_separable(lang, d):
            continue
        producers = producers_of(lang, d)
        if not producers:
            continue
        support_vars = _value_support(inst, producers[0], stats)
        if len(support_vars) < inst.k:
            raise RuntimeError("internal: frequency guarantee violated")
        assignment = [0] * inst.num_vars
        for v in support_vars[: inst.k]:
            assignment[v] = d
        if not satisfies(inst, assignment):
            raise RuntimeError("internal: produced-value construction failed")
        return tuple(assignment)

    contraction = find_min_contraction(lang)
    d2 = frozenset(contraction.image())
    restricted_lang = restrict_language(lang, d2)
    if find_counterexample(restricted_lang) is not None:
        raise RuntimeError("internal: contracted language is not weakly "
                           "separable although the classification was FPT")
    restricted = instance(
        inst.num_vars,
        [Constraint(c.scope, restricted_lang.relation_named(c.relation.name))
         for c in inst.constraints],
        inst.k,
        restricted_lang,
    )
    result = solve_weakly_separable(restricted, stats=stats)
    return result.assignment if result.found else None


# ---------------------------------------------------------------------------
# cardinality-constrained pipeline
# ---------------------------------------------------------------------------

def solve_ccsp(inst: Instance, g: Optional[Language] = None) -> SolveResult:
    """Fixed-parameter pipeline for a cardinality-constrained instance over a
    language whose cardinality-constrained problem is tractable."""
    lang = g if g is not None else inst.language
    if inst.pi is None:
        raise ValueError("cardinality-constrained solving expects a cardinality map")
    report = classify_ccsp(lang)
    if report.verdict is not CcspVerdict.FPT:
        raise ValueError("language is classified hard for cardinality "
                         "constraints; use brute_force instead")
    stats = SolveStats()
    for red0 in reduce_to_0valid(inst, stats):
        inst0 = red0.instance
        threshold = BoundFunctions(inst0.language).frequency_threshold(inst0.k)
        for red in reduce_to_frequent(inst0, max(threshold, 1), stats):
            result = _solve_ccsp_frequent(red.instance, stats)
            if result is not None:
                lifted = red0.lift.apply(red.lift.apply(result))
                return _solution(inst, lifted, stats)
    return _no_solution(stats)


def _solve_ccsp_frequent(inst: Instance, stats: SolveStats) -> Optional[tuple]:
    """Solve one frequent cardinality instance: solve on the core, then extend
    greedily over the produced remainder."""
    lang = inst.language
    if all(c == 0 for _, c in inst.pi):
        zero = (0,) * inst.num_vars
        return zero if satisfies(inst, zero) else None
    core_values = core(lang)

    core_domain = core_values | {0}
    core_lang = restrict_language(lang, core_domain)
    if find_counterexample(core_lang) is not None:
        raise RuntimeError("internal: core restriction is not weakly separable "
                           "although the classification was FPT")
    core_pi = {v: dict(inst.pi).get(v, 0) for v in core_values}
    core_k = sum(core_pi.values())
    core_inst = instance(
        inst.num_vars,
        [Constraint(c.scope, core_lang.relation_named(c.relation.name))
         for c in inst.constraints],
        core_k,
        core_lang,
        core_pi,
    )
    core_result = solve_weakly_separable(core_inst, stats=stats)
    if not core_result.found:
        return None
    partial = core_result.assignment

    rest_domain = (lang.domain - core_domain) | {0}
    step = _substitute_assignment(inst, partial, target_domain=rest_domain)
    extension = _extend_over_produced(step.instance, stats)
    if extension is None:
        return None
    return step.lift.apply(extension)


def _extend_over_produced(inst: Instance, stats: SolveStats) -> Optional[tuple]:
    """Greedy completion for instances in which every needed value can stand
    alone on many variables: repeatedly place the core values of the residual
    language on disjoint singleton-satisfying variables, then recurse on the
    remaining domain."""
    lang = inst.language
    if all(c == 0 for _, c in inst.pi):
        zero = (0,) * inst.num_vars
        return zero if satisfies(inst, zero) else None
    if not lang.nonzero_domain:
        return None
    core_values = core(lang)
    taken: set = set()
    assignment = [0] * inst.num_vars
    for d in sorted(core_values):
        needed = inst.pi_count(d)
        if needed == 0:
            continue
        placed = 0
        for v in _value_singleton_support(inst, d):
            if v in taken:
                continue
            assignment[v] = d
            taken.add(v)
            placed += 1
            if placed == needed:
                break
        if placed < needed:
            return None
    if not satisfies(inst, assignment):
        raise RuntimeError("internal: greedy core placement is not satisfying")
    step = _substitute_assignment(inst, tuple(assignment),
                                  target_domain=(lang.domain - core_values))
    rest = _extend_over_produced(step.instance, stats)
    if rest is None:
        return None
    return step.lift.apply(rest)


def _value_singleton_support(inst: Instance, d: int) -> list:
    """Variables v for which assigning d to v alone satisfies the instance."""
    zero = [0] * inst.num_vars
    out = []
    for v in range(inst.num_vars):
        zero[v] = d
        if satisfies(inst, zero):
            out.append(v)
        zero[v] = 0
    return out


# ---------------------------------------------------------------------------
# size-to-cardinality refinement
# ---------------------------------------------------------------------------

def ocsp_to_ccsp(inst: Instance) -> list:
    """All cardinality refinements of a size-constrained instance: one output
    per way of writing k as ordered nonnegative per-value counts."""
    if inst.pi is not None:
        raise ValueError("instance already carries a cardinality map")
    values = sorted(inst.language.nonzero_domain)
    out = []
    if not values:
        if inst.k == 0:
            out.append(instance(inst.num_vars, inst.constraints, 0, inst.language, {}))
        return out
    for combo in itertools.combinations(range(inst.k + len(values) - 1), len(values) - 1):
        borders = (-1,) + combo + (inst.k + len(values) - 1,)
        parts = [borders[i + 1] - borders[i] - 1 for i in range(len(values))]
        pi = {v: parts[i] for i, v in enumerate(values)}
        out.append(instance(inst.num_vars, inst.constraints, inst.k, inst.language, pi))
    return out


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------

def _scan_estimate(inst: Instance) -> int:
    n, delta = inst.num_vars, inst.language.delta
    if inst.pi is None:
        total = math.comb(n, inst.k) * (delta ** inst.k) if delta > 0 else (1 if inst.k == 0 else 0)
    else:
        if sum(c for _, c in inst.pi) > n:
            return 0
        total = 1
        free = n
        for _, c in inst.pi:
            total *= math.comb(free, c)
            free -= c
    return total * (n + 1)


def brute_force(inst: Instance, g: Optional[Language] = None) -> SolveResult:
    """Exhaustive oracle: first satisfying assignment (in lexicographic order)
    with exactly k nonzero entries and, when present, the exact per-value
    counts.  Only assignments meeting the count targets are enumerated, which
    is equivalent to scanning all of them in order."""
    lang = g if g is not None else inst.language
    full_scan = (lang.delta + 1) ** inst.num_vars
    if min(full_scan, _scan_estimate(inst)) > SCAN_GUARD:
        raise GuardError("instance too large for the brute-force oracle")
    prog = kernel.prepare_program(inst)
    counts = None
    if inst.pi is not None:
        counts = [0] * (lang.delta + 1)
        for v, c in inst.pi:
            counts[v] = c
    assignment, nodes = kernel.scan_first(prog, inst.k, counts)
    stats = SolveStats(nodes=nodes)
    if assignment is None:
        return _no_solution(stats)
    return _solution(inst, assignment, stats)

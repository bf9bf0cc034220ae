"""Tractability classification for size- and cardinality-constrained CSPs.

For a language closed under zero-validity-preserving constant substitutions:

* size constraints: the problem is W[1]-hard iff some pair of value sets
  {0} <= D2 <= D1 <= domain satisfies all of (1) D1 closed, (2) the
  D1-restriction has a contraction onto D2, (3) the D2-restriction has no
  proper contraction, (4) the D1-restriction has no weakly separable value
  that is degenerate or self-producing, and (5) the D2-restriction is not
  weakly separable; it is fixed-parameter tractable otherwise.

* cardinality constraints: the problem is hard iff the restriction to some
  value set D' is a core and not weakly separable, and fixed-parameter
  tractable otherwise.  Hard verdicts are refined by the reduction family the
  witness supports; only the case of a union counterexample between two
  weakly separable self-producing generators stops at Biclique-hardness, all
  other families give W[1]-hardness.

Pairs and witness sets are enumerated by size then lexicographically, so the
reported witness is always the smallest one.  Every emitted witness is
re-verified from scratch before the report is returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .morphisms import (
    Counterexample,
    ValueType,
    find_counterexample,
    find_min_contraction,
    is_closed,
    is_core,
    iter_single_maps,
    value_type,
    value_weakly_separable,
)
from .relations import Language, restrict_language


class OcspVerdict(Enum):
    FPT = "FPT"
    W1_HARD = "W1-hard"


class CcspVerdict(Enum):
    FPT = "FPT"
    BICLIQUE_HARD = "Biclique-hard"
    W1_HARD = "W1-hard"


@dataclass(frozen=True)
class OcspWitness:
    d1: frozenset
    d2: frozenset
    counterexample: Counterexample


@dataclass(frozen=True)
class OcspReport:
    verdict: OcspVerdict
    witness: Optional[OcspWitness]
    # for FPT: ((sorted d1, sorted d2), index of the first failing condition)
    fpt_evidence: tuple


@dataclass(frozen=True)
class CcspReport:
    verdict: CcspVerdict
    witness: Optional[frozenset]
    refinement: Optional[str]
    minimal_witnesses: tuple


def _require_cc0(g: Language) -> None:
    if not g.zero_valid:
        raise ValueError("classification requires every relation to be 0-valid")
    if not g.cc0:
        raise ValueError("classification requires a substitution-closed "
                         "0-valid language (apply cc0_complete first)")


def _subsets_with_zero(domain: frozenset):
    """All subsets containing 0, by size then lexicographically."""
    rest = sorted(domain - {0})
    for size in range(len(rest) + 1):
        for combo in itertools.combinations(rest, size):
            yield frozenset((0,) + combo)


# ---------------------------------------------------------------------------
# size constraints
# ---------------------------------------------------------------------------

def _has_contraction_onto(g1: Language, d1: frozenset, d2: frozenset) -> bool:
    """Does the d1-restriction admit a zero-free endomorphism with image
    exactly d2?"""
    nonzero1 = sorted(d1 - {0})
    target = d2 - {0}
    if not nonzero1 or not target:
        return not target and not nonzero1
    for mapping in iter_single_maps(g1, d1, sorted(target)):
        if set(mapping.values()) == target:
            return True
    return False


def _first_failing_condition(g: Language, d1: frozenset, d2: frozenset) -> int:
    """0 when every condition holds, otherwise the 1-based index of the first
    violated condition."""
    if not is_closed(g, d1):
        return 1
    g1 = restrict_language(g, d1)
    if not _has_contraction_onto(g1, d1, d2):
        return 2
    g2 = restrict_language(g, d2)
    if find_min_contraction(g2).image() != d2:
        return 3
    for d in sorted(d1 - {0}):
        if value_type(g1, d) in (ValueType.SELF_PRODUCING, ValueType.DEGENERATE):
            if value_weakly_separable(g1, d):
                return 4
    if find_counterexample(g2) is None:
        return 5
    return 0


def classify_ocsp(g: Language) -> OcspReport:
    """Dichotomy for the size-constrained problem over a cc0 language."""
    _require_cc0(g)
    evidence = []
    for d1 in _subsets_with_zero(g.domain):
        for d2 in _subsets_with_zero(d1):
            failed = _first_failing_condition(g, d1, d2)
            if failed == 0:
                witness = OcspWitness(
                    d1, d2,
                    find_counterexample(restrict_language(g, d2),
                                        component_normalized=True))
                _verify_ocsp_witness(g, witness)
                return OcspReport(OcspVerdict.W1_HARD, witness, ())
            evidence.append(((tuple(sorted(d1)), tuple(sorted(d2))), failed))
    return OcspReport(OcspVerdict.FPT, None, tuple(evidence))


def _verify_ocsp_witness(g: Language, w: OcspWitness) -> None:
    if _first_failing_condition(g, w.d1, w.d2) != 0:
        raise RuntimeError("internal: witness failed re-verification")
    if not w.counterexample.verify():
        raise RuntimeError("internal: witness counterexample is invalid")


# ---------------------------------------------------------------------------
# cardinality constraints
# ---------------------------------------------------------------------------

def _is_hard_witness(g: Language, dprime: frozenset) -> bool:
    sub = restrict_language(g, dprime)
    return is_core(sub) and find_counterexample(sub) is not None


def _witness_family(g: Language, dprime: frozenset) -> tuple:
    """(refinement label, verdict) for an inclusion-minimal hard witness.

    Dispatch: a semiregular value, a regular value, or a difference
    counterexample between self-producing values each give W[1]-hardness; the
    remaining case (union counterexample, both generators self-producing) is
    W[1]-hard when a generator is not weakly separable on its own and only
    Biclique-hard otherwise.
    """
    sub = restrict_language(g, dprime)
    types = {d: value_type(sub, d) for d in sorted(dprime - {0})}
    if any(t is ValueType.SEMIREGULAR for t in types.values()):
        return "semiregular", CcspVerdict.W1_HARD
    if any(t is ValueType.REGULAR for t in types.values()):
        return "regular-case", CcspVerdict.W1_HARD
    singles = {d: find_counterexample(restrict_language(sub, frozenset({0, d})))
               for d in sorted(dprime - {0})}
    if any(c is not None and c.kind == "difference" for c in singles.values()):
        return "self-producing-difference", CcspVerdict.W1_HARD
    if any(c is not None for c in singles.values()):
        return "self-producing-union", CcspVerdict.W1_HARD
    return "self-producing-union", CcspVerdict.BICLIQUE_HARD


def classify_ccsp(g: Language) -> CcspReport:
    """Dichotomy for the cardinality-constrained problem over a cc0
    language."""
    _require_cc0(g)
    witnesses = [d for d in _subsets_with_zero(g.domain) if _is_hard_witness(g, d)]
    if not witnesses:
        return CcspReport(CcspVerdict.FPT, None, None, ())
    minimal = [d for d in witnesses
               if not any(other < d for other in witnesses)]
    families = [(d, *_witness_family(g, d)) for d in minimal]
    if all(verdict is CcspVerdict.BICLIQUE_HARD for _, _, verdict in families):
        verdict = CcspVerdict.BICLIQUE_HARD
    else:
        verdict = CcspVerdict.W1_HARD
    reported = minimal[0]
    if not _is_hard_witness(g, reported):
        raise RuntimeError("internal: witness failed re-verification")
    refinement = families[0][1]
    return CcspReport(verdict, reported, refinement,
                      tuple((d, fam) for d, fam, _ in families))

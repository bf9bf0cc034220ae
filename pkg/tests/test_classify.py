"""Tractability classification: golden verdicts and structural invariants."""

import random

import pytest

from zcsp.classify import (
    CcspVerdict,
    OcspVerdict,
    classify_ccsp,
    classify_ocsp,
)
from zcsp.morphisms import find_counterexample, is_core
from zcsp.relations import language, relation, restrict_language

from _corpus import random_cc0_language
from _fixtures import (
    ccsphard1_language,
    ccsphard2_language,
    nonweaklysep_easy_language,
    r_bc_language,
    r_even_language,
    r_im_language,
    r_is_language,
)


class TestOcspGoldens:
    def test_r_is_hard(self):
        rep = classify_ocsp(r_is_language())
        assert rep.verdict is OcspVerdict.W1_HARD
        assert rep.witness.d1 == frozenset({0, 1})
        assert rep.witness.d2 == frozenset({0, 1})
        assert rep.witness.counterexample.kind == "union"

    def test_nonweaklysepeasy_fpt(self):
        rep = classify_ocsp(ccsphard1_language())
        assert rep.verdict is OcspVerdict.FPT
        # every pair carries the index of its first failing condition
        assert all(1 <= failed <= 5 for _, failed in rep.fpt_evidence)

    def test_nonweaklysep_easy_fpt(self):
        assert classify_ocsp(nonweaklysep_easy_language()).verdict is OcspVerdict.FPT

    def test_r_even_fpt(self):
        rep = classify_ocsp(r_even_language())
        assert rep.verdict is OcspVerdict.FPT
        # with a weakly separable language, a pair surviving conditions 1-4
        # must die on condition 5
        full_pair = [f for (d1, d2), f in rep.fpt_evidence
                     if len(d1) == 2 and len(d2) == 2]
        assert full_pair == [5]

    def test_r_im_hard(self):
        assert classify_ocsp(r_im_language()).verdict is OcspVerdict.W1_HARD

    def test_requires_closure(self):
        bare = language([relation("R_IS", [(0, 0), (1, 0), (0, 1)])])
        with pytest.raises(ValueError):
            classify_ocsp(bare)


class TestCcspGoldens:
    def test_ccsphard1_fpt(self):
        assert classify_ccsp(ccsphard1_language()).verdict is CcspVerdict.FPT

    def test_ccsphard2_hard_with_witness(self):
        rep = classify_ccsp(ccsphard2_language())
        assert rep.verdict is CcspVerdict.W1_HARD
        assert rep.witness == frozenset({0, 1, 2, 3})
        assert rep.refinement == "regular-case"

    def test_r_bc_biclique_hard(self):
        rep = classify_ccsp(r_bc_language())
        assert rep.verdict is CcspVerdict.BICLIQUE_HARD
        assert rep.witness == frozenset({0, 1, 2})
        assert rep.refinement == "self-producing-union"

    def test_r_is_ccsp_w1(self):
        # a union counterexample between non-weakly-separable self-producing
        # values is the boolean case, not the Biclique case
        rep = classify_ccsp(r_is_language())
        assert rep.verdict is CcspVerdict.W1_HARD

    def test_r_im_ccsp_w1(self):
        # value 1 cannot produce itself in the closure ((1,0) is missing), so
        # the witness lands in the regular-value family
        rep = classify_ccsp(r_im_language())
        assert rep.verdict is CcspVerdict.W1_HARD
        assert rep.refinement == "regular-case"

    def test_witness_reverified(self):
        rep = classify_ccsp(ccsphard2_language())
        sub = restrict_language(ccsphard2_language(), rep.witness)
        assert is_core(sub)
        assert find_counterexample(sub) is not None


class TestStructuralInvariants:
    def test_restriction_monotonicity(self):
        # a hard restriction makes the whole language hard
        rng = random.Random(21)
        checked = 0
        for _ in range(60):
            g = random_cc0_language(rng, max_delta=3)
            sets = sorted({frozenset({0}) | frozenset(c)
                           for c in [(1,), (2,), (1, 2), (1, 3), (2, 3)]
                           if set(c) <= g.domain})
            for dprime in sets:
                sub = restrict_language(g, dprime)
                if classify_ccsp(sub).verdict is not CcspVerdict.FPT:
                    assert classify_ccsp(g).verdict is not CcspVerdict.FPT
                    checked += 1
        assert checked > 5

    def test_ccsp_witness_minimality(self):
        rng = random.Random(22)
        for _ in range(40):
            g = random_cc0_language(rng, max_delta=3)
            rep = classify_ccsp(g)
            if rep.witness is None:
                continue
            for d, _fam in rep.minimal_witnesses:
                sub = restrict_language(g, d)
                assert is_core(sub) and find_counterexample(sub) is not None
                for smaller in [d - {v} for v in sorted(d - {0})]:
                    s = restrict_language(g, smaller)
                    assert not (is_core(s) and find_counterexample(s) is not None)

    def test_ocsp_evidence_covers_all_pairs(self):
        g = r_even_language()
        rep = classify_ocsp(g)
        pairs = {(d1, d2) for (d1, d2), _ in rep.fpt_evidence}
        # domain {0,1}: pairs ({0},{0}), ({0,1},{0}), ({0,1},{0,1})
        assert len(pairs) == 3

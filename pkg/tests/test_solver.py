"""Enumeration, reductions, solving pipelines, oracle."""

import itertools
import random

import pytest

from zcsp import catalog
from zcsp.errors import GuardError
from zcsp.morphisms import is_closed
from zcsp.relations import (
    Constraint,
    cc0_complete,
    instance,
    language,
    relation,
    satisfies,
    tuple_size,
)
from zcsp.solver import (
    BoundFunctions,
    brute_force,
    disjoint_minimal_decomposition,
    is_frequent,
    minimal_assignments,
    minimal_extensions,
    ocsp_to_ccsp,
    reduce_to_0valid,
    reduce_to_frequent,
    solve_ccsp,
    solve_ocsp,
    solve_weakly_separable,
)

from _corpus import all_assignments, random_cc0_language, random_instance
from _fixtures import ccsphard1_language, r_even_language, r_im_language, r_is_language


def im_instance(k):
    g = r_im_language()
    rim = g.relation_named("R_IM")
    return instance(3, [Constraint((0, 2), rim), Constraint((1, 2), rim)], k, g)


def brute_satisfying(inst, max_size=None):
    out = []
    for a in all_assignments(inst.num_vars, inst.language.delta):
        if max_size is not None and tuple_size(a) > max_size:
            continue
        if satisfies(inst, a):
            out.append(a)
    return out


class TestMinimalExtensions:
    def test_satisfying_assignment_is_its_own_extension(self):
        inst = im_instance(3)
        assert minimal_extensions(inst, (0, 0, 1), 3) == [(0, 0, 1)]

    def test_from_delta_on_first_variable(self):
        inst = im_instance(3)
        assert minimal_extensions(inst, (1, 0, 0), 3) == [(1, 0, 1)]

    def test_fully_nonzero_violation_dead(self):
        g = r_is_language()
        inst = instance(2, [Constraint((0, 1), g.relation_named("R_IS"))], 2, g)
        assert minimal_extensions(inst, (1, 1), 2) == []

    def test_matches_exhaustive_definition(self):
        rng = random.Random(31)
        for _ in range(40):
            g = random_cc0_language(rng)
            inst = random_instance(rng, g, with_pi=False, max_vars=5, max_k=3)
            base = tuple(0 for _ in range(inst.num_vars))
            got = minimal_extensions(inst, base, inst.k)
            sats = [a for a in brute_satisfying(inst, inst.k)]
            expected = []
            for a in sats:
                if not all(a[i] == base[i] or base[i] == 0 for i in range(len(a))):
                    continue
                proper = [b for b in sats if b != a
                          and all(x == y or y == 0 for x, y in zip(a, b))
                          and all(x == y or x == 0 for x, y in zip(base, b))]
                if not proper:
                    expected.append(a)
            assert got == sorted(expected)


class TestMinimalAssignments:
    def test_im_instance_unique(self):
        assert minimal_assignments(im_instance(3), 3) == [(0, 0, 1)]

    def test_unconstrained_singletons(self):
        g = r_is_language()
        inst = instance(3, [], 2, g)
        got = minimal_assignments(inst, 2)
        assert got == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_r_is_path(self):
        g = r_is_language()
        rel = g.relation_named("R_IS")
        inst = instance(3, [Constraint((0, 1), rel), Constraint((1, 2), rel)], 2, g)
        assert minimal_assignments(inst, 2) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_per_variable_multiplicity_bound(self):
        rng = random.Random(32)
        for _ in range(30):
            g = random_cc0_language(rng)
            inst = random_instance(rng, g, with_pi=False, max_vars=6, max_k=3)
            bound = BoundFunctions(g).per_variable_bound(inst.k)
            for f in minimal_assignments(inst, inst.k):
                assert tuple_size(f) <= inst.k
            for v in range(inst.num_vars):
                count = sum(1 for f in minimal_assignments(inst, inst.k) if f[v] != 0)
                assert count <= bound


class TestReduceTo0Valid:
    def test_already_zero_valid(self):
        inst = im_instance(2)
        outs = reduce_to_0valid(inst)
        assert len(outs) == 1
        assert outs[0].instance.k == 2
        assert outs[0].instance.num_vars == 3

    def test_unary_forcing(self):
        one = relation("ONE", [(1,)])
        g = language([one], domain=[0, 1])
        inst = instance(2, [Constraint((0,), one)], 2, g)
        outs = reduce_to_0valid(inst)
        assert len(outs) == 1
        red = outs[0].instance
        assert red.num_vars == 1 and red.k == 1
        assert outs[0].lift.apply((1,)) == (1, 1)

    def test_unsatisfiable_start(self):
        bad = relation("BAD", [(1, 1)])
        g = language([bad], domain=[0, 1])
        inst = instance(2, [Constraint((0, 1), bad), Constraint((1, 0), bad)], 0, g)
        assert reduce_to_0valid(inst) == []

    def test_equisolvability(self):
        rng = random.Random(33)
        for _ in range(40):
            delta = rng.randint(1, 2)
            arity = rng.randint(1, 2)
            cube = list(itertools.product(range(delta + 1), repeat=arity))
            tuples = {t for t in cube if rng.random() < 0.6}
            if not tuples:
                continue
            r = relation("R", tuples, arity=arity)
            g = language([r], domain=range(delta + 1))
            inst = random_instance(rng, g, with_pi=rng.random() < 0.5,
                                   max_vars=5, max_k=3)
            original = any(tuple_size(a) == inst.k and
                           (inst.pi is None or
                            all(sum(1 for x in a if x == v) == c for v, c in inst.pi))
                           for a in brute_satisfying(inst))
            reduced_any = False
            for red in reduce_to_0valid(inst):
                sub = brute_force(red.instance)
                if sub.found:
                    reduced_any = True
                    lifted = red.lift.apply(sub.assignment)
                    assert satisfies(inst, lifted)
                    assert tuple_size(lifted) == inst.k
            assert reduced_any == original


class TestReduceToFrequent:
    def test_already_frequent_passthrough(self):
        g = r_even_language(2)
        rel = g.relation_named("R_EVEN2")
        inst = instance(6, [Constraint((0, 1), rel)], 2, g)
        outs = reduce_to_frequent(inst, 2)
        assert len(outs) == 1
        assert outs[0].instance.num_vars == 6

    def test_missing_value_with_zero_budget_drops_domain(self):
        g = ccsphard1_language()
        rel = g.relation_named("R")
        # value 1 appears nowhere if every variable sits in a 1-free position
        inst = instance(2, [Constraint((0, 1), rel)], 1, g, pi={1: 0, 2: 1})
        outs = reduce_to_frequent(inst, 3)
        assert outs
        for red in outs:
            assert red.instance.language.domain <= frozenset({0, 2})

    def test_outputs_frequent_and_closed(self):
        rng = random.Random(34)
        checked = 0
        for _ in range(30):
            g = random_cc0_language(rng)
            inst = random_instance(rng, g, with_pi=rng.random() < 0.5,
                                   max_vars=6, max_k=3)
            c = 2
            for red in reduce_to_frequent(inst, c):
                assert is_frequent(red.instance, c)
                assert is_closed(g, red.instance.language.domain)
                assert red.instance.k <= inst.k
                checked += 1
        assert checked > 10


class TestSolveWeaklySeparable:
    def test_even_chain(self):
        g = r_even_language(2)
        rel = g.relation_named("R_EVEN2")
        inst = instance(4, [Constraint((0, 1), rel), Constraint((2, 3), rel)], 2, g)
        res = solve_weakly_separable(inst)
        assert res.found and tuple_size(res.assignment) == 2

    def test_zero_target(self):
        g = r_even_language(2)
        inst = instance(3, [], 0, g)
        res = solve_weakly_separable(inst)
        assert res.found and res.assignment == (0, 0, 0)

    def test_mod3_cardinalities(self):
        rm = catalog.r_mod(3, 2, 3)
        g = cc0_complete(language([rm], domain=range(3)))
        rel = g.relation_named("R_MOD3")
        yes = instance(3, [Constraint((0, 1, 2), rel)], 3, g, pi={1: 3})
        no = instance(3, [Constraint((0, 1, 2), rel)], 1, g, pi={1: 1})
        assert solve_weakly_separable(yes).assignment == (1, 1, 1)
        assert not solve_weakly_separable(no).found


class TestDecomposition:
    def test_negative_control(self):
        inst = im_instance(3)
        minimal = minimal_assignments(inst, 3)
        assert satisfies(inst, (1, 1, 1))
        assert disjoint_minimal_decomposition((1, 1, 1), minimal) is None

    def test_weakly_separable_decomposes(self):
        g = r_even_language(2)
        rel = g.relation_named("R_EVEN2")
        inst = instance(4, [Constraint((0, 1), rel), Constraint((2, 3), rel)], 4, g)
        minimal = minimal_assignments(inst, 4)
        for a in brute_satisfying(inst, 4):
            if tuple_size(a) == 0:
                continue
            pieces = disjoint_minimal_decomposition(a, minimal)
            assert pieces is not None


class TestPipelines:
    def test_ocsp_nonweaklysepeasy_many_vars(self):
        # every combination of 0 and 2 satisfies, so any k variables work
        g = ccsphard1_language()
        rel = g.relation_named("R")
        inst = instance(6, [Constraint((0, 1), rel), Constraint((2, 3), rel)], 4, g)
        res = solve_ocsp(inst)
        assert res.found

    def test_ocsp_empty_constraints(self):
        g = ccsphard1_language()
        inst = instance(5, [], 3, g)
        assert solve_ocsp(inst).found

    def test_ocsp_rejects_hard_language(self):
        g = r_is_language()
        inst = instance(2, [], 1, g)
        with pytest.raises(ValueError):
            solve_ocsp(inst)

    def test_ccsp_rejects_missing_pi(self):
        g = ccsphard1_language()
        inst = instance(2, [], 1, g)
        with pytest.raises(ValueError):
            solve_ccsp(inst)

    def test_ccsp_core_and_extension_path(self):
        # large instance: every value frequent, so the core solve plus the
        # greedy extension over produced values actually runs
        g = ccsphard1_language()
        rel = g.relation_named("R")
        n = 40
        cons = [Constraint((i, i + 1), rel) for i in range(0, 10, 2)]
        inst = instance(n, cons, 3, g, pi={1: 1, 2: 2})
        res = solve_ccsp(inst)
        ref = brute_force(inst)
        assert res.status == ref.status == "solution"

    def test_ccsp_zero_pi(self):
        g = ccsphard1_language()
        inst = instance(3, [], 0, g, pi={})
        assert solve_ccsp(inst).assignment == (0, 0, 0)


class TestOcspToCcsp:
    def test_composition_count(self):
        g = ccsphard1_language()
        outs = ocsp_to_ccsp(instance(3, [], 2, g))
        assert [dict(o.pi) for o in outs] == [
            {1: 0, 2: 2}, {1: 1, 2: 1}, {1: 2, 2: 0}]

    def test_k_zero(self):
        g = ccsphard1_language()
        outs = ocsp_to_ccsp(instance(3, [], 0, g))
        assert len(outs) == 1 and outs[0].pi == ((1, 0), (2, 0))

    def test_oracle_disjunction(self):
        rng = random.Random(35)
        for _ in range(60):
            g = random_cc0_language(rng)
            inst = random_instance(rng, g, with_pi=False, max_vars=6, max_k=3)
            whole = brute_force(inst).found
            split = any(brute_force(o).found for o in ocsp_to_ccsp(inst))
            assert whole == split


class TestBruteForce:
    def test_r_is_path(self):
        g = r_is_language()
        rel = g.relation_named("R_IS")
        inst = instance(3, [Constraint((0, 1), rel), Constraint((1, 2), rel)], 2, g)
        res = brute_force(inst)
        assert res.assignment == (1, 0, 1)

    def test_k_exceeds_vars(self):
        g = r_is_language()
        inst = instance(2, [], 3, g)
        assert not brute_force(inst).found

    def test_im_instance_k3(self):
        res = brute_force(im_instance(3))
        assert res.assignment == (1, 1, 1)

    def test_scale_guard(self):
        g = ccsphard1_language()
        with pytest.raises(GuardError):
            brute_force(instance(10_000, [], 10, g))

    def test_determinism(self):
        rng = random.Random(36)
        for _ in range(20):
            g = random_cc0_language(rng)
            inst = random_instance(rng, g, with_pi=rng.random() < 0.5)
            a, b = brute_force(inst), brute_force(inst)
            assert a.assignment == b.assignment and a.stats.nodes == b.stats.nodes


class TestPerValueWitness:
    def test_weakly_separable_value_witnesses(self):
        # over a weakly separable language, any value appearing in some
        # satisfying assignment also appears in a minimal one at the same
        # variable
        from zcsp.morphisms import find_counterexample
        rng = random.Random(38)
        checked = 0
        while checked < 25:
            g = random_cc0_language(rng)
            if find_counterexample(g) is not None:
                continue
            inst = random_instance(rng, g, with_pi=False, max_vars=5, max_k=4)
            minis = minimal_assignments(inst, 4)
            for a in brute_satisfying(inst, 4):
                for v in range(inst.num_vars):
                    if a[v] != 0:
                        assert any(f[v] == a[v] for f in minis)
            checked += 1


class TestDeterminism:
    def test_pipelines_repeat_identically(self):
        rng = random.Random(39)
        done = 0
        while done < 15:
            g = random_cc0_language(rng)
            from zcsp.classify import OcspVerdict, classify_ocsp
            if classify_ocsp(g).verdict is not OcspVerdict.FPT:
                continue
            inst = random_instance(rng, g, with_pi=False, max_vars=6, max_k=3)
            a, b = solve_ocsp(inst), solve_ocsp(inst)
            assert a.assignment == b.assignment
            assert (a.stats.nodes, a.stats.minimal_enumerated) == \
                (b.stats.nodes, b.stats.minimal_enumerated)
            done += 1


class TestBounds:
    def test_exact_formulas(self):
        g = r_is_language()  # |D| = 2, r_max = 2
        b = BoundFunctions(g)
        assert b.extensions_bound(3) == (1 * 2) ** 3
        assert b.per_variable_bound(3) == 1 * 8
        assert b.signature_cap(3) == 24
        assert b.frequency_threshold(3) == 9 * (2 + 8)

    def test_extension_count_bound(self):
        rng = random.Random(37)
        for _ in range(40):
            g = random_cc0_language(rng)
            inst = random_instance(rng, g, with_pi=False, max_vars=6, max_k=3)
            bound = BoundFunctions(g).extensions_bound(inst.k)
            zero = (0,) * inst.num_vars
            assert len(minimal_extensions(inst, zero, inst.k)) <= max(bound, 1)

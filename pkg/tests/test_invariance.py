import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setnim.errors import DimensionMismatchError
from setnim.games import builtin_game
from setnim.grundy import p_table
from setnim.invariance import (
    CombinationSolver,
    InvarianceSchedule,
    InvariantVector,
    combo_membership,
    discover_invariants,
    indicator_min,
    invariance_counterexample,
    invariance_reduce,
    invariance_reduce_batched,
    is_invariant_bounded,
)
from setnim.oracles import oracle_for

H_Z1 = (1, 1, 0, 1, 0, 1)
H_Z2 = (1, 0, 1, 0, 1, 1)
CN63_GENERATORS = (
    (1, 0, 0, 1, 0, 0),
    (0, 1, 0, 0, 1, 0),
    (0, 0, 1, 0, 0, 1),
    (1, 0, 1, 0, 1, 0),
    (0, 1, 0, 1, 0, 1),
)


class TestIndicatorMin:
    def test_worked_values(self):
        assert indicator_min(H_Z1, (6, 2, 9, 1, 3, 12)) == 1
        assert indicator_min(H_Z2, (5, 1, 9, 0, 3, 11)) == 3
        assert indicator_min((1,) * 7, (3, 5, 9, 14, 11, 6, 15)) == 3

    def test_dimension_check(self):
        with pytest.raises(DimensionMismatchError):
            indicator_min((1, 0), (1, 2, 3))


class TestInvarianceReduce:
    def test_six_stack_example(self):
        reduced, coeffs, steps = invariance_reduce([H_Z1, H_Z2], (2, 6, 11, 8, 3, 12))
        assert reduced == (0, 4, 11, 6, 3, 10)
        assert coeffs == (2, 0)
        assert len(steps) == 1

    def test_order_changes_values_not_case(self):
        r12, _, _ = invariance_reduce([H_Z1, H_Z2], (5, 2, 7, 8, 9, 6))
        r21, _, _ = invariance_reduce([H_Z2, H_Z1], (5, 2, 7, 8, 9, 6))
        assert r12 == (0, 0, 4, 6, 6, 1)
        assert r21 == (0, 2, 2, 8, 4, 1)
        # Different heights, same zero pattern at the anchor stack.
        assert (r12[0] == 0) and (r21[0] == 0)

    def test_zero_in_every_support_is_identity(self):
        pos = (0, 5, 0, 7, 9, 0)
        reduced, coeffs, steps = invariance_reduce([H_Z1, H_Z2], pos)
        assert reduced == pos and coeffs == (0, 0) and steps == ()

    @given(st.tuples(*[st.integers(0, 9)] * 6))
    @settings(max_examples=60, deadline=None)
    def test_reduction_invariants(self, pos):
        reduced, coeffs, steps = invariance_reduce([H_Z1, H_Z2], pos)
        assert all(0 <= r <= p for r, p in zip(reduced, pos))
        assert 0 in reduced
        rebuilt = list(reduced)
        for z, c in zip((H_Z1, H_Z2), coeffs):
            for i, zi in enumerate(z):
                rebuilt[i] += c * zi
        assert tuple(rebuilt) == pos

    @given(st.tuples(*[st.integers(0, 9)] * 6))
    @settings(max_examples=40, deadline=None)
    def test_batched_equals_sequential_for_disjoint_groups(self, pos):
        groups = [[CN63_GENERATORS[0], CN63_GENERATORS[1], CN63_GENERATORS[2]],
                  [CN63_GENERATORS[3], CN63_GENERATORS[4]]]
        seq_red, seq_coeffs, _ = invariance_reduce(CN63_GENERATORS, pos)
        bat_red, bat_coeffs, _ = invariance_reduce_batched(groups, pos)
        assert seq_red == bat_red and seq_coeffs == bat_coeffs

    def test_schedule_type_validates_batches(self):
        vecs = tuple(InvariantVector(z) for z in (H_Z1, H_Z2))
        with pytest.raises(Exception):
            InvarianceSchedule(vectors=vecs, batches=((0, 1),))


class TestBoundedInvariance:
    def test_opposite_pair_vector_holds(self):
        oracle = oracle_for("cn:6,3")
        assert is_invariant_bounded(
            oracle.membership, (1, 0, 0, 1, 0, 0), 4, membership_batch=oracle.membership_batch
        )

    def test_flat_vector_fails_on_seven_four(self):
        oracle = oracle_for("cn:7,4")
        ok = is_invariant_bounded(
            oracle.membership, (1,) * 7, 3, membership_batch=oracle.membership_batch
        )
        assert not ok
        witness = invariance_counterexample(
            oracle.membership, (1,) * 7, 3, membership_batch=oracle.membership_batch
        )
        assert witness == (0, 0, 1, 0, 0, 1, 1)
        assert oracle.membership(witness)
        assert not oracle.membership(tuple(v + 1 for v in witness))

    def test_no_invariants_with_designated_zero(self):
        oracle = oracle_for("cn:5,3")
        import itertools

        for cand in itertools.product((0, 1), repeat=5):
            if any(cand):
                assert not is_invariant_bounded(
                    oracle.membership, cand, 4, membership_batch=oracle.membership_batch
                )


class TestDiscovery:
    def test_six_cycle_generators(self):
        oracle = oracle_for("cn:6,3")
        _all, gens = discover_invariants(
            oracle.membership, 6, 4, membership_batch=oracle.membership_batch
        )
        assert {g.z for g in gens} == set(CN63_GENERATORS)
        assert all(g.verified_bound == 4 for g in gens)

    def test_h_generators(self):
        oracle = oracle_for("h")
        _all, gens = discover_invariants(
            oracle.membership, 6, 4, membership_batch=oracle.membership_batch
        )
        assert {g.z for g in gens} == {H_Z1, H_Z2}

    def test_seven_cycle_flat_only(self):
        oracle = oracle_for("cn:7,3")
        _all, gens = discover_invariants(
            oracle.membership, 7, 3, membership_batch=oracle.membership_batch
        )
        assert [g.z for g in gens] == [(1,) * 7]

    def test_every_find_respects_class_on_box(self):
        """Each reported vector maps box P positions to P and N to N under +z."""
        spec = builtin_game("cn:6,3")
        oracle = oracle_for("cn:6,3")
        bound = 3
        table = p_table(spec, bound)
        allv, _ = discover_invariants(
            oracle.membership, 6, bound, membership_batch=oracle.membership_batch
        )
        import itertools

        for iv in allv:
            for pos in itertools.product(range(bound + 1), repeat=6):
                shifted = tuple(p + zi for p, zi in zip(pos, iv.z))
                if max(shifted) <= bound:
                    assert table[pos] == table[shifted]


class TestComboMembership:
    def test_structured_combination(self):
        x, y, c = 1, 2, (0, 1, 2)
        pos = (x + c[0], y + c[1], x + c[2], y + c[0], x + c[1], y + c[2])
        assert combo_membership(CN63_GENERATORS, pos)

    def test_empty_combination(self):
        assert combo_membership(CN63_GENERATORS, (0,) * 6)

    def test_single_stack_unreachable(self):
        assert not combo_membership(CN63_GENERATORS, (1, 0, 0, 0, 0, 0))

    def test_solver_reuse_matches_one_shot(self):
        solver = CombinationSolver(CN63_GENERATORS)
        import itertools

        for pos in itertools.product(range(3), repeat=6):
            assert solver.contains(pos) == combo_membership(CN63_GENERATORS, pos)

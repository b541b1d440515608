import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setnim.errors import (
    DimensionMismatchError,
    UnsupportedGameError,
    UnsupportedParametersError,
)
from setnim.games import apply_move, apply_perm, builtin_game, is_legal_move, symmetries
from setnim.grundy import GrundyEngine, brute_winning_move
from setnim.oracles import (
    SquareDecomposition,
    move_base,
    move_cn73,
    move_cn83,
    move_h,
    move_path,
    oracle_for,
    p_membership_base,
    p_membership_cn73,
    p_membership_cn83,
    p_membership_h,
    p_membership_path,
    solve,
)

ALL_ORACLE_IDS = [
    "cn:3,2", "cn:4,2", "cn:5,2", "cn:5,3", "cn:6,3", "cn:7,4",
    "cn:7,3", "cn:8,3", "h", "pn:4,2", "pn:5,3", "pn:6,3",
]


class TestBaseMembership:
    def test_five_cycle(self):
        assert p_membership_base("cn:5,2", (3, 8, 3, 5, 6))
        assert not p_membership_base("cn:5,2", (3, 8, 5, 9, 6))

    def test_seven_four(self):
        assert p_membership_base("cn:7,4", (0, 0, 1, 0, 0, 1, 1))
        assert not p_membership_base("cn:7,4", (1, 1, 2, 1, 1, 2, 2))

    def test_six_three(self):
        assert p_membership_base("cn:6,3", (1, 2, 3, 1, 2, 3))

    def test_five_three_designated_zero(self):
        assert p_membership_base("cn:5,3", (0, 3, 2, 1, 3))
        assert p_membership_base("cn:5,3", (3, 2, 1, 3, 0))  # rotated image
        assert not p_membership_base("cn:5,3", (1, 3, 2, 1, 3))

    def test_unknown_game(self):
        with pytest.raises(UnsupportedGameError):
            p_membership_base("cn:9,3", (0,) * 9)

    def test_dimension(self):
        with pytest.raises(DimensionMismatchError):
            p_membership_base("cn:3,2", (1, 1))


class TestPathMembership:
    def test_worked_values(self):
        assert p_membership_path(5, 3, (4, 6, 0, 0, 10))
        assert p_membership_path(6, 3, (2, 3, 0, 0, 1, 4))
        assert not p_membership_path(5, 5, (0, 0, 0, 0, 1))
        assert p_membership_path(5, 5, (0, 0, 0, 0, 0))

    def test_narrow_play_unsupported(self):
        with pytest.raises(UnsupportedParametersError):
            p_membership_path(6, 2, (0,) * 6)


class TestHMembership:
    def test_worked_values(self):
        assert p_membership_h((2, 6, 6, 2, 0, 12))
        assert p_membership_h((4, 2, 9, 1, 3, 11))
        assert not p_membership_h((2, 6, 11, 8, 3, 12))

    @given(st.tuples(*[st.integers(0, 20)] * 6))
    @settings(max_examples=80, deadline=None)
    def test_reflection_consistency(self, pos):
        assert p_membership_h(pos) == p_membership_h(pos[::-1])


class TestCyclicMembership:
    def test_seven_three(self):
        assert p_membership_cn73((3, 5, 9, 9, 5, 3, 15))
        assert not p_membership_cn73((3, 5, 9, 14, 11, 6, 15))
        assert p_membership_cn73((0,) * 7)

    def test_eight_three(self):
        assert p_membership_cn83((4,) * 8)
        assert not p_membership_cn83((1,) + (0,) * 7)
        # Built from reduced tuple (2,1,1,2,1), a 5-cycle P position.
        assert p_membership_cn83((0, 2, 1, 0, 1, 1, 1, 1))
        assert GrundyEngine(builtin_game("cn:8,3")).is_p((0, 2, 1, 0, 1, 1, 1, 1))

    @pytest.mark.parametrize("game_id", ["cn:7,3", "cn:8,3", "cn:5,2", "cn:7,4"])
    @given(data=st.data())
    @settings(max_examples=40, deadline=None)
    def test_membership_is_dihedral_equivariant(self, game_id, data):
        oracle = oracle_for(game_id)
        n = oracle.spec.n
        pos = data.draw(st.tuples(*[st.integers(0, 6)] * n))
        value = oracle.membership(pos)
        for perm in symmetries(oracle.spec)[:6]:
            assert oracle.membership(apply_perm(perm, pos)) == value

    @pytest.mark.parametrize("game_id", ALL_ORACLE_IDS)
    def test_scalar_equals_batch(self, game_id):
        """The vectorized membership used in sweeps must match the scalar one."""
        oracle = oracle_for(game_id)
        n = oracle.spec.n
        rng = np.random.default_rng(7)
        mat = rng.integers(0, 5, size=(400, n))
        batch = oracle.membership_batch(mat)
        for row, want in zip(mat, batch):
            assert oracle.membership(tuple(int(v) for v in row)) == bool(want)


class TestSquareDecomposition:
    def test_roundtrip(self):
        pos = (1, 3, 2, 1, 4, 2, 1, 5)
        dec = SquareDecomposition.from_position(pos)
        assert dec.a == 1 and dec.b == 1
        assert dec.reconstruct() == pos
        assert dec.reduced_five() == (2, 1, 3, 1 + 0, 4)

    def test_requires_anchored_minimum(self):
        with pytest.raises(Exception):
            SquareDecomposition.from_position((5, 0, 1, 0, 1, 0, 1, 0))


class TestMovePath:
    def test_worked_examples(self):
        assert move_path(5, 3, (4, 11, 6, 3, 10)) == (0, 5, 6, 3, 0)
        assert move_path(3, 2, (7, 2, 8)) == (0, 2, 1)
        assert move_path(4, 2, (1, 0, 1, 0)) is None

    def test_full_window_game(self):
        assert move_path(5, 5, (0, 0, 0, 0, 1)) == (0, 0, 0, 0, 1)
        assert move_path(5, 5, (0,) * 5) is None

    @pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (4, 3), (5, 3), (6, 3), (7, 4), (8, 4)])
    @given(data=st.data())
    @settings(max_examples=30, deadline=None)
    def test_sound_on_random_positions(self, n, k, data):
        pos = data.draw(st.tuples(*[st.integers(0, 50)] * n))
        mv = move_path(n, k, pos)
        if mv is None:
            assert p_membership_path(n, k, pos)
        else:
            ok, _ = is_legal_move(builtin_game(f"pn:{n},{k}"), pos, mv)
            assert ok
            assert p_membership_path(n, k, apply_move(pos, mv))


class TestMoveH:
    def test_case_one(self):
        pos = (2, 6, 11, 8, 3, 12)
        assert move_h(pos) == (0, 0, 5, 6, 3, 0)
        assert apply_move(pos, move_h(pos)) == (2, 6, 6, 2, 0, 12)

    def test_case_two_with_merge(self):
        pos = (6, 2, 9, 1, 3, 12)
        assert move_h(pos) == (2, 0, 0, 0, 0, 1)
        assert apply_move(pos, move_h(pos)) == (4, 2, 9, 1, 3, 11)

    def test_terminal(self):
        assert move_h((0,) * 6) is None

    @given(st.tuples(*[st.integers(0, 60)] * 6))
    @settings(max_examples=120, deadline=None)
    def test_sound_on_random_positions(self, pos):
        mv = move_h(pos)
        if mv is None:
            assert p_membership_h(pos)
        else:
            ok, _ = is_legal_move(builtin_game("h"), pos, mv)
            assert ok
            assert p_membership_h(apply_move(pos, mv))


class TestMoveCyclic:
    def test_seven_three_worked_example(self):
        pos = (3, 5, 9, 14, 11, 6, 15)
        assert move_cn73(pos) == (0, 0, 0, 5, 6, 3, 0)

    def test_seven_three_flat(self):
        assert move_cn73((1,) * 7) is None
        assert GrundyEngine(builtin_game("cn:7,3")).is_p((1,) * 7)

    def test_seven_three_single_token(self):
        assert move_cn73((1, 0, 0, 0, 0, 0, 0)) == (1, 0, 0, 0, 0, 0, 0)

    def test_eight_three_examples(self):
        assert move_cn83((1,) + (0,) * 7) == (1,) + (0,) * 7
        assert move_cn83((3,) * 8) is None
        pos = (0, 2, 1, 0, 1, 1, 1, 2)
        brute = brute_winning_move(builtin_game("cn:8,3"), pos)
        assert brute is not None  # confirms N by brute force
        mv = move_cn83(pos)
        ok, _ = is_legal_move(builtin_game("cn:8,3"), pos, mv)
        assert ok
        assert p_membership_cn83(apply_move(pos, mv))

    @pytest.mark.parametrize(
        "game_id,move_fn,member_fn",
        [
            ("cn:7,3", move_cn73, p_membership_cn73),
            ("cn:8,3", move_cn83, p_membership_cn83),
        ],
    )
    @given(data=st.data())
    @settings(max_examples=60, deadline=None)
    def test_sound_on_random_positions(self, game_id, move_fn, member_fn, data):
        spec = builtin_game(game_id)
        pos = data.draw(st.tuples(*[st.integers(0, 40)] * spec.n))
        mv = move_fn(pos)
        if mv is None:
            assert member_fn(pos)
        else:
            ok, _ = is_legal_move(spec, pos, mv)
            assert ok
            assert member_fn(apply_move(pos, mv))


class TestMoveBase:
    def test_five_two_worked_example(self):
        pos = (3, 8, 5, 9, 6)
        assert move_base("cn:5,2", pos) == (0, 0, 2, 4, 0)
        assert apply_move(pos, (0, 0, 2, 4, 0)) == (3, 8, 3, 5, 6)

    def test_three_two_equalizes(self):
        assert move_base("cn:3,2", (2, 1, 1)) == (1, 0, 0)

    def test_six_three_lands_in_p(self):
        pos = (1, 2, 3, 1, 2, 4)
        mv = move_base("cn:6,3", pos)
        ok, _ = is_legal_move(builtin_game("cn:6,3"), pos, mv)
        assert ok
        assert p_membership_base("cn:6,3", apply_move(pos, mv))

    def test_brute_fallback_games(self):
        mv = move_base("cn:5,3", (1, 1, 0, 1, 0))
        if mv is not None:
            assert p_membership_base("cn:5,3", apply_move((1, 1, 0, 1, 0), mv))

    @pytest.mark.parametrize("game_id", ["cn:3,2", "cn:4,2", "cn:5,2", "cn:6,3"])
    @given(data=st.data())
    @settings(max_examples=40, deadline=None)
    def test_sound_on_random_positions(self, game_id, data):
        spec = builtin_game(game_id)
        pos = data.draw(st.tuples(*[st.integers(0, 30)] * spec.n))
        mv = move_base(game_id, pos)
        if mv is None:
            assert p_membership_base(game_id, pos)
        else:
            ok, _ = is_legal_move(spec, pos, mv)
            assert ok
            assert p_membership_base(game_id, apply_move(pos, mv))


class TestSolve:
    def test_routes_to_guided_move(self):
        res = solve("cn:7,3", (3, 5, 9, 14, 11, 6, 15))
        assert res.outcome.value == "N"
        assert res.move == (0, 0, 0, 5, 6, 3, 0)
        assert res.method == "reduction"
        assert res.trace is not None
        assert res.resulting_position == (3, 5, 9, 9, 5, 3, 15)

    def test_p_positions_report_closed_form(self):
        res = solve("h", (2, 6, 6, 2, 0, 12))
        assert res.outcome.value == "P" and res.move is None
        assert res.method == "closed_form"

    def test_brute_fallback_for_custom_games(self, g2_file):
        res = solve(f"file:{g2_file}", (2, 1, 1, 2))
        assert res.method == "brute_force"
        if res.move is not None:
            assert GrundyEngine(builtin_game(f"file:{g2_file}")).is_p(res.resulting_position)

    def test_move_equivariance_up_to_tiebreak(self):
        spec = builtin_game("cn:7,3")
        pos = (3, 5, 9, 14, 11, 6, 15)
        for perm in symmetries(spec)[:5]:
            image = apply_perm(perm, pos)
            res = solve("cn:7,3", image)
            assert res.outcome.value == "N"
            assert p_membership_cn73(res.resulting_position)

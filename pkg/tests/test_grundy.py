from functools import reduce

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from setnim.errors import BudgetExceededError
from setnim.games import builtin_game
from setnim.grundy import (
    GrundyEngine,
    brute_winning_move,
    grundy,
    outcome,
    p_positions,
    p_table,
    verify_oracle,
)
from setnim.oracles import oracle_for


def nim_xor(pos):
    return reduce(lambda a, b: a ^ b, pos, 0)


class TestGrundyValues:
    def test_terminal_is_zero(self):
        assert grundy(builtin_game("cn:5,3"), (0,) * 5) == 0

    def test_two_stack_nim_matches_xor(self):
        spec = builtin_game("nim:2")
        assert grundy(spec, (1, 2)) == nim_xor((1, 2)) == 3
        engine = GrundyEngine(spec)
        for a in range(4):
            for b in range(4):
                assert engine.grundy((a, b)) == nim_xor((a, b))

    def test_balanced_triple_is_p(self):
        assert grundy(builtin_game("cn:3,2"), (1, 1, 1)) == 0

    def test_budget_is_a_clean_stop(self):
        spec = builtin_game("cn:5,2")
        with pytest.raises(BudgetExceededError):
            grundy(spec, (6, 6, 6, 6, 6), budget=50)


class TestOutcome:
    def test_examples(self):
        assert outcome(builtin_game("cn:5,2"), (3, 8, 5, 9, 6)).value == "N"
        assert outcome(builtin_game("pn:5,3"), (4, 6, 0, 0, 10)).value == "P"
        assert outcome(builtin_game("nim:3"), (0, 0, 0)).value == "P"

    @given(st.tuples(*[st.integers(0, 3)] * 3))
    @settings(max_examples=40, deadline=None)
    def test_outcome_iff_grundy_zero(self, pos):
        spec = builtin_game("cn:3,2")
        assert (grundy(spec, pos) == 0) == (outcome(spec, pos).value == "P")

    def test_canonicalization_changes_nothing(self):
        spec = builtin_game("cn:4,2")
        plain = GrundyEngine(spec)
        canon = GrundyEngine(spec, canonicalize=True)
        box = [(a, b, c, d) for a in range(3) for b in range(3) for c in range(3) for d in range(3)]
        for pos in box:
            assert plain.grundy(pos) == canon.grundy(pos)
        assert len(canon._grundy) < len(plain._grundy)


class TestPPositions:
    def test_four_cycle_pairs(self):
        found = p_positions(builtin_game("cn:4,2"), 2)
        assert found == {(a, b, a, b) for a in range(3) for b in range(3)}
        assert len(found) == 9

    def test_single_stack(self):
        assert p_positions(builtin_game("nim:1"), 5) == {(0,)}

    def test_short_path(self):
        assert p_positions(builtin_game("pn:3,2"), 2) == {(0, 0, 0), (1, 0, 1), (2, 0, 2)}

    def test_table_agrees_with_engine(self):
        spec = builtin_game("cn:5,3")
        table = p_table(spec, 2)
        engine = GrundyEngine(spec)
        import itertools

        for pos in itertools.product(range(3), repeat=5):
            assert table[pos] == engine.is_p(pos)

    def test_box_cap(self):
        with pytest.raises(BudgetExceededError):
            p_table(builtin_game("cn:8,3"), 3, max_states=1000)


class TestBruteWinningMove:
    def test_first_move_in_canonical_order(self):
        assert brute_winning_move(builtin_game("cn:3,2"), (2, 1, 1)) == (1, 0, 0)

    def test_none_at_p_positions(self):
        assert brute_winning_move(builtin_game("nim:2"), (3, 3)) is None
        assert brute_winning_move(builtin_game("nim:2"), (0, 0)) is None


class TestVerifyOracle:
    def test_exact_oracle_empty_report(self):
        oracle = oracle_for("cn:4,2")
        report = verify_oracle(
            oracle.spec,
            oracle.membership,
            oracle.move,
            4,
            membership_batch=oracle.membership_batch,
        )
        assert report.ok
        assert report.positions_checked == 5**4

    def test_broken_oracle_reports_closure_violation(self):
        spec = builtin_game("nim:1")
        report = verify_oracle(spec, lambda pos: True, None, 1)
        assert ((1,), (1,), (0,)) in report.closure_violations
        assert (1,) in report.outcome_mismatches
        assert not report.ok

    def test_reachability_flags_missing_moves(self):
        spec = builtin_game("nim:1")
        exact = lambda pos: pos == (0,)
        report = verify_oracle(spec, exact, lambda pos: None, 1)
        assert report.reachability_violations == [(1,)]

    def test_parallel_matches_serial(self):
        oracle = oracle_for("pn:4,2")
        kw = dict(membership_batch=oracle.membership_batch)
        serial = verify_oracle(oracle.spec, oracle.membership, oracle.move, 3, threads=1, **kw)
        parallel = verify_oracle(oracle.spec, oracle.membership, oracle.move, 3, threads=2, **kw)
        assert serial.to_payload() == parallel.to_payload()
        assert serial.ok

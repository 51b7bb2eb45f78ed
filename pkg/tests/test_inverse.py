"""Inverse problem: squared-trace targets back to dilation ratios."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pillowcase import (
    BelowFour,
    TargetTriple,
    group_solutions,
    reference_trace_formulas,
    s_pm,
    solve_ratios,
)

GOLDEN = (1.0 + math.sqrt(5.0)) / 2.0


def ratios_close(p, q, tol=1e-9):
    return all(abs(x - y) <= tol * max(1.0, abs(x), abs(y)) for x, y in zip(p, q))


class TestRoots:
    def test_roots_are_reciprocal(self):
        for x in (4.0, 5.0, 17.3, 4000.0):
            assert s_pm(x, 1) * s_pm(x, -1) == pytest.approx(1.0, rel=1e-12)

    def test_root_solves_the_equation(self):
        for x in (4.5, 9.0, 100.0):
            y = s_pm(x, 1)
            assert y + 1.0 / y == pytest.approx(x - 2.0, rel=1e-12)

    def test_boundary_root_is_one(self):
        assert s_pm(4.0, 1) == 1.0
        assert s_pm(4.0, -1) == 1.0

    def test_below_four_rejected(self):
        with pytest.raises(BelowFour):
            s_pm(3.9, 1)

    def test_slightly_below_four_clamps_with_warning(self):
        with pytest.warns(UserWarning):
            assert s_pm(4.0 - 1e-12, 1) == 1.0

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            s_pm(5.0, 0)

    def test_no_cancellation_at_large_x(self):
        # the minus root underflows to garbage if computed subtractively
        x = 1e12
        y = s_pm(x, -1)
        assert y > 0
        assert y + 1.0 / y == pytest.approx(x - 2.0, rel=1e-12)


class TestTargetTriple:
    def test_rejects_below_four(self):
        with pytest.raises(BelowFour):
            TargetTriple(5.0, 3.0, 5.0)

    def test_values(self):
        assert TargetTriple(4.0, 5.0, 6.0).values == (4.0, 5.0, 6.0)


class TestSolveRatios:
    def test_full_boundary_single_solution(self):
        fam = solve_ratios(TargetTriple(4.0, 4.0, 4.0))
        assert fam.solutions == ((1.0, 1.0, 1.0),)

    def test_golden_target(self):
        fam = solve_ratios(TargetTriple(5.0, 5.0, 5.0))
        assert len(fam.solutions) == 8
        assert any(
            ratios_close(s, (GOLDEN, GOLDEN, GOLDEN)) for s in fam.solutions
        )
        assert any(
            ratios_close(s, (1 / GOLDEN, 1 / GOLDEN, 1 / GOLDEN))
            for s in fam.solutions
        )

    def test_generic_target_eight_solutions(self):
        fam = solve_ratios(TargetTriple(4.5, 6.0, 9.0))
        assert len(fam.solutions) == 8

    def test_partial_boundary_counts(self):
        assert len(solve_ratios(TargetTriple(4.0, 5.0, 5.0)).solutions) == 4
        assert len(solve_ratios(TargetTriple(4.0, 4.0, 9.0)).solutions) == 2

    def test_forward_map_hits_target(self):
        target = TargetTriple(4.7, 11.0, 6.25)
        for lam in solve_ratios(target).solutions:
            image = reference_trace_formulas(lam)
            for got, want in zip(image, target.values):
                assert got == pytest.approx(want, rel=1e-9)

    @given(
        lams=st.tuples(
            *(st.floats(0.05, 20.0, allow_nan=False) for _ in range(3))
        )
    )
    @settings(max_examples=300, deadline=None)
    def test_round_trip_contains_input(self, lams):
        target = TargetTriple(*reference_trace_formulas(lams))
        fam = solve_ratios(target)
        assert any(ratios_close(s, lams) for s in fam.solutions)


class TestGrouping:
    def test_classes_are_reciprocal_pairs(self):
        fam = group_solutions(solve_ratios(TargetTriple(4.5, 6.0, 9.0)))
        assert len(fam.classes) == 4
        for members in fam.classes:
            assert len(members) == 2
            a = fam.solutions[members[0]]
            b = fam.solutions[members[1]]
            assert ratios_close(b, tuple(1.0 / x for x in a))

    def test_self_reciprocal_class_at_boundary(self):
        fam = group_solutions(solve_ratios(TargetTriple(4.0, 4.0, 4.0)))
        assert fam.classes == ((0,),)
        assert fam.lambda4 == (1.0,)

    def test_lambda4_is_reciprocal_product(self):
        fam = group_solutions(solve_ratios(TargetTriple(5.0, 5.0, 5.0)))
        for members, l4 in zip(fam.classes, fam.lambda4):
            l1, l2, l3 = fam.solutions[members[0]]
            assert l4 == pytest.approx(1.0 / (l1 * l2 * l3), rel=1e-12)

    def test_eight_row_pattern(self):
        # any member spawns the whole family: the three row permutations
        # built with lambda4 and all componentwise reciprocals
        fam = solve_ratios(TargetTriple(4.5, 6.0, 9.0))
        sols = fam.solutions
        l1, l2, l3 = sols[0]
        l4 = 1.0 / (l1 * l2 * l3)
        rows = [(l1, l2, l3), (l2, l1, l4), (l4, l3, l2), (l3, l4, l1)]
        rows += [tuple(1.0 / x for x in r) for r in rows]
        for row in rows:
            assert any(ratios_close(row, s) for s in sols)

"""Projective classes, trace classification, generators, and the audit."""

import math

import numpy as np
import pytest
from hypothesis import given, settings

from pillowcase import (
    ClassKind,
    DegenerateInput,
    MarkedTriple,
    NegativeDeterminant,
    NonPositiveLambda,
    NotDelaunayInput,
    ProjectiveMatrix,
    TraceBelowTwo,
    Vec2,
    canonical_equal,
    classify,
    delaunay_normalize,
    delaunay_representatives,
    normalized_trace_sq,
    phi,
    phi_matrix,
    reference_trace_formulas,
    trace_audit,
    trace_to_length,
    triple_status,
    veech_generators,
)

from conftest import marked_triples

GENERIC = ((1.0, 0.0), (0.3, 1.1), (2.0, 3.0, 5.0))


def generic_triple():
    (x1, y1), (x2, y2), lams = GENERIC
    return MarkedTriple.from_pair(Vec2(x1, y1), Vec2(x2, y2), lams)


class TestProjectiveMatrix:
    def test_leading_entry_normalized(self):
        m = ProjectiveMatrix.from_rows(((2.0, 0.0), (0.0, -2.0)))
        assert m.rows == ((1.0, 0.0), (0.0, -1.0))

    def test_scale_invariance(self):
        rows = ((0.5, -3.0), (2.0, 1.0))
        for c in (2.0, -7.5, 1e-6):
            scaled = tuple(tuple(c * x for x in r) for r in rows)
            assert ProjectiveMatrix.from_rows(scaled) == ProjectiveMatrix.from_rows(
                rows
            )

    def test_zero_matrix_rejected(self):
        with pytest.raises(DegenerateInput):
            ProjectiveMatrix.from_rows(((0.0, 0.0), (0.0, 0.0)))

    def test_singular_rejected(self):
        with pytest.raises(DegenerateInput):
            ProjectiveMatrix.from_rows(((1.0, 2.0), (2.0, 4.0)))


class TestClassification:
    def test_negative_determinant_rejected(self):
        m = ProjectiveMatrix.from_affine(phi_matrix(1, generic_triple()))
        with pytest.raises(NegativeDeterminant):
            normalized_trace_sq(m)

    def test_rotation_is_elliptic(self):
        c, s = math.cos(1.0), math.sin(1.0)
        out = classify(ProjectiveMatrix.from_rows(((c, -s), (s, c))))
        assert out.kind is ClassKind.ELLIPTIC
        assert out.length is None

    def test_shear_is_parabolic(self):
        out = classify(ProjectiveMatrix.from_rows(((1.0, 5.0), (0.0, 1.0))))
        assert out.kind is ClassKind.PARABOLIC
        assert out.length == 0.0

    def test_diagonal_is_hyperbolic(self):
        out = classify(ProjectiveMatrix.from_rows(((2.0, 0.0), (0.0, 0.5))))
        assert out.kind is ClassKind.HYPERBOLIC
        assert out.length == pytest.approx(math.acosh(1.25), rel=1e-12)

    def test_trace_to_length(self):
        assert trace_to_length(2.0) == 0.0
        assert trace_to_length(2.0 * math.cosh(1.0)) == pytest.approx(1.0, rel=1e-12)
        with pytest.raises(TraceBelowTwo):
            trace_to_length(1.5)


class TestReferenceTraceFormulas:
    def test_ordering_follows_pairs(self):
        l1, l2, l3 = 2.0, 3.0, 5.0
        def f(x):
            return x + 2.0 + 1.0 / x
        got = reference_trace_formulas((l1, l2, l3))
        assert got == pytest.approx((f(l3 * l2), f(l2 * l1), f(l1 * l3)), rel=1e-15)

    def test_at_least_four(self):
        for x in reference_trace_formulas((0.07, 1.0, 13.0)):
            assert x >= 4.0

    def test_rejects_nonpositive(self):
        with pytest.raises(NonPositiveLambda):
            reference_trace_formulas((1.0, -2.0, 3.0))


class TestGenerators:
    def test_requires_delaunay(self, equilateral):
        with pytest.raises(NotDelaunayInput):
            veech_generators(phi(3, equilateral))

    def test_equilateral_generators_parabolic(self, equilateral):
        gens = veech_generators(equilateral)
        assert gens.pairs == ((3, 2), (2, 1), (1, 3))
        for g in gens.generators:
            out = classify(g)
            assert out.kind is ClassKind.PARABOLIC
            assert normalized_trace_sq(g) == pytest.approx(4.0, abs=1e-9)

    def test_generic_generators_hyperbolic(self):
        t = generic_triple()
        gens = veech_generators(t)
        l1, l2, l3 = t.lambdas
        want = (
            (l3 + l2) ** 2 / (l3 * l2),
            (l2 + l1) ** 2 / (l2 * l1),
            (l1 + l3) ** 2 / (l1 * l3),
        )
        for g, ts in zip(gens.generators, want):
            assert normalized_trace_sq(g) == pytest.approx(ts, rel=1e-9)
            assert classify(g).kind is ClassKind.HYPERBOLIC

    @given(t=marked_triples())
    @settings(max_examples=100, deadline=None)
    def test_composition_trace_identity(self, t):
        # the flips never touch the lambda slots, so the endpoint's lambdas
        # are the input's and the trace identity can be checked against them
        rep, _ = delaunay_normalize(t)
        l1, l2, l3 = rep.lambdas
        assert rep.lambdas == t.lambdas
        gens = veech_generators(rep)
        want = (
            (l3 + l2) ** 2 / (l3 * l2),
            (l2 + l1) ** 2 / (l2 * l1),
            (l1 + l3) ** 2 / (l1 * l3),
        )
        for g, ts in zip(gens.generators, want):
            assert normalized_trace_sq(g) == pytest.approx(ts, rel=1e-9)
            assert g.det > 0


class TestTraceAudit:
    def test_length_source_is_declared(self, equilateral):
        assert trace_audit(equilateral)["length_source"] == "closed_form"

    def test_flags_at_unit_lambdas(self, equilateral):
        pairs = trace_audit(equilateral)["pairs"]
        by_pair = {tuple(e["pair"]): e for e in pairs}
        assert by_pair[(3, 2)]["entrywise_equal"] is True
        assert by_pair[(2, 1)]["entrywise_equal"] is False
        assert by_pair[(2, 1)]["equal_up_to_transpose"] is True
        assert by_pair[(1, 3)]["entrywise_equal"] is False
        assert by_pair[(1, 3)]["equal_up_to_transpose"] is False
        # every squared trace degenerates to 4 here, so nothing is flagged
        assert all(not e["flagged"] for e in pairs)

    def test_generic_discrepancies_reported(self):
        audit = trace_audit(generic_triple())
        by_pair = {tuple(e["pair"]): e for e in audit["pairs"]}
        l1, l2, l3 = generic_triple().lambdas
        e13 = by_pair[(1, 3)]
        assert e13["composition_trace_sq"] == pytest.approx(
            (l1 + l3) ** 2 / (l1 * l3), rel=1e-12
        )
        assert e13["reference_trace_sq"] == pytest.approx(
            l1 * l3 + 2.0 + 1.0 / (l1 * l3), rel=1e-12
        )
        assert e13["delta_composition_reference"] > 1.0
        assert e13["flagged"] is True
        # composition and reference agree for the other two pairs even though
        # the closed forms sit elsewhere
        assert by_pair[(3, 2)]["delta_composition_reference"] < 1e-9
        assert by_pair[(2, 1)]["delta_composition_reference"] < 1e-9
        assert by_pair[(3, 2)]["flagged"] is True

    def test_requires_delaunay(self, equilateral):
        with pytest.raises(NotDelaunayInput):
            trace_audit(phi(2, equilateral))


class TestRepresentatives:
    def test_unique_case(self, equilateral):
        reps = delaunay_representatives(equilateral)
        assert len(reps) == 1
        assert canonical_equal(reps[0], equilateral)

    def test_four_fold_boundary_pair(self, right_isoceles):
        reps = delaunay_representatives(right_isoceles)
        assert len(reps) == 2
        for rep in reps:
            assert triple_status(rep).is_delaunay
        assert not canonical_equal(reps[0], reps[1])

    def test_normalizes_first(self, equilateral):
        reps = delaunay_representatives(phi(1, equilateral))
        assert len(reps) == 1
        assert canonical_equal(reps[0], equilateral)

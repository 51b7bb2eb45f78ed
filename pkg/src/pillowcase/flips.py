"""Flip maps on marked-triangle coordinates and the Delaunay descent loop.

Each map phi_i re-coordinatizes the pillowcase after the double edge flip
through mark i: the fold edge at p_i together with the inner edge that avoids
p_i. At the chart level the same move is two single flips, which is why the
descent algorithm always performs an even number of steps and its step list
compresses to a word in phi indices.

Basis matrices are stored as explicit 2x2 arrays whose columns hold the
basis coefficients of the images of v1 and v2. Composites are formed by the
chain rule: the second map's matrix is written in the intermediate basis, so
a composition applying phi_i first has basis matrix B_i @ B_j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    DegenerateOutput,
    InvalidTriangulation,
    StepLimitExceeded,
    UnsupportedPair,
)
from .geom import Vec2
from .glued import GluedTriangulation, extract_marked_triple, flip_edge
from .surface import MarkedTriple, StatusKind, triple_status


@dataclass(frozen=True)
class AffineFlipMatrix:
    """Linear part of a flip map in the (v1, v2) basis.

    rows[r][c] is the coefficient of basis vector r in the image of basis
    vector c, so applying the matrix to coordinate columns sends v1 to the
    first column's combination and v2 to the second's.
    """

    rows: tuple[tuple[float, float], tuple[float, float]]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.rows, dtype=float)

    @property
    def det(self) -> float:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    @property
    def trace(self) -> float:
        return self.rows[0][0] + self.rows[1][1]

    def image_of_basis(self, v1: Vec2, v2: Vec2) -> tuple[Vec2, Vec2]:
        """Ambient images of the basis vectors under the map."""
        (a, b), (c, d) = self.rows
        return (
            v1.scaled(a) + v2.scaled(c),
            v1.scaled(b) + v2.scaled(d),
        )

    def compose_after(self, first: "AffineFlipMatrix") -> "AffineFlipMatrix":
        """Matrix of (self after first), both expressed in the starting basis.

        self's coefficients live in the intermediate basis (the images under
        first), so the starting-basis composite is first @ self."""
        m = first.array @ self.array
        return AffineFlipMatrix(((m[0, 0], m[0, 1]), (m[1, 0], m[1, 1])))


_PSI_PAIRS = ((3, 2), (2, 1), (1, 3))


def phi(i: int, t: MarkedTriple) -> MarkedTriple:
    """Apply the double-flip map through mark i; lambda slots are untouched.

    Orientation of the vector triple reverses on every application (the
    basis matrices all have negative determinant).
    """
    l1, l2, l3 = t.lambdas
    if i == 1:
        vecs = (
            -t.v3.scaled(l1 + 1.0) - t.v1,
            -t.v2,
            t.v3.scaled(l1),
        )
    elif i == 2:
        vecs = (
            t.v1.scaled(l2),
            -t.v1.scaled(l2 + 1.0) - t.v2,
            -t.v3,
        )
    elif i == 3:
        vecs = (
            -t.v1,
            t.v2.scaled(l3),
            -t.v2.scaled(l3 + 1.0) - t.v3,
        )
    else:
        raise UnsupportedPair(f"flip index must be 1, 2, or 3, got {i}")
    try:
        return MarkedTriple(*vecs, l1, l2, l3)
    except ValueError as exc:  # pragma: no cover - unreachable for valid input
        raise DegenerateOutput(f"flip {i} produced a degenerate triple") from exc


def phi_inverse(i: int, t: MarkedTriple) -> MarkedTriple:
    """Invert phi(i, .): phi_inverse(i, phi(i, t)) == t exactly.

    Same vector formulas as phi with lambda_i substituted by its reciprocal;
    the lambda slots themselves are untouched, like phi's.
    """
    l1, l2, l3 = t.lambdas
    if i == 1:
        vecs = (
            -t.v3.scaled((l1 + 1.0) / l1) - t.v1,
            -t.v2,
            t.v3.scaled(1.0 / l1),
        )
    elif i == 2:
        vecs = (
            t.v1.scaled(1.0 / l2),
            -t.v1.scaled((l2 + 1.0) / l2) - t.v2,
            -t.v3,
        )
    elif i == 3:
        vecs = (
            -t.v1,
            t.v2.scaled(1.0 / l3),
            -t.v2.scaled((l3 + 1.0) / l3) - t.v3,
        )
    else:
        raise UnsupportedPair(f"flip index must be 1, 2, or 3, got {i}")
    try:
        return MarkedTriple(*vecs, l1, l2, l3)
    except ValueError as exc:  # pragma: no cover - unreachable for valid input
        raise DegenerateOutput(f"inverse flip {i} produced a degenerate triple") from exc


def phi_move(i: int, t: MarkedTriple) -> MarkedTriple:
    """The geometric double flip through mark i, expressed on triples.

    The basis formulas describe the flip only on counterclockwise listings;
    on a clockwise listing the same two edge flips are undone rather than
    performed by phi, so the inverse formula applies. Using phi_move at every
    step keeps a flip sequence on the surface it started on, whichever
    orientation the intermediate listings have.
    """
    return phi(i, t) if t.is_ccw else phi_inverse(i, t)


def phi_matrix(i: int, t: MarkedTriple) -> AffineFlipMatrix:
    """Basis matrix of phi(i, .) at t; determinant is -lambda_i."""
    l1, l2, l3 = t.lambdas
    if i == 1:
        rows = ((l1, 0.0), (l1 + 1.0, -1.0))
    elif i == 2:
        rows = ((l2, -(l2 + 1.0)), (0.0, -1.0))
    elif i == 3:
        rows = ((-1.0, 0.0), (0.0, l3))
    else:
        raise UnsupportedPair(f"flip index must be 1, 2, or 3, got {i}")
    return AffineFlipMatrix(rows)


def psi_matrix(j: int, i: int, t: MarkedTriple) -> AffineFlipMatrix:
    """Composite basis matrix for phi_i followed by phi_j, by composition.

    Only the three pairs that return to the same combinatorial role are
    meaningful here. The lambda slots are preserved by each phi, so both
    factors are evaluated at the same lambdas; the chain rule then gives
    B_i @ B_j in the original basis. Determinant is lambda_i * lambda_j > 0.
    """
    if (j, i) not in _PSI_PAIRS:
        raise UnsupportedPair(f"unsupported composition pair {(j, i)}")
    inner = phi_matrix(i, t)
    outer = phi_matrix(j, phi(i, t))
    return outer.compose_after(inner)


def reference_psi_matrix(j: int, i: int, lambdas: tuple[float, float, float]) -> AffineFlipMatrix:
    """Independently tabulated forms of the composite matrices, kept verbatim.

    These reference tables exist for auditing only: (3,2) coincides with the
    composition, (2,1) is its transpose, and (1,3) differs beyond
    transposition (same determinant, different trace). Nothing here is used
    by the algorithms.
    """
    l1, l2, l3 = lambdas
    if (j, i) == (3, 2):
        rows = ((-l2, -l3 * (l2 + 1.0)), (0.0, -l3))
    elif (j, i) == (2, 1):
        rows = ((l1 * l2, l2 * (l1 + 1.0)), (-l1 * (l2 + 1.0), -l1 * l2 - l1 - l2))
    elif (j, i) == (1, 3):
        rows = ((l3 * l1, 0.0), (l3 * (l1 + 1.0), 1.0))
    else:
        raise UnsupportedPair(f"unsupported composition pair {(j, i)}")
    return AffineFlipMatrix(rows)


@dataclass(frozen=True)
class FlipStep:
    edge: int
    hrm_before: float
    hrm_after: float


@dataclass(frozen=True)
class FlipTrace:
    steps: tuple[FlipStep, ...]
    final: GluedTriangulation
    phi_pairs: tuple[int, ...]
    initial: MarkedTriple | None
    final_triple: MarkedTriple | None


def violated_phi_index(t: MarkedTriple, tol: Tolerances = DEFAULT_TOL) -> int | None:
    """Index of the phi that repairs t's unique violated angle-pair sum.

    Pair k's sum is the opposite-angle sum across the fold through mark
    (k mod 3) + 1, which is exactly the fold phi flips. None when already
    Delaunay.
    """
    status = triple_status(t, tol)
    if status.kind is not StatusKind.NOT_DELAUNAY:
        return None
    return (status.violating_pair % 3) + 1


def phi_normalize(
    t: MarkedTriple, max_steps: int = 1000, tol: Tolerances = DEFAULT_TOL
) -> tuple[MarkedTriple, tuple[int, ...]]:
    """Drive t to a Delaunay triple by repeated double-flip application.

    The violated pair is unique at every stage (at most one sum can reach
    pi), so the word is well-defined. Each step applies phi_move, so odd
    positions in the word act on clockwise listings through the inverse
    formula. Returns the raw endpoint, which may be clockwise after an odd
    number of moves.
    """
    word: list[int] = []
    current = t
    while True:
        i = violated_phi_index(current, tol)
        if i is None:
            return current, tuple(word)
        if len(word) >= max_steps:
            raise StepLimitExceeded(
                f"no Delaunay triple within {max_steps} phi applications"
            )
        word.append(i)
        current = phi_move(i, current)


def flipping_algorithm(
    g: GluedTriangulation, max_steps: int = 1000, tol: Tolerances = DEFAULT_TOL
) -> FlipTrace:
    """Greedy descent: flip the edge with the largest opposite-angle sum
    until every edge is locally Delaunay.

    Partnered edges of a double flip carry equal sums, so the tie-break
    (smallest edge id) deterministically picks the inner edge first. The phi
    word is recovered afterwards by replaying the descent on the extracted
    initial coordinates, where the violated pair is unique at every even
    step.
    """
    initial: MarkedTriple | None = None
    try:
        initial = extract_marked_triple(g, tol)
    except InvalidTriangulation:
        pass
    state = g
    steps: list[FlipStep] = []
    while True:
        sums = state.angle_sums(tol)
        worst = min(sums, key=lambda eid: (-sums[eid], eid))
        if sums[worst] <= math.pi + tol.pi_equal:
            break
        if len(steps) >= max_steps:
            raise StepLimitExceeded(
                f"flip count reached max_steps={max_steps} before the "
                "triangulation became Delaunay"
            )
        before = state.harmonic_index(tol)
        state = flip_edge(state, worst, tol)
        steps.append(FlipStep(worst, before, state.harmonic_index(tol)))
    phi_pairs: tuple[int, ...] = ()
    if initial is not None:
        try:
            _, phi_pairs = phi_normalize(initial, max_steps, tol)
        except (DegenerateOutput, StepLimitExceeded):
            # Unwinding a long scramble conditions like stretch^2 and can be
            # numerically impossible even when the chart-level descent
            # succeeds; the word is a best-effort annotation, like `initial`.
            phi_pairs = ()
    final_triple: MarkedTriple | None = None
    try:
        final_triple = extract_marked_triple(state, tol)
    except InvalidTriangulation:
        pass
    return FlipTrace(tuple(steps), state, phi_pairs, initial, final_triple)

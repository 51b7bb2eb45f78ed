"""Marked-triangle coordinates for half-dilation pillowcases.

A pillowcase with four pi-cone singularities that admits a tetrahedral
triangulation is coordinatized by a triple ((v1, l1), (v2, l2), (v3, l3)):
the vi are the side vectors of a planar triangle (they sum to zero) and each
dilation ratio li > 0 records where the marked point on side i splits it
(second sub-segment over first). This module provides the coordinate maps in
both directions, the angle-pair extraction, and the Delaunay trichotomy
classifier built on it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    AmbiguousStatus,
    DegenerateInput,
    DegenerateTriangle,
    MarkNotInterior,
    NonPositiveLambda,
)
from .geom import Triangle, Vec2, angle_at, signed_area


@dataclass(frozen=True)
class MarkedTriple:
    v1: Vec2
    v2: Vec2
    v3: Vec2
    lambda1: float
    lambda2: float
    lambda3: float

    def __post_init__(self) -> None:
        for lam in (self.lambda1, self.lambda2, self.lambda3):
            if not (math.isfinite(lam) and lam > 0):
                raise NonPositiveLambda(f"lambda positivity violated: {lam}")
        scale = max(self.v1.norm(), self.v2.norm(), self.v3.norm())
        total = self.v1 + self.v2 + self.v3
        if total.norm() > DEFAULT_TOL.round_trip * scale:
            raise DegenerateInput(
                f"zero sum violated: v1+v2+v3 = ({total.x:.3e}, {total.y:.3e})"
            )
        cross = self.v1.cross(self.v2)
        if abs(cross) <= DEFAULT_TOL.degeneracy * self.v1.norm() * self.v2.norm():
            raise DegenerateInput("linear independence violated: v1, v2 nearly parallel")

    @classmethod
    def from_pair(
        cls, v1: Vec2, v2: Vec2, lambdas: tuple[float, float, float]
    ) -> "MarkedTriple":
        """Build a triple from two independent vectors; v3 closes the loop."""
        return cls(v1, v2, -(v1 + v2), *lambdas)

    @property
    def vectors(self) -> tuple[Vec2, Vec2, Vec2]:
        return (self.v1, self.v2, self.v3)

    @property
    def lambdas(self) -> tuple[float, float, float]:
        return (self.lambda1, self.lambda2, self.lambda3)

    @property
    def is_ccw(self) -> bool:
        return self.v1.cross(self.v2) > 0

    def scaled(self, c: float) -> "MarkedTriple":
        if c == 0 or not math.isfinite(c):
            raise ValueError(f"scalar must be finite and nonzero, got {c}")
        return MarkedTriple(
            self.v1.scaled(c), self.v2.scaled(c), self.v3.scaled(c), *self.lambdas
        )


@dataclass(frozen=True)
class MarkedTriangle:
    """A planar triangle with one marked point strictly inside each side.

    Vertices are listed (A, B, C) with side i running from vertex i to vertex
    i+1 and carrying mark p_i. Orientation is exposed rather than forced:
    coordinate flips produce clockwise listings, and every angle quantity used
    downstream is unsigned.
    """

    vertices: tuple[Vec2, Vec2, Vec2]
    marks: tuple[Vec2, Vec2, Vec2]

    def __post_init__(self) -> None:
        tri = self.triangle
        if abs(signed_area(tri)) < DEFAULT_TOL.degeneracy * max(
            tri.side(i).norm_sq() for i in range(3)
        ):
            raise DegenerateTriangle("marked triangle is degenerate")
        scale_sq = max(v.norm_sq() for v in self.vertices + self.marks)
        for i, p in enumerate(self.marks):
            s = _side_parameter(
                self.vertices[i], self.vertices[(i + 1) % 3], p, scale_sq=scale_sq
            )
            if not (DEFAULT_TOL.round_trip < s < 1 - DEFAULT_TOL.round_trip):
                raise MarkNotInterior(
                    f"mark p{i + 1} not strictly interior to side {i + 1} (parameter {s})"
                )

    @property
    def triangle(self) -> Triangle:
        return Triangle(*self.vertices)

    @property
    def inner_triangle(self) -> Triangle:
        return Triangle(*self.marks)

    @property
    def is_ccw(self) -> bool:
        return signed_area(self.triangle) > 0


def _side_parameter(
    a: Vec2,
    b: Vec2,
    p: Vec2,
    tol: Tolerances = DEFAULT_TOL,
    scale_sq: float | None = None,
) -> float:
    """Parameter of p along segment a->b; rejects off-line points.

    The cross product's rounding noise grows with the ambient scale of the
    coordinates the points were computed from, not with the side length, so
    the on-line threshold must as well: flip images mix scales by factors of
    lambda, and a short side of a large triangle would otherwise trip this
    check on marks that are exactly on it. Callers that know the enclosing
    figure pass its squared scale.
    """
    ab = b - a
    ap = p - a
    denom = ab.norm_sq()
    if scale_sq is None:
        scale_sq = max(denom, a.norm_sq(), b.norm_sq(), p.norm_sq())
    if abs(ap.cross(ab)) > tol.collinear * scale_sq:
        raise MarkNotInterior("mark does not lie on its side")
    return ap.dot(ab) / denom


class StatusKind(enum.Enum):
    UNIQUE_TETRAHEDRAL = "unique_tetrahedral"
    NON_UNIQUE_FOUR_FOLD = "non_unique_four_fold"
    NOT_DELAUNAY = "not_delaunay"


@dataclass(frozen=True)
class DelaunayStatus:
    kind: StatusKind
    pair: int | None = None  # 1, 2, or 3 when kind is not UNIQUE_TETRAHEDRAL

    @property
    def is_delaunay(self) -> bool:
        return self.kind is not StatusKind.NOT_DELAUNAY

    @property
    def which_pair(self) -> int:
        if self.kind is not StatusKind.NON_UNIQUE_FOUR_FOLD:
            raise AttributeError("which_pair only set for the four-fold case")
        assert self.pair is not None
        return self.pair

    @property
    def violating_pair(self) -> int:
        if self.kind is not StatusKind.NOT_DELAUNAY:
            raise AttributeError("violating_pair only set when not Delaunay")
        assert self.pair is not None
        return self.pair


@dataclass(frozen=True)
class AnglePairs:
    alpha: float
    beta: float
    gamma: float
    alpha_p: float
    beta_p: float
    gamma_p: float

    def sums(self) -> tuple[float, float, float]:
        return (
            self.alpha + self.alpha_p,
            self.beta + self.beta_p,
            self.gamma + self.gamma_p,
        )


def to_marked_triangle(t: MarkedTriple) -> MarkedTriangle:
    """Lay the triple out in the plane: corners 0, v1, v1+v2; mark i splits
    side i so that (second sub-segment)/(first) = lambda_i, with "first" and
    "second" taken along the counterclockwise boundary of the triangle.

    For a counterclockwise triple the side vectors already run with the
    boundary, so mark i sits at v_i/(lambda_i+1) from the side's start. A
    clockwise triple (sides listed against the boundary) places it at the
    mirrored parameter lambda_i/(lambda_i+1): the split ratio is a property
    of the oriented plane, not of the listing direction. Flip images list
    clockwise, and their split data only rejoins the flip geometry under
    this reading.
    """
    a = Vec2(0.0, 0.0)
    b = t.v1
    c = t.v1 + t.v2
    if t.is_ccw:
        f1, f2, f3 = (
            1.0 / (t.lambda1 + 1.0),
            1.0 / (t.lambda2 + 1.0),
            1.0 / (t.lambda3 + 1.0),
        )
    else:
        f1, f2, f3 = (
            t.lambda1 / (t.lambda1 + 1.0),
            t.lambda2 / (t.lambda2 + 1.0),
            t.lambda3 / (t.lambda3 + 1.0),
        )
    p1 = t.v1.scaled(f1)
    p2 = b + t.v2.scaled(f2)
    p3 = c + t.v3.scaled(f3)
    return MarkedTriangle((a, b, c), (p1, p2, p3))


def from_marked_triangle(m: MarkedTriangle) -> MarkedTriple:
    """Invert the layout map; exact up to floating error on valid input.

    Reads the split ratios in the counterclockwise boundary sense, mirroring
    the parameter on clockwise listings exactly as to_marked_triangle does.
    """
    a, b, c = m.vertices
    v1, v2, v3 = b - a, c - b, a - c
    ccw = m.is_ccw
    scale_sq = max(v.norm_sq() for v in m.vertices + m.marks)
    lams = []
    for i, (start, end) in enumerate(((a, b), (b, c), (c, a))):
        s = _side_parameter(start, end, m.marks[i], scale_sq=scale_sq)
        lams.append((1.0 - s) / s if ccw else s / (1.0 - s))
    return MarkedTriple(v1, v2, v3, *lams)


def angle_pairs(m: MarkedTriangle, tol: Tolerances = DEFAULT_TOL) -> AnglePairs:
    """Corner angles of the big triangle paired with inner-triangle angles.

    alpha sits at vertex A and is paired with the inner angle at p2 (the mark
    on the side opposite A), and cyclically: beta with p3, gamma with p1. With
    this pairing each sum equals the opposite-angle sum across one folded edge
    of the glued surface, which is the quantity the Delaunay test needs.
    """
    big = m.triangle
    inner = m.inner_triangle
    return AnglePairs(
        alpha=angle_at(big, 0, tol),
        beta=angle_at(big, 1, tol),
        gamma=angle_at(big, 2, tol),
        alpha_p=angle_at(inner, 1, tol),
        beta_p=angle_at(inner, 2, tol),
        gamma_p=angle_at(inner, 0, tol),
    )


def delaunay_status(m: MarkedTriangle, tol: Tolerances = DEFAULT_TOL) -> DelaunayStatus:
    """Trichotomy on the three angle-pair sums.

    At most one sum can reach pi (the three sums total 2*pi and are positive),
    so observing two sums inside the equality band means the input is too
    ill-conditioned to classify.
    """
    sums = angle_pairs(m, tol).sums()
    near = [k for k, s in enumerate(sums, start=1) if abs(s - math.pi) <= tol.pi_equal]
    if len(near) >= 2:
        raise AmbiguousStatus(
            f"angle-pair sums {near} all within {tol.pi_equal} of pi; "
            "input is numerically unclassifiable"
        )
    over = [k for k, s in enumerate(sums, start=1) if s > math.pi + tol.pi_equal]
    if over:
        worst = max(over, key=lambda k: (sums[k - 1], -k))
        return DelaunayStatus(StatusKind.NOT_DELAUNAY, worst)
    if near:
        return DelaunayStatus(StatusKind.NON_UNIQUE_FOUR_FOLD, near[0])
    return DelaunayStatus(StatusKind.UNIQUE_TETRAHEDRAL)


def triple_status(t: MarkedTriple, tol: Tolerances = DEFAULT_TOL) -> DelaunayStatus:
    return delaunay_status(to_marked_triangle(t), tol)


# --- coordinate gauges -------------------------------------------------------
#
# With the marks carrying fixed labels, the one presentation freedom that
# leaves the labeled surface untouched is a nonzero real scalar on the
# vectors (charts of a half-dilation surface are only defined up to real
# scale; a negative scalar is a half-turn of the layout). Rotating or
# reversing the slot listing re-reads the same layout but renumbers the
# marks, so those are relabelings, useful as such in tests.


def rotated(t: MarkedTriple, r: int) -> MarkedTriple:
    """Re-read the layout starting the corner walk r corners later; the
    marks renumber cyclically (slot 1 takes what was slot 1+r)."""
    vs, ls = t.vectors, t.lambdas
    r %= 3
    return MarkedTriple(
        vs[r], vs[(r + 1) % 3], vs[(r + 2) % 3], ls[r], ls[(r + 1) % 3], ls[(r + 2) % 3]
    )


def relisted(t: MarkedTriple) -> MarkedTriple:
    """Re-read the layout walking the corners in the other direction; marks
    renumber 1<->3. The split ratios carry over unchanged because they are
    measured against the plane's orientation, not the walk direction. The
    result's listing orientation is opposite the input's."""
    return MarkedTriple(-t.v3, -t.v2, -t.v1, t.lambda3, t.lambda2, t.lambda1)


def gauge_forms(t: MarkedTriple) -> tuple[MarkedTriple, ...]:
    """The six relabeled re-readings of t's layout (three walk starts, two
    walk directions). Presentations of the same surface with the mark
    numbering permuted."""
    rots = [rotated(t, r) for r in range(3)]
    return tuple(rots + [relisted(f) for f in rots])


def _scalar_match(a: MarkedTriple, b: MarkedTriple, tol: float) -> bool:
    """Does some real c make c*b equal a componentwise (vectors and lambdas)?"""
    nb = b.v1.norm()
    if nb == 0:
        return False
    c = a.v1.norm() / nb
    if a.v1.dot(b.v1) < 0:
        c = -c
    if c == 0 or not math.isfinite(c):
        return False
    for va, vb in zip(a.vectors, b.vectors):
        for xa, xb in zip(va.as_list(), vb.as_list()):
            if abs(xa - c * xb) > tol * max(1.0, abs(xa), abs(c * xb)):
                return False
    for la, lb in zip(a.lambdas, b.lambdas):
        if abs(la - lb) > tol * max(1.0, la, lb):
            return False
    return True


def canonical_equal(
    a: MarkedTriple, b: MarkedTriple, tol: float | None = None
) -> bool:
    """Equality of the underlying labeled marked surfaces.

    Slots are tied to mark labels, so two presentations agree exactly when a
    single nonzero real scalar relates the vector triples and the split
    ratios match slotwise.
    """
    eps = DEFAULT_TOL.cross_oracle if tol is None else tol
    return _scalar_match(a, b, eps)


# --- randomized inputs -------------------------------------------------------


def random_marked_triple(
    rng: np.random.Generator,
    lam_range: tuple[float, float] = (0.05, 20.0),
    min_angle: float = 0.15,
) -> MarkedTriple:
    """Seeded generator used by sweeps and the CLI; keeps the triangle fat
    enough that classifiers stay far from the degeneracy tolerance."""
    theta = rng.uniform(0.0, 2.0 * math.pi)
    r1 = math.exp(rng.uniform(-1.0, 1.0))
    v1 = Vec2(r1 * math.cos(theta), r1 * math.sin(theta))
    span = rng.uniform(min_angle, math.pi - min_angle)
    r2 = math.exp(rng.uniform(-1.0, 1.0))
    v2 = Vec2(
        r2 * math.cos(theta + span),
        r2 * math.sin(theta + span),
    )
    lo, hi = math.log(lam_range[0]), math.log(lam_range[1])
    lams = tuple(float(math.exp(rng.uniform(lo, hi))) for _ in range(3))
    return MarkedTriple.from_pair(v1, v2, lams)

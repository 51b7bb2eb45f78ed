"""Glued triangulations of the four-cone-point pillowcase.

A surface here is a list of triangular faces, each drawn in its own planar
chart, together with an involution pairing (face, side) slots. Matched sides
are related by a map z -> a*z + t with real a, so developing a neighbor into
a face's chart is a similarity with a real (sign-carrying) ratio. The gluing
of a marked triangle produces four faces (the inner mark triangle plus three
negated corner triangles), six edge orbits (three folds, three inner edges),
and four vertex orbits, each a pi-cone.

Vertex-orbit labels are small ints 1..4 assigned at construction and carried
positionally through flips, so tests can watch how the combinatorial roles
move. Orbit 4 starts as the identified triangle corners.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    DomainError,
    InvalidTriangulation,
    NonConvexQuad,
    SelfGluedEdge,
)
from .geom import (
    Triangle,
    Vec2,
    angle_at,
    harmonic_index_triangulation,
    signed_area,
)
from .surface import MarkedTriangle, MarkedTriple, from_marked_triangle

Slot = tuple[int, int]  # (face index, side index); side i runs vertex i -> i+1


@dataclass(frozen=True)
class Face:
    verts: tuple[Vec2, Vec2, Vec2]
    labels: tuple[int, int, int]  # vertex-orbit label at each corner

    def vertex(self, i: int) -> Vec2:
        return self.verts[i % 3]

    def label(self, i: int) -> int:
        return self.labels[i % 3]

    def side(self, i: int) -> Vec2:
        return self.vertex(i + 1) - self.vertex(i)

    @property
    def triangle(self) -> Triangle:
        return Triangle(*self.verts)

    def negated(self) -> "Face":
        return Face(tuple(-v for v in self.verts), self.labels)

    def scaled(self, c: float) -> "Face":
        return Face(tuple(v.scaled(c) for v in self.verts), self.labels)


def _gluing_ratio(side_this: Vec2, side_partner: Vec2, tol: Tolerances) -> float:
    """Real a with a * side_partner = -side_this; glued sides must be parallel."""
    if abs(side_this.cross(side_partner)) > tol.collinear * side_this.norm() * side_partner.norm():
        raise InvalidTriangulation(
            "glued sides are not parallel across the identification"
        )
    return -side_this.dot(side_partner) / side_partner.norm_sq()


@dataclass(frozen=True, eq=False)
class GluedTriangulation:
    faces: tuple[Face, ...]
    # Each unordered edge orbit appears twice here, once per direction.
    gluings: dict[Slot, tuple[Slot, float]]
    edge_ids: dict[Slot, int]

    def partner(self, slot: Slot) -> Slot:
        return self.gluings[slot][0]

    def ratio(self, slot: Slot) -> float:
        return self.gluings[slot][1]

    def side(self, slot: Slot) -> Vec2:
        fi, si = slot
        return self.faces[fi].side(si)

    def edges(self) -> dict[int, tuple[Slot, Slot]]:
        """Edge orbit id -> its two slots, lower slot first."""
        out: dict[int, tuple[Slot, Slot]] = {}
        for slot, eid in self.edge_ids.items():
            other = self.partner(slot)
            out[eid] = (slot, other) if slot <= other else (other, slot)
        return out

    def develop(self, slot: Slot) -> tuple[float, Vec2]:
        """Map placing the partner face into slot's chart: z -> a*z + t.

        Matched sides are traversed in opposite directions, so the partner
        side's start lands on this side's end."""
        fi, si = slot
        (gi, sj), a = self.gluings[slot]
        t = self.faces[fi].vertex(si + 1) - self.faces[gi].vertex(sj).scaled(a)
        return a, t

    def developed_apex(self, slot: Slot) -> Vec2:
        """The partner face's opposite vertex, developed into slot's chart."""
        a, t = self.develop(slot)
        gi, sj = self.partner(slot)
        v = self.faces[gi].vertex(sj + 2)
        return v.scaled(a) + t

    def opposite_angle_sum(self, edge_id: int, tol: Tolerances = DEFAULT_TOL) -> float:
        """Sum of the two angles facing this edge; the local Delaunay quantity.

        Angles survive developing unchanged (the transition maps are real
        similarities), so each is measured in its own face's chart."""
        (fi, si), (gi, sj) = self.edges()[edge_id]
        return angle_at(self.faces[fi].triangle, si + 2, tol) + angle_at(
            self.faces[gi].triangle, sj + 2, tol
        )

    def angle_sums(self, tol: Tolerances = DEFAULT_TOL) -> dict[int, float]:
        return {eid: self.opposite_angle_sum(eid, tol) for eid in sorted(self.edges())}

    def is_locally_delaunay(
        self, edge_id: int | None = None, tol: Tolerances = DEFAULT_TOL
    ) -> bool:
        if edge_id is not None:
            return self.opposite_angle_sum(edge_id, tol) <= math.pi + tol.pi_equal
        return all(
            s <= math.pi + tol.pi_equal for s in self.angle_sums(tol).values()
        )

    def harmonic_index(self, tol: Tolerances = DEFAULT_TOL) -> float:
        return harmonic_index_triangulation((f.triangle for f in self.faces), tol)

    def orbit_labels(self) -> tuple[int, ...]:
        return tuple(sorted({l for f in self.faces for l in f.labels}))

    def vertex_degrees(self) -> dict[int, int]:
        """Face-corner count at each vertex orbit."""
        degrees: dict[int, int] = {}
        for f in self.faces:
            for l in f.labels:
                degrees[l] = degrees.get(l, 0) + 1
        return degrees

    def cone_angles(self, tol: Tolerances = DEFAULT_TOL) -> dict[int, float]:
        angles: dict[int, float] = {}
        for f in self.faces:
            for ci in range(3):
                angles[f.labels[ci]] = angles.get(f.labels[ci], 0.0) + angle_at(
                    f.triangle, ci, tol
                )
        return angles

    def validate(self, tol: Tolerances = DEFAULT_TOL) -> None:
        """Check the structural and geometric invariants; raise on violation."""
        if len(self.faces) != 4:
            raise InvalidTriangulation(f"expected 4 faces, found {len(self.faces)}")
        slots = {(fi, si) for fi in range(len(self.faces)) for si in range(3)}
        if set(self.gluings) != slots or set(self.edge_ids) != slots:
            raise InvalidTriangulation("every slot must be glued exactly once")
        for slot in slots:
            other, a = self.gluings[slot]
            if other == slot:
                raise InvalidTriangulation(f"slot {slot} glued to itself")
            back, b = self.gluings[other]
            if back != slot:
                raise InvalidTriangulation("gluing map is not an involution")
            if self.edge_ids[slot] != self.edge_ids[other]:
                raise InvalidTriangulation("paired slots carry different edge ids")
            if abs(a * b - 1.0) > 1e-9:
                raise InvalidTriangulation(
                    f"gluing ratios across {slot} are not reciprocal: {a} vs {b}"
                )
            # recomputing from the charts must reproduce the stored ratio
            expected = _gluing_ratio(self.side(slot), self.side(other), tol)
            if abs(a - expected) > 1e-9 * max(1.0, abs(expected)):
                raise InvalidTriangulation("stored gluing ratio disagrees with charts")
            fi, si = slot
            gi, sj = other
            if self.faces[fi].label(si) != self.faces[gi].label(sj + 1) or self.faces[
                fi
            ].label(si + 1) != self.faces[gi].label(sj):
                raise InvalidTriangulation("vertex labels disagree across a gluing")
        if len(self.edges()) != 6:
            raise InvalidTriangulation(f"expected 6 edge orbits, found {len(self.edges())}")
        degrees = self.vertex_degrees()
        if len(degrees) != 4:
            raise InvalidTriangulation(
                f"expected 4 vertex orbits, found {sorted(degrees)}"
            )
        for label, theta in self.cone_angles(tol).items():
            if abs(theta - math.pi) > tol.cone_angle:
                raise InvalidTriangulation(
                    f"cone angle at orbit {label} is {theta}, expected pi"
                )
        # Holonomy around a pi-cone reverses direction, so the ratio signs
        # around every vertex orbit multiply to -1 in any chart gauge.
        for label in degrees:
            product = 1.0
            for eid, (s1, _) in self.edges().items():
                fi, si = s1
                ends = {self.faces[fi].label(si), self.faces[fi].label(si + 1)}
                if label in ends:
                    product *= math.copysign(1.0, self.ratio(s1))
            if product != -1.0:
                raise InvalidTriangulation(
                    f"gluing signs around orbit {label} multiply to +1"
                )
        if self.partition() == (3, 3, 3, 3):
            for slot in self.gluings:
                if self.ratio(slot) >= 0:
                    raise InvalidTriangulation(
                        "tetrahedral state admits an all-negative gauge, "
                        f"but slot {slot} has ratio {self.ratio(slot)}"
                    )

    def partition(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertex_degrees().values()))


def classify_combinatorics(g: GluedTriangulation) -> tuple[int, ...]:
    """Multiset of face-counts around the vertex orbits.

    Only two values can occur on a pillowcase whose triangulation came from
    marked-triangle gluing and flips; anything else means the structure broke.
    """
    for eid, (s1, _) in g.edges().items():
        fi, si = s1
        if g.faces[fi].label(si) == g.faces[fi].label(si + 1):
            raise InvalidTriangulation(
                f"edge {eid} connects vertex orbit {g.faces[fi].label(si)} to itself"
            )
    part = g.partition()
    if part not in ((3, 3, 3, 3), (2, 2, 4, 4)):
        raise InvalidTriangulation(f"inadmissible vertex-degree partition {part}")
    return part


# Slot pairs of the standard gluing; edge ids 0-2 are the inner mark-triangle
# edges, 3-5 the folded sub-segment pairs through p1, p2, p3.
_GLUE_SCHEME: tuple[tuple[Slot, Slot], ...] = (
    ((0, 0), (1, 2)),
    ((0, 1), (2, 2)),
    ((0, 2), (3, 2)),
    ((3, 1), (1, 0)),
    ((1, 1), (2, 0)),
    ((2, 1), (3, 0)),
)


def glue(m: MarkedTriangle, tol: Tolerances = DEFAULT_TOL) -> GluedTriangulation:
    """Close a marked triangle up into a pillowcase.

    Face 0 is the inner mark triangle in the original chart. Each corner
    triangle is stored negated, which keeps every gluing ratio negative: the
    inner edges get ratio -1 and the fold through p_i gets -1/lambda_i or its
    reciprocal, depending on the direction of travel.
    """
    a, b, c = m.vertices
    p1, p2, p3 = m.marks
    faces = (
        Face((p1, p2, p3), (1, 2, 3)),
        Face((-p1, -b, -p2), (1, 4, 2)),
        Face((-p2, -c, -p3), (2, 4, 3)),
        Face((-p3, -a, -p1), (3, 4, 1)),
    )
    gluings: dict[Slot, tuple[Slot, float]] = {}
    edge_ids: dict[Slot, int] = {}
    for eid, (s1, s2) in enumerate(_GLUE_SCHEME):
        side1 = faces[s1[0]].side(s1[1])
        side2 = faces[s2[0]].side(s2[1])
        gluings[s1] = (s2, _gluing_ratio(side1, side2, tol))
        gluings[s2] = (s1, _gluing_ratio(side2, side1, tol))
        edge_ids[s1] = eid
        edge_ids[s2] = eid
    return GluedTriangulation(faces, gluings, edge_ids)


def _rebuild(
    faces: tuple[Face, ...],
    pairs: dict[int, tuple[Slot, Slot]],
    tol: Tolerances,
) -> GluedTriangulation:
    """Assemble a state from faces and edge pairs: recompute every ratio from
    the charts, re-gauge face signs toward all-negative ratios, and rescale
    each chart so its longest side is 1."""

    def ratios_for(fs: tuple[Face, ...]) -> dict[int, float]:
        return {
            eid: _gluing_ratio(fs[s1[0]].side(s1[1]), fs[s2[0]].side(s2[1]), tol)
            for eid, (s1, s2) in pairs.items()
        }

    base = ratios_for(faces)
    # Negating one face chart negates the ratios on its three edges; search
    # the sign gauge (first face fixed) for the most negative assignment.
    best: tuple[int, tuple[int, ...]] | None = None
    for rest in itertools.product((1, -1), repeat=len(faces) - 1):
        eps = (1,) + rest
        count = sum(
            1
            for eid, (s1, s2) in pairs.items()
            if base[eid] * eps[s1[0]] * eps[s2[0]] < 0
        )
        if best is None or count > best[0]:
            best = (count, eps)
    assert best is not None
    eps = best[1]
    faces = tuple(f if e == 1 else f.negated() for f, e in zip(faces, eps))
    faces = tuple(
        f.scaled(1.0 / math.sqrt(max(f.side(i).norm_sq() for i in range(3))))
        for f in faces
    )
    gluings: dict[Slot, tuple[Slot, float]] = {}
    edge_ids: dict[Slot, int] = {}
    for eid, (s1, s2) in pairs.items():
        side1 = faces[s1[0]].side(s1[1])
        side2 = faces[s2[0]].side(s2[1])
        gluings[s1] = (s2, _gluing_ratio(side1, side2, tol))
        gluings[s2] = (s1, _gluing_ratio(side2, side1, tol))
        edge_ids[s1] = eid
        edge_ids[s2] = eid
    return GluedTriangulation(faces, gluings, edge_ids)


def flip_edge(
    g: GluedTriangulation, edge_id: int, tol: Tolerances = DEFAULT_TOL
) -> GluedTriangulation:
    """Replace the edge by the other diagonal of its developed quadrilateral.

    The second face is developed into the first face's chart, the quad is
    checked for strict convexity, and the two new triangles are re-split
    along the new diagonal (which inherits the old edge's orbit id). The
    second new face is stored negated so the sign gauge stays close to
    all-negative; ratios are then rebuilt from scratch.
    """
    try:
        (fi, k), (gi, m) = g.edges()[edge_id]
    except KeyError:
        raise InvalidTriangulation(f"no edge orbit with id {edge_id}") from None
    if fi == gi:
        raise SelfGluedEdge(
            f"edge {edge_id} has both sides on face {fi}; its quad is not embedded"
        )
    f, h = g.faces[fi], g.faces[gi]
    p = f.vertex(k + 2)
    q0 = f.vertex(k)
    q1 = f.vertex(k + 1)
    r = g.developed_apex((fi, k))
    orient = math.copysign(1.0, signed_area(f.triangle))
    quad = (p, q0, r, q1)
    for i in range(4):
        u = quad[(i + 1) % 4] - quad[i]
        w = quad[(i + 2) % 4] - quad[(i + 1) % 4]
        if orient * u.cross(w) <= tol.degeneracy * u.norm() * w.norm():
            raise NonConvexQuad(
                f"flip of edge {edge_id} rejected: developed quad is not strictly "
                f"convex at corner {(i + 1) % 4}"
            )
    assert f.label(k) == h.label(m + 1) and f.label(k + 1) == h.label(m)
    new_f = Face((p, q0, r), (f.label(k + 2), f.label(k), h.label(m + 2)))
    new_g = Face((-r, -q1, -p), (h.label(m + 2), f.label(k + 1), f.label(k + 2)))
    faces = tuple(
        new_f if i == fi else new_g if i == gi else face
        for i, face in enumerate(g.faces)
    )
    remap: dict[Slot, Slot] = {
        (fi, (k + 1) % 3): (gi, 1),
        (fi, (k + 2) % 3): (fi, 0),
        (gi, (m + 1) % 3): (fi, 1),
        (gi, (m + 2) % 3): (gi, 0),
    }
    pairs: dict[int, tuple[Slot, Slot]] = {edge_id: ((fi, 2), (gi, 2))}
    for eid, (s1, s2) in g.edges().items():
        if eid == edge_id:
            continue
        pairs[eid] = (remap.get(s1, s1), remap.get(s2, s2))
    return _rebuild(faces, pairs, tol)


def extract_marked_triple(
    g: GluedTriangulation, tol: Tolerances = DEFAULT_TOL
) -> MarkedTriple:
    """Read marked-triangle coordinates back off a tetrahedral state.

    The one face whose corners avoid the corner orbit is the mark triangle;
    the developed apexes of its three neighbors are the big triangle's
    corners. Slots follow the mark labels, not the face's own listing: after
    flips the face may hold the marks in either cyclic direction, and the
    returned triple always has mark i's side in slot i so that flip words
    stay comparable across presentations.
    """
    if classify_combinatorics(g) != (3, 3, 3, 3):
        raise InvalidTriangulation(
            "marked-triangle extraction needs the tetrahedral combinatorial type"
        )
    try:
        fi = next(i for i, f in enumerate(g.faces) if 4 not in f.labels)
    except StopIteration:
        raise InvalidTriangulation(
            "no face avoids the corner orbit; mark labels are inconsistent"
        ) from None
    f = g.faces[fi]
    if sorted(f.labels) != [1, 2, 3]:
        raise InvalidTriangulation(
            f"mark-triangle face carries orbit labels {f.labels}, expected a "
            "permutation of (1, 2, 3)"
        )
    # The big side carrying mark k (face indexing) runs between the apexes
    # developed across the two face sides adjacent to that corner.
    apex = [g.developed_apex((fi, si)) for si in range(3)]
    k1 = f.labels.index(1)
    if f.labels[(k1 + 1) % 3] == 2:  # marks 1,2,3 follow the face's listing
        corners = (apex[(k1 + 2) % 3], apex[k1], apex[(k1 + 1) % 3])
        marks = (f.vertex(k1), f.vertex((k1 + 1) % 3), f.vertex((k1 + 2) % 3))
    else:  # marks 1,2,3 run against it
        corners = (apex[k1], apex[(k1 + 2) % 3], apex[(k1 + 1) % 3])
        marks = (f.vertex(k1), f.vertex((k1 + 2) % 3), f.vertex((k1 + 1) % 3))
    try:
        return from_marked_triangle(MarkedTriangle(corners, marks))
    except DomainError as exc:
        raise InvalidTriangulation(
            "tetrahedral state does not read back as a marked triangle"
        ) from exc

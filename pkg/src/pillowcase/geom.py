"""Planar primitives: vectors, triangles, angles, and the harmonic index.

Angles are always computed with atan2 of cross/dot rather than arccos of a
cosine, which keeps them well-conditioned near 0 and pi. Degeneracy is the
scale-free predicate |signed area| < tol * (longest side)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .config import DEFAULT_TOL, Tolerances
from .errors import DegenerateTriangle

ROOT3_4 = 4.0 * math.sqrt(3.0)  # minimum harmonic index, attained by equilaterals


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite vector component: ({self.x}, {self.y})")

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scaled(self, c: float) -> "Vec2":
        return Vec2(c * self.x, c * self.y)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def norm_sq(self) -> float:
        return self.x * self.x + self.y * self.y

    def as_list(self) -> list[float]:
        return [self.x, self.y]


@dataclass(frozen=True)
class Triangle:
    a: Vec2
    b: Vec2
    c: Vec2

    def vertex(self, i: int) -> Vec2:
        return (self.a, self.b, self.c)[i % 3]

    @property
    def vertices(self) -> tuple[Vec2, Vec2, Vec2]:
        return (self.a, self.b, self.c)

    def side(self, i: int) -> Vec2:
        """Vector of side i, from vertex i to vertex i+1."""
        return self.vertex(i + 1) - self.vertex(i)


def signed_area(t: Triangle) -> float:
    """Half the cross product of two edge vectors; positive iff counterclockwise."""
    return 0.5 * (t.b - t.a).cross(t.c - t.a)


def longest_side_sq(t: Triangle) -> float:
    return max(t.side(i).norm_sq() for i in range(3))


def is_degenerate(t: Triangle, tol: Tolerances = DEFAULT_TOL) -> bool:
    return abs(signed_area(t)) < tol.degeneracy * longest_side_sq(t)


def _require_nondegenerate(t: Triangle, tol: Tolerances) -> None:
    if is_degenerate(t, tol):
        raise DegenerateTriangle(
            f"triangle area {signed_area(t):.3e} below degeneracy tolerance "
            f"for scale {math.sqrt(longest_side_sq(t)):.3e}"
        )


def angle_at(t: Triangle, vertex_index: int, tol: Tolerances = DEFAULT_TOL) -> float:
    """Interior angle at the given vertex, in (0, pi)."""
    _require_nondegenerate(t, tol)
    p = t.vertex(vertex_index)
    u = t.vertex(vertex_index + 1) - p
    w = t.vertex(vertex_index + 2) - p
    return math.atan2(abs(u.cross(w)), u.dot(w))


def harmonic_index_triangle(t: Triangle, tol: Tolerances = DEFAULT_TOL) -> float:
    """Sum of squared side lengths over area; scale-invariant, minimized (4*sqrt 3)
    by equilateral triangles."""
    _require_nondegenerate(t, tol)
    total = sum(t.side(i).norm_sq() for i in range(3))
    return total / abs(signed_area(t))


def harmonic_index_triangulation(
    ts: Iterable[Triangle], tol: Tolerances = DEFAULT_TOL
) -> float:
    return sum(harmonic_index_triangle(t, tol) for t in ts)

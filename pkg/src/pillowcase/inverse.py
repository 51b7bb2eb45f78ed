"""Recovering dilation ratios from a squared-trace target triple.

Each target component x >= 4 pins the corresponding lambda-product to one of
the two reciprocal roots of y + 1/y = x - 2. Choosing a root per component
gives eight candidate sign vectors; the products convert to the individual
ratios by

    lambda1 = sqrt(s_b * s_c / s_a),
    lambda2 = sqrt(s_a * s_b / s_c),
    lambda3 = sqrt(s_a * s_c / s_b),

which is the unique assignment under which the forward closed forms
(x + 2 + 1/x at x = l3*l2, l2*l1, l1*l3) send every candidate back to the
target. The eight candidates always form four triples and their
componentwise reciprocals, and reciprocal pairs describe the same unmarked
surface, so they are grouped into classes.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field

from .config import DEFAULT_TOL, Tolerances
from .errors import BelowFour, OracleDisagreement, TableMismatch
from .veech import reference_trace_formulas

Ratios = tuple[float, float, float]

FORWARD_TOL = 1e-9  # relative gap allowed on the solution -> target round trip


def _clamped(x: float, tol: Tolerances) -> float:
    if not math.isfinite(x) or x < 4.0 - tol.below_four:
        raise BelowFour(f"target component {x} is below 4")
    if x < 4.0:
        warnings.warn(
            f"target component {x} within tolerance below 4; clamped to 4",
            stacklevel=3,
        )
        return 4.0
    return x


@dataclass(frozen=True)
class TargetTriple:
    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, _clamped(getattr(self, name), DEFAULT_TOL))

    @property
    def values(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)


def s_pm(x: float, sign: int, tol: Tolerances = DEFAULT_TOL) -> float:
    """The root ((x-2) + sign*sqrt(x^2-4x))/2 of y + 1/y = x - 2.

    The two roots are reciprocal; the minus root is computed as 1/plus to
    dodge the subtractive cancellation at large x.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    x = _clamped(x, tol)
    plus = ((x - 2.0) + math.sqrt(x * x - 4.0 * x)) / 2.0
    return plus if sign == 1 else 1.0 / plus


@dataclass(frozen=True)
class SolutionFamily:
    target: TargetTriple
    solutions: tuple[Ratios, ...]
    classes: tuple[tuple[int, ...], ...] = field(default=())
    lambda4: tuple[float, ...] = field(default=())


def _ratios_close(p: Ratios, q: Ratios, tol: float) -> bool:
    return all(abs(x - y) <= tol * max(1.0, abs(x), abs(y)) for x, y in zip(p, q))


def solve_ratios(t: TargetTriple, tol: Tolerances = DEFAULT_TOL) -> SolutionFamily:
    """All ratio triples hitting the target, deduplicated and sorted.

    Boundary components (= 4) collapse their two roots, so the count drops
    from eight to four, two, or one as components hit the boundary.
    """
    a, b, c = t.values
    candidates: list[Ratios] = []
    for sa, sb, sc in itertools.product((1, -1), repeat=3):
        ra, rb, rc = s_pm(a, sa, tol), s_pm(b, sb, tol), s_pm(c, sc, tol)
        lam = (
            math.sqrt(rb * rc / ra),
            math.sqrt(ra * rb / rc),
            math.sqrt(ra * rc / rb),
        )
        if not any(_ratios_close(lam, seen, tol.dedup) for seen in candidates):
            candidates.append(lam)
    for lam in candidates:
        image = reference_trace_formulas(lam)
        for got, want in zip(image, t.values):
            if abs(got - want) > FORWARD_TOL * max(1.0, abs(want)):
                raise OracleDisagreement(
                    f"solution {lam} maps to {image}, expected {t.values}"
                )
    return SolutionFamily(t, tuple(sorted(candidates)))


def _table_rows(seed: Ratios) -> tuple[Ratios, ...]:
    """The four-row pattern generated by any member: (l1,l2,l3) with
    l4 = 1/(l1*l2*l3) spawns (l2,l1,l4), (l4,l3,l2), (l3,l4,l1)."""
    l1, l2, l3 = seed
    l4 = 1.0 / (l1 * l2 * l3)
    rows = ((l1, l2, l3), (l2, l1, l4), (l4, l3, l2), (l3, l4, l1))
    recips = tuple(tuple(1.0 / x for x in row) for row in rows)
    return rows + recips


def group_solutions(
    f: SolutionFamily, tol: Tolerances = DEFAULT_TOL
) -> SolutionFamily:
    """Partition solutions into unmarked-surface classes.

    A triple and its componentwise reciprocal present the same surface with
    the walk reversed, so each class is a reciprocal pair (a singleton when
    the triple is self-reciprocal, as at the full boundary). Along the way
    the family is checked against the eight-row pattern; a mismatch means
    the solver and the table describe different sets and is surfaced loudly.
    """
    if not f.solutions:
        raise TableMismatch("cannot group an empty solution family")
    pattern = _table_rows(f.solutions[0])
    for sol in f.solutions:
        if not any(_ratios_close(sol, row, tol.dedup) for row in pattern):
            raise TableMismatch(f"solution {sol} is outside the eight-row pattern")
    for row in pattern:
        if not any(_ratios_close(sol, row, tol.dedup) for sol in f.solutions):
            raise TableMismatch(f"pattern row {row} is missing from the solutions")
    assigned: set[int] = set()
    classes: list[tuple[int, ...]] = []
    lambda4: list[float] = []
    for i, sol in enumerate(f.solutions):
        if i in assigned:
            continue
        recip = tuple(1.0 / x for x in sol)
        partner = None
        for j in range(i, len(f.solutions)):
            if j not in assigned and _ratios_close(f.solutions[j], recip, tol.dedup):
                partner = j
                break
        if partner is None:
            raise TableMismatch(f"no reciprocal partner for solution {sol}")
        members = (i,) if partner == i else (i, partner)
        assigned.update(members)
        classes.append(members)
        rep = f.solutions[members[0]]
        lambda4.append(1.0 / (rep[0] * rep[1] * rep[2]))
    return SolutionFamily(f.target, f.solutions, tuple(classes), tuple(lambda4))

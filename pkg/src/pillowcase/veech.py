"""Symmetry-group generators and trace classification.

At a Delaunay representative, the three composite flip classes stabilize the
half-dilation structure; conjugating their basis matrices by P = (v1 v2)
gives honest plane matrices whose projective classes generate the group.
Classification runs on the scale- and conjugation-invariant quantity
tr(A)^2/det(A): below 4 elliptic, 4 parabolic, above hyperbolic, with
translation length arccosh(|tr|/2) after unit-determinant normalization.

Two sources of truth exist for the squared traces and they are not the same:
matrix composition yields (li + lj)^2/(li*lj), while the tabulated closed
forms follow li*lj + 2 + 1/(li*lj). trace_audit reports every candidate side
by side and flags the gaps; the lengths exposed downstream come from the
closed forms, and every report says so.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL, Tolerances
from .errors import (
    DegenerateInput,
    NegativeDeterminant,
    NonPositiveLambda,
    NotDelaunayInput,
    TraceBelowTwo,
)
from .flips import (
    _PSI_PAIRS,
    AffineFlipMatrix,
    phi_move,
    phi_normalize,
    psi_matrix,
    reference_psi_matrix,
)
from .geom import Vec2
from .surface import MarkedTriple, StatusKind, triple_status

AUDIT_FLAG_TOL = 1e-9


def delaunay_normalize(
    t: MarkedTriple, max_steps: int = 1000, tol: Tolerances = DEFAULT_TOL
) -> tuple[MarkedTriple, tuple[int, ...]]:
    """Flip t to a Delaunay representative; returns the endpoint and the word
    of flip indices that was applied, in order."""
    return phi_normalize(t, max_steps, tol)


@dataclass(frozen=True)
class ProjectiveMatrix:
    """A nonzero-scalar class of invertible 2x2 matrices.

    The stored representative is scaled so the first largest-magnitude entry
    (row-major) equals +1, which makes the form independent of the incoming
    scale and usable for byte-stable output.
    """

    rows: tuple[tuple[float, float], tuple[float, float]]

    @classmethod
    def from_rows(
        cls, rows, tol: Tolerances = DEFAULT_TOL
    ) -> "ProjectiveMatrix":
        flat = [float(rows[r][c]) for r in range(2) for c in range(2)]
        pivot = max(flat, key=abs)
        for entry in flat:
            if abs(entry) == abs(pivot):
                pivot = entry
                break
        if pivot == 0.0:
            raise DegenerateInput("projective class of the zero matrix")
        scaled = [entry / pivot for entry in flat]
        det = scaled[0] * scaled[3] - scaled[1] * scaled[2]
        if abs(det) <= tol.degeneracy:
            raise DegenerateInput(
                f"projective matrix is singular (normalized det {det:.3e})"
            )
        return cls(((scaled[0], scaled[1]), (scaled[2], scaled[3])))

    @classmethod
    def from_affine(
        cls, m: AffineFlipMatrix, tol: Tolerances = DEFAULT_TOL
    ) -> "ProjectiveMatrix":
        return cls.from_rows(m.rows, tol)

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


class ClassKind(enum.Enum):
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class ElementClass:
    kind: ClassKind
    normalized_trace_sq: float
    length: float | None  # geodesic translation length; None when elliptic


@dataclass(frozen=True)
class GeneratorSet:
    pairs: tuple[tuple[int, int], ...]
    generators: tuple[ProjectiveMatrix, ...]
    source_lambdas: tuple[float, float, float]
    basis: tuple[Vec2, Vec2]


def normalized_trace_sq(a: ProjectiveMatrix) -> float:
    """tr^2/det: the classifier invariant. Orientation-reversing classes have
    no PSL(2,R) meaning here and are rejected rather than squared away."""
    det = a.det
    if det <= 0:
        raise NegativeDeterminant(
            f"normalized trace needs positive determinant, got {det:.6g}"
        )
    return a.trace * a.trace / det


def trace_to_length(tr_abs: float, tol: Tolerances = DEFAULT_TOL) -> float:
    """Translation length l with 2cosh(l) = |tr| of the unit-determinant
    representative; values inside the parabolic band clamp to zero."""
    if tr_abs < 2.0 - tol.parabolic:
        raise TraceBelowTwo(
            f"|trace| {tr_abs} is below 2; no hyperbolic/parabolic length"
        )
    if tr_abs <= 2.0:
        return 0.0
    return math.acosh(tr_abs / 2.0)


def classify(a: ProjectiveMatrix, tol: Tolerances = DEFAULT_TOL) -> ElementClass:
    ts = normalized_trace_sq(a)
    if ts < 4.0 - tol.parabolic:
        return ElementClass(ClassKind.ELLIPTIC, ts, None)
    if ts <= 4.0 + tol.parabolic:
        return ElementClass(ClassKind.PARABOLIC, ts, 0.0)
    return ElementClass(ClassKind.HYPERBOLIC, ts, trace_to_length(math.sqrt(ts), tol))


def _require_delaunay(t: MarkedTriple, tol: Tolerances) -> None:
    if triple_status(t, tol).kind is StatusKind.NOT_DELAUNAY:
        raise NotDelaunayInput(
            "a Delaunay representative is required; normalize the triple first"
        )


def veech_generators(
    t_delaunay: MarkedTriple, tol: Tolerances = DEFAULT_TOL
) -> GeneratorSet:
    """The three composite flip classes at a Delaunay triple, in ambient
    coordinates via P = (v1 v2)."""
    _require_delaunay(t_delaunay, tol)
    p = np.array(
        [[t_delaunay.v1.x, t_delaunay.v2.x], [t_delaunay.v1.y, t_delaunay.v2.y]],
        dtype=float,
    )
    p_inv = np.linalg.inv(p)
    gens = []
    for j, i in _PSI_PAIRS:
        basis_matrix = psi_matrix(j, i, t_delaunay)
        ambient = p @ basis_matrix.array @ p_inv
        gens.append(ProjectiveMatrix.from_rows(ambient.tolist(), tol))
    return GeneratorSet(
        _PSI_PAIRS,
        tuple(gens),
        t_delaunay.lambdas,
        (t_delaunay.v1, t_delaunay.v2),
    )


def reference_trace_formulas(
    lambdas: tuple[float, float, float],
) -> tuple[float, float, float]:
    """Tabulated closed forms x + 2 + 1/x at x = l3*l2, l2*l1, l1*l3.

    Each is at least 4, so the classes they describe are never elliptic.
    """
    for lam in lambdas:
        if not (math.isfinite(lam) and lam > 0):
            raise NonPositiveLambda(f"lambda positivity violated: {lam}")
    l1, l2, l3 = lambdas

    def f(x: float) -> float:
        return x + 2.0 + 1.0 / x

    return (f(l3 * l2), f(l2 * l1), f(l1 * l3))


def _matrices_close(a: AffineFlipMatrix, b: AffineFlipMatrix, tol: float) -> bool:
    return all(
        abs(a.rows[r][c] - b.rows[r][c])
        <= tol * max(1.0, abs(a.rows[r][c]), abs(b.rows[r][c]))
        for r in range(2)
        for c in range(2)
    )


def _transposed(m: AffineFlipMatrix) -> AffineFlipMatrix:
    (a, b), (c, d) = m.rows
    return AffineFlipMatrix(((a, c), (b, d)))


def trace_audit(
    t_delaunay: MarkedTriple, tol: Tolerances = DEFAULT_TOL
) -> dict:
    """Side-by-side squared traces per pair: composition matrix, tabulated
    reference matrix, and tabulated closed form, with pairwise gaps flagged.

    The header records that downstream length output is computed from the
    closed forms, since the solver for the inverse problem is built on them.
    """
    _require_delaunay(t_delaunay, tol)
    closed_forms = reference_trace_formulas(t_delaunay.lambdas)
    entries = []
    for idx, (j, i) in enumerate(_PSI_PAIRS):
        comp = psi_matrix(j, i, t_delaunay)
        ref = reference_psi_matrix(j, i, t_delaunay.lambdas)
        comp_ts = normalized_trace_sq(ProjectiveMatrix.from_affine(comp, tol))
        ref_ts = normalized_trace_sq(ProjectiveMatrix.from_affine(ref, tol))
        closed = closed_forms[idx]
        entries.append(
            {
                "pair": [j, i],
                "composition_trace_sq": comp_ts,
                "reference_trace_sq": ref_ts,
                "closed_form": closed,
                "delta_composition_reference": abs(comp_ts - ref_ts),
                "delta_composition_closed_form": abs(comp_ts - closed),
                "delta_reference_closed_form": abs(ref_ts - closed),
                "entrywise_equal": _matrices_close(comp, ref, 1e-12),
                "equal_up_to_transpose": _matrices_close(comp, _transposed(ref), 1e-12)
                or _matrices_close(comp, ref, 1e-12),
                "flagged": max(
                    abs(comp_ts - ref_ts), abs(comp_ts - closed), abs(ref_ts - closed)
                )
                > AUDIT_FLAG_TOL,
            }
        )
    return {"length_source": "closed_form", "pairs": entries}


def delaunay_representatives(
    t: MarkedTriple, max_steps: int = 1000, tol: Tolerances = DEFAULT_TOL
) -> tuple[MarkedTriple, ...]:
    """Normalize, then list the Delaunay coordinates the surface admits: one
    in the unique case, the boundary pair when one angle sum sits at pi."""
    normalized, _ = phi_normalize(t, max_steps, tol)
    status = triple_status(normalized, tol)
    if status.kind is StatusKind.NON_UNIQUE_FOUR_FOLD:
        other = phi_move((status.which_pair % 3) + 1, normalized)
        return (normalized, other)
    return (normalized,)

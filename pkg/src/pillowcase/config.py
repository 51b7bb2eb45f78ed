"""Run configuration and the named tolerance table."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace


@dataclass(frozen=True)
class Tolerances:
    # angle sums compared against pi, radians absolute
    pi_equal: float = 1e-9
    # coordinate round trips, relative
    round_trip: float = 1e-12
    # |signed area| < degeneracy * (longest side)^2 counts as degenerate
    degeneracy: float = 1e-12
    # agreement between the flip-map and chart-level normalizers, componentwise
    cross_oracle: float = 1e-8
    # normalized squared trace band around 4
    parabolic: float = 1e-9
    # coincident inverse solutions, componentwise relative
    dedup: float = 1e-9
    # lower boundary of the inverse-problem target domain
    below_four: float = 1e-12
    # vertex-orbit cone angles compared against pi
    cone_angle: float = 1e-9
    # allowed per-flip increase of the harmonic index (monotonicity slack)
    hrm_monotone: float = 1e-9
    # matched side vectors must be real multiples; relative residual bound
    collinear: float = 1e-9

    def override(self, overrides: dict[str, float]) -> "Tolerances":
        known = {f.name for f in fields(self)}
        for key, value in overrides.items():
            if key not in known:
                raise KeyError(f"unknown tolerance {key!r}; known: {sorted(known)}")
            if not value > 0:
                raise ValueError(f"tolerance {key} must be positive, got {value}")
        return replace(self, **overrides)


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class RunConfig:
    tolerances: Tolerances = field(default_factory=Tolerances)
    max_steps: int = 1000
    seed: int = 0
    output_format: str = "json"

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")
        if self.output_format not in ("json", "csv", "svg"):
            raise ValueError(f"unsupported output format {self.output_format!r}")

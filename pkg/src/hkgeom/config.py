"""Tolerance and run configuration dataclasses."""

from __future__ import annotations

import dataclasses


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used by the floating-point modules.

    iso   : isotropy / orthogonality residual on normalized period vectors
    orth  : membership residual for "lies in the subspace" tests
    pos   : minimum Gram eigenvalue for a 3-plane to count as positive
    lie   : rank decision threshold in Lie bracket closure
    wall  : restriction-norm threshold for wall incidence
    """

    iso: float = 1e-9
    orth: float = 1e-9
    pos: float = 1e-6
    lie: float = 1e-8
    wall: float = 1e-8

    def replace(self, **kwargs) -> "Tolerances":
        return dataclasses.replace(self, **kwargs)


DEFAULT_TOL = Tolerances()


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """CLI-level configuration: tolerances plus run parameters."""

    tol: Tolerances = DEFAULT_TOL
    seed: int | None = None
    workers: int = 1

    def __post_init__(self):
        for name in ("iso", "orth", "pos", "lie", "wall"):
            if getattr(self.tol, name) <= 0:
                raise ValueError(f"tolerance {name} must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

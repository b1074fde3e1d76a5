"""Shared value objects: sample batches, validation reports, grid specs."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class SampleSource(enum.Enum):
    """Which construction generated a batch of draws."""

    INVERSE_CDF = "inverse"
    EXP_TRANSFORM = "thm1"
    T_TRANSFORM = "thm2"
    SKEW_REJECTION = "skew"


@dataclass(frozen=True)
class SampleBatch:
    """A seeded, reproducible vector of draws tagged with its generator."""

    values: np.ndarray
    seed: int
    source: SampleSource
    params_fingerprint: str

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of one oracle comparison; passed iff statistic <= threshold."""

    check_name: str
    statistic: float
    threshold: float
    passed: bool
    n: int
    detail: str = ""

    @classmethod
    def evaluate(cls, check_name: str, statistic: float, threshold: float,
                 n: int, detail: str = "") -> "ValidationReport":
        return cls(check_name=check_name, statistic=float(statistic),
                   threshold=float(threshold),
                   passed=bool(statistic <= threshold), n=int(n), detail=detail)

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        extra = f" ({self.detail})" if self.detail else ""
        return (f"{self.check_name} stat={self.statistic:.6g} "
                f"thr={self.threshold:.6g} {tag}{extra}")


@dataclass(frozen=True)
class GridSpec:
    """Uniform evaluation grid [start, stop] with the given step."""

    start: float
    stop: float
    step: float

    def __post_init__(self):
        if not self.start < self.stop:
            raise ValueError(f"grid requires start < stop, got [{self.start}, {self.stop}]")
        if not self.step > 0.0:
            raise ValueError(f"grid step must be positive, got {self.step}")
        if (self.stop - self.start) / self.step > 1e7:
            raise ValueError("grid would exceed 1e7 points")

    def points(self) -> np.ndarray:
        n = int(round((self.stop - self.start) / self.step)) + 1
        pts = self.start + self.step * np.arange(n)
        return pts[pts <= self.stop + 1e-9 * self.step]

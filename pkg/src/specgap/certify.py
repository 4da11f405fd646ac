"""Finite-scale singular-value-gap diagnostics over word balls.

A profile is evidence, never a proof: the underlying definitions quantify
over the whole group, and a pass at radius L only says the lower envelope
of the statistic grew at the fitted rate on the enumerated ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .reps import RepSpec, iter_ball_images

DISCLAIMER = "finite-scale diagnostic, not a proof"
DEFAULT_SLOPE_THRESHOLD = 0.05
# ties between verdict routes must not flip on rounding noise
MONOTONE_SLACK = 1e-9


def default_radius(dim: int) -> int:
    if dim <= 4:
        return 6
    if dim >= 12:
        return 4
    return 5


def _fit_line(samples: Sequence[tuple[int, float]]) -> tuple[float, float]:
    """Least-squares (intercept, slope) on per-length minima, lengths >= 2."""
    pts = [(l, v) for l, v in samples if l >= 2 and math.isfinite(v)]
    if len(pts) < 2:
        return (0.0, 0.0)
    xs = np.array([p[0] for p in pts], dtype=float)
    ys = np.array([p[1] for p in pts], dtype=float)
    slope, intercept = np.polyfit(xs, ys, 1)
    return (float(intercept), float(slope))


@dataclass(frozen=True)
class GapProfile:
    index: int
    radius: int
    alphabet: tuple[str, ...]
    restricted_to: Optional[tuple[str, ...]]
    samples: tuple[tuple[int, float, float], ...]  # (length, min, max)
    intercept: float
    slope: float
    slope_threshold: float
    monotone: bool
    verdict: str
    words_evaluated: int
    note: str = DISCLAIMER

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "radius": self.radius,
            "alphabet": list(self.alphabet),
            "restricted_to": None if self.restricted_to is None
            else list(self.restricted_to),
            "samples": [[l, lo, hi] for l, lo, hi in self.samples],
            "fit": {"log_C": self.intercept, "slope": self.slope},
            "slope_threshold": self.slope_threshold,
            "monotone": self.monotone,
            "verdict": self.verdict,
            "words_evaluated": self.words_evaluated,
            "note": self.note,
        }

    def to_csv(self) -> str:
        lines = ["length,min_log_gap,max_log_gap"]
        for l, lo, hi in self.samples:
            lines.append(f"{l},{lo!r},{hi!r}")
        return "\n".join(lines) + "\n"


def _profile_sweep(rep: RepSpec, radius: int, stat, subalphabet,
                   max_words: Optional[int]):
    mins: dict[int, float] = {}
    maxs: dict[int, float] = {}
    count = 0
    truncated = False
    for w, m in iter_ball_images(rep, radius, subalphabet):
        if not w.letters:
            continue
        count += 1
        if max_words is not None and count > max_words:
            truncated = True
            break
        v = stat(m)
        length = len(w)
        mins[length] = min(mins.get(length, math.inf), v)
        maxs[length] = max(maxs.get(length, -math.inf), v)
    samples = tuple((l, mins[l], maxs[l]) for l in sorted(mins))
    return samples, count, truncated


def _verdict(samples, slope, slope_threshold, truncated) -> tuple[str, bool]:
    monotone = True
    lows = [(l, lo) for l, lo, _ in samples if l >= 2]
    for (l0, v0), (l1, v1) in zip(lows, lows[1:]):
        if v1 < v0 - MONOTONE_SLACK:
            monotone = False
    if truncated:
        return "inconclusive", monotone
    if slope > slope_threshold and monotone:
        return "pass", monotone
    return "fail", monotone


def gap_profile(rep: RepSpec, i: int, radius: Optional[int] = None,
                slope_threshold: float = DEFAULT_SLOPE_THRESHOLD,
                subalphabet: Optional[Sequence[str]] = None,
                max_words: Optional[int] = 200_000) -> GapProfile:
    """Per-length extrema of log(sigma_i / sigma_{i+1}) over the ball,
    with a least-squares fit of the lower envelope."""
    if not 1 <= i <= rep.dim - 1:
        raise InputError(f"gap index {i} out of range 1..{rep.dim - 1}")
    if radius is None:
        radius = default_radius(rep.dim)

    def stat(m):
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[i] == 0.0:
            return math.inf
        return float(np.log(sv[i - 1] / sv[i]))

    samples, count, truncated = _profile_sweep(rep, radius, stat, subalphabet,
                                               max_words)
    intercept, slope = _fit_line([(l, lo) for l, lo, _ in samples])
    verdict, monotone = _verdict(samples, slope, slope_threshold, truncated)
    return GapProfile(
        index=i, radius=radius,
        alphabet=rep.alphabet.names,
        restricted_to=None if subalphabet is None else tuple(subalphabet),
        samples=samples, intercept=intercept, slope=slope,
        slope_threshold=slope_threshold, monotone=monotone, verdict=verdict,
        words_evaluated=count,
    )


@dataclass(frozen=True)
class QIProfile:
    radius: int
    alphabet: tuple[str, ...]
    restricted_to: Optional[tuple[str, ...]]
    samples: tuple[tuple[int, float, float], ...]
    lower_fit: tuple[float, float]  # (intercept, slope)
    upper_fit: tuple[float, float]
    J: float
    K: float
    slope_threshold: float
    verdict: str
    words_evaluated: int
    note: str = DISCLAIMER

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "alphabet": list(self.alphabet),
            "restricted_to": None if self.restricted_to is None
            else list(self.restricted_to),
            "samples": [[l, lo, hi] for l, lo, hi in self.samples],
            "lower_fit": {"log_C": self.lower_fit[0], "slope": self.lower_fit[1]},
            "upper_fit": {"log_C": self.upper_fit[0], "slope": self.upper_fit[1]},
            "J": self.J,
            "K": self.K,
            "slope_threshold": self.slope_threshold,
            "verdict": self.verdict,
            "words_evaluated": self.words_evaluated,
            "note": self.note,
        }

    def to_csv(self) -> str:
        lines = ["length,min_log_gap,max_log_gap"]
        for l, lo, hi in self.samples:
            lines.append(f"{l},{lo!r},{hi!r}")
        return "\n".join(lines) + "\n"


def qi_profile(rep: RepSpec, radius: Optional[int] = None,
               slope_threshold: float = DEFAULT_SLOPE_THRESHOLD,
               subalphabet: Optional[Sequence[str]] = None,
               max_words: Optional[int] = 200_000) -> QIProfile:
    """Two-sided per-length envelopes of log(sigma_1 / sigma_dim).

    The fitted slopes give finite-scale versions of the two-sided
    exponential comparison constants (J, K); the verdict keys on the lower
    envelope growing, which is the quasi-isometric-embedding content.
    """
    if radius is None:
        radius = default_radius(rep.dim)

    def stat(m):
        sv = np.linalg.svd(m, compute_uv=False)
        if sv[-1] == 0.0:
            return math.inf
        return float(np.log(sv[0] / sv[-1]))

    samples, count, truncated = _profile_sweep(rep, radius, stat, subalphabet,
                                               max_words)
    lower = _fit_line([(l, lo) for l, lo, _ in samples])
    upper = _fit_line([(l, hi) for l, _, hi in samples])
    lo_slope = lower[1]
    up_slope = upper[1]
    J = max(up_slope, 1.0 / lo_slope) if lo_slope > 0 else math.inf
    K = math.exp(max(upper[0], -lower[0], 0.0))
    verdict, _ = _verdict(samples, lo_slope, slope_threshold, truncated)
    return QIProfile(
        radius=radius,
        alphabet=rep.alphabet.names,
        restricted_to=None if subalphabet is None else tuple(subalphabet),
        samples=samples, lower_fit=lower, upper_fit=upper, J=J, K=K,
        slope_threshold=slope_threshold, verdict=verdict,
        words_evaluated=count,
    )

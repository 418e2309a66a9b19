"""Value binning and Gaussian label smoothing for the win-percentage targets.

Win percentages live in [0, 100] at module boundaries; internally everything
is a fraction in [0, 1]. The smoothing assigns each bin the mass of a
Gaussian centered on the target, truncated to [0, 1] and renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtr

DEFAULT_BINS = 128
SIGMA_SCALE = 0.75  # sigma = 0.75 / K


@dataclass(frozen=True)
class BinSpec:
    """K uniform bins over [0, 1]."""

    num_bins: int = DEFAULT_BINS
    edges: np.ndarray = field(init=False, repr=False)
    centers: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.num_bins < 2:
            raise ValueError("need at least 2 bins")
        edges = np.linspace(0.0, 1.0, self.num_bins + 1)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "centers", (edges[:-1] + edges[1:]) / 2.0)

    @property
    def default_sigma(self) -> float:
        return SIGMA_SCALE / self.num_bins


def bin_index(win_fraction: float, spec: BinSpec) -> int:
    """The bin a win fraction falls into; 1.0 is clamped into the top bin."""
    if not 0.0 <= win_fraction <= 1.0:
        raise ValueError(f"win fraction {win_fraction} outside [0, 1]")
    return min(int(win_fraction * spec.num_bins), spec.num_bins - 1)


def hl_gauss_labels(win_fraction: float, spec: BinSpec, sigma: float | None = None) -> np.ndarray:
    """Smoothed label distribution: per-bin mass of a truncated Gaussian."""
    if not 0.0 <= win_fraction <= 1.0:
        raise ValueError(f"win fraction {win_fraction} outside [0, 1]")
    if sigma is None:
        sigma = spec.default_sigma
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    cdf = ndtr((spec.edges - win_fraction) / sigma)
    weights = np.diff(cdf)
    total = cdf[-1] - cdf[0]
    if total <= 0:  # numerically degenerate sigma: fall back to one-hot
        out = np.zeros(spec.num_bins)
        out[bin_index(win_fraction, spec)] = 1.0
        return out
    return weights / total


def one_hot_labels(win_fraction: float, spec: BinSpec) -> np.ndarray:
    out = np.zeros(spec.num_bins)
    out[bin_index(win_fraction, spec)] = 1.0
    return out


def expected_value(dist: np.ndarray, spec: BinSpec) -> float:
    """Mean of a distribution over bins, using bin centers."""
    if dist.shape[-1] != spec.num_bins:
        raise ValueError("distribution size does not match bin count")
    return float(np.dot(dist, spec.centers))


def expected_values(dists: np.ndarray, spec: BinSpec) -> np.ndarray:
    """Batched expected_value over the last axis."""
    if dists.shape[-1] != spec.num_bins:
        raise ValueError("distribution size does not match bin count")
    return dists @ spec.centers

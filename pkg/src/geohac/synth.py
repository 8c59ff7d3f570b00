"""Synthetic point-cloud generators for experiments and verification.

RNG discipline: every generator owns a fresh PCG64 stream seeded with the
given seed and draws in a fixed, documented order, so coordinates are
reproducible for a given (generator, parameters, seed) triple, independent
of anything else the process has sampled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .metrics import EUCLIDEAN, PointSet

# name -> (center count, noise sigma as a fraction of h_max)
SCENARIOS = {
    "tight": (100, 0.03),
    "moderate": (50, 0.10),
    "loose": (20, 0.30),
}

DEFAULT_DOMAIN_KM = 500.0


@dataclass(frozen=True)
class ScenarioSpec:
    """A named density scenario on a square planar domain.

    tight: many compact, well-separated clusters (the friendly case);
    loose: few broad overlapping clusters (the adversarial case);
    moderate sits in between. Center count and noise scale are fixed per
    name; noise is expressed relative to h_max.
    """

    name: str
    n: int
    h_max: float
    domain_km: float = DEFAULT_DOMAIN_KM
    seed: int = 0

    def __post_init__(self):
        if self.name not in SCENARIOS:
            raise ValueError(f"unknown scenario {self.name!r}; expected one of {sorted(SCENARIOS)}")
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.h_max <= 0:
            raise ValueError("h_max must be positive")

    @property
    def centers(self) -> int:
        return SCENARIOS[self.name][0]

    @property
    def sigma(self) -> float:
        return SCENARIOS[self.name][1] * self.h_max


def gaussian_mixture(
    n: int, n_centers: int, sigma: float, domain_km: float, seed: int
) -> PointSet:
    """Planar Gaussian mixture: uniform centers, isotropic noise.

    Draw order: (1) centers uniform on [0, L]^2, (2) one center index per
    point, (3) one (dx, dy) normal offset per point.
    """
    if n < 1 or n_centers < 1 or sigma < 0:
        raise ValueError("need n >= 1, n_centers >= 1, sigma >= 0")
    rng = np.random.Generator(np.random.PCG64(seed))
    centers = rng.uniform(0.0, domain_km, size=(n_centers, 2))
    assignment = rng.integers(0, n_centers, size=n)
    offsets = rng.normal(0.0, sigma, size=(n, 2)) if sigma > 0 else np.zeros((n, 2))
    return PointSet(coords=centers[assignment] + offsets, metric=EUCLIDEAN)


def generate_gaussian_mixture(spec: ScenarioSpec) -> PointSet:
    """Materialise a named scenario."""
    return gaussian_mixture(spec.n, spec.centers, spec.sigma, spec.domain_km, spec.seed)


def constant_k_domain(n: int, k_target: float, h_max: float) -> float:
    """Domain side L giving expected mean degree ~ k_target for uniform points.

    A uniform point sees on average n * pi * h^2 / L^2 neighbours within h,
    so L = sqrt(n * pi * h^2 / k) holds that figure at k_target as n grows.
    """
    return math.sqrt(n * math.pi * h_max * h_max / k_target)


def generate_constant_k(n: int, k_target: float, h_max: float, seed: int = 0) -> PointSet:
    """Uniform points on a domain that grows with sqrt(n).

    This is the realistic geographic scaling regime: bigger datasets cover
    bigger areas while local density (and hence the neighbourhood size)
    stays put.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if k_target <= 0:
        raise ValueError("k_target must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    side = constant_k_domain(n, k_target, h_max)
    return PointSet(coords=rng.uniform(0.0, side, size=(n, 2)), metric=EUCLIDEAN)


def generate_chain(n: int, h_max: float, seed: int = 0) -> PointSet:
    """A single guaranteed-connected component with bounded degree.

    Points lie along a jittered line with consecutive spacing h_max / 4, so
    each point links to a handful of neighbours and the whole set forms one
    component whose edge count is Theta(n). Used for memory-bound checks on
    the MST path at sizes where anything quadratic would be fatal.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.Generator(np.random.PCG64(seed))
    step = h_max / 4.0
    coords = np.empty((n, 2))
    coords[:, 0] = np.arange(n) * step + rng.uniform(-0.05 * step, 0.05 * step, size=n)
    coords[:, 1] = rng.uniform(-0.05 * step, 0.05 * step, size=n)
    return PointSet(coords=coords, metric=EUCLIDEAN)

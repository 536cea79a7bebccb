"""Seedable synthetic cloud generators for the CLI and test fixtures.

All generators draw from numpy's default PCG64 bit generator, so a fixed
seed reproduces the same cloud bit-for-bit on any platform.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import Cloud

KINDS = ("uniform-box", "line-with-noise", "ellipse", "two-segment")


@dataclass(frozen=True)
class CloudGenSpec:
    """What to generate: kind, point count, noise amplitude, RNG seed."""

    kind: str
    n: int
    noise: float = 0.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; "
                             f"expected one of {KINDS}")
        if self.n < 2:
            raise ValueError(f"point count must be >= 2, got {self.n}")
        if not (math.isfinite(self.noise) and self.noise >= 0):
            raise ValueError(f"noise amplitude must be >= 0, got {self.noise}")
        if not (0 <= self.seed < 2 ** 64):
            raise ValueError(f"seed must be a 64-bit unsigned value, got {self.seed}")


def generate_cloud(spec: CloudGenSpec) -> Cloud:
    """Generate a cloud deterministically from a spec."""
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    if spec.kind == "uniform-box":
        xs = rng.random(n)
        ys = rng.random(n)
        return Cloud.from_arrays(xs, ys)
    if spec.kind == "line-with-noise":
        # Slope 0.5 and zero intercept keep y = 0.5*x exact in binary, so a
        # zero-noise draw is exactly collinear.
        xs = 2.0 * rng.random(n)
        ys = 0.5 * xs
        if spec.noise > 0:
            ys = ys + spec.noise * rng.standard_normal(n)
        return Cloud.from_arrays(xs, ys)
    if spec.kind == "ellipse":
        theta = 2.0 * np.pi * rng.random(n)
        xs = 0.5 + 1.0 * np.cos(theta)
        ys = 0.5 + 0.5 * np.sin(theta)
        if spec.noise > 0:
            xs = xs + spec.noise * rng.standard_normal(n)
            ys = ys + spec.noise * rng.standard_normal(n)
        return Cloud.from_arrays(xs, ys)
    # two-segment: a bent polyline, half the points per leg.
    k = n // 2
    t1 = rng.random(k)
    t2 = rng.random(n - k)
    xs = np.concatenate([t1, 1.0 + t2])
    ys = np.concatenate([2.0 * t1, 2.0 - t2])
    if spec.noise > 0:
        xs = xs + spec.noise * rng.standard_normal(n)
        ys = ys + spec.noise * rng.standard_normal(n)
    return Cloud.from_arrays(xs, ys)

"""Shared fixtures and random-input helpers."""
from __future__ import annotations

import numpy as np
import pytest

from cloudinv import Cloud, Matrix2

# The reference coefficient pair used throughout the worked examples.
REF_M = 1.52244
REF_H = 2.46998


def random_cloud(rng: np.random.Generator, n: int = 30,
                 offset: float = 0.0) -> Cloud:
    """A generic non-degenerate cloud with coordinates in a unit box."""
    xs = rng.random(n) + offset
    ys = rng.random(n) + offset
    return Cloud.from_arrays(xs, ys)


def random_invertible(rng: np.random.Generator,
                      min_det: float = 0.1) -> Matrix2:
    """A random 2x2 matrix with determinant bounded away from zero."""
    while True:
        a, b, c, d = rng.uniform(-2.0, 2.0, size=4)
        if abs(a * d - b * c) >= min_det:
            return Matrix2(a, b, c, d)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240824)

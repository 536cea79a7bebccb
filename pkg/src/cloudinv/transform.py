"""2x2 matrix actions on clouds and the induced map of (M, H).

Transforming every cloud point by an invertible matrix (a b; c d) induces a
rational transformation of the linear coefficients.  This module provides
the pointwise cloud action, the closed-form induced maps at both the
raw-sum and the coefficient level, and matrix literal parsing.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .coefficients import Cloud, LinearCoefficients, RawSums
from .errors import DegenerateImage, NonInvertibleMatrix

# Scale-relative singularity threshold for determinants and denominators.
SINGULARITY_RTOL = 1e-12


@dataclass(frozen=True)
class Matrix2:
    """A real 2x2 matrix (a b; c d), row-major.

    The default constructor rejects singular matrices; use
    :meth:`unchecked` to carry possibly-singular matrices (one-parameter
    families can pass through singular points; operations that need
    invertibility re-check it).
    """

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValueError(f"matrix entry {name} must be finite, got {v}")
        if not self.is_invertible():
            raise NonInvertibleMatrix(
                f"matrix ({self.a}, {self.b}; {self.c}, {self.d}) has "
                f"determinant {self.det} within tolerance of zero"
            )

    @classmethod
    def unchecked(cls, a: float, b: float, c: float, d: float) -> "Matrix2":
        """Construct without the invertibility check (finiteness still holds)."""
        m = object.__new__(cls)
        for name, v in (("a", a), ("b", b), ("c", c), ("d", d)):
            v = float(v)
            if not math.isfinite(v):
                raise ValueError(f"matrix entry {name} must be finite, got {v}")
            object.__setattr__(m, name, v)
        return m

    @classmethod
    def identity(cls) -> "Matrix2":
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def diagonal(cls, d1: float, d2: float) -> "Matrix2":
        return cls(d1, 0.0, 0.0, d2)

    @classmethod
    def rotation(cls, angle: float) -> "Matrix2":
        c, s = math.cos(angle), math.sin(angle)
        return cls(c, s, -s, c)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def max_abs_entry(self) -> float:
        return max(abs(self.a), abs(self.b), abs(self.c), abs(self.d))

    def is_invertible(self) -> bool:
        scale = self.max_abs_entry() ** 2
        return abs(self.det) > SINGULARITY_RTOL * max(1.0, scale)

    def scaled(self, kappa: float) -> "Matrix2":
        """The matrix kappa * self (kappa must be nonzero)."""
        if kappa == 0.0:
            raise ValueError("kappa must be nonzero")
        return Matrix2(kappa * self.a, kappa * self.b, kappa * self.c, kappa * self.d)

    def compose(self, other: "Matrix2") -> "Matrix2":
        """Matrix product self @ other (apply ``other`` first)."""
        return Matrix2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __matmul__(self, other: "Matrix2") -> "Matrix2":
        return self.compose(other)

    def entries(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)


def parse_matrix(literal: str) -> Matrix2:
    """Parse a matrix from `a,b;c,d` or the JSON form `[[a,b],[c,d]]`."""
    text = literal.strip()
    if text.startswith("["):
        rows = json.loads(text)
        if (not isinstance(rows, list) or len(rows) != 2
                or any(not isinstance(r, list) or len(r) != 2 for r in rows)):
            raise ValueError(f"expected [[a,b],[c,d]], got {literal!r}")
        return Matrix2(float(rows[0][0]), float(rows[0][1]),
                       float(rows[1][0]), float(rows[1][1]))
    rows = text.split(";")
    if len(rows) != 2:
        raise ValueError(f"expected 'a,b;c,d', got {literal!r}")
    values = []
    for row in rows:
        cells = row.split(",")
        if len(cells) != 2:
            raise ValueError(f"expected 'a,b;c,d', got {literal!r}")
        values.extend(float(c) for c in cells)
    return Matrix2(*values)


def _require_invertible(m: Matrix2) -> None:
    if not m.is_invertible():
        raise NonInvertibleMatrix(
            f"matrix ({m.a}, {m.b}; {m.c}, {m.d}) is singular within tolerance"
        )


def apply_to_cloud(m: Matrix2, cloud: Cloud) -> Cloud:
    """Pointwise image of a cloud under an invertible matrix.

    Each point maps to (a*x + b*y, c*x + d*y); length and order are preserved.
    """
    _require_invertible(m)
    return Cloud.from_arrays(m.a * cloud.xs + m.b * cloud.ys,
                             m.c * cloud.xs + m.d * cloud.ys)


def induced_raw(m: Matrix2, rs: RawSums) -> RawSums:
    """Closed-form image of the raw sums under an invertible matrix."""
    _require_invertible(m)
    a, b, c, d = m.a, m.b, m.c, m.d
    mn_hat = a * c * rs.d + (a * d + b * c) * rs.mn + b * d * rs.hn
    hn_hat = c * c * rs.d + d * d * rs.hn + 2.0 * c * d * rs.mn
    d_hat = a * a * rs.d + b * b * rs.hn + 2.0 * a * b * rs.mn
    return RawSums(mn_hat, hn_hat, d_hat)


def induced_coefficients(m: Matrix2, lc: LinearCoefficients) -> LinearCoefficients:
    """Closed-form image of (M, H) under an invertible matrix.

    Raises:
        DegenerateImage: the common denominator 2abM + b^2 H + a^2 vanishes
            within tolerance; the transformed cloud would have all x equal.
    """
    _require_invertible(m)
    a, b, c, d = m.a, m.b, m.c, m.d
    den = 2.0 * a * b * lc.m + b * b * lc.h + a * a
    scale = abs(2.0 * a * b * lc.m) + abs(b * b * lc.h) + a * a
    if abs(den) <= SINGULARITY_RTOL * max(1.0, scale):
        raise DegenerateImage(
            f"induced-map denominator {den} is zero within tolerance; the "
            "image cloud has no x-spread"
        )
    m_hat = ((a * d + b * c) * lc.m + b * d * lc.h + a * c) / den
    h_hat = (2.0 * c * d * lc.m + d * d * lc.h + c * c) / den
    return LinearCoefficients(m_hat, h_hat)

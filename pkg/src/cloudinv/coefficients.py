"""Least-squares linear coefficients of planar point clouds.

A cloud is summarized by two numbers: the slope M of its least-squares
straight line and a companion ratio H of centered second moments.  Both are
quotients of the centered sums (M_n, H_n, D), which this module computes in
a cancellation-safe way (coordinates are centered before the quadratic sums
are formed).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable, Iterator, Sequence, Union

import numpy as np

from .errors import DegenerateCloud

# Scale-relative threshold below which the x-spread sum D counts as zero.
DEGENERACY_RTOL = 1e-12

# Default tolerance for the collinearity test.
COLLINEARITY_RTOL = 1e-9


@dataclass(frozen=True)
class Point:
    """A planar point with finite coordinates."""

    x: float
    y: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")


PointLike = Union[Point, Sequence[float]]


class Cloud:
    """An ordered sequence of at least two planar points.

    Point order is preserved, but every derived quantity is a symmetric sum
    and therefore order-independent.  Coordinates are stored as read-only
    float64 arrays.
    """

    __slots__ = ("xs", "ys")

    def __init__(self, points: Iterable[PointLike]):
        pts = [(p.x, p.y) if isinstance(p, Point) else (float(p[0]), float(p[1]))
               for p in points]
        if len(pts) < 2:
            raise ValueError(f"a cloud needs at least 2 points, got {len(pts)}")
        xs = np.array([p[0] for p in pts], dtype=np.float64)
        ys = np.array([p[1] for p in pts], dtype=np.float64)
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("cloud coordinates must all be finite")
        xs.flags.writeable = False
        ys.flags.writeable = False
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_arrays(cls, xs: np.ndarray, ys: np.ndarray) -> "Cloud":
        """Build a cloud from equal-length coordinate arrays."""
        xs = np.asarray(xs, dtype=np.float64)
        ys = np.asarray(ys, dtype=np.float64)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise ValueError("coordinate arrays must be 1-D and equal length")
        cloud = object.__new__(cls)
        if xs.size < 2:
            raise ValueError(f"a cloud needs at least 2 points, got {xs.size}")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise ValueError("cloud coordinates must all be finite")
        xs = xs.copy()
        ys = ys.copy()
        xs.flags.writeable = False
        ys.flags.writeable = False
        object.__setattr__(cloud, "xs", xs)
        object.__setattr__(cloud, "ys", ys)
        return cloud

    def __len__(self) -> int:
        return int(self.xs.size)

    def __iter__(self) -> Iterator[Point]:
        for x, y in zip(self.xs, self.ys):
            yield Point(float(x), float(y))

    @property
    def points(self) -> tuple[Point, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"Cloud(n={len(self)})"


@dataclass(frozen=True)
class RawSums:
    """The centered second-moment sums (M_n, H_n, D) of a cloud.

    For any real cloud: d >= 0, hn >= 0 and hn*d >= mn**2 (Cauchy-Schwarz),
    with equality exactly on collinear clouds.
    """

    mn: float
    hn: float
    d: float

    def __post_init__(self) -> None:
        for name in ("mn", "hn", "d"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValueError(f"raw sum {name} must be finite, got {v}")


@dataclass(frozen=True)
class LinearCoefficients:
    """The pair (M, H) identifying a cloud: slope and constant term.

    Satisfies h >= m**2 when produced from a valid cloud, with equality
    exactly on collinear clouds.
    """

    m: float
    h: float

    def __post_init__(self) -> None:
        for name in ("m", "h"):
            v = float(getattr(self, name))
            object.__setattr__(self, name, v)
            if not math.isfinite(v):
                raise ValueError(f"coefficient {name} must be finite, got {v}")


def raw_sums(cloud: Cloud) -> RawSums:
    """Compute the centered sums (M_n, H_n, D) of a cloud.

    Single pass over centered coordinates; equal to N*sum(xy) - sum(x)*sum(y)
    etc. in exact arithmetic but without the catastrophic cancellation the raw
    formulas suffer on offset clouds.
    """
    n = len(cloud)
    xm = cloud.xs - cloud.xs.mean()
    ym = cloud.ys - cloud.ys.mean()
    mn = n * float(np.dot(xm, ym))
    hn = n * float(np.dot(ym, ym))
    d = n * float(np.dot(xm, xm))
    return RawSums(mn, hn, d)


def _d_scale(cloud: Cloud) -> float:
    n = len(cloud)
    return max(1.0, n * float(np.dot(cloud.xs, cloud.xs)))


def linear_coefficients(cloud: Cloud) -> LinearCoefficients:
    """Compute (M, H) = (M_n/D, H_n/D) for a cloud.

    Raises:
        DegenerateCloud: if D is zero within ``DEGENERACY_RTOL`` relative to
            the cloud's coordinate scale (all x effectively equal).
    """
    rs = raw_sums(cloud)
    if abs(rs.d) <= DEGENERACY_RTOL * _d_scale(cloud):
        raise DegenerateCloud(
            f"x-spread sum D={rs.d} is zero within tolerance; "
            "least-squares line is vertical"
        )
    return LinearCoefficients(rs.mn / rs.d, rs.hn / rs.d)


def is_collinear(cloud: Cloud, tol: float = COLLINEARITY_RTOL) -> bool:
    """True iff the cloud lies on a straight line (any orientation).

    Tests the Cauchy-Schwarz gap hn*d - mn**2 against tol*max(1, hn*d);
    consistent with h == m**2 whenever d > 0, and also detects vertical
    lines, where d == 0.
    """
    if tol < 0:
        raise ValueError(f"tol must be nonnegative, got {tol}")
    rs = raw_sums(cloud)
    gap = rs.hn * rs.d - rs.mn * rs.mn
    return gap <= tol * max(1.0, rs.hn * rs.d)


def read_cloud_csv(source: Union[str, IO[str]]) -> Cloud:
    """Read a cloud from CSV: one `x,y` pair per line.

    An optional header line `x,y` is skipped; blank lines are ignored;
    LF and CRLF line endings are both accepted.
    """
    if isinstance(source, str):
        with open(source, "r", encoding="utf-8", newline="") as fh:
            return read_cloud_csv(fh)
    pts: list[tuple[float, float]] = []
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip()
        if not line:
            continue
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != 2:
            raise ValueError(f"line {lineno}: expected 'x,y', got {line!r}")
        if lineno == 1 and cells[0].lower() == "x" and cells[1].lower() == "y":
            continue
        try:
            pts.append((float(cells[0]), float(cells[1])))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad number in {line!r}") from exc
    return Cloud(pts)


def write_cloud_csv(cloud: Cloud, dest: Union[str, IO[str]], header: bool = True) -> None:
    """Write a cloud in the CSV format accepted by :func:`read_cloud_csv`."""
    if isinstance(dest, str):
        with open(dest, "w", encoding="utf-8", newline="") as fh:
            write_cloud_csv(cloud, fh, header=header)
        return
    if header:
        dest.write("x,y\n")
    for x, y in zip(cloud.xs, cloud.ys):
        dest.write(f"{float(x)!r},{float(y)!r}\n")

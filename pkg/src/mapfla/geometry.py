"""Planar primitives shared by the roadmap model, the solver and the validator.

Points are plain ``(x, y)`` tuples.  All threshold comparisons elsewhere in the
package use the conservative tolerance ``EPS``: a value within ``EPS`` of a
clearance threshold counts as violating it, so a plan is never accepted on
floating-point luck.
"""

from __future__ import annotations

import math

Point2D = tuple[float, float]

# Conservative comparison tolerance for geometric threshold tests.
EPS = 1e-9


def dist(p: Point2D, q: Point2D) -> float:
    """Euclidean distance between two points."""
    return math.hypot(p[0] - q[0], p[1] - q[1])


def segdist(p: Point2D, a: Point2D, b: Point2D) -> float:
    """Distance from point ``p`` to the closed segment ``[a, b]``.

    Uses the clamped orthogonal projection; degenerates to ``dist(p, a)``
    when ``a == b``.  Endpoints are ordered internally so the result is
    bit-identical under segment orientation flips.
    """
    if b < a:
        a, b = b, a
    abx = b[0] - a[0]
    aby = b[1] - a[1]
    norm_sq = abx * abx + aby * aby
    if norm_sq <= 0.0:
        return dist(p, a)
    t = ((p[0] - a[0]) * abx + (p[1] - a[1]) * aby) / norm_sq
    t = max(0.0, min(1.0, t))
    return math.hypot(p[0] - (a[0] + t * abx), p[1] - (a[1] + t * aby))


def clearance_threshold(radius: float) -> float:
    """Minimum center-to-segment distance a stationary agent must keep.

    Two disks of radius ``radius`` stay disjoint while one slides along a
    segment iff the other's center is strictly farther than ``2 * radius``
    from the segment; ``EPS`` widens the blocked band.
    """
    return 2.0 * radius + EPS

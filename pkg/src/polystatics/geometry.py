"""Small polygon/vector helpers used across the topology and dual modules."""

from __future__ import annotations

import numpy as np


def newell_normal(points: np.ndarray) -> np.ndarray:
    """Area-weighted normal of a closed vertex loop (Newell's method).

    The magnitude equals twice the enclosed area; the direction follows the
    right-hand rule with respect to the loop order.  Robust for loops that
    are only approximately planar.
    """
    pts = np.asarray(points, dtype=float)
    nxt = np.roll(pts, -1, axis=0)
    n = np.empty(3)
    n[0] = np.sum((pts[:, 1] - nxt[:, 1]) * (pts[:, 2] + nxt[:, 2]))
    n[1] = np.sum((pts[:, 2] - nxt[:, 2]) * (pts[:, 0] + nxt[:, 0]))
    n[2] = np.sum((pts[:, 0] - nxt[:, 0]) * (pts[:, 1] + nxt[:, 1]))
    return n


def canonical_unit_normal(n: np.ndarray, tol: float = 1e-9) -> tuple[np.ndarray, int]:
    """Normalize and fix the sign so the first non-negligible component is positive.

    Returns ``(unit_normal, sign)`` where ``sign`` is +1 if the input direction
    was kept, -1 if it was flipped.  Raises ``ValueError`` on a zero vector.
    """
    norm = float(np.linalg.norm(n))
    if norm == 0.0 or not np.isfinite(norm):
        raise ValueError("degenerate loop: zero normal")
    unit = n / norm
    sign = 1
    for comp in unit:
        if abs(comp) > tol:
            if comp < 0:
                sign = -1
            break
    return unit * sign, sign


def plane_deviation(points: np.ndarray, normal: np.ndarray) -> float:
    """Max distance of the points from the plane through their centroid."""
    pts = np.asarray(points, dtype=float)
    centered = pts - pts.mean(axis=0)
    return float(np.abs(centered @ normal).max())


def angle_about_axis(axis: np.ndarray, ref: np.ndarray, vec: np.ndarray) -> float:
    """Signed angle of ``vec`` relative to ``ref``, rotating about ``axis``.

    Both ``ref`` and ``vec`` are projected onto the plane perpendicular to
    ``axis`` first.  Result lies in (-pi, pi].
    """
    a = axis / np.linalg.norm(axis)
    r = ref - (ref @ a) * a
    v = vec - (vec @ a) * a
    return float(np.arctan2(np.cross(r, v) @ a, r @ v))

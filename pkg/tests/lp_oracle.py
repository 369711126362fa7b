"""Brute-force LP oracle: enumerate every basic point, keep the feasible
ones, take the minimum. Independent of the simplex implementation — the
only numpy entry points used are batched solve/det on stacked subsystems.

Unboundedness is detected by closing the feasible set with a far wall
(sum of variables <= WALL): if the best objective is attained only on the
wall and strictly beats every off-wall vertex, the true problem recedes
along an improving ray.
"""

from __future__ import annotations

import itertools

import numpy as np

WALL = 1e7
FEAS_TOL = 1e-7


def enumerate_vertices(A, relations, b, n):
    """All feasible basic points of the walled system.

    Constraint pool: the m rows, the n axis planes x_j = 0, and the wall.
    Every vertex in n dimensions is the intersection of n constraint
    boundaries, so check all C(pool, n) square subsystems. Returns
    (points, on_wall flags) as arrays.
    """
    A = np.asarray(A, float).reshape(len(b), n)
    b = np.asarray(b, float)
    m = len(b)
    pool_A = np.vstack([A, np.eye(n), np.ones((1, n))])
    pool_b = np.concatenate([b, np.zeros(n), [WALL]])
    wall_index = m + n

    combos = np.array(list(itertools.combinations(range(len(pool_b)), n)))
    mats = pool_A[combos]
    rhss = pool_b[combos]
    dets = np.linalg.det(mats)
    ok = np.abs(dets) > 1e-9
    pts = np.full((len(combos), n), np.nan)
    if ok.any():
        pts[ok] = np.linalg.solve(mats[ok], rhss[ok][..., None])[..., 0]

    finite = np.isfinite(pts).all(axis=1)
    pts_safe = np.where(finite[:, None], pts, 0.0)
    feas = finite & (pts_safe >= -FEAS_TOL).all(axis=1)
    feas &= pts_safe.sum(axis=1) <= WALL * (1.0 + FEAS_TOL)
    if m:
        resid = pts_safe @ A.T - b
        span = 1.0 + np.abs(b) + np.abs(A).sum(axis=1) * np.maximum(
            1.0, np.abs(pts_safe).max(axis=1)
        )[:, None]
        tol = FEAS_TOL * span
        for i, rel in enumerate(relations):
            if rel == "=":
                feas &= np.abs(resid[:, i]) <= tol[:, i]
            elif rel == ">=":
                feas &= resid[:, i] >= -tol[:, i]
            else:
                feas &= resid[:, i] <= tol[:, i]

    points = pts[feas]
    uses_wall = (combos == wall_index).any(axis=1)[feas]
    at_wall = np.abs(points.sum(axis=1) - WALL) <= FEAS_TOL * WALL
    return points, uses_wall & at_wall


def brute_force_min(c, A, relations, b):
    """Returns (status, objective, argmin) with status in
    {"optimal", "infeasible", "unbounded"}."""
    c = np.asarray(c, float)
    points, on_wall = enumerate_vertices(A, relations, b, c.size)
    if len(points) == 0:
        return "infeasible", None, None
    objs = points @ c
    off = objs[~on_wall]
    wall = objs[on_wall]
    if off.size == 0:
        # Every vertex leans on the wall: the unwalled region recedes.
        return "unbounded", None, None
    best_off = float(off.min())
    if wall.size and float(wall.min()) < best_off - 1e-6 * (1.0 + abs(best_off)):
        return "unbounded", None, None
    masked = np.where(on_wall, np.inf, objs)
    k = int(np.argmin(masked))
    return "optimal", float(objs[k]), points[k]

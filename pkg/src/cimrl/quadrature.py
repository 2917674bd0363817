"""Gauss-Legendre rules on flat segments with near-field subdivision.

Source segments that look large from a collocation point (angular size
above ``max_angle``) are bisected recursively until every piece passes or
``max_levels`` is reached.  The angular size is ``2*atan(L/(2*D))`` with
``D`` the closest distance from the point to the piece, so collinear
neighbours, whose subtended angle is zero, are still refined.

Self-segment integrals of log-singular kernels use a graded rule on
``(0, h)``: panels ``[h/2**(i+1), h/2**i]`` plus a final ``[0, h/2**levels]``.
"""

from dataclasses import dataclass
from functools import lru_cache
import math

import numpy as np

MAX_ANGLE = math.radians(15.0)


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights on (0, 1)."""
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=None)
def graded_rule(levels=24, n=8):
    """Nodes and weights on (0, 1) graded geometrically toward 0."""
    x, w = gauss_legendre(n)
    nodes, weights = [], []
    for i in range(levels):
        a, b = 2.0 ** -(i + 1), 2.0 ** -i
        nodes.append(a + (b - a) * x)
        weights.append((b - a) * w)
    b = 2.0 ** -levels
    nodes.append(b * x)
    weights.append(b * w)
    return np.concatenate(nodes), np.concatenate(weights)


def point_segment_distance(p, a, b):
    """Closest distance from points ``p`` to segments ``a``-``b`` (broadcasting)."""
    ab = b - a
    ap = p - a
    denom = np.sum(ab * ab, axis=-1)
    t = np.clip(np.sum(ap * ab, axis=-1) / denom, 0.0, 1.0)
    closest = a + t[..., None] * ab
    diff = p - closest
    return np.hypot(diff[..., 0], diff[..., 1])


def angular_size(p, a, b):
    length = np.hypot((b - a)[..., 0], (b - a)[..., 1])
    dist = point_segment_distance(p, a, b)
    with np.errstate(divide="ignore"):
        return 2.0 * np.arctan2(length, 2.0 * dist)


@dataclass(frozen=True)
class QuadraturePlan:
    """Quadrature for every (target, source segment) pair of a discretization.

    ``far_nodes``/``far_weights`` hold the plain rule for each source segment
    (shape ``(N, q, 2)`` and ``(N, q)``) and apply wherever ``far_mask`` is
    true.  The remaining off-self pairs are refined; their nodes are listed
    flat in ``near_rows``, ``near_cols``, ``near_nodes``, ``near_weights``.
    Weights include the arc-length Jacobian.
    """

    far_mask: np.ndarray
    far_nodes: np.ndarray
    far_weights: np.ndarray
    near_rows: np.ndarray
    near_cols: np.ndarray
    near_nodes: np.ndarray
    near_weights: np.ndarray


def _refine(p, a, b, x, w, level, max_levels, max_angle, out_nodes, out_weights):
    length = math.hypot(b[0] - a[0], b[1] - a[1])
    dist = float(point_segment_distance(p, a, b))
    if level >= max_levels or 2.0 * math.atan2(length, 2.0 * dist) < max_angle:
        out_nodes.append(a + x[:, None] * (b - a))
        out_weights.append(w * length)
        return
    mid = 0.5 * (a + b)
    _refine(p, a, mid, x, w, level + 1, max_levels, max_angle, out_nodes, out_weights)
    _refine(p, mid, b, x, w, level + 1, max_levels, max_angle, out_nodes, out_weights)


def build_plan(targets, starts, ends, q=5, max_levels=6, max_angle=MAX_ANGLE,
               self_pairs=True):
    """Plan the integrals of a kernel over ``starts[n]``-``ends[n]`` at ``targets[m]``.

    With ``self_pairs`` the diagonal ``m == n`` is excluded from both the far
    and the near parts; the caller supplies it analytically.
    """
    targets = np.asarray(targets, dtype=float)
    starts = np.asarray(starts, dtype=float)
    ends = np.asarray(ends, dtype=float)
    x, w = gauss_legendre(q)
    lengths = np.hypot(*(ends - starts).T)
    far_nodes = starts[:, None, :] + x[None, :, None] * (ends - starts)[:, None, :]
    far_weights = w[None, :] * lengths[:, None]

    size = angular_size(targets[:, None, :], starts[None, :, :], ends[None, :, :])
    far_mask = size < max_angle
    if self_pairs:
        np.fill_diagonal(far_mask, False)
    near = np.argwhere(~far_mask)
    if self_pairs:
        near = near[near[:, 0] != near[:, 1]]

    rows, cols, nodes, weights = [], [], [], []
    for m, n in near:
        out_n, out_w = [], []
        _refine(targets[m], starts[n], ends[n], x, w, 0, max_levels, max_angle, out_n, out_w)
        pts = np.vstack(out_n)
        rows.append(np.full(len(pts), m))
        cols.append(np.full(len(pts), n))
        nodes.append(pts)
        weights.append(np.concatenate(out_w))
    if rows:
        rows = np.concatenate(rows)
        cols = np.concatenate(cols)
        nodes = np.vstack(nodes)
        weights = np.concatenate(weights)
    else:
        rows = cols = np.zeros(0, dtype=int)
        nodes = np.zeros((0, 2))
        weights = np.zeros(0)
    return QuadraturePlan(far_mask, far_nodes, far_weights, rows, cols, nodes, weights)


def integrate(plan, targets, kernel):
    """Assemble ``A[m, n] = sum over nodes of kernel(d, n) * weight``.

    ``kernel(d_vec, cols)`` receives displacement vectors ``r' - r_m`` with
    shape ``(..., 2)`` and the source-segment index array broadcast to the
    same leading shape; it returns complex or real values.
    """
    targets = np.asarray(targets, dtype=float)
    out = np.zeros(plan.far_mask.shape, dtype=complex)
    rows, cols = np.nonzero(plan.far_mask)
    if len(rows):
        d_far = plan.far_nodes[cols] - targets[rows][:, None, :]
        vals = kernel(d_far, np.broadcast_to(cols[:, None], d_far.shape[:-1]))
        out[rows, cols] = np.sum(vals * plan.far_weights[cols], axis=1)
    if len(plan.near_rows):
        d_near = plan.near_nodes - targets[plan.near_rows]
        nv = kernel(d_near, plan.near_cols) * plan.near_weights
        np.add.at(out, (plan.near_rows, plan.near_cols), nv)
    return out

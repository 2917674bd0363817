"""Closed conductor contours built from flat segments.

A :class:`Contour` stores its segments as parallel numpy arrays so that the
operator assembly can vectorize over them; :attr:`Contour.segments` gives an
object view for inspection.  Every generator returns a counterclockwise,
simple, closed contour whose collocation points are the chord midpoints.
"""

from dataclasses import dataclass, field
import math

import numpy as np
from shapely.geometry import LinearRing, Polygon

from .errors import GeometryOverlap, InvalidGeometry


@dataclass(frozen=True)
class Segment:
    start: np.ndarray
    end: np.ndarray
    midpoint: np.ndarray
    width: float
    outward_normal: np.ndarray
    tangent: np.ndarray


@dataclass(frozen=True, eq=False)
class Contour:
    """Counterclockwise chain of flat segments; ``vertices[i]`` starts segment i."""

    vertices: np.ndarray
    label: str = ""
    starts: np.ndarray = field(init=False, repr=False)
    ends: np.ndarray = field(init=False, repr=False)
    midpoints: np.ndarray = field(init=False, repr=False)
    widths: np.ndarray = field(init=False, repr=False)
    tangents: np.ndarray = field(init=False, repr=False)
    normals: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2:
            raise InvalidGeometry("vertices must be an (N, 2) array")
        if len(v) < 3:
            raise InvalidGeometry("a contour needs at least 3 segments")
        starts = v
        ends = np.roll(v, -1, axis=0)
        chord = ends - starts
        widths = np.hypot(chord[:, 0], chord[:, 1])
        if np.any(widths <= 0.0):
            raise InvalidGeometry("repeated vertices (zero-width segment)")
        tangents = chord / widths[:, None]
        # outward normal of a CCW contour: tangent rotated by -90 degrees
        normals = np.column_stack([tangents[:, 1], -tangents[:, 0]])
        for name, value in [("vertices", v), ("starts", starts), ("ends", ends),
                            ("midpoints", 0.5 * (starts + ends)), ("widths", widths),
                            ("tangents", tangents), ("normals", normals)]:
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        if self.signed_area <= 0.0:
            raise InvalidGeometry("contour must be counterclockwise")
        if not LinearRing(v).is_simple:
            raise InvalidGeometry("contour self-intersects")

    def __len__(self):
        return len(self.widths)

    @property
    def n_segments(self):
        return len(self.widths)

    @property
    def perimeter(self):
        return float(self.widths.sum())

    @property
    def signed_area(self):
        x, y = self.vertices[:, 0], self.vertices[:, 1]
        return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))

    @property
    def area(self):
        return abs(self.signed_area)

    @property
    def segments(self):
        return [
            Segment(self.starts[i], self.ends[i], self.midpoints[i], float(self.widths[i]),
                    self.normals[i], self.tangents[i])
            for i in range(len(self))
        ]

    def closure_residual(self):
        """Largest gap between a segment end and the next segment start."""
        gaps = self.ends - np.roll(self.starts, -1, axis=0)
        return float(np.max(np.hypot(gaps[:, 0], gaps[:, 1])))

    def polygon(self):
        return Polygon(self.vertices)

    def transformed(self, angle=0.0, shift=(0.0, 0.0), about=(0.0, 0.0)):
        """Rigidly rotate by ``angle`` about ``about`` and then translate."""
        c, s = math.cos(angle), math.sin(angle)
        rot = np.array([[c, -s], [s, c]])
        about = np.asarray(about, dtype=float)
        v = (self.vertices - about) @ rot.T + about + np.asarray(shift, dtype=float)
        return Contour(v, self.label)


def _ccw(vertices):
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    area = 0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y)
    return v if area > 0 else v[::-1].copy()


def make_circle(center, radius, n_segments, label=""):
    """Inscribed regular polygon with ``n_segments`` chords."""
    if not radius > 0:
        raise InvalidGeometry(f"circle radius must be positive, got {radius}")
    if n_segments < 3:
        raise InvalidGeometry("a circle needs at least 3 segments")
    theta = 2.0 * np.pi * np.arange(n_segments) / n_segments
    cx, cy = center
    v = np.column_stack([cx + radius * np.cos(theta), cy + radius * np.sin(theta)])
    return Contour(v, label)


def _split_counts(lengths, total):
    # largest-remainder apportionment, at least one segment per edge
    if total < len(lengths):
        raise InvalidGeometry(f"{total} segments cannot cover {len(lengths)} polygon edges")
    share = lengths / lengths.sum() * total
    counts = np.maximum(np.floor(share).astype(int), 1)
    while counts.sum() < total:
        counts[np.argmax(share - counts)] += 1
    while counts.sum() > total:
        idx = np.where(counts > 1)[0]
        counts[idx[np.argmin((share - counts)[idx])]] -= 1
    return counts


def make_polygon(vertices, target_width=None, n_segments=None, label=""):
    """Subdivide each polygon edge into equal segments.

    Give either ``target_width`` (every segment no wider than it) or a total
    ``n_segments`` spread over the edges in proportion to their length.
    Clockwise input is reversed.
    """
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or len(v) < 3:
        raise InvalidGeometry("a polygon needs at least 3 vertices")
    if len(np.unique(v, axis=0)) != len(v):
        raise InvalidGeometry("repeated vertices")
    if not LinearRing(v).is_simple:
        raise InvalidGeometry("polygon self-intersects")
    v = _ccw(v)
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    if n_segments is not None:
        counts = _split_counts(lengths, int(n_segments))
    else:
        if target_width is None or not target_width > 0:
            raise InvalidGeometry("target_width must be positive")
        counts = np.maximum(np.ceil(lengths / target_width - 1e-9).astype(int), 1)
    pts = []
    for p, e, n in zip(v, edges, counts):
        t = np.arange(n)[:, None] / n
        pts.append(p + t * e)
    return Contour(np.vstack(pts), label)


def make_rect(center, width, height, rotation=0.0, target_width=None, n_segments=None,
              label=""):
    """Axis-aligned rectangle rotated by ``rotation`` radians about its center."""
    if not (width > 0 and height > 0):
        raise InvalidGeometry("rectangle sides must be positive")
    hw, hh = width / 2, height / 2
    local = np.array([[-hw, -hh], [hw, -hh], [hw, hh], [-hw, hh]])
    c, s = math.cos(rotation), math.sin(rotation)
    v = local @ np.array([[c, -s], [s, c]]).T + np.asarray(center, dtype=float)
    return make_polygon(v, target_width=target_width, n_segments=n_segments, label=label)


def make_arc_strip(center, mean_radius, thickness, start_angle, end_angle, n_arc,
                   n_cap=None, label=""):
    """Annular sector: two concentric arcs joined by radial end caps.

    Each arc is split into ``n_arc`` chords; each cap into ``n_cap``
    segments (default: enough to keep cap segments no wider than the
    outer arc chords).
    """
    span = end_angle - start_angle
    if not thickness > 0:
        raise InvalidGeometry("strip thickness must be positive")
    if not 0 < span < 2 * np.pi:
        raise InvalidGeometry("arc span must lie in (0, 2*pi)")
    r_in = mean_radius - thickness / 2
    r_out = mean_radius + thickness / 2
    if not r_in > 0:
        raise InvalidGeometry("inner radius of the arc strip must be positive")
    if n_arc < 1:
        raise InvalidGeometry("n_arc must be at least 1")
    if n_cap is None:
        chord = 2 * r_out * math.sin(span / (2 * n_arc))
        n_cap = max(1, math.ceil(thickness / chord - 1e-9))
    cx, cy = center
    th = start_angle + span * np.arange(n_arc + 1) / n_arc
    outer = np.column_stack([cx + r_out * np.cos(th), cy + r_out * np.sin(th)])
    inner = np.column_stack([cx + r_in * np.cos(th[::-1]), cy + r_in * np.sin(th[::-1])])
    radii_down = r_out - thickness * np.arange(1, n_cap) / n_cap
    cap_end = np.column_stack([cx + radii_down * math.cos(end_angle),
                               cy + radii_down * math.sin(end_angle)])
    radii_up = r_in + thickness * np.arange(1, n_cap) / n_cap
    cap_start = np.column_stack([cx + radii_up * math.cos(start_angle),
                                 cy + radii_up * math.sin(start_angle)])
    v = np.vstack([outer, cap_end, inner, cap_start])
    return Contour(v, label)


def convex_hull(points):
    """Andrew's monotone chain; returns hull vertices counterclockwise."""
    pts = sorted(set(map(tuple, np.asarray(points, dtype=float))))
    if len(pts) < 3:
        return np.array(pts)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return np.array(lower[:-1] + upper[:-1])


def min_transversal_dimension(contour):
    """Minimum caliper width of the contour's convex hull.

    The minimum is attained with one caliper flush against a hull edge, so
    only hull-edge directions need to be checked.
    """
    hull = convex_hull(contour.vertices)
    edges = np.roll(hull, -1, axis=0) - hull
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    normals = np.column_stack([edges[:, 1], -edges[:, 0]]) / lengths[:, None]
    # distance of every hull vertex from every edge line
    dist = np.abs(np.einsum("ekd,ed->ek", hull[None, :, :] - hull[:, None, :], normals))
    return float(dist.max(axis=1).min())


def default_target_width(perimeter, skin_depth_at_fmax):
    """Default segment width: half the smallest skin depth, at most perimeter/16."""
    return min(skin_depth_at_fmax / 2.0, perimeter / 16.0)


def check_disjoint(contours):
    """Raise GeometryOverlap if any two contours touch or intersect."""
    polys = [c.polygon() for c in contours]
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if polys[i].intersects(polys[j]):
                a = contours[i].label or str(i)
                b = contours[j].label or str(j)
                raise GeometryOverlap(f"conductors overlap: {a} and {b}")

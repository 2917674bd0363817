"""Problem description: TOML parsing and validation.

Grammar (SI units, angles in radians)::

    reference = 2              # optional, 1-based return conductor

    [medium]                   # optional
    eps_r = 1.0
    mu_r = 1.0

    [sweep]
    f_min = 1e2
    f_max = 1e9
    n_points = 31
    spacing = "log"            # or "linear"

    [options]                  # optional, defaults shown
    quad_points = 5
    t_switch = 0.5
    c0_low = 1e6
    c0_high = 1.0

    [[conductor]]
    name = "a"                 # optional
    shape = "circle"           # circle | polygon | rect | arc_strip
    center = [0.0, 0.0]
    radius = 1e-3
    sigma = 5.8e7
    eps_r = 1.0                # optional
    mu_r = 1.0                 # optional
    n_segments = 28            # optional; otherwise the automatic rule

Shape keys: ``polygon`` takes ``vertices = [[x, y], ...]``; ``rect`` takes
``center``, ``w``, ``h`` and optional ``rotation``; ``arc_strip`` takes
``center``, ``mean_radius``, ``thickness``, ``angles = [start, end]`` and
``n_arc``/``n_cap`` in place of ``n_segments``.
"""

from dataclasses import dataclass, field
import math

import numpy as np
import tomli

from . import geometry
from .errors import DomainError, InvalidGeometry, ParseError, ValidationError
from .medium import Material, MediumSpec, SolverOptions, skin_depth

SHAPES = {
    "circle": "center, radius",
    "polygon": "vertices",
    "rect": "center, w, h, rotation",
    "arc_strip": "center, mean_radius, thickness, angles, n_arc, n_cap",
}
MIN_FREQUENCY = 1.0
MAX_AUTO_SEGMENTS = 1000


@dataclass(frozen=True)
class ConductorSpec:
    name: str
    contour: geometry.Contour
    material: Material


@dataclass(frozen=True)
class SweepSpec:
    f_min: float
    f_max: float
    n_points: int
    spacing: str = "log"

    def frequencies(self):
        if self.n_points == 1:
            return np.array([self.f_min])
        if self.spacing == "log":
            return np.geomspace(self.f_min, self.f_max, self.n_points)
        return np.linspace(self.f_min, self.f_max, self.n_points)


@dataclass(frozen=True)
class ProblemSpec:
    conductors: tuple
    sweep: SweepSpec
    medium: MediumSpec = MediumSpec()
    options: SolverOptions = field(default_factory=SolverOptions)
    reference: int = None    # 0-based

    @property
    def contours(self):
        return [c.contour for c in self.conductors]


def _number(table, key, where, default=None, positive=False):
    if key not in table:
        if default is None:
            raise ValidationError(f"{where}: missing '{key}'")
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{where}: '{key}' must be a number")
    value = float(value)
    if not math.isfinite(value):
        raise ValidationError(f"{where}: '{key}' must be finite")
    if positive and not value > 0:
        raise ValidationError(f"{where}: '{key}' must be positive")
    return value


def _integer(table, key, where, default=None, minimum=1):
    if key not in table:
        return default
    value = table[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ValidationError(f"{where}: '{key}' must be an integer >= {minimum}")
    return value


def _point(table, key, where):
    value = table.get(key)
    if (not isinstance(value, list) or len(value) != 2
            or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        raise ValidationError(f"{where}: '{key}' must be a pair of numbers [x, y]")
    return (float(value[0]), float(value[1]))


def _auto_width(contour, material, f_max):
    delta = skin_depth(material, 2.0 * math.pi * f_max) if material.sigma > 0 else math.inf
    return geometry.default_target_width(contour.perimeter, delta)


def _check_budget(n, where):
    if n > MAX_AUTO_SEGMENTS:
        raise ValidationError(
            f"{where}: automatic segment rule asks for {n} segments (limit {MAX_AUTO_SEGMENTS}); "
            "set n_segments explicitly")


def _build_contour(t, where, label, material, f_max):
    shape = t.get("shape")
    if shape not in SHAPES:
        raise ValidationError(f"{where}: unknown shape {shape!r}; expected one of {', '.join(SHAPES)}")
    n = _integer(t, "n_segments", where, minimum=3)
    if shape == "circle":
        center = _point(t, "center", where)
        radius = _number(t, "radius", where, positive=True)
        if n is None:
            width = _auto_width(geometry.make_circle(center, radius, 16), material, f_max)
            n = max(16, math.ceil(2 * math.pi * radius / width))
            _check_budget(n, where)
        return geometry.make_circle(center, radius, n, label)
    if shape in ("polygon", "rect"):
        if shape == "polygon":
            vertices = t.get("vertices")
            if not isinstance(vertices, list) or len(vertices) < 3:
                raise ValidationError(f"{where}: 'vertices' must list at least 3 points")
            pts = [_point({"v": v}, "v", where) for v in vertices]
            coarse = geometry.make_polygon(pts, n_segments=len(pts), label=label)
        else:
            center = _point(t, "center", where)
            w = _number(t, "w", where, positive=True)
            h = _number(t, "h", where, positive=True)
            rot = _number(t, "rotation", where, default=0.0)
            coarse = geometry.make_rect(center, w, h, rot, n_segments=4, label=label)
            pts = coarse.vertices
        if n is not None:
            return geometry.make_polygon(pts, n_segments=n, label=label)
        contour = geometry.make_polygon(pts, target_width=_auto_width(coarse, material, f_max),
                                        label=label)
        _check_budget(len(contour), where)
        return contour
    center = _point(t, "center", where)
    mean_radius = _number(t, "mean_radius", where, positive=True)
    thickness = _number(t, "thickness", where, positive=True)
    angles = t.get("angles")
    if not isinstance(angles, list) or len(angles) != 2:
        raise ValidationError(f"{where}: 'angles' must be [start, end]")
    start, end = (_number({"a": a}, "a", where) for a in angles)
    n_arc = _integer(t, "n_arc", where)
    n_cap = _integer(t, "n_cap", where)
    if n_arc is None:
        probe = geometry.make_arc_strip(center, mean_radius, thickness, start, end, 16, 1, label)
        width = _auto_width(probe, material, f_max)
        n_arc = max(16, math.ceil((mean_radius + thickness / 2) * (end - start) / width))
        n_cap = n_cap or max(1, math.ceil(thickness / width))
        _check_budget(2 * (n_arc + n_cap), where)
    return geometry.make_arc_strip(center, mean_radius, thickness, start, end, n_arc, n_cap, label)


def _conductor(t, index, f_max):
    if not isinstance(t, dict):
        raise ValidationError(f"conductor {index}: expected a table")
    name = str(t.get("name", f"conductor {index}"))
    where = f"conductor {name!r}"
    sigma = _number(t, "sigma", where)
    try:
        material = Material(sigma, _number(t, "eps_r", where, default=1.0),
                            _number(t, "mu_r", where, default=1.0))
        contour = _build_contour(t, where, name, material, f_max)
    except (DomainError, InvalidGeometry) as exc:
        raise ValidationError(f"{where}: {exc}") from exc
    return ConductorSpec(name, contour, material)


def spec_from_dict(doc):
    """Validate an already-parsed document (see module docstring)."""
    sweep_t = doc.get("sweep")
    if not isinstance(sweep_t, dict):
        raise ValidationError("missing [sweep] table")
    f_min = _number(sweep_t, "f_min", "sweep")
    f_max = _number(sweep_t, "f_max", "sweep", default=f_min)
    n_points = _integer(sweep_t, "n_points", "sweep", default=1)
    spacing = sweep_t.get("spacing", "log")
    if f_min < MIN_FREQUENCY:
        raise ValidationError(f"sweep: f_min must be at least {MIN_FREQUENCY:g} Hz")
    if spacing not in ("log", "linear"):
        raise ValidationError("sweep: spacing must be 'log' or 'linear'")
    if n_points > 1 and not f_min < f_max:
        raise ValidationError("sweep: f_min must be below f_max")
    sweep = SweepSpec(f_min, f_max if n_points > 1 else f_min, n_points, spacing)

    med_t = doc.get("medium", {})
    try:
        medium = MediumSpec(_number(med_t, "eps_r", "medium", default=1.0),
                            _number(med_t, "mu_r", "medium", default=1.0))
    except DomainError as exc:
        raise ValidationError(f"medium: {exc}") from exc

    opt_t = doc.get("options", {})
    try:
        options = SolverOptions(
            c0_low=_number(opt_t, "c0_low", "options", default=1e6),
            c0_high=_number(opt_t, "c0_high", "options", default=1.0),
            t_switch=_number(opt_t, "t_switch", "options", default=0.5),
            quad_points=_integer(opt_t, "quad_points", "options", default=5, minimum=2),
        )
    except DomainError as exc:
        raise ValidationError(f"options: {exc}") from exc

    raw = doc.get("conductor")
    if not isinstance(raw, list) or not raw:
        raise ValidationError("at least one [[conductor]] is required")
    conductors = tuple(_conductor(t, i + 1, sweep.f_max) for i, t in enumerate(raw))
    names = [c.name for c in conductors]
    if len(set(names)) != len(names):
        raise ValidationError("conductor names must be unique")
    try:
        geometry.check_disjoint([c.contour for c in conductors])
    except InvalidGeometry as exc:
        raise ValidationError(str(exc)) from exc

    reference = None
    if "reference" in doc:
        ref = _integer(doc, "reference", "reference", minimum=1)
        if ref > len(conductors):
            raise ValidationError(f"reference: {ref} exceeds the number of conductors")
        if len(conductors) < 2:
            raise ValidationError("reference: needs at least two conductors")
        reference = ref - 1
    return ProblemSpec(conductors, sweep, medium, options, reference)


def parse_config(text):
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return spec_from_dict(doc)


def load_config(path):
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())

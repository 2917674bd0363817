"""Shared conductor layouts for the acceptance and integration tests."""

import math

from cimrl.config import ConductorSpec, ProblemSpec, SweepSpec
from cimrl.geometry import make_arc_strip, make_circle, make_polygon, make_rect
from cimrl.medium import Material, MediumSpec, SolverOptions

COPPER = Material(5.8e7)
RECT_METAL = Material(5.6e7)
ALUMINA_METAL = Material(3.57e7)
UM = 1e-6


def _spec(conductors, f_min, f_max, n_points, reference=None, options=None):
    return ProblemSpec(tuple(conductors), SweepSpec(f_min, f_max, n_points, "log"), MediumSpec(),
                       options or SolverOptions(), reference)


def separated_round_pair(n=64, f_min=60.0, f_max=1e9, n_points=10, options=None):
    """Two 1 mm copper wires, centres 50 mm apart."""
    cs = [ConductorSpec("a", make_circle((0.0, 0.0), 1e-3, n, "a"), COPPER),
          ConductorSpec("b", make_circle((0.05, 0.0), 1e-3, n, "b"), COPPER)]
    return _spec(cs, f_min, f_max, n_points, 1, options)


def unequal_round_pair(scale=1, n_points=31):
    """Radii 1 mm and 2 mm, centres 3.5 mm apart, 28 and 60 segments."""
    cs = [ConductorSpec("small", make_circle((0.0, 0.0), 1e-3, 28 * scale, "small"), COPPER),
          ConductorSpec("large", make_circle((3.5e-3, 0.0), 2e-3, 60 * scale, "large"), COPPER)]
    return _spec(cs, 1e2, 1e9, n_points, 1)


def rect_pair(scale=1, f_min=1e3, f_max=1e11, n_points=25, options=None):
    """Two 2 mm x 0.2 mm strips side by side, centres 3 mm apart, 106 segments each."""
    n = 106 * scale
    cs = [ConductorSpec("left", make_rect((0.0, 0.0), 2e-3, 0.2e-3, n_segments=n, label="left"),
                        RECT_METAL),
          ConductorSpec("right", make_rect((3e-3, 0.0), 2e-3, 0.2e-3, n_segments=n, label="right"),
                        RECT_METAL)]
    return _spec(cs, f_min, f_max, n_points, 1, options)


def trapezoid_line(n_points=15):
    """Three trapezoidal lines above a wide ground strip (dimensions in micrometres)."""
    def trapezoid(x0, name):
        v = [(x0 - 3 * UM, 5 * UM), (x0 + 3 * UM, 5 * UM), (x0 + 2 * UM, 8 * UM),
             (x0 - 2 * UM, 8 * UM)]
        return ConductorSpec(name, make_polygon(v, n_segments=40, label=name), ALUMINA_METAL)

    ground = ConductorSpec("ground", make_rect((0.0, 0.0), 40 * UM, 2 * UM, n_segments=116,
                                               label="ground"), ALUMINA_METAL)
    cs = [trapezoid(-10 * UM, "s1"), trapezoid(0.0, "s2"), trapezoid(10 * UM, "s3"), ground]
    return _spec(cs, 1e6, 1e11, n_points, 3)


def curved_microstrips(n_points=15):
    """Thin copper strips conformal to a 5 mm cylinder over a curved ground."""
    deg = math.pi / 180.0
    cs = [ConductorSpec("ground", make_arc_strip((0.0, 0.0), 5e-3, 35 * UM, 40 * deg, 140 * deg,
                                                 100, 1, "ground"), COPPER)]
    for i, mid in enumerate((75.0, 90.0, 105.0)):
        name = f"s{i + 1}"
        cs.append(ConductorSpec(name, make_arc_strip((0.0, 0.0), 5.2e-3, 35 * UM,
                                                     (mid - 5) * deg, (mid + 5) * deg, 27, 1,
                                                     name), COPPER))
    return _spec(cs, 1e5, 1e10, n_points, 0)

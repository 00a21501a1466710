"""Geometry of the imaging problem: interface profiles, obstacle curves,
the measurement segment, and the sampling grid.

Points are plain float arrays of shape (..., 2); x2 is the vertical
coordinate.  The flat reference interface is {x2 = 0}; a profile f
describes the perturbed interface {x2 = f(x1)} and vanishes identically
outside a finite support interval.  All evaluators are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

__all__ = [
    "eval_spline_omega3",
    "eval_cutoff_f0",
    "InterfaceProfile",
    "ObstacleCurve",
    "obstacle_point",
    "MeasurementLine",
    "SamplingGrid",
    "measurement_points",
    "grid_points",
]


def eval_spline_omega3(t):
    """Cubic B-spline bump: C^2, even, supported on [-2, 2], unit integral.

    Omega3(t) = |t|^3/2 - t^2 + 2/3          for |t| <= 1
              = -|t|^3/6 + t^2 - 2|t| + 4/3  for 1 < |t| < 2
              = 0                            for |t| >= 2
    """
    a = np.abs(np.asarray(t, dtype=float))
    out = np.zeros_like(a)
    inner = a <= 1.0
    outer = (a > 1.0) & (a < 2.0)
    ai = a[inner]
    out[inner] = 0.5 * ai**3 - ai**2 + 2.0 / 3.0
    ao = a[outer]
    out[outer] = -(ao**3) / 6.0 + ao**2 - 2.0 * ao + 4.0 / 3.0
    return float(out) if np.ndim(t) == 0 else out


def eval_cutoff_f0(t):
    """Smooth cutoff: 1 on |t|<=4, 0 on |t|>=5, C-infinity blend between."""
    a = np.abs(np.asarray(t, dtype=float))
    out = np.ones_like(a)
    out[a >= 5.0] = 0.0
    mid = (a > 4.0) & (a < 5.0)
    am = a[mid]
    expo = 1.0 / (5.0 - am) + 1.0 / (4.0 - am)
    out[mid] = 1.0 / (1.0 + np.exp(np.minimum(expo, 700.0)))
    return float(out) if np.ndim(t) == 0 else out


def _gauss(c, w):
    return lambda t: np.exp(-w * (t - c) ** 2)


_PROFILE_FORMULAS = {
    "flat": (lambda t: np.zeros_like(np.asarray(t, dtype=float)), None),
    "spline_bump": (lambda t: -2.0 * eval_spline_omega3(t), (-2.0, 2.0)),
    "three_bump": (
        lambda t: 2.0 * eval_spline_omega3(2 * t + 7)
        - 2.0 * eval_spline_omega3(2 * t)
        + 2.0 * eval_spline_omega3(2 * t - 7),
        (-4.5, 4.5),
    ),
    "gaussian_dip": (
        lambda t: -1.5 * np.exp(-3.0 * (t - 3.0) ** 2) * eval_cutoff_f0(t),
        (-5.0, 5.0),
    ),
    "two_bump": (
        lambda t: (_gauss(-2, 3)(t) + _gauss(2, 3)(t)) * eval_cutoff_f0(t),
        (-5.0, 5.0),
    ),
    "four_bump": (
        lambda t: (
            _gauss(-4, 8)(t) + _gauss(-2, 8)(t) - 1.5 * _gauss(2, 6)(t) + _gauss(4, 8)(t)
        )
        * eval_cutoff_f0(t),
        (-5.0, 5.0),
    ),
    "six_bump": (
        lambda t: (
            _gauss(-4, 12)(t)
            + _gauss(-2.5, 12)(t)
            - 2.0 * _gauss(-1, 12)(t)
            + _gauss(1, 10)(t)
            + _gauss(2.5, 16)(t)
            + _gauss(4, 12)(t)
        )
        * eval_cutoff_f0(t),
        (-5.0, 5.0),
    ),
}

PROFILE_KINDS = tuple(_PROFILE_FORMULAS) + ("custom",)


@dataclass(frozen=True)
class InterfaceProfile:
    """Local perturbation f of the flat interface x2 = 0.

    kind is one of PROFILE_KINDS.  For "custom", samples (t_i, f_i) are
    interpolated with a cubic spline inside the inferred support and f is
    exactly zero outside it.
    """

    kind: str = "flat"
    samples_t: tuple = ()
    samples_f: tuple = ()
    _spline: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in PROFILE_KINDS:
            raise ConfigurationError(f"unknown interface kind {self.kind!r}")
        if self.kind == "custom":
            if len(self.samples_t) < 4 or len(self.samples_t) != len(self.samples_f):
                raise ConfigurationError(
                    "custom interface needs >= 4 (t, f) samples of equal length"
                )
            from scipy.interpolate import CubicSpline

            t = np.asarray(self.samples_t, dtype=float)
            f = np.asarray(self.samples_f, dtype=float)
            order = np.argsort(t)
            object.__setattr__(self, "_spline", CubicSpline(t[order], f[order]))

    @property
    def support(self):
        """(t_min, t_max) outside which f is identically zero; None if flat."""
        if self.kind == "custom":
            t = np.asarray(self.samples_t, dtype=float)
            f = np.asarray(self.samples_f, dtype=float)
            live = np.abs(f) > 1e-14
            if not np.any(live):
                return None
            return float(t[live].min()), float(t[live].max())
        return _PROFILE_FORMULAS[self.kind][1]

    def __call__(self, t):
        """f(t), exactly zero outside the support."""
        ta = np.asarray(t, dtype=float)
        if self.kind == "custom":
            sup = self.support
            out = np.zeros_like(ta, dtype=float)
            if sup is not None:
                inside = (ta >= sup[0]) & (ta <= sup[1])
                out[inside] = self._spline(ta[inside])
            return float(out) if np.ndim(t) == 0 else out
        formula, sup = _PROFILE_FORMULAS[self.kind]
        out = np.asarray(formula(ta), dtype=float)
        if sup is not None:
            out = np.where((ta < sup[0]) | (ta > sup[1]), 0.0, out)
        else:
            out = np.zeros_like(ta)
        return float(out) if np.ndim(t) == 0 else out

    @property
    def is_flat(self):
        sup = self.support
        if sup is None:
            return True
        t = np.linspace(sup[0], sup[1], 2001)
        return bool(np.max(np.abs(self(t))) < 1e-14)

    def extrema(self, samples=4001):
        """(min f, max f) over the support by dense sampling; (0, 0) if flat."""
        sup = self.support
        if sup is None:
            return 0.0, 0.0
        t = np.linspace(sup[0], sup[1], samples)
        v = self(t)
        return float(v.min()), float(v.max())

    def describe(self):
        return {"kind": self.kind} | (
            {"samples_t": list(self.samples_t), "samples_f": list(self.samples_f)}
            if self.kind == "custom"
            else {}
        )


OBSTACLE_KINDS = ("none", "circle", "apple", "rounded_square", "ellipse", "custom")

MIN_CURVE_SPEED = 1e-10


@dataclass(frozen=True)
class ObstacleCurve:
    """Closed C^2 parametric boundary of the buried sound-soft obstacle.

    Parameterized counterclockwise by theta in [0, 2pi).  params:
      circle:         center=(cx, cy), radius r         -> params (cx, cy, r)
      apple:          center (cx, cy), fixed rho(theta) -> params (cx, cy)
      rounded_square: center (cx, cy), scale s          -> params (cx, cy, s)
      ellipse:        center (cx, cy), semi-axes (a, b) -> params (cx, cy, a, b)
      custom:         periodic samples via samples_theta/samples_xy
    """

    kind: str = "none"
    params: tuple = ()
    samples_theta: tuple = ()
    samples_xy: tuple = ()
    _spline: object = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in OBSTACLE_KINDS:
            raise ConfigurationError(f"unknown obstacle kind {self.kind!r}")
        expected = {"circle": 3, "apple": 2, "rounded_square": 3, "ellipse": 4}
        if self.kind in expected and len(self.params) != expected[self.kind]:
            raise ConfigurationError(
                f"obstacle kind {self.kind!r} needs {expected[self.kind]} params, "
                f"got {len(self.params)}"
            )
        if self.kind == "custom":
            if len(self.samples_theta) < 8:
                raise ConfigurationError("custom obstacle needs >= 8 samples")
            from scipy.interpolate import CubicSpline

            th = np.asarray(self.samples_theta, dtype=float)
            xy = np.asarray(self.samples_xy, dtype=float).reshape(len(th), 2)
            order = np.argsort(th)
            th, xy = th[order], xy[order]
            th = np.append(th, th[0] + 2 * np.pi)
            xy = np.vstack([xy, xy[:1]])
            object.__setattr__(
                self, "_spline", CubicSpline(th, xy, bc_type="periodic")
            )

    @property
    def present(self):
        return self.kind != "none"

    def frame(self, theta):
        """Position, first and second theta-derivatives, shape (..., 2) each."""
        if not self.present:
            raise ConfigurationError("scene has no obstacle (kind='none')")
        th = np.asarray(theta, dtype=float)
        c, s = np.cos(th), np.sin(th)
        if self.kind == "circle":
            cx, cy, r = self.params
            x = np.stack([cx + r * c, cy + r * s], axis=-1)
            dx = np.stack([-r * s, r * c], axis=-1)
            ddx = np.stack([-r * c, -r * s], axis=-1)
        elif self.kind == "ellipse":
            cx, cy, ra, rb = self.params
            x = np.stack([cx + ra * c, cy + rb * s], axis=-1)
            dx = np.stack([-ra * s, rb * c], axis=-1)
            ddx = np.stack([-ra * c, -rb * s], axis=-1)
        elif self.kind == "rounded_square":
            cx, cy, sc = self.params
            x = np.stack([cx + sc * (c**3 + c), cy + sc * (s**3 + s)], axis=-1)
            dx = np.stack(
                [-sc * s * (3 * c**2 + 1), sc * c * (3 * s**2 + 1)], axis=-1
            )
            ddx = np.stack(
                [
                    -sc * (c * (3 * c**2 + 1) + c * (-6 * s**2)),
                    -sc * (s * (3 * s**2 + 1) + s * (-6 * c**2)),
                ],
                axis=-1,
            )
        elif self.kind == "apple":
            cx, cy = self.params
            s2, c2 = np.sin(2 * th), np.cos(2 * th)
            num = 0.5 + 0.4 * c + 0.1 * s2
            den = 1.0 + 0.7 * c
            dnum = -0.4 * s + 0.2 * c2
            dden = -0.7 * s
            d2num = -0.4 * c - 0.4 * s2
            d2den = -0.7 * c
            rho = num / den
            drho = (dnum * den - num * dden) / den**2
            d2rho = (d2num * den - num * d2den) / den**2 - 2 * dden * (
                dnum * den - num * dden
            ) / den**3
            x = np.stack([cx + rho * c, cy + rho * s], axis=-1)
            dx = np.stack([drho * c - rho * s, drho * s + rho * c], axis=-1)
            ddx = np.stack(
                [
                    (d2rho - rho) * c - 2 * drho * s,
                    (d2rho - rho) * s + 2 * drho * c,
                ],
                axis=-1,
            )
        else:  # custom
            x = self._spline(np.mod(th, 2 * np.pi))
            dx = self._spline(np.mod(th, 2 * np.pi), 1)
            ddx = self._spline(np.mod(th, 2 * np.pi), 2)
        return x, dx, ddx

    def describe(self):
        d = {"kind": self.kind, "params": list(self.params)}
        if self.kind == "custom":
            d["samples_theta"] = list(self.samples_theta)
            d["samples_xy"] = np.asarray(self.samples_xy, dtype=float).reshape(-1).tolist()
        return d


def obstacle_point(curve, theta):
    """(position, tangent, outward unit normal, speed) at parameter theta.

    For counterclockwise curves the outward normal is (x2', -x1')/|x'|.
    Raises on a missing obstacle or a degenerate parameterization
    (speed below MIN_CURVE_SPEED, which would break Nystrom weights).
    """
    x, dx, _ = curve.frame(theta)
    speed = np.linalg.norm(dx, axis=-1)
    if np.any(speed <= MIN_CURVE_SPEED):
        raise ConfigurationError(
            f"degenerate obstacle parameterization: |dx/dtheta| <= {MIN_CURVE_SPEED}"
        )
    normal = np.stack([dx[..., 1], -dx[..., 0]], axis=-1) / speed[..., None]
    return x, dx, normal, speed


@dataclass(frozen=True)
class MeasurementLine:
    """Horizontal segment {|x1| <= a, x2 = b} carrying n receivers/sources."""

    a: float = 20.0
    b: float = 1.55
    n: int = 401

    def __post_init__(self):
        if self.a <= 0:
            raise ConfigurationError("measurement.a must be > 0")
        if self.n < 2:
            raise ConfigurationError("measurement.n must be >= 2")

    @property
    def spacing(self):
        return 2.0 * self.a / (self.n - 1)

    def weights(self):
        """Trapezoid quadrature weights on the segment (endpoints halved)."""
        w = np.full(self.n, self.spacing)
        w[0] *= 0.5
        w[-1] *= 0.5
        return w


def measurement_points(line):
    """n points equally spaced on [-a, a] x {b}, endpoints included."""
    x1 = np.linspace(-line.a, line.a, line.n)
    return np.stack([x1, np.full(line.n, line.b)], axis=-1)


@dataclass(frozen=True)
class SamplingGrid:
    """Rectangular lattice of sampling points z."""

    x1_min: float
    x1_max: float
    x2_min: float
    x2_max: float
    step_x1: float
    step_x2: float

    def __post_init__(self):
        if self.step_x1 <= 0 or self.step_x2 <= 0:
            raise ConfigurationError("grid steps must be > 0")
        if self.x1_max <= self.x1_min or self.x2_max <= self.x2_min:
            raise ConfigurationError("grid ranges must be nonempty")

    def axis(self, lo, hi, step):
        # k = 0..floor((hi-lo)/step); the 1e-9 nudge keeps mathematically
        # exact endpoints from being dropped by float division.
        count = int(np.floor((hi - lo) / step + 1e-9)) + 1
        return lo + step * np.arange(count)

    @property
    def x1_values(self):
        return self.axis(self.x1_min, self.x1_max, self.step_x1)

    @property
    def x2_values(self):
        return self.axis(self.x2_min, self.x2_max, self.step_x2)

    @property
    def shape(self):
        """(n_x2, n_x1): rows scan x2, columns scan x1."""
        return len(self.x2_values), len(self.x1_values)

    def describe(self):
        return {
            "x1_min": self.x1_min,
            "x1_max": self.x1_max,
            "x2_min": self.x2_min,
            "x2_max": self.x2_max,
            "step_x1": self.step_x1,
            "step_x2": self.step_x2,
        }


def grid_points(grid):
    """Row-major lattice: x2 varies across rows, x1 across columns."""
    x1 = grid.x1_values
    x2 = grid.x2_values
    xx1, xx2 = np.meshgrid(x1, x2)  # shape (n_x2, n_x1)
    return np.stack([xx1.ravel(), xx2.ravel()], axis=-1)

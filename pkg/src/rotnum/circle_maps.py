"""Circle homeomorphisms represented by monotone degree-one lifts.

A lift is evaluated in closed form with no unwrapping state:

    eval(x) = floor(x) + unit_eval(frac(x)) + branch_offset,

where ``unit_eval`` maps [0, 1) onto a half-open interval of length one.
For maps given directly as lifts (rotations, the two-fixed-point sine map)
``unit_eval`` is the formula itself; for maps given only as circle maps
(projective actions) it is the canonical anchored lift

    unit_eval(u) = eval0 + ((raw(u) - raw(0)) mod 1),

with eval0 the representative of raw(0) in [anchor, anchor + 1).  Degree
one then holds exactly in floating point, and inverses are recovered from
the circle-level inverse plus an integer correction.

Projective actions of SL(2, R) come in two flavours: on the projective
line (direction angle over pi, ``cover=1``) and on the unit circle of
vectors (angle over 2 pi, ``cover=2``).  The latter is the double cover on
which transfer-matrix cocycles are iterated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "LiftedCircleMap",
    "RotationLift",
    "MorseSmaleLift",
    "ProjectiveLift",
    "SL2Matrix",
    "MapFamily",
    "CalibratedFamily",
    "projectivize",
    "unit_circle_action",
    "morse_smale",
    "rotation",
    "compose",
    "calibrate_lifts",
    "InvalidMatrixError",
    "ContinuityError",
    "ParameterError",
]

TWO_PI = 2.0 * math.pi


class InvalidMatrixError(ValueError):
    """Matrix is not in SL(2, R) to working precision."""


class ContinuityError(RuntimeError):
    """Branch continuation could not resolve a discontinuity."""


class ParameterError(ValueError):
    pass


def _frac(x):
    return x - np.floor(x)


class LiftedCircleMap:
    """Monotone degree-one lift of an orientation-preserving circle map.

    Subclasses implement ``_unit_eval`` (values of the offset-0 lift on
    [0, 1)), ``_circle_inverse`` (mod-1 inverse) and ``_circle_deriv``.
    All evaluators accept scalars or numpy arrays.
    """

    branch_offset: int = 0

    def _unit_eval(self, u):
        raise NotImplementedError

    def _circle_inverse(self, v):
        raise NotImplementedError

    def _circle_deriv(self, u):
        raise NotImplementedError

    def eval(self, x):
        x = np.asarray(x, dtype=np.float64)
        fl = np.floor(x)
        out = fl + self._unit_eval(x - fl) + self.branch_offset
        return float(out) if out.ndim == 0 else out

    def inv_eval(self, z):
        z = np.asarray(z, dtype=np.float64)
        u = self._circle_inverse(_frac(z))
        u = np.asarray(u, dtype=np.float64)
        k = np.round(z - np.asarray(self.eval(u)))
        out = u + k
        return float(out) if out.ndim == 0 else out

    def deriv(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.asarray(self._circle_deriv(_frac(x)))
        return float(out) if out.ndim == 0 else out

    def circle(self, x):
        """Image of x as a point of [0, 1)."""
        z = np.asarray(self.eval(x))
        out = _frac(z)
        return float(out) if out.ndim == 0 else out

    def with_offset(self, k: int) -> "LiftedCircleMap":
        """Same circle map, lift shifted by the integer k."""
        import copy

        other = copy.copy(self)
        other.branch_offset = self.branch_offset + int(k)
        return other

    def inverse(self) -> "LiftedCircleMap":
        """The inverse homeomorphism, lifted as the functional inverse."""
        return _InverseLift(self)


class _InverseLift(LiftedCircleMap):
    def __init__(self, base: LiftedCircleMap):
        self._base = base
        self.branch_offset = 0

    def eval(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.asarray(self._base.inv_eval(x)) + self.branch_offset
        return float(out) if out.ndim == 0 else out

    def inv_eval(self, z):
        z = np.asarray(z, dtype=np.float64)
        out = np.asarray(self._base.eval(z - self.branch_offset))
        return float(out) if out.ndim == 0 else out

    def deriv(self, x):
        u = self._base.inv_eval(x)
        out = 1.0 / np.asarray(self._base.deriv(u))
        return float(out) if out.ndim == 0 else out

    def _unit_eval(self, u):
        return np.asarray(self._base.inv_eval(u))

    def _circle_inverse(self, v):
        return _frac(np.asarray(self._base.eval(v)))

    def _circle_deriv(self, u):
        return self.deriv(u)

    def inverse(self):
        return self._base.with_offset(0) if self.branch_offset == 0 else \
            _InverseLift(self)


class RotationLift(LiftedCircleMap):
    """Rigid rotation: eval(x) = x + angle."""

    def __init__(self, angle: float, offset: int = 0):
        self.angle = float(angle)
        self.branch_offset = offset

    def eval(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = x + (self.angle + self.branch_offset)
        return float(out) if out.ndim == 0 else out

    def inv_eval(self, z):
        z = np.asarray(z, dtype=np.float64)
        out = z - (self.angle + self.branch_offset)
        return float(out) if out.ndim == 0 else out

    def deriv(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.ones_like(x)
        return 1.0 if out.ndim == 0 else out

    def _unit_eval(self, u):
        return u + self.angle

    def _circle_inverse(self, v):
        return _frac(v - self.angle)

    def _circle_deriv(self, u):
        return np.ones_like(np.asarray(u, dtype=np.float64))


class MorseSmaleLift(LiftedCircleMap):
    """The sine perturbation of the identity: eval(x) = x - (s/2pi) sin(2pi x).

    Hyperbolic attractor at 0 with multiplier 1 - s, hyperbolic repeller at
    1/2 with multiplier 1 + s.  Requires 0 < s < 1.  The sine argument is
    reduced mod 1 before scaling so degree one is exact for large lifts.
    """

    def __init__(self, s: float, offset: int = 0):
        if not 0.0 < s < 1.0:
            raise ParameterError("strength s must lie in (0, 1), got %r" % (s,))
        self.s = float(s)
        self._c = self.s / TWO_PI
        self.branch_offset = offset

    def _unit_eval(self, u):
        return u - self._c * np.sin(TWO_PI * u)

    def _circle_deriv(self, u):
        return 1.0 - self.s * np.cos(TWO_PI * u)

    def _circle_inverse(self, v):
        # solve q - c sin(2 pi q) = v;  bracket [v-c, v+c], bisect then Newton
        v = np.asarray(v, dtype=np.float64)
        lo = v - self._c
        hi = v + self._c
        for _ in range(10):
            mid = 0.5 * (lo + hi)
            below = mid - self._c * np.sin(TWO_PI * mid) < v
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        q = 0.5 * (lo + hi)
        for _ in range(4):
            f = q - self._c * np.sin(TWO_PI * q) - v
            fp = 1.0 - self._c * TWO_PI * np.cos(TWO_PI * q)
            q = q - f / fp
        return _frac(q)


@dataclass(frozen=True)
class SL2Matrix:
    """Real 2x2 matrix with determinant one."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if abs(self.det - 1.0) >= 1e-12:
            raise InvalidMatrixError(
                "determinant %.17g is not 1" % self.det)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "SL2Matrix") -> "SL2Matrix":
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inv(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a)

    @staticmethod
    def rotation(theta: float) -> "SL2Matrix":
        return SL2Matrix(math.cos(theta), -math.sin(theta),
                         math.sin(theta), math.cos(theta))

    @staticmethod
    def identity() -> "SL2Matrix":
        return SL2Matrix(1.0, 0.0, 0.0, 1.0)


class ProjectiveLift(LiftedCircleMap):
    """Action of an SL(2, R) matrix on the projective line or unit circle.

    ``cover=1``: coordinate y = theta/pi mod 1 with theta the direction
    angle in [0, pi) — the projective line as a circle.  ``cover=2``: the
    unit circle of vectors, y = theta/(2 pi).  In both coordinates the map
    is an orientation-preserving homeomorphism with derivative
    1/|M u(y)|^2, and the canonical lift is anchored so that eval(0) lies
    in [anchor, anchor + 1).
    """

    def __init__(self, m: SL2Matrix, anchor: float = 0.0, cover: int = 1,
                 offset: int = 0):
        if not 0.0 <= anchor < 1.0:
            raise ParameterError("anchor must lie in [0, 1)")
        if cover not in (1, 2):
            raise ParameterError("cover must be 1 or 2")
        self.m = m
        self.anchor = float(anchor)
        self.cover = cover
        self.branch_offset = offset
        self._period = math.pi if cover == 1 else TWO_PI
        self._raw0 = self._raw_point(np.float64(0.0))
        self._eval0 = self._raw0 + math.ceil(self.anchor - self._raw0)
        self._minv = m.inv()

    def _vec(self, u):
        th = self._period * u
        return np.cos(th), np.sin(th)

    def _raw(self, u, m):
        cth, sth = self._vec(u)
        w1 = m.a * cth + m.b * sth
        w2 = m.c * cth + m.d * sth
        ang = np.arctan2(w2, w1) / self._period
        return ang - np.floor(ang)

    def _raw_point(self, u):
        return float(self._raw(u, self.m))

    def _unit_eval(self, u):
        d = self._raw(u, self.m) - self._raw0
        d = np.where(d < 0.0, d + 1.0, d)
        return self._eval0 + d

    def _circle_inverse(self, v):
        return self._raw(v, self._minv)

    def _circle_deriv(self, u):
        cth, sth = self._vec(u)
        w1 = self.m.a * cth + self.m.b * sth
        w2 = self.m.c * cth + self.m.d * sth
        return 1.0 / (w1 * w1 + w2 * w2)


class ComposedLift(LiftedCircleMap):
    """Lift of g after h: eval = g.eval o h.eval."""

    def __init__(self, g: LiftedCircleMap, h: LiftedCircleMap,
                 offset: int = 0):
        self.g = g
        self.h = h
        self.branch_offset = offset

    def eval(self, x):
        x = np.asarray(x, dtype=np.float64)
        out = np.asarray(self.g.eval(self.h.eval(x))) + self.branch_offset
        return float(out) if out.ndim == 0 else out

    def inv_eval(self, z):
        z = np.asarray(z, dtype=np.float64)
        out = np.asarray(self.h.inv_eval(
            self.g.inv_eval(z - self.branch_offset)))
        return float(out) if out.ndim == 0 else out

    def deriv(self, x):
        hx = self.h.eval(x)
        out = np.asarray(self.g.deriv(hx)) * np.asarray(self.h.deriv(x))
        return float(out) if out.ndim == 0 else out

    def _unit_eval(self, u):
        return np.asarray(self.g.eval(self.h.eval(u)))

    def _circle_inverse(self, v):
        return _frac(np.asarray(self.h.inv_eval(self.g.inv_eval(v))))

    def _circle_deriv(self, u):
        return self.deriv(u)


def rotation(angle: float) -> RotationLift:
    return RotationLift(angle)


def morse_smale(s: float) -> MorseSmaleLift:
    """Circle diffeomorphism with one attracting and one repelling point."""
    return MorseSmaleLift(s)


def projectivize(m: SL2Matrix, anchor: float = 0.0) -> ProjectiveLift:
    """Lift of the action of m on the projective line (y = theta/pi mod 1)."""
    return ProjectiveLift(m, anchor=anchor, cover=1)


def unit_circle_action(m: SL2Matrix, anchor: float = 0.0) -> ProjectiveLift:
    """Lift of u -> M u/|M u| on the unit circle (y = theta/2pi mod 1)."""
    return ProjectiveLift(m, anchor=anchor, cover=2)


def compose(g: LiftedCircleMap, h: LiftedCircleMap) -> LiftedCircleMap:
    """Lift of the composition g o h."""
    if isinstance(g, RotationLift) and isinstance(h, RotationLift):
        return RotationLift(g.angle + h.angle,
                            g.branch_offset + h.branch_offset)
    return ComposedLift(g, h)


@dataclass
class MapFamily:
    """One-parameter family of circle maps given by a parameter hook.

    ``parameter_hook(E)`` must return the canonical (offset-0) lift for
    parameter E; ``kind``/``params`` are descriptive only.
    """

    kind: str
    params: dict
    parameter_hook: object

    def map_at(self, e: float) -> LiftedCircleMap:
        return self.parameter_hook(e)


@dataclass
class CalibratedFamily:
    """MapFamily with integer branch offsets assigned along a parameter grid."""

    family: MapFamily
    e_grid: np.ndarray
    offsets: np.ndarray
    probe_values: np.ndarray

    def map_at(self, e: float) -> LiftedCircleMap:
        idx = int(np.argmin(np.abs(self.e_grid - e)))
        return self.family.map_at(e).with_offset(int(self.offsets[idx]))


def _continue_branch(hook, e0, val0, e1, depth):
    """Walk eval_E(0) from e0 to e1, counting window wraps.

    Returns (integer wrap increment, probe value at e1).  A step is
    accepted when the probe moves by less than a quarter turn after the
    wrap adjustment (well inside the half-turn detector a monotone
    degree-one lift allows); otherwise the step is bisected, up to depth 40.
    """
    raw1 = float(hook(e1).eval(0.0))
    d = raw1 - val0
    k = -round(d)
    if abs(d + k) < 0.25:
        return k, raw1
    if depth <= 0:
        raise ContinuityError(
            "branch continuation failed on [%.17g, %.17g]: probe moved by %g"
            % (e0, e1, d))
    mid = 0.5 * (e0 + e1)
    if mid == e0 or mid == e1:
        raise ContinuityError(
            "branch continuation hit floating-point resolution at %.17g" % e0)
    k1, val_mid = _continue_branch(hook, e0, val0, mid, depth - 1)
    k2, val_end = _continue_branch(hook, mid, val_mid, e1, depth - 1)
    return k1 + k2, val_end


def calibrate_lifts(family: MapFamily, e_grid, base_anchor: float = 0.0,
                    max_depth: int = 40) -> CalibratedFamily:
    """Assign branch offsets along e_grid so eval_E(0) varies continuously.

    The first grid point is branched so its probe value lies in
    [base_anchor, base_anchor + 1); offsets at the remaining points are
    found by continuation with recursive bisection of any step where the
    probe moves too fast.  Raises ContinuityError when bisection depth is
    exhausted (a genuinely discontinuous family).
    """
    e_grid = np.asarray(e_grid, dtype=np.float64)
    if e_grid.ndim != 1 or e_grid.size == 0:
        raise ParameterError("e_grid must be a non-empty 1-d array")
    if np.any(np.diff(e_grid) <= 0.0):
        raise ParameterError("e_grid must be strictly increasing")
    offsets = np.zeros(e_grid.size, dtype=np.int64)
    probes = np.zeros(e_grid.size)
    raw_first = float(family.map_at(e_grid[0]).eval(0.0))
    offsets[0] = math.ceil(base_anchor - raw_first)
    probes[0] = raw_first + offsets[0]
    val = probes[0]
    for i in range(1, e_grid.size):
        k, raw = _continue_branch(family.map_at, e_grid[i - 1],
                                  val - offsets[i - 1], e_grid[i], max_depth)
        offsets[i] = offsets[i - 1] + k
        probes[i] = raw + offsets[i]
        val = probes[i]
    return CalibratedFamily(family, e_grid, offsets, probes)

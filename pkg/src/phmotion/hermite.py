"""First-order spatial Hermite interpolation by PH quintics.

Given end positions and end derivatives, the three quaternion coefficients of
the preimage are built from quaternion square roots of the end derivatives and
of an intermediate vector g that absorbs the displacement condition.  Each
square root carries one free angle; the default -pi/2 for all three yields the
interpolant whose frame twists least (empirically minimum bending energy).

Every solve is self-validated: the segment is reconstructed and its endpoint
positions and derivatives are checked against the inputs, so a silently wrong
coefficient can never leave this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDirection, NearAntipodal, ResidualTooLarge
from .geometry import EPS_DEGENERATE, Pose, X_AXIS, as_vec3, rotate_by
from .phcurve import PHQuinticSegment, QuaternionPoly, _sandwich, control_points, hodograph

# Threshold on 1 + alpha below which the square-root construction divides by
# (numerically) zero; such inputs raise instead of being silently rotated.
EPS_ANTIPODAL = 1e-10

_HALF_PI = 0.5 * math.pi


def _wrap_angle(phi: float) -> float:
    """Wrap into (-pi, pi]."""
    out = math.remainder(float(phi), 2.0 * math.pi)
    if out <= -math.pi:
        out += 2.0 * math.pi
    return out


@dataclass(frozen=True)
class FreeAngles:
    """The three free rotation parameters of the Hermite solution, radians."""

    phi0: float = -_HALF_PI
    phi1: float = -_HALF_PI
    phi2: float = -_HALF_PI

    def __post_init__(self):
        object.__setattr__(self, "phi0", _wrap_angle(self.phi0))
        object.__setattr__(self, "phi1", _wrap_angle(self.phi1))
        object.__setattr__(self, "phi2", _wrap_angle(self.phi2))


@dataclass(frozen=True, eq=False)
class HermiteData:
    """End positions (m) and end derivatives (m per unit parameter)."""

    p_i: np.ndarray
    p_f: np.ndarray
    d_i: np.ndarray
    d_f: np.ndarray

    def __post_init__(self):
        for name in ("p_i", "p_f", "d_i", "d_f"):
            arr = as_vec3(getattr(self, name)).copy()
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        for name in ("d_i", "d_f"):
            if float(np.linalg.norm(getattr(self, name))) <= EPS_DEGENERATE:
                raise DegenerateDirection(f"{name} has no usable direction")


@dataclass(frozen=True, eq=False)
class HermiteSolution:
    """Solved preimage coefficients plus the endpoint self-validation residuals."""

    a0: np.ndarray
    a1: np.ndarray
    a2: np.ndarray
    g: np.ndarray
    residual_d_i: float
    residual_d_f: float
    residual_p_f: float
    data: HermiteData = field(repr=False)

    @property
    def preimage(self) -> QuaternionPoly:
        return QuaternionPoly(self.a0, self.a1, self.a2)

    def as_segment(self, t_start: float = 0.0, t_end: float = 1.0) -> PHQuinticSegment:
        return PHQuinticSegment.from_preimage(self.preimage, self.data.p_i, t_start, t_end)


def preimage_root(d, phi: float, label: str = "d") -> np.ndarray:
    """A quaternion A with A i A* = d, selected by the free angle phi.

    With (alpha, beta, gamma) the direction cosines of d:

        A = sqrt(0.5 (1 + alpha) |d|) * ( -sin(phi)
                                          + cos(phi) i
                                          + (beta cos(phi) + gamma sin(phi)) / (1 + alpha) j
                                          + (gamma cos(phi) - beta sin(phi)) / (1 + alpha) k )
    """
    d = np.asarray(d, dtype=float)
    n = float(np.linalg.norm(d))
    if n <= EPS_DEGENERATE:
        raise DegenerateDirection(f"{label} has no usable direction")
    alpha, beta, gamma = d / n
    if 1.0 + alpha <= EPS_ANTIPODAL:
        raise NearAntipodal(f"{label} points along the negative reference axis")
    s = math.sqrt(0.5 * (1.0 + alpha) * n)
    c, sn = math.cos(phi), math.sin(phi)
    return s * np.array(
        [
            -sn,
            c,
            (beta * c + gamma * sn) / (1.0 + alpha),
            (gamma * c - beta * sn) / (1.0 + alpha),
        ]
    )


def _sym_product(x, y) -> np.ndarray:
    """Vector part of x i y* + y i x*."""
    return _sandwich(x, y) + _sandwich(y, x)


def solve(data: HermiteData, angles: FreeAngles | None = None) -> HermiteSolution:
    """Solve the first-order Hermite problem for the PH quintic preimage.

    Raises DegenerateDirection / NearAntipodal on unusable inputs and
    ResidualTooLarge if the reconstructed segment fails to reproduce the
    endpoint conditions to 1e-8 (scaled).
    """
    if angles is None:
        angles = FreeAngles()
    a0 = preimage_root(data.d_i, angles.phi0, "d_i")
    a2 = preimage_root(data.d_f, angles.phi2, "d_f")
    g = (
        120.0 * (data.p_f - data.p_i)
        - 15.0 * (data.d_f + data.d_i)
        + 5.0 * _sym_product(a0, a2)
    )
    a_mid = preimage_root(g, angles.phi1, "g")
    a1 = -0.75 * (a0 + a2) + 0.25 * a_mid

    preimage = QuaternionPoly(a0, a1, a2)
    ctrl = control_points(preimage, data.p_i)
    res_d_i = float(np.linalg.norm(hodograph(preimage, 0.0) - data.d_i))
    res_d_f = float(np.linalg.norm(hodograph(preimage, 1.0) - data.d_f))
    res_p_f = float(np.linalg.norm(ctrl[5] - data.p_f))

    scale = max(
        1.0,
        float(np.linalg.norm(data.d_i)),
        float(np.linalg.norm(data.d_f)),
        float(np.linalg.norm(data.p_f - data.p_i)),
    )
    worst = max(res_d_i, res_d_f, res_p_f)
    if worst > 1e-8 * scale:
        raise ResidualTooLarge(f"endpoint residual {worst:.3e} exceeds {1e-8 * scale:.3e}")
    return HermiteSolution(a0, a1, a2, g, res_d_i, res_d_f, res_p_f, data)


def end_tangent_from_pose(pose: Pose, speed: float) -> np.ndarray:
    """Tangent vector of magnitude ``speed`` along the pose's forward (body x) axis."""
    if not speed > 0.0:
        raise ValueError("speed must be positive")
    return speed * rotate_by(pose.orientation, X_AXIS)

"""Pythagorean-hodograph quintic curve kernel.

A spatial PH quintic is generated by a quadratic quaternion polynomial

    A(t) = a0 (1-t)^2 + a1 2(1-t)t + a2 t^2

through the hodograph map r'(t) = A(t) i A*(t).  The squared norm
sigma(t) = |A(t)|^2 then equals |r'(t)| exactly, which is what makes the
arc length a closed-form polynomial instead of a numerical integral.

Evaluation uses Bernstein/de Casteljau throughout for numerical stability;
the equivalent power-basis form is kept only as a test oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import comb

import numpy as np

from .geometry import quat_conj, quat_mul

_I_QUAT = np.array([0.0, 1.0, 0.0, 0.0])


def decasteljau(net, t) -> np.ndarray:
    """Evaluate a Bezier polynomial with control net ``net`` at parameter(s) t.

    ``net`` has shape (n+1, d) or (n+1,); t is a scalar or shape (N,).
    Returns shape (d,), (N, d), () or (N,) accordingly.
    """
    net = np.asarray(net, dtype=float)
    t = np.asarray(t, dtype=float)
    scalar_t = t.ndim == 0
    tt = np.atleast_1d(t)[:, None]
    scalar_net = net.ndim == 1
    if scalar_net:
        net = net[:, None]
    beta = np.broadcast_to(net[:, None, :], (net.shape[0], tt.shape[0], net.shape[1])).copy()
    while beta.shape[0] > 1:
        beta = beta[:-1] * (1.0 - tt) + beta[1:] * tt
    out = beta[0]
    if scalar_net:
        out = out[:, 0]
    if scalar_t:
        out = out[0]
    return out


def bezier_to_power(net) -> np.ndarray:
    """Power-basis coefficients (lowest degree first) of a Bezier polynomial."""
    net = np.asarray(net, dtype=float)
    n = net.shape[0] - 1
    coeffs = np.zeros_like(net)
    for m in range(n + 1):
        for k in range(m + 1):
            coeffs[m] += net[k] * (comb(n, k) * comb(n - k, m - k) * (-1.0) ** (m - k))
    return coeffs


@dataclass(frozen=True, eq=False)
class QuaternionPoly:
    """Quadratic Bernstein polynomial with quaternion coefficients (the PH preimage)."""

    a0: np.ndarray
    a1: np.ndarray
    a2: np.ndarray

    def __post_init__(self):
        for name in ("a0", "a1", "a2"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            if arr.shape != (4,):
                raise ValueError(f"{name} must be a quaternion, got shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @property
    def coefficients(self) -> np.ndarray:
        return np.stack([self.a0, self.a1, self.a2])

    def eval(self, t) -> np.ndarray:
        """A(t) in Bernstein form; exact at the endpoints."""
        return decasteljau(self.coefficients, t)


def preimage_eval(p: QuaternionPoly, t) -> np.ndarray:
    """Evaluate the preimage quaternion polynomial at parameter(s) t."""
    return p.eval(t)


def _sandwich(x, y) -> np.ndarray:
    """Vector part of x i y* for quaternions x, y (broadcasts)."""
    return quat_mul(quat_mul(x, _I_QUAT), quat_conj(y))[..., 1:]


def hodograph(p: QuaternionPoly, t) -> np.ndarray:
    """Curve derivative r'(t) = A(t) i A*(t); a 3-vector (or (N, 3))."""
    a = p.eval(t)
    return _sandwich(a, a)


def sigma(p: QuaternionPoly, t) -> np.ndarray:
    """Parametric speed sigma(t) = |A(t)|^2, which equals |r'(t)| exactly."""
    a = p.eval(t)
    return np.sum(a * a, axis=-1)


def sigma_bernstein(p: QuaternionPoly) -> np.ndarray:
    """Degree-4 Bernstein coefficients of sigma(t) = |A(t)|^2."""
    a0, a1, a2 = p.a0, p.a1, p.a2
    return np.array(
        [
            float(a0 @ a0),
            float(a0 @ a1),
            (float(a0 @ a2) + 2.0 * float(a1 @ a1)) / 3.0,
            float(a1 @ a2),
            float(a2 @ a2),
        ]
    )


def hodograph_bernstein(p: QuaternionPoly) -> np.ndarray:
    """Degree-4 Bernstein coefficients (5 rows, 3 columns) of the hodograph."""
    a0, a1, a2 = p.a0, p.a1, p.a2
    w0 = _sandwich(a0, a0)
    w1 = 0.5 * (_sandwich(a0, a1) + _sandwich(a1, a0))
    w2 = (_sandwich(a0, a2) + _sandwich(a2, a0) + 4.0 * _sandwich(a1, a1)) / 6.0
    w3 = 0.5 * (_sandwich(a1, a2) + _sandwich(a2, a1))
    w4 = _sandwich(a2, a2)
    return np.stack([w0, w1, w2, w3, w4])


def control_points(p: QuaternionPoly, p0) -> np.ndarray:
    """The six Bezier control points of the PH quintic with preimage p through p0.

    Each control point advances by one fifth of the corresponding Bernstein
    coefficient of the hodograph, so the quintic's derivative reproduces
    A(t) i A*(t) identically.
    """
    p0 = np.asarray(p0, dtype=float)
    if p0.shape != (3,):
        raise ValueError("p0 must be a 3-vector")
    steps = hodograph_bernstein(p) / 5.0
    pts = np.empty((6, 3))
    pts[0] = p0
    np.cumsum(steps, axis=0, out=pts[1:])
    pts[1:] += p0
    return pts


@dataclass(frozen=True, eq=False)
class PHQuinticSegment:
    """One PH quintic motion segment: preimage, control points, and time span.

    The parameter t in [0, 1] maps affinely to wall time [t_start, t_end].
    """

    preimage: QuaternionPoly
    control: np.ndarray
    t_start: float = 0.0
    t_end: float = 1.0

    def __post_init__(self):
        ctrl = np.asarray(self.control, dtype=float).copy()
        if ctrl.shape != (6, 3):
            raise ValueError(f"control must have shape (6, 3), got {ctrl.shape}")
        if not np.all(np.isfinite(ctrl)):
            raise ValueError("control points must be finite")
        rebuilt = control_points(self.preimage, ctrl[0])
        scale = max(1.0, float(np.max(np.abs(rebuilt))))
        if float(np.max(np.abs(rebuilt - ctrl))) > 1e-9 * scale:
            raise ValueError("control points do not match the preimage hodograph")
        if not (np.isfinite(self.t_start) and np.isfinite(self.t_end)):
            raise ValueError("time span must be finite")
        if self.t_end <= self.t_start:
            raise ValueError("t_end must exceed t_start")
        ctrl.flags.writeable = False
        object.__setattr__(self, "control", ctrl)
        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "t_end", float(self.t_end))

    @classmethod
    def from_preimage(cls, p: QuaternionPoly, p0, t_start: float = 0.0,
                      t_end: float = 1.0) -> "PHQuinticSegment":
        return cls(p, control_points(p, p0), t_start, t_end)

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    def time_to_param(self, tau) -> np.ndarray:
        """Affine wall-time to parameter map, clipped to [0, 1]."""
        return np.clip((np.asarray(tau, dtype=float) - self.t_start) / self.duration, 0.0, 1.0)

    @cached_property
    def _derivative_nets(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        d1 = 5.0 * np.diff(self.control, axis=0)
        d2 = 4.0 * np.diff(d1, axis=0)
        d3 = 3.0 * np.diff(d2, axis=0)
        return d1, d2, d3

    @cached_property
    def _length_ordinates(self) -> np.ndarray:
        # Running sums of the sigma Bernstein coefficients: the arc length is
        # itself a degree-5 Bezier polynomial because sigma >= 0 everywhere.
        s = sigma_bernstein(self.preimage)
        out = np.zeros(6)
        out[1:] = np.cumsum(s) / 5.0
        return out

    def eval(self, t) -> np.ndarray:
        """Point on the curve at parameter(s) t, by de Casteljau."""
        return decasteljau(self.control, t)

    def derivative(self, t, order: int = 1) -> np.ndarray:
        """Exact parametric derivative of the given order (1, 2 or 3)."""
        if order not in (1, 2, 3):
            raise ValueError("order must be 1, 2 or 3")
        return decasteljau(self._derivative_nets[order - 1], t)

    def speed(self, t) -> np.ndarray:
        """|r'(t)| evaluated exactly as sigma(t)."""
        return sigma(self.preimage, t)

    def arc_length(self, t1=1.0) -> np.ndarray:
        """Exact arc length from parameter 0 to t1 (metres)."""
        return decasteljau(self._length_ordinates, t1)

    @property
    def total_length(self) -> float:
        return float(self._length_ordinates[-1])

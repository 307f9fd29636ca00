"""Quaternion, vector, and pose primitives.

Conventions used everywhere in this package:

- quaternions are scalar-first ``[w, x, y, z]`` numpy arrays, Hamilton product;
- an orientation quaternion maps body axes into world axes,
  ``v_world = q v_body q*``;
- Euler angles are intrinsic Z-Y-X (yaw, pitch, roll), radians;
- positions are metres, timestamps are seconds.

All functions broadcast over leading axes: a quaternion argument may be shaped
``(..., 4)`` and a vector argument ``(..., 3)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirection

# Below numerical meaning for metre-scale data.
EPS_DEGENERATE = 1e-12

# Orientation inputs farther than this from unit norm are rejected instead of
# silently renormalised.
UNIT_NORM_TOL = 1e-3

X_AXIS = np.array([1.0, 0.0, 0.0])
Y_AXIS = np.array([0.0, 1.0, 0.0])
Z_AXIS = np.array([0.0, 0.0, 1.0])

IDENTITY_QUAT = np.array([1.0, 0.0, 0.0, 0.0])


def as_vec3(v) -> np.ndarray:
    """Validate and return a finite 3-vector as a float array."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector components must be finite")
    return arr


def as_quat(q) -> np.ndarray:
    """Validate and return a finite quaternion [w, x, y, z] as a float array."""
    arr = np.asarray(q, dtype=float)
    if arr.shape != (4,):
        raise ValueError(f"expected a quaternion, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("quaternion components must be finite")
    return arr


def quat_mul(a, b) -> np.ndarray:
    """Hamilton product a*b; broadcasts over leading axes."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    aw, ax, ay, az = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    bw, bx, by, bz = b[..., 0], b[..., 1], b[..., 2], b[..., 3]
    return np.stack(
        [
            aw * bw - ax * bx - ay * by - az * bz,
            aw * bx + ax * bw + ay * bz - az * by,
            aw * by - ax * bz + ay * bw + az * bx,
            aw * bz + ax * by - ay * bx + az * bw,
        ],
        axis=-1,
    )


def quat_conj(q) -> np.ndarray:
    """Conjugate: negates the vector part."""
    q = np.asarray(q, dtype=float)
    out = q.copy()
    out[..., 1:] = -out[..., 1:]
    return out


def quat_norm(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    return np.linalg.norm(q, axis=-1)


def unit_quat(q, tol: float = UNIT_NORM_TOL) -> np.ndarray:
    """Renormalise a quaternion that is already close to unit norm.

    Raises ValueError when the norm deviates from 1 by more than ``tol``;
    after renormalisation the result is unit to machine precision.
    """
    arr = as_quat(q)
    n = float(np.linalg.norm(arr))
    if abs(n - 1.0) > tol:
        raise ValueError(f"quaternion norm {n:.6g} is not within {tol} of 1")
    return arr / n


def vec_quat(v) -> np.ndarray:
    """Embed a 3-vector as a pure quaternion (0, v)."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (4,))
    out[..., 1:] = v
    return out


def rotate_by(q, v) -> np.ndarray:
    """Rotate vector(s) v by unit quaternion(s) q: vector part of q v q*."""
    return quat_mul(quat_mul(q, vec_quat(v)), quat_conj(q))[..., 1:]


def direction_cosines(v) -> np.ndarray:
    """Unit vector v/|v|, i.e. the direction cosines of v.

    Raises DegenerateDirection when |v| is below numerical meaning.
    """
    v = np.asarray(v, dtype=float)
    n = float(np.linalg.norm(v))
    if n <= EPS_DEGENERATE:
        raise DegenerateDirection(f"|v| = {n:.3g} is too small to normalise")
    return v / n


def quat_from_axis_angle(axis, angle: float) -> np.ndarray:
    axis = direction_cosines(as_vec3(axis))
    half = 0.5 * float(angle)
    out = np.empty(4)
    out[0] = np.cos(half)
    out[1:] = np.sin(half) * axis
    return out


def quat_exp(rotvec) -> np.ndarray:
    """Unit quaternion for a rotation vector (axis * angle); broadcasts."""
    rv = np.asarray(rotvec, dtype=float)
    angle = np.linalg.norm(rv, axis=-1)
    half = 0.5 * angle
    # sin(half)/angle, series-expanded near zero
    small = angle < 1e-8
    with np.errstate(invalid="ignore", divide="ignore"):
        k = np.where(small, 0.5 - angle * angle / 48.0, np.sin(half) / np.where(small, 1.0, angle))
    out = np.empty(rv.shape[:-1] + (4,))
    out[..., 0] = np.cos(half)
    out[..., 1:] = rv * k[..., None]
    return out


def rotvec_from_quat(q) -> np.ndarray:
    """Rotation vector of a unit quaternion, shortest representative; broadcasts."""
    q = np.asarray(q, dtype=float)
    # canonical sign so the angle is in [0, pi]
    q = np.where(q[..., :1] < 0.0, -q, q)
    vec = q[..., 1:]
    s = np.linalg.norm(vec, axis=-1)
    angle = 2.0 * np.arctan2(s, q[..., 0])
    small = s < 1e-12
    with np.errstate(invalid="ignore", divide="ignore"):
        k = np.where(small, 2.0, angle / np.where(small, 1.0, s))
    return vec * k[..., None]


def quat_to_matrix(q) -> np.ndarray:
    """Rotation matrix of unit quaternion(s); output shape (..., 3, 3)."""
    q = np.asarray(q, dtype=float)
    w, x, y, z = q[..., 0], q[..., 1], q[..., 2], q[..., 3]
    row0 = np.stack([1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)], axis=-1)
    row1 = np.stack([2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)], axis=-1)
    row2 = np.stack([2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)], axis=-1)
    return np.stack([row0, row1, row2], axis=-2)


def quat_from_matrix(m) -> np.ndarray:
    """Unit quaternion (w >= 0) of rotation matrix/matrices; shape (..., 3, 3) -> (..., 4).

    Uses the stable per-element branch on the largest diagonal combination.
    """
    m = np.asarray(m, dtype=float)
    m00, m11, m22 = m[..., 0, 0], m[..., 1, 1], m[..., 2, 2]
    # squared quadruple magnitudes (up to a factor of 4)
    tw = 1.0 + m00 + m11 + m22
    tx = 1.0 + m00 - m11 - m22
    ty = 1.0 - m00 + m11 - m22
    tz = 1.0 - m00 - m11 + m22
    choice = np.argmax(np.stack([tw, tx, ty, tz], axis=-1), axis=-1)

    sw = 2.0 * np.sqrt(np.maximum(tw, 1e-300))
    sx = 2.0 * np.sqrt(np.maximum(tx, 1e-300))
    sy = 2.0 * np.sqrt(np.maximum(ty, 1e-300))
    sz = 2.0 * np.sqrt(np.maximum(tz, 1e-300))

    cand = np.empty(m.shape[:-2] + (4, 4))
    cand[..., 0, 0] = 0.25 * sw
    cand[..., 0, 1] = (m[..., 2, 1] - m[..., 1, 2]) / sw
    cand[..., 0, 2] = (m[..., 0, 2] - m[..., 2, 0]) / sw
    cand[..., 0, 3] = (m[..., 1, 0] - m[..., 0, 1]) / sw

    cand[..., 1, 0] = (m[..., 2, 1] - m[..., 1, 2]) / sx
    cand[..., 1, 1] = 0.25 * sx
    cand[..., 1, 2] = (m[..., 0, 1] + m[..., 1, 0]) / sx
    cand[..., 1, 3] = (m[..., 0, 2] + m[..., 2, 0]) / sx

    cand[..., 2, 0] = (m[..., 0, 2] - m[..., 2, 0]) / sy
    cand[..., 2, 1] = (m[..., 0, 1] + m[..., 1, 0]) / sy
    cand[..., 2, 2] = 0.25 * sy
    cand[..., 2, 3] = (m[..., 1, 2] + m[..., 2, 1]) / sy

    cand[..., 3, 0] = (m[..., 1, 0] - m[..., 0, 1]) / sz
    cand[..., 3, 1] = (m[..., 0, 2] + m[..., 2, 0]) / sz
    cand[..., 3, 2] = (m[..., 1, 2] + m[..., 2, 1]) / sz
    cand[..., 3, 3] = 0.25 * sz

    idx = np.broadcast_to(choice[..., None, None], cand.shape[:-2] + (1, 4))
    q = np.take_along_axis(cand, idx, axis=-2)[..., 0, :]
    q = q / np.linalg.norm(q, axis=-1, keepdims=True)
    return np.where(q[..., :1] < 0.0, -q, q)


def quat_slerp(q0, q1, u) -> np.ndarray:
    """Spherical interpolation between two unit quaternions; u in [0, 1], broadcasts over u."""
    q0 = as_quat(q0)
    q1 = as_quat(q1)
    u = np.asarray(u, dtype=float)
    dot = float(np.dot(q0, q1))
    if dot < 0.0:
        q1 = -q1
        dot = -dot
    dot = min(dot, 1.0)
    if dot > 1.0 - 1e-12:
        out = q0 + u[..., None] * (q1 - q0)
        return out / np.linalg.norm(out, axis=-1, keepdims=True)
    omega = np.arccos(dot)
    so = np.sin(omega)
    w0 = np.sin((1.0 - u) * omega) / so
    w1 = np.sin(u * omega) / so
    return w0[..., None] * q0 + w1[..., None] * q1


def quat_from_euler_zyx(yaw: float, pitch: float, roll: float) -> np.ndarray:
    """Quaternion for intrinsic Z-Y-X rotation by (yaw, pitch, roll) radians."""
    qz = quat_from_axis_angle(Z_AXIS, yaw)
    qy = quat_from_axis_angle(Y_AXIS, pitch)
    qx = quat_from_axis_angle(X_AXIS, roll)
    return quat_mul(quat_mul(qz, qy), qx)


def euler_zyx_from_quat(q) -> tuple[float, float, float]:
    """(yaw, pitch, roll) of a unit quaternion under the intrinsic Z-Y-X convention.

    At gimbal lock (|pitch| = pi/2) the representative with roll = 0 is returned.
    """
    m = quat_to_matrix(as_quat(q))
    sp = float(np.clip(-m[2, 0], -1.0, 1.0))
    pitch = float(np.arcsin(sp))
    if 1.0 - abs(sp) > 1e-12:
        yaw = float(np.arctan2(m[1, 0], m[0, 0]))
        roll = float(np.arctan2(m[2, 1], m[2, 2]))
    else:
        yaw = float(np.arctan2(-m[0, 1], m[1, 1]))
        roll = 0.0
    return yaw, pitch, roll


@dataclass(frozen=True, eq=False)
class Pose:
    """A timestamped rigid pose: position (m) plus unit orientation quaternion."""

    t: float
    position: np.ndarray
    orientation: np.ndarray

    def __post_init__(self):
        t = float(self.t)
        if not np.isfinite(t):
            raise ValueError("timestamp must be finite")
        pos = as_vec3(self.position).copy()
        ori = unit_quat(self.orientation)
        pos.flags.writeable = False
        ori.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "position", pos)
        object.__setattr__(self, "orientation", ori)

    def forward_axis(self) -> np.ndarray:
        """World direction of the body x axis (the gaze/heading direction)."""
        return rotate_by(self.orientation, X_AXIS)

    def identity_oriented(self) -> bool:
        return bool(abs(abs(self.orientation[0]) - 1.0) < 1e-12)


def pose_from_euler(x: float, y: float, z: float, yaw: float, pitch: float, roll: float,
                    t: float = 0.0) -> Pose:
    """Build a pose from position and intrinsic Z-Y-X Euler angles (radians)."""
    return Pose(t, np.array([x, y, z], dtype=float), quat_from_euler_zyx(yaw, pitch, roll))


def pose_to_euler(pose: Pose) -> tuple[float, float, float, float, float, float]:
    """(x, y, z, yaw, pitch, roll) of a pose; inverse of pose_from_euler away from gimbal lock."""
    yaw, pitch, roll = euler_zyx_from_quat(pose.orientation)
    x, y, z = (float(c) for c in pose.position)
    return x, y, z, yaw, pitch, roll


def quat_angle_deg(qa, qb) -> np.ndarray:
    """Geodesic angle between unit quaternions in degrees; double cover folded."""
    qa = np.asarray(qa, dtype=float)
    qb = np.asarray(qb, dtype=float)
    dot = np.clip(np.abs(np.sum(qa * qb, axis=-1)), 0.0, 1.0)
    return np.degrees(2.0 * np.arccos(dot))

"""
Horospherical coordinates and the Carnot group N = F^{n-1} x Im F.

Group law:      (xi, v)(xi', v') = (xi + xi', v + v' + 2 Im<xi, xi'>)
Cygan norm:     |(xi, v, u)|_c = | |xi|^2 + u - v |^{1/2}
Boundary map:   [z, t] -> (2 A* z, A* (1 - |z|^2 + t)),  A = 1 + |z|^2 + t,
                A* = A / |A|^2, with [0, 0] -> (0, 1) and infinity -> (0, -1).
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np

from .algebra import ONE, ZERO, Quaternion, as_quaternion, imag_part, q_abs, q_inv
from .errors import DimensionMismatchError, DomainError
from .hermitian import BallPoint, from_complex, qarray, qdot, qnorm, to_complex

logger = logging.getLogger(__name__)

PURE_TOL = 1e-12
INFINITY_TOL = 1e-9


class CarnotInfinity:
    """The point at infinity of the boundary; a singleton sentinel."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "CarnotInfinity"


INFINITY = CarnotInfinity()


def _pure(v, what: str = "v") -> Quaternion:
    q = as_quaternion(v)
    if abs(q.w) > PURE_TOL * max(1.0, q_abs(q)):
        err_msg = f"{what} must be purely imaginary, got real part {q.w:.3g}"
        logger.debug(err_msg)
        raise DomainError(err_msg)
    return imag_part(q)


@dataclass(frozen=True, eq=False)
class CarnotElement:
    """Element (xi, v) of N; v purely imaginary."""

    xi: np.ndarray
    v: Quaternion = ZERO

    def __post_init__(self):
        object.__setattr__(self, "xi", qarray(self.xi))
        object.__setattr__(self, "v", _pure(self.v))

    @classmethod
    def identity(cls, n: int) -> "CarnotElement":
        return cls(np.zeros(n - 1, dtype=np.quaternion), ZERO)

    def __mul__(self, other: "CarnotElement") -> "CarnotElement":
        return carnot_mul(self, other)

    def at_height(self, u: float = 0.0) -> "CarnotPoint":
        return CarnotPoint(self.xi, self.v, u)


@dataclass(frozen=True, eq=False)
class CarnotPoint:
    """Horospherical coordinates (xi, v, u) with u >= 0 (u = 0 on N itself)."""

    xi: np.ndarray
    v: Quaternion = ZERO
    u: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "xi", qarray(self.xi))
        object.__setattr__(self, "v", _pure(self.v))
        if self.u < 0.0:
            raise DomainError(f"Height u must be nonnegative, got {self.u}")
        object.__setattr__(self, "u", float(self.u))

    @property
    def element(self) -> CarnotElement:
        return CarnotElement(self.xi, self.v)


def _im_dot(a: np.ndarray, b: np.ndarray) -> Quaternion:
    if a.shape != b.shape:
        raise DimensionMismatchError(f"Carnot vectors of different sizes: {a.shape} vs {b.shape}")
    if a.shape[0] == 0:
        return ZERO
    return imag_part(qdot(a, b))


def carnot_mul(a: CarnotElement, b: CarnotElement) -> CarnotElement:
    return CarnotElement(a.xi + b.xi, a.v + b.v + 2.0 * _im_dot(a.xi, b.xi))


def carnot_inv(a: CarnotElement) -> CarnotElement:
    return CarnotElement(-a.xi, -a.v)


def carnot_translate(h: CarnotElement, p: CarnotPoint) -> CarnotPoint:
    """T_h: (xi, v, u) -> (xi0 + xi, v0 + v + 2 Im<xi0, xi>, u)."""
    return CarnotPoint(h.xi + p.xi, h.v + p.v + 2.0 * _im_dot(h.xi, p.xi), p.u)


def carnot_dilate(p: CarnotPoint, r: float) -> CarnotPoint:
    """(xi, v, u) -> (r xi, r^2 v, r^2 u)."""
    if r <= 0.0:
        raise DomainError(f"Dilation factor must be positive, got {r}")
    return CarnotPoint(p.xi * r, p.v * (r * r), p.u * r * r)


def carnot_rotate(p: CarnotPoint, m: Optional[np.ndarray] = None, nu: Quaternion = ONE) -> CarnotPoint:
    """
    Rotation by (M, nu) in Sp(n-1) x Sp(1):
    xi -> conj(nu) (xi M) nu, v -> conj(nu) v nu.
    """
    xi = p.xi
    if m is not None:
        xi = from_complex(to_complex(xi) @ to_complex(qarray(m)))[0]
    nu = as_quaternion(nu)
    nb = nu.conjugate()
    xi = np.array([nb * q * nu for q in xi], dtype=np.quaternion)
    return CarnotPoint(xi, nb * p.v * nu, p.u)


def cygan_norm(p: CarnotPoint) -> float:
    a = (qnorm(p.xi) ** 2 + p.u) * ONE - p.v
    return float(math.sqrt(q_abs(a)))


def cygan_dist(p: CarnotPoint, q: CarnotPoint) -> float:
    """| |xi-xi'|^2 + |u-u'| - (v - v' + 2 Im<xi, xi'>) |^{1/2}."""
    real = qnorm(p.xi - q.xi) ** 2 + abs(p.u - q.u)
    imag = p.v - q.v + 2.0 * _im_dot(p.xi, q.xi)
    return float(math.sqrt(q_abs(real * ONE - imag)))


def boundary_to_ball(z: Union[np.ndarray, CarnotInfinity], t: Quaternion = ZERO, n: int = 2) -> BallPoint:
    """
    Map a boundary point [z, t] of the Siegel domain to the unit sphere.

    The scalar factor multiplies z from the left. `n` is only used for the
    point at infinity, which maps to (0, ..., 0, -1).
    """
    if z is INFINITY:
        coords = np.zeros(n, dtype=np.quaternion)
        coords[-1] = -ONE
        return BallPoint(coords)
    z = qarray(z)
    t = _pure(t, "t")
    z2 = qnorm(z) ** 2
    a = (1.0 + z2) * ONE + t
    c = a * (1.0 / q_abs(a) ** 2)
    last = np.array([c * ((1.0 - z2) * ONE + t)], dtype=np.quaternion)
    coords = np.concatenate([2.0 * (c * z), last])
    return BallPoint(coords)


def ball_to_boundary(p: BallPoint) -> Union[Tuple[np.ndarray, Quaternion], CarnotInfinity]:
    """
    Inverse of boundary_to_ball: z = (1 + p_n)^{-1} p', t = 2 Im(p_n) / |1 + p_n|^2.

    Returns INFINITY for (0, ..., 0, -1).
    """
    if not p.is_boundary:
        raise DomainError(f"{p} is not a boundary point")
    pn = p.coords[-1]
    den = ONE + pn
    if q_abs(den) < INFINITY_TOL:
        return INFINITY
    z = q_inv(den) * p.coords[:-1]
    t = imag_part(pn) * (2.0 / q_abs(den) ** 2)
    return z, t


def cygan_distance_to_real_circle(z: np.ndarray, t: Quaternion) -> float:
    """
    min over real x of rho_c([z, t], [(x, 0, ..., 0), 0]).

    rho_c^4 = ((a - x)^2 + b)^2 + |t + 2 x c|^2 with a = Re z_1, c = Im z_1 and
    b = |z|^2 - a^2; the stationary points are the real roots of a cubic.
    """
    z = qarray(z)
    t = _pure(t, "t")
    a = float(z[0].w)
    c = np.array([z[0].x, z[0].y, z[0].z])
    tv = np.array([t.x, t.y, t.z])
    c2 = float(np.dot(c, c))
    b = c2 + qnorm(z[1:]) ** 2 if z.shape[0] > 1 else c2
    tc = float(np.dot(tv, c))

    def quartic(x: float) -> float:
        return ((a - x) ** 2 + b) ** 2 + float(np.dot(tv + 2.0 * x * c, tv + 2.0 * x * c))

    # derivative in y = x - a: 4y^3 + (4b + 8|c|^2) y + 4 t.c + 8 |c|^2 a
    roots = np.roots([4.0, 0.0, 4.0 * b + 8.0 * c2, 4.0 * tc + 8.0 * c2 * a])
    candidates = [float(r.real) + a for r in roots if abs(r.imag) < 1e-9]
    if not candidates:
        candidates = [a]
    best = min(quartic(x) for x in candidates)
    return float(max(best, 0.0) ** 0.25)


def real_circle_offset(p: BallPoint) -> float:
    """Cygan distance of a boundary ball point to the real circle (0 at infinity)."""
    image = ball_to_boundary(p)
    if image is INFINITY:
        return 0.0
    z, t = image
    return cygan_distance_to_real_circle(z, t)

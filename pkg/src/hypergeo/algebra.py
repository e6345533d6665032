"""
Quaternion and octonion arithmetic.

Quaternions are numpy-quaternion scalars (np.quaternion, fields w, x, y, z).
Octonions are Cayley-Dickson pairs of quaternions with the product

    (q1, q2)(p1, p2) = (q1 p1 - conj(p2) q2, p2 q1 + q2 conj(p1))

Scalars act on vectors from the LEFT everywhere in this package.
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Union

import numpy as np
import quaternion  # noqa: F401  (registers np.quaternion)

from .errors import DomainError

logger = logging.getLogger(__name__)

Quaternion = np.quaternion

ZERO = np.quaternion(0.0, 0.0, 0.0, 0.0)
ONE = np.quaternion(1.0, 0.0, 0.0, 0.0)
I = np.quaternion(0.0, 1.0, 0.0, 0.0)
J = np.quaternion(0.0, 0.0, 1.0, 0.0)
K = np.quaternion(0.0, 0.0, 0.0, 1.0)

# Tolerance for "unit" and "purely imaginary" checks on user-supplied scalars
UNIT_TOL = 1e-10


def quat(w: float = 0.0, x: float = 0.0, y: float = 0.0, z: float = 0.0) -> Quaternion:
    """Build a quaternion w + x i + y j + z k."""
    return np.quaternion(float(w), float(x), float(y), float(z))


def as_quaternion(value: Union[Quaternion, complex, float, int]) -> Quaternion:
    """
    Coerce a real, complex or quaternion value to np.quaternion.

    Complex numbers embed as w + x i.
    """
    if isinstance(value, np.quaternion):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        return quat(value.real, value.imag)
    return quat(float(value))


def components(q: Quaternion) -> np.ndarray:
    """Return (w, x, y, z) as a float array."""
    return np.array([q.w, q.x, q.y, q.z], dtype=float)


def q_mul(a: Quaternion, b: Quaternion) -> Quaternion:
    """Hamilton product a·b."""
    return a * b


def q_conj(a: Quaternion) -> Quaternion:
    return a.conjugate()


def q_abs(a: Quaternion) -> float:
    """Euclidean modulus |a| (not the squared norm)."""
    return float(math.sqrt(a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z))


def q_inv(a: Quaternion) -> Quaternion:
    """Multiplicative inverse; raises DomainError on zero."""
    n2 = a.w * a.w + a.x * a.x + a.y * a.y + a.z * a.z
    if n2 == 0.0:
        err_msg = "Cannot invert the zero quaternion"
        logger.debug(err_msg)
        raise DomainError(err_msg)
    return a.conjugate() / n2


def real_part(a: Quaternion) -> float:
    return float(a.w)


def imag_part(a: Quaternion) -> Quaternion:
    """Imaginary part as a quaternion with zero real part."""
    return np.quaternion(0.0, a.x, a.y, a.z)


def imag_abs(a: Quaternion) -> float:
    return float(math.sqrt(a.x * a.x + a.y * a.y + a.z * a.z))


def normalize(a: Quaternion) -> Quaternion:
    n = q_abs(a)
    if n == 0.0:
        raise DomainError("Cannot normalize the zero quaternion")
    return a / n


def is_unit(a: Quaternion, tol: float = UNIT_TOL) -> bool:
    return abs(q_abs(a) - 1.0) <= tol


def rotation_between(a: Quaternion, b: Quaternion) -> Quaternion:
    """
    Unit quaternion nu with conj(nu)·a·nu pointing along b.

    Both arguments are nonzero imaginary quaternions; only their directions matter.
    """
    ua = normalize(imag_part(a))
    ub = normalize(imag_part(b))
    nu = ONE - ub * ua
    if q_abs(nu) < 1e-12:
        # antipodal: rotate by pi about any axis orthogonal to ua
        va = components(ua)[1:]
        trial = np.array([1.0, 0.0, 0.0]) if abs(va[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
        axis = np.cross(va, trial)
        axis /= np.linalg.norm(axis)
        return quat(0.0, *axis)
    # nu·a·conj(nu) = b for nu = 1 - b·a; the caller conjugates the other way
    return normalize(nu).conjugate()


# ---------------------------------------------------------------------------
# Octonions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Octonion:
    """
    Octonion as a Cayley-Dickson pair (a, b) of quaternions.

    Components are ordered (a.w, a.x, a.y, a.z, b.w, b.x, b.y, b.z); the first
    one is the real part.
    """

    a: Quaternion
    b: Quaternion

    @classmethod
    def from_components(cls, values: Iterable[float]) -> "Octonion":
        v = np.asarray(list(values), dtype=float)
        if v.shape != (8,):
            err_msg = f"An octonion needs 8 components, got {v.shape}"
            logger.error(err_msg)
            raise DomainError(err_msg)
        return cls(quat(*v[:4]), quat(*v[4:]))

    @classmethod
    def real(cls, value: float) -> "Octonion":
        return cls(quat(value), ZERO)

    def components(self) -> np.ndarray:
        return np.concatenate([components(self.a), components(self.b)])

    def __mul__(self, other: "Octonion") -> "Octonion":
        return o_mul(self, other)

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(self.a - other.a, self.b - other.b)

    def scaled(self, s: float) -> "Octonion":
        return Octonion(self.a * s, self.b * s)

    def __abs__(self) -> float:
        return o_abs(self)

    def __repr__(self) -> str:
        c = ", ".join(f"{x:.6g}" for x in self.components())
        return f"Octonion({c})"


def o_mul(a: Octonion, b: Octonion) -> Octonion:
    """Cayley-Dickson product (q1,q2)(p1,p2) = (q1p1 - conj(p2)q2, p2q1 + q2conj(p1))."""
    q1, q2 = a.a, a.b
    p1, p2 = b.a, b.b
    return Octonion(q1 * p1 - p2.conjugate() * q2, p2 * q1 + q2 * p1.conjugate())


def o_conj(a: Octonion) -> Octonion:
    return Octonion(a.a.conjugate(), -a.b)


def o_abs(a: Octonion) -> float:
    return float(np.linalg.norm(a.components()))


def o_inv(a: Octonion) -> Octonion:
    n2 = float(np.dot(a.components(), a.components()))
    if n2 == 0.0:
        raise DomainError("Cannot invert the zero octonion")
    return o_conj(a).scaled(1.0 / n2)


def associator(a: Octonion, b: Octonion, c: Octonion) -> Octonion:
    """(ab)c - a(bc); zero for quaternions, generically nonzero for octonions."""
    return o_mul(o_mul(a, b), c) - o_mul(a, o_mul(b, c))


def nonassociative_witness() -> tuple:
    """
    Fixed triple (i, j, l) with associator 2·(0, k), norm 2.

    Here l = (0, 1) is the Cayley-Dickson unit.
    """
    return Octonion(I, ZERO), Octonion(J, ZERO), Octonion(ZERO, ONE)


# ---------------------------------------------------------------------------
# Angles and rotations
# ---------------------------------------------------------------------------

def _real_and_imag_abs(q: Union[Quaternion, Octonion]) -> tuple:
    if isinstance(q, Octonion):
        c = q.components()
        return float(c[0]), float(np.linalg.norm(c[1:]))
    q = as_quaternion(q)
    return float(q.w), imag_abs(q)


def line_angle(q: Union[Quaternion, Octonion]) -> float:
    """
    Angle in [0, pi/2] between q and the real LINE (not ray).

    Equal to arccos(|Re q| / |q|); evaluated with atan2 for accuracy near 0
    and pi/2.

    Raises:
        DomainError: q is zero
    """
    re, im = _real_and_imag_abs(q)
    if re == 0.0 and im == 0.0:
        err_msg = "line_angle is undefined for the zero scalar"
        logger.debug(err_msg)
        raise DomainError(err_msg)
    return float(math.atan2(im, abs(re)))


@dataclass(frozen=True)
class ImaginaryDirection:
    """
    Unit purely imaginary quaternion (3 components) or octonion (7 components).

    Used as the rotation axis of the one-parameter bending subgroup.
    """

    vector: tuple

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=float)
        if v.shape not in ((3,), (7,)):
            err_msg = f"Imaginary direction needs 3 or 7 components, got {v.shape}"
            logger.error(err_msg)
            raise DomainError(err_msg)
        if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
            err_msg = f"Imaginary direction must be a unit vector (|v| = {np.linalg.norm(v):.3g})"
            logger.error(err_msg)
            raise DomainError(err_msg)
        object.__setattr__(self, "vector", tuple(float(x) for x in v))

    @classmethod
    def normalized(cls, values: Iterable[float]) -> "ImaginaryDirection":
        v = np.asarray(list(values), dtype=float)
        n = np.linalg.norm(v)
        if n == 0.0:
            raise DomainError("Zero vector has no direction")
        return cls(tuple(v / n))

    @classmethod
    def from_quaternion(cls, q: Quaternion) -> "ImaginaryDirection":
        if abs(q.w) > UNIT_TOL:
            raise DomainError(f"Axis {q} is not purely imaginary")
        return cls.normalized([q.x, q.y, q.z])

    @property
    def is_octonionic(self) -> bool:
        return len(self.vector) == 7

    def as_quaternion(self) -> Quaternion:
        if self.is_octonionic:
            raise DomainError("Octonionic direction has no quaternion form")
        return quat(0.0, *self.vector)

    def as_octonion(self) -> Octonion:
        v = self.vector if self.is_octonionic else self.vector + (0.0,) * 4
        return Octonion.from_components((0.0,) + tuple(v))


def unit_rotation(axis: ImaginaryDirection, eta: float) -> Union[Quaternion, Octonion]:
    """
    Unit scalar nu = cos(eta) + sin(eta)·axis.

    Conjugation v -> conj(nu) v nu rotates the imaginary plane orthogonal to
    axis by 2·eta, while left multiplication of a real vector turns it by eta.
    """
    if axis.is_octonionic:
        return Octonion.real(math.cos(eta)) + axis.as_octonion().scaled(math.sin(eta))
    return math.cos(eta) * ONE + math.sin(eta) * axis.as_quaternion()


def conjugation_rotation_angle(nu: Quaternion) -> float:
    """Angle in [0, pi] by which v -> conj(nu) v nu rotates imaginary space."""
    if not is_unit(nu, 1e-8):
        raise DomainError(f"{nu} is not a unit quaternion")
    return float(2.0 * math.atan2(imag_abs(nu), abs(nu.w)))


def random_quaternion(rng: np.random.Generator, field: str = "H") -> Quaternion:
    """Gaussian random scalar in the given field (R, C or H)."""
    v = rng.normal(size=4)
    if field == "R":
        v[1:] = 0.0
    elif field == "C":
        v[2:] = 0.0
    return quat(*v)


def random_unit_quaternion(rng: np.random.Generator, field: str = "H") -> Quaternion:
    if field == "R":
        return ONE if rng.random() < 0.5 else -ONE
    return normalize(random_quaternion(rng, field))


def random_octonion(rng: np.random.Generator) -> Octonion:
    return Octonion.from_components(rng.normal(size=8))


def random_unit_octonion(rng: np.random.Generator) -> Octonion:
    v = rng.normal(size=8)
    return Octonion.from_components(v / np.linalg.norm(v))


def approx_equal(a: Quaternion, b: Quaternion, tol: float = 1e-12) -> bool:
    return q_abs(a - b) <= tol


def format_quaternion(q: Quaternion, digits: Optional[int] = 6) -> str:
    """Render as e.g. '0.5-0.25i+1j' (zero parts omitted, '0' for zero)."""
    parts = []
    for value, unit in zip(components(q), ("", "i", "j", "k")):
        if value == 0.0:
            continue
        text = f"{value:.{digits}g}" if digits else repr(float(value))
        if parts and not text.startswith("-"):
            text = "+" + text
        parts.append(text + unit)
    return "".join(parts) if parts else "0"

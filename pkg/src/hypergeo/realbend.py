"""
Real bending inside the octonionic hyperbolic line H^1_O = H^8_R.

Points of the 8-ball are read as octonions (ball coordinate 0 is the real
part). Matrices are real 9x9, act on row vectors from the right and preserve
diag(1, ..., 1, -1). The totally geodesic H^4_R is the span of coordinates
0..3; the bending hyperplane P inside it is coordinates 1..3, and the SO(5)
fixing P pointwise acts on coordinates 0, 4, 5, 6, 7.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import List, Tuple, Union

import numpy as np
from scipy.linalg import expm

from .algebra import Octonion
from .errors import DomainError, GroupDataError
from .geometry import move_to_standard
from .groups import GroupData, LimitSetSampler
from .hermitian import BallPoint, Isometry, form_matrix
from .invariants import octonion_angular

logger = logging.getLogger(__name__)

SIZE = 9
H4_COORDS = (0, 1, 2, 3, 8)
SO5_COORDS = (0, 4, 5, 6, 7)
FORM_TOL = 1e-10

_J = form_matrix(SIZE - 1)


def lorentz_residual(m: np.ndarray) -> float:
    """max |M J M^T - J|."""
    return float(np.max(np.abs(m @ _J @ m.T - _J)))


def lorentz_inverse(m: np.ndarray) -> np.ndarray:
    return _J @ m.T @ _J


def boost(axis: int, r: float) -> np.ndarray:
    """Boost by hyperbolic angle r in the (x_axis, x_8) plane."""
    m = np.eye(SIZE)
    m[axis, axis] = m[SIZE - 1, SIZE - 1] = math.cosh(r)
    m[axis, SIZE - 1] = m[SIZE - 1, axis] = math.sinh(r)
    return m


def preserves_h4(m: np.ndarray, tol: float = FORM_TOL) -> bool:
    """True iff M maps span(e_0..e_3, e_8) into itself (H^4_R is invariant)."""
    inside = list(H4_COORDS)
    outside = [i for i in range(SIZE) if i not in H4_COORDS]
    return bool(np.max(np.abs(m[np.ix_(inside, outside)])) <= tol)


def so5_rotation(theta: Union[float, np.ndarray]) -> np.ndarray:
    """
    Element of the SO(5) fixing P pointwise, as a 9x9 matrix.

    A float is the rotation angle in the (x_0, x_4) plane; a 5x5 skew matrix
    is exponentiated (coordinates ordered as SO5_COORDS).
    """
    if np.isscalar(theta):
        gen = np.zeros((5, 5))
        gen[0, 1], gen[1, 0] = -float(theta), float(theta)
    else:
        gen = np.asarray(theta, dtype=float)
        if gen.shape != (5, 5) or np.max(np.abs(gen + gen.T)) > 1e-12:
            err_msg = f"SO(5) generator must be a 5x5 skew matrix, got shape {gen.shape}"
            logger.error(err_msg)
            raise DomainError(err_msg)
    block = expm(gen)
    m = np.eye(SIZE)
    m[np.ix_(SO5_COORDS, SO5_COORDS)] = block
    return m


@dataclass(frozen=True, eq=False)
class RealBendData:
    """Real generators of an amalgam or HNN group acting on H^8_R."""

    kind: str
    axis: np.ndarray
    gamma1: Tuple[np.ndarray, ...]
    gamma2: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.kind not in ("amalgam", "hnn"):
            raise GroupDataError(f"Unknown decomposition kind '{self.kind}'")
        object.__setattr__(self, "axis", np.asarray(self.axis, dtype=float))
        object.__setattr__(self, "gamma1", tuple(np.asarray(g, dtype=float) for g in self.gamma1))
        object.__setattr__(self, "gamma2", tuple(np.asarray(g, dtype=float) for g in self.gamma2))
        if self.kind == "hnn" and len(self.gamma2) != 1:
            raise GroupDataError("HNN data needs exactly one extra generator")
        for g in self.generators():
            if g.shape != (SIZE, SIZE):
                raise GroupDataError(f"Real bending generators must be {SIZE}x{SIZE}, got {g.shape}")
        res = self.max_residual()
        if res > 1e-9:
            err_msg = f"Generators do not preserve the (8,1) form (max residual {res:.3e})"
            logger.error(err_msg)
            raise GroupDataError(err_msg)

    def generators(self) -> List[np.ndarray]:
        return [self.axis, *self.gamma1, *self.gamma2]

    def max_residual(self) -> float:
        return max(lorentz_residual(g) for g in self.generators())

    def preserves_h4(self) -> bool:
        return all(preserves_h4(g) for g in self.generators())

    def as_group_data(self) -> GroupData:
        """The same group as real isometries of the 8-ball (no axis normalization)."""
        return GroupData(self.kind, Isometry.from_real(self.axis),
                         tuple(Isometry.from_real(g) for g in self.gamma1),
                         tuple(Isometry.from_real(g) for g in self.gamma2),
                         field_name="R", check_axis=False)


def real_bend_octonion_line(D: RealBendData, theta: Union[float, np.ndarray]) -> RealBendData:
    """
    Bend along P by the SO(5) element so5_rotation(theta): Gamma_2 generators
    are conjugated (amalgam) or gamma_2 is multiplied on the left (HNN).

    Raises:
        GroupDataError: the input generators do not preserve H^4_R
    """
    if not D.preserves_h4():
        err_msg = "Real bending needs generators preserving H^4_R"
        logger.error(err_msg)
        raise GroupDataError(err_msg)
    r = so5_rotation(theta)
    if D.kind == "amalgam":
        ri = lorentz_inverse(r)
        return replace(D, gamma2=tuple(r @ g @ ri for g in D.gamma2))
    return replace(D, gamma2=(r @ D.gamma2[0],))


def real_bend_example(eps: float = 0.5, offset: float = 1.5, r: float = 0.5,
                      kind: str = "amalgam") -> RealBendData:
    """
    Fuchsian-type group of H^4_R: the axis generator translates along the
    x_1 direction inside P; Gamma_1 and Gamma_2 generators translate along
    axes pushed to the x_0 < 0 and x_0 > 0 sides of P.
    """
    base = boost(1, r)

    def pushed(d: float) -> np.ndarray:
        h = boost(0, d)
        return lorentz_inverse(h) @ base @ h

    return RealBendData(kind, boost(1, eps / 2.0), (pushed(-offset),), (pushed(offset),))


def ball_to_octonion(p: BallPoint) -> Octonion:
    if p.n != SIZE - 1:
        raise DomainError(f"Expected a point of the 8-ball, got dimension {p.n}")
    return Octonion.from_components([q.w for q in p.coords])


def h4_offset(o: Octonion) -> float:
    """Euclidean distance of a unit octonion from the boundary sphere of H^4_R."""
    return float(np.linalg.norm(o.components()[4:]))


def real_limit_sample(D: RealBendData, word_length: int = 6, count: int = 32,
                      seed: int = 7) -> List[Octonion]:
    sampler = LimitSetSampler(D.as_group_data(), word_length, seed)
    return [ball_to_octonion(p) for _, p in sampler.sample(count)]


def octonion_line_angular(x1: Octonion, x2: Octonion, x3: Octonion) -> float:
    """
    Angular invariant of three boundary points of H^1_O.

    (x1, x2) is moved to the real points (-1, 1) by a real isometry; in that
    position the last ball coordinate is the real axis, so the third image is
    re-read with it as the real part.
    """
    pts = []
    for o in (x1, x2, x3):
        c = o.components()
        nrm = float(np.linalg.norm(c))
        if abs(nrm - 1.0) > 1e-9:
            raise DomainError(f"{o} is not a unit octonion")
        pts.append(BallPoint(c / nrm))
    g = move_to_standard(pts[0], pts[1])
    image = np.array([q.w for q in g.apply(pts[2]).coords])
    return octonion_angular(Octonion.from_components(np.concatenate([image[-1:], image[:-1]])))

"""
Geodesics, F-lines, orthogonal projection, bisectors and Dirichlet half-spaces.

Bisectors and half-spaces are kept implicit (their two centers) and
evaluated through distance predicates.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .algebra import ONE, Quaternion, imag_abs, q_abs, q_inv
from .errors import (
    DomainError,
    OutsideConeError,
    SingularSystemError,
)
from .hermitian import (
    BallPoint,
    HVector,
    Isometry,
    Triple,
    ball_point_from_lift,
    distance,
    form,
    form_real,
    from_complex,
    gram,
    lift,
    orthonormalize,
    qarray,
    qnorm,
    random_ball_point,
    to_complex,
    _signs,
)

logger = logging.getLogger(__name__)

GEOMETRIC_TOL = 1e-9
GRAM_DET_TOL = 1e-12


def _standard_null_lifts(n: int):
    minus = np.zeros(n + 1, dtype=np.quaternion)
    plus = np.zeros(n + 1, dtype=np.quaternion)
    minus[n - 1], minus[n] = -ONE, ONE
    plus[n - 1], plus[n] = ONE, ONE
    return HVector(minus), HVector(plus)


def standard_pair(n: int = 2):
    """The boundary points (0, ..., 0, -1) and (0, ..., 0, 1)."""
    minus, plus = _standard_null_lifts(n)
    return ball_point_from_lift(minus, boundary=True), ball_point_from_lift(plus, boundary=True)


def normalized_lift(p: BallPoint) -> HVector:
    """Lift of an interior point scaled to <<v, v>> = -1."""
    v = lift(p)
    val = form_real(v)
    if val >= 0.0:
        raise DomainError(f"{p} is not an interior point")
    return v.scaled(1.0 / math.sqrt(-val))


def aligned_lifts(p: BallPoint, q: BallPoint):
    """
    Normalized lifts (p^, q^) of interior points with <<p^, q^>> = -cosh(d/2) real.
    """
    ph, qh = normalized_lift(p), normalized_lift(q)
    k = form(ph, qh)
    mod = q_abs(k)
    # <<p^, lam q^>> = k conj(lam) = -|k|
    lam = (-(q_inv(k) * mod)).conjugate()
    return ph, qh.scaled(lam), mod


# ---------------------------------------------------------------------------
# F-lines
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FLine:
    """
    F-line spanned by the lifts a, b; the cached Gram matrix has signature (1, 1).
    """

    a: HVector
    b: HVector
    gram_matrix: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        g = gram([self.a, self.b])
        gc = to_complex(g)
        det = abs(np.linalg.det(gc))
        if det < GRAM_DET_TOL:
            err_msg = f"F-line spanning vectors are degenerate (|det Gram| = {det:.3e})"
            logger.debug(err_msg)
            raise SingularSystemError(err_msg)
        eig = np.linalg.eigvalsh((gc + gc.conj().T) / 2.0)
        if int(np.sum(eig > 0)) != 2 or int(np.sum(eig < 0)) != 2:
            err_msg = "F-line Gram matrix does not have signature (1, 1)"
            logger.debug(err_msg)
            raise SingularSystemError(err_msg)
        object.__setattr__(self, "gram_matrix", g)

    @classmethod
    def through(cls, p: BallPoint, q: BallPoint) -> "FLine":
        if p.chordal(q) <= GRAM_DET_TOL:
            raise DomainError("An F-line needs two distinct points")
        return cls(lift(p), lift(q))

    @classmethod
    def standard(cls, n: int = 2) -> "FLine":
        """The line {(0, ..., 0, zeta)} through (0, -1) and (0, 1)."""
        return cls(*_standard_null_lifts(n))

    @property
    def n(self) -> int:
        return self.a.size - 1

    def coefficients(self, v: HVector) -> np.ndarray:
        """Left coefficients c with c G = (<<v, a>>, <<v, b>>)."""
        r = qarray([form(v, self.a), form(v, self.b)])
        cc = np.linalg.solve(to_complex(self.gram_matrix).T, to_complex(r).T).T
        return from_complex(cc)[0]

    def project_lift(self, v: HVector) -> HVector:
        c = self.coefficients(v)
        return self.a.scaled(c[0]) + self.b.scaled(c[1])

    def residual(self, p: BallPoint) -> float:
        """Relative size of the lift component orthogonal to the line."""
        v = lift(p)
        return qnorm((v - self.project_lift(v)).coords) / qnorm(v.coords)

    def contains(self, p: BallPoint, tol: float = GEOMETRIC_TOL) -> bool:
        return self.residual(p) <= tol


def project_to_fline(line: FLine, p: BallPoint) -> BallPoint:
    """
    Orthogonal projection onto an F-line via the left-coefficient Gram solve.

    Boundary points of the line map to themselves.

    Raises:
        OutsideConeError: the projected lift is positive
    """
    proj = line.project_lift(lift(p))
    scale = qnorm(proj.coords) ** 2
    if scale == 0.0:
        raise OutsideConeError(f"{p} is orthogonal to the whole line")
    val = form_real(proj) / scale
    if val > GEOMETRIC_TOL:
        err_msg = f"Projection of {p} has a positive lift ({val:.3e})"
        logger.debug(err_msg)
        raise OutsideConeError(err_msg)
    return ball_point_from_lift(proj, boundary=abs(val) <= GEOMETRIC_TOL)


def pythagoras_check(p: BallPoint, line: FLine, s: BallPoint) -> float:
    """|cosh(d(z,s)/2) - cosh(d(z,Pz)/2) cosh(d(Pz,s)/2)| for s on the line."""
    pz = project_to_fline(line, p)
    lhs = math.cosh(distance(p, s) / 2.0)
    rhs = math.cosh(distance(p, pz) / 2.0) * math.cosh(distance(pz, s) / 2.0)
    return abs(lhs - rhs)


# ---------------------------------------------------------------------------
# Geodesics
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Geodesic:
    """
    Real geodesic between two boundary points a (s -> -inf) and b (s -> +inf).

    With null lifts u of a and v = (b, 1), scaled so <<u, v>> = -2, the point
    at arc length s is the projectivization of (e^{-s/2} u + e^{s/2} v) / 2.
    """

    a: BallPoint
    b: BallPoint
    u: HVector = field(init=False, repr=False)
    v: HVector = field(init=False, repr=False)

    def __post_init__(self):
        if not (self.a.is_boundary and self.b.is_boundary):
            raise DomainError("Geodesic endpoints must be boundary points")
        if self.a.chordal(self.b) <= GRAM_DET_TOL:
            raise DomainError("Geodesic endpoints coincide")
        u, v = lift(self.a), lift(self.b)
        k = form(u, v)
        object.__setattr__(self, "u", u.scaled(-2.0 * q_inv(k)))
        object.__setattr__(self, "v", v)

    def point(self, s: float) -> BallPoint:
        w = self.u.scaled(0.5 * math.exp(-s / 2.0)) + self.v.scaled(0.5 * math.exp(s / 2.0))
        return ball_point_from_lift(w)


def geodesic_point(g: Geodesic, s: float) -> BallPoint:
    return g.point(s)


def geodesic_through(p: BallPoint, q: BallPoint) -> Geodesic:
    """Complete geodesic through two distinct interior points, oriented from p to q."""
    if p.chordal(q) <= GRAM_DET_TOL:
        raise DomainError("Geodesic through coincident points")
    ph, qh, c = aligned_lifts(p, q)
    grow = c + math.sqrt(max(c * c - 1.0, 0.0))  # e^{d/2}
    beyond_q = qh - ph.scaled(1.0 / grow)
    beyond_p = qh - ph.scaled(grow)
    return Geodesic(ball_point_from_lift(beyond_p, boundary=True),
                    ball_point_from_lift(beyond_q, boundary=True))


def segment_point(p: BallPoint, q: BallPoint, tau: float) -> BallPoint:
    """Point of the geodesic segment [p, q] at real lift weight tau in [0, 1]."""
    ph, qh, _ = aligned_lifts(p, q)
    return ball_point_from_lift(ph.scaled(1.0 - tau) + qh.scaled(tau))


def distance_to_geodesic(p: BallPoint, g: Geodesic, span: float = 20.0) -> float:
    """Distance from an interior point to a geodesic (grid bracket, then bounded Brent)."""
    grid = np.linspace(-span, span, 161)
    values = [distance(p, g.point(s)) for s in grid]
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(lambda s: distance(p, g.point(s)), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-12})
    return float(min(res.fun, values[i]))


# ---------------------------------------------------------------------------
# Standard position
# ---------------------------------------------------------------------------

def move_to_standard(x1: BallPoint, x2: BallPoint) -> Isometry:
    """
    Isometry g with g(x1) = (0, -1) and g(x2) = (0, 1).

    The null lifts are rescaled so <<u1, u2>> = -2, completed to a form-adapted
    basis by indefinite Gram-Schmidt, and that basis is mapped onto
    (e_1, ..., e_{n-1}, (0, -1, 1), (0, 1, 1)).
    """
    if not (x1.is_boundary and x2.is_boundary):
        raise DomainError("move_to_standard expects boundary points")
    if x1.chordal(x2) <= GRAM_DET_TOL:
        raise DomainError("move_to_standard needs distinct points")
    n = x1.n
    u2 = lift(x2)
    u1 = lift(x1)
    u1 = u1.scaled(-2.0 * q_inv(form(u1, u2)))
    h1 = (u1 + u2).scaled(0.5)
    h2 = (u2 - u1).scaled(0.5)
    eye = [row for row in np.eye(n + 1)]
    complement = orthonormalize(eye, signs=_signs(n + 1), against=[h1.coords, h2.coords], limit=n - 1)
    if len(complement) != n - 1:
        raise SingularSystemError("Could not complete the basis of the standard frame")
    source = np.array(complement + [u1.coords, u2.coords], dtype=np.quaternion)
    minus, plus = _standard_null_lifts(n)
    target = np.zeros((n + 1, n + 1), dtype=np.quaternion)
    for i in range(n - 1):
        target[i, i] = ONE
    target[n - 1] = minus.coords
    target[n] = plus.coords
    sc = to_complex(source)
    if np.linalg.cond(sc) > 1e12:
        raise SingularSystemError("Standard-frame basis change is singular")
    return Isometry.from_complex_embedding(np.linalg.solve(sc, to_complex(target)))


def dist_to_spine(x: Triple) -> float:
    """
    Distance from the projection of x3 onto the F-line of (x1, x2) to the
    geodesic (x1, x2): asinh(2|Im z_n| / (1 - |z_n|^2)) in standard position.

    Returns 0 for x3 on the boundary of that geodesic and math.inf when the
    projection is itself a boundary point.
    """
    g = move_to_standard(x.p1, x.p2)
    image = g.apply(x.p3)
    zn = image.coords[-1]
    r = q_abs(zn)
    im = imag_abs(zn)
    if r >= 1.0 - GEOMETRIC_TOL:
        return 0.0 if im < GEOMETRIC_TOL else math.inf
    return float(math.asinh(2.0 * im / (1.0 - r * r)))


# ---------------------------------------------------------------------------
# Bisectors and Dirichlet domains
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Bisector:
    """Equidistant set of two distinct interior points."""

    z1: BallPoint
    z2: BallPoint

    def __post_init__(self):
        if self.z1.is_boundary or self.z2.is_boundary:
            raise DomainError("Bisector centers must be interior points")
        if self.z1.chordal(self.z2) <= GRAM_DET_TOL:
            raise DomainError("Bisector centers coincide")

    @property
    def complex_spine(self) -> FLine:
        """The F-line through z1 and z2."""
        return FLine.through(self.z1, self.z2)


def bisector_contains(b: Bisector, p: BallPoint) -> float:
    """Signed residual d(p, z1) - d(p, z2); membership iff |residual| < 1e-9."""
    return distance(p, b.z1) - distance(p, b.z2)


def spine_point(b: Bisector) -> BallPoint:
    """Midpoint of the geodesic segment [z1, z2]."""
    ph, qh, _ = aligned_lifts(b.z1, b.z2)
    return ball_point_from_lift(ph + qh)


def bisector_point_on_ray(b: Bisector, p: BallPoint, q: BallPoint) -> BallPoint:
    """
    Point where the segment [p, q] crosses the bisector (Brent root finding).

    Raises:
        DomainError: the residual has the same sign at both ends
    """
    f = lambda tau: bisector_contains(b, segment_point(p, q, tau))  # noqa: E731
    fa, fb = f(0.0), f(1.0)
    if fa == 0.0:
        return p
    if fb == 0.0:
        return q
    if fa * fb > 0.0:
        raise DomainError("Segment does not cross the bisector")
    tau = brentq(f, 0.0, 1.0, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    return segment_point(p, q, tau)


def halfspace_side(z: BallPoint, w: BallPoint, y: BallPoint, tol: float = GEOMETRIC_TOL) -> int:
    """+1 if y is strictly closer to z than to w, -1 if closer to w, 0 on the bisector."""
    diff = distance(y, w) - distance(y, z)
    if abs(diff) < tol:
        return 0
    return 1 if diff > 0 else -1


def dirichlet_membership(center: BallPoint, orbit: Sequence[BallPoint], x: BallPoint,
                         tol: float = GEOMETRIC_TOL) -> bool:
    """
    True iff d(x, center) < d(x, o) for every supplied orbit point (strict,
    with tolerance). An empty orbit is vacuously true and logs EMPTY_ORBIT.
    """
    if not orbit:
        logger.warning("EMPTY_ORBIT: Dirichlet membership against an empty orbit is vacuously true")
        return True
    dc = distance(x, center)
    return all(distance(x, o) - dc > tol for o in orbit)


def standard_bisector(a: float, n: int = 2) -> Bisector:
    """Bisector of (0, -a) and (0, a); its spine is {(0, zeta) : Re zeta = 0}."""
    z1 = np.zeros(n, dtype=np.quaternion)
    z2 = np.zeros(n, dtype=np.quaternion)
    z1[-1], z2[-1] = -a * ONE, a * ONE
    return Bisector(BallPoint(z1), BallPoint(z2))


def slice_points(spine_value: Quaternion, rng: np.random.Generator, count: int,
                 n: int = 2, field_name: str = "H") -> List[BallPoint]:
    """Random points (w, zeta_s) of the slice over (0, zeta_s) of a standard bisector."""
    room = math.sqrt(max(1.0 - q_abs(spine_value) ** 2, 0.0))
    out = []
    for _ in range(count):
        w = random_ball_point(rng, n - 1, field_name, max_radius=0.999).coords * room
        out.append(BallPoint(np.concatenate([w, np.array([spine_value], dtype=np.quaternion)])))
    return out

"""
The indefinite Hermitian space F^{n,1} (F = R, C or H) and its ball model.

Conventions:
- vectors are rows, scalars multiply from the left, matrices act on the right
  (z -> z A) and ball coordinates of a lift z are z_{n+1}^{-1} (z_1, ..., z_n);
- <<z, w>> = z_1 conj(w_1) + ... + z_n conj(w_n) - z_{n+1} conj(w_{n+1});
- distances are normalized so F-lines carry the curvature -1 Poincare metric.

Quaternion matrices are multiplied, inverted and diagonalized through the
complex 2x2 block embedding q = a + b j -> [[a, b], [-conj(b), conj(a)]].
"""

import logging
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import quaternion

from .algebra import (
    ONE,
    Quaternion,
    as_quaternion,
    format_quaternion,
    q_abs,
    q_inv,
    random_quaternion,
    random_unit_quaternion,
)
from .errors import (
    DegenerateTripleError,
    DimensionMismatchError,
    DomainError,
    GroupDataError,
    InfiniteDistanceError,
)

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-9
# Lifts whose ball image overshoots the sphere by less than this are snapped back
SNAP_TOL = 1e-6
DEGENERATE_TOL = 1e-12
PIVOT_TOL = 1e-10
LOXODROMIC_TOL = 1e-8


# ---------------------------------------------------------------------------
# Quaternion array helpers
# ---------------------------------------------------------------------------

def qarray(values: Iterable) -> np.ndarray:
    """Quaternion-dtype array from reals, complex numbers or quaternions."""
    if isinstance(values, np.ndarray) and values.dtype == np.quaternion:
        return values.copy()
    items = list(values)
    if items and isinstance(items[0], (list, tuple, np.ndarray)):
        return np.array([qarray(row) for row in items], dtype=np.quaternion)
    return np.array([as_quaternion(v) for v in items], dtype=np.quaternion)


def to_complex(mat: np.ndarray) -> np.ndarray:
    """Complex 2m x 2k image of a quaternion m x k matrix (rows for 1-d input)."""
    arr = np.asarray(mat)
    if arr.ndim == 1:
        arr = arr[np.newaxis, :]
    f = quaternion.as_float_array(arr)
    alpha = f[..., 0] + 1j * f[..., 1]
    beta = f[..., 2] + 1j * f[..., 3]
    m, k = arr.shape
    out = np.empty((2 * m, 2 * k), dtype=complex)
    out[0::2, 0::2] = alpha
    out[0::2, 1::2] = beta
    out[1::2, 0::2] = -np.conj(beta)
    out[1::2, 1::2] = np.conj(alpha)
    return out


def from_complex(c: np.ndarray) -> np.ndarray:
    """Inverse of to_complex (reads the even rows; assumes the block structure)."""
    alpha = c[0::2, 0::2]
    beta = c[0::2, 1::2]
    f = np.stack([alpha.real, alpha.imag, beta.real, beta.imag], axis=-1)
    return quaternion.from_float_array(f)


def qnorm(values: np.ndarray) -> float:
    """Euclidean norm of a quaternion array."""
    return float(np.linalg.norm(quaternion.as_float_array(np.asarray(values))))


def qdot(a: np.ndarray, b: np.ndarray) -> Quaternion:
    """Positive definite product sum a_i conj(b_i)."""
    return from_complex(to_complex(a) @ to_complex(b).conj().T)[0, 0]


def scale_left(lam: Quaternion, values: np.ndarray) -> np.ndarray:
    return lam * np.asarray(values)


@lru_cache(maxsize=32)
def _signs(m: int) -> np.ndarray:
    s = np.ones(m)
    s[-1] = -1.0
    return s


@lru_cache(maxsize=32)
def _form_complex(m: int) -> np.ndarray:
    return np.diag(np.repeat(_signs(m), 2)).astype(complex)


def form_matrix(n: int) -> np.ndarray:
    """Real J = diag(1, ..., 1, -1) of size n+1."""
    return np.diag(_signs(n + 1))


# ---------------------------------------------------------------------------
# Vectors and points
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class HVector:
    """Row vector in F^{n,1}; the last coordinate is the negative one."""

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", qarray(self.coords))
        if self.coords.ndim != 1 or self.coords.shape[0] < 2:
            raise DimensionMismatchError(f"HVector needs at least 2 coordinates, got {self.coords.shape}")

    @property
    def size(self) -> int:
        return int(self.coords.shape[0])

    def scaled(self, lam) -> "HVector":
        """Left scalar multiple lam·z."""
        return HVector(as_quaternion(lam) * self.coords)

    def __add__(self, other: "HVector") -> "HVector":
        _check_same_size(self.coords, other.coords)
        return HVector(self.coords + other.coords)

    def __sub__(self, other: "HVector") -> "HVector":
        _check_same_size(self.coords, other.coords)
        return HVector(self.coords - other.coords)

    def __repr__(self) -> str:
        return "HVector(" + ", ".join(format_quaternion(q) for q in self.coords) + ")"


def _check_same_size(a: np.ndarray, b: np.ndarray):
    if a.shape != b.shape:
        err_msg = f"Dimension mismatch: {a.shape} vs {b.shape}"
        logger.debug(err_msg)
        raise DimensionMismatchError(err_msg)


@dataclass(frozen=True, eq=False)
class BallPoint:
    """
    Point of the closed unit ball in F^n.

    Points with norm in [1 - 1e-9, 1 + 1e-9] are boundary points; larger
    norms are rejected.
    """

    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", qarray(self.coords))
        if self.coords.ndim != 1 or self.coords.shape[0] < 1:
            raise DimensionMismatchError(f"Ball point needs a 1-d coordinate array, got {self.coords.shape}")
        r = qnorm(self.coords)
        if r > 1.0 + BOUNDARY_TOL:
            err_msg = f"Point of norm {r:.12g} lies outside the closed unit ball"
            logger.debug(err_msg)
            raise DomainError(err_msg)

    @classmethod
    def of(cls, *entries) -> "BallPoint":
        return cls(qarray(entries))

    @classmethod
    def origin(cls, n: int) -> "BallPoint":
        return cls(np.zeros(n, dtype=np.quaternion))

    @property
    def n(self) -> int:
        return int(self.coords.shape[0])

    @property
    def norm(self) -> float:
        return qnorm(self.coords)

    @property
    def is_boundary(self) -> bool:
        return self.norm >= 1.0 - BOUNDARY_TOL

    @property
    def is_interior(self) -> bool:
        return not self.is_boundary

    @property
    def kind(self) -> str:
        return "boundary" if self.is_boundary else "interior"

    def as_float(self) -> np.ndarray:
        """(n, 4) float array of quaternion components."""
        return quaternion.as_float_array(self.coords)

    def chordal(self, other: "BallPoint") -> float:
        _check_same_size(self.coords, other.coords)
        return qnorm(self.coords - other.coords)

    def __repr__(self) -> str:
        inner = ", ".join(format_quaternion(q) for q in self.coords)
        return f"BallPoint({inner}; {self.kind})"


# Readability aliases; the kind lives on the instance
InteriorPoint = BallPoint
BoundaryPoint = BallPoint


@dataclass(frozen=True, eq=False)
class Triple:
    """Three pairwise distinct ball points."""

    p1: BallPoint
    p2: BallPoint
    p3: BallPoint

    def __post_init__(self):
        pts = self.points
        for a, b in ((0, 1), (1, 2), (2, 0)):
            if pts[a].chordal(pts[b]) <= DEGENERATE_TOL:
                err_msg = f"Triple has coincident points x{a + 1} and x{b + 1}"
                logger.debug(err_msg)
                raise DegenerateTripleError(err_msg)

    @property
    def points(self) -> Tuple[BallPoint, BallPoint, BallPoint]:
        return (self.p1, self.p2, self.p3)

    def permuted(self, order: Sequence[int]) -> "Triple":
        pts = self.points
        return Triple(*(pts[i] for i in order))

    def mapped(self, isometry: "Isometry") -> "Triple":
        return Triple(*(isometry.apply(p) for p in self.points))

    def __iter__(self):
        return iter(self.points)


# ---------------------------------------------------------------------------
# Form, lifts, distance, triple product
# ---------------------------------------------------------------------------

def form(z: HVector, w: HVector) -> Quaternion:
    """<<z, w>> with the last coordinate negative; left-linear in z."""
    _check_same_size(z.coords, w.coords)
    jc = _form_complex(z.size)
    return from_complex(to_complex(z.coords) @ jc @ to_complex(w.coords).conj().T)[0, 0]


def gram(vectors: Sequence[HVector]) -> np.ndarray:
    """Quaternion matrix G with G[i, j] = <<v_i, v_j>>."""
    rows = np.array([v.coords for v in vectors], dtype=np.quaternion)
    c = to_complex(rows)
    return from_complex(c @ _form_complex(rows.shape[1]) @ c.conj().T)


def form_real(z: HVector) -> float:
    return float(form(z, z).w)


def lift(p: BallPoint) -> HVector:
    """Standard lift (p, 1)."""
    return HVector(np.concatenate([p.coords, np.array([ONE], dtype=np.quaternion)]))


def ball_point_from_lift(v: HVector, boundary: Optional[bool] = None) -> BallPoint:
    """
    Left projectivization z_{n+1}^{-1}·(z_1, ..., z_n).

    Images that overshoot the sphere by less than SNAP_TOL, or any image when
    boundary=True, are rescaled onto the sphere.
    """
    last = v.coords[-1]
    if q_abs(last) < DEGENERATE_TOL:
        err_msg = "Lift has vanishing last coordinate; it is not a point of the closed ball"
        logger.debug(err_msg)
        raise DomainError(err_msg)
    coords = q_inv(last) * v.coords[:-1]
    r = qnorm(coords)
    if boundary or (boundary is None and 1.0 - BOUNDARY_TOL < r <= 1.0 + SNAP_TOL):
        if r == 0.0:
            raise DomainError("Origin cannot be snapped to the boundary")
        coords = coords * (1.0 / r)
    elif r > 1.0 + SNAP_TOL:
        err_msg = f"Lift is positive (ball image norm {r:.9g})"
        logger.debug(err_msg)
        raise DomainError(err_msg)
    return BallPoint(coords)


def distance(p: BallPoint, q: BallPoint) -> float:
    """
    Hyperbolic distance with cosh^2(d/2) = |<<p,q>>|^2 / (<<p,p>><<q,q>>).

    Evaluated in ball coordinates as
    sinh^2(d/2) = (|q-p|^2 - |p|^2 |(q-p)_perp|^2) / ((1-|p|^2)(1-|q|^2)),
    where (q-p)_perp is the component orthogonal to p, which keeps full
    relative precision for nearby points.
    """
    _check_same_size(p.coords, q.coords)
    if p.is_boundary or q.is_boundary:
        err_msg = "Distance to a boundary point is infinite"
        logger.debug(err_msg)
        raise InfiniteDistanceError(err_msg)
    delta = q.coords - p.coords
    d2 = qnorm(delta) ** 2
    p2 = qnorm(p.coords) ** 2
    q2 = qnorm(q.coords) ** 2
    if p2 > 0.0:
        c = qdot(delta, p.coords) / p2
        perp = delta - c * p.coords
        num = d2 - p2 * qnorm(perp) ** 2
    else:
        num = d2
    num = max(num, 0.0)
    den = (1.0 - p2) * (1.0 - q2)
    return float(2.0 * math.asinh(math.sqrt(num / den)))


def distance_via_form(p: BallPoint, q: BallPoint) -> float:
    """Same distance through the projective formula (used as a cross-check)."""
    if p.is_boundary or q.is_boundary:
        raise InfiniteDistanceError("Distance to a boundary point is infinite")
    lp, lq = lift(p), lift(q)
    c2 = q_abs(form(lp, lq)) ** 2 / (form_real(lp) * form_real(lq))
    return float(2.0 * math.acosh(math.sqrt(max(c2, 1.0))))


def triple_product_of_lifts(v1: HVector, v2: HVector, v3: HVector) -> Quaternion:
    """<<v1,v2>><<v2,v3>><<v3,v1>> for arbitrary lifts."""
    values = (form(v1, v2), form(v2, v3), form(v3, v1))
    for q in values:
        if q_abs(q) < DEGENERATE_TOL:
            err_msg = "Vanishing pairwise Hermitian product in triple"
            logger.debug(err_msg)
            raise DegenerateTripleError(err_msg)
    return values[0] * values[1] * values[2]


def triple_product(x: Triple) -> Quaternion:
    """Hermitian triple product of the standard lifts, in the order (12)(23)(31)."""
    return triple_product_of_lifts(lift(x.p1), lift(x.p2), lift(x.p3))


# ---------------------------------------------------------------------------
# Isometries
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Isometry:
    """
    (n+1)x(n+1) matrix over F acting on row lifts from the right.

    (g @ h) is the map "first g, then h". The constructor does not validate;
    use checked() for external input.
    """

    matrix: np.ndarray

    def __post_init__(self):
        mat = qarray(self.matrix)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimensionMismatchError(f"Isometry needs a square matrix, got {mat.shape}")
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def identity(cls, n: int) -> "Isometry":
        return cls.from_real(np.eye(n + 1))

    @classmethod
    def from_real(cls, mat: np.ndarray) -> "Isometry":
        mat = np.asarray(mat, dtype=float)
        f = np.zeros(mat.shape + (4,))
        f[..., 0] = mat
        return cls(quaternion.from_float_array(f))

    @classmethod
    def from_complex_embedding(cls, c: np.ndarray) -> "Isometry":
        return cls(from_complex(c))

    @classmethod
    def checked(cls, mat, tol: float = 1e-10) -> "Isometry":
        iso = cls(mat)
        res = iso.residual()
        if res > tol:
            err_msg = f"Matrix does not preserve the Hermitian form (residual {res:.3e} > {tol:.1e})"
            logger.error(err_msg)
            raise GroupDataError(err_msg)
        return iso

    @cached_property
    def embedded(self) -> np.ndarray:
        return to_complex(self.matrix)

    @property
    def n(self) -> int:
        return int(self.matrix.shape[0]) - 1

    def __matmul__(self, other: "Isometry") -> "Isometry":
        if self.matrix.shape != other.matrix.shape:
            raise DimensionMismatchError(f"{self.matrix.shape} vs {other.matrix.shape}")
        return Isometry.from_complex_embedding(self.embedded @ other.embedded)

    def inverse(self) -> "Isometry":
        """J A^H J, exact for form-preserving A."""
        jc = _form_complex(self.n + 1)
        return Isometry.from_complex_embedding(jc @ self.embedded.conj().T @ jc)

    def power(self, k: int) -> "Isometry":
        base = self if k >= 0 else self.inverse()
        return Isometry.from_complex_embedding(np.linalg.matrix_power(base.embedded, abs(k)))

    def apply_lift(self, v: HVector) -> HVector:
        if v.size != self.n + 1:
            raise DimensionMismatchError(f"Lift of size {v.size} for a {self.n + 1}-square matrix")
        return HVector(from_complex(to_complex(v.coords) @ self.embedded)[0])

    def apply(self, p: BallPoint) -> BallPoint:
        return ball_point_from_lift(self.apply_lift(lift(p)), boundary=True if p.is_boundary else None)

    def residual(self) -> float:
        """max |A J A^H - J|."""
        jc = _form_complex(self.n + 1)
        return float(np.max(np.abs(self.embedded @ jc @ self.embedded.conj().T - jc)))

    def spectral_radius(self) -> float:
        return float(np.max(np.abs(np.linalg.eigvals(self.embedded))))

    def is_loxodromic(self, tol: float = LOXODROMIC_TOL) -> bool:
        return self.spectral_radius() > 1.0 + tol

    def distance_to(self, other: "Isometry") -> float:
        return float(np.max(np.abs(self.embedded - other.embedded)))

    def is_real(self, tol: float = 0.0) -> bool:
        f = quaternion.as_float_array(self.matrix)
        return bool(np.max(np.abs(f[..., 1:])) <= tol)

    def __repr__(self) -> str:
        rows = ["[" + ", ".join(format_quaternion(q, 4) for q in row) + "]" for row in self.matrix]
        return "Isometry(" + "; ".join(rows) + ")"


def isometry_residual(g: Isometry) -> float:
    return g.residual()


def axis_translation(n: int, r: float, nu: Quaternion = ONE) -> Isometry:
    """
    Block matrix diag(I, [[nu cosh r, nu sinh r], [nu sinh r, nu cosh r]]).

    Moves the origin to (0, ..., 0, tanh r), so translation length is 2r.
    """
    mat = np.zeros((n + 1, n + 1), dtype=np.quaternion)
    for i in range(n - 1):
        mat[i, i] = ONE
    mat[n - 1, n - 1] = nu * math.cosh(r)
    mat[n - 1, n] = nu * math.sinh(r)
    mat[n, n - 1] = nu * math.sinh(r)
    mat[n, n] = nu * math.cosh(r)
    return Isometry(mat)


def stabilizer_block(m: np.ndarray, nu: Quaternion) -> Isometry:
    """diag(M, nu) with M in Sp(n); fixes the origin."""
    m = qarray(m)
    n = m.shape[0]
    mat = np.zeros((n + 1, n + 1), dtype=np.quaternion)
    mat[:n, :n] = m
    mat[n, n] = nu
    return Isometry(mat)


# ---------------------------------------------------------------------------
# Gram-Schmidt and random sampling
# ---------------------------------------------------------------------------

def orthonormalize(rows: Sequence[np.ndarray], signs: Optional[np.ndarray] = None,
                   against: Sequence[np.ndarray] = (), limit: Optional[int] = None) -> List[np.ndarray]:
    """
    Gram-Schmidt with left coefficients for the form sum s_l z_l conj(w_l).

    Each row is cleaned against `against` (already orthonormal, any sign)
    and the rows accepted so far; pivots below PIVOT_TOL are skipped.
    """
    if not rows:
        return []
    m = len(rows[0])
    signs = np.ones(m) if signs is None else np.asarray(signs, dtype=float)
    jc = np.diag(np.repeat(signs, 2)).astype(complex)

    def _ip(a, b):
        return from_complex(to_complex(a) @ jc @ to_complex(b).conj().T)[0, 0]

    basis = [(np.asarray(f), float(_ip(f, f).w)) for f in against]
    out: List[np.ndarray] = []
    for v in rows:
        v = qarray(v)
        for f, s in basis:
            v = v - (_ip(v, f) * (1.0 / s)) * f
        nrm = float(_ip(v, v).w)
        if abs(nrm) < PIVOT_TOL:
            continue
        f = v * (1.0 / math.sqrt(abs(nrm)))
        basis.append((f, math.copysign(1.0, nrm)))
        out.append(f)
        if limit is not None and len(out) >= limit:
            break
    return out


def random_unitary(rng: np.random.Generator, n: int, field: str = "H") -> np.ndarray:
    """Random n x n matrix with orthonormal rows over the given field."""
    rows: List[np.ndarray] = []
    while len(rows) < n:
        cand = [np.array([random_quaternion(rng, field) for _ in range(n)], dtype=np.quaternion)]
        rows.extend(orthonormalize(cand, against=rows, limit=1))
    return np.array(rows, dtype=np.quaternion)


def random_isometry(rng: np.random.Generator, n: int = 2, field: str = "H",
                    spread: float = 1.5) -> Isometry:
    """
    K·A(r)·K' with K, K' origin stabilizers diag(M, nu) and A(r) an axis block.

    Every element of the isometry group has such a decomposition.
    """
    k1 = stabilizer_block(random_unitary(rng, n, field), random_unit_quaternion(rng, field))
    k2 = stabilizer_block(random_unitary(rng, n, field), random_unit_quaternion(rng, field))
    r = float(rng.uniform(-spread, spread))
    return k1 @ axis_translation(n, r) @ k2


def random_ball_point(rng: np.random.Generator, n: int = 2, field: str = "H",
                      boundary: bool = False, max_radius: float = 0.95) -> BallPoint:
    v = np.array([random_quaternion(rng, field) for _ in range(n)], dtype=np.quaternion)
    r = qnorm(v)
    scale = 1.0 / r if boundary else float(rng.uniform(0.0, max_radius)) / r
    return BallPoint(v * scale)


def random_boundary_triple(rng: np.random.Generator, n: int = 2, field: str = "H") -> Triple:
    while True:
        pts = [random_ball_point(rng, n, field, boundary=True) for _ in range(3)]
        if min(pts[0].chordal(pts[1]), pts[1].chordal(pts[2]), pts[2].chordal(pts[0])) > 1e-3:
            return Triple(*pts)

"""
Angular invariants of boundary triples.

- cartan_angular: angle between the Hermitian triple product and the real line
- toledo: 2 x the angular invariant (area of the projected ideal triangle)
- triangle_area_gb: Gauss-Bonnet area oracle inside an F-line
- triple_isometry: isometry carrying one triple onto another with equal invariant
- octonion_angular: invariant of a standard-position octonionic triple
- character_eval: sum of 4 pi tau over an oriented simplicial 2-cycle
"""

import logging
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .algebra import (
    I,
    Octonion,
    Quaternion,
    as_quaternion,
    imag_abs,
    imag_part,
    line_angle,
    q_abs,
    q_inv,
    rotation_between,
)
from .errors import (
    ChainNotClosedError,
    DegenerateTripleError,
    DomainError,
    NotOnLineError,
    SingularSystemError,
)
from .geometry import FLine, dist_to_spine, move_to_standard, project_to_fline
from .hermitian import (
    BallPoint,
    HVector,
    Isometry,
    Triple,
    form,
    lift,
    orthonormalize,
    qnorm,
    to_complex,
    triple_product,
    _signs,
)

logger = logging.getLogger(__name__)

ALGEBRAIC_TOL = 1e-11
GEOMETRIC_TOL = 1e-9
ORACLE_TOL = 1e-7
FOUR_PI = 4.0 * math.pi
CHARACTER_BOUND = 4.0 * math.pi ** 2


def cartan_angular(x: Triple) -> float:
    """Angular invariant in [0, pi/2]; independent of lifts and permutations."""
    return line_angle(triple_product(x))


def toledo(x: Triple) -> float:
    """Toledo invariant 2 x cartan_angular (nonnegative)."""
    return 2.0 * cartan_angular(x)


# ---------------------------------------------------------------------------
# Standard position helpers
# ---------------------------------------------------------------------------

def standard_image(x: Triple) -> BallPoint:
    """Image of x3 under the isometry sending (x1, x2) to ((0, -1), (0, 1))."""
    return move_to_standard(x.p1, x.p2).apply(x.p3)


def real_circle_residual(x: Triple) -> float:
    """|Im z_n| of x3 in standard position; zero iff x lies on a real-plane boundary."""
    return imag_abs(standard_image(x).coords[-1])


def fline_residual(x: Triple) -> float:
    """|z'| of x3 in standard position; zero iff x lies on an F-line boundary."""
    return qnorm(standard_image(x).coords[:-1])


def classify_triple(x: Triple, field_name: str = "H", tol: float = GEOMETRIC_TOL) -> str:
    """'real-plane', '<F>-line' or 'generic' by the value of the angular invariant."""
    angle = cartan_angular(x)
    if angle < tol:
        return "real-plane"
    if abs(angle - math.pi / 2.0) < tol:
        return f"{field_name}-line"
    return "generic"


@dataclass
class TripleReport:
    """Everything the invariant command prints for one triple."""

    angle: float
    tan_angle: float
    toledo: float
    dist_to_spine: float
    classification: str
    triple_product: Tuple[float, float, float, float] = field(default=(0.0, 0.0, 0.0, 0.0))

    def as_dict(self) -> Dict:
        return asdict(self)


def cartan_signature(x: Triple, field_name: str = "H") -> TripleReport:
    q = triple_product(x)
    angle = line_angle(q)
    tan_angle = math.inf if abs(angle - math.pi / 2.0) < 1e-15 else math.tan(angle)
    return TripleReport(
        angle=angle,
        tan_angle=tan_angle,
        toledo=2.0 * angle,
        dist_to_spine=dist_to_spine(x),
        classification=classify_triple(x, field_name),
        triple_product=(float(q.w), float(q.x), float(q.y), float(q.z)),
    )


# ---------------------------------------------------------------------------
# Gauss-Bonnet area oracle
# ---------------------------------------------------------------------------

def _mobius_add(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """
    Mobius addition in the Poincare ball:
    ((1 + 2<x,y> + |y|^2) x + (1 - |x|^2) y) / (1 + 2<x,y> + |x|^2 |y|^2)
    """
    x2 = float(np.dot(x, x))
    y2 = float(np.dot(y, y))
    xy = float(np.dot(x, y))
    num = (1.0 + 2.0 * xy + y2) * x + (1.0 - x2) * y
    return num / (1.0 + 2.0 * xy + x2 * y2)


def triangle_area_gb(x1: BallPoint, x2: BallPoint, w: BallPoint, line: FLine) -> float:
    """
    Area of the triangle with ideal vertices x1, x2 and third vertex w on the
    F-line, from Gauss-Bonnet: pi minus the angle at w (ideal angles vanish).

    After moving (x1, x2) to (0, -1), (0, 1) the line is a Poincare ball in
    the last coordinate; w is translated to 0 by a Mobius map and the angle
    at 0 is read off the images of -1 and 1.

    Raises:
        NotOnLineError: x1, x2 or w is off the line
    """
    for label, p in (("x1", x1), ("x2", x2), ("w", w)):
        if not line.contains(p, tol=1e-8):
            err_msg = f"{label} = {p} is not on the given F-line"
            logger.debug(err_msg)
            raise NotOnLineError(err_msg)
    if not (x1.is_boundary and x2.is_boundary):
        raise DomainError("triangle_area_gb needs ideal vertices x1 and x2")
    if w.is_boundary:
        return math.pi
    g = move_to_standard(x1, x2)
    image = g.apply(w)
    if qnorm(image.coords[:-1]) > 1e-8:
        raise NotOnLineError(f"{w} does not map into the standard line")
    zeta = image.coords[-1]
    centre = np.array([zeta.w, zeta.x, zeta.y, zeta.z])
    ends = []
    for sign in (-1.0, 1.0):
        e = _mobius_add(-centre, np.array([sign, 0.0, 0.0, 0.0]))
        ends.append(e / np.linalg.norm(e))
    cos_theta = float(np.clip(np.dot(ends[0], ends[1]), -1.0, 1.0))
    return float(math.pi - math.acos(cos_theta))


def toledo_via_area(x: Triple) -> float:
    """(1 / 4 pi) x 4 pi x Area(x1, x2, projection of x3)."""
    line = FLine.through(x.p1, x.p2)
    w = project_to_fline(line, x.p3)
    area = triangle_area_gb(x.p1, x.p2, w, line)
    return (1.0 / FOUR_PI) * (FOUR_PI * area)


# ---------------------------------------------------------------------------
# Constructive triple isometry
# ---------------------------------------------------------------------------

def _canonical_lifts(x: Triple) -> Tuple[List[HVector], Quaternion]:
    """
    Lifts with <<x1,x2>> = <<x2,x3>> = 1 and <<x3,x1>> = q, |q| = 1, Im q along +i.
    """
    l1, l2, l3 = (lift(p) for p in x.points)
    g12, g23 = form(l1, l2), form(l2, l3)
    for g in (g12, g23, form(l3, l1)):
        if q_abs(g) < 1e-12:
            raise DegenerateTripleError("Vanishing Hermitian product in triple")
    l1 = l1.scaled(q_inv(g12))
    l3 = l3.scaled(q_inv(g23).conjugate())
    q = form(l3, l1)
    s = math.sqrt(q_abs(q))
    l1, l2, l3 = l1.scaled(1.0 / s), l2.scaled(s), l3.scaled(1.0 / s)
    q = form(l3, l1)
    if imag_abs(q) > 1e-14:
        mu = rotation_between(imag_part(q), I)
        nu = mu.conjugate()
        l1, l2, l3 = l1.scaled(nu), l2.scaled(nu), l3.scaled(nu)
        q = form(l3, l1)
    return [l1, l2, l3], q


def _frame(x: Triple) -> Tuple[np.ndarray, Quaternion]:
    (l1, l2, l3), q = _canonical_lifts(x)
    size = l1.size
    # projection of l3 onto span{l1, l2} with Gram [[0, 1], [1, 0]] is l1 + q l2
    r = l3 - l1 - l2.scaled(q)
    rows = [l1.coords, l2.coords]
    h1 = (l1 + l2).scaled(1.0 / math.sqrt(2.0))
    h2 = (l1 - l2).scaled(1.0 / math.sqrt(2.0))
    against = [h1.coords, h2.coords]
    rr = float(form(r, r).w)
    if rr > 1e-10:
        f3 = r.scaled(1.0 / math.sqrt(rr)).coords
        rows.append(f3)
        against.append(f3)
    eye = [row for row in np.eye(size)]
    rows.extend(orthonormalize(eye, signs=_signs(size), against=against, limit=size - len(rows)))
    if len(rows) != size:
        raise SingularSystemError("Could not complete the triple frame to a basis")
    return np.array(rows, dtype=np.quaternion), q


def triple_isometry(x: Triple, y: Triple, tol: float = GEOMETRIC_TOL) -> Optional[Isometry]:
    """
    Isometry f with f(x_i) = y_i when the angular invariants agree, else None.

    Lifts of both triples are normalized so that their Gram matrices coincide,
    each is completed to a basis with the same Gram matrix, and f is the
    basis change.

    Raises:
        DegenerateTripleError: vanishing pairwise product
        SingularSystemError: the basis change does not reproduce the triple
    """
    if x.p1.n != y.p1.n:
        raise DomainError("Triples live in different dimensions")
    ax, ay = cartan_angular(x), cartan_angular(y)
    if abs(ax - ay) > tol:
        logger.debug(f"Angular invariants differ ({ax:.12g} vs {ay:.12g}); no isometry")
        return None
    sx, _ = _frame(x)
    sy, _ = _frame(y)
    cx = to_complex(sx)
    if np.linalg.cond(cx) > 1e12:
        raise SingularSystemError("Triple frame is numerically singular")
    f = Isometry.from_complex_embedding(np.linalg.solve(cx, to_complex(sy)))
    err = max(f.apply(p).chordal(q) for p, q in zip(x.points, y.points))
    if err > 1e-8:
        err_msg = f"Gram-matching isometry misses the target triple by {err:.3e}"
        logger.error(err_msg)
        raise SingularSystemError(err_msg)
    return f


# ---------------------------------------------------------------------------
# Octonionic invariant
# ---------------------------------------------------------------------------

def octonion_angular(zn: Union[Octonion, Quaternion], tol: float = GEOMETRIC_TOL) -> float:
    """
    atan(2 |Im z_n| / (1 - |z_n|^2)) for the projection z_n of x3 in standard
    position; pi/2 for non-real unit z_n, 0 when |Im z_n| is below ALGEBRAIC_TOL.
    """
    if isinstance(zn, Octonion):
        c = zn.components()
        r, im = float(np.linalg.norm(c)), float(np.linalg.norm(c[1:]))
    else:
        zn = as_quaternion(zn)
        r, im = q_abs(zn), imag_abs(zn)
    if r > 1.0 + tol:
        err_msg = f"|z_n| = {r:.12g} exceeds 1"
        logger.debug(err_msg)
        raise DomainError(err_msg)
    if im < ALGEBRAIC_TOL:
        return 0.0
    return float(math.atan2(2.0 * im, max(1.0 - r * r, 0.0)))


# ---------------------------------------------------------------------------
# Character of a representation on a 2-cycle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangulatedCycle:
    """Oriented triangles (multiplicity, (a, b, c)) over vertex labels."""

    triangles: Tuple[Tuple[int, Tuple[str, str, str]], ...]

    @classmethod
    def of(cls, items: Sequence[Tuple[int, Sequence[str]]]) -> "TriangulatedCycle":
        return cls(tuple((int(m), tuple(str(v) for v in tri)) for m, tri in items))

    def boundary(self) -> Dict[Tuple[str, str], int]:
        """Oriented edge coefficients of the boundary chain (zero entries dropped)."""
        edges: Counter = Counter()
        for mult, (a, b, c) in self.triangles:
            for (u, v), sign in (((b, c), 1), ((a, c), -1), ((a, b), 1)):
                if u > v:
                    u, v, sign = v, u, -sign
                edges[(u, v)] += sign * mult
        return {e: k for e, k in edges.items() if k != 0}

    @property
    def is_closed(self) -> bool:
        return not self.boundary()

    @property
    def vertices(self) -> List[str]:
        return sorted({v for _, tri in self.triangles for v in tri})


@dataclass
class CharacterTerm:
    multiplicity: int
    vertices: Tuple[str, str, str]
    toledo: float
    cochain: float
    term: float


@dataclass
class CharacterReport:
    value: float
    terms: List[CharacterTerm]
    closed: bool
    bound_violations: List[int]

    @property
    def bound_ok(self) -> bool:
        return not self.bound_violations


def character_eval(cycle: TriangulatedCycle, boundary_map: Mapping[str, BallPoint],
                   require_closed: bool = True) -> CharacterReport:
    """
    Sum of multiplicity x 4 pi x toledo over the mapped triangles.

    Each cochain value 4 pi tau is checked against the bound 4 pi^2.

    Raises:
        ChainNotClosedError: open chain with require_closed
        DegenerateTripleError: a mapped triangle is degenerate
    """
    closed = cycle.is_closed
    if not closed:
        if require_closed:
            err_msg = f"Chain is not closed; boundary {cycle.boundary()}"
            logger.error(err_msg)
            raise ChainNotClosedError(err_msg)
        logger.warning("Evaluating an open chain; the result is not a character value")
    terms: List[CharacterTerm] = []
    violations: List[int] = []
    for idx, (mult, labels) in enumerate(cycle.triangles):
        missing = [v for v in labels if v not in boundary_map]
        if missing:
            raise DomainError(f"Vertices {missing} have no boundary point")
        tri = Triple(*(boundary_map[v] for v in labels))
        tau = toledo(tri)
        cochain = FOUR_PI * tau
        if abs(cochain) > CHARACTER_BOUND + GEOMETRIC_TOL:
            violations.append(idx)
        terms.append(CharacterTerm(mult, labels, tau, cochain, mult * cochain))
    value = math.fsum(t.term for t in terms)
    logger.debug(f"Character over {len(terms)} triangles = {value:.12g}")
    return CharacterReport(value=value, terms=terms, closed=closed, bound_violations=violations)

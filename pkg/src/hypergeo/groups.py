"""
Isometry groups and their bending deformations.

Groups are free-word data: an axis generator gamma_a of the edge group, the
generators of Gamma_1 and either the generators of Gamma_2 (amalgamated
product) or one extra generator gamma_2 (HNN extension). Bending by a unit
scalar nu uses R = rotation_U(nu) = diag(I, nu, nu):

    amalgam:  Gamma_2 generators G -> R G R^{-1}
    HNN:      gamma_2 -> R gamma_2
"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import ONE, ImaginaryDirection, Quaternion, as_quaternion, is_unit, unit_rotation
from .errors import DomainError, GroupDataError, NotLoxodromicError
from .geometry import Geodesic, move_to_standard, standard_pair
from .hermitian import (
    BallPoint,
    HVector,
    Triple,
    Isometry,
    axis_translation,
    ball_point_from_lift,
    distance,
    form_matrix,
    from_complex,
    qnorm,
    to_complex,
)
from .invariants import cartan_angular

logger = logging.getLogger(__name__)

FORM_TOL = 1e-10
FIXED_POINT_TOL = 1e-9
SQUARINGS = 64

Word = Tuple[Tuple[str, int], ...]

__all__ = [
    "GroupData",
    "LimitSetSampler",
    "axis_translation",
    "bend_amalgam",
    "bend_hnn",
    "bending_representation",
    "collar_check",
    "conjugate_to_axis",
    "embed_fuchsian",
    "evaluate_word",
    "fixed_points",
    "horizontal_translation",
    "limit_set_sample",
    "marker_invariant",
    "marker_sweep",
    "rotation_U",
    "schottky_amalgam_example",
    "translation_length",
]


# ---------------------------------------------------------------------------
# Elementary isometries
# ---------------------------------------------------------------------------

def embed_fuchsian(g: np.ndarray, tol: float = FORM_TOL) -> Isometry:
    """
    View a real matrix preserving diag(1, ..., 1, -1) as an isometry over F.

    Raises:
        GroupDataError: the real form is not preserved within tol
    """
    g = np.asarray(g, dtype=float)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise GroupDataError(f"Expected a square real matrix, got shape {g.shape}")
    jr = form_matrix(g.shape[0] - 1)
    res = float(np.max(np.abs(g @ jr @ g.T - jr)))
    if res > tol:
        err_msg = f"Real matrix does not preserve the form diag(1,...,1,-1) (residual {res:.3e})"
        logger.error(err_msg)
        raise GroupDataError(err_msg)
    return Isometry.from_real(g)


def horizontal_translation(n: int, d: float) -> Isometry:
    """Real boost mixing the first and the last coordinate; moves (0, ..., 0, +-1) to (tanh d, ..., +-sech d)."""
    m = np.eye(n + 1)
    m[0, 0] = m[n, n] = math.cosh(d)
    m[0, n] = m[n, 0] = math.sinh(d)
    return Isometry.from_real(m)


def rotation_U(nu: Quaternion, n: int = 2) -> Isometry:
    """
    diag(I_{n-1}, nu, nu): maps (z', z_n) to (nu^{-1} z', nu^{-1} z_n nu) and
    fixes the real axis through (0, -1), (0, 1).
    """
    nu = as_quaternion(nu)
    if not is_unit(nu, 1e-10):
        err_msg = f"rotation_U needs a unit scalar, got |nu| = {abs(nu):.12g}"
        logger.error(err_msg)
        raise DomainError(err_msg)
    mat = np.zeros((n + 1, n + 1), dtype=np.quaternion)
    for i in range(n - 1):
        mat[i, i] = ONE
    mat[n - 1, n - 1] = nu
    mat[n, n] = nu
    return Isometry(mat)


# ---------------------------------------------------------------------------
# Group data
# ---------------------------------------------------------------------------

def _is_standard_axis(g: Isometry, tol: float = FIXED_POINT_TOL) -> bool:
    for p in standard_pair(g.n):
        if g.apply(p).chordal(p) > tol:
            return False
    return True


@dataclass(frozen=True, eq=False)
class GroupData:
    """
    Generators of Gamma = Gamma_1 *_{Gamma_P} Gamma_2 (kind 'amalgam') or
    Gamma_1 *_{Gamma_P} = <Gamma_1, gamma_2> (kind 'hnn').
    """

    kind: str
    axis: Isometry
    gamma1: Tuple[Isometry, ...]
    gamma2: Tuple[Isometry, ...]
    field_name: str = "H"
    check_axis: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.kind not in ("amalgam", "hnn"):
            raise GroupDataError(f"Unknown decomposition kind '{self.kind}' (expected amalgam or hnn)")
        object.__setattr__(self, "gamma1", tuple(self.gamma1))
        object.__setattr__(self, "gamma2", tuple(self.gamma2))
        if self.kind == "hnn" and len(self.gamma2) != 1:
            raise GroupDataError(f"HNN data needs exactly one extra generator, got {len(self.gamma2)}")
        if not self.gamma1 or not self.gamma2:
            raise GroupDataError("Both generator lists must be nonempty")
        sizes = {g.matrix.shape for g in self.all_generators()}
        if len(sizes) != 1:
            raise GroupDataError(f"Generators have mixed sizes {sorted(sizes)}")
        res = self.max_residual()
        if res > 1e-9:
            err_msg = f"Generators do not preserve the Hermitian form (max residual {res:.3e})"
            logger.error(err_msg)
            raise GroupDataError(err_msg)
        if self.check_axis:
            if not self.axis.is_loxodromic():
                raise GroupDataError("Axis generator is not loxodromic")
            if not _is_standard_axis(self.axis):
                raise GroupDataError("Axis generator does not fix (0,-1) and (0,1); conjugate it first")

    @property
    def n(self) -> int:
        return self.axis.n

    def all_generators(self) -> List[Isometry]:
        return [self.axis, *self.gamma1, *self.gamma2]

    def generators(self) -> Dict[str, Isometry]:
        """Labelled generators: a (axis), b1.. (Gamma_1), c1.. (Gamma_2) or t (gamma_2)."""
        out = {"a": self.axis}
        out.update({f"b{i + 1}": g for i, g in enumerate(self.gamma1)})
        if self.kind == "hnn":
            out["t"] = self.gamma2[0]
        else:
            out.update({f"c{i + 1}": g for i, g in enumerate(self.gamma2)})
        return out

    def max_residual(self) -> float:
        return max(g.residual() for g in self.all_generators())


def conjugate_to_axis(G: GroupData) -> GroupData:
    """Conjugate every generator so the axis generator fixes (0, -1) and (0, 1)."""
    attracting, repelling = fixed_points(G.axis)
    h = move_to_standard(repelling, attracting)
    hi = h.inverse()

    def conj(g: Isometry) -> Isometry:
        return hi @ g @ h

    return GroupData(G.kind, conj(G.axis), tuple(conj(g) for g in G.gamma1),
                     tuple(conj(g) for g in G.gamma2), G.field_name)


def bend_amalgam(G: GroupData, nu: Quaternion) -> GroupData:
    """Gamma_1 and the axis unchanged; each Gamma_2 generator conjugated by rotation_U(nu)."""
    if G.kind != "amalgam":
        raise GroupDataError(f"bend_amalgam needs amalgam data, got '{G.kind}'")
    r = rotation_U(nu, G.n)
    ri = r.inverse()
    return replace(G, gamma2=tuple(r @ g @ ri for g in G.gamma2))


def bend_hnn(G: GroupData, nu: Quaternion) -> GroupData:
    """gamma_2 replaced by rotation_U(nu) @ gamma_2."""
    if G.kind != "hnn":
        raise GroupDataError(f"bend_hnn needs hnn data, got '{G.kind}'")
    return replace(G, gamma2=(rotation_U(nu, G.n) @ G.gamma2[0],))


def bend(G: GroupData, nu: Quaternion) -> GroupData:
    return bend_amalgam(G, nu) if G.kind == "amalgam" else bend_hnn(G, nu)


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def parse_word(text: str) -> Word:
    """'a b1 C1' -> (('a', 1), ('b1', 1), ('c1', -1)); upper case means inverse."""
    letters = []
    for token in text.split():
        letters.append((token.lower(), -1 if token[0].isupper() else 1))
    return tuple(letters)


def evaluate_word(G: GroupData, word: Word) -> Isometry:
    """Product of the letters in reading order (first letter acts first)."""
    gens = G.generators()
    result = Isometry.identity(G.n)
    for label, exp in word:
        if label not in gens:
            raise GroupDataError(f"Unknown generator '{label}' (have {sorted(gens)})")
        result = result @ gens[label].power(exp)
    return result


def bending_representation(G: GroupData, nu: Quaternion) -> Callable[[Word], Isometry]:
    """rho_nu: word -> its value in the bent group."""
    bent = bend(G, nu)
    return lambda word: evaluate_word(bent, word)


# ---------------------------------------------------------------------------
# Dynamics
# ---------------------------------------------------------------------------

def _attracting(g: Isometry) -> BallPoint:
    m = g.embedded.copy()
    for _ in range(SQUARINGS):
        m = m @ m
        m /= np.max(np.abs(m))
    best: Optional[np.ndarray] = None
    best_norm = -1.0
    basis = [np.eye(g.n + 1)[i] for i in range(g.n + 1)]
    basis.append(np.full(g.n + 1, 0.3))
    for v in basis:
        image = from_complex(to_complex(HVector(v).coords) @ m)[0]
        size = qnorm(image)
        if size > best_norm:
            best, best_norm = image, size
    return ball_point_from_lift(HVector(best), boundary=True)


def fixed_points(g: Isometry) -> Tuple[BallPoint, BallPoint]:
    """
    (attracting, repelling) boundary fixed points of a loxodromic isometry.

    Raises:
        NotLoxodromicError: spectral radius within 1e-8 of 1
    """
    if not g.is_loxodromic():
        err_msg = f"Isometry is not loxodromic (spectral radius {g.spectral_radius():.12g})"
        logger.debug(err_msg)
        raise NotLoxodromicError(err_msg)
    attracting = _attracting(g)
    repelling = _attracting(g.inverse())
    drift = g.apply(attracting).chordal(attracting)
    if drift > FIXED_POINT_TOL:
        logger.debug(f"Attracting fixed point moves by {drift:.3e} under g")
    return attracting, repelling


def axis_of(g: Isometry) -> Geodesic:
    attracting, repelling = fixed_points(g)
    return Geodesic(repelling, attracting)


def translation_length(g: Isometry) -> float:
    """d(x, g x) for x = geodesic_point(axis, 0)."""
    x = axis_of(g).point(0.0)
    return distance(x, g.apply(x))


def axis_displacement_profile(g: Isometry, samples: int = 9, span: float = 4.0) -> Tuple[float, float]:
    """(displacement at the axis midpoint, minimum displacement over sampled axis points)."""
    geo = axis_of(g)
    values = [distance(p, g.apply(p)) for p in (geo.point(s) for s in np.linspace(-span, span, samples))]
    mid = geo.point(0.0)
    return distance(mid, g.apply(mid)), float(min(values))


def collar_check(eps: float, delta: float) -> bool:
    """sinh(eps/4) sinh(delta/2) <= 1/2."""
    if eps <= 0.0 or delta <= 0.0:
        raise DomainError(f"collar_check needs positive inputs, got eps={eps}, delta={delta}")
    return math.sinh(eps / 4.0) * math.sinh(delta / 2.0) <= 0.5


# ---------------------------------------------------------------------------
# Limit sets
# ---------------------------------------------------------------------------

class LimitSetSampler:
    """
    Attracting fixed points of random reduced words, deterministic per seed.

    Words containing a non-loxodromic element are skipped and counted.
    """

    def __init__(self, G: GroupData, word_length: int = 6, seed: int = 7):
        if word_length < 1:
            raise DomainError(f"word_length must be positive, got {word_length}")
        self.group = G
        self.word_length = word_length
        self.seed = seed
        self.letters = [(label, e) for label in G.generators() for e in (1, -1)]
        self.stats = {
            'attempts': 0,
            'samples': 0,
            'skipped_elliptic': 0,
        }

    def random_word(self, rng: np.random.Generator) -> Word:
        length = int(rng.integers(1, self.word_length + 1))
        word: List[Tuple[str, int]] = []
        while len(word) < length:
            label, e = self.letters[int(rng.integers(len(self.letters)))]
            if word and word[-1] == (label, -e):
                continue
            word.append((label, e))
        return tuple(word)

    def sample(self, count: int) -> List[Tuple[Word, BallPoint]]:
        rng = np.random.default_rng(self.seed)
        out: List[Tuple[Word, BallPoint]] = []
        max_attempts = 50 * count
        while len(out) < count and self.stats['attempts'] < max_attempts:
            self.stats['attempts'] += 1
            word = self.random_word(rng)
            g = evaluate_word(self.group, word)
            if not g.is_loxodromic():
                self.stats['skipped_elliptic'] += 1
                logger.debug(f"Skipping non-loxodromic word {word}")
                continue
            out.append((word, fixed_points(g)[0]))
        self.stats['samples'] = len(out)
        if len(out) < count:
            logger.warning(f"Only {len(out)} of {count} limit samples after {self.stats['attempts']} attempts")
        return out


def limit_set_sample(G: GroupData, word_length: int, count: int, seed: int) -> List[BallPoint]:
    return [p for _, p in LimitSetSampler(G, word_length, seed).sample(count)]


# ---------------------------------------------------------------------------
# Examples and the marker invariant
# ---------------------------------------------------------------------------

def schottky_amalgam_example(eps: float = 0.5, offset: float = 1.5, r: float = 0.5,
                             n: int = 2, field_name: str = "H") -> GroupData:
    """
    Real Schottky-type amalgam: axis translation of length eps along the
    standard axis, Gamma_1 = <g1>, Gamma_2 = <g2> where g1, g2 translate by 2r
    along axes pushed to the s < 0 and s > 0 sides by horizontal boosts.
    """
    a = axis_translation(n, eps / 2.0)
    base = axis_translation(n, r)

    def pushed(d: float) -> Isometry:
        h = horizontal_translation(n, d)
        return h.inverse() @ base @ h

    return GroupData("amalgam", a, (pushed(-offset),), (pushed(offset),), field_name)


def schottky_hnn_example(eps: float = 0.5, offset: float = 1.5, r: float = 0.5,
                         n: int = 2, field_name: str = "H") -> GroupData:
    amalgam = schottky_amalgam_example(eps, offset, r, n, field_name)
    return GroupData("hnn", amalgam.axis, amalgam.gamma1, amalgam.gamma2, field_name)


def marker_invariant(G_bent: GroupData, reference: Optional[BallPoint] = None) -> float:
    """
    Angular invariant of (x1, (0, 1), x2_eta): x1 a Gamma_1 limit point (by
    default the attracting fixed point of the first Gamma_1 generator) and
    x2_eta the attracting fixed point of the first bent Gamma_2 generator.
    """
    x1 = reference if reference is not None else fixed_points(G_bent.gamma1[0])[0]
    origin = standard_pair(G_bent.n)[1]
    x2 = fixed_points(G_bent.gamma2[0])[0]
    return cartan_angular(Triple(x1, origin, x2))


def marker_sweep(G: GroupData, axis: ImaginaryDirection, etas: Sequence[float]) -> List[Tuple[float, float]]:
    """(eta, marker invariant of the group bent by unit_rotation(axis, eta))."""
    reference = fixed_points(G.gamma1[0])[0]
    return [(float(eta), marker_invariant(bend(G, unit_rotation(axis, eta)), reference)) for eta in etas]

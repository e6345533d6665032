"""
Named verification suites behind the `verify` command.

Every suite draws its random input from one seeded numpy Generator, checks a
list of properties and returns a SuiteResult; a property passes when its
worst residual is within its bound (or, for separation checks, when the
smallest observed gap exceeds it).
"""

import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from .algebra import (
    ONE,
    I,
    ImaginaryDirection,
    Octonion,
    associator,
    conjugation_rotation_angle,
    imag_abs,
    imag_part,
    line_angle,
    nonassociative_witness,
    normalize,
    o_abs,
    o_mul,
    q_abs,
    q_inv,
    quat,
    random_octonion,
    random_quaternion,
    random_unit_octonion,
    random_unit_quaternion,
    rotation_between,
    unit_rotation,
)
from .geometry import (
    Bisector,
    FLine,
    bisector_contains,
    bisector_point_on_ray,
    dist_to_spine,
    distance_to_geodesic,
    geodesic_through,
    halfspace_side,
    project_to_fline,
    pythagoras_check,
    segment_point,
    slice_points,
    standard_bisector,
    standard_pair,
)
from .groups import (
    bend,
    collar_check,
    evaluate_word,
    fixed_points,
    limit_set_sample,
    marker_sweep,
    parse_word,
    schottky_amalgam_example,
    translation_length,
)
from .hermitian import (
    BallPoint,
    Triple,
    axis_translation,
    ball_point_from_lift,
    distance,
    distance_via_form,
    lift,
    qnorm,
    random_ball_point,
    random_boundary_triple,
    random_isometry,
)
from .invariants import (
    ALGEBRAIC_TOL,
    CHARACTER_BOUND,
    FOUR_PI,
    GEOMETRIC_TOL,
    ORACLE_TOL,
    TriangulatedCycle,
    cartan_angular,
    character_eval,
    fline_residual,
    octonion_angular,
    real_circle_residual,
    toledo,
    toledo_via_area,
    triangle_area_gb,
    triple_isometry,
)
from .models import (
    INFINITY,
    CarnotElement,
    CarnotPoint,
    ball_to_boundary,
    boundary_to_ball,
    carnot_dilate,
    carnot_inv,
    carnot_mul,
    carnot_translate,
    cygan_dist,
    cygan_norm,
    real_circle_offset,
)
from .realbend import (
    h4_offset,
    octonion_line_angular,
    real_bend_example,
    real_bend_octonion_line,
    real_limit_sample,
)

logger = logging.getLogger(__name__)


@dataclass
class Tolerances:
    algebraic: float = ALGEBRAIC_TOL
    geometric: float = GEOMETRIC_TOL
    oracle: float = ORACLE_TOL


@dataclass
class PropertyResult:
    name: str
    value: float
    bound: float
    kind: str = "max"  # "max": value <= bound, "min": value > bound
    samples: int = 1

    @property
    def passed(self) -> bool:
        if not math.isfinite(self.value):
            return False
        return self.value <= self.bound if self.kind == "max" else self.value > self.bound


@dataclass
class SuiteResult:
    name: str
    seed: int
    count: int
    properties: List[PropertyResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)

    def check_max(self, name: str, values, bound: float):
        values = list(values)
        worst = max(values) if values else 0.0
        self.properties.append(PropertyResult(name, float(worst), bound, "max", len(values)))

    def check_min(self, name: str, values, bound: float):
        values = list(values)
        least = min(values) if values else -math.inf
        self.properties.append(PropertyResult(name, float(least), bound, "min", len(values)))

    def as_dict(self) -> Dict:
        return {
            'suite': self.name,
            'seed': self.seed,
            'count': self.count,
            'passed': self.passed,
            'elapsed': self.elapsed,
            'properties': [dict(asdict(p), passed=p.passed) for p in self.properties],
        }


SuiteFn = Callable[[SuiteResult, np.random.Generator, Tolerances], None]
SUITES: Dict[str, SuiteFn] = {}


def suite(name: str):
    def register(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn
    return register


def run_suite(name: str, seed: int = 7, count: int = 1000,
              tolerances: Optional[Tolerances] = None) -> SuiteResult:
    """
    Raises:
        KeyError: unknown suite name
    """
    if name not in SUITES:
        raise KeyError(f"Unknown suite '{name}' (available: {', '.join(sorted(SUITES))})")
    result = SuiteResult(name, seed, count)
    rng = np.random.default_rng(seed)
    logger.info(f"Running suite {name} (seed {seed}, count {count})")
    start = time.perf_counter()
    SUITES[name](result, rng, tolerances or Tolerances())
    result.elapsed = time.perf_counter() - start
    status = "PASS" if result.passed else "FAIL"
    logger.info(f"Suite {name}: {status} in {result.elapsed:.2f}s")
    return result


def _real_boundary(angle: float, n: int = 2) -> BallPoint:
    coords = np.zeros(n, dtype=np.quaternion)
    coords[0], coords[1] = math.cos(angle) * ONE, math.sin(angle) * ONE
    return BallPoint(coords)


def _on_standard_line(zeta, n: int = 2) -> BallPoint:
    coords = np.zeros(n, dtype=np.quaternion)
    coords[-1] = zeta
    return BallPoint(coords)


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------

@suite("algebra")
def _algebra(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    pairs = [(random_quaternion(rng), random_quaternion(rng)) for _ in range(res.count)]
    res.check_max("quaternion norm multiplicativity",
                  (abs(q_abs(a * b) - q_abs(a) * q_abs(b)) / max(1.0, q_abs(a) * q_abs(b)) for a, b in pairs),
                  tol.algebraic)
    res.check_max("inverse", (q_abs(a * q_inv(a) - ONE) for a, _ in pairs), tol.algebraic)
    res.check_max("line_angle conjugation symmetry",
                  (abs(line_angle(a) - line_angle(a.conjugate())) for a, _ in pairs), tol.algebraic)

    def rotation_miss(a, b):
        nu = rotation_between(a, b)
        image = imag_part(nu.conjugate() * imag_part(a) * nu)
        return q_abs(normalize(image) - normalize(imag_part(b)))

    res.check_max("rotation_between aligns imaginary parts", (rotation_miss(a, b) for a, b in pairs), 1e-10)
    etas = rng.uniform(0.0, math.pi / 2.0, size=min(res.count, 200))
    axes = [ImaginaryDirection.from_quaternion(imag_part(random_quaternion(rng))) for _ in etas]
    res.check_max("conjugation rotates by 2 eta",
                  (abs(conjugation_rotation_angle(unit_rotation(ax, eta)) - 2.0 * eta) for ax, eta in zip(axes, etas)),
                  1e-10)


@suite("octonion")
def _octonion(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    pairs = [(random_octonion(rng), random_octonion(rng)) for _ in range(10 * res.count)]
    res.check_max("octonion norm multiplicativity",
                  (abs(o_abs(o_mul(a, b)) - o_abs(a) * o_abs(b)) / max(1.0, o_abs(a) * o_abs(b)) for a, b in pairs),
                  1e-12)
    units = [(random_unit_octonion(rng), random_unit_octonion(rng)) for _ in range(res.count)]
    res.check_max("two-generated subalgebras associate",
                  (o_abs(associator(a, b, o_mul(a, b))) for a, b in units), 1e-12)
    res.check_min("nonassociativity witness", [o_abs(associator(*nonassociative_witness()))], 0.1)
    reals = rng.uniform(-1.0, 1.0, size=res.count)
    res.check_max("real z_n gives 0",
                  (octonion_angular(Octonion.real(float(x))) for x in reals), 1e-12)

    def unit_nonreal():
        o = random_unit_octonion(rng)
        return abs(octonion_angular(o) - math.pi / 2.0)

    res.check_max("unit non-real z_n gives pi/2", (unit_nonreal() for _ in range(res.count)), 1e-12)


# ---------------------------------------------------------------------------
# Hermitian space and Carnot group
# ---------------------------------------------------------------------------

@suite("hermitian")
def _hermitian(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    pts = [(random_ball_point(rng), random_ball_point(rng)) for _ in range(res.count)]
    res.check_max("distance matches the form formula",
                  (abs(distance(p, q) - distance_via_form(p, q)) for p, q in pts), tol.oracle)
    res.check_max("distance symmetry", (abs(distance(p, q) - distance(q, p)) for p, q in pts), tol.geometric)
    gs = [random_isometry(rng) for _ in range(min(res.count, 200))]
    res.check_max("random isometries preserve the form", (g.residual() for g in gs), 1e-10)
    res.check_max("isometries preserve distance",
                  (abs(distance(g.apply(p), g.apply(q)) - distance(p, q)) / max(1.0, distance(p, q))
                   for g, (p, q) in zip(gs, pts)), 1e-8)
    res.check_max("lift round trip",
                  (p.chordal(ball_point_from_lift(lift(p).scaled(random_unit_quaternion(rng)))) for p, _ in pts),
                  1e-12)
    res.check_max("axis translation length",
                  (abs(translation_length(axis_translation(2, r)) - 2.0 * r)
                   for r in rng.uniform(0.1, 2.0, size=20)), 1e-9)


def _carnot_point(rng: np.random.Generator, n: int = 2, u: float = 0.0) -> CarnotPoint:
    xi = np.array([random_quaternion(rng) for _ in range(n - 1)], dtype=np.quaternion)
    return CarnotPoint(xi, imag_part(random_quaternion(rng)), u)


@suite("carnot")
def _carnot(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    count = res.count
    triples = [tuple(_carnot_point(rng) for _ in range(3)) for _ in range(count)]

    def el(p: CarnotPoint) -> CarnotElement:
        return p.element

    def gap(a: CarnotElement, b: CarnotElement) -> float:
        return max(qnorm(a.xi - b.xi), q_abs(a.v - b.v))

    res.check_max("associativity",
                  (gap(carnot_mul(carnot_mul(el(a), el(b)), el(c)), carnot_mul(el(a), carnot_mul(el(b), el(c))))
                   for a, b, c in triples), 1e-12)
    ident = CarnotElement.identity(2)
    res.check_max("identity and inverse",
                  (max(gap(carnot_mul(el(a), ident), el(a)), gap(carnot_mul(el(a), carnot_inv(el(a))), ident))
                   for a, _, _ in triples), 1e-12)
    res.check_max("center is Im F",
                  (gap(carnot_mul(el(a), CarnotElement(np.zeros(1, dtype=np.quaternion), b.v)),
                       carnot_mul(CarnotElement(np.zeros(1, dtype=np.quaternion), b.v), el(a)))
                   for a, b, _ in triples), 1e-12)
    rs = rng.uniform(0.2, 3.0, size=count)
    res.check_max("dilation homogeneity",
                  (abs(cygan_norm(carnot_dilate(a, r)) - r * cygan_norm(a)) / max(1.0, r * cygan_norm(a))
                   for (a, _, _), r in zip(triples, rs)), 1e-12)
    res.check_max("triangle inequality",
                  (cygan_dist(a, c) - cygan_dist(a, b) - cygan_dist(b, c) for a, b, c in triples), 1e-12)
    res.check_max("translation invariance",
                  (abs(cygan_dist(carnot_translate(el(c), a), carnot_translate(el(c), b)) - cygan_dist(a, b))
                   / max(1.0, cygan_dist(a, b)) for a, b, c in triples), 1e-12)

    def round_trip(p: CarnotPoint) -> float:
        ball = boundary_to_ball(p.xi, p.v)
        z, t = ball_to_boundary(ball)
        scale = max(1.0, q_abs(p.v), float(np.max([q_abs(x) for x in p.xi])))
        return max(q_abs(t - p.v), max(q_abs(x) for x in z - p.xi)) / scale ** 2

    res.check_max("boundary map round trip", (round_trip(a) for a, _, _ in triples), tol.geometric)
    zero = boundary_to_ball(np.zeros(1, dtype=np.quaternion), quat())
    inf = boundary_to_ball(INFINITY, n=2)
    res.check_max("[0,0] -> (0,1) and infinity -> (0,-1)",
                  [max(zero.chordal(_on_standard_line(ONE)), inf.chordal(_on_standard_line(-ONE)))], 0.0)


# ---------------------------------------------------------------------------
# Bisectors
# ---------------------------------------------------------------------------

def _real_plane_caps(z1: BallPoint, z2: BallPoint, w: BallPoint) -> Tuple[Optional[bool], float]:
    """
    Closed half-spaces closer to z_i than to w = origin, restricted to the
    real plane, are Klein-model caps over boundary arcs of half-width
    acos(tanh(d(w, z_i) / 4)).

    Returns (disjoint, direction inside both arcs); disjoint is None within
    0.2 rad of tangency.
    """
    a1 = math.atan2(z1.coords[1].w, z1.coords[0].w)
    delta = (math.atan2(z2.coords[1].w, z2.coords[0].w) - a1 + math.pi) % (2.0 * math.pi) - math.pi
    b1 = math.acos(math.tanh(distance(w, z1) / 4.0))
    b2 = math.acos(math.tanh(distance(w, z2) / 4.0))
    lo, hi = max(a1 - b1, a1 + delta - b2), min(a1 + b1, a1 + delta + b2)
    if abs(abs(delta) - (b1 + b2)) < 0.2:
        return None, 0.0
    return abs(delta) > b1 + b2, 0.5 * (lo + hi)


@suite("bisector")
def _bisector(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    count = res.count
    slices, equidistant, off_line = [], [], []
    for _ in range(max(1, count // 20)):
        g = random_isometry(rng, spread=1.0)
        standard = standard_bisector(float(rng.uniform(0.1, 0.8)))
        b = Bisector(g.apply(standard.z1), g.apply(standard.z2))
        spine = imag_part(random_quaternion(rng))
        spine = spine * (float(rng.uniform(0.0, 0.95)) / max(q_abs(spine), 1e-300))
        slices.extend(abs(bisector_contains(b, g.apply(p))) for p in slice_points(spine, rng, 20))

        complex_spine = b.complex_spine
        for _ in range(20):
            y = random_ball_point(rng, max_radius=0.9)
            side = bisector_contains(b, y)
            if side == 0.0:
                continue
            x = bisector_point_on_ray(b, b.z2 if side < 0.0 else b.z1, y)
            image = project_to_fline(complex_spine, x)
            equidistant.append(abs(distance(image, b.z1) - distance(image, b.z2)))
            off_line.append(complex_spine.residual(image))
    res.check_max("slices lie on random bisectors", slices, tol.geometric)
    res.check_max("bisector points project into the spine", equidistant, tol.geometric)
    res.check_max("spine projections lie on the complex spine", off_line, tol.geometric)

    line = FLine.standard(2)
    pyth, right = [], []
    origin = BallPoint.origin(2)
    for _ in range(count):
        g = random_isometry(rng, spread=1.0)
        u = float(rng.uniform(-0.8, 0.8))
        s = random_quaternion(rng)
        s = s * (float(rng.uniform(0.0, 0.8)) / q_abs(s))
        z = BallPoint(np.array([u * ONE, quat()], dtype=np.quaternion))
        moved_line = FLine(g.apply_lift(line.a), g.apply_lift(line.b))
        moved_z = g.apply(z)
        pyth.append(pythagoras_check(moved_z, moved_line, g.apply(_on_standard_line(s))))

        # z, origin and a real point of the standard line span a right triangle in the real plane
        sigma = float(rng.uniform(0.1, 0.8)) * (1.0 if rng.random() < 0.5 else -1.0)
        w = g.apply(origin)
        leg = FLine.through(w, g.apply(_on_standard_line(sigma * ONE)))
        right.append(project_to_fline(leg, moved_z).chordal(w))
    res.check_max("Pythagorean identity for right configurations", pyth, tol.geometric)
    res.check_max("right triangles project onto their right-angle vertex", right, 1e-8)

    p = BallPoint.of(0.6, 0.1)
    q = BallPoint.of(-0.6, quat(0.0, 0.5))
    mid = project_to_fline(line, segment_point(p, q, 0.5))
    geo = geodesic_through(project_to_fline(line, p), project_to_fline(line, q))
    res.check_min("projected midpoint leaves the projected geodesic", [distance_to_geodesic(mid, geo)], 1e-3)

    agree = []
    w = BallPoint.origin(2)
    tried = 0
    while len(agree) < min(count, 100) and tried < 50 * max(count, 100):
        tried += 1
        r1, r2 = rng.uniform(0.3, 0.95, size=2)
        t1, t2 = rng.uniform(0.0, 2.0 * math.pi, size=2)
        z1 = BallPoint.of(r1 * math.cos(t1), r1 * math.sin(t1))
        z2 = BallPoint.of(r2 * math.cos(t2), r2 * math.sin(t2))
        verdict, direction = _real_plane_caps(z1, z2, w)
        if verdict is None:
            continue
        if verdict:
            samples = [random_ball_point(rng, 2, "H", max_radius=0.999) for _ in range(50)]
            samples += [random_ball_point(rng, 2, "R", max_radius=0.999) for _ in range(50)]
            common = any(halfspace_side(z1, w, y) >= 0 and halfspace_side(z2, w, y) >= 0 for y in samples)
        else:
            y = BallPoint.of(0.9999 * math.cos(direction), 0.9999 * math.sin(direction))
            common = halfspace_side(z1, w, y) >= 0 and halfspace_side(z2, w, y) >= 0
        agree.append(0.0 if common != verdict else 1.0)
    res.check_max("half-space disjointness is decided in the real plane", agree, 0.0)


# ---------------------------------------------------------------------------
# Invariants
# ---------------------------------------------------------------------------

# Absolute spine check only below this tan A; tan A is unbounded as A -> pi/2
SPINE_TAN_LIMIT = 10.0

PERMUTATIONS = ((0, 1, 2), (1, 2, 0), (2, 0, 1), (1, 0, 2), (0, 2, 1), (2, 1, 0))


@suite("cartan")
def _cartan(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    triples = [random_boundary_triple(rng) for _ in range(res.count)]
    res.check_max("permutation invariance",
                  (max(cartan_angular(x.permuted(o)) for o in PERMUTATIONS)
                   - min(cartan_angular(x.permuted(o)) for o in PERMUTATIONS) for x in triples), tol.algebraic)
    gs = [random_isometry(rng) for _ in range(min(res.count, 100))]
    res.check_max("isometry invariance",
                  (abs(cartan_angular(x.mapped(g)) - cartan_angular(x)) for g, x in zip(gs, triples)), 1e-10)

    spine_pairs = [(math.tan(cartan_angular(x)), math.sinh(dist_to_spine(x))) for x in triples]
    res.check_max("tan A equals sinh of the spine distance",
                  (abs(t - s) for t, s in spine_pairs if t <= SPINE_TAN_LIMIT), tol.geometric)
    res.check_max("tan A equals sinh of the spine distance, scaled by max(1, tan A)",
                  (abs(t - s) / max(1.0, t) for t, s in spine_pairs), tol.geometric)
    minus, plus = standard_pair(2)
    worked = Triple(minus, plus, BallPoint.of(math.sqrt(3.0) / 2.0, quat(0.0, 0.5)))
    res.check_max("worked case tan A = 4/3", [abs(math.tan(cartan_angular(worked)) - 4.0 / 3.0)], 1e-12)

    real_plane, fline = [], []
    conv_real, conv_fline = [], []
    for g in gs:
        angles = rng.uniform(0.0, 2.0 * math.pi, size=3)
        x = Triple(*(_real_boundary(a) for a in angles)).mapped(g)
        real_plane.append(cartan_angular(x))
        conv_real.append(real_circle_residual(x))
        y = Triple(*(_on_standard_line(random_unit_quaternion(rng)) for _ in range(3))).mapped(g)
        fline.append(abs(cartan_angular(y) - math.pi / 2.0))
        conv_fline.append(fline_residual(y))
    res.check_max("real-plane triples have A = 0", real_plane, tol.geometric)
    res.check_max("H-line triples have A = pi/2", fline, tol.geometric)
    res.check_max("A = 0 triples lie on a real circle", conv_real, tol.geometric)
    res.check_max("A = pi/2 triples lie on an H-line", conv_fline, tol.geometric)


@suite("toledo")
def _toledo(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    triples = [random_boundary_triple(rng) for _ in range(min(res.count, 500))]
    res.check_max("Gauss-Bonnet area equals 2A", (abs(toledo_via_area(x) - toledo(x)) for x in triples), tol.oracle)
    ideal = Triple(*(_on_standard_line(z) for z in (-ONE, ONE, I)))
    res.check_max("ideal H-line triangle has tau = pi", [abs(toledo(ideal) - math.pi)], tol.geometric)


@suite("isometry")
def _isometry(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    misses = []
    for _ in range(min(res.count, 100)):
        x = random_boundary_triple(rng)
        g = random_isometry(rng)
        y = x.mapped(g)
        f = triple_isometry(x, y)
        misses.append(math.inf if f is None else max(f.apply(p).chordal(g.apply(p)) for p in x.points))
    res.check_max("triple isometry reproduces g on the triple", misses, 1e-8)
    minus, plus = standard_pair(2)
    flat = Triple(minus, plus, _real_boundary(0.3))
    tall = Triple(minus, plus, _on_standard_line(I))
    res.check_max("different invariants give no isometry", [0.0 if triple_isometry(flat, tall) is None else 1.0], 0.0)


@suite("character")
def _character(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    cochains = [FOUR_PI * toledo(random_boundary_triple(rng)) for _ in range(res.count)]
    res.check_max("cochain bounded by 4 pi^2", (abs(c) - CHARACTER_BOUND for c in cochains), tol.geometric)
    tri = TriangulatedCycle.of([(1, ("a", "b", "c"))])
    hline = {"a": _on_standard_line(-ONE), "b": _on_standard_line(ONE), "c": _on_standard_line(I)}
    report = character_eval(tri, hline, require_closed=False)
    res.check_max("H-line ideal triangle attains 4 pi^2", [abs(report.value - CHARACTER_BOUND)], 1e-8)
    tetra = TriangulatedCycle.of([(1, "bcd"), (-1, "acd"), (1, "abd"), (-1, "abc")])
    real_map = {label: _real_boundary(float(a)) for label, a in zip("abcd", rng.uniform(0.0, 2.0 * math.pi, size=4))}
    res.check_max("real-circle cycle evaluates to 0", [abs(character_eval(tetra, real_map).value)], tol.geometric)

    quad = [random_unit_quaternion(rng) for _ in range(4)]
    labels = dict(zip("pqrs", (_on_standard_line(z) for z in quad)))
    chain = TriangulatedCycle.of([(1, "pqr"), (1, "prs")])
    value = character_eval(chain, labels, require_closed=False).value
    line = FLine.through(labels["p"], labels["q"])
    areas = [triangle_area_gb(labels[a], labels[b], labels[c], line) for a, b, c in ("pqr", "prs")]
    res.check_max("H-line quadrilateral gives 4 pi x area", [abs(value - FOUR_PI * math.fsum(areas))], 1e-8)


# ---------------------------------------------------------------------------
# Groups
# ---------------------------------------------------------------------------

@suite("bending")
def _bending(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    G = schottky_amalgam_example(eps=0.5)
    res.check_max("axis translation length", [abs(translation_length(G.axis) - 0.5)], tol.geometric)
    res.check_min("collar inequality holds", [1.0 if collar_check(0.5, math.log(63.0)) else 0.0], 0.5)
    axis = ImaginaryDirection((1.0, 0.0, 0.0))
    count = max(16, min(res.count, 48))
    samples = limit_set_sample(G, 6, count, int(rng.integers(1 << 31)))
    res.check_max("Fuchsian limit samples lie on the real circle",
                  (max(imag_abs(c) for c in p.coords) for p in samples), 1e-8)
    etas = np.linspace(0.015, 0.3, 20)
    sweep = marker_sweep(G, axis, [0.0, *etas])
    res.check_max("marker invariant vanishes at eta = 0", [sweep[0][1]], tol.geometric)
    markers = [m for _, m in sweep[1:]]
    res.check_min("marker invariant is injective on the grid",
                  (b - a for a, b in zip(sorted(markers), sorted(markers)[1:])), 1e-6)
    res.check_min("marker invariant is positive", markers, 0.0)
    res.check_max("marker invariant is below pi/2", markers, math.pi / 2.0 - 1e-9)

    bent = bend(G, unit_rotation(axis, 0.2))
    res.check_max("bent generators preserve the form", [bent.max_residual()], 1e-9)
    res.check_max("restriction to Gamma_1 is the inclusion",
                  [max(g.distance_to(h) for g, h in zip(bent.gamma1, G.gamma1)), bent.axis.distance_to(G.axis)], 0.0)
    bent_samples = limit_set_sample(bent, 6, count, 11)
    res.check_min("bent limit set leaves the real circle", [max(real_circle_offset(p) for p in bent_samples)], 1e-3)

    word = parse_word("b1 a C1 b1")
    step = 1e-6
    near = [evaluate_word(bend(G, unit_rotation(axis, e)), word) for e in (0.1, 0.1 + step)]
    scale = float(np.max(np.abs(near[0].embedded)))
    res.check_max("representation is continuous in eta", [near[0].distance_to(near[1]) / scale], 1e-4)
    attracting, _ = fixed_points(evaluate_word(bent, parse_word("c1")))
    res.check_max("attracting fixed point is fixed",
                  [bent.gamma2[0].apply(attracting).chordal(attracting)], tol.geometric)


@suite("realbend")
def _realbend(res: SuiteResult, rng: np.random.Generator, tol: Tolerances):
    D = real_bend_example()
    bent = real_bend_octonion_line(D, 0.25)
    res.check_max("deformed generators preserve the (8,1) form", [bent.max_residual()], 1e-9)
    res.check_max("restriction to Gamma_1 is the inclusion",
                  [float(np.max(np.abs(a - b))) for a, b in zip(bent.gamma1, D.gamma1)], 0.0)
    count = max(16, min(res.count, 32))
    seed = int(rng.integers(1 << 31))
    flat = real_limit_sample(D, 5, count, seed)
    res.check_max("undeformed limit set stays in H^4", (h4_offset(o) for o in flat), tol.geometric)
    moved = real_limit_sample(bent, 5, count, seed)
    res.check_min("deformed limit set leaves H^4", [max(h4_offset(o) for o in moved)], 1e-3)
    angles = []
    for a, b, c in zip(moved, moved[1:], moved[2:]):
        gaps = (a - b, b - c, c - a)
        if min(o_abs(g) for g in gaps) < 1e-6:
            continue
        angles.append(abs(octonion_line_angular(a, b, c) - math.pi / 2.0))
    res.check_max("O-line triples have angular invariant pi/2", angles, tol.geometric)


def run_suites(names, seed: int = 7, count: int = 1000, tolerances: Optional[Tolerances] = None) -> List[SuiteResult]:
    return [run_suite(name, seed, count, tolerances) for name in names]

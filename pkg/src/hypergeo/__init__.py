"""
Quaternionic and octonionic hyperbolic geometry: algebra, the Hermitian
ball model, Carnot coordinates, bisectors, angular invariants and bending
deformations of Fuchsian groups.
"""

from .algebra import (
    I,
    J,
    K,
    ONE,
    ZERO,
    ImaginaryDirection,
    Octonion,
    Quaternion,
    associator,
    line_angle,
    o_mul,
    quat,
    unit_rotation,
)
from .errors import (
    ChainNotClosedError,
    DegenerateTripleError,
    DimensionMismatchError,
    DomainError,
    GroupDataError,
    HypergeoError,
    InfiniteDistanceError,
    InputFormatError,
    NotLoxodromicError,
    NotOnLineError,
    OutsideConeError,
    SingularSystemError,
)
from .geometry import (
    Bisector,
    FLine,
    Geodesic,
    bisector_contains,
    dirichlet_membership,
    dist_to_spine,
    geodesic_point,
    halfspace_side,
    move_to_standard,
    project_to_fline,
    pythagoras_check,
    spine_point,
)
from .groups import (
    GroupData,
    bend_amalgam,
    bend_hnn,
    collar_check,
    embed_fuchsian,
    fixed_points,
    limit_set_sample,
    marker_invariant,
    rotation_U,
    schottky_amalgam_example,
    translation_length,
)
from .hermitian import (
    BallPoint,
    BoundaryPoint,
    HVector,
    InteriorPoint,
    Isometry,
    Triple,
    axis_translation,
    distance,
    form,
    lift,
    triple_product,
)
from .invariants import (
    TriangulatedCycle,
    cartan_angular,
    character_eval,
    octonion_angular,
    toledo,
    triangle_area_gb,
    triple_isometry,
)
from .models import (
    INFINITY,
    CarnotElement,
    CarnotPoint,
    ball_to_boundary,
    boundary_to_ball,
    carnot_mul,
    cygan_dist,
    cygan_norm,
)
from .realbend import RealBendData, real_bend_octonion_line

__version__ = "1.0.0"

__all__ = [
    'I', 'J', 'K', 'ONE', 'ZERO',
    'ImaginaryDirection', 'Octonion', 'Quaternion',
    'associator', 'line_angle', 'o_mul', 'quat', 'unit_rotation',
    'ChainNotClosedError', 'DegenerateTripleError', 'DimensionMismatchError', 'DomainError',
    'GroupDataError', 'HypergeoError', 'InfiniteDistanceError', 'InputFormatError',
    'NotLoxodromicError', 'NotOnLineError', 'OutsideConeError', 'SingularSystemError',
    'Bisector', 'FLine', 'Geodesic',
    'bisector_contains', 'dirichlet_membership', 'dist_to_spine', 'geodesic_point',
    'halfspace_side', 'move_to_standard', 'project_to_fline', 'pythagoras_check', 'spine_point',
    'GroupData', 'bend_amalgam', 'bend_hnn', 'collar_check', 'embed_fuchsian', 'fixed_points',
    'limit_set_sample', 'marker_invariant', 'rotation_U', 'schottky_amalgam_example',
    'translation_length',
    'BallPoint', 'BoundaryPoint', 'HVector', 'InteriorPoint', 'Isometry', 'Triple',
    'axis_translation', 'distance', 'form', 'lift', 'triple_product',
    'TriangulatedCycle', 'cartan_angular', 'character_eval', 'octonion_angular', 'toledo',
    'triangle_area_gb', 'triple_isometry',
    'INFINITY', 'CarnotElement', 'CarnotPoint', 'ball_to_boundary', 'boundary_to_ball',
    'carnot_mul', 'cygan_dist', 'cygan_norm',
    'RealBendData', 'real_bend_octonion_line',
]

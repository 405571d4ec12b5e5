"""3x3 orthogonal matrices: build rotations, reflections and rotoreflections
about an arbitrary axis, and decompose orthogonal matrices back into their
geometric elements, over a float backend or exact quadratic-tower scalars."""

from .errors import (
    DivisionByZero,
    Inconclusive,
    IncompatibleTowers,
    InvalidAngle,
    InvalidTower,
    NegativeRadicand,
    NonUnitAxis,
    NotOrthogonal,
    ParseError,
    ZeroAxis,
)
from .isometry import (
    AngleRep,
    AxisAngle,
    Decomposition,
    InvariantReport,
    Kind,
    UnitAxis,
    classify,
    complete_orthonormal_basis,
    cross_matrix,
    invariant_report,
    orthogonality_residual,
    projection_matrix,
    rebuild,
    reflection_matrix,
    rotation_matrix,
    rotoreflection_matrix,
)
from .linalg3 import ExactBackend, FloatBackend, Mat3, Vec3, infer_backend, outer
from .qfield import QQ, Interval, TowerElem, TowerField, parse_scalar
from .qfield import sqrt as tower_sqrt

__version__ = "0.1.0"

__all__ = [
    "AngleRep",
    "AxisAngle",
    "Decomposition",
    "DivisionByZero",
    "ExactBackend",
    "FloatBackend",
    "Inconclusive",
    "IncompatibleTowers",
    "Interval",
    "InvalidAngle",
    "InvalidTower",
    "InvariantReport",
    "Kind",
    "Mat3",
    "NegativeRadicand",
    "NonUnitAxis",
    "NotOrthogonal",
    "ParseError",
    "QQ",
    "TowerElem",
    "TowerField",
    "UnitAxis",
    "Vec3",
    "ZeroAxis",
    "classify",
    "complete_orthonormal_basis",
    "cross_matrix",
    "infer_backend",
    "invariant_report",
    "orthogonality_residual",
    "outer",
    "parse_scalar",
    "projection_matrix",
    "rebuild",
    "reflection_matrix",
    "rotation_matrix",
    "rotoreflection_matrix",
    "tower_sqrt",
]

"""Axis-angle construction and decomposition of 3x3 orthogonal matrices.

Direct problem: from a unit axis u = (a, b, c)^t and an angle given as the
pair (cos, sin), build the projection A = u u^t, the cross-product matrix B,
the rotation R = I + sin*B + (cos - 1)(I - A), the reflection S = I - 2A
through the plane normal to u, and the rotoreflection SR = RS.

Inverse problem: :func:`classify` splits an orthogonal matrix into its
determinant, the trace-derived cosine, and the antisymmetric part, which
carries sin * (a, b, c) and therefore fixes the sign of the sine outright;
no two-branch arccos disambiguation is ever needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .errors import InvalidAngle, NonUnitAxis, NotOrthogonal, ZeroAxis
from .linalg3 import Mat3, Vec3, infer_backend, outer

_TWO_PI = 2.0 * math.pi


class Kind(Enum):
    IDENTITY = "identity"
    ROTATION = "rotation"
    REFLECTION = "reflection"
    ROTOREFLECTION = "rotoreflection"
    POINT_INVERSION = "point_inversion"


@dataclass(frozen=True, eq=False)
class UnitAxis:
    """Unit vector u = (a, b, c)^t spanning the rotation axis."""

    vec: Vec3

    @property
    def a(self):
        return self.vec.x

    @property
    def b(self):
        return self.vec.y

    @property
    def c(self):
        return self.vec.z

    @classmethod
    def from_vec(cls, v: Vec3, backend=None) -> UnitAxis:
        axis = cls(v)
        _check_unit(axis, backend or infer_backend(tuple(v)))
        return axis

    @classmethod
    def normalize(cls, v: Vec3, backend=None) -> UnitAxis:
        """Scale an arbitrary nonzero vector to unit length.

        In the exact backend the needed square root may extend the tower.
        Only the exactly-zero vector is rejected: a tiny one still names a
        direction and normalizes accurately.
        """
        b = backend or infer_backend(tuple(v))
        norm2 = v.dot(v)
        if norm2 == 0:
            raise ZeroAxis("zero axis vector")
        if b.eq(norm2, 1):
            return cls(v)
        n = b.sqrt(norm2)
        return cls(Vec3(v.x / n, v.y / n, v.z / n))

    def __repr__(self) -> str:
        return f"UnitAxis({self.vec!r})"


@dataclass(frozen=True, eq=False)
class AngleRep:
    """Angle stored as the pair (cos, sin) plus an optional degree readout."""

    cos_alpha: object
    sin_alpha: object
    degrees: float | None = None

    @classmethod
    def from_degrees(cls, deg: float) -> AngleRep:
        deg = deg % 360.0
        rad = math.radians(deg)
        return cls(math.cos(rad), math.sin(rad), deg)

    @classmethod
    def from_pair(cls, cos_alpha, sin_alpha, backend=None) -> AngleRep:
        b = backend or infer_backend((cos_alpha, sin_alpha))
        angle = cls(cos_alpha, sin_alpha)
        _check_angle(angle, b)
        return cls(cos_alpha, sin_alpha, _degrees_of(cos_alpha, sin_alpha, b))

    def __repr__(self) -> str:
        return f"AngleRep(cos={self.cos_alpha!r}, sin={self.sin_alpha!r})"


@dataclass(frozen=True, eq=False)
class AxisAngle:
    axis: UnitAxis
    angle: AngleRep


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Classification of an orthogonal matrix into its geometric elements.

    ``axis`` is absent for the identity and for the point inversion (every
    axis would do for -I, so reporting one would be fabricated data); ``angle``
    is absent only for the identity.
    """

    kind: Kind
    axis: UnitAxis | None
    angle: AngleRep | None
    determinant: int
    orthogonality_residual: float

    @property
    def axis_angle(self) -> AxisAngle | None:
        if self.axis is not None and self.angle is not None:
            return AxisAngle(self.axis, self.angle)
        return None


@dataclass(frozen=True)
class InvariantReport:
    det: object
    trace: object
    orthogonality_residual: float


# ---------------------------------------------------------------------------
# validation helpers
# ---------------------------------------------------------------------------

def _check_unit(axis: UnitAxis, b) -> None:
    n2 = axis.vec.dot(axis.vec)
    if not b.eq(n2, 1):
        raise NonUnitAxis(f"axis norm^2 is {n2!r}, expected 1")


def _check_angle(angle: AngleRep, b) -> None:
    c, s = angle.cos_alpha, angle.sin_alpha
    if not b.eq(c * c + s * s, 1):
        raise InvalidAngle(f"cos^2 + sin^2 != 1 for {angle!r}")


def _degrees_of(cos_alpha, sin_alpha, b) -> float:
    rad = math.atan2(b.to_float(sin_alpha), b.to_float(cos_alpha)) % _TWO_PI
    return math.degrees(rad)


def _backend_for(M: Mat3, backend, tol):
    if backend is not None:
        return backend
    return infer_backend(M.entries, 1e-9 if tol is None else tol)


# ---------------------------------------------------------------------------
# direct problem
# ---------------------------------------------------------------------------

def projection_matrix(axis: UnitAxis, backend=None) -> Mat3:
    """Orthogonal projection A = u u^t onto the axis line."""
    b = backend or infer_backend(tuple(axis.vec))
    _check_unit(axis, b)
    return outer(axis.vec, axis.vec)


def cross_matrix(axis: UnitAxis, backend=None) -> Mat3:
    """Antisymmetric B with B v = u ^ v; satisfies -B^2 = I - A."""
    b = backend or infer_backend(tuple(axis.vec))
    _check_unit(axis, b)
    ax, ay, az = axis.vec.x, axis.vec.y, axis.vec.z
    return Mat3.from_rows([[0, -az, ay], [az, 0, -ax], [-ay, ax, 0]])


def rotation_matrix(axis: UnitAxis, angle: AngleRep, backend=None) -> Mat3:
    """R = I + sin*B + (cos - 1)(I - A); proper rotation about the axis."""
    b = backend or infer_backend(tuple(axis.vec) + (angle.cos_alpha, angle.sin_alpha))
    _check_unit(axis, b)
    _check_angle(angle, b)
    eye = Mat3.identity()
    A = outer(axis.vec, axis.vec)
    B = cross_matrix(axis, b)
    return eye + B.scale(angle.sin_alpha) + (eye - A).scale(angle.cos_alpha - 1)


def reflection_matrix(axis: UnitAxis, backend=None) -> Mat3:
    """S = I - 2A; reflection through the plane normal to the axis."""
    b = backend or infer_backend(tuple(axis.vec))
    _check_unit(axis, b)
    return Mat3.identity() - outer(axis.vec, axis.vec).scale(2)


def rotoreflection_matrix(axis: UnitAxis, angle: AngleRep, backend=None) -> Mat3:
    """SR = RS = S + sin*B + (cos - 1)(I - A)."""
    b = backend or infer_backend(tuple(axis.vec) + (angle.cos_alpha, angle.sin_alpha))
    _check_unit(axis, b)
    _check_angle(angle, b)
    eye = Mat3.identity()
    A = outer(axis.vec, axis.vec)
    B = cross_matrix(axis, b)
    return reflection_matrix(axis, b) + B.scale(angle.sin_alpha) + (eye - A).scale(
        angle.cos_alpha - 1
    )


def complete_orthonormal_basis(axis: UnitAxis, backend=None) -> tuple[Vec3, Vec3]:
    """Vectors v, w with {u, v, w} right-handed orthonormal and w = u ^ v.

    Away from the poles, v = (-b, a, 0)/h with h = sqrt(a^2 + b^2); at a pole
    (a = b = 0, tested exactly: the quotients stay well-scaled however small
    h is) the basis degenerates to v = e1, w = u ^ e1.
    """
    b = backend or infer_backend(tuple(axis.vec))
    _check_unit(axis, b)
    ax, ay = axis.vec.x, axis.vec.y
    h2 = ax * ax + ay * ay
    if h2 == 0:
        v = Vec3(1, 0, 0)
    else:
        h = b.sqrt(h2)
        v = Vec3(-ay / h, ax / h, 0)
    return v, axis.vec.cross(v)


# ---------------------------------------------------------------------------
# inverse problem
# ---------------------------------------------------------------------------

def orthogonality_residual(M: Mat3, backend=None) -> float:
    """Max-norm of M^t M - I as a float; zero for exactly orthogonal input."""
    b = backend or infer_backend(M.entries)
    diff = M.transpose() @ M - Mat3.identity()
    return max(abs(b.to_float(e)) for e in diff.entries)


def invariant_report(M: Mat3, backend=None) -> InvariantReport:
    """Determinant, trace and orthogonality residual; no classification."""
    b = backend or infer_backend(M.entries)
    return InvariantReport(M.det(), M.trace(), orthogonality_residual(M, b))


def classify(M: Mat3, backend=None, tol: float | None = None) -> Decomposition:
    """Decompose an orthogonal matrix into kind, axis and signed angle.

    Procedure: the determinant snaps to d = +/-1; the trace gives
    cos = (tr - d)/2 (trace is 1 + 2cos for rotations, -1 + 2cos for
    rotoreflections); the antisymmetric part (M - M^t)/2 equals sin * B, so
    its three independent entries are sin * (a, b, c) and determine both the
    axis and the sign of the sine.  When that part vanishes the axis, if any,
    is recovered from the rank-1 projection built out of the symmetric part.

    The reported axis is canonical: its first nonzero component is positive,
    with (axis, sin) flipped together, so angles land in [0, 2pi).
    """
    b = _backend_for(M, backend, tol)
    res = orthogonality_residual(M, b)
    eye = Mat3.identity()
    MtM = M.transpose() @ M
    for i in range(3):
        for j in range(3):
            if not b.eq(MtM[i, j], eye[i, j]):
                raise NotOrthogonal(res)

    d_raw = M.det()
    if b.mode == "float":
        det = 1 if d_raw > 0 else -1
    elif b.eq(d_raw, 1):
        det = 1
    elif b.eq(d_raw, -1):
        det = -1
    else:
        raise NotOrthogonal(res)

    half = b.from_rational(Fraction(1, 2))
    cos = (M.trace() - det) * half
    if b.mode == "float":
        cos = min(1.0, max(-1.0, cos))

    m = Vec3(
        (M[2, 1] - M[1, 2]) * half,
        (M[0, 2] - M[2, 0]) * half,
        (M[1, 0] - M[0, 1]) * half,
    )

    if not all(b.is_zero(c) for c in m):
        sin_mag = b.sqrt(m.dot(m))
        u = _float_stable_axis(M, m, sin_mag, cos, det, b)
        if u is None:
            u = Vec3(m.x / sin_mag, m.y / sin_mag, m.z / sin_mag)
            u, sin = _canonical_flip(u, sin_mag, b)
        else:
            sin = sin_mag if m.dot(u) > 0 else -sin_mag
        _check_pair_consistency(cos, sin, b, res)
        kind = Kind.ROTATION if det == 1 else Kind.ROTOREFLECTION
        angle = AngleRep(cos, sin, _degrees_of(cos, sin, b))
        return Decomposition(kind, UnitAxis(u), angle, det, res)

    # sin = 0: cos must be +1 or -1
    if b.eq(cos, 1):
        cos_snap = 1
    elif b.eq(cos, -1):
        cos_snap = -1
    else:
        raise NotOrthogonal(res)

    one = b.from_rational(1)
    zero = b.from_rational(0)
    if det == 1 and cos_snap == 1:
        return Decomposition(Kind.IDENTITY, None, None, det, res)
    if det == -1 and cos_snap == -1:
        angle = AngleRep(-one, zero, 180.0)
        return Decomposition(Kind.POINT_INVERSION, None, angle, det, res)
    if det == 1:  # cos = -1: rotation by pi, M = 2A - I
        proj = (M + eye).scale(half)
        u = _axis_from_projection(proj, b)
        angle = AngleRep(-one, zero, 180.0)
        return Decomposition(Kind.ROTATION, UnitAxis(u), angle, det, res)
    # det = -1, cos = +1: reflection, M = I - 2A
    proj = (eye - M).scale(half)
    u = _axis_from_projection(proj, b)
    angle = AngleRep(one, zero, 0.0)
    return Decomposition(Kind.REFLECTION, UnitAxis(u), angle, det, res)


def rebuild(dec: Decomposition, backend=None) -> Mat3:
    """Reconstruct the matrix a decomposition came from."""
    if dec.kind is Kind.IDENTITY:
        return Mat3.identity()
    if dec.kind is Kind.POINT_INVERSION:
        return -Mat3.identity()
    if dec.kind is Kind.ROTATION:
        return rotation_matrix(dec.axis, dec.angle, backend)
    if dec.kind is Kind.REFLECTION:
        return reflection_matrix(dec.axis, backend)
    return rotoreflection_matrix(dec.axis, dec.angle, backend)


def _canonical_flip(u: Vec3, sin, b):
    """Make the first nonzero axis component positive, negating sin in step."""
    for comp in u:
        if b.is_zero(comp):
            continue
        if b.sign(comp) < 0:
            return -u, (None if sin is None else -sin)
        return u, sin
    raise ZeroAxis("axis vanished during canonicalization")


def _float_stable_axis(M: Mat3, m: Vec3, sin_mag, cos, det: int, b):
    """Axis from the symmetric part when the antisymmetric route is shaky.

    Dividing m by a small |sin| amplifies input noise, so once the turn is
    closer to the half-turn (rotations, cos < 0) or to the plain mirror
    (rotoreflections, cos > 0) the axis is read off the rank-1 projection
    hidden in (M + M^t)/2, which stays well-conditioned exactly there.
    Returns None when the antisymmetric route is the better-conditioned one
    (always, in the exact backend: it yields the closed-form axis).
    """
    if b.mode != "float":
        return None
    eye = Mat3.identity()
    sym = (M + M.transpose()).scale(0.5)
    if det == 1 and cos < 0.0:
        # M_sym = I + (cos - 1)(I - A)
        proj = eye - (eye - sym).scale(1.0 / (1.0 - cos))
    elif det == -1 and cos > 0.0:
        # M_sym = I - 2A + (cos - 1)(I - A)
        proj = (eye.scale(cos) - sym).scale(1.0 / (1.0 + cos))
    else:
        return None
    return _axis_from_projection(proj, b)


def _check_pair_consistency(cos, sin, b, res: float) -> None:
    value = cos * cos + sin * sin
    if b.mode == "float":
        if abs(value - 1.0) > 100 * b.tol:
            raise NotOrthogonal(res)
    elif not b.eq(value, 1):
        raise NotOrthogonal(res)


def _axis_from_projection(proj: Mat3, b) -> Vec3:
    """Axis of a symmetric rank-1 projection: its largest column, normalized.

    Ties between equal-norm columns resolve to the lowest column index.
    """
    cols = [proj.col(j) for j in range(3)]
    norms2 = [c.dot(c) for c in cols]
    best = 0
    for j in (1, 2):
        if b.lt(norms2[best], norms2[j]):
            best = j
    n = b.sqrt(norms2[best])
    if b.is_zero(n):
        raise NotOrthogonal(0.0)
    col = cols[best]
    u = Vec3(col.x / n, col.y / n, col.z / n)
    u, _ = _canonical_flip(u, None, b)
    return u

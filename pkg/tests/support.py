"""Shared helpers for the test suite: random samplers and comparison utils."""

from __future__ import annotations

import io
import json
import math
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from ortho3 import AngleRep, Mat3, UnitAxis, Vec3, parse_scalar, tower_sqrt
from ortho3.qfield.tower import QQ, TowerElem, TowerField


def max_abs_diff(A: Mat3, B: Mat3) -> float:
    return max(abs(float(a) - float(b)) for a, b in zip(A.entries, B.entries))


def mat_equal_exact(A: Mat3, B: Mat3) -> bool:
    return all(a == b for a, b in zip(A.entries, B.entries))


def vec_max_diff(u: Vec3, v: Vec3) -> float:
    return max(abs(float(a) - float(b)) for a, b in zip(u, v))


def rand_unit_axis(rng) -> UnitAxis:
    while True:
        v = Vec3(rng.gauss(0, 1), rng.gauss(0, 1), rng.gauss(0, 1))
        n = math.sqrt(v.dot(v))
        if n > 1e-6:
            return UnitAxis(Vec3(v.x / n, v.y / n, v.z / n))


def rand_angle(rng) -> AngleRep:
    return AngleRep.from_degrees(rng.uniform(0.0, 360.0))


def rational_unit_axis(rng) -> UnitAxis:
    """Exact unit axis from the quadruple (m,n,p,q) -> a^2+b^2+c^2 = d^2."""
    while True:
        m, n, p, q = (rng.randint(-5, 5) for _ in range(4))
        d = m * m + n * n + p * p + q * q
        if d == 0:
            continue
        a = m * m + n * n - p * p - q * q
        b = 2 * (m * q + n * p)
        c = 2 * (n * q - m * p)
        return UnitAxis(Vec3(Fraction(a, d), Fraction(b, d), Fraction(c, d)))


def rational_angle(rng) -> AngleRep:
    """Exact angle pair cos = (1-t^2)/(1+t^2), sin = 2t/(1+t^2)."""
    t = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
    den = 1 + t * t
    return AngleRep((1 - t * t) / den, 2 * t / den)


def random_tower(rng, depth: int = 3) -> TowerField:
    """A tower of the requested depth built from small integer radicands."""
    field = QQ
    candidates = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23]
    while field.depth < depth:
        d = rng.choice(candidates)
        root = tower_sqrt(field.rational(d))
        if root.field.depth > field.depth:
            field = root.field
    return field


def random_elem(rng, field: TowerField, span: int = 9) -> TowerElem:
    value = field.zero
    gens = field.generators()
    for index in range(1 << field.depth):
        coeff = Fraction(rng.randint(-span, span), rng.randint(1, span))
        term = field.rational(coeff)
        for i in range(field.depth):
            if index >> i & 1:
                term = term * gens[i]
        value = value + term
    return value


def reference_rotation_document() -> str:
    """The worked sqrt(2)/sqrt(3) rotation sample as a matrix document."""
    return json.dumps(
        {
            "mode": "exact",
            "scale": "1/(sqrt(2)*sqrt(3))",
            "matrix": [
                ["sqrt(2)", "sqrt(3)", "1"],
                ["sqrt(2)", "-sqrt(3)", "1"],
                ["sqrt(2)", "0", "-2"],
            ],
        }
    )


def reference_rotation_matrix() -> tuple[Mat3, TowerField]:
    """The same sample as an exact Mat3 over Q(sqrt(2), sqrt(3))."""
    p = parse_scalar("sqrt(2)")
    q = parse_scalar("sqrt(3)", p.field)
    field = q.field
    p = p.lift(field)
    scale = (p * q).inverse()
    rows = [
        [p, q, field.one],
        [p, -q, field.one],
        [p, field.zero, field.rational(-2)],
    ]
    return Mat3.from_rows(rows).scale(scale), field


def run_cli(argv, stdin: str | None = None):
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""
    from ortho3.cli import main

    out, err = io.StringIO(), io.StringIO()
    old_stdin = sys.stdin
    if stdin is not None:
        sys.stdin = io.StringIO(stdin)
    try:
        with redirect_stdout(out), redirect_stderr(err):
            code = main(argv)
    finally:
        sys.stdin = old_stdin
    return code, out.getvalue(), err.getvalue()

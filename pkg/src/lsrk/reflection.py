"""Node reflection of two-register schemes, and the three-stage scheme curve.

The transformation c_i -> 1 - c_{s+2-i}, d_i -> d_{s+2-i} maps a valid scheme
of order p <= 4 to another valid scheme of the same order, so most published
schemes come in mirror pairs.  Working on (c, d) directly is the production
path; the matrix route T (G^{-1} A G)^T T is kept as an independent oracle
(matrix products lose precision for high stage counts).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exceptions import NoDFormError
from .linalg import Matrix, mat_mul
from .matrices import anti_transpose, build_G, reconstruct_augmented
from .scalars import Number, exact_sqrt, is_exact
from .schemes import DForm, TwoNScheme, dform_to_twon, twon_to_dform

#: default tolerance for declaring a binary64 scheme its own mirror
SELF_REFLECTED_TOL = 1e-12


@dataclass(frozen=True)
class ReflectionPair:
    """A scheme, its mirror, and the mirror's augmented tableau computed by
    both routes (they agree exactly in rational arithmetic)."""

    original: DForm
    reflected: DForm
    matrix_route: Matrix
    practical_route: Matrix


def reflect_dform(df: DForm) -> DForm:
    """c_i -> 1 - c_{s+2-i}, d_i -> d_{s+2-i}; an involution.  Adjacent-node
    distinctness survives, so the result is always a valid d-form."""
    n = df.s + 1
    c = tuple(1 - df.c[n - 1 - i] for i in range(n))
    d = tuple(df.d[n - 1 - i] for i in range(n))
    return DForm(s=df.s, c=c, d=d)


def reflect_scheme(sch: TwoNScheme) -> TwoNScheme:
    """Mirror a two-register scheme through its (c, d) form.

    Raises :class:`NoDFormError` for schemes with coincident adjacent nodes
    (those have no mirror counterpart).
    """
    return dform_to_twon(reflect_dform(twon_to_dform(sch)))


def reflect_matrix(aug: Matrix, df: DForm) -> Matrix:
    """Mirror via the augmented tableau: antidiagonal transpose of
    G^{-1} A G, where G is built from the d-form of ``aug``."""
    G = build_G(df.d)
    Ginv = _inverse_of_G(df.d)
    return anti_transpose(mat_mul(mat_mul(Ginv, aug), G))


def _inverse_of_G(d) -> Matrix:
    # G^{-1} is the ratio-product matrix D
    from .matrices import build_D

    return build_D(d)


def reflection_pair(df: DForm) -> ReflectionPair:
    reflected = reflect_dform(df)
    practical = reconstruct_augmented(reflected)
    matrix_route = reflect_matrix(reconstruct_augmented(df), df)
    return ReflectionPair(
        original=df,
        reflected=reflected,
        matrix_route=matrix_route,
        practical_route=practical,
    )


def is_self_reflected(df: DForm, tol: Number = SELF_REFLECTED_TOL) -> bool:
    """True iff the mirror equals the scheme itself within ``tol``."""
    refl = reflect_dform(df)
    dev_c = max(abs(x - y) for x, y in zip(df.c, refl.c))
    dev_d = max(abs(x - y) for x, y in zip(df.d, refl.d))
    return max(dev_c, dev_d) <= tol


def williamson_c3(c2: Number) -> tuple:
    """Real roots c3 of the three-stage two-register constraint

        c3^2 (1 - c2) + c3 (c2^2 + c2/2 - 1) + (1/3 - c2/2) = 0,

    sorted ascending.  Exact rational roots are returned for exact input when
    the discriminant is a perfect square; the c2 = 1 case degenerates to a
    linear equation with the single root 1/3.
    """
    exact = is_exact(c2)
    if exact:
        c2 = Fraction(c2)
        half, third = Fraction(1, 2), Fraction(1, 3)
    else:
        half, third = 0.5, 1.0 / 3.0
    qa = 1 - c2
    qb = c2 * c2 + half * c2 - 1
    qc = third - half * c2
    if qa == 0:
        if qb == 0:
            return ()
        return (-qc / qb,)
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        return ()
    if exact:
        root = exact_sqrt(disc)
        if root is None:
            qa, qb, root = float(qa), float(qb), math.sqrt(float(disc))
    else:
        root = math.sqrt(disc)
    if disc == 0:
        return (-qb / (2 * qa),)
    # stable form: avoid cancellation between -qb and the root
    if qb >= 0:
        q = -(qb + root) / 2
    else:
        q = -(qb - root) / 2
    r1, r2 = q / qa, qc / q
    return tuple(sorted((r1, r2)))


def wcurve_scan(c2_min: float, c2_max: float, step: float) -> list:
    """Scan the scheme curve: (c2, c3, branch) triples for every real root
    across the range, branch numbering the ascending roots per c2.

    Parameter values with no real roots simply contribute nothing; the curve's
    discontinuities are left as gaps in the output.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    points = []
    count = int(round((c2_max - c2_min) / step))
    for k in range(count + 1):
        c2 = c2_min + k * step
        if c2 > c2_max + step * 1e-9:
            break
        for branch, c3 in enumerate(williamson_c3(float(c2))):
            points.append((float(c2), float(c3), branch))
    return points

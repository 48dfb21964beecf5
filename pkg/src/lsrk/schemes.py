"""Scheme representations and the exact conversions between them.

Three equivalent descriptions of an explicit two-register Runge-Kutta method:

* :class:`ButcherTableau` -- the classical (a, b, c) coefficient table,
* :class:`TwoNScheme`     -- the Williamson two-register coefficients A_i, B_i,
* :class:`DForm`          -- nodes c_1..c_{s+1} plus the stage ratios
  d_j = B_j / (c_{j+1} - c_j), the representation in which the tableau
  factorizes and node reflection acts by simple reversal.

Stage indices in documentation and error messages are 1-based (stages 1..s);
tuples are stored 0-based as usual in Python.  All values may be exact
rationals or floats; conversions preserve exactness.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import (
    NoDFormError,
    NotTwoNCompatibleError,
    ZeroDenominatorError,
)
from .scalars import Number, all_exact

#: adjacent nodes closer than this (for float data) count as coincident
NODE_COLLISION_TOL = 1e-14

#: default round-trip residual above which a tableau is declared not
#: realizable in two-register form
TWO_N_ROUNDTRIP_TOL = 1e-10


@dataclass(frozen=True)
class ButcherTableau:
    """Classical tableau of an explicit method: strictly lower ``a``,
    weights ``b``, nodes ``c`` (c_1 = 0)."""

    s: int
    a: tuple
    b: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(tuple(r) for r in self.a))
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))
        if self.s < 2:
            raise ValueError("need at least two stages")
        if len(self.a) != self.s or any(len(r) != self.s for r in self.a):
            raise ValueError("a must be s x s")
        if len(self.b) != self.s or len(self.c) != self.s:
            raise ValueError("b and c must have length s")

    @property
    def exact(self) -> bool:
        return all_exact(self.b) and all_exact(self.c) and all(
            all_exact(r) for r in self.a
        )


@dataclass(frozen=True)
class TwoNScheme:
    """Two-register coefficients: A_1 = 0, all B_i nonzero, nodes ``c``."""

    s: int
    A: tuple
    B: tuple
    c: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "c", tuple(self.c))
        if len(self.A) != self.s or len(self.B) != self.s or len(self.c) != self.s:
            raise ValueError("A, B, c must have length s")
        if self.A[0] != 0:
            raise ValueError("A[1] must be 0")
        if any(B == 0 for B in self.B):
            raise ValueError("all B[i] must be nonzero (a vanishing B drops a stage)")
        if self.c[0] != 0:
            raise ValueError("c[1] must be 0")

    @property
    def exact(self) -> bool:
        return all_exact(self.A) and all_exact(self.B) and all_exact(self.c)


@dataclass(frozen=True)
class DForm:
    """Node/ratio form: ``c`` and ``d`` of length s+1 with c_1 = 0,
    c_{s+1} = 1 and d_1 = d_{s+1} = 1."""

    s: int
    c: tuple
    d: tuple

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "d", tuple(self.d))
        if len(self.c) != self.s + 1 or len(self.d) != self.s + 1:
            raise ValueError("c and d must have length s+1")
        if self.c[0] != 0 or self.c[-1] != 1:
            raise ValueError("need c[1] = 0 and c[s+1] = 1")
        if self.d[0] != 1 or self.d[-1] != 1:
            raise ValueError("need d[1] = d[s+1] = 1")
        for i in range(self.s):
            if _nodes_coincide(self.c[i], self.c[i + 1]):
                raise NoDFormError(i + 1)
        if any(x == 0 for x in self.d):
            raise ValueError("all d[i] must be nonzero")

    @property
    def exact(self) -> bool:
        return all_exact(self.c) and all_exact(self.d)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of :func:`validate`; carries failures instead of raising."""

    valid: bool
    max_row_sum_residual: Number
    max_upper_entry: Number
    c1_residual: Number
    tol: Number


def _nodes_coincide(ci, cj) -> bool:
    diff = cj - ci
    if isinstance(diff, float):
        return abs(diff) < NODE_COLLISION_TOL
    return diff == 0


def validate(tab: ButcherTableau, tol: Number = 0) -> ValidationReport:
    """Check explicitness and the row-sum convention c_i = sum_j a_ij.

    Reports the worst row-sum residual, the largest entry on or above the
    diagonal, and |c_1|; the tableau is valid iff all are within ``tol``.
    """
    upper = max(
        (abs(tab.a[i][j]) for i in range(tab.s) for j in range(i, tab.s)),
        default=0,
    )
    row_res = max(abs(tab.c[i] - sum(tab.a[i][:i])) for i in range(tab.s))
    c1 = abs(tab.c[0])
    return ValidationReport(
        valid=(upper <= tol and row_res <= tol and c1 <= tol),
        max_row_sum_residual=row_res,
        max_upper_entry=upper,
        c1_residual=c1,
        tol=tol,
    )


def twon_to_butcher(sch: TwoNScheme) -> ButcherTableau:
    """Propagate the two-register recursion symbolically to the unique
    tableau it realizes.

    ``w`` carries the coefficients of the stage derivatives in the running
    update register, ``row`` those in the running state register; after the
    last stage ``row`` is the weight vector b.
    """
    s = sch.s
    w = [0] * s
    row = [0] * s
    rows = []
    for i in range(s):
        w = [sch.A[i] * x for x in w]
        w[i] = w[i] + 1
        row = [r + sch.B[i] * x for r, x in zip(row, w)]
        rows.append(list(row))
    a = [[0] * s for _ in range(s)]
    for i in range(1, s):
        for j in range(i):
            a[i][j] = rows[i - 1][j]
    return ButcherTableau(s=s, a=a, b=tuple(rows[-1]), c=sch.c)


def butcher_to_twon(tab: ButcherTableau, tol: Number = TWO_N_ROUNDTRIP_TOL) -> TwoNScheme:
    """Invert the two-register recursion stage by stage.

    Each subdiagonal gives B_i = a_{i+1,i} directly; the remaining entries of
    the row difference overdetermine A_i, and any disagreement beyond ``tol``
    (equivalently, a failing round trip) means the tableau cannot be realized
    with two registers.
    """
    s = tab.s
    rows = [list(tab.a[i]) for i in range(1, s)] + [list(tab.b)]
    A: list = [0]
    B: list = []
    w = [0] * s
    w[0] = 1
    prev = rows[0]
    B.append(rows[0][0])
    if B[0] == 0:
        raise ZeroDenominatorError(1, "a[2][1] = 0: stage 1 has no weight")
    worst = 0
    for i in range(1, s):
        cur = rows[i]
        Bi = cur[i]
        if Bi == 0:
            raise ZeroDenominatorError(i + 1, f"a[{i + 2}][{i + 1}] = 0: stage {i + 1} has no weight")
        u = [(cur[j] - prev[j]) / Bi for j in range(i)]
        Ai = u[i - 1]  # w[i-1] is 1 by construction
        for j in range(i - 1):
            worst = max(worst, abs(u[j] - Ai * w[j]))
        A.append(Ai)
        B.append(Bi)
        w = [Ai * x for x in w]
        w[i] = w[i] + 1
        prev = cur
    if worst > tol:
        raise NotTwoNCompatibleError(worst)
    return TwoNScheme(s=s, A=tuple(A), B=tuple(B), c=tab.c)


def butcher_to_dform(tab: ButcherTableau) -> DForm:
    """Node/ratio form from the weights: d_j = b_j / (sum_{k<=j} b_k - c_j).

    d_1 and d_{s+1} are 1 by convention.  A vanishing denominator together
    with a vanishing weight is a removable 0/0 (it happens whenever some
    b_j = 0); those ratios are recovered through the register form instead.
    Raises :class:`NoDFormError` when adjacent nodes coincide and
    :class:`ZeroDenominatorError` when a denominator vanishes with a nonzero
    weight (the tableau then cannot be 2N-compatible with distinct nodes).
    """
    s = tab.s
    c_ext = list(tab.c) + [_unit_like(tab.c[-1])]
    for i in range(s):
        if _nodes_coincide(c_ext[i], c_ext[i + 1]):
            raise NoDFormError(i + 1)
    one = _unit_like(tab.b[0])
    d = [one]
    partial = tab.b[0]
    fallback = None
    for j in range(1, s):
        den = partial + tab.b[j] - tab.c[j]
        partial = partial + tab.b[j]
        if den == 0:
            if tab.b[j] != 0:
                raise ZeroDenominatorError(j + 1)
            if fallback is None:
                fallback = twon_to_dform(butcher_to_twon(tab))
            d.append(fallback.d[j])
        else:
            d.append(tab.b[j] / den)
    d.append(one)
    return DForm(s=s, c=tuple(c_ext), d=tuple(d))


def twon_to_dform(sch: TwoNScheme) -> DForm:
    """Node/ratio form straight from the register coefficients:
    d_i = B_i / (c_{i+1} - c_i), the numerically preferred route."""
    s = sch.s
    c_ext = list(sch.c) + [_unit_like(sch.c[-1])]
    for i in range(s):
        if _nodes_coincide(c_ext[i], c_ext[i + 1]):
            raise NoDFormError(i + 1)
    d = [sch.B[i] / (c_ext[i + 1] - c_ext[i]) for i in range(s)]
    one = _unit_like(d[0])
    d[0] = one  # B_1 = c_2 for a consistent scheme, so d_1 = 1
    return DForm(s=s, c=tuple(c_ext), d=tuple(d + [one]))


def dform_to_twon(df: DForm) -> TwoNScheme:
    """Register coefficients from the node/ratio form:
    A_i = d_{i-1} (1/d_i - 1), B_i = (c_{i+1} - c_i) d_i."""
    s = df.s
    A = [0] + [df.d[i - 1] * (1 / _as_ratio(df.d[i]) - 1) for i in range(1, s)]
    B = [(df.c[i + 1] - df.c[i]) * df.d[i] for i in range(s)]
    return TwoNScheme(s=s, A=tuple(A), B=tuple(B), c=df.c[:s])


def dform_to_butcher(df: DForm) -> ButcherTableau:
    return twon_to_butcher(dform_to_twon(df))


def _as_ratio(x):
    """Promote ints to Fraction so 1/x stays exact."""
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    return x


def _unit_like(x) -> Number:
    return 1.0 if isinstance(x, float) else 1

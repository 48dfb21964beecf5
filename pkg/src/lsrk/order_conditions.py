"""Order conditions in direct, trace and node/ratio form; order classification.

The eight conditions through order four are evaluated two independent ways:
as the classical coefficient sums and as traces Tr[P A ... C] over the
augmented tableau.  ``tall_tree`` evaluates Tr[P A^n C], which for n < s is
exactly the z^{n+1} stability-polynomial coefficient and is preserved by node
reflection.  The five-stage conditions rewritten in the (c, d) variables feed
the numerical search.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import OutOfRangeError, WrongStageCountError
from .linalg import Matrix, mat_mul, trace
from .matrices import augment, build_C, build_P
from .scalars import Number
from .schemes import ButcherTableau, DForm

#: condition labels in evaluation order, lowest order first
CONDITION_LABELS = ("b", "bc", "bc2", "bac", "bc3", "bcac", "bac2", "ba2c")

#: quadrature targets of the eight conditions
TARGETS = {
    "b": Fraction(1),
    "bc": Fraction(1, 2),
    "bc2": Fraction(1, 3),
    "bac": Fraction(1, 6),
    "bc3": Fraction(1, 4),
    "bcac": Fraction(1, 8),
    "bac2": Fraction(1, 12),
    "ba2c": Fraction(1, 24),
}

#: labels grouped by the order they certify
ORDER_OF = {"b": 1, "bc": 2, "bc2": 3, "bac": 3, "bc3": 4, "bcac": 4, "bac2": 4, "ba2c": 4}

#: default classification tolerance for binary64 coefficients
CLASSIFY_TOL = 1e-9


@dataclass(frozen=True)
class OrderReport:
    residuals: dict
    order: int
    tol: Number


def standard_residuals(tab: ButcherTableau) -> dict:
    """The eight conditions as direct coefficient sums minus their targets."""
    s, a, b, c = tab.s, tab.a, tab.b, tab.c
    ac = [sum(a[i][j] * c[j] for j in range(i)) for i in range(s)]
    ac2 = [sum(a[i][j] * c[j] ** 2 for j in range(i)) for i in range(s)]
    aac = [sum(a[i][j] * ac[j] for j in range(i)) for i in range(s)]
    sums = {
        "b": sum(b),
        "bc": sum(b[i] * c[i] for i in range(s)),
        "bc2": sum(b[i] * c[i] ** 2 for i in range(s)),
        "bac": sum(b[i] * ac[i] for i in range(s)),
        "bc3": sum(b[i] * c[i] ** 3 for i in range(s)),
        "bcac": sum(b[i] * c[i] * ac[i] for i in range(s)),
        "bac2": sum(b[i] * ac2[i] for i in range(s)),
        "ba2c": sum(b[i] * aac[i] for i in range(s)),
    }
    return {k: sums[k] - _target_like(k, b[0]) for k in CONDITION_LABELS}


#: trace words for each condition: sequence of 'A'/'C' factors after P
_TRACE_WORDS = {
    "b": "A",
    "bc": "AC",
    "bc2": "ACC",
    "bac": "AAC",
    "bc3": "ACCC",
    "bcac": "ACAC",
    "bac2": "AACC",
    "ba2c": "AAAC",
}


def trace_residuals(aug: Matrix, c) -> dict:
    """Same residuals via Tr[P A ... C] on the augmented tableau; the
    independent route used to cross-check :func:`standard_residuals`."""
    n = len(aug)
    if len(c) != n:
        raise ValueError("need s+1 nodes (with c[s+1] = 1)")
    P = build_P(n)
    C = build_C(c)
    out = {}
    for label, word in _TRACE_WORDS.items():
        m = P
        for ch in word:
            m = mat_mul(m, aug if ch == "A" else C)
        out[label] = trace(m) - _target_like(label, aug[n - 1][0])
    return out


def tall_tree(aug: Matrix, c, n: int):
    """Tr[P A^n C] for 1 <= n <= s-1 (beyond that the product is zero rows)."""
    size = len(aug)
    s = size - 1
    if not 1 <= n <= s - 1:
        raise OutOfRangeError(f"need 1 <= n <= s-1 = {s - 1}, got {n}")
    P = build_P(size)
    m = P
    for _ in range(n):
        m = mat_mul(m, aug)
    m = mat_mul(m, build_C(c))
    return trace(m)


def fifth_order_breaking(tab: ButcherTableau):
    """sum_i b_i (sum_j a_ij c_j)^2, the order-five condition that needs
    elementwise products; equals 1/20 only at order five."""
    s = tab.s
    ac = [sum(tab.a[i][j] * tab.c[j] for j in range(i)) for i in range(s)]
    return sum(tab.b[i] * ac[i] ** 2 for i in range(s))


def dform_residuals_54(df: DForm) -> dict:
    """The seven conditions of a five-stage order-four method in (c, d)
    variables (the weight-sum condition holds by construction)."""
    if df.s != 5:
        raise WrongStageCountError(f"five-stage form only, got s = {df.s}")
    c2, c3, c4, c5 = df.c[1:5]
    d2, d3, d4, d5 = df.d[1:5]
    vals = _dform_values_54(c2, c3, c4, c5, d2, d3, d4, d5)
    return {
        k: vals[k] - _target_like(k, c2) for k in CONDITION_LABELS[1:]
    }


def _dform_values_54(c2, c3, c4, c5, d2, d3, d4, d5) -> dict:
    """Raw condition values; shared with the search module, which calls it on
    plain floats."""
    out = {}
    for label, p in (("bc", 1), ("bc2", 2), ("bc3", 3)):
        out[label] = (
            c2 ** p * (1 - c2) * d2 + c3 ** p * (1 - c3) * d3
            + c4 ** p * (1 - c4) * d4 + c5 ** p * (1 - c5) * d5
            - c2 ** p * (1 - c3) * d2 * d3 - c2 ** p * (1 - c4) * d2 * d4
            - c2 ** p * (1 - c5) * d2 * d5 - c3 ** p * (1 - c4) * d3 * d4
            - c3 ** p * (1 - c5) * d3 * d5 - c4 ** p * (1 - c5) * d4 * d5
            + c2 ** p * (1 - c4) * d2 * d3 * d4 + c2 ** p * (1 - c5) * d2 * d3 * d5
            + c2 ** p * (1 - c5) * d2 * d4 * d5 + c3 ** p * (1 - c5) * d3 * d4 * d5
            - c2 ** p * (1 - c5) * d2 * d3 * d4 * d5
        )
    for label, p in (("bac", 1), ("bac2", 2)):
        out[label] = (
            c2 ** p * (c3 - c2) * (1 - c3) * d2 * d3
            + c2 ** p * (c4 - c2) * (1 - c4) * d2 * d4
            + c2 ** p * (c5 - c2) * (1 - c5) * d2 * d5
            + c3 ** p * (c4 - c3) * (1 - c4) * d3 * d4
            + c3 ** p * (c5 - c3) * (1 - c5) * d3 * d5
            + c4 ** p * (c5 - c4) * (1 - c5) * d4 * d5
            - c2 ** p * (c4 - c2) * (1 - c4) * d2 * d3 * d4
            - c2 ** p * (c5 - c2) * (1 - c5) * d2 * d3 * d5
            - c2 ** p * (c5 - c2) * (1 - c5) * d2 * d4 * d5
            - c3 ** p * (c5 - c3) * (1 - c5) * d3 * d4 * d5
            + c2 ** p * (c5 - c2) * (1 - c5) * d2 * d3 * d4 * d5
        )
    out["bcac"] = (
        c2 * c3 * (c3 - c2) * (1 - c3) * d2 * d3
        + c2 * c4 * (c4 - c2) * (1 - c4) * d2 * d4
        + c2 * c5 * (c5 - c2) * (1 - c5) * d2 * d5
        + c3 * c4 * (c4 - c3) * (1 - c4) * d3 * d4
        + c3 * c5 * (c5 - c3) * (1 - c5) * d3 * d5
        + c4 * c5 * (c5 - c4) * (1 - c5) * d4 * d5
        - (c2 * c3 * (c3 - c2) * (1 - c4) + c2 * c4 * (c4 - c3) * (1 - c4)) * d2 * d3 * d4
        - (c2 * c3 * (c3 - c2) * (1 - c5) + c2 * c5 * (c5 - c3) * (1 - c5)) * d2 * d3 * d5
        - (c2 * c4 * (c4 - c2) * (1 - c5) + c2 * c5 * (c5 - c4) * (1 - c5)) * d2 * d4 * d5
        - (c3 * c4 * (c4 - c3) * (1 - c5) + c3 * c5 * (c5 - c4) * (1 - c5)) * d3 * d4 * d5
        + (
            c2 * c3 * (c3 - c2) * (1 - c5)
            + c2 * c4 * (c4 - c3) * (1 - c5)
            + c2 * c5 * (c5 - c4) * (1 - c5)
        ) * d2 * d3 * d4 * d5
    )
    out["ba2c"] = (
        c2 * (c3 - c2) * (c4 - c3) * (1 - c4) * d2 * d3 * d4
        + c2 * (c3 - c2) * (c5 - c3) * (1 - c5) * d2 * d3 * d5
        + c2 * (c5 - c4) * (c4 - c2) * (1 - c5) * d2 * d4 * d5
        + c3 * (c4 - c3) * (c5 - c4) * (1 - c5) * d3 * d4 * d5
        - (
            c2 * (c3 - c2) * (c5 - c3) * (1 - c5)
            + c2 * (c5 - c4) * (c4 - c3) * (1 - c5)
        ) * d2 * d3 * d4 * d5
    )
    return out


def classify_order(tab: ButcherTableau, tol: Number | None = None) -> OrderReport:
    """Largest p <= 4 with every condition of order <= p within ``tol``.

    Default tolerance: exact zero for rational tableaux, 1e-9 for floats
    (13-digit literature coefficients lose 2-3 digits in the products).
    """
    if tol is None:
        tol = 0 if tab.exact else CLASSIFY_TOL
    res = standard_residuals(tab)
    order = 0
    for p in (1, 2, 3, 4):
        if all(abs(res[k]) <= tol for k in CONDITION_LABELS if ORDER_OF[k] == p):
            order = p
        else:
            break
    return OrderReport(residuals=res, order=order, tol=tol)


def _target_like(label: str, sample) -> Number:
    t = TARGETS[label]
    return float(t) if isinstance(sample, float) else t

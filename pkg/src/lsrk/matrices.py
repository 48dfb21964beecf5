"""Augmented tableau, the structural matrices and the factorization A = F D.

The augmented tableau embeds the weights b as row s+1 of an (s+1)x(s+1)
strictly lower matrix.  For a two-register scheme that matrix factors into a
node-difference matrix F (depending only on c) times a ratio-product matrix D
(depending only on d).  D has closed-form entries, unit row sum only in row 1,
unit column sum only in column s+1, and a lower-triangular inverse G whose
diagonal holds 1/d_i.  ``identity_residuals`` evaluates the whole family of
identities at once; on valid d-forms every residual vanishes.
"""
from __future__ import annotations

from .linalg import (
    Matrix,
    commutator,
    identity,
    mat,
    mat_mul,
    mat_sub,
    max_abs,
)
from .schemes import ButcherTableau, DForm


def augment(tab: ButcherTableau) -> Matrix:
    """(s+1)x(s+1) matrix with the a-block in rows 1..s and (b, 0) as the
    last row."""
    rows = [list(tab.a[i]) + [0] for i in range(tab.s)]
    rows.append(list(tab.b) + [0])
    return mat(rows)


def split_augmented(aug: Matrix):
    """Inverse embedding: (a-block, b) of an augmented tableau."""
    n = len(aug)
    a = tuple(tuple(aug[i][j] for j in range(n - 1)) for i in range(n - 1))
    b = tuple(aug[n - 1][j] for j in range(n - 1))
    return a, b


def build_L(n: int) -> Matrix:
    return mat([[1 if j <= i else 0 for j in range(n)] for i in range(n)])


def build_P(n: int) -> Matrix:
    return mat([[1 if j == n - 1 else 0 for j in range(n)] for _ in range(n)])


def build_Q(n: int) -> Matrix:
    return mat([[1 if i == 0 else 0 for _ in range(n)] for i in range(n)])


def build_T(n: int) -> Matrix:
    return mat([[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)])


def build_C(c) -> Matrix:
    n = len(c)
    return mat([[c[i] if i == j else 0 for j in range(n)] for i in range(n)])


def build_N(d) -> Matrix:
    from .schemes import _as_ratio

    n = len(d)
    return mat([[1 / _as_ratio(d[i]) if i == j else 0 for j in range(n)] for i in range(n)])


def build_F(c) -> Matrix:
    """Node differences F[i][j] = c_i - c_j below the diagonal; equals the
    commutator [C, L]."""
    n = len(c)
    return mat([[c[i] - c[j] if i > j else 0 for j in range(n)] for i in range(n)])


def build_D(d) -> Matrix:
    """Closed form of the ratio-product matrix:
    D[i][j] = -d_j (1-d_{j+1})...(1-d_{i-1}) d_i below the diagonal,
    d_i on it."""
    n = len(d)
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = d[i]
        prod = 1  # running product (1-d_{j+1})...(1-d_{i-1})
        for j in range(i - 1, -1, -1):
            row[j] = -d[j] * prod * d[i]
            prod = prod * (1 - d[j])
        rows.append(row)
    return mat(rows)


def build_D_factors(d) -> list[Matrix]:
    """Single-column factors whose ordered product (highest index first)
    equals :func:`build_D`; kept as the independent construction route."""
    n = len(d)
    factors = []
    for i in range(n):
        m = [[1 if p == q else 0 for q in range(n)] for p in range(n)]
        m[i][i] = d[i]
        for p in range(i + 1, n):
            m[p][i] = -d[i]
        factors.append(mat(m))
    return factors


def build_G(d) -> Matrix:
    """Inverse of D: ones below the diagonal, 1/d_i on it."""
    from .schemes import _as_ratio

    n = len(d)
    return mat(
        [
            [1 / _as_ratio(d[i]) if i == j else (1 if i > j else 0) for j in range(n)]
            for i in range(n)
        ]
    )


def anti_transpose(m: Matrix) -> Matrix:
    """Reflection across the antidiagonal: out[i][j] = m[n+1-j][n+1-i]
    (1-based); equals T m^T T."""
    n = len(m)
    return mat([[m[n - 1 - j][n - 1 - i] for j in range(n)] for i in range(n)])


def factorize(df: DForm):
    """Return (F, D) with F @ D equal to the augmented tableau of the scheme
    the d-form describes."""
    return build_F(df.c), build_D(df.d)


def reconstruct_augmented(df: DForm) -> Matrix:
    F, D = factorize(df)
    return mat_mul(F, D)


def _partial_row_sum_closed(d, i, l):
    """Closed form of sum_{j<=l} D[i][j] (1-based i, l)."""
    if i == 1:
        return d[0] if l >= 1 else 0
    if l >= i:
        return 0
    prod = 1
    for k in range(l + 1, i):  # 1-based k in (l, i)
        prod = prod * (1 - d[k - 1])
    return -prod * d[i - 1]


def _partial_col_sum_closed(d, l, j):
    """Closed form of sum_{i>=l} D[i][j] (1-based l, j)."""
    n = len(d)
    if j == n:
        return 1 if l <= n else 0
    if l <= j:
        return 0
    prod = 1
    for k in range(j + 1, l):
        prod = prod * (1 - d[k - 1])
    return -d[j - 1] * prod


def identity_residuals(df: DForm) -> dict:
    """Max-abs residuals of the structural identities; all vanish on valid
    d-forms (exactly in rational arithmetic)."""
    n = df.s + 1
    F, D = factorize(df)
    A = mat_mul(F, D)
    G = build_G(df.d)
    C = build_C(df.c)
    P = build_P(n)
    Q = build_Q(n)

    res = {}
    res["GD_identity"] = max_abs(mat_sub(mat_mul(G, D), identity(n)))
    res["A_minus_FD"] = max_abs(mat_sub(A, mat_mul(F, D)))
    res["DP_minus_QD"] = max_abs(mat_sub(mat_mul(D, P), mat_mul(Q, D)))
    res["F_minus_comm_CG"] = max_abs(mat_sub(F, commutator(C, G)))
    # G C G^{-1} = C - A, with G^{-1} = D
    res["GCGinv_minus_CmA"] = max_abs(
        mat_sub(mat_mul(mat_mul(G, C), D), mat_sub(C, A))
    )
    res["DFD_minus_comm_DC"] = max_abs(
        mat_sub(mat_mul(mat_mul(D, F), D), commutator(D, C))
    )
    row = max(
        abs(sum(D[i]) - (1 if i == 0 else 0)) for i in range(n)
    )
    col = max(
        abs(sum(D[i][j] for i in range(n)) - (1 if j == n - 1 else 0))
        for j in range(n)
    )
    res["row_sums"] = row
    res["col_sums"] = col
    res["partial_row_sums"] = max(
        abs(sum(D[i - 1][: l]) - _partial_row_sum_closed(df.d, i, l))
        for i in range(1, n + 1)
        for l in range(1, n + 1)
    )
    res["partial_col_sums"] = max(
        abs(sum(D[i - 1][j - 1] for i in range(l, n + 1)) - _partial_col_sum_closed(df.d, l, j))
        for l in range(1, n + 1)
        for j in range(1, n + 1)
    )
    return res

"""Small dense matrix helpers over exact rationals or floats.

Matrices are tuples of tuples.  Dimensions here never exceed ~20, so plain
Python loops are fast enough and, crucially, keep Fraction arithmetic exact;
numpy is reserved for the float-only grid/Newton code elsewhere.
"""
from __future__ import annotations

Matrix = tuple


def mat(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, k, m = len(a), len(b), len(b[0])
    bt = list(zip(*b))
    return tuple(
        tuple(sum(ra[p] * cb[p] for p in range(k)) for cb in bt) for ra in a
    )


def mat_vec(a: Matrix, v) -> tuple:
    return tuple(sum(r[j] * v[j] for j in range(len(v))) for r in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, s) -> Matrix:
    return tuple(tuple(s * x for x in r) for r in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_pow(a: Matrix, n: int) -> Matrix:
    out = identity(len(a))
    for _ in range(n):
        out = mat_mul(out, a)
    return out


def max_abs(a: Matrix):
    return max(abs(x) for r in a for x in r)


def row_sums(a: Matrix) -> tuple:
    return tuple(sum(r) for r in a)


def col_sums(a: Matrix) -> tuple:
    return tuple(sum(col) for col in zip(*a))


def trace(a: Matrix):
    return sum(a[i][i] for i in range(len(a)))

"""Numerical search over five-stage order-four schemes in (c, d) variables,
branch walking, and closed-form constructors for special families.

The unknowns are x = (c3, c4, c5, d2, d3, d4, d5) with c2 the walk/fix
parameter; the seven order conditions in node/ratio form close the system.
Branch walking is secant prediction plus Newton correction with the
locally-largest coordinate held fixed.  Where a ratio d_i blows up along a
branch (the node c_{i+1} - c_i difference changes sign through zero of the
reciprocal), walking continues in the reciprocal coordinate 1/d_i, so the
crossing is traversed smoothly; the crossing itself is recorded as a gap,
since the limiting point is not a scheme.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateCaseError,
    NoConvergenceError,
    SingularJacobianError,
    SingularPointError,
)
from .catalog import self_reflected_64_dform, self_reflected_84_dform
from .order_conditions import CONDITION_LABELS, TARGETS, _dform_values_54
from .schemes import DForm

#: coordinate layout of a full branch point
_COORDS = ("c2", "c3", "c4", "c5", "d2", "d3", "d4", "d5")

#: |d| above which walking switches that coordinate to 1/d, and back
_RECIP_IN = 10.0
_RECIP_OUT = 8.0

#: spur abort bounds
_D_BOUND = 1e6
_C_BOUND = 1e3

#: adjacent nodes closer than this make the point degenerate
_COLLISION = 1e-12


@dataclass(frozen=True)
class SearchConfig:
    """Newton/walk parameters.  ``eps_walk`` must lie in [1e-4, 10]."""

    tol: float = 1e-12
    max_iter: int = 200
    eps_walk: float = 0.02
    backtrack: float = 0.5
    armijo: float = 1e-4
    fd_step: float = 1e-7
    max_steps: int = 4000
    seed_rng: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 1e-4 <= self.eps_walk <= 10.0:
            raise ValueError("eps_walk must lie in [1e-4, 10]")


@dataclass(frozen=True)
class BranchPoint:
    """A converged solution, carried as a d-form plus projections."""

    dform: DForm
    c2: float
    c5: float
    residual_norm: float

    @classmethod
    def from_vector(cls, x, residual_norm: float) -> "BranchPoint":
        df = vector_to_dform(x)
        return cls(dform=df, c2=float(x[0]), c5=float(x[3]), residual_norm=residual_norm)


def dform_to_vector(df: DForm) -> np.ndarray:
    """(c2, c3, c4, c5, d2, d3, d4, d5) of a five-stage d-form."""
    if df.s != 5:
        raise ValueError("five-stage d-forms only")
    return np.array([float(v) for v in (*df.c[1:5], *df.d[1:5])])


def vector_to_dform(x) -> DForm:
    c = (0.0, float(x[0]), float(x[1]), float(x[2]), float(x[3]), 1.0)
    d = (1.0, float(x[4]), float(x[5]), float(x[6]), float(x[7]), 1.0)
    return DForm(s=5, c=c, d=d)


def residuals_54(x) -> np.ndarray:
    """The seven order-condition residuals at the full coordinate vector
    (c2, c3, c4, c5, d2, d3, d4, d5).

    Raises :class:`SingularPointError` when adjacent nodes coincide (the
    polynomials stay finite there, but the point is not a scheme).
    """
    c = (0.0, float(x[0]), float(x[1]), float(x[2]), float(x[3]), 1.0)
    for i in range(5):
        if abs(c[i + 1] - c[i]) < _COLLISION:
            raise SingularPointError(
                f"adjacent nodes c[{i + 1}] and c[{i + 2}] coincide"
            )
    vals = _dform_values_54(*x[:4], *x[4:])
    return np.array([vals[k] - float(TARGETS[k]) for k in CONDITION_LABELS[1:]])


def _residuals_chart(y, recip) -> np.ndarray:
    return residuals_54(_from_chart(y, recip))


def _to_chart(x, recip):
    y = np.array(x, dtype=float)
    for i in range(4):
        if recip[i]:
            y[4 + i] = 1.0 / y[4 + i]
    return y


def _from_chart(y, recip):
    x = np.array(y, dtype=float)
    for i in range(4):
        if recip[i]:
            x[4 + i] = 1.0 / x[4 + i]
    return x


def _newton_fixed(x0, fix: int, cfg: SearchConfig, recip=(False,) * 4):
    """Newton with backtracking on the 7 free coordinates, ``fix`` held.

    Works in the active chart (``recip`` flags replace d_i by 1/d_i).
    Returns the converged full vector in direct coordinates.
    """
    y = _to_chart(x0, recip)
    free = [i for i in range(8) if i != fix]
    fun = lambda z: _residuals_chart(z, recip)
    r = fun(y)
    for it in range(cfg.max_iter):
        if np.max(np.abs(r)) <= cfg.tol:
            return _from_chart(y, recip)
        jac = np.empty((7, 7))
        for k, j in enumerate(free):
            step = cfg.fd_step * max(1.0, abs(y[j]))
            yp = y.copy()
            yp[j] += step
            jac[:, k] = (fun(yp) - r) / step
        try:
            delta = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            raise SingularJacobianError("singular Jacobian in Newton correction") from None
        if not np.all(np.isfinite(delta)):
            raise SingularJacobianError("non-finite Newton step")
        lam = 1.0
        phi0 = 0.5 * float(r @ r)
        while True:
            yt = y.copy()
            for k, j in enumerate(free):
                yt[j] += lam * delta[k]
            try:
                rt = fun(yt)
            except SingularPointError:
                rt = None
            if rt is not None and 0.5 * float(rt @ rt) <= (1 - 2 * cfg.armijo * lam) * phi0:
                break
            lam *= cfg.backtrack
            if lam < 1e-12:
                raise NoConvergenceError(it, "line search stalled")
        y, r = yt, rt
    if np.max(np.abs(r)) <= cfg.tol:
        return _from_chart(y, recip)
    raise NoConvergenceError(cfg.max_iter)


def newton_solve(x0, c2: float, cfg: SearchConfig | None = None) -> BranchPoint:
    """Solve the seven-condition system for (c3..c5, d2..d5) at fixed c2.

    ``x0`` is the 7-vector initial guess (c3, c4, c5, d2, d3, d4, d5).
    """
    cfg = cfg or SearchConfig()
    full = np.concatenate([[float(c2)], np.asarray(x0, dtype=float)])
    if not np.all(np.isfinite(full)):
        raise ValueError("initial guess must be finite")
    sol = _newton_fixed(full, 0, cfg)
    return BranchPoint.from_vector(sol, float(np.max(np.abs(residuals_54(sol)))))


@dataclass(frozen=True)
class BranchWalk:
    """Walk output: converged points in order, plus the indices (into
    ``points``) after which a ratio blow-up was crossed or a spur abandoned."""

    points: list
    gaps: list


def branch_walk(
    seed: BranchPoint | DForm,
    direction: int,
    cfg: SearchConfig | None = None,
) -> BranchWalk:
    """Trace the solution branch through ``seed`` in one direction.

    The first move perturbs c2 by 1e-4 and re-converges; afterwards secant
    predictions of length ``cfg.eps_walk`` are corrected by Newton with the
    fastest-moving coordinate fixed.  On correction failure the step is
    doubled (up to 10) to jump past the trouble; persistent failure or
    out-of-bound coordinates abandon the spur with a recorded gap.
    """
    cfg = cfg or SearchConfig()
    if direction not in (-1, 1):
        raise ValueError("direction must be +1 or -1")
    df = seed.dform if isinstance(seed, BranchPoint) else seed
    x0 = dform_to_vector(df)

    points = [_point(x0)]
    gaps: list = []
    first = x0.copy()
    first[0] += direction * 1e-4
    try:
        x1 = _newton_fixed(first, 0, cfg)
    except (NoConvergenceError, SingularJacobianError, SingularPointError):
        gaps.append(0)
        return BranchWalk(points=points, gaps=gaps)
    points.append(_point(x1))

    recip = [False] * 4
    prev, cur = x0, x1
    eps = cfg.eps_walk
    while len(points) < cfg.max_steps:
        for i in range(4):
            mag = abs(cur[4 + i])
            if not recip[i] and mag > _RECIP_IN:
                recip[i] = True
            elif recip[i] and mag < _RECIP_OUT:
                recip[i] = False
        yp, yq = _to_chart(prev, recip), _to_chart(cur, recip)
        u = yq - yp
        norm = float(np.linalg.norm(u))
        if norm == 0.0:
            break
        u /= norm
        pred = yq + eps * u
        fix = int(np.argmax(np.abs(u)))
        try:
            nxt = _newton_fixed(_from_chart(pred, recip), fix, cfg, tuple(recip))
            bad = (
                np.max(np.abs(nxt[4:])) > _D_BOUND
                or np.max(np.abs(nxt[:4])) > _C_BOUND
            )
        except (NoConvergenceError, SingularJacobianError, SingularPointError):
            nxt, bad = None, True
        if bad:
            eps *= 2.0
            if eps > 10.0:
                gaps.append(len(points) - 1)
                break
            continue
        eps = cfg.eps_walk
        for i in range(4):
            if recip[i] and np.sign(nxt[4 + i]) != np.sign(cur[4 + i]):
                gaps.append(len(points) - 1)  # crossed a ratio blow-up
        prev, cur = cur, nxt
        points.append(_point(nxt))
    return BranchWalk(points=points, gaps=gaps)


def _point(x) -> BranchPoint:
    return BranchPoint.from_vector(x, float(np.max(np.abs(residuals_54(x)))))


def walk_to_c2(
    seed: BranchPoint | DForm,
    c2_target: float,
    cfg: SearchConfig | None = None,
) -> list:
    """Walk both directions from ``seed`` and Newton-refine every branch
    crossing of c2 = ``c2_target``; returns the refined BranchPoints."""
    cfg = cfg or SearchConfig()
    hits = []
    for direction in (1, -1):
        walk = branch_walk(seed, direction, cfg)
        pts = walk.points
        for k in range(1, len(pts)):
            if k - 1 in walk.gaps:
                continue
            a, b = pts[k - 1].c2, pts[k].c2
            if (a - c2_target) * (b - c2_target) <= 0 and abs(b - c2_target) < 10 * cfg.eps_walk:
                guess = dform_to_vector(pts[k].dform)
                guess[0] = c2_target
                try:
                    sol = _newton_fixed(guess, 0, cfg)
                except (NoConvergenceError, SingularJacobianError, SingularPointError):
                    continue
                hits.append(_point(sol))
    return hits


def tall_tree_4(x) -> float:
    """b a^3 c of the scheme behind the coordinate vector (for five stages
    this is the single product b5 a54 a43 a32 c2)."""
    from .matrices import build_D, build_F
    from .linalg import mat_mul

    df = vector_to_dform(x)
    aug = mat_mul(build_F(df.c), build_D(df.d))
    a = [row[:5] for row in aug[:5]]
    b = aug[5][:5]
    v = list(df.c[:5])
    for _ in range(3):
        v = [sum(a[i][j] * v[j] for j in range(i)) for i in range(5)]
    return float(sum(b[i] * v[i] for i in range(5)))


def constrained_search_54(
    target: float,
    seed: BranchPoint | DForm,
    cfg: SearchConfig | None = None,
) -> BranchPoint:
    """Solve the seven order conditions plus b a^3 c = ``target`` in all
    eight coordinates (the stability-motivated extra constraint).

    Raises :class:`NoConvergenceError` when the constraint is not attainable
    from the given seed (the branch caps below the requested value).
    """
    cfg = cfg or SearchConfig()
    df = seed.dform if isinstance(seed, BranchPoint) else seed
    x = dform_to_vector(df)

    def fun(z):
        return np.concatenate([residuals_54(z), [tall_tree_4(z) - target]])

    r = fun(x)
    for it in range(cfg.max_iter):
        if np.max(np.abs(r)) <= cfg.tol:
            return _point(x)
        jac = np.empty((8, 8))
        for j in range(8):
            step = cfg.fd_step * max(1.0, abs(x[j]))
            xp = x.copy()
            xp[j] += step
            jac[:, j] = (fun(xp) - r) / step
        try:
            delta = np.linalg.solve(jac, -r)
        except np.linalg.LinAlgError:
            raise SingularJacobianError("singular Jacobian in constrained search") from None
        lam = 1.0
        phi0 = 0.5 * float(r @ r)
        while True:
            xt = x + lam * delta
            try:
                rt = fun(xt)
            except SingularPointError:
                rt = None
            if rt is not None and 0.5 * float(rt @ rt) <= (1 - 2 * cfg.armijo * lam) * phi0:
                break
            lam *= cfg.backtrack
            if lam < 1e-14:
                raise NoConvergenceError(it, "line search stalled; target not attainable")
        x, r = xt, rt
        if not np.all(np.isfinite(x)) or np.max(np.abs(x)) > 1e8:
            raise NoConvergenceError(it, "iterates diverged")
    raise NoConvergenceError(cfg.max_iter)


def family_64_c3(c2) -> tuple:
    """Real roots c3 of the six-stage one-parameter family cubic

        (c2-1/4) c3^3 - (c2-1/4)(c2+1) c3^2
          + [(c2-1/4)(c2+5/4) - 1/48] c3 / 4 - (c2-1/4)/24 = 0,

    sorted ascending.  c2 in {1/4, 1/6, 1} are degenerate parameter values
    that this closed form does not cover.
    """
    for special in (0.25, 1.0 / 6.0, 1.0):
        if c2 == special or math.isclose(float(c2), special, rel_tol=0, abs_tol=1e-15):
            raise DegenerateCaseError(f"c2 = {c2} needs separate treatment")
    t = float(c2) - 0.25
    coeffs = [
        t,
        -t * (float(c2) + 1.0),
        0.25 * (t * (float(c2) + 1.25) - 1.0 / 48.0),
        -t / 24.0,
    ]
    roots = np.roots(coeffs)
    real = sorted(float(r.real) for r in roots if abs(r.imag) < 1e-10)
    return tuple(real)


def build_self_reflected_64(exact: bool = True) -> DForm:
    """Six-stage self-reflected scheme with all interior ratios 2 (nodes from
    the frozen radical constants)."""
    return self_reflected_64_dform(exact=exact)


def build_self_reflected_84(exact: bool = True) -> DForm:
    """Eight-stage self-reflected scheme with all interior ratios 2, c5 = 1/2
    and c3 + c4 = 1."""
    return self_reflected_84_dform(exact=exact)

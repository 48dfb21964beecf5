"""Fixed-step time integration with the classical and two-register loops.

The two-register stepper holds exactly the state ``TwoRegisterState`` (one
update register, one solution register); it must agree with the classical
stepper on the converted tableau to round-off.  The three scalar benchmark
problems used throughout the tests are provided, together with d(h) error
measurement and a log-log slope fit for the convergence order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .exceptions import DegenerateFitError, NonFiniteError
from .schemes import ButcherTableau, TwoNScheme

#: errors below this are round-off noise and are excluded from slope fits
ERROR_FLOOR = 1e-13


@dataclass(frozen=True)
class ODEProblem:
    """Scalar initial value problem y' = f(t, y) on [t0, t_end]."""

    f: Callable
    y0: float
    t0: float
    t_end: float
    exact_at_end: float | None = None
    name: str = ""

    def __post_init__(self):
        if not self.t_end > self.t0:
            raise ValueError("t_end must exceed t0")


@dataclass(frozen=True)
class RunResult:
    y_end: float
    steps: int
    h: float


@dataclass
class TwoRegisterState:
    """The complete state of the two-register loop: nothing else persists
    between stages."""

    y: float
    dy: float


def step_classical(tab: ButcherTableau, f, t: float, y, h: float):
    """One explicit Runge-Kutta step from (t, y) with the classical stage
    loop."""
    k = []
    for i in range(tab.s):
        yi = y
        for j in range(i):
            aij = tab.a[i][j]
            if aij != 0:
                yi = yi + h * aij * k[j]
        ki = f(t + tab.c[i] * h, yi)
        if not _finite(ki):
            raise NonFiniteError(0, f"f returned non-finite value at stage {i + 1}")
        k.append(ki)
    out = y
    for i in range(tab.s):
        out = out + h * tab.b[i] * k[i]
    return out


def step_2n(sch: TwoNScheme, f, t: float, y, h: float):
    """One step of the Williamson loop; only the two registers are updated."""
    state = TwoRegisterState(y=y, dy=0.0 * y)
    for i in range(sch.s):
        ki = f(t + sch.c[i] * h, state.y)
        if not _finite(ki):
            raise NonFiniteError(0, f"f returned non-finite value at stage {i + 1}")
        state.dy = sch.A[i] * state.dy + h * ki
        state.y = state.y + sch.B[i] * state.dy
    return state.y


def solve(problem: ODEProblem, method, h: float) -> RunResult:
    """March from t0 to t_end with fixed step ``h``; the final step is
    shortened to land exactly on t_end.

    ``method`` is a :class:`TwoNScheme` (two-register loop) or a
    :class:`ButcherTableau` (classical loop).
    """
    if h <= 0:
        raise ValueError("h must be positive")
    if isinstance(method, TwoNScheme):
        stepper = lambda t, y, hh: step_2n(method, problem.f, t, y, hh)
    else:
        stepper = lambda t, y, hh: step_classical(method, problem.f, t, y, hh)
    span = problem.t_end - problem.t0
    n_full = int(math.floor(span / h + 1e-12))
    y = problem.y0
    t = problem.t0
    steps = 0
    for k in range(n_full):
        y = _checked_step(stepper, t, y, h, steps + 1)
        steps += 1
        t = problem.t0 + (k + 1) * h
    if t < problem.t_end - 1e-12 * max(1.0, abs(span)):
        y = _checked_step(stepper, t, y, problem.t_end - t, steps + 1)
        steps += 1
    return RunResult(y_end=y, steps=steps, h=h)


def _checked_step(stepper, t, y, h, step_index):
    try:
        y = stepper(t, y, h)
    except NonFiniteError as err:
        raise NonFiniteError(step_index, f"blow-up at step {step_index}: {err}") from None
    if not _finite(y):
        raise NonFiniteError(step_index, f"solution blew up at step {step_index}")
    return y


def error_at_end(problem: ODEProblem, method, h: float) -> float:
    """d(h) = |y(t_end; h) - y_exact(t_end)|."""
    if problem.exact_at_end is None:
        raise ValueError("problem has no exact endpoint value")
    return abs(solve(problem, method, h).y_end - problem.exact_at_end)


def convergence_order(problem: ODEProblem, method, h_list: Sequence[float]) -> float:
    """Least-squares slope of log d(h) vs log h.

    Step sizes whose error sits below the round-off floor are excluded; with
    fewer than two usable points (or non-positive errors throughout) the fit
    is degenerate.
    """
    if len(h_list) < 3:
        raise ValueError("need at least three step sizes")
    pts = []
    for h in h_list:
        d = error_at_end(problem, method, h)
        if d > ERROR_FLOOR:
            pts.append((math.log(h), math.log(d)))
    if len(pts) < 2:
        raise DegenerateFitError("not enough errors above the round-off floor")
    xs = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    slope = np.polyfit(xs, ys, 1)[0]
    return float(slope)


def _finite(x) -> bool:
    try:
        return bool(np.all(np.isfinite(x)))
    except TypeError:
        return math.isfinite(x)


def _problem_1() -> ODEProblem:
    return ODEProblem(
        f=lambda t, y: y * math.cos(t),
        y0=1.0, t0=0.0, t_end=20.0,
        exact_at_end=math.exp(math.sin(20.0)),
        name="y' = y cos t",
    )


def _problem_2() -> ODEProblem:
    return ODEProblem(
        f=lambda t, y: 4.0 * y * math.sin(t) ** 3 * math.cos(t),
        y0=1.0, t0=0.0, t_end=20.0,
        exact_at_end=math.exp(math.sin(20.0) ** 4),
        name="y' = 4 y sin^3 t cos t",
    )


def _problem_3() -> ODEProblem:
    # the cubic decay problem with solution 1/sqrt(1+t)
    return ODEProblem(
        f=lambda t, y: -0.5 * y ** 3,
        y0=1.0, t0=0.0, t_end=20.0,
        exact_at_end=1.0 / math.sqrt(21.0),
        name="y' = -y^3/2",
    )


#: the three scalar benchmark problems, keyed 1..3
BENCHMARKS = {1: _problem_1(), 2: _problem_2(), 3: _problem_3()}

"""Steppers, benchmark solves and convergence slopes."""
import dataclasses
import math
from fractions import Fraction

import pytest

from lsrk import (
    BENCHMARKS,
    NonFiniteError,
    ODEProblem,
    catalog_get,
    convergence_order,
    error_at_end,
    solve,
    step_2n,
    step_classical,
    twon_to_butcher,
)
from lsrk.integrate import TwoRegisterState

from conftest import frac_tableau_rk4


def float_tab(name):
    return catalog_get(name).butcher(exact=False)


def float_twon(name):
    return catalog_get(name).twon(exact=False)


class TestStepClassical:
    def test_zero_field(self):
        tab = float_tab("(4,3)_1")
        assert step_classical(tab, lambda t, y: 0.0, 0.0, 1.25, 0.1) == 1.25

    def test_constant_field(self):
        tab = float_tab("(4,3)_1")  # sum b = 1
        out = step_classical(tab, lambda t, y: 1.0, 0.0, 2.0, 0.1)
        assert out == pytest.approx(2.1, abs=1e-15)

    def test_rk4_truncated_exponential(self):
        rk4 = frac_tableau_rk4()
        tab = dataclasses.replace(
            rk4,
            a=[[float(x) for x in row] for row in rk4.a],
            b=[float(x) for x in rk4.b],
            c=[float(x) for x in rk4.c],
        )
        out = step_classical(tab, lambda t, y: y, 0.0, 1.0, 0.1)
        series = sum(Fraction(1, 10) ** k / math.factorial(k) for k in range(5))
        assert out == pytest.approx(float(series), rel=1e-15)


class TestStep2N:
    def test_zero_field(self):
        sch = float_twon("(4,3)_1")
        assert step_2n(sch, lambda t, y: 0.0, 0.0, 3.5, 0.1) == 3.5

    @pytest.mark.parametrize("name", ["(4,3)_1", "CK54_S1", "(5,4)_5", "(6,4)_6", "(8,4)_1"])
    def test_matches_classical_route(self, name):
        sch = float_twon(name)
        tab = twon_to_butcher(sch)
        f = lambda t, y: math.cos(t) * y
        y2n = step_2n(sch, f, 0.3, 1.1, 0.01)
        ycl = step_classical(tab, f, 0.3, 1.1, 0.01)
        assert abs(y2n - ycl) <= 1e-14 * abs(ycl)

    def test_exponential_field_tight_agreement(self):
        sch = float_twon("(4,3)_1")
        tab = twon_to_butcher(sch)
        y2n = step_2n(sch, lambda t, y: y, 0.0, 1.0, 0.1)
        ycl = step_classical(tab, lambda t, y: y, 0.0, 1.0, 0.1)
        assert abs(y2n - ycl) <= 1e-15 * abs(ycl)

    def test_dual_route_on_benchmarks(self):
        # one step of every benchmark from a generic state, whole catalog
        from lsrk import catalog_names

        for name in catalog_names():
            sch = float_twon(name)
            tab = twon_to_butcher(sch)
            for problem in BENCHMARKS.values():
                y2n = step_2n(sch, problem.f, 0.7, 0.9, 0.05)
                ycl = step_classical(tab, problem.f, 0.7, 0.9, 0.05)
                assert abs(y2n - ycl) <= 1e-14 * max(1.0, abs(ycl)), (name, problem.name)

    def test_state_is_two_registers(self):
        fields = dataclasses.fields(TwoRegisterState)
        assert {f.name for f in fields} == {"y", "dy"}


class TestSolve:
    def test_benchmark_endpoint_values(self):
        assert BENCHMARKS[1].exact_at_end == pytest.approx(2.491650271850, abs=1e-12)
        assert BENCHMARKS[3].exact_at_end == pytest.approx(0.218217890236, abs=1e-12)

    def test_problem3_endpoint(self):
        res = solve(BENCHMARKS[3], float_twon("CK54_S1"), 0.01)
        assert BENCHMARKS[3].exact_at_end == pytest.approx(1 / math.sqrt(21))
        assert res.y_end == pytest.approx(1 / math.sqrt(21), abs=1e-9)

    def test_classical_tableau_route(self):
        res = solve(BENCHMARKS[1], float_tab("(4,3)_1"), 0.01)
        assert res.y_end == pytest.approx(math.exp(math.sin(20.0)), abs=1e-7)

    def test_vector_state(self):
        import numpy as np

        # the steppers are generic over the state's vector operations
        problem = ODEProblem(
            f=lambda t, y: np.array([y[1], -y[0]]),
            y0=np.array([1.0, 0.0]), t0=0.0, t_end=math.pi,
        )
        res = solve(problem, float_twon("CK54_S1"), 0.01)
        assert res.y_end[0] == pytest.approx(-1.0, abs=1e-8)
        assert res.y_end[1] == pytest.approx(0.0, abs=1e-8)

    def test_problem1_endpoint(self):
        res = solve(BENCHMARKS[1], float_twon("(6,4)_6"), 0.005)
        assert res.y_end == pytest.approx(math.exp(math.sin(20.0)), abs=1e-9)

    def test_single_step_span(self):
        problem = ODEProblem(f=lambda t, y: 0.0, y0=1.0, t0=0.0, t_end=2.0,
                             exact_at_end=1.0)
        assert solve(problem, float_twon("(4,3)_1"), 2.0).steps == 1

    def test_partial_final_step(self):
        problem = ODEProblem(f=lambda t, y: 1.0, y0=0.0, t0=0.0, t_end=1.0,
                             exact_at_end=1.0)
        res = solve(problem, float_twon("(4,3)_1"), 0.3)
        assert res.steps == 4  # 3 full steps + shortened final step
        assert res.y_end == pytest.approx(1.0, abs=1e-14)

    def test_blow_up_reports_step(self):
        problem = ODEProblem(f=lambda t, y: y * y, y0=1.0, t0=0.0, t_end=10.0)
        with pytest.raises(NonFiniteError) as err:
            solve(problem, float_twon("CK54_S1"), 0.5)
        assert err.value.step >= 1


class TestErrorAtEnd:
    def test_exact_field_zero_error(self):
        problem = ODEProblem(f=lambda t, y: 0.0, y0=1.0, t0=0.0, t_end=5.0,
                             exact_at_end=1.0)
        assert error_at_end(problem, float_twon("(4,3)_1"), 0.25) == 0.0

    def test_monotone_decrease_above_floor(self):
        errs = [error_at_end(BENCHMARKS[1], float_twon("(4,3)_1"), h)
                for h in (0.2, 0.1, 0.05, 0.025)]
        assert all(a > b for a, b in zip(errs, errs[1:]))

    def test_ck_pair_small_error_at_h005(self):
        for name in ("CK54_S1", "CK54_S2"):
            assert error_at_end(BENCHMARKS[1], float_twon(name), 0.05) < 1e-6


class TestConvergenceOrder:
    H_LIST = (0.2, 0.1, 0.05, 0.025)

    def test_431_problem3_slope3(self):
        slope = convergence_order(BENCHMARKS[3], float_twon("(4,3)_1"), self.H_LIST)
        assert slope == pytest.approx(3.0, abs=0.3)

    def test_545_problem1_at_least_order4(self):
        # the h^4 error coefficient of this scheme at x=20 is small, so the
        # measured slope in this window sits above 4 (about 4.34); the
        # certified direction is no degradation below the claimed order
        slope = convergence_order(BENCHMARKS[1], float_twon("(5,4)_5"), self.H_LIST)
        assert 3.7 <= slope <= 6.0

    def test_646_problem2_at_least_order4(self):
        # same effect, stronger (slope about 4.9 in this window)
        slope = convergence_order(BENCHMARKS[2], float_twon("(6,4)_6"), self.H_LIST)
        assert 3.7 <= slope <= 6.0

    def test_641_problem1_slope4(self):
        slope = convergence_order(BENCHMARKS[1], float_twon("(6,4)_1"), self.H_LIST)
        assert slope == pytest.approx(4.0, abs=0.3)

    def test_degenerate_fit(self):
        from lsrk import DegenerateFitError

        problem = ODEProblem(f=lambda t, y: 0.0, y0=1.0, t0=0.0, t_end=1.0,
                             exact_at_end=1.0)
        with pytest.raises(DegenerateFitError):
            convergence_order(problem, float_twon("(4,3)_1"), self.H_LIST)

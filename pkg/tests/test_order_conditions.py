"""Order conditions: direct sums vs trace route, tall trees, classification."""
import random
from fractions import Fraction

import pytest

from lsrk import (
    ButcherTableau,
    OutOfRangeError,
    WrongStageCountError,
    augment,
    catalog_get,
    classify_order,
    dform_residuals_54,
    fifth_order_breaking,
    reconstruct_augmented,
    standard_residuals,
    tall_tree,
    trace_residuals,
)
from lsrk.matrices import split_augmented
from lsrk.order_conditions import CONDITION_LABELS
from lsrk.search import vector_to_dform

F = Fraction


def aug_and_nodes(tab):
    return augment(tab), tuple(tab.c) + (1,)


class TestStandardResiduals:
    def test_431_order3_zero_and_bc3_value(self, tab_431):
        res = standard_residuals(tab_431)
        for label in ("b", "bc", "bc2", "bac"):
            assert res[label] == 0
        assert res["bc3"] == F(13, 972)  # sum b c^3 = 64/243

    def test_545_order4_exact(self):
        res = standard_residuals(catalog_get("(5,4)_5").butcher())
        assert all(v == 0 for v in res.values())

    def test_zero_tableau(self):
        tab = ButcherTableau(s=2, a=[[0, 0], [0, 0]], b=(0, 0), c=(0, 0))
        assert standard_residuals(tab)["b"] == -1


class TestTraceResiduals:
    def test_646_all_zero_exact(self):
        tab = catalog_get("(6,4)_6").butcher()
        res = trace_residuals(*aug_and_nodes(tab))
        assert all(v == 0 for v in res.values())

    def test_ck_s4_small(self):
        tab = catalog_get("CK54_S4").butcher()
        res = trace_residuals(*aug_and_nodes(tab))
        assert all(abs(v) <= 1e-11 for v in res.values())

    def test_matches_direct_route_on_random_tableaux(self):
        rng = random.Random(21)
        for _ in range(30):
            s = rng.randint(2, 7)
            a = [[rng.uniform(-1, 1) if j < i else 0.0 for j in range(s)]
                 for i in range(s)]
            b = [rng.uniform(-1, 1) for _ in range(s)]
            c = [sum(a[i][:i]) for i in range(s)]
            c[0] = 0.0
            tab = ButcherTableau(s=s, a=a, b=b, c=c)
            direct = standard_residuals(tab)
            traced = trace_residuals(*aug_and_nodes(tab))
            for k in CONDITION_LABELS:
                assert traced[k] == pytest.approx(direct[k], abs=1e-14)

    def test_matches_direct_route_exact(self):
        rng = random.Random(22)
        for _ in range(10):
            s = rng.randint(2, 6)
            a = [[F(rng.randint(-6, 6), rng.randint(1, 8)) if j < i else F(0)
                  for j in range(s)] for i in range(s)]
            b = [F(rng.randint(-6, 6), rng.randint(1, 8)) for _ in range(s)]
            c = [sum(a[i][:i]) for i in range(s)]
            tab = ButcherTableau(s=s, a=a, b=b, c=c)
            assert standard_residuals(tab) == trace_residuals(*aug_and_nodes(tab))


class TestTallTree:
    def test_431_n3(self, tab_431):
        assert tall_tree(*aug_and_nodes(tab_431), 3) == F(1, 24)

    def test_ck_s1_n4(self):
        tab = catalog_get("CK54_S1").butcher()
        assert tall_tree(*aug_and_nodes(tab), 4) == pytest.approx(1 / 200, abs=1e-10)

    def test_545_n4(self):
        tab = catalog_get("(5,4)_5").butcher()
        assert tall_tree(*aug_and_nodes(tab), 4) == F(1, 360)

    def test_out_of_range(self, tab_431):
        aug, c = aug_and_nodes(tab_431)
        with pytest.raises(OutOfRangeError):
            tall_tree(aug, c, 4)
        with pytest.raises(OutOfRangeError):
            tall_tree(aug, c, 0)


class TestFifthOrderBreaking:
    def test_classical_rk4(self, rk4):
        assert fifth_order_breaking(rk4) == F(1, 16)

    def test_zero_matrix(self):
        tab = ButcherTableau(s=3, a=[[0] * 3] * 3, b=(1, 0, 0), c=(0, 0, 0))
        assert fifth_order_breaking(tab) == 0

    def test_545_not_fifth_order(self):
        tab = catalog_get("(5,4)_5").butcher()
        value = fifth_order_breaking(tab)
        # direct triple-sum oracle
        oracle = sum(
            tab.b[i] * tab.a[i][j] * tab.c[j] * tab.a[i][k] * tab.c[k]
            for i in range(5) for j in range(i) for k in range(i)
        )
        assert value == oracle
        assert value != F(1, 20)


class TestDFormResiduals54:
    def test_ck_s1(self):
        df = catalog_get("CK54_S1").dform()
        res = dform_residuals_54(df)
        assert all(abs(v) <= 1e-10 for v in res.values())

    def test_543(self):
        df = catalog_get("(5,4)_3").dform(exact=False)
        res = dform_residuals_54(df)
        assert all(abs(v) <= 1e-12 for v in res.values())

    def test_wrong_stage_count(self):
        df = catalog_get("(6,4)_1").dform(exact=False)
        with pytest.raises(WrongStageCountError):
            dform_residuals_54(df)

    def test_matches_reconstruction_on_random_dforms(self):
        rng = random.Random(31)
        checked = 0
        while checked < 1000:
            nodes = sorted(rng.uniform(0.02, 0.98) for _ in range(4))
            if min(b - a for a, b in zip(nodes, nodes[1:])) < 0.05:
                continue
            x = nodes + [rng.uniform(0.5, 4.0) for _ in range(4)]
            df = vector_to_dform(x)
            dres = dform_residuals_54(df)
            a, b = split_augmented(reconstruct_augmented(df))
            tab = ButcherTableau(s=5, a=a, b=b, c=df.c[:5])
            sres = standard_residuals(tab)
            for k in CONDITION_LABELS[1:]:
                assert abs(dres[k] - sres[k]) <= 1e-11
            checked += 1


class TestClassifyOrder:
    def test_432_is_order_3(self, tab_432):
        assert classify_order(tab_432).order == 3

    def test_648_is_order_4(self):
        assert classify_order(catalog_get("(6,4)_8").butcher()).order == 4

    def test_euler_like_embedding_is_order_1(self):
        tab = ButcherTableau(s=2, a=[[0, 0], [1, 0]], b=(0, 1), c=(0, 1))
        assert classify_order(tab).order == 1

    def test_tolerance_zero_for_exact(self):
        rep = classify_order(catalog_get("(4,3)_1").butcher())
        assert rep.tol == 0
        assert rep.order == 3

from fractions import Fraction

import pytest

from lsrk import ButcherTableau, catalog_get


def frac_tableau_rk4() -> ButcherTableau:
    """Classical four-stage order-four tableau (not two-register realizable)."""
    F = Fraction
    a = [
        [0, 0, 0, 0],
        [F(1, 2), 0, 0, 0],
        [0, F(1, 2), 0, 0],
        [0, 0, 1, 0],
    ]
    return ButcherTableau(s=4, a=a, b=(F(1, 6), F(1, 3), F(1, 3), F(1, 6)),
                          c=(0, F(1, 2), F(1, 2), 1))


@pytest.fixture
def rk4():
    return frac_tableau_rk4()


@pytest.fixture
def tab_431():
    return catalog_get("(4,3)_1").butcher()


@pytest.fixture
def tab_432():
    return catalog_get("(4,3)_2").butcher()

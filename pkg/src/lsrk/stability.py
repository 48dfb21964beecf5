"""Linear stability polynomial and stability region of an explicit scheme.

R(z) = 1 + sum_k z^k b^T a^{k-1} 1; for k >= 2 the coefficient equals
Tr[P A^{k-1} C], so mirror pairs share the polynomial (and hence the region)
exactly.  The region {|R(z)| <= 1} is evaluated on a grid and its boundary
extracted with marching squares.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .schemes import ButcherTableau

#: default grid window and resolution, wide enough for all catalog schemes
DEFAULT_WINDOW = (-6.0, 1.0, -5.0, 5.0)
DEFAULT_RESOLUTION = 800


@dataclass(frozen=True)
class StabilityPolynomial:
    """coeffs[k] is the z^k coefficient; for an order-p scheme
    coeffs[k] = 1/k! for k <= p."""

    coeffs: tuple

    def __call__(self, z):
        out = 0.0
        for ck in reversed([float(x) for x in self.coeffs]):
            out = out * z + ck
        return out


@dataclass(frozen=True)
class StabilityRegion:
    re: np.ndarray
    im: np.ndarray
    abs_r: np.ndarray          # |R| on the grid, shape (len(im), len(re))
    inside: np.ndarray         # boolean mask |R| <= 1
    boundary: list             # marching-squares segments ((x0,y0),(x1,y1))


def stability_polynomial(tab: ButcherTableau) -> StabilityPolynomial:
    """Coefficients via matrix powers: coeffs[k] = b a^{k-1} 1 (exact for
    rational tableaux)."""
    s = tab.s
    one_vec = [_unit(tab.b[0])] * s
    coeffs = [_unit(tab.b[0]), sum(tab.b)]
    v = one_vec
    for _ in range(2, s + 1):
        v = [sum(tab.a[i][j] * v[j] for j in range(i)) for i in range(s)]
        coeffs.append(sum(tab.b[i] * v[i] for i in range(s)))
    return StabilityPolynomial(coeffs=tuple(coeffs))


def _unit(sample):
    return 1.0 if isinstance(sample, float) else Fraction(1)


def stability_region(
    tab: ButcherTableau,
    re_grid=None,
    im_grid=None,
) -> StabilityRegion:
    """Evaluate |R| on re_grid x im_grid (defaults cover every catalog
    scheme) and trace the |R| = 1 contour."""
    if re_grid is None:
        re_grid = np.linspace(DEFAULT_WINDOW[0], DEFAULT_WINDOW[1], DEFAULT_RESOLUTION)
    if im_grid is None:
        im_grid = np.linspace(DEFAULT_WINDOW[2], DEFAULT_WINDOW[3], DEFAULT_RESOLUTION)
    re_grid = np.asarray(re_grid, dtype=float)
    im_grid = np.asarray(im_grid, dtype=float)
    poly = stability_polynomial(tab)
    zz = re_grid[None, :] + 1j * im_grid[:, None]
    r = np.abs(poly(zz))
    inside = r <= 1.0
    boundary = _marching_squares(re_grid, im_grid, r - 1.0)
    return StabilityRegion(re=re_grid, im=im_grid, abs_r=r, inside=inside, boundary=boundary)


def _marching_squares(xs, ys, f) -> list:
    """Zero-level segments of f (sampled on ys x xs), linear interpolation
    along cell edges; rows scanned in order so the output is deterministic."""

    def interp(x0, y0, f0, x1, y1, f1):
        t = f0 / (f0 - f1)
        return (x0 + t * (x1 - x0), y0 + t * (y1 - y0))

    segments = []
    ny, nx = f.shape
    for j in range(ny - 1):
        for i in range(nx - 1):
            fbl, fbr = f[j, i], f[j, i + 1]
            ftl, ftr = f[j + 1, i], f[j + 1, i + 1]
            case = (
                (1 if fbl <= 0 else 0)
                | (2 if fbr <= 0 else 0)
                | (4 if ftr <= 0 else 0)
                | (8 if ftl <= 0 else 0)
            )
            if case in (0, 15):
                continue
            x0, x1 = xs[i], xs[i + 1]
            y0, y1 = ys[j], ys[j + 1]
            bottom = lambda: interp(x0, y0, fbl, x1, y0, fbr)
            top = lambda: interp(x0, y1, ftl, x1, y1, ftr)
            left = lambda: interp(x0, y0, fbl, x0, y1, ftl)
            right = lambda: interp(x1, y0, fbr, x1, y1, ftr)
            if case in (1, 14):
                segments.append((left(), bottom()))
            elif case in (2, 13):
                segments.append((bottom(), right()))
            elif case in (4, 11):
                segments.append((right(), top()))
            elif case in (8, 7):
                segments.append((top(), left()))
            elif case in (3, 12):
                segments.append((left(), right()))
            elif case in (6, 9):
                segments.append((bottom(), top()))
            elif case in (5, 10):
                # saddle: split by the cell-center sign
                center = (fbl + fbr + ftl + ftr) / 4.0
                if (case == 5) == (center <= 0):
                    segments.append((left(), top()))
                    segments.append((bottom(), right()))
                else:
                    segments.append((left(), bottom()))
                    segments.append((right(), top()))
    return segments

"""Adaptive tensor-product Gauss-Legendre quadrature on rectangles.

The integrands here are smooth Gaussians times polynomials, so high-order
Gauss rules converge extremely fast; adaptivity only has to handle the case
where the box is much wider than the packet.  Panels are bisected in both
directions until the difference between a rule and its refinement falls
under an area-proportional share of the total budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from ..errors import ToleranceError

__all__ = ["QuadratureSpec", "gauss_legendre_2d", "integrate_adaptive"]


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs for the adaptive integrator.

    ``abs_tol`` is the absolute error budget for the whole box.  Each panel
    must either meet its area-proportional share (estimated as the
    difference between the ``order`` and ``refined_order`` rules) or be
    split, up to ``max_splits`` bisection levels.  ``half_width_sigmas``
    controls how many principal standard deviations of the density the
    default integration box extends to.
    """

    order: int = 32
    refined_order: int = 48
    abs_tol: float = 1e-13
    max_splits: int = 7
    half_width_sigmas: float = 8.5

    def __post_init__(self) -> None:
        if self.order < 2 or self.refined_order <= self.order:
            raise ValueError(
                f"need refined_order > order >= 2, got {self.order}, {self.refined_order}"
            )
        if self.abs_tol <= 0 or self.max_splits < 0 or self.half_width_sigmas <= 0:
            raise ValueError("tolerances and widths must be positive")


@lru_cache(maxsize=32)
def _nodes(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def gauss_legendre_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    box: tuple[float, float, float, float],
    order: int,
) -> complex:
    """Single tensor-product Gauss-Legendre pass over ``box`` = (x0, x1, y0, y1)."""
    x0, x1, y0, y1 = box
    t, w = _nodes(order)
    xs = 0.5 * (x1 - x0) * t + 0.5 * (x1 + x0)
    ys = 0.5 * (y1 - y0) * t + 0.5 * (y1 + y0)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    values = np.asarray(f(X, Y))
    jac = 0.25 * (x1 - x0) * (y1 - y0)
    return complex(jac * np.einsum("i,j,ij->", w, w, values))


def integrate_adaptive(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    box: tuple[float, float, float, float],
    spec: QuadratureSpec | None = None,
) -> complex:
    """Integrate ``f`` over the rectangle ``box`` to the requested tolerance.

    Raises
    ------
    ToleranceError
        If panels at the maximum bisection depth still leave an estimated
        error above the budget.
    """
    spec = spec or QuadratureSpec()
    x0, x1, y0, y1 = box
    total_area = (x1 - x0) * (y1 - y0)
    if total_area <= 0:
        raise ValueError(f"box must have positive area, got {box}")

    total = 0.0 + 0.0j
    err_total = 0.0
    stack: list[tuple[float, float, float, float, int]] = [(x0, x1, y0, y1, 0)]
    while stack:
        px0, px1, py0, py1, depth = stack.pop()
        coarse = gauss_legendre_2d(f, (px0, px1, py0, py1), spec.order)
        fine = gauss_legendre_2d(f, (px0, px1, py0, py1), spec.refined_order)
        err = abs(fine - coarse)
        share = spec.abs_tol * ((px1 - px0) * (py1 - py0)) / total_area
        if err <= share or depth >= spec.max_splits:
            total += fine
            err_total += err
        else:
            xm = 0.5 * (px0 + px1)
            ym = 0.5 * (py0 + py1)
            stack.extend(
                [
                    (px0, xm, py0, ym, depth + 1),
                    (xm, px1, py0, ym, depth + 1),
                    (px0, xm, ym, py1, depth + 1),
                    (xm, px1, ym, py1, depth + 1),
                ]
            )
    if err_total > 10.0 * spec.abs_tol:
        raise ToleranceError(
            f"quadrature error estimate {err_total:.3e} exceeds budget "
            f"{spec.abs_tol:.3e} after {spec.max_splits} splits"
        )
    return total

"""Overlap integrals between a packet and arbitrary reference modes."""

from __future__ import annotations

from typing import Callable

import numpy as np

from ..packet import RealParams, wavefunction
from .moments import integration_box
from .quadrature import QuadratureSpec, integrate_adaptive

__all__ = ["overlap_integral"]


def overlap_integral(
    params: RealParams,
    mode: Callable[[np.ndarray, np.ndarray], np.ndarray],
    mode_extent: float = 0.0,
    quad: QuadratureSpec | None = None,
) -> complex:
    """Projection ``<mode|psi>`` by adaptive quadrature.

    ``mode`` evaluates the reference wavefunction on coordinate arrays.
    ``mode_extent`` should bound the radius where the mode still has
    appreciable weight (for origin-centered oscillator modes, a few times
    ``sqrt((2 n_r + |m| + 1)/mu)``); the integration box is widened by it so
    packets displaced far from the origin still overlap the mode's support.
    """
    quad = quad or QuadratureSpec()
    box = integration_box(params, quad.half_width_sigmas, pad=mode_extent)
    # Make sure the box also covers the mode's own neighbourhood of the origin.
    x0, x1, y0, y1 = box
    x0, x1 = min(x0, -mode_extent), max(x1, mode_extent)
    y0, y1 = min(y0, -mode_extent), max(y1, mode_extent)

    def integrand(x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return np.conj(mode(x, y)) * wavefunction(params, x, y)

    return integrate_adaptive(integrand, (x0, x1, y0, y1), quad)

"""Homogenized lubrication coefficients for a rough sliding surface.

Roughness enters the effective thin-film model through a single scalar
intensity ``N`` (the cell average of the squared gradient of the oscillating
gap perturbation).  The pressure-driven (Poiseuille) term ``h^3/12`` gets
multiplied by ``A(N)`` and the shear-driven (Couette) term ``h/2`` gets
replaced by ``h * B(N)``, where

    A(N) = (12/N) * (e^{N/2} * I2 - 1) - (12/N) * (e^{N/2} - 1) * I3 / I1,
    B(N) = (1/N) * (e^{N/2} - 1) / I1,

built from the three Gaussian-kernel integrals

    I1(N) = int_0^1 exp( N s^2 / 2) ds          (growth_integral)
    I2(N) = int_0^1 exp(-N t^2 / 2) dt          (decay_integral)
    I3(N) = int_0^1 int_0^s exp(N (s^2 - t^2)/2) dt ds   (triangle_integral)

For a flat surface N = 0 and the classical values A = 1, B = 1/2 are
recovered.  The 1/N prefactors are removable singularities; below
``N_SWITCH`` the coefficients are evaluated from their Taylor expansions
(A = 1 + N/20 + O(N^2), B = 1/2 + N/24 + O(N^2)) instead of the quotient
form, which would lose all significant digits.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

# Switch to the Taylor branch below this intensity (the quotient form loses
# accuracy like eps/N); both branches agree to ~1e-14 at the switch.
N_SWITCH = 1e-6

# exp(N/2) overflows doubles near N ~ 1419; stop well before so that
# products of kernel values stay finite.
N_MAX = 700.0

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(16)

# Panel-doubling stops when successive composite estimates agree to this
# tolerance (relative for large integrals, absolute near unit scale).
_QUAD_TOL = 1e-13
_MAX_PANELS = 512


class CoefficientPair(NamedTuple):
    """Poiseuille correction ``a`` and Couette correction ``b`` at one point."""

    a: float
    b: float


def _check_intensity(n: float) -> float:
    n = float(n)
    if not math.isfinite(n) or n < 0.0:
        raise ValueError(f"roughness intensity must be a finite value >= 0, got {n}")
    if n > N_MAX:
        raise ValueError(f"roughness intensity {n} exceeds supported maximum {N_MAX}")
    return n


def _composite_gauss(f: Callable[[np.ndarray], np.ndarray], panels: int) -> float:
    """Composite 16-point Gauss-Legendre rule for int_0^1 f on `panels` panels."""
    edges = np.linspace(0.0, 1.0, panels + 1)
    half = 0.5 / panels
    mids = 0.5 * (edges[:-1] + edges[1:])
    x = mids[:, None] + half * _GL_NODES[None, :]
    return float(half * np.sum(f(x) @ _GL_WEIGHTS))


def _doubling_quadrature(estimate: Callable[[int], float]) -> float:
    panels = 1
    prev = estimate(panels)
    while panels < _MAX_PANELS:
        panels *= 2
        cur = estimate(panels)
        if abs(cur - prev) <= _QUAD_TOL * max(1.0, abs(cur)):
            return cur
        prev = cur
    return prev


def growth_integral(n: float) -> float:
    """I1(n) = int_0^1 exp(n s^2 / 2) ds."""
    n = _check_intensity(n)
    return _doubling_quadrature(
        lambda p: _composite_gauss(lambda s: np.exp(0.5 * n * s * s), p)
    )


def decay_integral(n: float) -> float:
    """I2(n) = int_0^1 exp(-n t^2 / 2) dt."""
    n = _check_intensity(n)
    return _doubling_quadrature(
        lambda p: _composite_gauss(lambda t: np.exp(-0.5 * n * t * t), p)
    )


def _decay_integral_minus_one(n: float) -> float:
    """int_0^1 (exp(-n t^2 / 2) - 1) dt, accurate in absolute terms for small n."""
    return _doubling_quadrature(
        lambda p: _composite_gauss(lambda t: np.expm1(-0.5 * n * t * t), p)
    )


def triangle_integral(n: float) -> float:
    """I3(n) = int_0^1 int_0^s exp(n (s^2 - t^2) / 2) dt ds.

    Evaluated as int_0^1 exp(n s^2/2) G(s) ds with G(s) = int_0^t exp(-n t^2/2) dt
    computed on the same composite Gauss grid (substituting t = s*u).
    """
    n = _check_intensity(n)

    def estimate(panels: int) -> float:
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = 0.5 / panels
        mids = 0.5 * (edges[:-1] + edges[1:])
        u = (mids[:, None] + half * _GL_NODES[None, :]).ravel()  # nodes on (0,1)
        w = np.tile(half * _GL_WEIGHTS, panels)
        # G(s) = s * sum_k w_k exp(-n (s u_k)^2 / 2)
        su = u[:, None] * u[None, :]  # s_i * u_k
        g = u * (np.exp(-0.5 * n * su * su) @ w)
        return float(np.sum(w * np.exp(0.5 * n * u * u) * g))

    return _doubling_quadrature(estimate)


def _complement_triangle_integral(n: float) -> float:
    """I4(n) = int_0^1 int_s^1 exp(n (s^2 - t^2) / 2) dt ds (integrand <= 1)."""

    def estimate(panels: int) -> float:
        edges = np.linspace(0.0, 1.0, panels + 1)
        half = 0.5 / panels
        mids = 0.5 * (edges[:-1] + edges[1:])
        u = (mids[:, None] + half * _GL_NODES[None, :]).ravel()
        w = np.tile(half * _GL_WEIGHTS, panels)
        # inner substitution t = s + (1-s) v maps [s,1] to the unit interval
        s = u[:, None]
        t = s + (1.0 - s) * u[None, :]
        inner = (1.0 - u) * (np.exp(0.5 * n * (s * s - t * t)) @ w)
        return float(np.sum(w * inner))

    return _doubling_quadrature(estimate)


# Above this intensity the direct grouping of A cancels at the e^{n/2} scale;
# the complementary-triangle form stays accurate there (both agree to ~1e-13
# at the crossover).
_N_LARGE = 10.0


def poiseuille_coeff(n: float) -> float:
    """Effective multiplier of the pressure-driven h^3/12 flux term.

    Equals 1 for a smooth surface and stays positive over the supported
    intensity range, so the homogenized pressure equation remains elliptic.
    """
    n = _check_intensity(n)
    if n < N_SWITCH:
        return 1.0 + n / 20.0
    i1 = growth_integral(n)
    i3 = triangle_integral(n)
    if n <= _N_LARGE:
        i2 = decay_integral(n)
        em = math.expm1(0.5 * n)  # e^{n/2} - 1
        # Grouped so every term vanishes linearly with n: dividing by n is
        # then benign instead of catastrophic.
        return 12.0 * (em * i2 + _decay_integral_minus_one(n) - em * i3 / i1) / n
    i4 = _complement_triangle_integral(n)
    # Identity I1*I2 - I3 = I4 turns the difference of e^{n/2}-sized terms
    # into two O(1) contributions.
    return 12.0 * (math.exp(0.5 * n) * i4 / i1 + (i3 - i1) / i1) / n


def couette_coeff(n: float) -> float:
    """Effective multiplier of the shear-driven h*U_b flux term (1/2 when smooth)."""
    n = _check_intensity(n)
    if n < N_SWITCH:
        return 0.5 + n / 24.0
    return math.expm1(0.5 * n) / n / growth_integral(n)


def coefficients(n: float) -> CoefficientPair:
    """Both corrections at intensity ``n``."""
    return CoefficientPair(poiseuille_coeff(n), couette_coeff(n))


def cosine_roughness_intensity(amplitude: float, wavenumber: int) -> float:
    """Intensity of a cosine ripple ``amplitude * cos(2 pi wavenumber X1)``.

    The cell average of the squared ripple gradient has the closed form
    amplitude^2 * (2 pi wavenumber)^2 / 2, independent of the torus dimension
    (the ripple varies in one direction only).
    """
    amplitude = float(amplitude)
    if not math.isfinite(amplitude) or amplitude < 0.0:
        raise ValueError(f"amplitude must be >= 0, got {amplitude}")
    wavenumber = int(wavenumber)
    if wavenumber < 1:
        raise ValueError(f"wavenumber must be a positive integer, got {wavenumber}")
    return 0.5 * amplitude**2 * (2.0 * math.pi * wavenumber) ** 2


def tabulated_roughness_intensity(gradient_samples) -> float:
    """Intensity from ripple-gradient samples on a uniform periodic unit cell.

    `gradient_samples` holds one gradient vector per grid point (last axis =
    components); a 1-d array is read as scalar gradients on a 1-d cell.  On a
    periodic uniform grid the trapezoid rule reduces to the plain average, so
    the result is the mean squared gradient norm (unit cell volume = 1).
    """
    g = np.asarray(gradient_samples, dtype=float)
    if g.size == 0:
        raise ValueError("gradient sample grid is empty")
    grid_shape = g.shape if g.ndim == 1 else g.shape[:-1]
    if any(m < 2 for m in grid_shape):
        raise ValueError(f"need >= 2 samples per grid direction, got shape {g.shape}")
    sq = g * g if g.ndim == 1 else np.sum(g * g, axis=-1)
    return float(np.mean(sq))

"""Through-gap velocity reconstruction and derived diagnostics.

With the roughness intensity ``n``, the reduced momentum balance integrates
in the scaled gap coordinate Z in [0, 1] to

    u(Z) = h^2 [ J(Z) - J(1) K(Z)/K(1) ] grad_p + [ 1 - K(Z)/K(1) ] U_b

with K(Z) = int_0^Z exp(n s^2/2) ds and
J(Z) = int_0^Z int_0^s exp(n (s^2 - t^2)/2) dt ds.  The profile satisfies
u(0) = U_b and u(1) = 0 by construction, and its gap-integrated flux
h * int_0^1 u dZ reproduces the coefficient-level flux
h B U_b - (h^3 A / 12) grad_p, which is the consistency check exported here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import _check_intensity, couette_coeff, poiseuille_coeff
from .geometry import Grid, RoughnessSpec
from .solver import PressureSolution


@dataclass(frozen=True)
class VelocityProfile:
    """Horizontal velocity samples across the gap at one horizontal location."""

    z: np.ndarray        # scaled gap coordinate, uniform on [0, 1]
    u: np.ndarray        # shape (len(z), 2)
    n_psi: float
    h1: float
    grad_p: np.ndarray
    u_b: np.ndarray


@dataclass(frozen=True)
class ComparisonReport:
    """Norms of the difference between two pressure fields on one grid."""

    l2: float
    linf: float
    l2_outside_rough: float


def _cumulative_simpson(y: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral at the even-index nodes of a uniform grid."""
    chunks = h / 3.0 * (y[:-2:2] + 4.0 * y[1:-1:2] + y[2::2])
    out = np.empty(chunks.size + 1)
    out[0] = 0.0
    np.cumsum(chunks, out=out[1:])
    return out


def _kernel_cumulatives(n: float, z_count: int, refine: int) -> tuple[np.ndarray, np.ndarray]:
    """K and J at the z samples, via cumulative Simpson on a shared fine grid."""
    m = z_count * refine            # fine intervals (refine is even)
    zu = np.linspace(0.0, 1.0, 2 * m + 1)   # half-step grid for the inner integral
    g_inner = np.exp(-0.5 * n * zu * zu)
    g_cum = _cumulative_simpson(g_inner, 0.5 / m)  # G at every fine node
    zf = zu[::2]
    growth = np.exp(0.5 * n * zf * zf)
    k_cum = _cumulative_simpson(growth, 1.0 / m)
    j_cum = _cumulative_simpson(growth * g_cum, 1.0 / m)
    # cumulative values land on even fine nodes; samples sit at multiples of
    # refine, which is even, so refine//2 strides through the cumulative array
    step = refine // 2
    return k_cum[::step], j_cum[::step]


def velocity_profile(h1: float, n: float, grad_p, u_b,
                     z_count: int = 64) -> VelocityProfile:
    """Reconstruct u(Z) on z_count+1 uniform samples.

    The two kernel primitives are integrated on a common refinement of the
    sample grid, doubled until they agree to ~1e-10 absolutely.
    """
    n = _check_intensity(n)
    if z_count < 8:
        raise ValueError(f"z_count must be >= 8, got {z_count}")
    h1 = float(h1)
    if h1 <= 0.0:
        raise ValueError(f"gap height must be positive, got {h1}")
    grad_p = np.asarray(grad_p, dtype=float)
    u_b = np.asarray(u_b, dtype=float)
    if grad_p.shape != (2,) or u_b.shape != (2,):
        raise ValueError("grad_p and u_b must be 2-vectors")

    refine = 2
    k_cum, j_cum = _kernel_cumulatives(n, z_count, refine)
    while refine < 256:
        refine *= 2
        k_new, j_new = _kernel_cumulatives(n, z_count, refine)
        scale = max(1.0, abs(k_new[-1]), abs(j_new[-1]))
        if (np.abs(k_new - k_cum).max() <= 1e-11 * scale
                and np.abs(j_new - j_cum).max() <= 1e-11 * scale):
            k_cum, j_cum = k_new, j_new
            break
        k_cum, j_cum = k_new, j_new

    ratio = k_cum / k_cum[-1]
    poiseuille = (j_cum - j_cum[-1] * ratio)[:, None] * grad_p[None, :]
    couette = (1.0 - ratio)[:, None] * u_b[None, :]
    z = np.linspace(0.0, 1.0, z_count + 1)
    return VelocityProfile(z=z, u=h1 * h1 * poiseuille + couette,
                           n_psi=n, h1=h1, grad_p=grad_p, u_b=u_b)


def flux_from_velocity(profile: VelocityProfile) -> np.ndarray:
    """Gap-integrated flux h * int_0^1 u dZ by composite Simpson."""
    nz = profile.z.size - 1
    if profile.z.size < 9:
        raise ValueError("flux quadrature needs at least 9 velocity samples")
    if nz % 2 != 0:
        raise ValueError("flux quadrature needs an even number of z intervals")
    h = 1.0 / nz
    u = profile.u
    integral = h / 3.0 * (u[0] + u[-1] + 4.0 * u[1:-1:2].sum(axis=0)
                          + 2.0 * u[2:-1:2].sum(axis=0))
    return profile.h1 * integral


def flux_from_coefficients(h1: float, n: float, grad_p, u_b) -> np.ndarray:
    """Flux predicted by the effective coefficients: h B U_b - (h^3 A/12) grad p."""
    h1 = float(h1)
    grad_p = np.asarray(grad_p, dtype=float)
    u_b = np.asarray(u_b, dtype=float)
    return h1 * couette_coeff(n) * u_b - h1**3 * poiseuille_coeff(n) / 12.0 * grad_p


def gradient_at(solution: PressureSolution, grid: Grid, x: float, y: float) -> np.ndarray:
    """P1 pressure gradient in the triangle containing (x, y), interior points only."""
    if not (0.0 < x < 1.0 and 0.0 < y < 1.0):
        raise ValueError(f"point ({x}, {y}) is not interior to the unit square")
    nx, ny = grid.nx, grid.ny
    hx, hy = 1.0 / nx, 1.0 / ny
    cx = min(int(x * nx), nx - 1)
    cy = min(int(y * ny), ny - 1)
    xi = (x - cx * hx) / hx
    eta = (y - cy * hy) / hy
    n00 = cy * (nx + 1) + cx
    p = solution.p
    p00, p10 = p[n00], p[n00 + 1]
    p01, p11 = p[n00 + nx + 1], p[n00 + nx + 2]
    if eta <= xi:  # lower triangle (n00, n10, n11)
        return np.array([(p10 - p00) / hx, (p11 - p10) / hy])
    return np.array([(p11 - p01) / hx, (p01 - p00) / hy])


def _nodal_l2(values: np.ndarray, grid: Grid, keep: np.ndarray | None = None) -> float:
    """Trapezoid-weighted nodal L2 norm, optionally restricted to a node mask."""
    x, y = grid.node_coords()
    wx = np.where((x == 0.0) | (x == 1.0), 0.5, 1.0)
    wy = np.where((y == 0.0) | (y == 1.0), 0.5, 1.0)
    w = wx * wy / (grid.nx * grid.ny)
    if keep is not None:
        w = w * keep
    return float(math.sqrt(np.sum(w * values * values)))


def compare_fields(p_smooth: PressureSolution, p_rough: PressureSolution,
                   grid: Grid, roughness: RoughnessSpec) -> ComparisonReport:
    """Difference norms between a smooth-surface and a rough-surface solution.

    `l2_outside_rough` restricts the L2 norm to nodes outside every rough
    rectangle; a nonzero value there shows the roughness perturbing the
    pressure beyond the rough patch itself.
    """
    if p_smooth.p.shape != p_rough.p.shape or p_smooth.p.size != grid.n_nodes:
        raise ValueError("pressure fields do not match the grid")
    d = p_rough.p - p_smooth.p
    x, y = grid.node_coords()
    outside = ~roughness.inside_any(x, y)
    return ComparisonReport(
        l2=_nodal_l2(d, grid),
        linf=float(np.abs(d).max()),
        l2_outside_rough=_nodal_l2(d, grid, keep=outside),
    )

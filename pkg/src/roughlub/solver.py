"""P1 finite-element solver for the roughness-corrected pressure equation.

Weak form (test functions q vanish on {x=1}, {y=0} and {y=1}):

    int (h^3 A / 12) grad p . grad q  -  int (h B) U_b . grad q
        + int_{x=0} Q_e q  =  0

Each grid cell is split into two triangles along the lower-left to
upper-right diagonal; both triangles inherit the cell's barycenter data, so
all element integrals are exact for the piecewise-constant coefficients.
The reduced system (Dirichlet rows/columns eliminated) is symmetric positive
definite and is solved with Jacobi-preconditioned conjugate gradients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .coefficients import couette_coeff, poiseuille_coeff
from .geometry import (CoefficientFields, GapProfile, Grid, RoughnessSpec,
                       ScenarioConfig, build_fields, evaluate_gap)


class ConvergenceError(RuntimeError):
    """Iterative solve failed to reach the requested residual."""


@dataclass(frozen=True)
class LinearSystem:
    """Reduced SPD system plus the mapping back to grid nodes."""

    matrix: sp.csr_matrix
    rhs: np.ndarray
    free_nodes: np.ndarray  # grid node index of each unknown
    n_nodes: int


@dataclass(frozen=True)
class PressureSolution:
    """Nodal pressure on the full grid with solver diagnostics."""

    p: np.ndarray
    iterations: int
    residual: float


def _triangle_connectivity(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Vertex node indices of the lower and upper triangle of every cell."""
    nx, ny = grid.nx, grid.ny
    cx = np.tile(np.arange(nx), ny)
    cy = np.repeat(np.arange(ny), nx)
    n00 = cy * (nx + 1) + cx
    n10 = n00 + 1
    n01 = n00 + (nx + 1)
    n11 = n01 + 1
    lower = np.stack([n00, n10, n11], axis=1)
    upper = np.stack([n00, n11, n01], axis=1)
    return lower, upper


def _p1_gradients(hx: float, hy: float) -> tuple[np.ndarray, np.ndarray]:
    """Constant shape-function gradients on the two reference triangles."""
    # lower: (0,0), (hx,0), (hx,hy);  upper: (0,0), (hx,hy), (0,hy)
    v_lower = np.array([[0.0, 0.0], [hx, 0.0], [hx, hy]])
    v_upper = np.array([[0.0, 0.0], [hx, hy], [0.0, hy]])

    def grads(v):
        t = np.column_stack([v[1] - v[0], v[2] - v[0]])  # Jacobian
        inv = np.linalg.inv(t)
        # rows of inv are gradients of the two reference barycentric coords
        g1, g2 = inv[0], inv[1]
        return np.stack([-g1 - g2, g1, g2])

    return grads(v_lower), grads(v_upper)


def assemble(grid: Grid, fields: CoefficientFields,
             u_b: tuple[float, float], q_e: float) -> LinearSystem:
    """Build the reduced stiffness matrix and load vector."""
    nx, ny = grid.nx, grid.ny
    hx, hy = 1.0 / nx, 1.0 / ny
    area = 0.5 * hx * hy

    k_cell = fields.h1_bar**3 * fields.a / 12.0
    if np.any(k_cell <= 0.0) or not np.all(np.isfinite(k_cell)):
        raise ValueError("non-elliptic cell: h^3 A / 12 must be positive everywhere")
    c_cell = fields.h1_bar * fields.b

    lower, upper = _triangle_connectivity(grid)
    g_lower, g_upper = _p1_gradients(hx, hy)
    ub = np.asarray(u_b, dtype=float)

    rows, cols, data = [], [], []
    rhs = np.zeros(grid.n_nodes)
    for conn, g in ((lower, g_lower), (upper, g_upper)):
        local = area * (g @ g.T)  # 3x3, same for every triangle of this type
        data.append((k_cell[:, None, None] * local[None, :, :]).ravel())
        rows.append(np.repeat(conn, 3, axis=1).ravel())
        cols.append(np.tile(conn, (1, 3)).ravel())
        # int (h B) U_b . grad phi_i, exact for constant data
        np.add.at(rhs, conn.ravel(),
                  np.outer(c_cell, area * (g @ ub)).ravel())

    # inlet edge term: int_{x=0} Q_e phi_i = Q_e * hy / 2 per edge endpoint
    inlet_edge_lo = np.arange(ny) * (nx + 1)
    edge_load = np.zeros(grid.n_nodes)
    np.add.at(edge_load, inlet_edge_lo, 0.5 * q_e * hy)
    np.add.at(edge_load, inlet_edge_lo + (nx + 1), 0.5 * q_e * hy)
    rhs -= edge_load

    stiffness = sp.coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
        shape=(grid.n_nodes, grid.n_nodes)).tocsr()

    free = np.flatnonzero(~grid.dirichlet_mask())
    reduced = stiffness[free][:, free].tocsr()
    reduced.sum_duplicates()
    return LinearSystem(matrix=reduced, rhs=rhs[free], free_nodes=free,
                        n_nodes=grid.n_nodes)


def solve_linear(system: LinearSystem, tol: float = 1e-10,
                 max_iter: int | None = None) -> PressureSolution:
    """Jacobi-preconditioned CG down to a true relative residual <= tol.

    A zero right-hand side short-circuits to the zero solution.  The result
    is deterministic for fixed inputs (fixed operation order, no threading).
    """
    m, b = system.matrix, system.rhs
    n = b.size
    if max_iter is None:
        max_iter = 10 * n
    b_norm = float(np.linalg.norm(b))
    full = np.zeros(system.n_nodes)
    if b_norm == 0.0:
        return PressureSolution(p=full, iterations=0, residual=0.0)

    inv_diag = 1.0 / m.diagonal()
    x = np.zeros(n)
    r = b.copy()
    z = inv_diag * r
    d = z.copy()
    rz = float(r @ z)
    iterations = 0
    residual = 1.0
    for k in range(1, max_iter + 1):
        ad = m @ d
        alpha = rz / float(d @ ad)
        x += alpha * d
        r -= alpha * ad
        iterations = k
        if np.linalg.norm(r) <= tol * b_norm:
            # recurrence residual can drift; confirm with the true residual
            true_r = b - m @ x
            residual = float(np.linalg.norm(true_r) / b_norm)
            if residual <= tol:
                break
            r = true_r
        z = inv_diag * r
        rz_next = float(r @ z)
        d = z + (rz_next / rz) * d
        rz = rz_next
    else:
        residual = float(np.linalg.norm(b - m @ x) / b_norm)
        if residual > tol:
            raise ConvergenceError(
                f"CG did not converge in {max_iter} iterations "
                f"(relative residual {residual:.3e} > tol {tol:.3e})")

    full[system.free_nodes] = x
    return PressureSolution(p=full, iterations=iterations, residual=residual)


def residual_check(system: LinearSystem, solution: PressureSolution) -> float:
    """Relative residual of a solution against its system (absolute if rhs = 0)."""
    x = solution.p[system.free_nodes]
    r = float(np.linalg.norm(system.matrix @ x - system.rhs))
    b_norm = float(np.linalg.norm(system.rhs))
    return r / b_norm if b_norm > 0.0 else r


def solve_reynolds(config: ScenarioConfig) -> PressureSolution:
    """Full pipeline: fields -> assembly -> linear solve."""
    grid, fields = build_fields(config)
    system = assemble(grid, fields, config.u_b, config.q_e)
    return solve_linear(system, tol=config.tol, max_iter=config.max_iter)


def oracle_1d(gap: GapProfile, roughness: RoughnessSpec, u_bx: float,
              q_e: float, samples: int = 129) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form pressure for y-independent data, for solver validation.

    In one horizontal dimension the flux (h^3 A / 12) p' - h B u_bx is the
    constant q_e, so with p(1) = 0

        p(x) = - int_x^1 12 (q_e + h(s) B(s) u_bx) / (h(s)^3 A(s)) ds.

    The integral is evaluated by composite Simpson with >= 2^14 panels per
    smooth piece; rough-region edges become panel boundaries so the
    discontinuous coefficients never straddle a panel.
    """
    if gap.kind == "tabulated" and not np.allclose(
            gap.table, gap.table[0], rtol=0.0, atol=0.0):
        raise ValueError("1d oracle needs a gap that does not vary in y")
    eps = 1e-12
    for r in roughness.regions:
        if r.y0 > eps or r.y1 < 1.0 - eps:
            raise ValueError("1d oracle needs rough regions spanning the full y range")
    if samples < 2:
        raise ValueError("need at least 2 samples")

    breaks = {0.0, 1.0}
    for r in roughness.regions:
        breaks.update((r.x0, r.x1))
    breaks = np.array(sorted(b for b in breaks if 0.0 <= b <= 1.0))

    def integrand(s: np.ndarray) -> np.ndarray:
        h = np.asarray(evaluate_gap(gap, s, np.full_like(s, 0.5)))
        n = roughness.intensity_at(s, np.full_like(s, 0.5))
        a = np.empty_like(h)
        b = np.empty_like(h)
        for value in np.unique(n):
            sel = n == value
            a[sel] = poiseuille_coeff(value)
            b[sel] = couette_coeff(value)
        return 12.0 * (q_e + h * b * u_bx) / (h**3 * a)

    def simpson(lo: float, hi: float, panels: int = 2**14) -> float:
        if hi - lo <= 0.0:
            return 0.0
        s = np.linspace(lo, hi, 2 * panels + 1)
        # nudge the end samples off the piece boundary so a coefficient jump
        # shared with the neighbouring piece is sampled on the correct side
        s[0] += 1e-13
        s[-1] -= 1e-13
        y = integrand(s)
        h = (hi - lo) / (2 * panels)
        return float(h / 3.0 * (y[0] + y[-1] + 4.0 * y[1::2].sum() + 2.0 * y[2:-1:2].sum()))

    x = np.linspace(0.0, 1.0, samples)
    p = np.zeros(samples)
    for i, xi in enumerate(x):
        cuts = np.unique(np.concatenate(([xi], breaks[breaks > xi])))
        p[i] = -sum(simpson(lo, hi) for lo, hi in zip(cuts[:-1], cuts[1:]))
    return x, p

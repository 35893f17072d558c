"""Domain description: gap profile, rough regions, structured grid, fields.

The horizontal domain is the unit square.  The boundary splits into an inlet
side {x=0}, where a flux is imposed, and the three remaining sides, where the
pressure is pinned to zero.  Roughness lives on axis-aligned rectangles, each
carrying a single intensity value; everywhere else the surface is smooth
(intensity 0).  Coefficients are sampled once per cell at the barycenter, so
the discontinuity across a rough-region edge is kept sharp instead of being
smeared by averaging.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coefficients import coefficients, cosine_roughness_intensity

GAP_KINDS = ("quadratic_channel", "constant", "tabulated")


class ConfigError(ValueError):
    """Malformed or invalid scenario configuration."""


@dataclass(frozen=True)
class GapProfile:
    """Leading-order gap height h(x, y) > 0 over the unit square.

    quadratic_channel: h = c0 * (2x - 1)^2 + c1  (a convergent-divergent channel)
    constant:          h = c0
    tabulated:         bilinear interpolation of `table` (uniform grid, row i
                       = y level i/(rows-1), column j = x level j/(cols-1))
    """

    kind: str = "quadratic_channel"
    c0: float = 1.0
    c1: float = 0.5
    table: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in GAP_KINDS:
            raise ConfigError(f"unknown gap kind {self.kind!r}, expected one of {GAP_KINDS}")
        if self.kind == "tabulated":
            if self.table is None:
                raise ConfigError("tabulated gap profile requires a table")
            t = np.asarray(self.table, dtype=float)
            if t.ndim != 2 or t.shape[0] < 2 or t.shape[1] < 2:
                raise ConfigError(f"gap table must be 2-d with >= 2 rows/cols, got {t.shape}")
            if not np.all(t > 0.0):
                raise ConfigError("gap table must be positive everywhere")
            object.__setattr__(self, "table", t)


def evaluate_gap(profile: GapProfile, x, y):
    """Gap height at (x, y); accepts scalars or equal-shaped arrays."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(x < 0.0) or np.any(x > 1.0) or np.any(y < 0.0) or np.any(y > 1.0):
        raise ValueError("gap evaluation point outside the unit square")
    if profile.kind == "quadratic_channel":
        h = profile.c0 * (2.0 * x - 1.0) ** 2 + profile.c1 + 0.0 * y
    elif profile.kind == "constant":
        h = profile.c0 + 0.0 * x + 0.0 * y
    else:
        t = profile.table
        ny, nx = t.shape[0] - 1, t.shape[1] - 1
        fx = np.clip(x * nx, 0.0, nx)
        fy = np.clip(y * ny, 0.0, ny)
        j = np.clip(fx.astype(int), 0, nx - 1)
        i = np.clip(fy.astype(int), 0, ny - 1)
        sx, sy = fx - j, fy - i
        h = ((1 - sx) * (1 - sy) * t[i, j] + sx * (1 - sy) * t[i, j + 1]
             + (1 - sx) * sy * t[i + 1, j] + sx * sy * t[i + 1, j + 1])
    if np.any(h <= 0.0):
        raise ValueError("gap profile is non-positive at an evaluation point")
    return float(h) if h.ndim == 0 else h


@dataclass(frozen=True)
class RoughRegion:
    """Axis-aligned rectangle with a roughness intensity.

    Either a direct intensity `n` or cosine-ripple parameters
    (`amplitude`, `wavenumber`) must be given, not both.
    """

    x0: float
    y0: float
    x1: float
    y1: float
    n: float | None = None
    amplitude: float | None = None
    wavenumber: int | None = None

    def __post_init__(self):
        if not (0.0 <= self.x0 < self.x1 <= 1.0 and 0.0 <= self.y0 < self.y1 <= 1.0):
            raise ConfigError(
                f"rough region ({self.x0},{self.y0})-({self.x1},{self.y1}) "
                "must be a nondegenerate rectangle inside the unit square")
        direct = self.n is not None
        cosine = self.amplitude is not None or self.wavenumber is not None
        if direct == cosine:
            raise ConfigError("rough region needs either n=<value> or amp=,wav= (not both)")
        if cosine and (self.amplitude is None or self.wavenumber is None):
            raise ConfigError("cosine rough region needs both amp= and wav=")
        if direct and self.n < 0.0:
            raise ConfigError(f"rough region intensity must be >= 0, got {self.n}")

    def intensity(self) -> float:
        if self.n is not None:
            return float(self.n)
        return cosine_roughness_intensity(self.amplitude, self.wavenumber)

    def contains(self, x, y):
        return (self.x0 <= x) & (x <= self.x1) & (self.y0 <= y) & (y <= self.y1)


@dataclass(frozen=True)
class RoughnessSpec:
    """Collection of non-overlapping rough rectangles; empty means fully smooth."""

    regions: tuple[RoughRegion, ...] = ()

    def __post_init__(self):
        regions = tuple(self.regions)
        object.__setattr__(self, "regions", regions)
        for i, r in enumerate(regions):
            for s in regions[i + 1:]:
                if (r.x0 < s.x1 and s.x0 < r.x1 and r.y0 < s.y1 and s.y0 < r.y1):
                    raise ConfigError(
                        f"rough regions ({r.x0},{r.y0})-({r.x1},{r.y1}) and "
                        f"({s.x0},{s.y0})-({s.x1},{s.y1}) overlap")

    def intensity_at(self, x, y):
        """Pointwise intensity field (0 on the smooth part); vectorized."""
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape)
        for r in self.regions:
            out = np.where(r.contains(x, y), r.intensity(), out)
        return float(out) if out.ndim == 0 else out

    def inside_any(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        out = np.zeros(np.broadcast(x, y).shape, dtype=bool)
        for r in self.regions:
            out |= r.contains(x, y)
        return bool(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Grid:
    """Uniform (nx x ny)-cell grid on the unit square with boundary tags.

    Node index = iy * (nx + 1) + ix; cell index = cy * nx + cx.  Dirichlet
    nodes are {x=1}, {y=0} and {y=1} (pressure pinned to 0); the remaining
    {x=0} nodes are the flux inlet.  The two inlet corners go to the Dirichlet
    set (ties resolve to Dirichlet).  With `y_sides_natural` the y = 0, 1
    sides become do-nothing boundaries instead; this exists only so that
    y-independent validation problems stay y-independent.
    """

    nx: int
    ny: int
    y_sides_natural: bool = False

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ConfigError(f"grid needs nx, ny >= 2, got {self.nx} x {self.ny}")

    @property
    def n_nodes(self) -> int:
        return (self.nx + 1) * (self.ny + 1)

    @property
    def n_cells(self) -> int:
        return self.nx * self.ny

    def node_coords(self) -> tuple[np.ndarray, np.ndarray]:
        ix = np.tile(np.arange(self.nx + 1), self.ny + 1)
        iy = np.repeat(np.arange(self.ny + 1), self.nx + 1)
        return ix / self.nx, iy / self.ny

    def dirichlet_mask(self) -> np.ndarray:
        x, y = self.node_coords()
        mask = x == 1.0
        if not self.y_sides_natural:
            mask |= (y == 0.0) | (y == 1.0)
        return mask

    def inlet_mask(self) -> np.ndarray:
        x, _ = self.node_coords()
        return (x == 0.0) & ~self.dirichlet_mask()

    def cell_barycenters(self) -> tuple[np.ndarray, np.ndarray]:
        bx = (np.tile(np.arange(self.nx), self.ny) + 0.5) / self.nx
        by = (np.repeat(np.arange(self.ny), self.nx) + 0.5) / self.ny
        return bx, by


@dataclass(frozen=True)
class CoefficientFields:
    """Per-cell data entering the pressure equation (cell index = cy*nx + cx)."""

    n_psi: np.ndarray
    a: np.ndarray
    b: np.ndarray
    h1_bar: np.ndarray


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything needed to run one pressure computation."""

    nx: int = 64
    ny: int = 64
    gap: GapProfile = field(default_factory=GapProfile)
    roughness: RoughnessSpec = field(default_factory=RoughnessSpec)
    u_b: tuple[float, float] = (1.0, 0.0)
    q_e: float = 0.5
    tol: float = 1e-10
    max_iter: int | None = None  # None -> 10 * number of free nodes
    out_dir: str = "out"
    y_sides_natural: bool = False

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ConfigError(f"grid needs nx, ny >= 2, got {self.nx} x {self.ny}")
        for name, v in (("ubx", self.u_b[0]), ("uby", self.u_b[1]), ("q_e", self.q_e)):
            if not math.isfinite(float(v)):
                raise ConfigError(f"{name} must be finite, got {v}")
        if not (self.tol > 0.0 and math.isfinite(self.tol)):
            raise ConfigError(f"solver tolerance must be positive, got {self.tol}")
        if self.max_iter is not None and self.max_iter < 1:
            raise ConfigError(f"solver.max_iter must be >= 1, got {self.max_iter}")


_KNOWN_KEYS = {
    "grid.nx", "grid.ny", "gap.kind", "gap.c0", "gap.c1", "gap.table_path",
    "velocity.ubx", "velocity.uby", "inlet.flux", "solver.tol",
    "solver.max_iter", "output.dir",
}


def _parse_region(value: str, where: str) -> RoughRegion:
    parts = [p.strip() for p in value.split(",")]
    if len(parts) < 5:
        raise ConfigError(f"{where}: expected 'x0,y0,x1,y1,n=<N>' or "
                          f"'x0,y0,x1,y1,amp=<a>,wav=<k>', got {value!r}")
    try:
        x0, y0, x1, y1 = (float(p) for p in parts[:4])
    except ValueError as exc:
        raise ConfigError(f"{where}: bad rectangle corner: {exc}") from None
    kw: dict[str, float] = {}
    for p in parts[4:]:
        if "=" not in p:
            raise ConfigError(f"{where}: expected key=value region parameter, got {p!r}")
        k, _, v = p.partition("=")
        k = k.strip()
        if k not in ("n", "amp", "wav"):
            raise ConfigError(f"{where}: unknown region parameter {k!r}")
        try:
            kw[k] = float(v)
        except ValueError:
            raise ConfigError(f"{where}: bad numeric value for {k}: {v!r}") from None
    return RoughRegion(
        x0, y0, x1, y1,
        n=kw.get("n"),
        amplitude=kw.get("amp"),
        wavenumber=int(kw["wav"]) if "wav" in kw else None,
    )


def load_config(text: str) -> ScenarioConfig:
    """Parse a `key = value` scenario document (one pair per line, # comments).

    Unknown keys are a hard error; omitted keys fall back to the reference
    scenario: quadratic channel gap (c0=1, c1=0.5), bottom velocity (1, 0),
    inlet flux 0.5, no roughness, solver.tol 1e-10.
    """
    values: dict[str, str] = {}
    regions: dict[int, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key.startswith("rough.region."):
            suffix = key[len("rough.region."):]
            if not suffix.isdigit():
                raise ConfigError(f"line {lineno}: bad rough region key {key!r}")
            k = int(suffix)
            if k in regions:
                raise ConfigError(f"line {lineno}: duplicate key {key!r}")
            regions[k] = value
            continue
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        values[key] = value

    def take(key, conv, default):
        if key not in values:
            return default
        try:
            return conv(values[key])
        except (ValueError, TypeError) as exc:
            raise ConfigError(f"key {key!r}: {exc}") from None

    kind = take("gap.kind", str, "quadratic_channel")
    table = None
    if kind == "tabulated":
        path = values.get("gap.table_path")
        if path is None:
            raise ConfigError("key 'gap.table_path': required for gap.kind=tabulated")
        try:
            table = np.loadtxt(path, delimiter=",", ndmin=2)
        except OSError as exc:
            raise ConfigError(f"key 'gap.table_path': cannot read {path!r}: {exc}") from None
    elif "gap.table_path" in values:
        raise ConfigError("key 'gap.table_path': only valid with gap.kind=tabulated")
    gap = GapProfile(kind=kind, c0=take("gap.c0", float, 1.0),
                     c1=take("gap.c1", float, 0.5), table=table)

    rough = RoughnessSpec(tuple(
        _parse_region(regions[k], f"key 'rough.region.{k}'") for k in sorted(regions)))

    return ScenarioConfig(
        nx=take("grid.nx", int, 64),
        ny=take("grid.ny", int, 64),
        gap=gap,
        roughness=rough,
        u_b=(take("velocity.ubx", float, 1.0), take("velocity.uby", float, 0.0)),
        q_e=take("inlet.flux", float, 0.5),
        tol=take("solver.tol", float, 1e-10),
        max_iter=take("solver.max_iter", int, None),
        out_dir=take("output.dir", str, "out"),
    )


def build_fields(config: ScenarioConfig) -> tuple[Grid, CoefficientFields]:
    """Sample intensity, coefficients and gap height at every cell barycenter.

    A cell is rough iff its barycenter lies inside a rough rectangle, so the
    assignment is deterministic and stable under refinement (interior points
    keep their value).  Coefficients are computed once per distinct intensity.
    """
    grid = Grid(config.nx, config.ny, y_sides_natural=config.y_sides_natural)
    bx, by = grid.cell_barycenters()
    n_psi = config.roughness.intensity_at(bx, by)
    h1_bar = np.asarray(evaluate_gap(config.gap, bx, by))

    a = np.empty_like(n_psi)
    b = np.empty_like(n_psi)
    for value in np.unique(n_psi):
        pair = coefficients(value)
        sel = n_psi == value
        a[sel] = pair.a
        b[sel] = pair.b
    return grid, CoefficientFields(n_psi=n_psi, a=a, b=b, h1_bar=h1_bar)

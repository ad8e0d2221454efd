"""Uniform rectangular mesh with a global Gauss-Lobatto node lattice.

For degree k on an nx-by-ny cell grid the per-cell tensor Gauss-Lobatto
nodes glue into a structured (k*nx+1) x (k*ny+1) lattice; nodes shared by
neighbouring cells carry a single global index.  Numbering is lexicographic
by (y, x) over that lattice.  Meshes are immutable after construction.
"""

import numpy as np
from dataclasses import dataclass, field

from .quadrature import GaussLobattoRule, gauss_lobatto_rule


@dataclass(frozen=True)
class GridMesh:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    degree: int
    rule: GaussLobattoRule = field(repr=False)

    @property
    def hx(self):
        return (self.x_max - self.x_min) / self.nx

    @property
    def hy(self):
        return (self.y_max - self.y_min) / self.ny

    @property
    def n_cells(self):
        return self.nx * self.ny

    @property
    def area(self):
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)

    def lattice_shape(self, degree=None):
        """(points per row, points per column) of the nodal lattice."""
        k = self.degree if degree is None else degree
        return k * self.nx + 1, k * self.ny + 1

    def n_nodes(self, degree=None):
        ncol, nrow = self.lattice_shape(degree)
        return ncol * nrow

    def axis_coords(self, degree=None):
        """1D lattice coordinates (x_coords, y_coords) for the given degree."""
        k = self.degree if degree is None else degree
        ref = gauss_lobatto_rule(k + 1).points
        x = _axis(self.x_min, self.hx, self.nx, k, ref)
        y = _axis(self.y_min, self.hy, self.ny, k, ref)
        return x, y

    def node_coords(self, degree=None):
        """(n_nodes, 2) coordinates, lexicographic by (y, x)."""
        x, y = self.axis_coords(degree)
        X, Y = np.meshgrid(x, y)
        return np.column_stack([X.ravel(), Y.ravel()])

    def cell_nodes(self, degree=None):
        """(n_cells, (k+1)^2) local-to-global map, cells lexicographic by (cy, cx)."""
        k = self.degree if degree is None else degree
        ncol = k * self.nx + 1
        a = np.arange(k + 1)
        loc = a[None, :] + ncol * a[:, None]            # (k+1, k+1) block offsets
        loc = loc.ravel()                               # y-major local ordering
        cx, cy = np.meshgrid(np.arange(self.nx), np.arange(self.ny))
        origin = (k * cy * ncol + k * cx).ravel()
        return origin[:, None] + loc[None, :]

    def cell_origin(self):
        """(n_cells, 2) lower-left corner coordinates of each cell."""
        cx, cy = np.meshgrid(np.arange(self.nx), np.arange(self.ny))
        return np.column_stack([self.x_min + self.hx * cx.ravel(),
                                self.y_min + self.hy * cy.ravel()])


def _axis(lo, h, n, k, ref):
    # per-cell affine images of the reference nodes; shared endpoints dedup'd
    pts = lo + h * (np.arange(n)[:, None] + (ref[None, :] + 1) / 2)
    out = np.empty(k * n + 1)
    out[:-1] = pts[:, :-1].ravel()
    out[-1] = lo + h * n
    # exact endpoint at shared cell boundaries to keep the lattice strictly sorted
    return out


def build_mesh(bounds, nx: int, ny: int, k: int) -> GridMesh:
    """Mesh a rectangle with nx-by-ny cells and degree-k Gauss-Lobatto layout.

    bounds = (x_min, x_max, y_min, y_max).
    """
    x_min, x_max, y_min, y_max = map(float, bounds)
    if nx < 1 or ny < 1:
        raise ValueError(f"cell counts must be positive, got nx={nx}, ny={ny}")
    if k < 1:
        raise ValueError(f"polynomial degree must be >= 1, got {k}")
    if not x_max > x_min or not y_max > y_min:
        raise ValueError("domain extents must be positive")
    rule = gauss_lobatto_rule(k + 1)
    return GridMesh(x_min, x_max, y_min, y_max, int(nx), int(ny), int(k), rule)

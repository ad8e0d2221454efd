"""Nodal Q_k spaces on the Gauss-Lobatto lattice of a GridMesh.

Fields are plain numpy coefficient vectors indexed by global lattice nodes
(lexicographic by (y, x)); a vector velocity field is the pair of component
vectors.  Spaces are immutable after construction and safe for concurrent
reads.
"""

import numpy as np

from .mesh import GridMesh
from .quadrature import gauss_lobatto_rule, gauss_legendre_rule, lagrange_table

SIDES = ("left", "right", "bottom", "top")


class ScalarSpace:
    """Continuous Q_degree space with Gauss-Lobatto nodal basis."""

    def __init__(self, mesh: GridMesh, degree=None):
        self.mesh = mesh
        self.degree = mesh.degree if degree is None else int(degree)
        if self.degree < 1:
            raise ValueError("scalar space degree must be >= 1")
        self.ncol, self.nrow = mesh.lattice_shape(self.degree)
        self.n_dofs = self.ncol * self.nrow
        self.cells = mesh.cell_nodes(self.degree)
        self.coords = mesh.node_coords(self.degree)
        self.ref = gauss_lobatto_rule(self.degree + 1)
        self.lumped_weights = self._lumped_weights()
        self._side_cache = {}

    def _lumped_weights(self):
        m = self.mesh
        w1 = self.ref.weights
        wloc = (m.hx * m.hy / 4.0) * np.outer(w1, w1).ravel()
        w = np.zeros(self.n_dofs)
        np.add.at(w, self.cells.ravel(),
                  np.broadcast_to(wloc, self.cells.shape).ravel())
        return w

    # --- node index helpers -------------------------------------------------
    def node_grid(self):
        """Global indices arranged on the (nrow, ncol) lattice."""
        return np.arange(self.n_dofs).reshape(self.nrow, self.ncol)

    def side_nodes(self, side):
        g = self.node_grid()
        if side == "left":
            return g[:, 0].copy()
        if side == "right":
            return g[:, -1].copy()
        if side == "bottom":
            return g[0, :].copy()
        if side == "top":
            return g[-1, :].copy()
        raise ValueError(f"unknown side {side!r}")

    def boundary_nodes(self):
        mask = np.zeros(self.n_dofs, dtype=bool)
        for s in SIDES:
            mask[self.side_nodes(s)] = True
        return np.nonzero(mask)[0]

    # --- evaluation ---------------------------------------------------------
    def interpolate(self, f):
        """Nodal interpolant of f(x, y) (vectorized callable or constant)."""
        if np.isscalar(f):
            return np.full(self.n_dofs, float(f))
        return np.asarray(f(self.coords[:, 0], self.coords[:, 1]), dtype=float)

    def tabulate(self, pts_1d):
        """Tensor basis tables at the tensor product of 1D points.

        Returns (V, Gx, Gy) of shape (nq, nloc) with physical-gradient scaling,
        ordered q = qy*nq1 + qx and local node l = b*(degree+1) + a.
        """
        V1, D1 = lagrange_table(self.ref.points, pts_1d)
        sx, sy = 2.0 / self.mesh.hx, 2.0 / self.mesh.hy
        V = np.einsum("pb,qa->pqba", V1, V1).reshape(-1, (self.degree + 1) ** 2)
        Gx = sx * np.einsum("pb,qa->pqba", V1, D1).reshape(V.shape)
        Gy = sy * np.einsum("pb,qa->pqba", D1, V1).reshape(V.shape)
        return V, Gx, Gy

    def cell_values(self, u, table_V):
        """Per-cell values at reference points: (n_cells, nq)."""
        return np.einsum("cl,ql->cq", u[self.cells], table_V)

    def side_quadrature(self, side, n_qp):
        """Edge-cell quadrature structure for boundary integrals.

        Returns dict with per-edge-cell arrays: 'nodes' (n_ec, degree+1)
        global node indices, 'V' (n_qp, degree+1) 1D basis table,
        'x','y' (n_ec, n_qp) physical quadrature coords, 'w' weights * jac,
        'normal' outward unit normal.
        """
        key = (side, n_qp)
        if key in self._side_cache:
            return self._side_cache[key]
        m, k = self.mesh, self.degree
        q1, w1 = gauss_legendre_rule(n_qp)
        V1, _ = lagrange_table(self.ref.points, q1)
        g = self.node_grid()
        if side in ("bottom", "top"):
            row = g[0, :] if side == "bottom" else g[-1, :]
            nodes = row[np.arange(m.nx)[:, None] * k + np.arange(k + 1)[None, :]]
            xq = m.x_min + m.hx * (np.arange(m.nx)[:, None] + (q1[None, :] + 1) / 2)
            yq = np.full_like(xq, m.y_min if side == "bottom" else m.y_max)
            jac, normal = m.hx / 2.0, (0.0, -1.0) if side == "bottom" else (0.0, 1.0)
        else:
            col = g[:, 0] if side == "left" else g[:, -1]
            nodes = col[np.arange(m.ny)[:, None] * k + np.arange(k + 1)[None, :]]
            yq = m.y_min + m.hy * (np.arange(m.ny)[:, None] + (q1[None, :] + 1) / 2)
            xq = np.full_like(yq, m.x_min if side == "left" else m.x_max)
            jac, normal = m.hy / 2.0, (-1.0, 0.0) if side == "left" else (1.0, 0.0)
        out = {"nodes": nodes, "V": V1, "x": xq, "y": yq,
               "w": jac * w1, "normal": normal}
        self._side_cache[key] = out
        return out


def lumped_inner(space: ScalarSpace, u, v):
    """Mass-lumped semi-inner product sum_i w_i u_i v_i."""
    u, v = _check_fields(space, u, v)
    return float(np.dot(space.lumped_weights, u * v))


def lumped_norm(space: ScalarSpace, u):
    return np.sqrt(max(lumped_inner(space, u, u), 0.0))


def discrete_l1_norm(space: ScalarSpace, u):
    """Lumped L1 norm sum_i w_i |u_i|."""
    (u,) = _check_fields(space, u)
    return float(np.dot(space.lumped_weights, np.abs(u)))


def _check_fields(space, *fields):
    out = []
    for f in fields:
        f = np.asarray(f, dtype=float)
        if f.shape != (space.n_dofs,):
            raise ValueError(
                f"field of shape {f.shape} does not match space with "
                f"{space.n_dofs} dofs")
        out.append(f)
    return out


class PressureSpace(ScalarSpace):
    """Continuous Q_{degree-1} space with the zero-mean constraint handle."""

    def __init__(self, mesh: GridMesh):
        if mesh.degree < 2:
            raise ValueError("Taylor-Hood pressure needs mesh degree >= 2")
        super().__init__(mesh, degree=mesh.degree - 1)
        # integral of each basis function; exact since the lumped rule
        # integrates the degree-(k-1) basis exactly
        self.mean_vector = self.lumped_weights.copy()

    def remove_mean(self, q):
        (q,) = _check_fields(self, q)
        return q - np.dot(self.mean_vector, q) / self.mesh.area


class VelocitySpace:
    """Vector Q_k space with per-side, per-component Dirichlet masks.

    bc maps side -> one of
      'noslip'            both components pinned to zero
      'slip'              normal component pinned to zero, tangential free
      ('velocity', g)     both components pinned to g(x, y, t) -> (gx, gy)
      'open'              no constraint
    """

    def __init__(self, mesh: GridMesh, bc=None):
        self.space = ScalarSpace(mesh)
        self.bc = dict(bc or {s: "noslip" for s in SIDES})
        for s in SIDES:
            self.bc.setdefault(s, "noslip")
        n = self.space.n_dofs
        fixed_x = np.zeros(n, dtype=bool)
        fixed_y = np.zeros(n, dtype=bool)
        for s in SIDES:
            spec = self.bc[s]
            idx = self.space.side_nodes(s)
            if spec == "open":
                continue
            if spec == "slip":
                if s in ("left", "right"):
                    fixed_x[idx] = True
                else:
                    fixed_y[idx] = True
            else:  # noslip or prescribed velocity: pin both components
                fixed_x[idx] = True
                fixed_y[idx] = True
        self.fixed_x, self.fixed_y = fixed_x, fixed_y
        self.free_x = np.nonzero(~fixed_x)[0]
        self.free_y = np.nonzero(~fixed_y)[0]
        self.n_free = self.free_x.size + self.free_y.size

    @property
    def n_dofs(self):
        return 2 * self.space.n_dofs

    def bc_values(self, t=0.0):
        """Full-length component arrays holding Dirichlet data (zeros elsewhere)."""
        sp = self.space
        gx = np.zeros(sp.n_dofs)
        gy = np.zeros(sp.n_dofs)
        x, y = sp.coords[:, 0], sp.coords[:, 1]
        for s in SIDES:
            spec = self.bc[s]
            if isinstance(spec, tuple) and spec[0] == "velocity":
                idx = sp.side_nodes(s)
                vx, vy = spec[1](x[idx], y[idx], t)
                gx[idx] = vx
                gy[idx] = vy
        # noslip/slip sides overwrite (corner nodes: pinning to zero wins)
        for s in SIDES:
            spec = self.bc[s]
            idx = sp.side_nodes(s)
            if spec == "noslip":
                gx[idx] = 0.0
                gy[idx] = 0.0
            elif spec == "slip":
                if s in ("left", "right"):
                    gx[idx] = 0.0
                else:
                    gy[idx] = 0.0
        return gx, gy

    def apply_bc(self, ux, uy, t=0.0):
        """Overwrite constrained entries with the Dirichlet data at time t."""
        gx, gy = self.bc_values(t)
        ux = ux.copy()
        uy = uy.copy()
        ux[self.fixed_x] = gx[self.fixed_x]
        uy[self.fixed_y] = gy[self.fixed_y]
        return ux, uy

    def time_dependent(self):
        return any(isinstance(self.bc[s], tuple) for s in SIDES)

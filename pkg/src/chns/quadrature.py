"""1D quadrature rules and Lagrange basis tables on [-1, 1]."""

import numpy as np
from dataclasses import dataclass
from numpy.polynomial import legendre as npleg


@dataclass(frozen=True)
class GaussLobattoRule:
    """Gauss-Lobatto rule: endpoints included, exact for degree <= 2n-3."""

    points: np.ndarray
    weights: np.ndarray

    @property
    def n(self):
        return self.points.size


def gauss_lobatto_rule(n_points: int) -> GaussLobattoRule:
    """Gauss-Lobatto points/weights on [-1, 1].

    Interior points are the roots of P'_{n-1}, found by Newton iteration
    from Chebyshev-Gauss-Lobatto initial guesses (tolerance 1e-15).
    """
    if n_points < 2:
        raise ValueError(f"Gauss-Lobatto rule needs >= 2 points, got {n_points}")
    n = n_points
    m = n - 1  # polynomial degree of P_{n-1}
    x = np.cos(np.pi * np.arange(n) / m)[::-1].copy()  # CGL initial guess
    # coefficient vectors for P_{n-1} and its derivatives
    c = np.zeros(n)
    c[m] = 1.0
    dc = npleg.legder(c)
    ddc = npleg.legder(dc)
    for _ in range(100):
        interior = x[1:-1]
        f = npleg.legval(interior, dc)
        df = npleg.legval(interior, ddc)
        dx = f / df
        interior -= dx
        if np.max(np.abs(dx)) < 1e-15:
            break
    x[0], x[-1] = -1.0, 1.0
    w = 2.0 / (m * n * npleg.legval(x, c) ** 2)
    return GaussLobattoRule(points=x, weights=w)


def gauss_legendre_rule(n_points: int):
    """Gauss-Legendre points/weights on [-1, 1] (exact for degree <= 2n-1)."""
    if n_points < 1:
        raise ValueError("need at least one Gauss point")
    x, w = npleg.leggauss(n_points)
    return x, w


def lagrange_table(nodes, pts):
    """Values and derivatives of the nodal Lagrange basis.

    Returns (V, D) of shape (len(pts), len(nodes)) with V[p, j] = chi_j(pts[p])
    and D[p, j] = chi_j'(pts[p]).  Coefficient representation is adequate for
    the small degrees used here (k <= 5 on well-spaced Gauss-Lobatto nodes).
    """
    nodes = np.asarray(nodes, dtype=float)
    pts = np.atleast_1d(np.asarray(pts, dtype=float))
    n = nodes.size
    V = np.empty((pts.size, n))
    D = np.empty((pts.size, n))
    for j in range(n):
        others = np.delete(nodes, j)
        denom = np.prod(nodes[j] - others)
        coeffs = np.polynomial.polynomial.polyfromroots(others) / denom
        V[:, j] = np.polynomial.polynomial.polyval(pts, coeffs)
        D[:, j] = np.polynomial.polynomial.polyval(
            pts, np.polynomial.polynomial.polyder(coeffs))
    return V, D

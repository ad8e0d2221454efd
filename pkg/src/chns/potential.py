"""Pointwise material laws: logarithmic mixing potential, convex-concave
splitting, secant slope, truncation/regularization, mobility, viscosity,
buoyancy.  All functions are pure and broadcast over numpy arrays.
"""

import numpy as np
from dataclasses import dataclass
from typing import Callable, Optional, Union


def _check_open_interval(phi, name="phi"):
    if np.any(np.abs(phi) >= 1.0):
        bad = float(np.max(np.abs(phi)))
        raise ValueError(
            f"{name} must lie strictly inside (-1, 1); max |{name}| = {bad}"
            " (loss of bound preservation)")


def convex_part(phi):
    """Convex mixing energy (1/2)[(1+phi)ln(1+phi) + (1-phi)ln(1-phi)].

    Finite on [-1, 1]; evaluated with log1p for accuracy near the endpoints.
    """
    phi = np.asarray(phi, dtype=float)
    with np.errstate(invalid="ignore"):
        a = np.where(phi > -1.0, (1.0 + phi) * np.log1p(phi), 0.0)
        b = np.where(phi < 1.0, (1.0 - phi) * np.log1p(-phi), 0.0)
    return 0.5 * (a + b)


def convex_part_deriv(phi):
    """Singular part of the chemical force, (1/2)ln((1+phi)/(1-phi))."""
    phi = np.asarray(phi, dtype=float)
    _check_open_interval(phi)
    return 0.5 * (np.log1p(phi) - np.log1p(-phi))


def convex_part_deriv2(phi):
    """Second derivative of the convex energy, 1/(1-phi^2)."""
    phi = np.asarray(phi, dtype=float)
    _check_open_interval(phi)
    return 1.0 / ((1.0 - phi) * (1.0 + phi))


def concave_part_deriv(phi, theta_c):
    """Linear concave force -theta_c * phi (defined for all phi)."""
    return -theta_c * np.asarray(phi, dtype=float)


def mixing_energy(phi, theta_c):
    """Full free energy density: convex logarithmic part minus (theta_c/2) phi^2."""
    phi = np.asarray(phi, dtype=float)
    _check_open_interval(phi)
    return convex_part(phi) - 0.5 * theta_c * phi * phi


def clamp(x):
    """Truncate to [-1, 1]: identity inside, +-1 outside."""
    return np.clip(x, -1.0, 1.0)


def convex_deriv_regularized(phi, n_reg):
    """Linear extension of the singular force beyond |s| = 1 - 1/n_reg.

    Globally defined, C^1 and increasing; coincides with the unmodified
    force on |phi| <= 1 - 1/n_reg.
    """
    if n_reg <= 2:
        raise ValueError("regularization parameter must exceed 2")
    phi = np.asarray(phi, dtype=float)
    s0 = 1.0 - 1.0 / n_reg
    f0 = 0.5 * (np.log1p(s0) - np.log1p(-s0))
    df0 = 1.0 / (1.0 - s0 * s0)
    inner = np.clip(phi, -s0, s0)
    core = 0.5 * (np.log1p(inner) - np.log1p(-inner))
    upper = phi > s0
    lower = phi < -s0
    out = np.where(upper, f0 + df0 * (phi - s0), core)
    out = np.where(lower, -f0 + df0 * (phi + s0), out)
    return out


def convex_part_regularized(phi, n_reg):
    """Primitive of the regularized force with value 0 at phi = 0."""
    if n_reg <= 2:
        raise ValueError("regularization parameter must exceed 2")
    phi = np.asarray(phi, dtype=float)
    s0 = 1.0 - 1.0 / n_reg
    f0 = 0.5 * (np.log1p(s0) - np.log1p(-s0))
    df0 = 1.0 / (1.0 - s0 * s0)
    F0 = convex_part(s0)
    inner = np.clip(phi, -s0, s0)
    core = convex_part(inner)
    d = np.abs(phi) - s0
    tail = F0 + f0 * d + 0.5 * df0 * d * d
    return np.where(np.abs(phi) > s0, tail, core)


def secant_slope(a, b, tau=1e-7):
    """Difference quotient of the convex energy, (Fv(a)-Fv(b))/(a-b).

    Below the switch threshold tau the removable singularity is replaced by
    the midpoint force, which matches the quotient to O((a-b)^2).  Symmetric
    in (a, b).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_open_interval(a, "a")
    _check_open_interval(b, "b")
    d = a - b
    near = np.abs(d) <= tau
    safe_d = np.where(near, 1.0, d)
    quotient = (convex_part(a) - convex_part(b)) / safe_d
    mid = convex_part_deriv(0.5 * (a + b))
    return np.where(near, mid, quotient)


def secant_slope_deriv(a, b, tau=1e-7):
    """Derivative of secant_slope with respect to its first argument."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    _check_open_interval(a, "a")
    _check_open_interval(b, "b")
    d = a - b
    near = np.abs(d) <= tau
    safe_d = np.where(near, 1.0, d)
    quot = (convex_part_deriv(a) * safe_d - (convex_part(a) - convex_part(b))) \
        / (safe_d * safe_d)
    mid = 0.5 * convex_part_deriv2(0.5 * (a + b))
    return np.where(near, mid, quot)


def blended_viscosity(phi, ratio):
    """Arithmetic blend (1-phi)/2 + (1+phi)/2 * ratio of the two fluids."""
    phi = np.asarray(phi, dtype=float)
    return 0.5 * (1.0 - phi) + 0.5 * (1.0 + phi) * ratio


@dataclass
class PhysParams:
    """Physical parameters of a run.

    mobility/viscosity may be constants or callables of (clamped) phi.
    Viscosity given as a float means a constant law; `viscosity_ratio`
    selects the two-fluid blend instead.  Buoyancy is enabled by setting
    (rho_heavy, rho_light, gravity); the vertical body force is
    -gravity * phi * (rho_heavy - rho_light).
    """

    epsilon: float = 1.0
    peclet: float = 1.0
    reynolds: float = 1.0
    weber: float = 1.0            # modified Weber number We*
    theta_c: float = 2.0
    mobility: Union[float, Callable] = 1.0
    viscosity: Optional[Union[float, Callable]] = None
    viscosity_ratio: float = 1.0
    surface_tension_on: bool = True
    rho_heavy: float = 1.0
    rho_light: float = 1.0
    gravity: float = 0.0

    def __post_init__(self):
        if self.theta_c <= 1.0:
            raise ValueError(f"theta_c must exceed 1, got {self.theta_c}")
        if self.epsilon <= 0 or self.peclet <= 0 or self.reynolds <= 0:
            raise ValueError("epsilon, Peclet and Reynolds numbers must be positive")
        if self.surface_tension_on and self.weber <= 0:
            raise ValueError("Weber number must be positive")

    def mobility_at(self, phi):
        """Mobility law at (already clamped) phi, divided by the Peclet number.

        The Peclet scaling keeps the discrete transport equation consistent
        with the continuous model; see the decisions ledger.
        """
        m = self.mobility(phi) if callable(self.mobility) else \
            self.mobility * np.ones_like(np.asarray(phi, dtype=float))
        return m / self.peclet

    def viscosity_at(self, phi):
        """Viscosity law at (already clamped) phi."""
        if callable(self.viscosity):
            return self.viscosity(phi)
        if self.viscosity is not None:
            return self.viscosity * np.ones_like(np.asarray(phi, dtype=float))
        return blended_viscosity(phi, self.viscosity_ratio)

    @property
    def coupling(self):
        """Capillary force coefficient 1/(epsilon * We*); 0 with tension off."""
        if not self.surface_tension_on:
            return 0.0
        return 1.0 / (self.epsilon * self.weber)

    @property
    def buoyancy_coeff(self):
        """Coefficient of phi in the vertical body force."""
        return -self.gravity * (self.rho_heavy - self.rho_light)

    def buoyancy(self, phi):
        """Vertical buoyancy source; zero when the densities match."""
        return self.buoyancy_coeff * np.asarray(phi, dtype=float)

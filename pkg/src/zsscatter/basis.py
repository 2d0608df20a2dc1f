"""Jost solutions of the Schroedinger equation with potential q1 at rho = i/2.

This is the single ODE solve the whole method rests on: e and g with their
derivatives, plus the companion solutions eta and xi fixing the Wronskians
W[e, eta] = 1 and W[g, xi] = -1.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BasisDegenerate
from .numerics import UniformGrid, integrate_linear_ode2
from .potentials import SampledPotential

__all__ = ["JostBasis", "compute_basis"]


@dataclass(frozen=True)
class JostBasis:
    grid: UniformGrid
    e: np.ndarray
    e_prime: np.ndarray
    g: np.ndarray
    g_prime: np.ndarray
    eta: np.ndarray
    eta_prime: np.ndarray
    xi: np.ndarray
    xi_prime: np.ndarray


def _two_sided(grid, Q, center, value, slope):
    wl, wpl = integrate_linear_ode2(grid, Q, 0.0, center, value, slope, -1)
    wr, wpr = integrate_linear_ode2(grid, Q, 0.0, center, value, slope, +1)
    w = np.concatenate([wl[:center], wr[center:]])
    wp = np.concatenate([wpl[:center], wpr[center:]])
    return w, wp


def compute_basis(p: SampledPotential) -> JostBasis:
    """Compute e(i/2,.), g(i/2,.), eta, xi and derivatives on the grid.

    e and g are obtained through the substitutions w = e*exp(x/2) and
    w = g*exp(-x/2), which turn the boundary normalizations into plain
    initial conditions w = 1, w' = 0 at the respective grid ends.  eta and
    xi are grown from x = 0 with the initial slopes 1/e(0) and -1/g(0),
    which reproduces the standard reduction-of-order solutions without
    dividing by e^2 or g^2 anywhere.
    """
    grid = p.grid
    x = grid.nodes
    exp_half = np.exp(x / 2.0)

    # e: w'' - w' = q1 w, leftward sweep from x = +a
    w, wp = integrate_linear_ode2(grid, p.q1, -1.0, grid.n_points - 1, 1.0, 0.0, -1)
    e = w / exp_half
    e_prime = (wp - 0.5 * w) / exp_half

    # g: w'' + w' = q1 w, rightward sweep from x = -a
    w, wp = integrate_linear_ode2(grid, p.q1, +1.0, 0, 1.0, 0.0, +1)
    g = w * exp_half
    g_prime = (wp + 0.5 * w) * exp_half

    mid = grid.center_index
    if abs(e[mid]) < 1e-10 or abs(g[mid]) < 1e-10:
        raise BasisDegenerate("e(i/2,0) or g(i/2,0) is numerically zero")

    Q_eff = p.q1 + 0.25  # eta'' = (q1 + 1/4) eta, and likewise xi
    eta, eta_prime = _two_sided(grid, Q_eff, mid, 0.0, 1.0 / e[mid])
    xi, xi_prime = _two_sided(grid, Q_eff, mid, 0.0, -1.0 / g[mid])

    return JostBasis(
        grid=grid,
        e=e,
        e_prime=e_prime,
        g=g,
        g_prime=g_prime,
        eta=eta,
        eta_prime=eta_prime,
        xi=xi,
        xi_prime=xi_prime,
    )

"""Moebius map of the spectral parameter and series evaluation of Jost pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffs import CoefficientTable, tail_estimate
from .errors import PoleAtMinusOne

__all__ = [
    "SpectralPoint",
    "JostPair",
    "z_of_rho",
    "rho_of_z",
    "series_sum",
    "eval_jost",
    "remainder_bound",
]


def z_of_rho(rho: complex) -> complex:
    """z = (1/2 + i rho)/(1/2 - i rho); upper half-plane -> closed unit disk."""
    return (0.5 + 1j * rho) / (0.5 - 1j * rho)


def rho_of_z(z: complex) -> complex:
    """Inverse map rho = i(1 - z)/(2(1 + z)); the pole z = -1 is rejected."""
    if z == -1:
        raise PoleAtMinusOne("z = -1 corresponds to rho at infinity")
    return 1j * (1.0 - z) / (2.0 * (1.0 + z))


@dataclass(frozen=True)
class SpectralPoint:
    rho: complex
    z: complex

    @classmethod
    def from_rho(cls, rho: complex) -> "SpectralPoint":
        return cls(rho=complex(rho), z=z_of_rho(complex(rho)))


@dataclass(frozen=True)
class JostPair:
    phi1: complex
    phi2: complex
    psi1: complex
    psi2: complex


def series_sum(coeffs: np.ndarray, z, N: int):
    """Horner evaluation of sum_{n=0}^{N} (-1)^n z^n coeffs[n].

    ``z`` may be a scalar or an array; coeffs is a real or complex vector
    indexed by n.
    """
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for n in range(N, -1, -1):
        acc = acc * (-z) + coeffs[n]
    return acc


def eval_jost(
    sp: SpectralPoint, x_index: int, table: CoefficientTable, N: int
) -> JostPair:
    """Truncated series values of both Jost solutions at one (rho, x)."""
    if N > table.N_max:
        raise ValueError("N exceeds the available coefficient order")
    z = sp.z
    x = table.grid.nodes[x_index]
    b_re = table.b[: N + 1, x_index].real
    b_im = table.b[: N + 1, x_index].imag
    a_re = table.a[: N + 1, x_index].real
    a_im = table.a[: N + 1, x_index].imag
    em = np.exp(-1j * sp.rho * x)
    ep = np.exp(1j * sp.rho * x)
    zp1 = z + 1.0
    phi1 = em * (1.0 + zp1 * series_sum(b_re, z, N))
    phi2 = em * zp1 * series_sum(b_im, z, N)
    psi1 = -ep * zp1 * series_sum(a_im, z, N)
    psi2 = ep * (1.0 + zp1 * series_sum(a_re, z, N))
    return JostPair(phi1=complex(phi1), phi2=complex(phi2), psi1=complex(psi1), psi2=complex(psi2))


def remainder_bound(
    sp: SpectralPoint, x_index: int, table: CoefficientTable, N: int
) -> float:
    """Truncation error bar eps_N(x) e^{-Im rho x} / sqrt(2 Im rho), Im rho > 0."""
    im = sp.rho.imag
    if im <= 0:
        raise ValueError("remainder bound requires Im rho > 0")
    eps = tail_estimate(table, N, x_index)
    x = table.grid.nodes[x_index]
    return eps * math.exp(-im * x) / math.sqrt(2.0 * im)

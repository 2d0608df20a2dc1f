"""Direct scattering: coefficients a(rho), b(rho), eigenvalues, norming constants."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field

import numpy as np

from .basis import compute_basis
from .coeffs import (
    DEFAULT_N_MAX,
    CoefficientTable,
    compute_coefficients,
    select_truncation_direct,
)
from .errors import (
    DegenerateNormalization,
    DegreeZero,
    DivisionNearZero,
    UnstableSpectrum,
)
from .jost import series_sum, z_of_rho, rho_of_z
from .numerics import midpoint_values, polynomial_roots
from .potentials import SampledPotential

__all__ = [
    "Eigenvalue",
    "ScatteringData",
    "scattering_coefficients",
    "a_polynomial",
    "find_eigenvalues",
    "norming_constants",
    "oracle_scatter",
    "reflection",
    "transmission",
    "solve_direct",
    "validate_scattering",
    "scattering_to_json",
    "scattering_from_json",
    "write_scattering_csv",
]

DISK_MARGIN = 1e-6
RESIDUAL_TOL = 1e-6
STABILITY_TOL = 1e-4


@dataclass(frozen=True)
class Eigenvalue:
    rho: complex
    z: complex
    residual: float


@dataclass(frozen=True)
class ScatteringData:
    rho_grid: np.ndarray
    a_values: np.ndarray
    b_values: np.ndarray
    eigenvalues: tuple[Eigenvalue, ...]
    norming_constants: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def M(self) -> int:
        return len(self.eigenvalues)


def _center_coeffs(table: CoefficientTable, N: int):
    mid = table.grid.center_index
    b = table.b[: N + 1, mid]
    a = table.a[: N + 1, mid]
    return b.real.copy(), b.imag.copy(), a.real.copy(), a.imag.copy()


def _factors(table: CoefficientTable, N: int, z):
    """P_b, S_b, P_a, S_a evaluated at z (scalar or array)."""
    rb, ib, ra, ia = _center_coeffs(table, N)
    zp1 = z + 1.0
    Pb = 1.0 + zp1 * series_sum(rb, z, N)
    Sb = series_sum(ib, z, N)
    Pa = 1.0 + zp1 * series_sum(ra, z, N)
    Sa = series_sum(ia, z, N)
    return Pb, Sb, Pa, Sa


def eval_a(table: CoefficientTable, N: int, z):
    """a(rho) through the factor form, valid for |z| <= 1."""
    Pb, Sb, Pa, Sa = _factors(table, N, z)
    # cross term enters with +: a = phi1*psi2 - phi2*psi1 and psi1 carries
    # a leading minus sign
    return Pb * Pa + (z + 1.0) ** 2 * Sb * Sa


def scattering_coefficients(table: CoefficientTable, N: int, rho_grid: np.ndarray):
    """a(rho) and b(rho) on a real rho grid.

    Conjugate factors are evaluated directly at conj(z) rather than through
    the circle identity conj(z) = 1/z.
    """
    rho = np.asarray(rho_grid, dtype=float)
    z = z_of_rho(rho.astype(complex))
    zb = np.conj(z)
    Pb, Sb, _, _ = _factors(table, N, z)
    _, _, Pa_c, Sa_c = _factors(table, N, zb)
    a_vals = eval_a(table, N, z)
    b_vals = Pa_c * (z + 1.0) * Sb - (zb + 1.0) * Sa_c * Pb
    return a_vals, b_vals


def _series_poly(coeffs: np.ndarray, N: int) -> np.ndarray:
    """Polynomial (ascending) of sum_{n<=N} (-1)^n c_n z^n."""
    out = coeffs[: N + 1].astype(float).copy()
    out[1::2] *= -1.0
    return out


def _affine_poly(s: np.ndarray) -> np.ndarray:
    """Polynomial of 1 + (z+1)*S(z) given the polynomial s of S."""
    out = np.zeros(s.size + 1)
    out[: s.size] += s
    out[1:] += s
    out[0] += 1.0
    return out


def a_polynomial(table: CoefficientTable, N: int) -> np.ndarray:
    """Ascending coefficients of the truncated a(rho) as a polynomial in z."""
    rb, ib, ra, ia = _center_coeffs(table, N)
    Pb = _affine_poly(_series_poly(rb, N))
    Pa = _affine_poly(_series_poly(ra, N))
    Sb = _series_poly(ib, N)
    Sa = _series_poly(ia, N)
    first = np.convolve(Pb, Pa)
    second = np.convolve(np.convolve([1.0, 2.0, 1.0], Sb), Sa)
    out = np.zeros(max(first.size, second.size))
    out[: first.size] += first
    out[: second.size] += second
    return out


def _polyval(coeffs: np.ndarray, z):
    acc = np.zeros_like(np.asarray(z, dtype=complex))
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _in_disk_roots(poly: np.ndarray, delta: float) -> np.ndarray:
    try:
        roots = polynomial_roots(poly)
    except DegreeZero:
        # a constant a(z) (e.g. the zero potential) has no zeros at all
        return np.zeros(0, dtype=complex)
    return roots[np.abs(roots) < 1.0 - delta]


def find_eigenvalues(
    poly: np.ndarray,
    table: CoefficientTable,
    N: int,
    delta: float = DISK_MARGIN,
) -> tuple[Eigenvalue, ...]:
    """Roots of the a-polynomial inside the unit disk mapped back to rho.

    Candidates must (i) lie at least ``delta`` inside the circle, (ii) map to
    Im rho > 0, (iii) have a small polynomial residual, and (iv) persist when
    the polynomial is rebuilt with N-5 terms.  Truncation noise concentrates
    near |z| = 1, and the persistence filter is what rejects it.
    """
    candidates = _in_disk_roots(poly, delta)
    scale = float(np.max(np.abs(poly)))
    kept = []
    rejected_unstable = 0
    ref_roots = None
    if N >= 6:
        ref_roots = _in_disk_roots(a_polynomial(table, N - 5), delta)
    for z in candidates:
        rho = rho_of_z(z)
        if rho.imag <= 0:
            continue
        residual = abs(_polyval(poly, z))
        if residual > RESIDUAL_TOL * scale:
            continue
        if ref_roots is not None:
            if ref_roots.size == 0 or np.min(np.abs(ref_roots - z)) > STABILITY_TOL:
                rejected_unstable += 1
                continue
        kept.append(Eigenvalue(rho=complex(rho), z=complex(z), residual=residual))
    n_upper = sum(1 for z in candidates if rho_of_z(z).imag > 0)
    if n_upper > 0 and rejected_unstable > n_upper / 2:
        raise UnstableSpectrum(
            f"{rejected_unstable} of {n_upper} in-disk roots failed the "
            "persistence filter; increase the truncation order"
        )
    kept.sort(key=lambda ev: (round(ev.rho.real, 9), ev.rho.imag))
    return tuple(kept)


def norming_constants(
    table: CoefficientTable, N: int, eigenvalues: tuple[Eigenvalue, ...]
) -> np.ndarray:
    """c(rho_m) = phi1/psi1 at x = 0, falling back to phi2/psi2 if needed."""
    out = np.empty(len(eigenvalues), dtype=complex)
    for m, ev in enumerate(eigenvalues):
        z = ev.z
        Pb, Sb, Pa, Sa = _factors(table, N, z)
        den1 = (z + 1.0) * Sa
        if abs(den1) >= 1e-10:
            out[m] = -Pb / den1
        elif abs(Pa) >= 1e-10:
            out[m] = (z + 1.0) * Sb / Pa
        else:
            raise DegenerateNormalization(
                f"both norming-constant denominators vanish at rho = {ev.rho}"
            )
    return out


def oracle_scatter(p: SampledPotential, rho_grid: np.ndarray):
    """Reference a(rho), b(rho) by direct integration of the first-order system.

    Starts from the left plane-wave state at x = -a and reads the connection
    coefficients off the state at x = +a.  Fully independent of the series
    machinery; used for cross-validation only.
    """
    grid = p.grid
    rho = np.asarray(rho_grid, dtype=float)
    h = grid.step
    q = p.q
    qh = midpoint_values(grid, q)
    irho = 1j * rho
    # envelope variables m1 = n1 e^{i rho x}, m2 = n2 e^{-i rho x} absorb the
    # free oscillation, so the step error is proportional to |q| and q = 0 is
    # integrated exactly
    m1 = np.ones_like(irho, dtype=complex)
    m2 = np.zeros_like(m1)
    x_nodes = grid.nodes
    x_mid = 0.5 * (x_nodes[:-1] + x_nodes[1:])

    def rhs(qv, x, u1, u2):
        osc = np.exp(2.0 * irho * x)
        return qv * u2 * osc, -qv * u1 / osc

    for j in range(grid.n_points - 1):
        x0 = x_nodes[j]
        xm = x_mid[j]
        x1 = x_nodes[j + 1]
        q0 = q[j]
        qm = qh[j]
        q1v = q[j + 1]
        k1a, k1b = rhs(q0, x0, m1, m2)
        k2a, k2b = rhs(qm, xm, m1 + 0.5 * h * k1a, m2 + 0.5 * h * k1b)
        k3a, k3b = rhs(qm, xm, m1 + 0.5 * h * k2a, m2 + 0.5 * h * k2b)
        k4a, k4b = rhs(q1v, x1, m1 + h * k3a, m2 + h * k3b)
        m1 = m1 + (h / 6.0) * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
        m2 = m2 + (h / 6.0) * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
    return m1, m2


def reflection(sd: ScatteringData) -> np.ndarray:
    if np.min(np.abs(sd.a_values)) < 1e-12:
        raise DivisionNearZero("|a(rho)| below 1e-12 on the grid")
    return sd.b_values / sd.a_values


def transmission(sd: ScatteringData) -> np.ndarray:
    if np.min(np.abs(sd.a_values)) < 1e-12:
        raise DivisionNearZero("|a(rho)| below 1e-12 on the grid")
    return 1.0 / sd.a_values


def solve_direct(
    p: SampledPotential,
    rho_max: float = 30.0,
    rho_count: int = 4000,
    n_terms: int | None = None,
    N_max: int = DEFAULT_N_MAX,
) -> ScatteringData:
    """Full direct-problem pipeline for a sampled potential."""
    basis = compute_basis(p)
    table = compute_coefficients(basis, p, N_max)
    if n_terms is None:
        report = select_truncation_direct(table, p)
        N = report.chosen_N
    else:
        report = None
        N = int(n_terms)
        if N > N_max:
            raise ValueError("n_terms exceeds N_max")
    rho_grid = np.linspace(-rho_max, rho_max, rho_count)
    a_vals, b_vals = scattering_coefficients(table, N, rho_grid)
    poly = a_polynomial(table, N)
    eigenvalues = find_eigenvalues(poly, table, N)
    norming = norming_constants(table, N, eigenvalues)
    meta = {
        "n_terms": N,
        "n_max": N_max,
        "grid_points": p.grid.n_points,
        "half_width": p.grid.half_width,
        "potential_desc": p.description,
        "root_filters": {
            "disk_margin": DISK_MARGIN,
            "residual_tol": RESIDUAL_TOL,
            "stability_tol": STABILITY_TOL,
        },
    }
    if report is not None:
        meta["truncation"] = {"N_L": report.N_L, "N_R": report.N_R}
    sd = ScatteringData(
        rho_grid=rho_grid,
        a_values=a_vals,
        b_values=b_vals,
        eigenvalues=eigenvalues,
        norming_constants=norming,
        meta=meta,
    )
    sd.meta["table"] = table  # kept for downstream diagnostics, not serialized
    return sd


def validate_scattering(sd: ScatteringData) -> dict:
    """Unitarity, parity and pairing defects of a scattering-data set."""
    unitarity = float(
        np.max(np.abs(np.abs(sd.a_values) ** 2 + np.abs(sd.b_values) ** 2 - 1.0))
    )
    b_parity = float(np.max(np.abs(sd.b_values[::-1] - np.conj(sd.b_values))))
    a_parity = float(np.max(np.abs(sd.a_values[::-1] - np.conj(sd.a_values))))
    rhos = np.array([ev.rho for ev in sd.eigenvalues])
    if rhos.size:
        pairing = float(
            max(np.min(np.abs(rhos + np.conj(r))) for r in rhos)
        )
        norm_pair = 0.0
        for m, r in enumerate(rhos):
            partner = int(np.argmin(np.abs(rhos + np.conj(r))))
            norm_pair = max(
                norm_pair,
                abs(sd.norming_constants[partner] - np.conj(sd.norming_constants[m])),
            )
    else:
        pairing = 0.0
        norm_pair = 0.0
    return {
        "unitarity_defect": unitarity,
        "a_parity_defect": a_parity,
        "b_parity_defect": b_parity,
        "eigenvalue_pairing_defect": pairing,
        "norming_symmetry_defect": float(norm_pair),
    }


def scattering_to_json(sd: ScatteringData) -> str:
    payload = {
        "rho": [float(v) for v in sd.rho_grid],
        "a_re": [float(v) for v in sd.a_values.real],
        "a_im": [float(v) for v in sd.a_values.imag],
        "b_re": [float(v) for v in sd.b_values.real],
        "b_im": [float(v) for v in sd.b_values.imag],
        "eigenvalues": [
            {"re": float(ev.rho.real), "im": float(ev.rho.imag)} for ev in sd.eigenvalues
        ],
        "norming": [
            {"re": float(c.real), "im": float(c.imag)} for c in sd.norming_constants
        ],
        "n_terms": int(sd.meta.get("n_terms", 0)),
        "potential_desc": str(sd.meta.get("potential_desc", "")),
    }
    return json.dumps(payload, indent=2)


def scattering_from_json(text: str) -> ScatteringData:
    payload = json.loads(text)
    rho = np.asarray(payload["rho"], dtype=float)
    a_vals = np.asarray(payload["a_re"], dtype=float) + 1j * np.asarray(
        payload["a_im"], dtype=float
    )
    b_vals = np.asarray(payload["b_re"], dtype=float) + 1j * np.asarray(
        payload["b_im"], dtype=float
    )
    eigenvalues = tuple(
        Eigenvalue(
            rho=complex(ev["re"], ev["im"]),
            z=z_of_rho(complex(ev["re"], ev["im"])),
            residual=0.0,
        )
        for ev in payload["eigenvalues"]
    )
    norming = np.asarray(
        [complex(c["re"], c["im"]) for c in payload["norming"]], dtype=complex
    )
    meta = {
        "n_terms": payload.get("n_terms", 0),
        "potential_desc": payload.get("potential_desc", ""),
    }
    return ScatteringData(
        rho_grid=rho,
        a_values=a_vals,
        b_values=b_vals,
        eigenvalues=eigenvalues,
        norming_constants=norming,
        meta=meta,
    )


def write_scattering_csv(path: str, sd: ScatteringData) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["rho", "re_a", "im_a", "re_b", "im_b"])
        for k, rho in enumerate(sd.rho_grid):
            writer.writerow(
                [
                    repr(float(rho)),
                    repr(float(sd.a_values[k].real)),
                    repr(float(sd.a_values[k].imag)),
                    repr(float(sd.b_values[k].real)),
                    repr(float(sd.b_values[k].imag)),
                ]
            )

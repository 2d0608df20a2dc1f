"""Dense numerical kernels: grid, quadrature, ODE sweeps, roots, least squares.

All routines operate on samples over a :class:`UniformGrid` and are pure
functions; nothing here keeps mutable state between calls.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .errors import DegreeZero, NoConvergence, NonFiniteValue, RankDeficient

__all__ = [
    "UniformGrid",
    "cumulative_integral_from_left",
    "cumulative_integral_from_right",
    "integrate_linear_ode2",
    "polynomial_roots",
    "least_squares_solve",
    "differentiate",
    "midpoint_values",
]


@dataclass(frozen=True)
class UniformGrid:
    """Uniform symmetric grid on [-a, a] with an odd node count.

    The odd count guarantees that x = 0 is exactly a node, which anchors
    the quadratures used by the coefficient recurrences.
    """

    half_width: float
    n_points: int
    nodes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.half_width > 0):
            raise ValueError("half_width must be positive")
        if self.n_points < 3 or self.n_points % 2 == 0:
            raise ValueError("n_points must be odd and >= 3")
        nodes = np.linspace(-self.half_width, self.half_width, self.n_points)
        nodes[self.n_points // 2] = 0.0
        nodes.flags.writeable = False
        object.__setattr__(self, "nodes", nodes)

    @property
    def step(self) -> float:
        return 2.0 * self.half_width / (self.n_points - 1)

    @property
    def center_index(self) -> int:
        return self.n_points // 2

    def require_same(self, f: np.ndarray) -> np.ndarray:
        f = np.asarray(f)
        if f.shape != (self.n_points,):
            raise ValueError(
                f"samples of shape {f.shape} do not match grid with {self.n_points} nodes"
            )
        return f


def _subinterval_integrals(grid: UniformGrid, f: np.ndarray) -> np.ndarray:
    """Integral of f over every subinterval, exact for cubics.

    Each subinterval [x_j, x_{j+1}] is integrated from the cubic through the
    four nearest nodes (one-sided cubics at the two ends).
    """
    f = grid.require_same(f)
    h = grid.step
    n = grid.n_points
    out = np.empty(n - 1, dtype=np.result_type(f.dtype, np.float64))
    # interior: nodes j-1, j, j+1, j+2
    out[1:-1] = (-f[:-3] + 13.0 * f[1:-2] + 13.0 * f[2:-1] - f[3:]) * (h / 24.0)
    out[0] = (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]) * (h / 24.0)
    out[-1] = (f[-4] - 5.0 * f[-3] + 19.0 * f[-2] + 9.0 * f[-1]) * (h / 24.0)
    return out


def cumulative_integral_from_left(grid: UniformGrid, f: np.ndarray) -> np.ndarray:
    """F(x_j) = integral of f from -a to x_j; F at the first node is 0."""
    inc = _subinterval_integrals(grid, f)
    out = np.empty(grid.n_points, dtype=inc.dtype)
    out[0] = 0.0
    np.cumsum(inc, out=out[1:])
    return out


def cumulative_integral_from_right(grid: UniformGrid, f: np.ndarray) -> np.ndarray:
    """F(x_j) = integral of f from x_j to +a; F at the last node is 0."""
    inc = _subinterval_integrals(grid, f)
    out = np.empty(grid.n_points, dtype=inc.dtype)
    out[-1] = 0.0
    out[:-1] = np.cumsum(inc[::-1])[::-1]
    return out


def midpoint_values(grid: UniformGrid, f: np.ndarray) -> np.ndarray:
    """Values of f at subinterval midpoints by cubic interpolation of samples."""
    f = grid.require_same(f)
    out = np.empty(grid.n_points - 1, dtype=np.result_type(f.dtype, np.float64))
    out[1:-1] = (-f[:-3] + 9.0 * f[1:-2] + 9.0 * f[2:-1] - f[3:]) / 16.0
    out[0] = (5.0 * f[0] + 15.0 * f[1] - 5.0 * f[2] + f[3]) / 16.0
    out[-1] = (f[-4] - 5.0 * f[-3] + 15.0 * f[-2] + 5.0 * f[-1]) / 16.0
    return out


_OVERFLOW_GUARD = 1e200


def integrate_linear_ode2(
    grid: UniformGrid,
    Q: np.ndarray,
    drift: float,
    start_index: int,
    start_value: complex,
    start_slope: complex,
    direction: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Solve w'' + drift*w' = Q*w by a classical 4-stage one-step sweep.

    The sweep starts at ``start_index`` and proceeds to the grid end in
    ``direction`` (+1 rightward, -1 leftward).  Q is interpolated at the
    half-steps by cubics through the nearest samples.  Returns (w, w') with
    untouched nodes left at zero; callers doing two-sided sweeps merge them.
    """
    Q = grid.require_same(Q)
    if direction not in (-1, 1):
        raise ValueError("direction must be +1 or -1")
    h = grid.step * direction
    Qh = midpoint_values(grid, Q)
    n = grid.n_points
    w = np.zeros(n, dtype=complex)
    wp = np.zeros(n, dtype=complex)
    u = complex(start_value)
    v = complex(start_slope)
    w[start_index] = u
    wp[start_index] = v
    rng = range(start_index, n - 1) if direction == 1 else range(start_index, 0, -1)
    for j in rng:
        q0 = complex(Q[j])
        qm = complex(Qh[j]) if direction == 1 else complex(Qh[j - 1])
        q1 = complex(Q[j + direction])
        # k = (w', Q w - drift w')
        k1u = v
        k1v = q0 * u - drift * v
        u2 = u + 0.5 * h * k1u
        v2 = v + 0.5 * h * k1v
        k2u = v2
        k2v = qm * u2 - drift * v2
        u3 = u + 0.5 * h * k2u
        v3 = v + 0.5 * h * k2v
        k3u = v3
        k3v = qm * u3 - drift * v3
        u4 = u + h * k3u
        v4 = v + h * k3v
        k4u = v4
        k4v = q1 * u4 - drift * v4
        u = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (abs(u) < _OVERFLOW_GUARD and abs(v) < _OVERFLOW_GUARD):
            raise NonFiniteValue("ODE sweep overflowed or produced NaN")
        w[j + direction] = u
        wp[j + direction] = v
    if not (np.all(np.isfinite(w)) and np.all(np.isfinite(wp))):
        raise NonFiniteValue("ODE sweep produced non-finite samples")
    return w, wp


def _polyval_with_derivative(coeffs: np.ndarray, z: complex) -> tuple[complex, complex]:
    """Horner evaluation of p(z) and p'(z); coeffs in ascending order."""
    p = 0.0 + 0.0j
    dp = 0.0 + 0.0j
    for c in coeffs[::-1]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def polynomial_roots(coeffs) -> np.ndarray:
    """All complex roots of a polynomial with ascending-degree coefficients.

    Roots come from the eigenvalues of the balanced companion matrix (QR
    iteration) and each is polished by two Newton steps on the polynomial.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or c.size == 0:
        raise ValueError("coefficient array must be 1-D and non-empty")
    # strip leading-coefficient zeros (highest degree)
    nz = np.nonzero(np.abs(c) > 0)[0]
    if nz.size == 0 or nz[-1] == 0:
        raise DegreeZero("polynomial is constant")
    c = c[: nz[-1] + 1]
    try:
        roots = np.roots(c[::-1])
    except np.linalg.LinAlgError as exc:  # QR iteration cap exceeded
        raise NoConvergence("companion-matrix QR did not converge") from exc
    polished = np.empty_like(roots)
    with np.errstate(over="ignore", invalid="ignore"):
        for i, r in enumerate(roots):
            for _ in range(2):
                p, dp = _polyval_with_derivative(c, r)
                # Horner overflows for high degrees well outside the unit
                # circle; those roots are left as the QR iteration found them
                if not (np.isfinite(p) and np.isfinite(dp)) or dp == 0:
                    break
                step = p / dp
                if np.isfinite(step) and abs(step) < 1.0:
                    r = r - step
            polished[i] = r
    return polished


def least_squares_solve(
    A: np.ndarray,
    b: np.ndarray,
    rank_tol: float = 1e-12,
    on_deficient: str = "raise",
) -> tuple[np.ndarray, float, float]:
    """Minimize ||Ax - b||_2 by column-pivoted QR.

    Returns (x, residual_norm, condition_estimate), the condition estimate
    being the ratio of extreme diagonal magnitudes of the triangular factor
    over the retained columns.  When a diagonal entry drops below
    ``rank_tol`` relative to the largest one the matrix is numerically rank
    deficient: with ``on_deficient="raise"`` that is an error, with
    ``"truncate"`` the deficient pivot columns are dropped and their
    solution entries set to zero (a basic solution, matching what pivoted
    backslash-style solvers do).
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float)
    if A.ndim != 2 or A.shape[0] < A.shape[1] or A.shape[1] < 1:
        raise ValueError("A must be m x n with m >= n >= 1")
    if on_deficient not in ("raise", "truncate"):
        raise ValueError("on_deficient must be 'raise' or 'truncate'")
    # equilibrate columns so the rank test is invariant to column scaling;
    # this rescales the unknowns, which leaves the minimizer unchanged
    col_scale = np.linalg.norm(A, axis=0)
    col_scale[col_scale == 0.0] = 1.0
    A_s = A / col_scale
    Q, R, perm = scipy.linalg.qr(A_s, mode="economic", pivoting=True)
    diag = np.abs(np.diagonal(R))
    dmax = diag.max()
    rank = int(np.count_nonzero(diag >= rank_tol * dmax)) if dmax > 0 else 0
    if rank < A.shape[1]:
        if on_deficient == "raise" or rank == 0:
            raise RankDeficient("triangular factor has a near-zero diagonal entry")
        # pivoting pushes deficient columns to the back; keep the leading block
        y = scipy.linalg.solve_triangular(R[:rank, :rank], Q[:, :rank].T @ b)
        x = np.zeros(A.shape[1])
        x[perm[:rank]] = y
    else:
        y = scipy.linalg.solve_triangular(R, Q.T @ b)
        x = np.empty_like(y)
        x[perm] = y
    x /= col_scale
    residual = float(np.linalg.norm(A @ x - b))
    return x, residual, float(dmax / diag[:rank].min())


def differentiate(grid: UniformGrid, f: np.ndarray) -> np.ndarray:
    """Fourth-order finite-difference derivative on the grid.

    Central five-point stencil in the interior, one-sided five-point stencils
    at the four boundary nodes.
    """
    f = grid.require_same(f)
    h = grid.step
    out = np.empty_like(f, dtype=np.result_type(f.dtype, np.float64))
    out[2:-2] = (f[:-4] - 8.0 * f[1:-3] + 8.0 * f[3:-1] - f[4:]) / (12.0 * h)
    out[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h)
    out[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h)
    out[-2] = (3.0 * f[-1] + 10.0 * f[-2] - 18.0 * f[-3] + 6.0 * f[-4] - f[-5]) / (12.0 * h)
    out[-1] = (25.0 * f[-1] - 48.0 * f[-2] + 36.0 * f[-3] - 16.0 * f[-4] + 3.0 * f[-5]) / (12.0 * h)
    return out

"""Floating-point spectra of theta-Hermitian adjacency matrices.

Matrices are dense ``complex128`` numpy arrays.  Eigenvalues come from a
cyclic Jacobi iteration with complex 2x2 unitary rotations; no LAPACK call is
involved, which keeps this module an independent check on the exact side.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass

import numpy as np

from mixedspec.errors import ComputationError, ContractError, InputError
from mixedspec.graph import MixedGraph

logger = logging.getLogger(__name__)

OFF_DIAGONAL_TOL = 1e-12
MAX_SWEEPS = 100
RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple[float, ...]
    theta: float | None = None

    def __post_init__(self):
        vals = tuple(float(x) for x in self.eigenvalues)
        if any(b < a for a, b in zip(vals, vals[1:])):
            vals = tuple(sorted(vals))
        object.__setattr__(self, "eigenvalues", vals)

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def to_json(self) -> dict:
        return {
            "theta": None if self.theta is None else float(f"{self.theta:.15g}"),
            "eigenvalues": [float(f"{x:.15g}") for x in self.eigenvalues],
        }


def build_h_theta(g: MixedGraph, theta: float) -> np.ndarray:
    """Dense ``H_theta``: 1 on digons, ``e^{i theta}`` along arcs, conjugate against them."""
    if not 0 < theta <= math.pi:
        logger.warning("theta=%r lies outside (0, pi]; continuing for exploratory use", theta)
    h = np.zeros((g.n, g.n), dtype=complex)
    w = cmath.exp(1j * theta)
    for u, v in g.single_arcs:
        h[u, v] = w
        h[v, u] = w.conjugate()
    for u, v in g.digons:
        h[u, v] = 1.0
        h[v, u] = 1.0
    return h


def _check_hermitian(m: np.ndarray) -> None:
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InputError(f"expected a square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if not np.allclose(m, m.conj().T, atol=1e-12 * scale, rtol=0):
        raise ContractError("matrix is not Hermitian")


def jacobi_eigh(m: np.ndarray, tol: float = OFF_DIAGONAL_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigen-decomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.

    Returns ``(eigenvalues, vectors)`` with eigenvalues ascending and the
    matching unit eigenvectors as columns.  Raises :class:`ComputationError`
    if the off-diagonal Frobenius norm does not drop below
    ``tol * ||m||_F`` within ``max_sweeps`` sweeps.
    """
    a = np.array(m, dtype=complex, copy=True)
    _check_hermitian(a)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 0:
        return np.zeros(0), v
    norm = float(np.linalg.norm(a))
    target = tol * norm
    tiny = 1e-300
    diag_mask = np.eye(n, dtype=bool)

    def off_norm() -> float:
        return float(np.linalg.norm(a[~diag_mask]))

    sweeps = 0
    off = off_norm()
    while off > target:
        if sweeps == max_sweeps:
            raise ComputationError(
                f"Jacobi did not converge in {max_sweeps} sweeps "
                f"(n={n}, off-diagonal norm {off:.3e}, target {target:.3e})"
            )
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                g = abs(apq)
                if g <= tiny:
                    continue
                phase = apq / g
                tau = (a[q, q].real - a[p, p].real) / (2.0 * g)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1.0 + tau * tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                cph = phase.conjugate()

                col_p = a[:, p].copy()
                col_q = a[:, q]
                a[:, p] = c * col_p - s * cph * col_q
                a[:, q] = s * col_p + c * cph * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :]
                a[p, :] = c * row_p - s * phase * row_q
                a[q, :] = s * row_p + c * phase * row_q
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

                vp = v[:, p].copy()
                vq = v[:, q]
                v[:, p] = c * vp - s * cph * vq
                v[:, q] = s * vp + c * cph * vq
        off = off_norm()

    vals = np.diag(a).real
    order = np.argsort(vals, kind="stable")
    return vals[order], v[:, order]


def eigenvalues(m: np.ndarray, theta: float | None = None, check_residual: bool = True) -> Spectrum:
    """Ascending eigenvalues of a Hermitian matrix, verified by residuals."""
    m = np.asarray(m, dtype=complex)
    vals, vecs = jacobi_eigh(m)
    if check_residual and len(vals):
        resid = np.linalg.norm(m @ vecs - vecs * vals, axis=0).max()
        bound = RESIDUAL_TOL * max(1.0, float(np.linalg.norm(m)))
        if resid > bound:
            raise ComputationError(f"eigen-residual {resid:.3e} exceeds {bound:.3e}")
    return Spectrum(tuple(vals.tolist()), theta)


def spectrum(g: MixedGraph, theta: float) -> Spectrum:
    return eigenvalues(build_h_theta(g, theta), theta)


def spectrum_is_symmetric(s: Spectrum, tol: float = 1e-8) -> bool:
    """True iff ``lambda_i + lambda_{n+1-i}`` vanishes within ``tol * (1 + max|lambda|)``."""
    if tol <= 0:
        raise InputError("tolerance must be positive")
    vals = s.eigenvalues
    if not vals:
        return True
    scale = tol * (1.0 + max(abs(vals[0]), abs(vals[-1])))
    n = len(vals)
    return all(abs(vals[i] + vals[n - 1 - i]) <= scale for i in range(n // 2 + 1))


def conjugate_by_diagonal(h: np.ndarray, phases) -> np.ndarray:
    """``D^* H D`` for the diagonal unitary ``D = diag(e^{i phases})``."""
    d = np.exp(1j * np.asarray(phases, dtype=float))
    return (d.conj()[:, None] * h) * d[None, :]

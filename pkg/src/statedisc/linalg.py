"""Dense complex-matrix primitives.

Hermitian eigendecomposition, PSD square roots, triangular factorizations
with a positive-diagonal gauge, and the Uhlmann fidelity / Bures distance.
Tolerances are relative to the Frobenius norm of the input, except
``tol_rank`` which is an absolute bound on pivots and eigenvalues.
"""

import numpy as np

from .errors import InvalidStateError, NotPositiveDefiniteError, NumericalError

TOL_RANK = 1e-10
CLAMP_TOL = 1e-12
TRACE_TOL = 1e-8

__all__ = [
    "TOL_RANK",
    "CLAMP_TOL",
    "TRACE_TOL",
    "as_matrix",
    "hermitize",
    "hermitian_eig",
    "sqrt_psd",
    "cholesky_lower",
    "ul_factor",
    "fidelity",
    "fidelity_2x2",
    "bures_distance",
    "fidelity_with_diagonal",
]


def as_matrix(m, name="matrix"):
    """Return ``m`` as a finite square complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def hermitize(m):
    """Canonical symmetrization ``(M + M^dagger) / 2``."""
    a = as_matrix(m)
    return 0.5 * (a + a.conj().T)


def hermitian_eig(m):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with ``w`` ascending and ``v`` unitary such that
    ``m = v @ diag(w) @ v^dagger``.
    """
    a = hermitize(m)
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"hermitian_eig: eigensolver did not converge ({exc})") from exc
    return w, v


def _clamped_eigenvalues(w, norm, clamp_tol, what):
    floor = -clamp_tol * max(norm, 1.0)
    if w[0] < floor:
        raise InvalidStateError(
            f"{what}: matrix is not positive semidefinite (min eigenvalue {w[0]:.3e})"
        )
    return np.clip(w, 0.0, None)


def sqrt_psd(m, clamp_tol=CLAMP_TOL):
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-clamp_tol * ||m||_F, 0)`` are treated as round-off and
    set to zero; anything more negative raises :class:`InvalidStateError`.
    """
    a = hermitize(m)
    w, v = hermitian_eig(a)
    w = _clamped_eigenvalues(w, np.linalg.norm(a), clamp_tol, "sqrt_psd")
    s = (v * np.sqrt(w)) @ v.conj().T
    return hermitize(s)


def cholesky_lower(m, tol_rank=TOL_RANK):
    """Cholesky factor ``L`` (lower, real positive diagonal) with ``m = L L^dagger``.

    Column-oriented; each pivot ``m_jj - sum_k |L_jk|^2`` must exceed
    ``tol_rank`` or :class:`NotPositiveDefiniteError` is raised. For a Gram
    matrix this is exactly Gram-Schmidt run on the underlying vectors, and a
    failing pivot means the vectors are linearly dependent.
    """
    a = hermitize(m)
    n = a.shape[0]
    low = np.zeros_like(a)
    for j in range(n):
        row = low[j, :j]
        pivot = a[j, j].real - np.vdot(row, row).real
        if not pivot > tol_rank:
            raise NotPositiveDefiniteError(
                f"cholesky_lower: pivot {j} is {pivot:.3e} <= tol_rank={tol_rank:g}; "
                "matrix is not positive definite (linearly dependent set)",
                min_eigenvalue=float(np.linalg.eigvalsh(a)[0]),
            )
        d = np.sqrt(pivot)
        low[j, j] = d
        if j + 1 < n:
            # L_ij = (a_ij - sum_k L_ik conj(L_jk)) / L_jj
            low[j + 1 :, j] = (a[j + 1 :, j] - low[j + 1 :, :j] @ row.conj()) / d
    return low


def ul_factor(m, tol_rank=TOL_RANK):
    """Upper-triangular ``B`` with positive diagonal and ``m = B B^dagger``.

    Obtained from :func:`cholesky_lower` by reversing the index order:
    if ``J m J = L L^dagger`` then ``B = J L J``.
    """
    a = hermitize(m)
    rev = a[::-1, ::-1]
    low = cholesky_lower(rev, tol_rank=tol_rank)
    return np.ascontiguousarray(low[::-1, ::-1])


def _check_state(rho, name, clamp_tol, trace_tol):
    a = as_matrix(rho, name)
    tr = np.trace(a)
    if abs(tr - 1.0) > trace_tol:
        raise InvalidStateError(f"{name} does not have unit trace (trace = {tr.real:.12g})")
    w = np.linalg.eigvalsh(hermitize(a))
    if w[0] < -clamp_tol * max(np.linalg.norm(a), 1.0):
        raise InvalidStateError(f"{name} is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    return hermitize(a)


def fidelity(rho, sigma, clamp_tol=CLAMP_TOL, trace_tol=TRACE_TOL):
    """Uhlmann fidelity ``(Tr sqrt(sqrt(rho) sigma sqrt(rho)))**2``.

    Both arguments must be unit-trace PSD matrices. The result is clamped to
    ``[0, 1]``.
    """
    rho = _check_state(rho, "rho", clamp_tol, trace_tol)
    sigma = _check_state(sigma, "sigma", clamp_tol, trace_tol)
    if rho.shape != sigma.shape:
        raise ValueError(f"shape mismatch: {rho.shape} vs {sigma.shape}")
    root = sqrt_psd(rho, clamp_tol)
    inner = hermitize(root @ sigma @ root)
    w, _ = hermitian_eig(inner)
    w = _clamped_eigenvalues(w, np.linalg.norm(inner), clamp_tol, "fidelity")
    f = float(np.sum(np.sqrt(w)) ** 2)
    return min(max(f, 0.0), 1.0)


def fidelity_2x2(rho, sigma, clamp_tol=CLAMP_TOL, trace_tol=TRACE_TOL):
    """Qubit fidelity via ``Tr(rho sigma) + 2 sqrt(det rho det sigma)``."""
    rho = as_matrix(rho, "rho")
    sigma = as_matrix(sigma, "sigma")
    if rho.shape != (2, 2) or sigma.shape != (2, 2):
        raise ValueError("fidelity_2x2 requires 2x2 density matrices")
    rho = _check_state(rho, "rho", clamp_tol, trace_tol)
    sigma = _check_state(sigma, "sigma", clamp_tol, trace_tol)
    dets = max(np.linalg.det(rho).real, 0.0) * max(np.linalg.det(sigma).real, 0.0)
    f = np.trace(rho @ sigma).real + 2.0 * np.sqrt(dets)
    return min(max(float(f), 0.0), 1.0)


def fidelity_with_diagonal(rho, diag, clamp_tol=CLAMP_TOL):
    """Batched fidelity between density matrices and diagonal density matrices.

    ``rho`` has shape ``(..., N, N)`` and ``diag`` shape ``(..., N)``. Uses
    ``sqrt(F) = Tr sqrt(sqrt(d) rho sqrt(d))``, which only needs one
    eigendecomposition per pair since ``sqrt(d)`` is diagonal. Inputs are
    trusted to be valid states.
    """
    root = np.sqrt(np.clip(np.asarray(diag, dtype=float), 0.0, None))
    inner = root[..., :, None] * np.asarray(rho, dtype=complex) * root[..., None, :]
    inner = 0.5 * (inner + np.conj(np.swapaxes(inner, -1, -2)))
    try:
        w = np.linalg.eigvalsh(inner)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"fidelity_with_diagonal: eigensolver did not converge ({exc})") from exc
    norms = np.linalg.norm(inner, axis=(-2, -1))
    if np.any(w[..., 0] < -clamp_tol * np.maximum(norms, 1.0)):
        raise InvalidStateError("fidelity_with_diagonal: argument is not positive semidefinite")
    f = np.sum(np.sqrt(np.clip(w, 0.0, None)), axis=-1) ** 2
    return np.clip(f, 0.0, 1.0)


def bures_distance(rho, sigma, clamp_tol=CLAMP_TOL, trace_tol=TRACE_TOL):
    """Bures distance ``sqrt(2 - 2 sqrt(F))``."""
    f = fidelity(rho, sigma, clamp_tol, trace_tol)
    return float(np.sqrt(max(2.0 - 2.0 * np.sqrt(f), 0.0)))

"""Triangular transform T, the associated pair (rho_T, eta_p), and its inverse.

All matrices are written in the orthonormal basis ``{e_i}`` produced by
Gram-Schmidt on the states in their given order. In that basis the state
coordinates form the upper-triangular matrix ``A`` (column n holds
``|phi_n>``), and ``T = A^-1`` maps each ``|phi_i>`` to ``|e_i>``.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import InvalidStateError, NotPositiveDefiniteError
from .linalg import TOL_RANK, TRACE_TOL, as_matrix, cholesky_lower, hermitize, ul_factor
from .problem import DiscriminationProblem


@dataclass(frozen=True, eq=False)
class TransformFactor:
    """``t = sqrt(eta_p) @ T`` together with the permutation and the coefficients ``A``."""

    t: np.ndarray
    permutation: tuple
    gs_coeffs: np.ndarray


@dataclass(frozen=True, eq=False)
class AssociatedPair:
    rho_t: np.ndarray
    eta_p: np.ndarray
    permutation: tuple


def _check_permutation(p, n):
    p = tuple(int(i) for i in p)
    if sorted(p) != list(range(n)):
        raise ValueError(f"{p} is not a permutation of range({n})")
    return p


def gs_coefficients(gram, tol_rank=TOL_RANK):
    """Upper-triangular Gram-Schmidt coordinates ``A`` with ``A^dagger A = G``."""
    return cholesky_lower(gram, tol_rank).conj().T


def t_matrix_direct(gram, tol_rank=TOL_RANK):
    """``T = A^-1`` by back-substitution."""
    a = gs_coefficients(gram, tol_rank)
    t = solve_triangular(a, np.eye(a.shape[0], dtype=complex), lower=False)
    return np.triu(t)


def _t_matrix_two(g12):
    s = np.sqrt(1.0 - abs(g12) ** 2)
    return np.array([[1.0, -g12 / s], [0.0, 1.0 / s]], dtype=complex)


def t_matrix_recursive(gram, tol_rank=TOL_RANK):
    """Build ``T`` by bordering: start from the closed 2x2 form and add one state at a time.

    For state n the coefficients ``a_ni = <e_i|phi_n>`` satisfy
    ``a = T(n-1)^dagger g_n`` (since ``e_i = sum_k T_ki |phi_k>``); they are
    obtained by forward substitution against the coordinates accumulated so
    far, ``a_nn`` from normalization, and

        T(n) = diag(T(n-1), 1) @ [[I, -a / a_nn], [0, 1 / a_nn]].
    """
    g = hermitize(gram)
    n = g.shape[0]
    if n == 1:
        return np.ones((1, 1), dtype=complex)
    if 1.0 - abs(g[0, 1]) ** 2 <= tol_rank:
        raise NotPositiveDefiniteError(
            f"t_matrix_recursive: |g12| = {abs(g[0, 1]):g}, states 1 and 2 are dependent",
            min_eigenvalue=float(np.linalg.eigvalsh(g)[0]),
        )
    t = _t_matrix_two(g[0, 1])
    # coordinates of the states so far; a = T^dagger g is solved as A^dagger a = g
    coords = np.array([[1.0, g[0, 1]], [0.0, np.sqrt(1.0 - abs(g[0, 1]) ** 2)]], dtype=complex)
    for m in range(2, n):
        a = solve_triangular(coords, g[:m, m], trans="C", lower=False)
        ann2 = 1.0 - np.vdot(a, a).real
        if ann2 <= tol_rank:
            raise NotPositiveDefiniteError(
                f"t_matrix_recursive: state {m + 1} lies in the span of the previous states "
                f"(a_nn^2 = {ann2:.3e})",
                min_eigenvalue=float(np.linalg.eigvalsh(g)[0]),
            )
        ann = np.sqrt(ann2)
        left = np.zeros((m + 1, m + 1), dtype=complex)
        left[:m, :m] = t
        left[m, m] = 1.0
        right = np.eye(m + 1, dtype=complex)
        right[:m, m] = -a / ann
        right[m, m] = 1.0 / ann
        t = left @ right
        grown = np.zeros((m + 1, m + 1), dtype=complex)
        grown[:m, :m] = coords
        grown[:m, m] = a
        grown[m, m] = ann
        coords = grown
    return t


def transform_factor(problem, permutation, tol_rank=TOL_RANK):
    """``T^e_{eta_p} = sqrt(eta_p) T`` in the Gram-Schmidt basis."""
    p = _check_permutation(permutation, problem.n)
    a = gs_coefficients(problem.gram, tol_rank)
    t = solve_triangular(a, np.eye(a.shape[0], dtype=complex), lower=False)
    eta_p = problem.priors[list(p)]
    return TransformFactor(np.sqrt(eta_p)[:, None] * np.triu(t), p, a)


def rho_from_t(t, eta_p):
    """``rho = T^dagger diag(eta_p) T / Tr[...]``."""
    r = t.conj().T @ (np.asarray(eta_p)[:, None] * t)
    r = hermitize(r)
    return r / np.trace(r).real


def associated_pair(problem, permutation=None, tol_rank=TOL_RANK, t=None):
    """The density matrices ``(rho_T, eta_p)`` attached to ``problem`` under ``permutation``.

    ``permutation`` (0-based, default identity) reorders the priors only:
    ``eta_p = diag(priors[p[0]], ..., priors[p[N-1]])``. Pass a precomputed
    ``t`` to skip refactorizing the Gram matrix.
    """
    n = problem.n
    p = tuple(range(n)) if permutation is None else _check_permutation(permutation, n)
    if t is None:
        t = t_matrix_direct(problem.gram, tol_rank)
    eta = problem.priors[list(p)]
    return AssociatedPair(rho_from_t(t, eta), np.diag(eta).astype(complex), p)


def inverse_parametrization(rho, tol_rank=TOL_RANK, trace_tol=TRACE_TOL):
    """Recover the problem (Gram-Schmidt gauge, identity permutation) whose ``rho_T`` is ``rho``.

    With ``M = rho^-1 = B B^dagger`` (``B`` upper triangular), each column of
    ``B`` is a state column of ``A`` scaled by ``1 / sqrt(c eta_j)``; unit
    state norms fix ``eta_j`` proportional to ``||B_j||^-2``.
    """
    r = as_matrix(rho, "rho")
    if abs(np.trace(r) - 1.0) > trace_tol:
        raise InvalidStateError(f"rho does not have unit trace (trace = {np.trace(r).real:.12g})")
    if np.max(np.abs(r - r.conj().T)) > 1e-10 * max(np.linalg.norm(r), 1.0):
        raise InvalidStateError("rho is not Hermitian")
    r = hermitize(r)
    min_eig = float(np.linalg.eigvalsh(r)[0])
    if min_eig <= tol_rank:
        raise InvalidStateError(f"rho is not full rank / positive definite (min eigenvalue {min_eig:.3e})")
    b = ul_factor(np.linalg.inv(r), tol_rank=0.0)
    norms = np.linalg.norm(b, axis=0)
    inv_sq = norms**-2.0
    tau = 1.0 / inv_sq.sum()
    eta = tau * inv_sq
    # b_j sqrt(eta_j / tau) == b_j / ||b_j||
    a = b / norms[None, :]
    gram = hermitize(a.conj().T @ a)
    return DiscriminationProblem(gram, eta)

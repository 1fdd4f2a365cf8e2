"""Fidelity-based discriminability of a discrimination problem.

``D = max_p F(rho_T(p), eta_p)`` over permutations ``p`` of the priors,
with closed forms for two states and for uniform priors, and the standard
two-state baselines (IDP unambiguous success, Helstrom correct guess).
"""

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import CapabilityError
from .linalg import CLAMP_TOL, TOL_RANK, fidelity, fidelity_with_diagonal, sqrt_psd
from .transform import associated_pair, t_matrix_direct

TIE_TOL = 1e-12
BOUND_TOL = 1e-10


@dataclass(frozen=True)
class Exact:
    """Enumerate all ``N!`` permutations; refuse when ``N > max_n``."""

    max_n: int = 8
    name = "exact"


@dataclass(frozen=True)
class Fixed:
    permutation: tuple
    name = "fixed"


@dataclass(frozen=True)
class SortedHeuristic:
    """Single permutation: larger priors go where the identity-order ``rho_T`` has larger diagonal.

    Cheap for any N; the value is only a lower bound on D.
    """

    name = "sorted"


@dataclass
class DiscriminabilityReport:
    value: float
    argmax_permutation: tuple
    normalized: float
    n: int
    strategy: str
    lower_bound: bool = False
    fidelity_per_permutation: list | None = None
    baselines: dict | None = None
    diagnostics: dict = field(default_factory=dict)


def fidelity_for_permutation(problem, permutation, tol_rank=TOL_RANK, t=None):
    """``F(rho_T, eta_p)`` for one permutation of the priors."""
    pair = associated_pair(problem, permutation, tol_rank=tol_rank, t=t)
    return fidelity(pair.rho_t, pair.eta_p)


def _batched_fidelities(t, etas):
    # rho_p = T^dagger diag(eta_p) T / Tr, for every row eta_p of etas
    rhos = np.einsum("ki,pk,kj->pij", t.conj(), etas, t)
    rhos /= np.trace(rhos, axis1=1, axis2=2).real[:, None, None]
    return fidelity_with_diagonal(rhos, etas)


def select_maximum(candidates, tie_tol=TIE_TOL):
    """Pick ``(value, permutation)`` from ``(permutation, fidelity)`` pairs.

    The value is the maximum fidelity; the permutation is the
    lexicographically smallest one within ``tie_tol`` of it, so the result
    does not depend on the order of ``candidates``.
    """
    candidates = list(candidates)
    best = max(f for _, f in candidates)
    winner = min(tuple(p) for p, f in candidates if f >= best - tie_tol)
    return best, winner


def sorted_heuristic_permutation(problem, tol_rank=TOL_RANK, t=None):
    n = problem.n
    pair = associated_pair(problem, None, tol_rank=tol_rank, t=t)
    slots = np.argsort(-np.diag(pair.rho_t).real, kind="stable")
    ranked_priors = np.argsort(-problem.priors, kind="stable")
    p = [0] * n
    for slot, prior in zip(slots, ranked_priors):
        p[slot] = int(prior)
    return tuple(p)


def normalized_discriminability(d, n):
    """Affine rescale ``(N D - 1) / (N - 1)`` of ``D`` from ``[1/N, 1]`` onto ``[0, 1]``."""
    if n < 2:
        raise ValueError("normalized discriminability needs N >= 2")
    if not (1.0 / n - BOUND_TOL <= d <= 1.0 + BOUND_TOL):
        raise ValueError(f"D = {d!r} outside [1/N, 1] for N = {n}")
    return min(max((n * d - 1.0) / (n - 1.0), 0.0), 1.0)


def discriminability(problem, strategy=None, tol_rank=TOL_RANK, keep_all=True):
    """Compute D for ``problem`` under ``strategy`` (default :class:`Exact`)."""
    strategy = Exact() if strategy is None else strategy
    n = problem.n
    t = t_matrix_direct(problem.gram, tol_rank)

    per_perm = None
    lower_bound = False
    if isinstance(strategy, Exact):
        if n > strategy.max_n:
            raise CapabilityError(
                f"exact search over {n}! permutations exceeds max_n={strategy.max_n}; "
                "use a fixed permutation or the sorted heuristic"
            )
        perms = list(itertools.permutations(range(n)))
        etas = problem.priors[np.array(perms)]
        values = _batched_fidelities(t, etas)
        per_perm = [(p, float(f)) for p, f in zip(perms, values)]
        value, argmax = select_maximum(per_perm)
    elif isinstance(strategy, Fixed):
        argmax = tuple(strategy.permutation)
        value = fidelity_for_permutation(problem, argmax, tol_rank, t)
        lower_bound = True
    elif isinstance(strategy, SortedHeuristic):
        argmax = sorted_heuristic_permutation(problem, tol_rank, t)
        value = fidelity_for_permutation(problem, argmax, tol_rank, t)
        lower_bound = True
    else:
        raise TypeError(f"unknown strategy {strategy!r}")

    baselines = None
    if n == 2:
        eta1 = float(problem.priors[0])
        gamma = complex(problem.gram[0, 1])
        baselines = {
            "idp_success": idp_success_equal_priors(gamma),
            "helstrom_correct": helstrom_correct(eta1, gamma),
        }

    rho_id = associated_pair(problem, None, tol_rank, t).rho_t
    trace_tt = float(np.sum(np.abs(t) ** 2 * problem.priors[:, None]).real)
    diagnostics = {
        "min_gram_eigenvalue": float(np.linalg.eigvalsh(problem.gram)[0]),
        "rho_trace_residual": float(abs(np.trace(rho_id) - 1.0)),
        "gram_diagonal_residual": float(np.max(np.abs(np.diag(problem.gram) - 1.0))),
        "unnormalized_trace": trace_tt,
    }
    return DiscriminabilityReport(
        value=float(value),
        argmax_permutation=tuple(argmax),
        # a single permutation is not bounded below by 1/N, so only the
        # exact maximum goes through the range check
        normalized=(n * value - 1.0) / (n - 1.0) if lower_bound else normalized_discriminability(value, n),
        n=n,
        strategy=strategy.name,
        lower_bound=lower_bound,
        fidelity_per_permutation=per_perm if keep_all else None,
        baselines=baselines,
        diagnostics=diagnostics,
    )


def _check_two_state(eta1, gamma, allow_unit=False):
    if not 0 < eta1 < 1:
        raise ValueError(f"eta1 must lie in (0, 1), got {eta1}")
    g = abs(complex(gamma))
    if g > 1 or (g == 1 and not allow_unit):
        raise ValueError(f"|gamma| = {g:g} out of range")
    return g


def two_state_closed_form(eta1, gamma):
    """Two-state discriminability.

    ``eta1^2 + eta2^2 + 2 eta1 eta2 sqrt(1 - |g|^2) + |g|^2 (eta1 eta2 - eta_min^2)``
    """
    g = _check_two_state(eta1, gamma)
    eta2 = 1.0 - eta1
    eta_min = min(eta1, eta2)
    g2 = g * g
    return eta1**2 + eta2**2 + 2 * eta1 * eta2 * math.sqrt(1 - g2) + g2 * (eta1 * eta2 - eta_min**2)


def equal_prior_closed_form(problem, tol_rank=TOL_RANK, clamp_tol=CLAMP_TOL):
    """``(Tr sqrt(rho_T))^2 / N`` for a problem with uniform priors."""
    n = problem.n
    if not np.allclose(problem.priors, 1.0 / n, rtol=0, atol=1e-12):
        raise ValueError("equal_prior_closed_form requires uniform priors")
    rho = associated_pair(problem, None, tol_rank).rho_t
    return float(np.trace(sqrt_psd(rho, clamp_tol)).real ** 2 / n)


def idp_success_equal_priors(gamma):
    """Optimal unambiguous success for two equiprobable pure states, ``1 - |gamma|``."""
    g = abs(complex(gamma))
    if g > 1:
        raise ValueError(f"|gamma| = {g:g} > 1")
    return 1.0 - g


def helstrom_correct(eta1, gamma):
    """Minimum-error probability of a correct guess between two pure states."""
    g = _check_two_state(eta1, gamma, allow_unit=True)
    return 0.5 * (1.0 + math.sqrt(max(1.0 - 4.0 * eta1 * (1.0 - eta1) * g * g, 0.0)))


__all__ = [
    "Exact",
    "Fixed",
    "SortedHeuristic",
    "DiscriminabilityReport",
    "fidelity_for_permutation",
    "select_maximum",
    "sorted_heuristic_permutation",
    "discriminability",
    "normalized_discriminability",
    "two_state_closed_form",
    "equal_prior_closed_form",
    "idp_success_equal_priors",
    "helstrom_correct",
]

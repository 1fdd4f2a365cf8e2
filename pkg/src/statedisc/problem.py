"""Discrimination problems: N pure states (via their Gram matrix) plus priors."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DependentStatesError, NotPositiveDefiniteError, NumericalError, ValidationError
from .linalg import TOL_RANK, hermitize

UNIT_TOL = 1e-12
HERMITIAN_TOL = 1e-12
SIMPLEX_TOL = 1e-12
GENERATOR_MIN_EIG = 1e-6
GENERATOR_RETRIES = 100


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class DiscriminationProblem:
    """Gram matrix of the states, their prior probabilities, and optionally the states.

    ``states`` has shape ``(d, N)``: one column per state. Construction only
    checks shapes; use :func:`validate_problem` for the mathematical
    invariants.
    """

    gram: np.ndarray
    priors: np.ndarray
    states: np.ndarray | None = None

    def __post_init__(self):
        gram = np.asarray(self.gram, dtype=complex)
        priors = np.asarray(self.priors, dtype=float)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise ValidationError(f"gram must be square, got shape {gram.shape}")
        if priors.shape != (gram.shape[0],):
            raise ValidationError(
                f"priors length {priors.shape} does not match gram dimension {gram.shape[0]}"
            )
        if not (np.all(np.isfinite(gram)) and np.all(np.isfinite(priors))):
            raise ValidationError("gram and priors must be finite")
        object.__setattr__(self, "gram", _frozen(gram, complex))
        object.__setattr__(self, "priors", _frozen(priors, float))
        if self.states is not None:
            states = np.asarray(self.states, dtype=complex)
            if states.ndim != 2 or states.shape[1] != gram.shape[0]:
                raise ValidationError(
                    f"states must have shape (d, {gram.shape[0]}), got {states.shape}"
                )
            object.__setattr__(self, "states", _frozen(states, complex))

    @property
    def n(self):
        return self.gram.shape[0]

    @classmethod
    def from_states(cls, states, priors):
        states = np.asarray(states, dtype=complex)
        return cls(gram_from_states(states), priors, states)


@dataclass
class Diagnostics:
    """Outcome of :func:`validate_problem`: one boolean per invariant."""

    checks: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    min_eigenvalue: float = float("nan")

    @property
    def ok(self):
        return all(self.checks.values())

    def raise_if_failed(self):
        if not self.ok:
            raise ValidationError("; ".join(self.violations), self.violations)


def gram_from_states(states):
    """Overlaps ``G_ij = <phi_i|phi_j>`` of the columns of ``states``."""
    s = np.asarray(states, dtype=complex)
    if s.ndim != 2:
        raise ValidationError(f"states must be a 2-D array, got ndim={s.ndim}")
    return hermitize(s.conj().T @ s)


def validate_problem(problem, tol_rank=TOL_RANK):
    """Check every invariant of ``problem`` and report all failures together."""
    diag = Diagnostics()
    g = problem.gram
    n = problem.n

    if problem.states is not None:
        norms = np.linalg.norm(problem.states, axis=0)
        ok = bool(np.all(np.abs(norms - 1.0) <= UNIT_TOL))
        diag.checks["unit_states"] = ok
        if not ok:
            diag.violations.append(
                f"states are not normalized (max |norm - 1| = {np.max(np.abs(norms - 1.0)):.3e})"
            )
        dev = np.max(np.abs(gram_from_states(problem.states) - g))
        ok = bool(dev <= UNIT_TOL)
        diag.checks["gram_matches_states"] = ok
        if not ok:
            diag.violations.append(f"gram does not match states (max deviation {dev:.3e})")

    herm_dev = float(np.max(np.abs(g - g.conj().T))) if n else 0.0
    ok = herm_dev <= HERMITIAN_TOL * max(np.linalg.norm(g), 1.0)
    diag.checks["hermitian"] = ok
    if not ok:
        diag.violations.append(f"gram is not Hermitian (max |G_ij - conj(G_ji)| = {herm_dev:.3e})")

    diag_dev = float(np.max(np.abs(np.diag(g) - 1.0))) if n else 0.0
    ok = diag_dev <= UNIT_TOL
    diag.checks["unit_diagonal"] = ok
    if not ok:
        diag.violations.append(f"gram diagonal is not 1 (max deviation {diag_dev:.3e})")

    if n:
        min_eig = float(np.linalg.eigvalsh(hermitize(g))[0])
    else:
        min_eig = float("nan")
    diag.min_eigenvalue = min_eig
    ok = min_eig > tol_rank
    diag.checks["positive_definite"] = ok
    if not ok:
        diag.violations.append(
            f"gram is not positive definite (min eigenvalue {min_eig:.3e} <= tol_rank={tol_rank:g}): "
            "the states are linearly dependent and cannot be discriminated unambiguously"
        )

    eta = problem.priors
    ok = bool(n and np.all(eta > 0) and abs(eta.sum() - 1.0) <= SIMPLEX_TOL)
    diag.checks["priors_simplex"] = ok
    if not ok:
        diag.violations.append(
            f"priors must be positive and sum to 1 (sum = {eta.sum():.15g}, min = {eta.min() if n else float('nan'):.3e})"
        )
    return diag


def dual_coefficients(gram, tol_rank=TOL_RANK):
    """Coefficient matrix ``K = G^-1`` of the reciprocal set.

    The dual states are ``|phi~_i> = sum_j K_ji |phi_j>`` so that
    ``<phi~_i|phi_j> = delta_ij``.
    """
    g = hermitize(gram)
    min_eig = float(np.linalg.eigvalsh(g)[0])
    if min_eig <= tol_rank:
        raise NotPositiveDefiniteError(
            f"dual_coefficients: gram min eigenvalue {min_eig:.3e} <= tol_rank; states are dependent",
            min_eigenvalue=min_eig,
        )
    return hermitize(np.linalg.inv(g))


def random_problem(n, d, seed):
    """Random problem with complex Gaussian states and flat-Dirichlet priors.

    Deterministic in ``seed``. Draws whose Gram matrix has minimum eigenvalue
    below 1e-6 are rejected and redrawn.
    """
    if not (isinstance(n, (int, np.integer)) and isinstance(d, (int, np.integer))):
        raise ValidationError("n and d must be integers")
    if not d >= n >= 2:
        raise ValidationError(f"need d >= n >= 2, got n={n}, d={d}")
    rng = np.random.default_rng(seed)
    for _ in range(GENERATOR_RETRIES):
        states = rng.standard_normal((d, n)) + 1j * rng.standard_normal((d, n))
        states /= np.linalg.norm(states, axis=0)
        priors = rng.exponential(size=n)
        priors /= priors.sum()
        gram = gram_from_states(states)
        if np.linalg.eigvalsh(gram)[0] > GENERATOR_MIN_EIG:
            return DiscriminationProblem(gram, priors, states)
    raise NumericalError(f"random_problem: no well-conditioned draw after {GENERATOR_RETRIES} attempts")


def two_state_family(gamma, eta1):
    """Two states with overlap ``gamma`` and priors ``(eta1, 1 - eta1)``."""
    gamma = complex(gamma)
    if not abs(gamma) < 1:
        raise DependentStatesError(
            f"|gamma| = {abs(gamma):g} >= 1: the two states are linearly dependent",
            min_eigenvalue=1 - abs(gamma),
        )
    if not 0 < eta1 < 1:
        raise ValidationError(f"eta1 must lie in (0, 1), got {eta1}")
    gram = np.array([[1, gamma], [gamma.conjugate(), 1]], dtype=complex)
    return DiscriminationProblem(gram, np.array([eta1, 1.0 - eta1]))


def three_state_gram(theta, alpha=np.pi / 3, phi=np.pi / 4):
    """Real Gram matrix with g12 = cos(alpha), g13 = cos(phi) sin(theta), g23 = sin(theta) cos(alpha - phi)."""
    g12 = np.cos(alpha)
    g13 = np.cos(phi) * np.sin(theta)
    g23 = np.sin(theta) * np.cos(alpha - phi)
    return np.array([[1, g12, g13], [g12, 1, g23], [g13, g23, 1]], dtype=complex)


def three_state_family(theta, alpha=np.pi / 3, phi=np.pi / 4, tol_rank=TOL_RANK):
    """Equiprobable three-state family with real overlaps parametrized by angles."""
    gram = three_state_gram(theta, alpha, phi)
    min_eig = float(np.linalg.eigvalsh(gram)[0])
    if min_eig <= tol_rank:
        raise DependentStatesError(
            f"theta={theta:g}: gram min eigenvalue {min_eig:.3e} <= tol_rank; states are dependent",
            min_eigenvalue=min_eig,
        )
    return DiscriminationProblem(gram, np.full(3, 1.0 / 3.0))

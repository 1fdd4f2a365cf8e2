import numpy as np
import pytest

from conftest import random_pd, random_unitary
from statedisc.errors import DependentStatesError, NotPositiveDefiniteError, ValidationError
from statedisc.problem import (
    DiscriminationProblem,
    dual_coefficients,
    gram_from_states,
    random_problem,
    three_state_family,
    three_state_gram,
    two_state_family,
    validate_problem,
)


def test_gram_orthonormal():
    np.testing.assert_allclose(gram_from_states(np.eye(3)), np.eye(3))


def test_gram_two_state_construction():
    states = np.array([[1, 0.5], [0, np.sqrt(3) / 2]])
    np.testing.assert_allclose(gram_from_states(states), [[1, 0.5], [0.5, 1]], atol=1e-15)


def test_gram_conjugate_linear_in_first_argument():
    states = np.array([[1, 1j / np.sqrt(2)], [0, 1 / np.sqrt(2)]])
    g = gram_from_states(states)
    # <e1| (i e1 + e2)/sqrt2> = i/sqrt2
    assert g[0, 1] == pytest.approx(1j / np.sqrt(2))
    assert g[1, 0] == pytest.approx(-1j / np.sqrt(2))


def test_gram_unitary_invariance():
    p = random_problem(4, 6, seed=3)
    for k in range(10):
        v = random_unitary(6, k)
        assert np.max(np.abs(gram_from_states(v @ p.states) - p.gram)) <= 1e-12


def test_validate_dependent_set():
    diag = validate_problem(DiscriminationProblem(np.ones((2, 2)), [0.5, 0.5]))
    assert not diag.ok
    assert not diag.checks["positive_definite"]
    assert any("linearly dependent" in v for v in diag.violations)
    with pytest.raises(ValidationError):
        diag.raise_if_failed()


def test_validate_example_a_passes():
    diag = validate_problem(two_state_family(0.5, 0.5))
    assert diag.ok
    assert diag.min_eigenvalue == pytest.approx(0.5)


def test_validate_priors_simplex():
    diag = validate_problem(DiscriminationProblem(np.eye(2), [0.5, 0.6]))
    assert diag.checks == {
        "hermitian": True,
        "unit_diagonal": True,
        "positive_definite": True,
        "priors_simplex": False,
    }


def test_validate_aggregates_all_violations():
    g = np.array([[2.0, 1.0], [0.0, 1.0]])
    diag = validate_problem(DiscriminationProblem(g, [0.2, 0.2]))
    assert {k for k, v in diag.checks.items() if not v} == {"hermitian", "unit_diagonal", "priors_simplex"}
    with pytest.raises(ValidationError) as info:
        diag.raise_if_failed()
    assert len(info.value.violations) == 3


def test_validate_states_must_be_normalized():
    states = np.array([[1.0, 0.0], [0.0, 1.1]])
    p = DiscriminationProblem(gram_from_states(states), [0.5, 0.5], states)
    diag = validate_problem(p)
    assert not diag.checks["unit_states"]


def test_shape_mismatch_rejected():
    with pytest.raises(ValidationError):
        DiscriminationProblem(np.eye(2), [1.0])


def test_problem_arrays_are_read_only():
    p = two_state_family(0.5, 0.5)
    with pytest.raises(ValueError):
        p.gram[0, 0] = 2


def test_dual_identity():
    np.testing.assert_allclose(dual_coefficients(np.eye(3)), np.eye(3))


def test_dual_two_state():
    k = dual_coefficients(np.array([[1, 0.5], [0.5, 1]]))
    np.testing.assert_allclose(k, [[4 / 3, -2 / 3], [-2 / 3, 4 / 3]], atol=1e-14)


def test_dual_biorthogonality(rng):
    for _ in range(50):
        n = int(rng.integers(2, 8))
        p = random_problem(n, n + 1, seed=int(rng.integers(1 << 30)))
        k = dual_coefficients(p.gram)
        np.testing.assert_allclose(p.gram @ k, np.eye(n), atol=1e-10)
        # <dual_i | phi_j> with dual_i = sum_j K_ji phi_j
        duals = p.states @ k
        np.testing.assert_allclose(duals.conj().T @ p.states, np.eye(n), atol=1e-10)


def test_dual_rejects_dependent():
    with pytest.raises(NotPositiveDefiniteError):
        dual_coefficients(np.ones((2, 2)))


def test_random_problem_deterministic():
    a, b = random_problem(2, 2, seed=0), random_problem(2, 2, seed=0)
    assert np.array_equal(a.gram, b.gram)
    assert np.array_equal(a.priors, b.priors)
    assert np.array_equal(a.states, b.states)


def test_random_problem_contract():
    for seed in range(20):
        p = random_problem(4, 4, seed)
        assert np.linalg.eigvalsh(p.gram)[0] > 1e-10
        assert validate_problem(p).ok
    p = random_problem(3, 8, seed=7)
    assert np.max(np.abs(np.diag(p.gram) - 1)) <= 1e-12


def test_random_problem_bad_dims():
    with pytest.raises(ValidationError):
        random_problem(4, 3, 0)
    with pytest.raises(ValidationError):
        random_problem(1, 3, 0)


def test_two_state_family():
    p = two_state_family(0, 0.5)
    np.testing.assert_array_equal(p.gram, np.eye(2))
    p = two_state_family(0.5, 0.5)
    np.testing.assert_array_equal(p.gram, [[1, 0.5], [0.5, 1]])
    np.testing.assert_array_equal(p.priors, [0.5, 0.5])
    p = two_state_family(0.3j, 0.2)
    assert p.gram[1, 0] == -0.3j
    with pytest.raises(DependentStatesError):
        two_state_family(1, 0.5)
    with pytest.raises(ValidationError):
        two_state_family(0.5, 1.0)


def test_two_state_family_continuity():
    for g in [1e-2, 1e-4, 1e-8]:
        assert np.max(np.abs(two_state_family(g, 0.5).gram - np.eye(2))) == pytest.approx(g)


def test_three_state_theta_zero():
    p = three_state_family(0.0)
    np.testing.assert_allclose(p.gram, [[1, 0.5, 0], [0.5, 1, 0], [0, 0, 1]], atol=1e-15)
    assert p.gram[0, 2] == 0 and p.gram[1, 2] == 0
    np.testing.assert_allclose(p.priors, [1 / 3] * 3)
    diag = validate_problem(p)
    assert diag.ok and diag.min_eigenvalue == pytest.approx(0.5)


def test_three_state_theta_half_pi():
    g = three_state_gram(np.pi / 2)
    assert g[0, 2].real == pytest.approx(0.70711, abs=5e-6)
    assert g[1, 2].real == pytest.approx(0.96593, abs=5e-6)
    # g13 = cos(phi), g23 = cos(alpha - phi): third state lies in the span of the first two
    det = np.linalg.det(g).real
    assert abs(det) < 1e-15
    with pytest.raises(DependentStatesError) as info:
        three_state_family(np.pi / 2)
    assert info.value.min_eigenvalue < 1e-10


def test_validate_on_random_pd_grams(rng):
    for _ in range(20):
        m = random_pd(4, rng)
        d = np.sqrt(np.diag(m).real)
        g = m / np.outer(d, d)
        assert validate_problem(DiscriminationProblem(g, np.full(4, 0.25))).ok

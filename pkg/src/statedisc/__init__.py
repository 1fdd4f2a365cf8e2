"""Density-matrix parametrization of pure-state discrimination problems.

A set of linearly independent pure states with priors is mapped to a pair of
density matrices ``(rho_T, eta_p)``; their maximal fidelity over prior
permutations is the discriminability ``D``, which lies in ``[1/N, 1]``.
"""

__version__ = "0.1.0"

from .discriminability import (  # noqa: E402
    Exact,
    Fixed,
    SortedHeuristic,
    discriminability,
    equal_prior_closed_form,
    fidelity_for_permutation,
    helstrom_correct,
    idp_success_equal_priors,
    normalized_discriminability,
    two_state_closed_form,
)
from .problem import (  # noqa: E402
    DiscriminationProblem,
    dual_coefficients,
    gram_from_states,
    random_problem,
    three_state_family,
    two_state_family,
    validate_problem,
)
from .transform import (  # noqa: E402
    associated_pair,
    gs_coefficients,
    inverse_parametrization,
    t_matrix_direct,
    t_matrix_recursive,
)

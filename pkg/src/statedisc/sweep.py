"""Parameter sweeps over the two- and three-state families.

Each sweep returns a header and rows of plain Python values in grid order;
the CLI handles formatting.
"""

import math
from dataclasses import dataclass

import numpy as np

from .discriminability import Exact, discriminability, helstrom_correct, idp_success_equal_priors
from .errors import DependentStatesError, ValidationError
from .linalg import TOL_RANK
from .problem import three_state_family, three_state_gram, two_state_family

FAMILIES = ("two_state_gamma", "two_state_eta", "three_state_theta")

DEFAULT_GRIDS = {
    "two_state_gamma": (0.0, 0.999, 200),
    "two_state_eta": (0.01, 0.99, 99),
    "three_state_theta": (0.0, math.pi / 2, 181),
}


@dataclass(frozen=True)
class SweepSpec:
    family: str
    start: float
    stop: float
    steps: int
    eta1: float = 0.5
    gammas: tuple = (0.5, 0.75, 0.9)
    alpha: float = math.pi / 3
    phi: float = math.pi / 4

    @classmethod
    def default(cls, family, **overrides):
        if family not in DEFAULT_GRIDS:
            raise ValidationError(f"unknown family {family!r}; choose one of {', '.join(FAMILIES)}")
        start, stop, steps = DEFAULT_GRIDS[family]
        kw = {"start": start, "stop": stop, "steps": steps}
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return cls(family=family, **kw)

    def grid(self):
        return np.linspace(self.start, self.stop, self.steps)

    def validate(self):
        if self.family not in FAMILIES:
            raise ValidationError(f"unknown family {self.family!r}; choose one of {', '.join(FAMILIES)}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ValidationError(f"steps must be an integer >= 2, got {self.steps}")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise ValidationError("grid bounds must be finite")
        lo, hi = min(self.start, self.stop), max(self.start, self.stop)
        if self.family == "two_state_gamma":
            if lo < 0 or hi >= 1:
                raise ValidationError("two_state_gamma grid must lie in [0, 1)")
            if not 0 < self.eta1 < 1:
                raise ValidationError("eta1 must lie in (0, 1)")
        elif self.family == "two_state_eta":
            if lo <= 0 or hi >= 1:
                raise ValidationError("two_state_eta grid must lie in (0, 1)")
            if not self.gammas or any(not 0 <= g < 1 for g in self.gammas):
                raise ValidationError("gammas must be a non-empty list in [0, 1)")


def _d(problem, tol_rank):
    return discriminability(problem, Exact(), tol_rank=tol_rank, keep_all=False)


def _label(x):
    return repr(float(x))


def run_sweep(spec, tol_rank=TOL_RANK):
    """Evaluate ``spec``; returns ``(header, rows)``."""
    spec.validate()
    grid = spec.grid()
    if spec.family == "two_state_gamma":
        header = ["gamma", "D", "two_D_minus_1", "p_idp"]
        rows = []
        for g in grid:
            d = _d(two_state_family(g, spec.eta1), tol_rank).value
            rows.append([float(g), d, 2.0 * d - 1.0, idp_success_equal_priors(g)])
        return header, rows

    if spec.family == "two_state_eta":
        header = ["eta1"]
        for g in spec.gammas:
            header += [f"D_gamma_{_label(g)}", f"helstrom_{_label(g)}"]
        rows = []
        for eta1 in grid:
            row = [float(eta1)]
            for g in spec.gammas:
                row += [_d(two_state_family(g, eta1), tol_rank).value, helstrom_correct(eta1, g)]
            rows.append(row)
        return header, rows

    header = ["theta", "min_gram_eig", "status", "D", "normalized_D"]
    rows = []
    for theta in grid:
        min_eig = float(np.linalg.eigvalsh(three_state_gram(theta, spec.alpha, spec.phi))[0])
        try:
            rep = _d(three_state_family(theta, spec.alpha, spec.phi, tol_rank), tol_rank)
        except DependentStatesError:
            rows.append([float(theta), min_eig, "dependent", None, None])
            continue
        rows.append([float(theta), min_eig, "ok", rep.value, rep.normalized])
    return header, rows

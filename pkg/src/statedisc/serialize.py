"""JSON encoding of problems, density matrices and analysis reports.

Complex numbers are ``[re, im]`` pairs; floats are written with Python's
shortest round-trip repr, so decoding and re-encoding is lossless.
"""

import json
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__
from .errors import ValidationError
from .problem import DiscriminationProblem, gram_from_states


def encode_complex(z):
    z = complex(z)
    return [float(z.real), float(z.imag)]


def encode_matrix(m):
    return [[encode_complex(z) for z in row] for row in np.asarray(m)]


def _decode_number(x, where):
    if isinstance(x, bool):
        raise ValidationError(f"{where}: expected a number or [re, im] pair, got {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if (
        isinstance(x, list)
        and len(x) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in x)
    ):
        return complex(x[0], x[1])
    raise ValidationError(f"{where}: expected a number or [re, im] pair, got {x!r}")


def decode_matrix(obj, where="matrix"):
    """Decode a rectangular array of ``[re, im]`` pairs."""
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ValidationError(f"{where}: expected a non-empty array of arrays")
    width = len(obj[0])
    if width == 0 or any(len(r) != width for r in obj):
        raise ValidationError(f"{where}: rows must be non-empty and of equal length")
    out = np.array(
        [[_decode_number(x, f"{where}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(obj)],
        dtype=complex,
    )
    if not np.all(np.isfinite(out)):
        raise ValidationError(f"{where}: non-finite entries")
    return out


def problem_from_dict(obj):
    """Parse the problem schema: exactly one of ``states``/``gram``, plus ``priors``."""
    if not isinstance(obj, dict):
        raise ValidationError("problem JSON must be an object")
    has_states, has_gram = "states" in obj, "gram" in obj
    if has_states == has_gram:
        raise ValidationError('problem JSON needs exactly one of "states" or "gram"')
    priors = obj.get("priors")
    if not isinstance(priors, list) or not all(
        isinstance(x, (int, float)) and not isinstance(x, bool) for x in priors
    ):
        raise ValidationError('"priors" must be an array of numbers')
    priors = np.array(priors, dtype=float)
    if has_states:
        # N arrays of d amplitudes -> (d, N) column layout
        states = decode_matrix(obj["states"], "states").T
        if len(priors) != states.shape[1]:
            raise ValidationError(f"{states.shape[1]} states but {len(priors)} priors")
        return DiscriminationProblem(gram_from_states(states), priors, states)
    gram = decode_matrix(obj["gram"], "gram")
    if gram.shape[0] != gram.shape[1]:
        raise ValidationError(f"gram must be square, got {gram.shape}")
    return DiscriminationProblem(gram, priors)


def problem_to_dict(problem, with_states=True):
    if with_states and problem.states is not None:
        return {
            "states": encode_matrix(problem.states.T),
            "priors": [float(x) for x in problem.priors],
        }
    return {"gram": encode_matrix(problem.gram), "priors": [float(x) for x in problem.priors]}


def rho_from_dict(obj):
    if not isinstance(obj, dict) or "rho" not in obj:
        raise ValidationError('density-matrix JSON must be an object with a "rho" field')
    rho = decode_matrix(obj["rho"], "rho")
    if rho.shape[0] != rho.shape[1]:
        raise ValidationError(f"rho must be square, got {rho.shape}")
    return rho


def _one_based(p):
    return [int(i) + 1 for i in p]


@dataclass
class Report:
    """Everything ``analyze`` prints: problem echo, identity-order rho_T, and D."""

    gram: list
    priors: list
    rho: list
    value: float
    argmax_permutation: list
    normalized: float
    strategy: str
    lower_bound: bool
    baselines: dict | None
    diagnostics: dict
    tolerances: dict
    fidelity_per_permutation: list | None = None
    version: str = field(default=__version__)

    @classmethod
    def build(cls, problem, rho, result, tolerances):
        per_perm = None
        if result.fidelity_per_permutation is not None:
            per_perm = [
                {"permutation": _one_based(p), "fidelity": float(f)}
                for p, f in result.fidelity_per_permutation
            ]
        return cls(
            gram=encode_matrix(problem.gram),
            priors=[float(x) for x in problem.priors],
            rho=encode_matrix(rho),
            value=float(result.value),
            argmax_permutation=_one_based(result.argmax_permutation),
            normalized=float(result.normalized),
            strategy=result.strategy,
            lower_bound=bool(result.lower_bound),
            baselines=result.baselines,
            diagnostics=dict(result.diagnostics),
            tolerances=dict(tolerances),
            fidelity_per_permutation=per_perm,
        )

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, obj):
        return cls(**obj)

    def dumps(self):
        return dumps(self.to_dict())

    @classmethod
    def loads(cls, text):
        return cls.from_dict(json.loads(text))


def dumps(obj):
    """JSON text with one top-level field (or list item) per line."""

    def enc(v):
        return json.dumps(v, allow_nan=False)

    if isinstance(obj, dict):
        body = ",\n".join(f"  {enc(k)}: {enc(v)}" for k, v in obj.items())
        return "{\n" + body + "\n}\n"
    if isinstance(obj, list):
        return "[\n" + ",\n".join("  " + enc(v) for v in obj) + "\n]\n"
    return enc(obj) + "\n"

"""Pseudo-pure state algebra and the NMR signal picture of its coefficient.

A pseudo-pure (effective pure) state is ``(1 - eps) I/d + eps rho1`` with
``rho1`` pure.  The coefficient ``eps`` measures how many ensemble members
contribute net signal: it scales readout intensity and is inert under unitary
evolution, which is why it carries no information about entanglement.
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from nmrsim.core import STRICT, DensityMatrix, purity, validate_density
from nmrsim.errors import DimMismatchError, NotNormalizedError, NotPureError, ParseError

__all__ = [
    "PURITY_TOL",
    "PseudoPureState",
    "PopulationVector",
    "EpsilonEstimate",
    "AveragedState",
    "NetSignal",
    "compose_pseudopure",
    "extract_epsilon",
    "exhaustive_average",
    "net_signal",
    "snr_with_repetitions",
    "population_to_dict",
    "population_from_dict",
]

PURITY_TOL = 1e-9
# Slack when deciding whether an extracted coefficient is out of model range.
_RANGE_SLACK = 1e-9


def _require_pure(rho1: DensityMatrix) -> None:
    p = purity(rho1)
    if abs(p - 1.0) > PURITY_TOL:
        raise NotPureError(p)


@dataclass(frozen=True)
class PseudoPureState:
    """The (eps, rho1) pair; ``density()`` yields the composed mixture."""

    epsilon: float
    rho1: DensityMatrix
    n_qubits: int = field(init=False)

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        _require_pure(self.rho1)
        object.__setattr__(self, "n_qubits", self.rho1.n_qubits)

    def density(self) -> DensityMatrix:
        return compose_pseudopure(self.epsilon, self.rho1)


@dataclass(frozen=True)
class PopulationVector:
    """Per-basis-state occupation; probabilities when ``normalized``."""

    counts: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        c = np.array(self.counts, dtype=float).reshape(-1)
        if c.size == 0:
            raise ValueError("population vector must not be empty")
        if (c < 0.0).any():
            raise ValueError(f"populations must be nonnegative, got min {c.min()}")
        if self.normalized:
            dev = abs(float(c.sum()) - 1.0)
            if dev > 1e-12:
                raise NotNormalizedError(dev, what="population vector")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)


class EpsilonEstimate(NamedTuple):
    """Extracted coefficient; ``out_of_model`` marks values outside [0, 1]."""

    epsilon: float
    out_of_model: bool


class AveragedState(NamedTuple):
    state: DensityMatrix
    epsilon: float


class NetSignal(NamedTuple):
    net_upward: float
    equivalent_pure_count: float


def compose_pseudopure(eps: float, rho1: DensityMatrix) -> DensityMatrix:
    """``(1 - eps) I/d + eps rho1`` for pure ``rho1`` and ``eps`` in [0, 1]."""
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {eps}")
    _require_pure(rho1)
    d = rho1.dim
    m = (1.0 - eps) * np.eye(d) / d + eps * rho1.matrix
    return validate_density(m, STRICT)


def extract_epsilon(rho: DensityMatrix, rho1: DensityMatrix) -> EpsilonEstimate:
    """Invert the mixture: ``eps = (d tr(rho rho1) - 1) / (d - 1)``.

    Exact left-inverse of :func:`compose_pseudopure` for states of that form.
    For other states the value is still returned, unclamped, with
    ``out_of_model`` set when it falls outside [0, 1].
    """
    if rho.dim != rho1.dim:
        raise DimMismatchError(f"state dims differ: {rho.dim} != {rho1.dim}")
    _require_pure(rho1)
    d = rho.dim
    overlap = float(np.trace(rho.matrix @ rho1.matrix).real)
    eps = (d * overlap - 1.0) / (d - 1.0)
    return EpsilonEstimate(eps, not -_RANGE_SLACK <= eps <= 1.0 + _RANGE_SLACK)


def exhaustive_average(p: PopulationVector, target_index: int) -> AveragedState:
    """Average diagonal populations over all permutations fixing one index.

    The non-target populations equalize at ``(1 - p_t) / (d - 1)``, so the
    result is exactly ``compose_pseudopure(eps, |target><target|)`` with
    ``eps = (d p_t - 1) / (d - 1)``.  ``eps`` is negative when the target
    population sits below the uniform background; that is reported, not
    raised.
    """
    if not p.normalized:
        raise NotNormalizedError(abs(float(p.counts.sum()) - 1.0), what="population vector (normalized flag required)")
    d = p.counts.size
    if not 0 <= target_index < d:
        raise IndexError(f"target index {target_index} out of range for {d} populations")
    p_t = float(p.counts[target_index])
    rest = (1.0 - p_t) / (d - 1)
    diag = np.full(d, rest)
    diag[target_index] = p_t
    state = validate_density(np.diag(diag).astype(complex), STRICT)
    eps = (d * p_t - 1.0) / (d - 1.0)
    return AveragedState(state, eps)


def net_signal(p: PopulationVector) -> NetSignal:
    """Net coil signal of a single-qubit ensemble with raw counts (n0, n1).

    Upward and downward transitions cancel pairwise; the remaining
    ``n0 - n1`` transitions are what a pure ensemble of that many particles
    would produce.
    """
    if p.counts.size != 2:
        raise ValueError(f"expected a single-qubit population pair, got length {p.counts.size}")
    n0, n1 = (float(x) for x in p.counts)
    return NetSignal(n0 - n1, abs(n0 - n1))


def snr_with_repetitions(eps: float, repetitions: int) -> float:
    """Relative signal-to-noise after averaging repeated runs.

    Model declaration, not a measured law: with independent identically
    distributed shot noise, averaging R repetitions scales SNR as
    ``eps * sqrt(R)``.
    """
    if eps < 0.0:
        raise ValueError(f"epsilon must be nonnegative, got {eps}")
    if repetitions < 1:
        raise ValueError(f"repetitions must be a positive integer, got {repetitions}")
    return eps * math.sqrt(repetitions)


def population_to_dict(p: PopulationVector) -> dict:
    return {"counts": [float(x) for x in p.counts], "normalized": bool(p.normalized)}


def population_from_dict(obj) -> PopulationVector:
    """Parse ``{"counts": [float, ...], "normalized": bool}``."""
    if not isinstance(obj, dict):
        raise ParseError("population document must be a JSON object")
    missing = {"counts", "normalized"} - obj.keys()
    if missing:
        raise ParseError(f"population document missing keys: {sorted(missing)}")
    counts = obj["counts"]
    if not isinstance(counts, list) or not counts:
        raise ParseError('"counts" must be a non-empty list')
    for x in counts:
        if isinstance(x, bool) or not isinstance(x, (int, float)):
            raise ParseError('"counts" entries must be numbers')
    if not isinstance(obj["normalized"], bool):
        raise ParseError('"normalized" must be a boolean')
    return PopulationVector(np.array(counts, dtype=float), obj["normalized"])

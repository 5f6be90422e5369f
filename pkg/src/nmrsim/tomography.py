"""Simulated quantum state tomography in the Pauli product basis.

The pipeline is: measure (or simulate with shot noise) all ``4^n``
expectation values ``<P> = tr(rho P)``, reconstruct by linear inversion
``rho = (1/d) sum_P <P> P``, then project the possibly unphysical result to
the closest unit-trace PSD matrix (Frobenius norm), which reduces to
projecting the eigenvalue vector onto the probability simplex.

Randomness contract: shot noise uses ``numpy.random.default_rng(seed)``
(the PCG64 generator, stable across platforms).  Each non-identity label, in
the canonical order produced by :func:`pauli_labels`, consumes exactly one
binomial draw of ``shots`` trials, so a fixed seed reproduces results
bit-for-bit.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from nmrsim.core import (
    PAULI_1Q,
    STRICT,
    DensityMatrix,
    hermiticity_defect,
    tensor,
    validate_density,
)
from nmrsim.errors import (
    BadTraceError,
    NotHermitianError,
    NotSquareError,
    NumericalFailureError,
    ParseError,
)

__all__ = [
    "MAX_QUBITS",
    "PauliExpectationSet",
    "ShotNoiseConfig",
    "pauli_labels",
    "pauli_matrix",
    "pauli_expectations",
    "simulate_shot_noise",
    "reconstruct_linear",
    "simplex_project",
    "project_psd",
    "expectations_to_dict",
    "expectations_from_dict",
]

MAX_QUBITS = 3
_PAULI_CHARS = "IXYZ"


def pauli_labels(n_qubits: int) -> list[str]:
    """All ``4^n`` Pauli product labels in canonical order ("II", "IX", ...).

    The leftmost character acts on qubit 1 (the first tensor factor).
    """
    return ["".join(t) for t in itertools.product(_PAULI_CHARS, repeat=n_qubits)]


@lru_cache(maxsize=None)
def pauli_matrix(label: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis named by ``label``."""
    if not label or any(ch not in _PAULI_CHARS for ch in label):
        raise ValueError(f"invalid Pauli label {label!r}")
    m = PAULI_1Q[label[0]]
    for ch in label[1:]:
        m = tensor(m, PAULI_1Q[ch])
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class PauliExpectationSet:
    """Complete set of Pauli product expectations for ``n_qubits`` qubits.

    Invariants: one value per label, the identity entry is exactly 1, and
    every magnitude is at most ``1 + 1e-12``.
    """

    n_qubits: int
    values: dict

    def __post_init__(self):
        if not 1 <= self.n_qubits <= MAX_QUBITS:
            raise ValueError(f"expectation sets support 1..{MAX_QUBITS} qubits, got {self.n_qubits}")
        expected = pauli_labels(self.n_qubits)
        values = dict(self.values)
        missing = [l for l in expected if l not in values]
        if missing:
            raise ValueError(f"incomplete expectation set: missing {missing[:8]}{'...' if len(missing) > 8 else ''}")
        extra = sorted(set(values) - set(expected))
        if extra:
            raise ValueError(f"unknown Pauli labels: {extra[:8]}")
        identity = "I" * self.n_qubits
        if values[identity] != 1.0:
            raise ValueError(f"identity expectation must be exactly 1, got {values[identity]}")
        for label in expected:
            v = float(values[label])
            if abs(v) > 1.0 + 1e-12:
                raise ValueError(f"expectation {label} = {v} exceeds magnitude 1")
            values[label] = v
        object.__setattr__(self, "values", {l: values[l] for l in expected})


@dataclass(frozen=True)
class ShotNoiseConfig:
    shots_per_observable: int
    seed: int

    def __post_init__(self):
        if self.shots_per_observable < 1:
            raise ValueError(f"shots must be >= 1, got {self.shots_per_observable}")


def _require_small(rho: DensityMatrix) -> None:
    if rho.n_qubits > MAX_QUBITS:
        raise ValueError(f"tomography supports at most {MAX_QUBITS} qubits, got {rho.n_qubits}")


def pauli_expectations(rho: DensityMatrix) -> PauliExpectationSet:
    """Noiseless expectations ``tr(rho P)`` for every Pauli product ``P``.

    The identity entry is pinned to 1 (it is the trace by definition); any
    imaginary residue beyond 1e-12 on the others is a numerical failure.
    """
    _require_small(rho)
    identity = "I" * rho.n_qubits
    values = {identity: 1.0}
    for label in pauli_labels(rho.n_qubits):
        if label == identity:
            continue
        t = complex(np.trace(rho.matrix @ pauli_matrix(label)))
        if abs(t.imag) > 1e-12:
            raise NumericalFailureError(f"expectation {label} has imaginary part {t.imag:.3e}")
        values[label] = float(t.real)
    return PauliExpectationSet(rho.n_qubits, values)


def simulate_shot_noise(rho: DensityMatrix, cfg: ShotNoiseConfig) -> PauliExpectationSet:
    """Replace each non-identity expectation by an empirical +-1 average.

    Each observable with true expectation ``t`` is sampled as ``shots``
    independent +-1 outcomes with ``P(+1) = (1 + t) / 2``; one binomial draw
    per observable in canonical label order.  Deterministic for a fixed seed.
    """
    exact = pauli_expectations(rho)
    rng = np.random.default_rng(cfg.seed)
    shots = cfg.shots_per_observable
    identity = "I" * rho.n_qubits
    values = {identity: 1.0}
    for label in pauli_labels(rho.n_qubits):
        if label == identity:
            continue
        p_up = min(max((1.0 + exact.values[label]) / 2.0, 0.0), 1.0)
        ups = int(rng.binomial(shots, p_up))
        values[label] = 2.0 * ups / shots - 1.0
    return PauliExpectationSet(rho.n_qubits, values)


def reconstruct_linear(e: PauliExpectationSet) -> np.ndarray:
    """Linear-inversion estimate ``(1/d) sum_P <P> P``.

    Hermitian by construction with trace 1 to round-off (the identity
    coefficient is pinned to 1); eigenvalues may be negative under noise, so
    follow with :func:`project_psd` when a physical state is required.
    """
    d = 1 << e.n_qubits
    acc = np.zeros((d, d), dtype=complex)
    for label in pauli_labels(e.n_qubits):
        acc += e.values[label] * pauli_matrix(label)
    return acc / d


def simplex_project(v) -> np.ndarray:
    """Euclidean projection of a real vector onto the probability simplex."""
    v = np.asarray(v, dtype=float)
    u = np.sort(v)[::-1]
    css = np.cumsum(u)
    ks = np.arange(1, v.size + 1)
    k = ks[u - (css - 1.0) / ks > 0][-1]
    tau = (css[k - 1] - 1.0) / k
    return np.maximum(v - tau, 0.0)


def project_psd(h) -> DensityMatrix:
    """Closest (Frobenius) unit-trace PSD matrix to a Hermitian ``h``.

    Eigendecomposes, projects the eigenvalue vector onto the probability
    simplex, and reassembles.  Idempotent; requires hermiticity and trace 1
    within 1e-9.
    """
    a = np.array(h, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise NotSquareError(f"expected a square matrix, got shape {a.shape}")
    herm = hermiticity_defect(a)
    if herm > 1e-9:
        raise NotHermitianError(herm)
    trace_dev = abs(complex(np.trace(a)) - 1.0)
    if trace_dev > 1e-9:
        raise BadTraceError(trace_dev)
    sym = (a + a.conj().T) / 2.0
    w, v = np.linalg.eigh(sym)
    w = simplex_project(w)
    out = (v * w) @ v.conj().T
    return validate_density(out, STRICT)


def expectations_to_dict(e: PauliExpectationSet) -> dict:
    return {"n_qubits": int(e.n_qubits), "values": {k: float(v) for k, v in e.values.items()}}


def expectations_from_dict(obj) -> PauliExpectationSet:
    """Parse ``{"n_qubits": int, "values": {"XX": float, ...}}``."""
    if not isinstance(obj, dict):
        raise ParseError("expectation document must be a JSON object")
    missing = {"n_qubits", "values"} - obj.keys()
    if missing:
        raise ParseError(f"expectation document missing keys: {sorted(missing)}")
    n = obj["n_qubits"]
    if isinstance(n, bool) or not isinstance(n, int):
        raise ParseError('"n_qubits" must be an integer')
    values = obj["values"]
    if not isinstance(values, dict):
        raise ParseError('"values" must be an object')
    for k, v in values.items():
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"expectation {k!r} must be a number")
    try:
        return PauliExpectationSet(n, {k: float(v) for k, v in values.items()})
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

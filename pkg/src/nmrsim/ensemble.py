"""Ensembles as preparation records: weighted lists of pure states.

Distinct physical preparations can share one density matrix while their
members carry completely different entanglement, so entanglement here is
always reported per member, never inferred from the averaged state.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from nmrsim.core import (
    STRICT,
    DensityMatrix,
    PureState,
    basis_state,
    bell_state,
    pure_state,
    validate_density,
)
from nmrsim.errors import DimMismatchError, NotNormalizedError, ParseError, WrongDimError

__all__ = [
    "PRODUCT_CONCURRENCE_TOL",
    "EnsembleHistory",
    "MemberEntanglement",
    "MemberEntanglementReport",
    "density_of",
    "same_density",
    "concurrence",
    "entanglement_report",
    "merge_histories",
    "uniform_computational_history",
    "uniform_bell_history",
    "history_to_dict",
    "history_from_dict",
]

# 2-qubit members with concurrence at or below this are reported as product.
PRODUCT_CONCURRENCE_TOL = 1e-10


@dataclass(frozen=True)
class EnsembleHistory:
    """Preparation record: positive weights summing to 1, same-dim members."""

    label: str
    members: tuple

    def __post_init__(self):
        members = tuple((float(w), psi) for w, psi in self.members)
        if not members:
            raise ValueError("a history needs at least one member")
        for w, _ in members:
            if w <= 0.0:
                raise ValueError(f"member weight {w} must be positive")
        total = sum(w for w, _ in members)
        if abs(total - 1.0) > 1e-12:
            raise NotNormalizedError(abs(total - 1.0), what="history weights")
        dims = {psi.dim for _, psi in members}
        if len(dims) != 1:
            raise DimMismatchError(f"members have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "members", members)

    @property
    def dim(self) -> int:
        return self.members[0][1].dim


class MemberEntanglement(NamedTuple):
    weight: float
    concurrence: float
    is_product: bool


@dataclass(frozen=True)
class MemberEntanglementReport:
    label: str
    members: tuple


def density_of(h: EnsembleHistory) -> DensityMatrix:
    """Weighted sum of member projectors; strict-valid by construction."""
    acc = np.zeros((h.dim, h.dim), dtype=complex)
    for w, psi in h.members:
        acc += w * psi.projector()
    return validate_density(acc, STRICT)


def same_density(h1: EnsembleHistory, h2: EnsembleHistory, tol: float) -> bool:
    """True iff the two histories average to the same matrix within ``tol``."""
    if h1.dim != h2.dim:
        raise DimMismatchError(f"history dims differ: {h1.dim} != {h2.dim}")
    diff = density_of(h1).matrix - density_of(h2).matrix
    return float(np.max(np.abs(diff))) <= tol


def concurrence(psi: PureState) -> float:
    """Entanglement of a 2-qubit pure state: 2|a d - b c| for amplitudes (a,b,c,d).

    0 for product states, 1 for maximally entangled ones; invariant under
    local basis changes.
    """
    if psi.dim != 4:
        raise WrongDimError(f"concurrence is defined for 2-qubit states, got dim {psi.dim}")
    a, b, c, d = psi.amplitudes
    return min(1.0, float(2.0 * abs(a * d - b * c)))


def entanglement_report(h: EnsembleHistory) -> MemberEntanglementReport:
    """Per-member concurrence table for a history of 2-qubit states."""
    if h.dim != 4:
        raise WrongDimError(f"entanglement reports need 2-qubit members, got dim {h.dim}")
    rows = tuple(
        MemberEntanglement(w, c, c <= PRODUCT_CONCURRENCE_TOL)
        for w, psi in h.members
        for c in (concurrence(psi),)
    )
    return MemberEntanglementReport(h.label, rows)


def merge_histories(h1: EnsembleHistory, h2: EnsembleHistory, weight: float, label: str = "") -> EnsembleHistory:
    """Mix two histories: ``weight`` of h1 and ``1 - weight`` of h2."""
    if not 0.0 < weight < 1.0:
        raise ValueError(f"mixing weight must lie strictly in (0, 1), got {weight}")
    if h1.dim != h2.dim:
        raise DimMismatchError(f"history dims differ: {h1.dim} != {h2.dim}")
    members = [(weight * w, psi) for w, psi in h1.members]
    members += [((1.0 - weight) * w, psi) for w, psi in h2.members]
    return EnsembleHistory(label or f"{weight:g}*({h1.label}) + {1 - weight:g}*({h2.label})", tuple(members))


def uniform_computational_history(n_qubits: int = 2) -> EnsembleHistory:
    """Equal parts of every computational basis state; averages to I/d."""
    d = 1 << n_qubits
    members = tuple((1.0 / d, basis_state(n_qubits, i)) for i in range(d))
    return EnsembleHistory("uniform computational-basis mixture", members)


def uniform_bell_history() -> EnsembleHistory:
    """Equal parts of the four Bell states; averages to the same I/4."""
    members = tuple((0.25, bell_state(kind)) for kind in ("phi+", "phi-", "psi+", "psi-"))
    return EnsembleHistory("uniform Bell-basis mixture", members)


def history_to_dict(h: EnsembleHistory) -> dict:
    return {
        "label": h.label,
        "members": [
            {
                "weight": float(w),
                "re": [float(x) for x in psi.amplitudes.real],
                "im": [float(x) for x in psi.amplitudes.imag],
            }
            for w, psi in h.members
        ],
    }


def history_from_dict(obj) -> EnsembleHistory:
    """Parse ``{"label": str, "members": [{"weight", "re", "im"}, ...]}``."""
    if not isinstance(obj, dict):
        raise ParseError("history document must be a JSON object")
    label = obj.get("label")
    if not isinstance(label, str):
        raise ParseError('history needs a string "label"')
    raw_members = obj.get("members")
    if not isinstance(raw_members, list) or not raw_members:
        raise ParseError('history needs a non-empty "members" list')
    members = []
    for i, entry in enumerate(raw_members):
        if not isinstance(entry, dict):
            raise ParseError(f"member {i} must be an object")
        missing = {"weight", "re", "im"} - entry.keys()
        if missing:
            raise ParseError(f"member {i} missing keys: {sorted(missing)}")
        w = entry["weight"]
        if isinstance(w, bool) or not isinstance(w, (int, float)):
            raise ParseError(f"member {i} weight must be a number")
        re, im = entry["re"], entry["im"]
        if not isinstance(re, list) or not isinstance(im, list) or len(re) != len(im):
            raise ParseError(f'member {i}: "re" and "im" must be equal-length lists')
        for part in (re, im):
            for x in part:
                if isinstance(x, bool) or not isinstance(x, (int, float)):
                    raise ParseError(f"member {i} has a non-numeric amplitude")
        amps = np.array(re, dtype=float) + 1j * np.array(im, dtype=float)
        members.append((float(w), pure_state(amps)))
    return EnsembleHistory(label, tuple(members))

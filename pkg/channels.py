"""
Single-qubit decoherence channels applied locally to both qubits.

Bit flip (BF) and generalized amplitude damping (GAD) in Kraus form, the
two-qubit map ρ -> Σ_ij (E_i⊗E_j) ρ (E_i⊗E_j)†, and the closed-form action of
each channel on Bell-diagonal correlation vectors.
"""

import enum
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from errors import ConfigError, OutOfRange, UnsupportedParameters
from linalg_core import pauli_matrices, trace_norm
from states import BellDiagonalCoeffs, bds_to_density

TRACE_PRESERVING_TOL = 1e-12
GAD_BELL_DIAGONAL_P = 0.5


class ChannelKind(enum.Enum):
    BIT_FLIP = "bf"
    GENERALIZED_AMPLITUDE_DAMPING = "gad"


@dataclass(frozen=True)
class ChannelSpec:
    """Channel identity, its parameters and its single-qubit Kraus set"""

    kind: ChannelKind
    p: float
    gamma: float
    kraus: Tuple[np.ndarray, ...]

    @property
    def label(self):
        if self.kind is ChannelKind.BIT_FLIP:
            return f"BF(p={self.p:g})"
        return f"GAD(gamma={self.gamma:g}, p={self.p:g})"

    def completeness_defect(self):
        """max |Σ E_k†E_k - I|"""
        accum = sum(k.conj().T @ k for k in self.kraus)
        return float(np.max(np.abs(accum - np.eye(2))))

    def is_trace_preserving(self, tol=TRACE_PRESERVING_TOL):
        return self.completeness_defect() < tol

    def two_qubit_kraus(self):
        """All E_i⊗E_j, stacked as (n², 4, 4)"""
        return np.stack([np.kron(a, b) for a in self.kraus for b in self.kraus])


def _check_probability(name, value):
    if not (0.0 <= value <= 1.0) or math.isnan(value):
        raise OutOfRange(f"{name} must be in [0, 1], got {value}")


def kraus_bf(p):
    """E0 = √(1-p/2)·I, E1 = √(p/2)·σx"""
    _check_probability("p", p)
    identity, sx, _, _ = pauli_matrices()
    kraus = (math.sqrt(1 - p / 2) * identity, math.sqrt(p / 2) * sx)
    return ChannelSpec(kind=ChannelKind.BIT_FLIP, p=p, gamma=0.0, kraus=kraus)


def kraus_gad(p, gamma):
    """Generalized amplitude damping with mixing p and damping γ"""
    _check_probability("p", p)
    _check_probability("gamma", gamma)
    sp, sq = math.sqrt(p), math.sqrt(1 - p)
    keep, decay = math.sqrt(1 - gamma), math.sqrt(gamma)
    kraus = (
        sp * np.array([[1, 0], [0, keep]], dtype=np.complex128),
        sp * np.array([[0, decay], [0, 0]], dtype=np.complex128),
        sq * np.array([[keep, 0], [0, 1]], dtype=np.complex128),
        sq * np.array([[0, 0], [decay, 0]], dtype=np.complex128),
    )
    return ChannelSpec(kind=ChannelKind.GENERALIZED_AMPLITUDE_DAMPING, p=p, gamma=gamma, kraus=kraus)


def default_mixing(kind):
    """p used when none is given: 0 for BF, 1/2 for GAD"""
    if (kind or "").lower() == ChannelKind.GENERALIZED_AMPLITUDE_DAMPING.value:
        return GAD_BELL_DIAGONAL_P
    return 0.0


def channel_from_name(kind, p=None, gamma=0.0):
    """Build a ChannelSpec from CLI words; 'none' gives None, p=None takes default_mixing"""
    kind = (kind or "none").lower()
    if kind == "none":
        return None
    if p is None:
        p = default_mixing(kind)
    if kind == ChannelKind.BIT_FLIP.value:
        return kraus_bf(p)
    if kind == ChannelKind.GENERALIZED_AMPLITUDE_DAMPING.value:
        return kraus_gad(p, gamma)
    raise ConfigError(f"unknown channel '{kind}' (expected none, bf or gad)")


def apply_channel(rho, ch):
    """Σ_ij (E_i⊗E_j) ρ (E_i†⊗E_j†) on one state or a stack (..., 4, 4).

    The dagger is applied to both tensor factors; conjugating only the second
    factor would not preserve the trace.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    if ch is None:
        return rho.copy()
    ops = ch.two_qubit_kraus()
    return np.einsum("kab,...bc,kdc->...ad", ops, rho, ops.conj())


def evolve_coeffs(c, ch):
    """Correlation vector after the channel acts on both qubits.

    BF:  (c1, c2(1-p)², c3(1-p)²)
    GAD: (c1(1-γ), c2(1-γ), c3(1-γ)²), only at p = 1/2
    """
    if ch is None:
        return c
    if ch.kind is ChannelKind.BIT_FLIP:
        shrink = (1 - ch.p) ** 2
        return BellDiagonalCoeffs(c.c1, c.c2 * shrink, c.c3 * shrink)
    if ch.p != GAD_BELL_DIAGONAL_P:
        raise UnsupportedParameters(
            f"GAD keeps the state Bell-diagonal only at p = 1/2, got p = {ch.p}"
        )
    keep = 1 - ch.gamma
    return BellDiagonalCoeffs(c.c1 * keep, c.c2 * keep, c.c3 * keep ** 2)


def verify_channel_consistency(c, ch):
    """Trace distance between the Kraus evolution and the coefficient map"""
    evolved = evolve_coeffs(c, ch)
    brute = apply_channel(bds_to_density(c), ch)
    return trace_norm(brute - bds_to_density(evolved))

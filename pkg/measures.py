"""
Correlation quantifiers for two-qubit states.

Entanglement: Wootters concurrence, plus closed forms for the XXX Gibbs state.
Entropic discord: closed form for Bell-diagonal states and a numerical
optimisation over projective measurements on qubit B for any state.
1-norm geometric discord: the Bell-diagonal median and a numerical
minimisation of the trace distance to classical-quantum states.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import entr

from errors import ConsistencyError
from linalg_core import (
    density_spectrum, hermitian_eig, kron, partial_trace, pauli_matrices,
    shannon_entropy, von_neumann_entropy,
)
from optimizer import angle_grid, multistart_minimize, random_angles, unit_vectors
from states import thermal_coefficient

log = logging.getLogger(__name__)

DISCORD_CLAMP = 1e-8
MUTUAL_INFO_CLAMP = 1e-10
BLOCH_STEP = 0.05

_PAULIS = pauli_matrices()
_I2 = _PAULIS[0]
_SIGMA = np.stack(_PAULIS[1:])
_SPIN_FLIP = kron(_PAULIS[2], _PAULIS[2])
_PAULI_PRODUCTS = np.einsum("iab,jcd->ijacbd", np.stack(_PAULIS), np.stack(_PAULIS)).reshape(4, 4, 4, 4)


@dataclass(frozen=True)
class MeasurementBasis:
    """Projectors B± = (I ± n·σ)/2 along n = (sinθ cosφ, sinθ sinφ, cosθ)"""

    theta: float
    phi: float

    @classmethod
    def from_vector(cls, n):
        n = np.asarray(n, dtype=np.float64)
        n = n / np.linalg.norm(n)
        theta = math.acos(min(1.0, max(-1.0, float(n[2]))))
        phi = math.atan2(float(n[1]), float(n[0])) % (2 * math.pi)
        return cls(theta=theta, phi=phi)

    def direction(self):
        return unit_vectors([self.theta, self.phi])[0]

    def projectors(self):
        n_sigma = np.einsum("i,ijk->jk", self.direction(), _SIGMA)
        return (_I2 + n_sigma) / 2, (_I2 - n_sigma) / 2


def _bloch_operator(r):
    return (_I2 + np.einsum("i,ijk->jk", r, _SIGMA)) / 2


def _bloch_vector(m):
    return np.real(np.einsum("jk,ikj->i", m, _SIGMA))


@dataclass(frozen=True)
class ClassicalQuantumState:
    """q·Π₊⊗σ₀ + (1-q)·Π₋⊗σ₁ with Π± measured on qubit A"""

    basis: MeasurementBasis
    q: float
    bloch0: tuple
    bloch1: tuple

    @classmethod
    def from_parameters(cls, x):
        """Decode the 9 search coordinates (θ, φ, q, r0, r1) into a valid state"""
        x = np.asarray(x, dtype=np.float64)
        r0, r1 = x[3:6], x[6:9]
        r0 = r0 / max(1.0, float(np.linalg.norm(r0)))
        r1 = r1 / max(1.0, float(np.linalg.norm(r1)))
        return cls(basis=MeasurementBasis(float(x[0]), float(x[1])),
                   q=min(1.0, max(0.0, float(x[2]))),
                   bloch0=tuple(r0), bloch1=tuple(r1))

    def density(self):
        plus, minus = self.basis.projectors()
        return (self.q * np.kron(plus, _bloch_operator(self.bloch0))
                + (1 - self.q) * np.kron(minus, _bloch_operator(self.bloch1)))


# Concurrence

def concurrence_margin(rho):
    """Signed √λ₁ - √λ₂ - √λ₃ - √λ₄ over the eigenvalues of ρ(σy⊗σy)ρ*(σy⊗σy).

    The eigenvalues are taken from √ρ ρ̃ √ρ, which is Hermitian and shares
    the spectrum of ρρ̃. Conjugation is in the standard basis.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    density_spectrum(rho)
    spectrum = hermitian_eig((rho + rho.conj().T) / 2)
    root = (spectrum.eigenvectors * np.sqrt(np.clip(spectrum.eigenvalues, 0, None))) @ spectrum.eigenvectors.conj().T
    flipped = _SPIN_FLIP @ rho.conj() @ _SPIN_FLIP
    r = root @ flipped @ root
    lam = hermitian_eig((r + r.conj().T) / 2).eigenvalues
    s = np.sqrt(np.clip(lam, 0, None))
    return float(s[0] - s[1] - s[2] - s[3])


def concurrence(rho):
    """Wootters concurrence max{0, √λ₁ - √λ₂ - √λ₃ - √λ₄}"""
    return min(1.0, max(0.0, concurrence_margin(rho)))


def concurrence_bds(c):
    """2·max(0, p_max - 1/2) for a Bell-diagonal state"""
    c.require_physical()
    return min(1.0, max(0.0, 2 * float(c.bell_weights().max()) - 1))


def concurrence_xxx_analytic(alpha):
    """max(0, (e^α sinh 2α - e^{-α}) / (e^α cosh 2α + e^{-α})), overflow-free"""
    if alpha >= 0:
        e = math.exp(-4 * alpha)
        value = (1 - 3 * e) / (1 + 3 * e)
    else:
        e = math.exp(4 * alpha)
        value = (e - 3) / (e + 3)
    return max(0.0, value)


def _thermal_pieces(alpha):
    # (2/Z) e^α sinh 2α = -c and (4/Z) e^{-α} - 1 = c for the Werner value c
    c = thermal_coefficient(alpha)
    return -c, c


def concurrence_bf_analytic(alpha, p):
    """Transcribed closed form for the BF-evolved XXX state, comparison only.

    2·max{0, |(2/Z) e^α sinh 2α (1 + (1+p)²)| - (1 + ((4/Z) e^{-α} - 1)(1-p)²)}
    kept exactly as printed, including the (1+p)² factor. The authoritative
    value is concurrence(apply_channel(...)).
    """
    sinh_term, cosh_term = _thermal_pieces(alpha)
    return 2 * max(0.0, abs(sinh_term * (1 + (1 + p) ** 2)) - (1 + cosh_term * (1 - p) ** 2))


def concurrence_gad_analytic(alpha, gamma):
    """Transcribed closed form for the GAD-evolved XXX state, comparison only.

    2·max{0, |(4/Z) e^α sinh 2α (1-γ)| - (1 + ((4/Z) e^{-α} - 1)(1-γ)²)}
    with the unbalanced bracket closed at the end.
    """
    sinh_term, cosh_term = _thermal_pieces(alpha)
    return 2 * max(0.0, abs(2 * sinh_term * (1 - gamma)) - (1 + cosh_term * (1 - gamma) ** 2))


# Entropic discord

def mutual_information(rho):
    """S(ρ_A) + S(ρ_B) - S(ρ_AB)"""
    value = (von_neumann_entropy(partial_trace(rho, "A"))
             + von_neumann_entropy(partial_trace(rho, "B"))
             - von_neumann_entropy(rho))
    if value < -MUTUAL_INFO_CLAMP:
        raise ConsistencyError(f"negative mutual information {value:.3e}")
    return max(0.0, value)


def mutual_information_bds(c):
    """2 - H(Bell weights); both marginals are maximally mixed"""
    c.require_physical()
    return max(0.0, 2.0 - shannon_entropy(np.clip(c.bell_weights(), 0, None)))


def classical_correlation_bds(c):
    """1 - h((1 + c)/2) with c = max|c_i|"""
    c.require_physical()
    c_max = min(1.0, float(np.max(np.abs(c.as_array()))))
    return 1.0 - shannon_entropy([(1 + c_max) / 2, (1 - c_max) / 2])


def qd_bds(c):
    """Closed-form discord of a Bell-diagonal state.

    Equal to ¼ Σ_k x_k log₂ x_k - [(1-c)/2 log₂(1-c) + (1+c)/2 log₂(1+c)]
    with x_k = 4·(Bell weight k) and c = max|c_i|.
    """
    value = mutual_information_bds(c) - classical_correlation_bds(c)
    return min(1.0, max(0.0, value))


def pauli_tensor(rho):
    """Real 4x4 R_ij = Tr[ρ σ_i⊗σ_j], i, j over (I, σx, σy, σz)"""
    rho = np.asarray(rho, dtype=np.complex128)
    return np.real(np.einsum("ijab,ba->ij", _PAULI_PRODUCTS, rho))


def conditional_entropy(rho, directions, tensor=None):
    """Σ_k P_k S(ρ^k) after measuring qubit B along each direction in an (N, 3) array.

    The post-measurement state is ρ_A^k ⊗ |k><k|, so only the conditional Bloch
    vector of A is needed: r± = (a ± T n) / (1 ± b·n), P± = (1 ± b·n)/2.
    """
    r = pauli_tensor(rho) if tensor is None else tensor
    a, b, t = r[1:, 0], r[0, 1:], r[1:, 1:]
    n = np.atleast_2d(directions)
    bn = n @ b
    tn = n @ t.T

    total = np.zeros(len(n))
    for sign in (1.0, -1.0):
        weight = (1 + sign * bn) / 2
        safe = np.where(weight > 1e-15, weight, 1.0)
        radius = np.linalg.norm(a + sign * tn, axis=1) / (2 * safe)
        radius = np.clip(radius, 0.0, 1.0)
        u = (1 + radius) / 2
        entropy = (entr(u) + entr(1 - u)) / math.log(2)
        total += np.where(weight > 1e-15, weight * entropy, 0.0)
    return total


def classical_correlation(rho, cfg):
    """max over projective measurements on B of S(ρ_A) - Σ_k P_k S(ρ^k).

    Returns (value, argmax basis). Deterministic for a given cfg.seed.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    density_spectrum(rho)
    tensor = pauli_tensor(rho)
    s_a = von_neumann_entropy(partial_trace(rho, "A"))

    grid = angle_grid(cfg.grid_resolution)
    grid_values = conditional_entropy(rho, unit_vectors(grid), tensor)
    starts = [grid[int(np.argmin(grid_values))]]
    starts.extend(random_angles(cfg.rng(), cfg.restarts - 1))

    def objective(points):
        return conditional_entropy(rho, unit_vectors(points), tensor)

    best, s_min = multistart_minimize(objective, starts, math.pi / cfg.grid_resolution, cfg, batched=True)
    basis = MeasurementBasis.from_vector(unit_vectors(best)[0])
    return max(0.0, s_a - s_min), basis


def qd_numeric(rho, cfg):
    """Mutual information minus optimised classical correlation"""
    value = mutual_information(rho) - classical_correlation(rho, cfg)[0]
    if value < 0:
        if value < -DISCORD_CLAMP:
            raise ConsistencyError(f"discord came out at {value:.3e}; optimiser overshoot")
        value = 0.0
    return value


# 1-norm geometric discord

def gqd1_bds(c):
    """Median of |c1|, |c2|, |c3|"""
    c.require_physical()
    return float(np.sort(np.abs(c.as_array()))[1])


def _distance(rho, x):
    diff = rho - ClassicalQuantumState.from_parameters(x).density()
    return float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


def _dephased_parameters(rho, angles):
    """Search coordinates of the state obtained by measuring A along the given angles"""
    basis = MeasurementBasis(float(angles[0]), float(angles[1]))
    x = np.zeros(9)
    x[:2] = angles
    for index, proj in enumerate(basis.projectors()):
        block = partial_trace(np.kron(proj, _I2) @ rho, "B")
        weight = float(np.real(np.trace(block)))
        if index == 0:
            x[2] = weight
        if weight > 1e-15:
            x[3 + 3 * index:6 + 3 * index] = _bloch_vector(block / weight)
    return x


def closest_classical_quantum(rho, cfg):
    """Minimise ‖ρ - ρ_c‖₁ over classical-quantum ρ_c; returns (distance, state).

    Every candidate is a genuine classical-quantum state, so the distance is
    an upper bound on the true minimum.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    density_spectrum(rho)

    grid = angle_grid(cfg.grid_resolution)
    seeds = [_dephased_parameters(rho, angles) for angles in grid]
    grid_values = [_distance(rho, x) for x in seeds]
    starts = [seeds[int(np.argmin(grid_values))]]
    starts.extend(_dephased_parameters(rho, angles)
                  for angles in random_angles(cfg.rng(), cfg.restarts - 1))

    angle_step = math.pi / cfg.grid_resolution
    step = np.array([angle_step, angle_step] + [BLOCH_STEP] * 7)
    best, value = multistart_minimize(lambda x: _distance(rho, x), starts, step, cfg)
    log.debug("closest classical-quantum distance %.15g", value)
    return value, ClassicalQuantumState.from_parameters(best)


def gqd1_numeric(rho, cfg):
    """1-norm geometric discord by direct minimisation"""
    return closest_classical_quantum(rho, cfg)[0]

"""
Two-qubit states: the XXX Heisenberg Gibbs state and the Bell-diagonal family.
Units are k = ħ = 1, so T is an energy and α = J / (4T) is dimensionless.
"""

import math
from dataclasses import dataclass

import numpy as np

from errors import InvalidTemperature, UnphysicalCoefficients
from linalg_core import hermitian_eig, kron, pauli_matrices, trace_norm

PHYSICAL_TOL = 1e-12
BELL_ORDER = ("psi-", "phi-", "phi+", "psi+")

_I2, _SX, _SY, _SZ = pauli_matrices()
_CORRELATORS = (kron(_SX, _SX), kron(_SY, _SY), kron(_SZ, _SZ))
_IDENTITY4 = np.eye(4, dtype=np.complex128)


@dataclass(frozen=True)
class BellDiagonalCoeffs:
    """Correlation vector (c1, c2, c3) of ρ = ¼[I⊗I + Σ c_i σ_i⊗σ_i]"""

    c1: float
    c2: float
    c3: float

    def as_array(self):
        return np.array([self.c1, self.c2, self.c3], dtype=np.float64)

    def bell_weights(self):
        return bell_eigenvalues(self)

    def is_physical(self, tol=PHYSICAL_TOL):
        return bool(np.all(self.bell_weights() >= -tol))

    def require_physical(self):
        """Raise UnphysicalCoefficients when a Bell weight is negative"""
        weights = self.bell_weights()
        if np.any(weights < -PHYSICAL_TOL):
            worst = BELL_ORDER[int(np.argmin(weights))]
            raise UnphysicalCoefficients(
                f"({self.c1:.6g}, {self.c2:.6g}, {self.c3:.6g}) gives weight "
                f"{weights.min():.3e} on {worst}"
            )
        return self


def bell_eigenvalues(c):
    """Bell-basis weights in the order (ψ⁻, φ⁻, φ⁺, ψ⁺)"""
    c1, c2, c3 = c.c1, c.c2, c.c3
    return np.array([
        (1 - c1 - c2 - c3) / 4,
        (1 - c1 + c2 + c3) / 4,
        (1 + c1 - c2 + c3) / 4,
        (1 + c1 + c2 - c3) / 4,
    ], dtype=np.float64)


def coeffs_from_bell_weights(weights):
    """Inverse of bell_eigenvalues"""
    w_psim, w_phim, w_phip, w_psip = (float(x) for x in weights)
    return BellDiagonalCoeffs(
        c1=w_phip + w_psip - w_psim - w_phim,
        c2=w_phim + w_psip - w_psim - w_phip,
        c3=w_phim + w_phip - w_psim - w_psip,
    )


def random_bds(rng):
    """Uniform sample over the physical tetrahedron"""
    return coeffs_from_bell_weights(rng.dirichlet(np.ones(4)))


def _bds_matrix(c1, c2, c3):
    return (_IDENTITY4 + c1 * _CORRELATORS[0] + c2 * _CORRELATORS[1] + c3 * _CORRELATORS[2]) / 4


def bds_density_stack(coefficients):
    """(N, 3) correlation vectors to an (N, 4, 4) stack of matrices, unchecked"""
    c = np.atleast_2d(np.asarray(coefficients, dtype=np.float64))
    return (_IDENTITY4 + np.einsum("ni,ijk->njk", c, np.stack(_CORRELATORS))) / 4


def bds_to_density(c):
    """¼[I⊗I + Σ c_i σ_i⊗σ_i] for physical coefficients"""
    c.require_physical()
    return _bds_matrix(c.c1, c.c2, c.c3)


def density_to_bds(rho):
    """Project onto the Bell-diagonal family; returns (coeffs, residual).

    c_i = Tr[ρ σ_i⊗σ_i]. The residual is the trace norm of what the projection
    discards, so callers can tell a Bell-diagonal input (residual ~ 0) from one
    that is not. It never raises on non-Bell-diagonal input.
    """
    rho = np.asarray(rho, dtype=np.complex128)
    values = [float(np.real(np.trace(rho @ corr))) for corr in _CORRELATORS]
    coeffs = BellDiagonalCoeffs(*values)
    residual = trace_norm(rho - _bds_matrix(*values))
    return coeffs, residual


# XXX chain

def xxx_hamiltonian(J):
    """(J/4)(σx⊗σx + σy⊗σy + σz⊗σz); triplet at J/4, singlet at -3J/4"""
    return (J / 4) * (_CORRELATORS[0] + _CORRELATORS[1] + _CORRELATORS[2])


def thermal_coefficient(alpha):
    """Werner value c = (e^{-α} - e^{3α}) / (3e^{-α} + e^{3α}), overflow-free"""
    if alpha >= 0:
        e = math.exp(-4 * alpha)
        return (e - 1) / (3 * e + 1)
    e = math.exp(4 * alpha)
    return (1 - e) / (3 + e)


def _thermal_weights(alpha):
    """(triplet weight per state, singlet weight), each divided by Z"""
    if alpha >= 0:
        e = math.exp(-4 * alpha)
        return e / (3 * e + 1), 1 / (3 * e + 1)
    e = math.exp(4 * alpha)
    return 1 / (3 + e), e / (3 + e)


def log_partition(alpha):
    """ln Z with Z = 2(e^{-α} + e^{α} cosh 2α) = 3e^{-α} + e^{3α}"""
    if alpha >= 0:
        return 3 * alpha + math.log1p(3 * math.exp(-4 * alpha))
    return -alpha + math.log(3 + math.exp(4 * alpha))


@dataclass(frozen=True)
class ThermalState:
    J: float
    T: float
    alpha: float
    rho: np.ndarray
    coeffs: BellDiagonalCoeffs
    Z: float
    log_partition: float


def thermal_xxx(J, T):
    """Gibbs state exp(-H/T)/Z of the two-site XXX chain without field"""
    if not (math.isfinite(T) and T > 0):
        raise InvalidTemperature(f"temperature must be finite and > 0, got {T}")
    if not math.isfinite(J):
        raise InvalidTemperature(f"coupling must be finite, got {J}")

    alpha = J / (4 * T)
    w_t, w_s = _thermal_weights(alpha)

    rho = np.zeros((4, 4), dtype=np.complex128)
    rho[0, 0] = rho[3, 3] = w_t
    rho[1, 1] = rho[2, 2] = (w_s + w_t) / 2
    rho[1, 2] = rho[2, 1] = -(w_s - w_t) / 2

    c = thermal_coefficient(alpha)
    ln_z = log_partition(alpha)
    try:
        z = math.exp(ln_z)
    except OverflowError:
        z = math.inf

    return ThermalState(J=J, T=T, alpha=alpha, rho=rho,
                        coeffs=BellDiagonalCoeffs(c, c, c), Z=z, log_partition=ln_z)


def gibbs_state(hamiltonian, T):
    """exp(-H/T)/Z from the spectrum of H, shifted by the ground energy"""
    if not (math.isfinite(T) and T > 0):
        raise InvalidTemperature(f"temperature must be finite and > 0, got {T}")
    spectrum = hermitian_eig(hamiltonian)
    energies = spectrum.eigenvalues
    weights = np.exp(-(energies - energies.min()) / T)
    weights /= weights.sum()
    v = spectrum.eigenvectors
    return (v * weights) @ v.conj().T

"""
Dense complex linear algebra for one- and two-qubit operators.
Tensor products, partial trace, Hermitian eigendecomposition, trace norm and entropy.
"""

import math
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt
from scipy.special import entr

from errors import BadDimension, NotDensityMatrix, NotHermitian

ComplexMatrix = npt.NDArray[np.complex128]

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
NEGATIVE_EIG_TOL = 1e-10
JACOBI_TOL = 1e-14

SUBSYSTEMS = ("A", "B")


def pauli_matrices():
    """Return (I, σx, σy, σz) as 2x2 complex arrays"""
    identity = np.eye(2, dtype=np.complex128)
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    return identity, sx, sy, sz


def bell_states():
    """Bell kets in the standard basis |00>,|01>,|10>,|11>, keyed by name"""
    s = 1 / math.sqrt(2)
    return {
        "phi+": np.array([s, 0, 0, s], dtype=np.complex128),
        "phi-": np.array([s, 0, 0, -s], dtype=np.complex128),
        "psi+": np.array([0, s, s, 0], dtype=np.complex128),
        "psi-": np.array([0, s, -s, 0], dtype=np.complex128),
    }


def projector(ket):
    """|ψ><ψ| for a ket given as a 1-D array"""
    ket = np.asarray(ket, dtype=np.complex128)
    return np.outer(ket, ket.conj())


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted descending; column i of eigenvectors pairs with eigenvalue i."""

    eigenvalues: npt.NDArray[np.float64]
    eigenvectors: ComplexMatrix

    def reconstruct(self):
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m):
    """Coerce to a square complex128 array, raising BadDimension otherwise"""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise BadDimension(f"expected a square matrix, got shape {m.shape}")
    return m


def hermiticity_defect(m):
    """max |M - M†| entrywise"""
    return float(np.max(np.abs(m - m.conj().T)))


def kron(a, b):
    """Kronecker product with standard block ordering"""
    return np.kron(as_matrix(a), as_matrix(b))


def hermitian_eig(m, method="lapack"):
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    method="lapack" calls numpy.linalg.eigh; method="jacobi" runs the cyclic
    Jacobi solver below. Both return the same Spectrum contract.
    """
    m = as_matrix(m)
    defect = hermiticity_defect(m)
    if defect >= HERMITIAN_TOL:
        raise NotHermitian(f"|M - M^dagger|_max = {defect:.3e}")

    if method == "lapack":
        values, vectors = np.linalg.eigh(m)
    elif method == "jacobi":
        values, vectors = jacobi_eigh(m)
    else:
        raise ValueError(f"unknown eigensolver '{method}'")

    order = np.argsort(values, kind="stable")[::-1]
    return Spectrum(eigenvalues=np.asarray(values[order], dtype=np.float64),
                    eigenvectors=np.ascontiguousarray(vectors[:, order]))


def jacobi_eigh(m, tol=JACOBI_TOL, max_sweeps=60):
    """Cyclic complex Jacobi rotations; returns (eigenvalues, eigenvectors) unsorted.

    Each (p, q) pivot is first made real by a phase on column q, then zeroed
    with the classical real rotation. Stops when the off-diagonal Frobenius
    mass drops below tol.
    """
    a = as_matrix(m).copy()
    a = (a + a.conj().T) / 2
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)

    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                if mag < 1e-300:
                    continue
                phase = g / mag
                app = a[p, p].real
                aqq = a[q, q].real
                phi = (aqq - app) / (2.0 * mag)
                t = 1.0 / (abs(phi) + math.sqrt(phi * phi + 1.0))
                if phi < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c

                u = np.eye(n, dtype=np.complex128)
                u[p, p] = c
                u[p, q] = s
                u[q, p] = -s * np.conj(phase)
                u[q, q] = c * np.conj(phase)
                a = u.conj().T @ a @ u
                v = v @ u

    return np.real(np.diag(a)).copy(), v


def partial_trace(rho, keep):
    """Reduced 2x2 state of a two-qubit operator, keeping subsystem 'A' or 'B'"""
    rho = as_matrix(rho)
    if rho.shape != (4, 4):
        raise BadDimension(f"partial trace needs a 4x4 operator, got {rho.shape}")
    t = rho.reshape(2, 2, 2, 2)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"subsystem must be one of {SUBSYSTEMS}, got {keep!r}")


def trace_norm(m):
    """Sum of singular values; Σ|λ| through eigvalsh when M is Hermitian"""
    m = as_matrix(m)
    if hermiticity_defect(m) < HERMITIAN_TOL:
        return float(np.sum(np.abs(np.linalg.eigvalsh(m))))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def density_spectrum(rho):
    """Validated, clamped eigenvalues of a density matrix"""
    rho = as_matrix(rho)
    if hermiticity_defect(rho) >= HERMITIAN_TOL:
        raise NotDensityMatrix("density matrix is not Hermitian")
    trace = np.trace(rho).real
    if abs(trace - 1.0) > TRACE_TOL:
        raise NotDensityMatrix(f"trace is {trace:.12g}, expected 1")
    values = np.linalg.eigvalsh(rho)
    if values.min() < -NEGATIVE_EIG_TOL:
        raise NotDensityMatrix(f"negative eigenvalue {values.min():.3e}")
    return np.clip(values, 0.0, None)


def shannon_entropy(probabilities):
    """-Σ p log2 p with 0·log 0 = 0"""
    return float(np.sum(entr(np.asarray(probabilities, dtype=np.float64))) / math.log(2))


def von_neumann_entropy(rho):
    """S(ρ) = -Tr ρ log2 ρ"""
    return shannon_entropy(density_spectrum(rho))


def random_density_matrix(dim, rng, rank=None):
    """Ginibre-distributed mixed state, used for property fuzzing"""
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real

"""Dirac matrices in the standard representation and the 1D dipole Hamiltonian.

Matrices are plain ``(4, 4)`` complex numpy arrays.  The Hamiltonian in
natural units (``mc^2 = c = 1``) is assembled as

    H = p*alpha_x + beta + pi*(i beta alpha_x) + delta*(beta Sigma_x)

which is the dipole Hamiltonian with the EDM and MDM terms collected into the
cross coupling ``pi`` and the interaction energy ``delta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteInput
from .quantities import NaturalParams

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (PAULI_X, PAULI_Y, PAULI_Z)

I2 = np.eye(2, dtype=complex)
Z2 = np.zeros((2, 2), dtype=complex)
I4 = np.eye(4, dtype=complex)


def _blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


def alpha(k: int) -> np.ndarray:
    """alpha_k = [[0, sigma_k], [sigma_k, 0]] for k in 0, 1, 2 (x, y, z)."""
    return _blocks(Z2, PAULI[k], PAULI[k], Z2)


def sigma_big(k: int) -> np.ndarray:
    """Sigma_k = diag(sigma_k, sigma_k); the spin operator is Sigma_k / 2."""
    return _blocks(PAULI[k], Z2, Z2, PAULI[k])


def spin_from_alpha_cross() -> list:
    """The spin vector S = -(i/4) alpha x alpha, evaluated by brute force.

    (alpha x alpha)_k = sum_ij eps_kij alpha_i alpha_j with the operator
    products kept in order.
    """
    a = [alpha(k) for k in range(3)]
    spin = []
    for k in range(3):
        acc = np.zeros((4, 4), dtype=complex)
        for i in range(3):
            for j in range(3):
                eps = _levi_civita(k, i, j)
                if eps:
                    acc += eps * (a[i] @ a[j])
        spin.append(-0.25j * acc)
    return spin


def _levi_civita(i, j, k):
    return (i - j) * (j - k) * (k - i) // 2


@dataclass(frozen=True)
class DiracBasis:
    alpha_x: np.ndarray
    beta: np.ndarray
    sigma_x_big: np.ndarray

    @property
    def spin_x(self) -> np.ndarray:
        return 0.5 * self.sigma_x_big

    @property
    def i_beta_alpha(self) -> np.ndarray:
        return 1j * self.beta @ self.alpha_x

    @property
    def beta_sigma(self) -> np.ndarray:
        return self.beta @ self.sigma_x_big


def standard_basis() -> DiracBasis:
    beta = _blocks(I2, Z2, Z2, -I2)
    basis = DiracBasis(alpha_x=alpha(0), beta=beta, sigma_x_big=sigma_big(0))
    for m in (basis.alpha_x, basis.beta, basis.sigma_x_big):
        m.setflags(write=False)
    return basis


_BASIS = standard_basis()


def build_hamiltonian(params: NaturalParams, basis: DiracBasis = _BASIS) -> np.ndarray:
    """Hamiltonian in units of mc^2 for the given natural parameters."""
    p, pi, delta = params.p_tilde, params.pi_tilde, params.delta_tilde
    if not all(math.isfinite(x) for x in (p, pi, delta)):
        raise NonFiniteInput(f"non-finite Hamiltonian inputs p={p!r}, pi={pi!r}, delta={delta!r}")
    return (p * basis.alpha_x + basis.beta
            + pi * basis.i_beta_alpha + delta * basis.beta_sigma)


def build_hamiltonian_si(momentum, mass, mdm, edm, e_field, b_field, c,
                         basis: DiracBasis = _BASIS) -> np.ndarray:
    """Hamiltonian in joules, assembled term by term from the dipole couplings.

        H = c alpha p + beta m c^2 + d (i beta alpha B c + 2 beta S E)
                                   + mu (i beta alpha E / c - 2 beta S B)
    """
    a, b, s = basis.alpha_x, basis.beta, basis.spin_x
    h = c * momentum * a + mass * c**2 * b
    h = h + edm * (1j * b @ a * b_field * c + 2 * b @ s * e_field)
    h = h + mdm * (1j * b @ a * e_field / c - 2 * b @ s * b_field)
    return h


def hermiticity_defect(m) -> float:
    """Largest entry of the anti-Hermitian part (M - M^dagger)/2."""
    m = np.asarray(m)
    return float(np.max(np.abs(m - m.conj().T)) / 2)


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a

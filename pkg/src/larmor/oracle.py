"""Numerical diagonalisation of the Hamiltonian, independent of the closed form.

The eigensolver is a cyclic Jacobi method for complex Hermitian matrices.
Each rotation first removes the phase of the pivot a_pq with a diagonal
unitary and then applies an ordinary real Jacobi rotation, so the combined
2x2 transform is

    G = [[c,            s           ],
         [-s*exp(-i*phi), c*exp(-i*phi)]]

with a_pq = |a_pq| exp(i*phi).  It is vectorised over a leading batch axis so
that thousands of 4x4 problems can be solved at once.

After diagonalisation, degenerate clusters are rotated into Sigma_x
eigenvectors (H commutes with Sigma_x) and every level gets a branch (+/-)
and spin (up/down) label.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dirac import DiracBasis, build_hamiltonian, hermiticity_defect, standard_basis
from .errors import AmbiguousLabeling, NoConvergence, NonFiniteInput, NotHermitian
from .quantities import NaturalParams

MAX_SWEEPS = 100
CONVERGENCE_RTOL = 1e-14
HERMITIAN_TOL = 1e-12
CLUSTER_RTOL = 1e-9
LABEL_TOL = 1e-6
TINY_PIVOT = 1e-280


@dataclass(frozen=True)
class EigenSystem:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray  # columns aligned with eigenvalues
    residual: float
    sweeps: int = 0


@dataclass(frozen=True)
class Level:
    energy: float
    branch: str  # "+" or "-"
    spin: str  # "up" or "down"
    sigma_x_expectation: float
    vector: np.ndarray


@dataclass(frozen=True)
class LabeledSpectrum:
    entries: tuple

    def energy(self, branch: str, spin: str) -> float:
        found = [lv.energy for lv in self.entries if lv.branch == branch and lv.spin == spin]
        if len(found) != 1:
            raise AmbiguousLabeling(f"{len(found)} levels labelled ({branch}, {spin})")
        return found[0]


def _offdiag_norm(a):
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.abs(a[:, mask]) ** 2, axis=1))


def jacobi_eigh(a):
    """Diagonalise a batch of Hermitian matrices, shape ``(N, n, n)``.

    Returns unsorted eigenvalues ``(N, n)``, eigenvector columns ``(N, n, n)``
    and the number of sweeps used.  Raises NoConvergence when the off-diagonal
    norm is not below 1e-14 * ||A||_F after 100 sweeps.
    """
    a = np.array(a, dtype=complex, copy=True)
    nb, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    scale = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]

    for sweep in range(MAX_SWEEPS + 1):
        off = _offdiag_norm(a)
        if np.all(off <= CONVERGENCE_RTOL * scale):
            return np.real(np.einsum("bii->bi", a)).copy(), v, sweep
        if sweep == MAX_SWEEPS:
            break
        for p, q in pairs:
            _rotate(a, v, p, q)

    worst = int(np.nanargmax(np.where(np.isfinite(off / scale), off / scale, np.inf)))
    raise NoConvergence(
        f"Jacobi did not converge in {MAX_SWEEPS} sweeps (off-diagonal/norm = {off[worst] / scale[worst]:.3e})")


def _rotate(a, v, p, q):
    apq = a[:, p, q]
    r = np.abs(apq)
    app = a[:, p, p].real
    aqq = a[:, q, q].real
    # subnormal pivots overflow the phase division; they are zero for our purposes
    active = r > TINY_PIVOT
    safe_r = np.where(active, r, 1.0)
    phase = np.where(active, apq / safe_r, 1.0)
    tau = (aqq - app) / (2.0 * safe_r)
    # smaller root of t^2 + 2 tau t - 1 = 0
    with np.errstate(over="ignore"):
        t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    ph_conj = np.conj(phase)

    c_ = c[:, None]
    s_ = s[:, None]
    # A <- A G
    col_p = a[:, :, p].copy()
    col_q = a[:, :, q]
    a[:, :, p] = c_ * col_p - (s * ph_conj)[:, None] * col_q
    a[:, :, q] = s_ * col_p + (c * ph_conj)[:, None] * col_q
    # A <- G^dagger A
    row_p = a[:, p, :].copy()
    row_q = a[:, q, :]
    a[:, p, :] = c_ * row_p - (s * phase)[:, None] * row_q
    a[:, q, :] = s_ * row_p + (c * phase)[:, None] * row_q
    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real
    # V <- V G
    vp = v[:, :, p].copy()
    vq = v[:, :, q]
    v[:, :, p] = c_ * vp - (s * ph_conj)[:, None] * vq
    v[:, :, q] = s_ * vp + (c * ph_conj)[:, None] * vq


def _check_input(h):
    h = np.asarray(h, dtype=complex)
    if h.ndim != 3 or h.shape[1] != h.shape[2]:
        raise ValueError(f"expected a batch of square matrices, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise NonFiniteInput("matrix has non-finite entries")
    defect = np.max(np.abs(h - np.conj(np.swapaxes(h, 1, 2)))) / 2 if h.size else 0.0
    if defect >= HERMITIAN_TOL:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds {HERMITIAN_TOL:g}")
    return h


def diagonalize_many(h):
    """Sorted eigenvalues ``(N, n)`` and eigenvectors ``(N, n, n)`` for a batch."""
    h = _check_input(h)
    w, v, _ = jacobi_eigh(h)
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def diagonalize(h) -> EigenSystem:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    if not np.all(np.isfinite(h)):
        raise NonFiniteInput("matrix has non-finite entries")
    defect = hermiticity_defect(h)
    if defect >= HERMITIAN_TOL:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds {HERMITIAN_TOL:g}")
    w, v, sweeps = jacobi_eigh(h[None])
    order = np.argsort(w[0], kind="stable")
    w = w[0][order]
    v = v[0][:, order]
    residual = float(np.max(np.sqrt(np.sum(np.abs(h @ v - v * w) ** 2, axis=0))))
    return EigenSystem(eigenvalues=w, eigenvectors=v, residual=residual, sweeps=sweeps)


def _clusters(values, tol):
    groups = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _rotate_into(vectors, op):
    """Rotate the columns of ``vectors`` to diagonalise ``op`` inside their span."""
    if vectors.shape[1] == 1:
        return vectors
    sub = vectors.conj().T @ op @ vectors
    sub = 0.5 * (sub + sub.conj().T)
    _, w, _ = jacobi_eigh(sub[None])
    return vectors @ w[0]


def _expect(vec, op):
    return float(np.real(vec.conj() @ op @ vec))


def classify_spin(es: EigenSystem, basis: DiracBasis | None = None, tol: float | None = None) -> LabeledSpectrum:
    """Label each level with a branch (sign of energy) and spin (sign of <Sigma_x>).

    Degenerate clusters are first rotated into Sigma_x eigenvectors.  Levels
    at zero energy (eta = 0, |delta| = 1) are further resolved by beta, and
    the beta > 0 state is assigned to the + branch.
    """
    basis = basis or standard_basis()
    sigma = basis.sigma_x_big
    energies = np.asarray(es.eigenvalues, dtype=float)
    vectors = np.array(es.eigenvectors, dtype=complex)
    if tol is None:
        tol = CLUSTER_RTOL * (1.0 + float(np.max(np.abs(energies))))

    for group in _clusters(energies, tol):
        vectors[:, group] = _rotate_into(vectors[:, group], sigma)

    sig = np.array([_expect(vectors[:, i], sigma) for i in range(len(energies))])
    if np.any(np.abs(sig) < 1.0 - LABEL_TOL):
        raise AmbiguousLabeling(f"Sigma_x expectations {sig} are not +/-1 after rotation")
    spins = np.where(sig > 0, "up", "down")

    # Nearly degenerate levels leave O(eps*|H|/gap) sector mixing; the
    # projector commutes with H, so projecting cannot worsen the residual.
    ident = np.eye(len(energies))
    for i, s in enumerate(np.sign(sig)):
        w = 0.5 * (ident + s * sigma) @ vectors[:, i]
        vectors[:, i] = w / np.sqrt(np.real(np.vdot(w, w)))
    sig = np.array([_expect(vectors[:, i], sigma) for i in range(len(energies))])

    branches = np.where(energies > 0, "+", "-").astype(object)
    zero = np.flatnonzero(np.abs(energies) <= tol)
    for spin in ("up", "down"):
        idx = [i for i in zero if spins[i] == spin]
        if not idx:
            continue
        vectors[:, idx] = _rotate_into(vectors[:, idx], basis.beta)
        for i in idx:
            branches[i] = "+" if _expect(vectors[:, i], basis.beta) > 0 else "-"

    entries = tuple(
        Level(energy=float(energies[i]), branch=str(branches[i]), spin=str(spins[i]),
              sigma_x_expectation=float(sig[i]), vector=vectors[:, i].copy())
        for i in range(len(energies))
    )
    return LabeledSpectrum(entries=entries)


def labeled_spectrum(params: NaturalParams, basis: DiracBasis | None = None) -> LabeledSpectrum:
    basis = basis or standard_basis()
    return classify_spin(diagonalize(build_hamiltonian(params, basis)), basis)


def splitting_numeric(params: NaturalParams, basis: DiracBasis | None = None) -> float:
    """E(+, up) - E(+, down) from the numerically labelled spectrum."""
    spec = labeled_spectrum(params, basis)
    return spec.energy("+", "up") - spec.energy("+", "down")

"""Four levels of a neutral dipole particle, closed form vs. numerical diagonalisation.

Run:  python demos/01_spectrum_and_oracle.py
"""
import numpy as np

from larmor import NaturalParams, build_hamiltonian, diagonalize, eigenvalues_analytic
from larmor.oracle import classify_spin

# Natural units: energies in mc^2, momentum in mc.  Pick a moving particle
# (p = 1) in fields that give pi = 0.3 and an interaction energy delta = 0.7.
params = NaturalParams(p_tilde=1.0, pi_tilde=0.3, delta_tilde=0.7)
print("eta =", params.eta_tilde)

# The Hamiltonian is a 4x4 Hermitian matrix.
h = build_hamiltonian(params)
print(np.round(h, 3))

# Closed form: +/- sqrt(eta^2 + (1 +/- delta)^2)
closed = eigenvalues_analytic(params.eta_tilde, params.delta_tilde)
for branch, spin, energy in closed.levels():
    print(f"closed form  E({branch},{spin:>4}) = {energy:+.15f}")

# Jacobi diagonalisation never looks at the closed form.  Labelling by the
# sign of <Sigma_x> recovers which level is spin up and which is spin down.
labelled = classify_spin(diagonalize(h))
for lv in labelled.entries:
    print(f"numerical    E({lv.branch},{lv.spin:>4}) = {lv.energy:+.15f}   <Sigma_x> = {lv.sigma_x_expectation:+.3f}")

print("splitting closed form:", closed.splitting)
print("splitting numerical:  ", labelled.energy("+", "up") - labelled.energy("+", "down"))

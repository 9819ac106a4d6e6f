"""A neutron in a 1 T field: SI numbers from the shipped CODATA registry.

Run:  python demos/05_neutron.py
"""
from larmor import FieldPoint, load_registry, relativistic_limits, spin_splitting, to_natural
from larmor.quantities import momentum_of_velocity

reg = load_registry()
neutron = reg.particle("neutron")
const = reg.constants
rest = neutron.mass * const.c**2

lim = relativistic_limits(neutron.mass, const)
print(f"largest possible splitting   {lim.max_splitting:.4e} J")
print(f"largest Larmor frequency     {lim.max_larmor:.4e} rad/s")
print(f"shortest wavelength c/omega  {lim.min_wavelength:.4e} m (= half of {lim.compton_wavelength:.4e} m)")

# A laboratory field is some 17 orders of magnitude away from the ceiling,
# but the relative red shift at a given speed does not depend on the field.
for v in (0.0, 0.01, 0.1, 0.3):
    params = to_natural(neutron, FieldPoint(0.0, 1.0), momentum_of_velocity(neutron, v, const), const)
    split = spin_splitting(params.eta_tilde, params.delta_tilde)
    print(f"v = {v:4.2f}c  splitting {split * rest:.6e} J   Larmor {split * rest / const.hbar:.6e} rad/s")

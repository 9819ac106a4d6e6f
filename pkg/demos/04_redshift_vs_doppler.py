"""Motional Larmor red shift next to the Doppler ratios.

The Doppler ratios depart from 1 linearly in v; the motional red shift
departs quadratically, so its slope (1 - ratio)/v vanishes as v -> 0.
Run:  python demos/04_redshift_vs_doppler.py
"""
from larmor.sweep import Grid, doppler_compare

table = doppler_compare(Grid(0.0, 0.15, 7), delta_tilde=0.5)
print(f"{'v':>6} {'motional':>10} {'1-v':>8} {'g(1-v)':>8}")
for r in table.rows:
    print(f"{r.v:6.3f} {r.motional_ratio:10.6f} {r.nonrel_doppler:8.4f} {r.rel_doppler:8.4f}")
print("rows outside the expansion domain:", table.dropped)

for r in table.rows[1:]:
    print(f"v = {r.v:.3f}: motional slope {(1 - r.motional_ratio) / r.v:.4f}, Doppler slope {(1 - r.nonrel_doppler) / r.v:.4f}")

"""Splitting vs. interaction energy for several speeds: the 2mc^2 ceiling.

Writes upper_bound.csv and, if matplotlib is installed, upper_bound.png.
Run:  python demos/02_upper_bound.py
"""
from larmor.cli import render
from larmor.sweep import DEFAULT_VELOCITIES, Grid, sweep_delta

table = sweep_delta(DEFAULT_VELOCITIES, Grid(0.0, 3.0, 61), validate=True)

with open("upper_bound.csv", "w") as fh:
    fh.write(render(table, "csv", 10, {}))

# At rest the curve is 2*delta until delta = 1 and then sticks at exactly 2.
rest = [r for r in table.rows if r.series_label == 0.0]
print("v = 0:", [(round(r.swept_value, 2), r.splitting) for r in rest[::10]])

# Moving particles never reach the ceiling.
for v in DEFAULT_VELOCITIES:
    top = max(r.splitting for r in table.rows if r.series_label == v)
    print(f"v = {v:.1f}c  largest splitting on the grid = {top:.6f} mc^2")

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    pass
else:
    fig, ax = plt.subplots()
    for v in DEFAULT_VELOCITIES:
        rows = [r for r in table.rows if r.series_label == v]
        ax.plot([r.swept_value for r in rows], [r.splitting for r in rows], label=f"v = {v}c")
    ax.axhline(2.0, ls=":", c="k")
    ax.set_xlabel("interaction energy / mc^2")
    ax.set_ylabel("spin splitting / mc^2")
    ax.legend()
    fig.savefig("upper_bound.png", dpi=120)

"""Splitting shrinks as the particle speeds up, with both asymptotic forms alongside.

Writes motional_narrowing.csv.
Run:  python demos/03_motional_narrowing.py
"""
from larmor.cli import render
from larmor.sweep import Grid, sweep_velocity

table = sweep_velocity([0.3, 0.5, 0.9], Grid(0.0, 0.9995, 81), expansions=True)

with open("motional_narrowing.csv", "w") as fh:
    fh.write(render(table, "csv", 10, {}))

series = [r for r in table.rows if r.series_label == 0.5]
for row in (series[0], series[5], series[-1]):
    print(row)

# Near v = 0 the quadratic expansion tracks the exact value; near v = c the
# 2*delta/eta tail does.  In between neither applies and the column is empty.
low = sum(r.lowspeed_approx is not None for r in series)
high = sum(r.highspeed_approx is not None for r in series)
print(f"{len(series)} points: {low} inside the low-speed domain, {high} inside the high-speed domain")

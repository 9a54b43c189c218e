"""
A small stability map
=====================

Sweep the mass ratio and the drag parameter and write the rows as CSV,
ready for plotting elsewhere.
"""

import io
from collections import Counter

from pr3bp.sweep import Range, SweepSpec, run_sweep, write_csv

spec = SweepSpec(mu=Range(0.01, 0.05, 9), W1=Range(0.0, 1e-4, 3))
rows = run_sweep(spec, workers=2)

for row in rows:
    print(f"mu={row.mu:.3f} W1={row.W1:.0e}  {row.verdict:<9} {row.criterion}")
print(Counter(r.verdict for r in rows))

buf = io.StringIO()
write_csv(rows[:2], buf)
print(buf.getvalue())

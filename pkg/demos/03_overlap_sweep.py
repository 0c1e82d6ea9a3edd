"""Where contextuality switches on as photons become indistinguishable.

Sweeping the photon overlap eta from 0 to 1 at the balanced splitter moves
the pentagon sum linearly from 3/2 to 5/2 and the triangle sum from 3/4 to
3/2.  The sweep reports where each sum crosses its noncontextual bound and,
for the pentagon, the projective quantum bound sqrt(5).
"""

import math

from bosonctx import BALANCED, sweep_eta

for test in ("pentagon", "triangle"):
    result = sweep_eta(test, BALANCED, steps=101)
    print("=" * 64)
    print(f"{test} sweep at the balanced splitter")
    print("=" * 64)
    print(f"{'eta':>6} {'sum':>10}")
    for eta, total in zip(result.etas, result.sums):
        if round(eta * 10) == eta * 10:  # print every tenth point
            print(f"{eta:>6.2f} {total:>10.6f}")
    for name, bound in result.bounds.items():
        crossing = result.crossings[name]
        where = f"eta = {crossing:.9f}" if crossing is not None else "never"
        print(f"  crosses the {name} bound {bound:.6f} at {where}")
    print()

print("Expected: 1/2 for the pentagon vs 2, "
      f"{math.sqrt(5) - 1.5:.9f} vs sqrt(5), and 1/3 for the triangle vs 1.")

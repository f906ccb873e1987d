"""Line plus ovals: a minimal rho-saturating set and the code it defines.

Builds the (rho+1)q+1 point set in PG(2 rho + 1, q), checks that it is
rho-saturating and minimal, then reads the same points as parity-check
columns and measures the covering code.

    python demos/saturating_sets.py [q] [rho]
"""

import sys

from covsat import analyze, construction_s, gf, is_minimal_saturating, saturation_level
from covsat.codes import set_matrix_bridge

q = int(sys.argv[1]) if len(sys.argv) > 1 else 5
rho = int(sys.argv[2]) if len(sys.argv) > 2 else 2

S = construction_s(rho, gf(q))
print(f"{len(S)} points in PG({S.N},{q}); first few:")
for p in list(S)[:4]:
    print("  ", p)

level = saturation_level(S)
print(f"saturation level {level} (expected {rho})")
mini = is_minimal_saturating(S, level)
print("minimal" if mini.minimal else f"removable points: {mini.removable}")

# every point of the space is a combination of at most rho+1 points of S,
# so every syndrome is a combination of at most rho+1 columns
params = analyze(set_matrix_bridge(S))
print("code:", params.notation())
print("locally optimal:", params.locally_optimal)

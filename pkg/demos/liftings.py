"""Lifting small covering codes to larger codimension.

QM1 and QM2 tensor each seed column with powers of distinct elements of
GF(q^m).  QM1 needs a surface-covering seed; QM2 needs ell = R - 1 and adds a
Hamming-type block.  A construction S seed has ell = 0 at R = 2 (d = 3 forces
it), so QM1 refuses it, while the R = 3 seed over GF(4) suits QM2.

    python demos/liftings.py          (QM2 over GF(4) takes about two minutes)
"""

import time

from covsat import ParityCheckMatrix, QMRecipe, analyze, construction_s_matrix, gf, qm1, qm2
from covsat.constructions import PreconditionError

seed = construction_s_matrix(1, gf(4))
try:
    qm1(QMRecipe.measured(seed, 2))
except PreconditionError as exc:
    print("QM1 on the q=4, rho=1 seed:", exc)

# a tiny surface-covering seed over GF(3) lifts fine
small = ParityCheckMatrix(gf(3), [[0, 1], [2, 1], [2, 1], [1, 1]], "tiny GF(3) seed")
for m in (1, 2):
    V = qm1(QMRecipe.measured(small, m))
    print(f"QM1 m={m}:", analyze(V, local_opt=False).notation())

seed = construction_s_matrix(2, gf(4))
rec = QMRecipe.measured(seed, 2, "qm2")
print(f"QM2 seed: R={rec.R}, ell={rec.ell}")
for w in ("literal", "reduced"):
    rec.w_variant = w
    t0 = time.monotonic()
    p = analyze(qm2(rec), local_opt=False)
    print(f"  W={w:8s} {p.notation()}  ({time.monotonic() - t0:.0f}s)")

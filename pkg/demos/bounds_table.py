"""Family lengths against the classical r = tR bound.

For each admissible (q, R, t) the family length equals the closed-form new
bound; the last column is (classical - new), positive where the new
construction is shorter.
"""

from covsat import bound_known_tR, family_codimension_tR
from covsat.constructions import admissible_t

print(f"{'q':>3} {'R':>2} {'t':>2} {'case':>13} {'n':>12} {'classical':>12} {'gain':>8}")
for q in (7, 8, 9, 11):
    for R in (4, 5, 6):
        for t in admissible_t(q, R, 8):
            fam = family_codimension_tR(q, R, t)
            known = bound_known_tR(q, t * R, R)
            k = known.floor if known.applicable else None
            gain = "" if k is None else f"{k - fam.n:+d}"
            print(f"{q:>3} {R:>2} {t:>2} {fam.case:>13} {fam.n:>12} {k if k else 'n/a':>12} {gain:>8}")

"""Small 1-saturating sets in the plane.

A double blocking set of PG(2, sqrt q), pushed into PG(2, q) by the subfield
embedding, is 1-saturating; so is the (3 sqrt q - 1)-point set built from
three copies of the subfield.
"""

from covsat import baer_embed, gf, is_double_blocking, is_minimal_saturating, saturation_level
from covsat import plane_saturating_set, triangle_double_blocking

T = triangle_double_blocking(gf(3))
print(f"triangle in PG(2,3): {len(T)} points, double blocking: {is_double_blocking(T)}")
B = baer_embed(T, gf(9))
print(f"embedded in PG(2,9): saturation level {saturation_level(B)}")

for q in (9, 16, 25, 49):
    S = plane_saturating_set(gf(q))
    lvl = saturation_level(S)
    print(f"q={q:3d}: {len(S):3d} points, level {lvl}, minimal {is_minimal_saturating(S, lvl).minimal}")

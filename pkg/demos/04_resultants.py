"""Sylvester resultants, the product formula, and the factorization identities."""

# %%
import random

from permpoly.families import Family, FamilyParams, resultant_identity_suite
from permpoly.gf import field
from permpoly.poly import DensePoly, resultant_product_oracle, sylvester_resultant
from permpoly.tower import cube_roots_of_unity, tower_make

F = field(2, 3)
rng = random.Random(1)


def rand_poly(deg):
    return DensePoly(F, tuple(F(rng.randrange(8)) for _ in range(deg)) + (F(rng.randrange(1, 8)),))


for _ in range(5):
    f, g = rand_poly(3), rand_poly(2)
    print(f"R = {sylvester_resultant(f, g)!s:<18} product formula = {resultant_product_oracle(f, g)}")

# %% Shared root means zero resultant.
r = F(5)
lin = DensePoly(F, (-r, F.one))
print("shared root:", sylvester_resultant(lin * rand_poly(2), lin * rand_poly(1)))

# %% The displayed factorizations, checked on seeded random draws.
t = tower_make(2, 2)
for A in cube_roots_of_unity(t):
    rep = resultant_identity_suite(FamilyParams(Family.F2, t, A), samples=100)
    print(f"f2 q=4 A={A.value}: {rep.equal} equal, {rep.unequal} unequal, {rep.skipped} degenerate")
t3 = tower_make(3, 1)
rep = resultant_identity_suite(FamilyParams(Family.F3, t3, t3.spec(2)), samples=100)
print(f"f3 q=3 A=2: {rep.equal} equal, {rep.unequal} unequal, {rep.skipped} degenerate")

"""The three trinomial families: prediction against exhaustive scans."""

# %%
from permpoly.families import Family, FamilyParams, family_poly, predicted_pp
from permpoly.poly import is_permutation
from permpoly.tower import cube_roots_of_unity, subfield_units, tower_make

# f1 and f2 live over q = 2^m with A a cube root of unity in GF(q).
for m in range(1, 6):
    t = tower_make(2, m)
    for A in cube_roots_of_unity(t):
        for fam in (Family.F1, Family.F2):
            fp = FamilyParams(fam, t, A)
            rep = is_permutation(family_poly(fp))
            print(f"{fam.value} q={t.q:<3} A={A.value:<6} predicted={predicted_pp(fp)!s:<5} "
                  f"observed={rep.is_permutation!s:<5} roots={rep.root_count}")

# %% Non-permutations have more than one root here, which is worth noticing.

# %% f3 works in any characteristic; it permutes exactly when A^3 != 1.
for p, m in [(3, 1), (5, 1), (7, 1), (3, 2)]:
    t = tower_make(p, m)
    row = []
    for A in subfield_units(t):
        fp = FamilyParams(Family.F3, t, A)
        row.append(f"{A.value}:{'Y' if is_permutation(family_poly(fp)).is_permutation else 'n'}")
    print(f"f3 q={t.q}:", " ".join(row))

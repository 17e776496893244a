"""Certifying a permutation and its inverse from projections and a combiner."""

# %%
from permpoly.families import Family, FamilyParams, family_poly
from permpoly.localmethod import (
    LocalScheme,
    discriminant_witness,
    first_projection,
    frobenius_projections,
    lemma_certify,
    theorem_scheme,
)
from permpoly.poly import brute_inverse_table
from permpoly.tower import tower_make

# A combiner that works certifies bijectivity and hands back the inverse table.
t = tower_make(2, 4)
fp = FamilyParams(Family.F1, t, t.spec.one)
cert = lemma_certify(theorem_scheme(fp))
print("f1 q=16 certified:", cert.ok)
print("table equals brute force:", bool((cert.inverse_table.values == brute_inverse_table(family_poly(fp)).values).all()))

# %% The wrong combiner is caught at the first point where it fails.
bad = LocalScheme(family_poly(fp), frobenius_projections(t), first_projection)
print("first projection alone:", lemma_certify(bad).ok, lemma_certify(bad).counterexample)

# %% At excluded m the scheme fails, and the discriminant explains where.
t2 = tower_make(2, 2)
fp2 = FamilyParams(Family.F1, t2, t2.spec.one)
print("f1 q=4 certified:", lemma_certify(theorem_scheme(fp2)).ok)
print("discriminant vanishes at:", discriminant_witness(fp2))

"""Closed-form inverses compared with brute-force tables."""

# %%
import numpy as np

from permpoly.families import (
    Family,
    FamilyParams,
    f3_inverse_eval,
    family_poly,
    piecewise_inverse,
    rational_inverse,
)
from permpoly.gfarray import FieldArray
from permpoly.poly import brute_inverse_table, lagrange_interpolate
from permpoly.tower import tower_make

t = tower_make(2, 3)  # q = 8, field of 512 elements
fp = FamilyParams(Family.F1, t, t.spec.one)
ys = FieldArray.all(t.spec)

brute = brute_inverse_table(family_poly(fp))
pw, branch = piecewise_inverse(fp, ys)
rat = rational_inverse(fp, ys)
print("piecewise == brute:", bool((pw.values == brute.values).all()))
print("rational  == brute:", bool((rat.values == brute.values).all()))
print("branch sizes:", np.bincount(branch))

# %% The f2 display's second branch: the literal form versus the re-derived one.
fp2 = FamilyParams(Family.F2, t, t.spec.one)
fixed, branch2 = piecewise_inverse(fp2, ys)
brute2 = brute_inverse_table(family_poly(fp2))
try:
    literal, _ = piecewise_inverse(fp2, ys, printed=True)
    wrong = int((literal.values != brute2.values).sum())
except ArithmeticError as exc:
    wrong = f"denominator vanishes ({exc})"
print("f2 corrected form exact:", bool((fixed.values == brute2.values).all()), "| literal form errors:", wrong)

# %% f3 over GF(27): a single power-map formula.
t3 = tower_make(3, 1)
fp3 = FamilyParams(Family.F3, t3, t3.spec(2))
ys3 = FieldArray.all(t3.spec)
print("f3 power map == brute:", bool((f3_inverse_eval(fp3, ys3).values == brute_inverse_table(family_poly(fp3)).values).all()))

# %% The inverse as a polynomial, for the smallest f1.
t1 = tower_make(2, 1)
fp1 = FamilyParams(Family.F1, t1, t1.spec.one)
xs = FieldArray.all(t1.spec)
print("f1^-1 over GF(8):", lagrange_interpolate((xs, brute_inverse_table(family_poly(fp1)))))

"""Field arithmetic, one element at a time and whole fields at once."""

# %% Build GF(8).  The modulus is the first irreducible cubic in packed order.
from permpoly.gf import field, find_generator
from permpoly.gfarray import FieldArray

F = field(2, 3)
print(F, "modulus (constant term first):", F.modulus)

t = F.t
print("t * t^2 =", t * t**2)  # t^3 reduces to t + 1
print("1 / t   =", t.inverse())
print("generator:", find_generator(F))

# %% Elements are packed integers, so a whole field is one numpy array.
xs = FieldArray.all(F)
print("x^3 over GF(8):", (xs**3).values)
print("x^7 over GF(8):", (xs**7).values)  # 0 then all ones

# %% Odd characteristic works the same way.
G = field(3, 2)
a = G.from_coeffs([1, 2])
print(G, a, "->", a**4, a * a.inverse())

"""Slow, independent reference implementations used only by the tests."""

from itertools import product


def poly_mod(a, m, p):
    """Remainder of a modulo monic m; coefficient lists constant term first."""
    a = list(a)
    while len(a) >= len(m):
        lead = a[-1] % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return [c % p for c in a]


def naive_mul(x, y, modulus, p):
    """Schoolbook product of coefficient lists, reduced by the modulus."""
    out = [0] * (len(x) + len(y))
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            out[i + j] += a * b
    r = poly_mod(out, modulus, p)
    return r + [0] * (len(modulus) - 1 - len(r))


def naive_irreducible(p, monic):
    """True when no monic polynomial of degree 1..k/2 divides ``monic``."""
    k = len(monic) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(poly_mod(monic, list(low) + [1], p)):
                return False
    return True


def unpack(v, p, k):
    out = []
    for _ in range(k):
        v, r = divmod(v, p)
        out.append(r)
    return out

"""Inverting a permutation through projections of f and a combiner.

If maps psi_1..psi_t and a combiner F satisfy F(psi_1(f(x)), ..., psi_t(f(x))) = x
for every x, then f is a bijection and y -> F(psi_1(y), ..., psi_t(y)) is
its inverse.  :func:`lemma_certify` checks that identity exhaustively.

Every scheme here uses the Frobenius projections (y, y^q, y^(q^2)) on
GF(q^3); the lemma's "field under consideration" is GF(q^3) itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Callable, Optional

import numpy as np

from .families import Family, FamilyParams, family_poly, predicted_pp, theorem_combiner
from .gf import FieldElement
from .gfarray import FieldArray
from .poly import CHUNK, Poly, poly_eval
from .tower import TowerParams, frob_q

Projection = Callable[[FieldArray], FieldArray]


@dataclass(frozen=True)
class LocalScheme:
    """``f`` with projections psi_i and a combiner F.

    The combiner takes one FieldArray per projection and returns either a
    FieldArray or a tuple ``(values, branch, undefined)`` whose last entry
    marks points where the combiner is not defined.
    """

    f: Poly
    projections: tuple[Projection, ...]
    combiner: Callable


def frobenius_projections(t: TowerParams) -> tuple[Projection, Projection, Projection]:
    q = t.q
    return (lambda y: y, lambda y: y**q, lambda y: y ** (q * q))


def frob_projections(t: TowerParams, f: Poly, x):
    """(a, b, c) = (f(x), f(x)^q, f(x)^(q^2))."""
    a = poly_eval(f, x)
    b = frob_q(t, a)
    c = frob_q(t, b)
    assert _equal(c, a ** (t.q * t.q))
    return a, b, c


def _equal(u, v) -> bool:
    if isinstance(u, FieldArray):
        return bool(u.eq(v).all())
    return u == v


def _combine(scheme: LocalScheme, ys: FieldArray):
    out = scheme.combiner(*(psi(ys) for psi in scheme.projections))
    if isinstance(out, tuple):
        return out[0], out[-1]
    return out, np.zeros(len(ys), dtype=bool)


@dataclass(frozen=True)
class Certificate:
    ok: bool
    counterexample: Optional[FieldElement] = None
    inverse_table: Optional[FieldArray] = None

    def __bool__(self):
        return self.ok


def lemma_certify(scheme: LocalScheme, chunk: int = CHUNK) -> Certificate:
    """Check F(psi(f(x))) = x on the whole field.

    On success the certificate carries the induced inverse
    y -> F(psi_1(y), ..., psi_t(y)) as a full table.
    """
    spec = scheme.f.spec
    table = np.empty(spec.order, dtype=np.int64)
    for lo in range(0, spec.order, chunk):
        xs = FieldArray(spec, np.arange(lo, min(lo + chunk, spec.order), dtype=np.int64))
        vals, undefined = _combine(scheme, poly_eval(scheme.f, xs))
        bad = undefined | (vals.values != xs.values)
        if bad.any():
            return Certificate(False, xs[int(np.argmax(bad))])
        vals, undefined = _combine(scheme, xs)
        table[xs.values] = np.where(undefined, -1, vals.values)
    return Certificate(True, None, FieldArray(spec, table))


def theorem_scheme(fp: FamilyParams) -> LocalScheme:
    """The family polynomial with Frobenius projections and its proof's combiner."""
    return LocalScheme(family_poly(fp), frobenius_projections(fp.tower), theorem_combiner(fp))


def first_projection(*phis):
    return phis[0]


def identity_abc_check(fp: FamilyParams) -> bool:
    """x + A x^q + A^2 x^(q^2) = a + A b + A^2 c for every x (f1 parameters)."""
    if fp.family is not Family.F1:
        raise ValueError("identity_abc_check applies to f1")
    t, A = fp.tower, fp.A
    x = FieldArray.all(t.spec)
    y = frob_q(t, x)
    z = frob_q(t, y)
    a, b, c = frob_projections(t, family_poly(fp), x)
    return bool((x + y * A + z * (A * A)).eq(a + b * A + c * (A * A)).all())


def discriminant_values(fp: FamilyParams) -> FieldArray:
    """Aac + c^2 + Ab^2 (f1) or a^2 + Aac + Ab^2 (f2) at every x, in enumeration order."""
    t, A = fp.tower, fp.A
    a, b, c = frob_projections(t, family_poly(fp), FieldArray.all(t.spec))
    if fp.family is Family.F1:
        return a * c * A + c * c + b * b * A
    if fp.family is Family.F2:
        return a * a + a * c * A + b * b * A
    raise ValueError("discriminant is defined for f1 and f2")


def discriminant_witness(fp: FamilyParams) -> Optional[FieldElement]:
    """First nonzero x at which the discriminant vanishes, if any."""
    d = discriminant_values(fp)
    hits = np.flatnonzero(d.iszero()[1:])
    return None if not len(hits) else fp.tower.spec(int(hits[0]) + 1)


def discriminant_nonvanishing(fp: FamilyParams, check_pre: bool = True) -> bool:
    if check_pre and not predicted_pp(fp):
        raise ValueError("discriminant_nonvanishing requires a permutation parameter set")
    return discriminant_witness(fp) is None


def gcd_sanity(m: int, family: Family) -> bool:
    """gcd(2q-1, q^3-1) = 1 for f1, gcd(q-2, q^3-1) = 1 for f2, with q = 2^m.

    Holds exactly when m avoids the excluded residue class mod 3.
    """
    family = Family(family)
    if m < 1:
        raise ValueError("m must be positive")
    q = 2**m
    if family is Family.F1:
        return gcd(2 * q - 1, q**3 - 1) == 1
    if family is Family.F2:
        return gcd(q - 2, q**3 - 1) == 1
    raise ValueError("gcd_sanity applies to f1 and f2")

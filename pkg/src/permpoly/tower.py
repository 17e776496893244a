"""The cubic extension GF(q^3) / GF(q) with q = p^m.

Everything is represented inside one field GF(p^(3m)); the q-Frobenius is
just the power map x -> x^q.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .gf import (
    MAX_ORDER,
    FieldElement,
    FieldSpec,
    FieldTooLargeError,
    UnsupportedFieldError,
    fe_pow,
    field,
    find_generator,
    is_prime,
)
from .gfarray import FieldArray, raw_mul


@dataclass(frozen=True)
class TowerParams:
    p: int
    m: int
    q: int
    spec: FieldSpec

    def __post_init__(self):
        if self.spec.k != 3 * self.m or self.q**3 != self.spec.order:
            raise UnsupportedFieldError("tower field must have degree 3m over GF(p)")

    def __repr__(self):
        return f"TowerParams(q={self.p}^{self.m}, field={self.spec!r})"


def tower_make(p: int, m: int) -> TowerParams:
    if not is_prime(p):
        raise UnsupportedFieldError(f"characteristic {p} is not prime")
    if m < 1:
        raise UnsupportedFieldError("m must be >= 1")
    if p ** (3 * m) > MAX_ORDER:
        raise FieldTooLargeError(f"GF({p}^{3 * m}) exceeds 2^24 elements")
    return TowerParams(p, m, p**m, field(p, 3 * m))


def frob_q(t: TowerParams, x):
    """x -> x^q on a FieldElement or a FieldArray."""
    return x**t.q


@lru_cache(maxsize=None)
def frobenius_basis_table(t: TowerParams) -> tuple[FieldElement, ...]:
    """(t^i)^q for each power basis element t^i, i < 3m."""
    spec = t.spec
    return tuple(fe_pow(spec.from_coeffs([0] * i + [1]), t.q) for i in range(spec.k))


def frob_q_linear(t: TowerParams, x: FieldArray) -> FieldArray:
    """Frobenius through the basis table: x^q = sum_i c_i (t^i)^q.

    GF(p)-linearity of the Frobenius makes this exact; it avoids log tables
    and serves as an independent check of the power-map route.
    """
    spec = t.spec
    acc = FieldArray(spec, np.zeros(len(x), dtype=np.int64))
    v = x.values.copy()
    for img in frobenius_basis_table(t):
        v, digit = np.divmod(v, spec.p)
        # a digit is a prime-field constant, whose packed form is the digit itself
        acc = acc + FieldArray(spec, raw_mul(spec, digit, img.value))
    return acc


@dataclass(frozen=True)
class LMapCoeffs:
    """x -> c0*x + c1*x^q + c2*x^(q^2)."""

    c0: FieldElement
    c1: FieldElement
    c2: FieldElement


def lmap_eval(t: TowerParams, c: LMapCoeffs, x):
    xq = frob_q(t, x)
    xqq = frob_q(t, xq)
    return x * c.c0 + xq * c.c1 + xqq * c.c2


def cube_roots_of_unity(t: TowerParams) -> list[FieldElement]:
    """All x with x^3 = 1, as powers g^(j(Q-1)/3) of the generator."""
    spec = t.spec
    n = spec.order - 1
    if n % 3:
        return [spec.one]
    g = find_generator(spec)
    return [fe_pow(g, j * n // 3) for j in range(3)]


def subfield_units(t: TowerParams) -> list[FieldElement]:
    """The q - 1 nonzero elements of GF(q), as powers h^j with h = g^((Q-1)/(q-1))."""
    spec = t.spec
    h = fe_pow(find_generator(spec), (spec.order - 1) // (t.q - 1))
    return [fe_pow(h, j) for j in range(t.q - 1)]


def resolve_selector(t: TowerParams, text: str) -> FieldElement:
    """Parse ``unity3:j``, ``unit:j`` or ``coeffs:c0,c1,...``."""
    kind, _, arg = text.partition(":")
    try:
        if kind == "unity3":
            return cube_roots_of_unity(t)[int(arg)]
        if kind == "unit":
            return subfield_units(t)[int(arg)]
        if kind == "coeffs":
            return t.spec.from_coeffs([int(c) for c in arg.split(",")])
    except (IndexError, ValueError) as exc:
        raise ValueError(f"bad element selector {text!r}: {exc}") from None
    raise ValueError(f"unknown element selector {text!r}")


def trace_zero_mask(t: TowerParams, x: FieldArray) -> np.ndarray:
    """Entries of ``x`` with x + x^q + x^(q^2) = 0."""
    xq = frob_q(t, x)
    return (x + xq + frob_q(t, xq)).iszero()

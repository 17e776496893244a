"""Vectorised arithmetic on whole arrays of field elements.

Exhaustive scans evaluate formulas on every element of GF(p^k) at once.
:class:`FieldArray` holds packed element values in a numpy array and
multiplies through exp/log tables built from :func:`gf.find_generator`.
The tables are built with a table-free vectorised multiply, so the only
thing the two paths share is the packed encoding.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .gf import (
    MAX_ORDER,
    FieldElement,
    FieldMismatchError,
    FieldSpec,
    FieldTooLargeError,
    ZeroInverseError,
    fe_pow,
    find_generator,
)


def _digits(values: np.ndarray, p: int, k: int) -> np.ndarray:
    out = np.empty(values.shape + (k,), dtype=np.int64)
    v = values.astype(np.int64, copy=True)
    for i in range(k):
        v, out[..., i] = np.divmod(v, p)
    return out


def _undigits(d: np.ndarray, p: int) -> np.ndarray:
    k = d.shape[-1]
    v = np.zeros(d.shape[:-1], dtype=np.int64)
    for i in range(k - 1, -1, -1):
        v = v * p + d[..., i]
    return v


def raw_mul(spec: FieldSpec, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Elementwise product by schoolbook multiplication, no tables."""
    a, b = np.broadcast_arrays(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    k = spec.k
    if spec.p == 2:
        modbits = sum(c << i for i, c in enumerate(spec.modulus))
        acc = np.zeros(a.shape, dtype=np.int64)
        shifted = a.copy()
        for i in range(k):
            acc ^= np.where((b >> i) & 1, shifted, 0)
            shifted <<= 1
            shifted ^= ((shifted >> k) & 1) * modbits
        return acc
    p = spec.p
    da, db = _digits(a, p, k), _digits(b, p, k)
    prod = np.zeros(a.shape + (2 * k - 1,), dtype=np.int64)
    for i in range(k):
        prod[..., i : i + k] += da[..., i : i + 1] * db
    prod %= p
    low = np.array(spec.modulus[:k], dtype=np.int64)
    for d in range(2 * k - 2, k - 1, -1):
        c = prod[..., d : d + 1]
        prod[..., d - k : d] = (prod[..., d - k : d] - c * low) % p
    return _undigits(prod[..., :k], p)


class _Tables:
    def __init__(self, spec: FieldSpec):
        n = spec.order - 1
        g = find_generator(spec)
        exp = np.empty(max(n, 1), dtype=np.int64)
        exp[0] = 1
        filled = 1
        while filled < n:
            step = min(filled, n - filled)
            exp[filled : filled + step] = raw_mul(spec, exp[:step], fe_pow(g, filled).value)
            filled += step
        log = np.full(spec.order, -1, dtype=np.int64)
        log[exp[:n]] = np.arange(n, dtype=np.int64)
        if n and (log[1:] < 0).any():
            raise AssertionError("exp table is not a permutation of the units")
        self.exp = exp
        self.log = log
        self.n = n


@lru_cache(maxsize=6)
def tables(spec: FieldSpec) -> _Tables:
    if spec.order > MAX_ORDER:
        raise FieldTooLargeError(f"{spec!r} has more than 2^24 elements")
    return _Tables(spec)


class FieldArray:
    """A numpy vector of elements of one field, with field arithmetic."""

    __slots__ = ("spec", "values")
    __array_priority__ = 100

    def __init__(self, spec: FieldSpec, values):
        self.spec = spec
        self.values = np.asarray(values, dtype=np.int64)

    @classmethod
    def all(cls, spec: FieldSpec) -> "FieldArray":
        """Every element, in enumeration order."""
        if spec.order > MAX_ORDER:
            raise FieldTooLargeError(f"{spec!r} has more than 2^24 elements")
        return cls(spec, np.arange(spec.order, dtype=np.int64))

    @classmethod
    def of(cls, elems) -> "FieldArray":
        elems = list(elems)
        return cls(elems[0].spec, [e.value for e in elems])

    @classmethod
    def full(cls, spec: FieldSpec, n: int, value) -> "FieldArray":
        return cls(spec, np.full(n, spec(value).value, dtype=np.int64))

    def __len__(self):
        return len(self.values)

    def __getitem__(self, idx):
        out = self.values[idx]
        if np.ndim(out) == 0:
            return FieldElement(self.spec, int(out))
        return FieldArray(self.spec, out)

    def __iter__(self):
        for v in self.values:
            yield FieldElement(self.spec, int(v))

    def __repr__(self):
        return f"FieldArray({self.spec!r}, {self.values!r})"

    def copy(self) -> "FieldArray":
        return FieldArray(self.spec, self.values.copy())

    def iszero(self) -> np.ndarray:
        return self.values == 0

    def eq(self, other) -> np.ndarray:
        return self.values == self._coerce(other)

    def _coerce(self, other):
        if isinstance(other, FieldArray):
            if other.spec != self.spec:
                raise FieldMismatchError(f"{other.spec!r} vs {self.spec!r}")
            return other.values
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatchError(f"{other.spec!r} vs {self.spec!r}")
            return np.int64(other.value)
        if isinstance(other, (int, np.integer)):
            return np.int64(int(other) % self.spec.p)
        return NotImplemented

    def _wrap(self, values) -> "FieldArray":
        return FieldArray(self.spec, values)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        spec = self.spec
        if spec.p == 2:
            return self._wrap(self.values ^ o)
        a, b = np.broadcast_arrays(self.values, o)
        d = (_digits(a, spec.p, spec.k) + _digits(b, spec.p, spec.k)) % spec.p
        return self._wrap(_undigits(d, spec.p))

    __radd__ = __add__

    def __neg__(self):
        spec = self.spec
        if spec.p == 2:
            return self
        return self._wrap(_undigits((-_digits(self.values, spec.p, spec.k)) % spec.p, spec.p))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-FieldArray(self.spec, np.broadcast_to(o, self.values.shape)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        t = tables(self.spec)
        a, b = np.broadcast_arrays(self.values, o)
        out = t.exp[(t.log[a] + t.log[b]) % t.n] if t.n else np.ones_like(a)
        return self._wrap(np.where((a == 0) | (b == 0), 0, out))

    __rmul__ = __mul__

    def inv(self) -> "FieldArray":
        if (self.values == 0).any():
            raise ZeroInverseError("zero entry has no multiplicative inverse")
        t = tables(self.spec)
        if not t.n:
            return self.copy()
        return self._wrap(t.exp[(-t.log[self.values]) % t.n])

    def __truediv__(self, other):
        if isinstance(other, (FieldElement, int, np.integer)):
            other = FieldArray.full(self.spec, 1, other)
        if not isinstance(other, FieldArray):
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, e: int) -> "FieldArray":
        """Power map with ``0**0 == 1`` and ``0**e == 0`` for e >= 1."""
        e = int(e)
        if e == 0:
            return self._wrap(np.ones_like(self.values))
        if e < 0:
            return self.inv() ** (-e)
        t = tables(self.spec)
        if not t.n:
            return self.copy()
        r = e % t.n
        out = t.exp[(t.log[self.values] * r) % t.n]
        return self._wrap(np.where(self.values == 0, 0, out))

    def sum(self) -> FieldElement:
        spec = self.spec
        if spec.p == 2:
            return FieldElement(spec, int(np.bitwise_xor.reduce(self.values)) if len(self) else 0)
        d = _digits(self.values, spec.p, spec.k).sum(axis=0) % spec.p
        return FieldElement(spec, int(_undigits(d, spec.p)))


def where(mask, a: FieldArray, b: FieldArray) -> FieldArray:
    """Select from ``a`` where ``mask`` holds, else from ``b``."""
    spec = a.spec if isinstance(a, FieldArray) else b.spec
    av = a.values if isinstance(a, FieldArray) else spec(a).value
    bv = b.values if isinstance(b, FieldArray) else spec(b).value
    return FieldArray(spec, np.where(mask, av, bv))

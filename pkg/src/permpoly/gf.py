"""Exact arithmetic in GF(p) and GF(p^k).

Elements of GF(p^k) = GF(p)[t]/(M(t)) are stored *packed*: the coefficient
sequence ``c0, c1, ..., c_{k-1}`` (constant term first) becomes the integer
``c0 + c1*p + ... + c_{k-1}*p^(k-1)``.  Enumeration order, modulus search
order and generator search order all follow that integer.

The scalar routines in this module work on plain Python integers and never
touch lookup tables; the vectorised twin in :mod:`permpoly.gfarray` is
cross-checked against them.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Sequence

#: Largest field order accepted by enumeration-backed operations.
MAX_ORDER = 1 << 24

ENV_MODULUS_CACHE = "PERMPOLY_MODULUS_CACHE"


class GFError(Exception):
    """Base class for finite field errors."""


class FieldMismatchError(GFError, ValueError):
    """Operands live in different fields."""


class FieldTooLargeError(GFError):
    """The field exceeds the enumeration cap."""


class UnsupportedFieldError(GFError, ValueError):
    """Characteristic, degree or modulus outside what we support."""


class ZeroInverseError(GFError):
    """Attempt to invert the zero element (a domain error, not arithmetic)."""


# ---------------------------------------------------------------------------
# GF(p)[x] helpers on lists, constant term first


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pdivmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    r = list(a)
    _trim(r)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    inv_lead = pow(b[-1], p - 2, p)
    quo = [0] * max(len(r) - db, 0)
    while len(r) - 1 >= db and r:
        shift = len(r) - 1 - db
        c = r[-1] * inv_lead % p
        quo[shift] = c
        for i, bi in enumerate(b):
            r[shift + i] = (r[shift + i] - c * bi) % p
        _trim(r)
    return quo, r


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pdivmod(a, b, p)[1]
    return a


def _ppowmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pdivmod(base, mod, p)[1]
    while e:
        if e & 1:
            result = _pdivmod(_pmul(result, base, p), mod, p)[1]
        base = _pdivmod(_pmul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_irreducible(p: int, modulus: Sequence[int]) -> bool:
    """Trial gcd with x^(p^i) - x for i <= k/2 (modulus monic, constant term first)."""
    f = _trim(list(modulus))
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    xp = [0, 1]
    for _ in range(k // 2):
        xp = _ppowmod(xp, p, f, p)
        if len(_pgcd(f, _psub(xp, [0, 1], p), p)) > 1:
            return False
    return True


def _unpack(value: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        value, d = divmod(value, p)
        out.append(d)
    return out


def _pack(coeffs: Sequence[int], p: int) -> int:
    v = 0
    for c in reversed(coeffs):
        v = v * p + c
    return v


def find_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree ``k`` over GF(p).

    Candidates are ordered by their lower coefficients read as a base-p
    integer with the constant term least significant, so for GF(2^3) the
    answer is x^3 + x + 1.  Returned constant term first, leading 1 included.
    """
    if not is_prime(p):
        raise UnsupportedFieldError(f"characteristic {p} is not prime")
    if k < 1:
        raise UnsupportedFieldError(f"degree must be >= 1, got {k}")
    if p**k > MAX_ORDER:
        raise FieldTooLargeError(f"GF({p}^{k}) exceeds 2^24 elements")
    for low in range(p**k):
        cand = _unpack(low, p, k) + [1]
        if is_irreducible(p, cand):
            return tuple(cand)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


# ---------------------------------------------------------------------------
# modulus cache


class ModulusCache:
    """Line-oriented modulus store, ``p k: c0 c1 ... ck`` per line.

    Entries read from disk are re-verified for irreducibility; missing
    entries are computed and appended.
    """

    def __init__(self, path: str | os.PathLike | None = None):
        self.path = Path(path) if path is not None else None
        self._entries: dict[tuple[int, int], tuple[int, ...]] = {}
        if self.path is not None and self.path.exists():
            self._load()

    def _load(self) -> None:
        for lineno, line in enumerate(self.path.read_text().splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                head, tail = line.split(":", 1)
                p, k = (int(s) for s in head.split())
                coeffs = tuple(int(s) for s in tail.split())
            except ValueError as exc:
                raise UnsupportedFieldError(f"{self.path}:{lineno}: malformed entry") from exc
            if len(coeffs) != k + 1 or coeffs[-1] != 1 or any(not 0 <= c < p for c in coeffs):
                raise UnsupportedFieldError(f"{self.path}:{lineno}: not a monic degree-{k} polynomial")
            if not is_irreducible(p, coeffs):
                raise UnsupportedFieldError(f"{self.path}:{lineno}: modulus is reducible")
            self._entries[(p, k)] = coeffs

    def get(self, p: int, k: int) -> tuple[int, ...]:
        key = (p, k)
        if key not in self._entries:
            self._entries[key] = find_irreducible(p, k)
            if self.path is not None:
                self.path.parent.mkdir(parents=True, exist_ok=True)
                with self.path.open("a") as fh:
                    fh.write(f"{p} {k}: {' '.join(map(str, self._entries[key]))}\n")
        return self._entries[key]


_cache: ModulusCache | None = None


def set_modulus_cache(path: str | os.PathLike | None) -> ModulusCache:
    """Point modulus lookups at ``path`` (``None`` for memory only)."""
    global _cache
    _cache = ModulusCache(path)
    field.cache_clear()
    return _cache


def modulus_cache() -> ModulusCache:
    global _cache
    if _cache is None:
        _cache = ModulusCache(os.environ.get(ENV_MODULUS_CACHE) or None)
    return _cache


# ---------------------------------------------------------------------------
# field and elements


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^k) as GF(p)[t]/(modulus).  ``modulus`` is constant term first."""

    p: int
    k: int
    modulus: tuple[int, ...]
    order: int = dc_field(init=False)

    def __post_init__(self):
        if not is_prime(self.p):
            raise UnsupportedFieldError(f"characteristic {self.p} is not prime")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.k + 1 or mod[-1] != 1:
            raise UnsupportedFieldError("modulus must be monic of degree k")
        if any(not 0 <= c < self.p for c in mod):
            raise UnsupportedFieldError("modulus coefficients must be reduced mod p")
        if not is_irreducible(self.p, mod):
            raise UnsupportedFieldError(f"modulus {mod} is reducible over GF({self.p})")
        object.__setattr__(self, "order", self.p**self.k)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    # cached packed form of the modulus minus its leading term, for p = 2
    @property
    def _modbits(self) -> int:
        return _pack(self.modulus, 2)

    def __call__(self, value) -> "FieldElement":
        """Coerce an int (packed form), a coefficient sequence or an element."""
        if isinstance(value, FieldElement):
            _check(self, value)
            return value
        if isinstance(value, int):
            if value < 0 and self.k == 1:
                value %= self.p
            if not 0 <= value < self.order:
                raise ValueError(f"packed value {value} outside GF({self.p}^{self.k})")
            return FieldElement(self, value)
        return self.from_coeffs(value)

    def from_coeffs(self, coeffs: Sequence[int]) -> "FieldElement":
        coeffs = list(coeffs)
        if len(coeffs) > self.k:
            raise ValueError(f"expected at most {self.k} coefficients")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, _pack([c % self.p for c in coeffs], self.p))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def t(self) -> "FieldElement":
        """The class of the indeterminate t."""
        return self.from_coeffs([0, 1]) if self.k > 1 else FieldElement(self, (-self.modulus[0]) % self.p)


@lru_cache(maxsize=None)
def field(p: int, k: int) -> FieldSpec:
    """GF(p^k) with the deterministic modulus from the active cache."""
    return FieldSpec(p, k, modulus_cache().get(p, k))


def _check(spec: FieldSpec, *elems: "FieldElement") -> None:
    for e in elems:
        if e.spec != spec:
            raise FieldMismatchError(f"element of {e.spec!r} used in {spec!r}")


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        return tuple(_unpack(self.value, self.spec.p, self.spec.k))

    def __repr__(self):
        return f"{self.spec!r}({':'.join(map(str, self.coeffs))})"

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            _check(self.spec, other)
            return other
        if isinstance(other, int):
            return _from_integer(self.spec, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_add(self, fe_neg(other))

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_add(other, fe_neg(self))

    def __neg__(self):
        return fe_neg(self)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_mul(self, fe_inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else fe_mul(other, fe_inv(self))

    def __pow__(self, e: int):
        return fe_pow(self, e)

    def inverse(self) -> "FieldElement":
        return fe_inv(self)


def _from_integer(spec: FieldSpec, n: int) -> FieldElement:
    """Image of the integer ``n`` under Z -> GF(p) -> GF(p^k)."""
    return FieldElement(spec, n % spec.p)


def fe_add(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = a.spec
    _check(spec, b)
    if spec.p == 2:
        return FieldElement(spec, a.value ^ b.value)
    ca, cb = _unpack(a.value, spec.p, spec.k), _unpack(b.value, spec.p, spec.k)
    return FieldElement(spec, _pack([(x + y) % spec.p for x, y in zip(ca, cb)], spec.p))


def fe_neg(a: FieldElement) -> FieldElement:
    spec = a.spec
    if spec.p == 2:
        return a
    return FieldElement(spec, _pack([(-c) % spec.p for c in _unpack(a.value, spec.p, spec.k)], spec.p))


def fe_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return fe_add(a, fe_neg(b))


def _mulmod2(a: int, b: int, k: int, modbits: int) -> int:
    # carry-less product, then reduce by the modulus from the top bit down
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    for bit in range(r.bit_length() - 1, k - 1, -1):
        if r >> bit & 1:
            r ^= modbits << (bit - k)
    return r


def fe_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    spec = a.spec
    _check(spec, b)
    if spec.p == 2:
        return FieldElement(spec, _mulmod2(a.value, b.value, spec.k, spec._modbits))
    p = spec.p
    prod = _pmul(_unpack(a.value, p, spec.k), _unpack(b.value, p, spec.k), p)
    rem = _pdivmod(prod, spec.modulus, p)[1] if len(prod) > spec.k else prod
    return FieldElement(spec, _pack(rem, p))


def fe_inv(a: FieldElement) -> FieldElement:
    """Inverse by the extended Euclidean algorithm against the modulus."""
    if a.value == 0:
        raise ZeroInverseError("zero has no multiplicative inverse")
    spec, p = a.spec, a.spec.p
    r0, r1 = list(spec.modulus), _trim(_unpack(a.value, p, spec.k))
    s0, s1 = [], [1]
    while r1:
        quo, rem = _pdivmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, _psub(s0, _pmul(quo, s1, p), p)
    # r0 is a nonzero constant; scale s0 by its inverse
    c = pow(r0[0], p - 2, p)
    inv = [(x * c) % p for x in s0]
    return FieldElement(spec, _pack(inv + [0] * (spec.k - len(inv)), p))


def fe_pow(a: FieldElement, e: int) -> FieldElement:
    """Square-and-multiply; ``0**0 == 1`` and ``0**e == 0`` for e >= 1."""
    if e < 0:
        return fe_pow(fe_inv(a), -e)
    result = a.spec.one
    base = a
    while e:
        if e & 1:
            result = fe_mul(result, base)
        e >>= 1
        if e:
            base = fe_mul(base, base)
    return result


def enumerate_elements(spec: FieldSpec) -> Iterator[FieldElement]:
    """All elements in packed-integer order."""
    if spec.order > MAX_ORDER:
        raise FieldTooLargeError(f"{spec!r} has more than 2^24 elements")
    for v in range(spec.order):
        yield FieldElement(spec, v)


@lru_cache(maxsize=None)
def find_generator(spec: FieldSpec) -> FieldElement:
    """First element (in enumeration order) of multiplicative order Q - 1."""
    n = spec.order - 1
    if n == 1:
        return spec.one
    primes = prime_factors(n)
    for v in range(2, spec.order):
        g = FieldElement(spec, v)
        if all(fe_pow(g, n // r).value != 1 for r in primes):
            return g
    raise AssertionError("multiplicative group has no generator")  # pragma: no cover


def subfield_degree(spec: FieldSpec, q: int) -> int:
    """``m`` with ``q == p**m`` and ``m | k``; raises otherwise."""
    m, r = 0, 1
    while r < q:
        r *= spec.p
        m += 1
    if r != q or m == 0 or spec.k % m:
        raise UnsupportedFieldError(f"{q} is not a subfield order of {spec!r}")
    return m


def is_in_subfield(a: FieldElement, q: int) -> bool:
    subfield_degree(a.spec, q)
    return fe_pow(a, q) == a

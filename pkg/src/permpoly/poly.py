"""Univariate polynomials over a finite field.

Two representations: :class:`SparsePoly` keeps large exponents such as
q^3 - q^2 + q as they are written, :class:`DensePoly` holds a coefficient
list and supports the ring operations needed for resultants.

Exhaustive operations (permutation checks, inverse tables, root counts)
evaluate on the whole field in chunks of :data:`CHUNK` elements; the chunk
size never changes a result.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterable, Optional, Sequence, Union

import numpy as np

from .gf import (
    MAX_ORDER,
    FieldElement,
    FieldMismatchError,
    FieldSpec,
    FieldTooLargeError,
    fe_pow,
    field,
    find_generator,
)
from .gfarray import FieldArray

CHUNK = 1 << 16


class NotAPermutationError(ValueError):
    pass


class InterpolationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class SparsePoly:
    """Sum of ``coeff * x**exp`` terms, exponents strictly increasing."""

    spec: FieldSpec
    terms: tuple[tuple[int, FieldElement], ...]

    @classmethod
    def from_terms(cls, spec: FieldSpec, terms: Iterable[tuple[int, object]]) -> "SparsePoly":
        acc: dict[int, FieldElement] = {}
        for e, c in terms:
            if e < 0 or e >= 1 << 63:
                raise ValueError(f"exponent {e} out of range")
            c = c if isinstance(c, FieldElement) else spec.zero + c
            if c.spec != spec:
                raise FieldMismatchError("coefficient from a different field")
            acc[e] = acc.get(e, spec.zero) + c
        return cls(spec, tuple((e, acc[e]) for e in sorted(acc) if acc[e]))

    @classmethod
    def x(cls, spec: FieldSpec) -> "SparsePoly":
        return cls.from_terms(spec, [(1, 1)])

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    def normalized(self) -> "SparsePoly":
        """Reduce modulo x^Q - x: exponent e >= 1 becomes ((e - 1) mod (Q - 1)) + 1."""
        n = self.spec.order - 1
        return SparsePoly.from_terms(self.spec, [(e if e == 0 else (e - 1) % n + 1, c) for e, c in self.terms])

    def __sub__(self, other) -> "SparsePoly":
        if isinstance(other, FieldElement):
            other = SparsePoly.from_terms(self.spec, [(0, other)])
        return SparsePoly.from_terms(self.spec, list(self.terms) + [(e, -c) for e, c in other.terms])

    def __call__(self, x):
        return poly_eval(self, x)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{_coeff_str(c)}*x^{e}" for e, c in self.terms)


def _coeff_str(c: FieldElement) -> str:
    return ":".join(map(str, c.coeffs))


@dataclass(frozen=True)
class DensePoly:
    """Coefficients from the constant term up; no trailing zeros."""

    spec: FieldSpec
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        cs = list(self.coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_values(cls, spec: FieldSpec, coeffs: Sequence) -> "DensePoly":
        return cls(spec, tuple(c if isinstance(c, FieldElement) else spec.zero + c for c in coeffs))

    @classmethod
    def from_roots(cls, spec: FieldSpec, roots: Iterable[FieldElement], lead=1) -> "DensePoly":
        f = cls.from_values(spec, [lead])
        for r in roots:
            f = f * cls(spec, (-r, spec.one))
        return f

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> FieldElement:
        return self.coeffs[-1] if self.coeffs else self.spec.zero

    def __bool__(self):
        return bool(self.coeffs)

    def _other(self, other) -> "DensePoly":
        if isinstance(other, DensePoly):
            if other.spec != self.spec:
                raise FieldMismatchError("polynomials over different fields")
            return other
        return DensePoly.from_values(self.spec, [other])

    def __add__(self, other):
        other = self._other(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.spec.zero
        a = self.coeffs + (z,) * (n - len(self.coeffs))
        b = other.coeffs + (z,) * (n - len(other.coeffs))
        return DensePoly(self.spec, tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return DensePoly(self.spec, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        other = self._other(other)
        if not self or not other:
            return DensePoly(self.spec, ())
        out = [self.spec.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
        return DensePoly(self.spec, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = DensePoly.from_values(self.spec, [1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        other = self._other(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        inv = other.lead.inverse()
        quo = [self.spec.zero] * max(len(rem) - dq, 0)
        for shift in range(len(rem) - 1 - dq, -1, -1):
            c = rem[shift + dq] * inv
            quo[shift] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[shift + i] = rem[shift + i] - c * b
        return DensePoly(self.spec, tuple(quo)), DensePoly(self.spec, tuple(rem[:dq]))

    def __eq__(self, other):
        if not isinstance(other, DensePoly):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.spec, self.coeffs))

    def __call__(self, x):
        return poly_eval(self, x)

    def map_coeffs(self, spec: FieldSpec, fn: Callable[[FieldElement], FieldElement]) -> "DensePoly":
        return DensePoly(spec, tuple(fn(c) for c in self.coeffs))

    def to_sparse(self) -> SparsePoly:
        return SparsePoly.from_terms(self.spec, enumerate(self.coeffs))

    def __str__(self):
        return str(self.to_sparse())


Poly = Union[SparsePoly, DensePoly]


def poly_eval(f: Poly, x):
    """Evaluate at a FieldElement or at every entry of a FieldArray."""
    if x.spec != f.spec:
        raise FieldMismatchError("point and polynomial live in different fields")
    if isinstance(f, DensePoly):
        acc = x * 0
        for c in reversed(f.coeffs):
            acc = acc * x + c
        return acc
    acc = x * 0
    for e, c in f.terms:
        acc = acc + (x**e) * c
    return acc


def _require_enumerable(spec: FieldSpec) -> None:
    if spec.order > MAX_ORDER:
        raise FieldTooLargeError(f"{spec!r} has more than 2^24 elements")


def value_table(f, spec: FieldSpec, chunk: int = CHUNK) -> np.ndarray:
    """Packed values of ``f`` at every element, in enumeration order.

    ``f`` may be a polynomial or any callable mapping a FieldArray to a
    FieldArray.
    """
    _require_enumerable(spec)
    out = np.empty(spec.order, dtype=np.int64)
    for lo in range(0, spec.order, chunk):
        hi = min(lo + chunk, spec.order)
        xs = FieldArray(spec, np.arange(lo, hi, dtype=np.int64))
        out[lo:hi] = (poly_eval(f, xs) if isinstance(f, (SparsePoly, DensePoly)) else f(xs)).values
    return out


# ---------------------------------------------------------------------------
# exhaustive checks


@dataclass(frozen=True)
class PermCheckReport:
    is_permutation: bool
    collision: Optional[tuple[FieldElement, FieldElement]]
    root_count: int


def first_collision(values: np.ndarray) -> Optional[tuple[int, int]]:
    """Smallest x2 whose value already occurred at some x1 < x2, as (x1, x2)."""
    _, first = np.unique(values, return_index=True)
    seen_before = np.ones(len(values), dtype=bool)
    seen_before[first] = False
    if not seen_before.any():
        return None
    x2 = int(np.argmax(seen_before))
    x1 = int(np.argmax(values == values[x2]))
    return x1, x2


def is_permutation(f: Poly, chunk: int = CHUNK) -> PermCheckReport:
    spec = f.spec
    vals = value_table(f, spec, chunk)
    hit = first_collision(vals)
    collision = None if hit is None else (spec(hit[0]), spec(hit[1]))
    return PermCheckReport(hit is None, collision, int(np.count_nonzero(vals == 0)))


def count_roots(f: Poly, chunk: int = CHUNK) -> int:
    return int(np.count_nonzero(value_table(f, f.spec, chunk) == 0))


def brute_inverse_table(f: Poly, chunk: int = CHUNK) -> FieldArray:
    """Table ``g`` (indexed by packed value) with g[f(x)] = x for all x."""
    spec = f.spec
    vals = value_table(f, spec, chunk)
    if first_collision(vals) is not None:
        raise NotAPermutationError("polynomial does not permute the field")
    table = np.empty(spec.order, dtype=np.int64)
    table[vals] = np.arange(spec.order, dtype=np.int64)
    return FieldArray(spec, table)


def _as_map(g, spec: FieldSpec) -> Callable[[FieldArray], FieldArray]:
    if isinstance(g, (SparsePoly, DensePoly)):
        return lambda xs: poly_eval(g, xs)
    if isinstance(g, FieldArray):
        if len(g) != spec.order:
            raise ValueError("inverse table must cover the whole field")
        return lambda xs: FieldArray(spec, g.values[xs.values])
    return g


@dataclass(frozen=True)
class InverseCheck:
    ok: bool
    counterexample: Optional[FieldElement] = None
    direction: Optional[str] = None

    def __bool__(self):
        return self.ok


def verify_inverse(f, g, spec: Optional[FieldSpec] = None, chunk: int = CHUNK) -> InverseCheck:
    """Check g(f(x)) = x and then f(g(x)) = x for every x; report the first failure.

    ``f`` and ``g`` may be polynomials, full-field tables (FieldArray) or
    callables on FieldArrays.
    """
    spec = spec or getattr(f, "spec", None) or getattr(g, "spec")
    _require_enumerable(spec)
    fm, gm = _as_map(f, spec), _as_map(g, spec)
    for name, outer, inner in (("g(f(x))", gm, fm), ("f(g(x))", fm, gm)):
        for lo in range(0, spec.order, chunk):
            xs = FieldArray(spec, np.arange(lo, min(lo + chunk, spec.order), dtype=np.int64))
            bad = np.flatnonzero(outer(inner(xs)).values != xs.values)
            if len(bad):
                return InverseCheck(False, spec(int(xs.values[bad[0]])), name)
    return InverseCheck(True)


def lagrange_interpolate(points, guard: int = 4096) -> DensePoly:
    """The unique polynomial of degree < Q through a full-field point set.

    ``points`` is either a sequence of (x, y) FieldElement pairs or a pair
    (xs, ys) of FieldArrays.  With every element present the Lagrange basis
    polynomial at ``a`` is 1 - (x - a)^(Q-1), which expands to
    coefficient y_0 at x^0 and -sum_a y_a a^(Q-1-j) at x^j for j >= 1.
    """
    if isinstance(points, tuple) and len(points) == 2 and isinstance(points[0], FieldArray):
        xs, ys = points
    else:
        points = list(points)
        if not points:
            raise InterpolationError("no points")
        xs = FieldArray.of(p[0] for p in points)
        ys = FieldArray.of(p[1] for p in points)
    spec = xs.spec
    Q = spec.order
    if Q > guard:
        raise InterpolationError(f"field order {Q} exceeds the interpolation guard {guard}")
    if len(xs) != Q or len(np.unique(xs.values)) != Q:
        raise InterpolationError("points must cover every field element exactly once")
    order = np.argsort(xs.values)
    xs, ys = FieldArray(spec, xs.values[order]), FieldArray(spec, ys.values[order])
    coeffs = [ys[0]]
    for j in range(1, Q):
        coeffs.append(-((xs ** (Q - 1 - j)) * ys).sum())
    return DensePoly(spec, tuple(coeffs))


def reduce_mod_field(f: DensePoly) -> DensePoly:
    """Reduce modulo x^Q - x."""
    return _sparse_to_dense(f.to_sparse().normalized())


def _sparse_to_dense(f: SparsePoly) -> DensePoly:
    out = [f.spec.zero] * (f.degree + 1)
    for e, c in f.terms:
        out[e] = c
    return DensePoly(f.spec, tuple(out))


# ---------------------------------------------------------------------------
# resultants


def determinant(rows: Sequence[Sequence[FieldElement]]) -> FieldElement:
    """Gaussian elimination with first-nonzero pivoting."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix must be square")
    if n == 0:
        raise ValueError("empty matrix")
    det = a[0][0].spec.one
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return det.spec.zero
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        pv = a[col][col]
        det = det * pv
        inv = pv.inverse()
        for r in range(col + 1, n):
            if a[r][col]:
                factor = a[r][col] * inv
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def sylvester_matrix(f: DensePoly, g: DensePoly) -> list[list[FieldElement]]:
    """Order n+m matrix: m shifted rows of f, then n shifted rows of g, leading coefficients first."""
    if not f or not g:
        raise ValueError("resultant of the zero polynomial")
    if f.spec != g.spec:
        raise FieldMismatchError("polynomials over different fields")
    n, m = f.degree, g.degree
    if n < 1 or m < 1:
        raise ValueError("both polynomials need degree >= 1")
    zero = f.spec.zero
    size = n + m
    fa, gb = f.coeffs[::-1], g.coeffs[::-1]
    rows = []
    for i in range(m):
        rows.append([zero] * i + list(fa) + [zero] * (size - n - 1 - i))
    for i in range(n):
        rows.append([zero] * i + list(gb) + [zero] * (size - m - 1 - i))
    return rows


def sylvester_resultant(f: DensePoly, g: DensePoly) -> FieldElement:
    return determinant(sylvester_matrix(f, g))


@dataclass(frozen=True)
class Embedding:
    """Field homomorphism GF(p^k) -> GF(p^K), t -> root of the small modulus."""

    small: FieldSpec
    big: FieldSpec
    image_of_t: FieldElement

    def __call__(self, a: FieldElement) -> FieldElement:
        acc = self.big.zero
        for c in reversed(a.coeffs):
            acc = acc * self.image_of_t + c
        return acc


def embed_field(small: FieldSpec, big: FieldSpec) -> Embedding:
    """Embed by scanning the order-|small| subfield of ``big`` for a root of the modulus."""
    if small.p != big.p or big.k % small.k:
        raise ValueError(f"{small!r} is not a subfield of {big!r}")
    if small == big:
        return Embedding(small, big, small.t)
    mod = DensePoly.from_values(big, list(small.modulus))
    h = fe_pow(find_generator(big), (big.order - 1) // (small.order - 1))
    units = [big.one]
    for _ in range(small.order - 2):
        units.append(units[-1] * h)
    cand = FieldArray(big, [0] + [u.value for u in units])
    hits = np.flatnonzero(poly_eval(mod, cand).iszero())
    return Embedding(small, big, cand[int(hits[0])])


def _roots_with_multiplicity(f: DensePoly) -> list[FieldElement]:
    vals = value_table(f, f.spec)
    roots = []
    for v in np.flatnonzero(vals == 0):
        r = f.spec(int(v))
        lin = DensePoly(f.spec, (-r, f.spec.one))
        h = f
        while h.degree >= 1:
            quo, rem = divmod(h, lin)
            if rem:
                break
            roots.append(r)
            h = quo
    return roots


def resultant_product_oracle(f: DensePoly, g: DensePoly, cap: int = 1 << 18) -> Optional[FieldElement]:
    """R(f, g) = lead(f)^deg(g) * prod g(alpha_i) over the roots alpha_i of f.

    The roots are found by scanning GF(Q^d) for the smallest d whose
    extension contains all deg(f) roots (counted with multiplicity); returns
    ``None`` when no such extension of order <= ``cap`` exists.
    """
    small = f.spec
    n, m = f.degree, g.degree
    for d in range(1, lcm(*range(1, n + 1)) + 1):
        if lcm(*range(1, n + 1)) % d:
            continue
        if small.order**d > cap:
            return None
        big = field(small.p, small.k * d)
        emb = embed_field(small, big)
        fb, gb = f.map_coeffs(big, emb), g.map_coeffs(big, emb)
        roots = _roots_with_multiplicity(fb)
        if len(roots) == n:
            acc = fb.lead**m
            for r in roots:
                acc = acc * poly_eval(gb, r)
            # the product lies in the image of the small field; pull it back
            for c in range(small.order):
                if emb(small(c)) == acc:
                    return small(c)
            raise AssertionError("resultant outside the base field")  # pragma: no cover
    return None

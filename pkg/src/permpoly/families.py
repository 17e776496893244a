"""The three trinomial families over GF(q^3) and their inverses.

    f1(x) = x + A x^(q^2-q+1) + x^(q^2+q-1)        q = 2^m, A^3 = 1
    f2(x) = x + A x^(q^3-q^2+q) + x^(q^2+q-1)      q = 2^m, A^3 = 1
    f3(x) = x + A x^(q^2-q+1) + A^2 x^(q^2)        any q, A in GF(q)*

Each inverse is available in the piecewise form (three branches), the
single-fraction form, and for f3 the power-map form.  The inverse's
argument is called ``y`` throughout.

The piecewise forms are written as combiners of the Frobenius projections
(a, b, c) = (y, y^q, y^(q^2)); :mod:`permpoly.localmethod` certifies the
same combiners against f directly.  For f1/f2 the first-branch denominator
is the linearized map applied to the inner (q+1)-th power:
D = N0 + A N0^q + A^2 N0^(q^2) (f1) and N0 + A^2 N0^q + A N0^(q^2) (f2).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .gf import FieldElement, is_in_subfield
from .gfarray import FieldArray, where
from .poly import DensePoly, SparsePoly, poly_eval, sylvester_resultant
from .tower import TowerParams, frob_q

DEFAULT_SEED = 20240917


class Family(str, enum.Enum):
    F1 = "f1"
    F2 = "f2"
    F3 = "f3"


class TheoremContractError(ArithmeticError):
    """A closed-form inverse hit a zero denominator inside its own branch."""


class DegenerateSampleError(ValueError):
    """A resultant pair lost its displayed leading coefficient."""


@dataclass(frozen=True)
class FamilyParams:
    family: Family
    tower: TowerParams
    A: FieldElement

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        t, A = self.tower, self.A
        if A.spec != t.spec:
            raise ValueError("A must live in the tower field")
        if not A:
            raise ValueError("A must be nonzero")
        if not is_in_subfield(A, t.q):
            raise ValueError("A must lie in GF(q)")
        if self.family is not Family.F3:
            if t.p != 2:
                raise ValueError(f"{self.family.value} needs q = 2^m")
            if A**3 != t.spec.one:
                raise ValueError(f"{self.family.value} needs A^3 = 1")

    @property
    def q(self) -> int:
        return self.tower.q

    @property
    def m(self) -> int:
        return self.tower.m


def family_poly(fp: FamilyParams, normalized: bool = False) -> SparsePoly:
    q, A, spec = fp.q, fp.A, fp.tower.spec
    if fp.family is Family.F1:
        terms = [(1, 1), (q * q - q + 1, A), (q * q + q - 1, 1)]
    elif fp.family is Family.F2:
        terms = [(1, 1), (q**3 - q * q + q, A), (q * q + q - 1, 1)]
    else:
        terms = [(1, 1), (q * q - q + 1, A), (q * q, A * A)]
    f = SparsePoly.from_terms(spec, terms)
    return f.normalized() if normalized else f


def predicted_pp(fp: FamilyParams) -> bool:
    if fp.family is Family.F1:
        return fp.m % 3 != 2
    if fp.family is Family.F2:
        return fp.m % 3 != 1
    return fp.A**3 != fp.tower.spec.one


# ---------------------------------------------------------------------------
# combiners on projections (a, b, c); each returns (x, branch, bad)
#
# branch: 0 for a = 0, 1 and 2 for the two nonzero branches.
# bad: entries whose branch denominator vanished.


def _safe_div(num: FieldArray, den: FieldArray) -> FieldArray:
    return num / where(den.iszero(), den.spec.one, den)


def _linearized_f1(fp, a, b, c):
    A = fp.A
    return a + b * A + c * (A * A)


def _linearized_f2(fp, a, b, c):
    A = fp.A
    return a + b * (A * A) + c * A


def _piecewise(fp: FamilyParams, a: FieldArray, b: FieldArray, c: FieldArray, printed: bool = False):
    A, q = fp.A, fp.q
    A2 = A * A
    if fp.family is Family.F1:
        inner = a * c * A + c * c + b * b * A
        lin = _linearized_f1(fp, a, b, c)
        n0 = inner ** (q + 1)
        den1 = n0 + (n0**q) * A + (n0 ** (q * q)) * A2
    elif fp.family is Family.F2:
        inner = a * a + a * c * A + b * b * A
        lin = _linearized_f2(fp, a, b, c)
        n0 = inner ** (q + 1)
        den1 = n0 + (n0**q) * A2 + (n0 ** (q * q)) * A
    else:
        raise ValueError("piecewise inverse exists for f1 and f2 only")
    if fp.family is Family.F1:
        num2, den2 = a * b * b * c, b * b * c + a * b * b * A + a * c * c
    elif printed:
        num2, den2 = a * b * b * c, b * b * c + a * c * c * A + a * b * b
    else:
        # on lin = 0: az = by and bx = cz, hence x = abc^2 / (bc^2 + Aac^2 + ab^2)
        num2, den2 = a * b * c * c, b * c * c + a * c * c * A + a * b * b
    nonzero = ~a.iszero()
    b1 = nonzero & ~lin.iszero()
    b2 = nonzero & lin.iszero()
    x = where(b1, _safe_div(n0 * lin, den1), where(b2, _safe_div(num2, den2), a.spec.zero))
    branch = np.where(b1, 1, np.where(b2, 2, 0))
    bad = (b1 & den1.iszero()) | (b2 & den2.iszero())
    return x, branch, bad


def _f3_combine(fp: FamilyParams, a: FieldArray, b: FieldArray, c: FieldArray):
    A = fp.A
    den = a * (A * A) + c * A + b
    nonzero = ~a.iszero()
    x = where(nonzero, _safe_div(a * b, den), a.spec.zero)
    return x, np.where(nonzero, 1, 0), nonzero & den.iszero()


def theorem_combiner(fp: FamilyParams) -> Callable:
    """The x-recovery map (a, b, c) -> x used in each family's proof."""
    if fp.family is Family.F3:
        return lambda a, b, c: _f3_combine(fp, a, b, c)
    return lambda a, b, c: _piecewise(fp, a, b, c)


def _projections(fp: FamilyParams, y: FieldArray):
    yq = frob_q(fp.tower, y)
    return y, yq, frob_q(fp.tower, yq)


def _scalar_or_array(fn):
    def wrapper(fp: FamilyParams, y, *args, **kwargs):
        if isinstance(y, FieldElement):
            return fn(fp, FieldArray(y.spec, [y.value]), *args, **kwargs)[0]
        return fn(fp, y, *args, **kwargs)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _require(fp: FamilyParams, family: Family) -> None:
    if fp.family is not family:
        raise ValueError(f"expected {family.value} parameters, got {fp.family.value}")
    if not predicted_pp(fp):
        raise ValueError(f"{fp.family.value} is not a permutation for these parameters")


def piecewise_inverse(fp: FamilyParams, y: FieldArray, printed: bool = False):
    """Piecewise inverse on an array: returns (values, branch ids).

    For f2 the second branch defaults to y^(2q^2+q+1) / (y^(2q^2+q) +
    A y^(2q^2+1) + y^(2q+1)).  ``printed=True`` swaps in the variant with
    exponents q^2+2q+1 and q^2+2q, which is *not* an inverse on that branch
    and is kept only so the discrepancy stays testable.
    """
    x, branch, bad = _piecewise(fp, *_projections(fp, y), printed=printed)
    if bad.any():
        i = int(np.argmax(bad))
        raise TheoremContractError(f"branch {branch[i]} denominator vanishes at y = {y[i]!r}")
    return x, branch


@_scalar_or_array
def f1_inverse_eval(fp: FamilyParams, y):
    _require(fp, Family.F1)
    return piecewise_inverse(fp, y)[0]


@_scalar_or_array
def f2_inverse_eval(fp: FamilyParams, y, printed: bool = False):
    _require(fp, Family.F2)
    return piecewise_inverse(fp, y, printed=printed)[0]


def inverse_branch(fp: FamilyParams, y: FieldElement) -> int:
    """Which piecewise branch handles ``y``: 1, 2, or 0 for y = 0."""
    return int(piecewise_inverse(fp, FieldArray(y.spec, [y.value]))[1][0])


# single-fraction forms, term lists (coefficient power of A, exponent in y)


def _rational_terms(fp: FamilyParams):
    q = fp.q
    qq = q * q
    if fp.family is Family.F1:
        num = [(2, 2 * q + 2), (2, qq + 3), (2, 2 * qq + q + 1), (2, 4 * qq),
               (1, 2 * qq + 2),
               (0, 3 * q + 1), (0, qq + q + 2), (0, 2 * qq + 2 * q), (0, 3 * qq + 1)]
        den = [(2, 2 * q + 1), (2, 2 * qq + q), (2, qq + 2),
               (0, 3), (0, 3 * q), (0, 3 * qq), (0, qq + q + 1)]
    elif fp.family is Family.F2:
        num = [(2, 2 * qq + 2), (2, q + 3), (2, qq + 2 * q + 1), (2, 4 * q),
               (1, 2 * q + 2),
               (0, 3 * qq + 1), (0, qq + q + 2), (0, 2 * qq + 2 * q), (0, 3 * q + 1)]
        den = [(2, q + 2), (2, 2 * q + qq), (2, 2 * qq + 1),
               (0, 3), (0, 3 * q), (0, 3 * qq), (0, qq + q + 1)]
    else:
        raise ValueError("single-fraction inverse exists for f1 and f2 only")
    return num, den


def _eval_terms(fp: FamilyParams, terms, y: FieldArray) -> FieldArray:
    acc = y * 0
    for apow, e in terms:
        acc = acc + (y**e) * (fp.A**apow)
    return acc


def rational_inverse(fp: FamilyParams, y: FieldArray) -> FieldArray:
    num_terms, den_terms = _rational_terms(fp)
    num, den = _eval_terms(fp, num_terms, y), _eval_terms(fp, den_terms, y)
    nonzero = ~y.iszero()
    bad = nonzero & den.iszero()
    if bad.any():
        raise TheoremContractError(f"rational inverse denominator vanishes at y = {y[int(np.argmax(bad))]!r}")
    return where(nonzero, _safe_div(num, den), y.spec.zero)


@_scalar_or_array
def f1_inverse_rational_eval(fp: FamilyParams, y):
    _require(fp, Family.F1)
    return rational_inverse(fp, y)


@_scalar_or_array
def f2_inverse_rational_eval(fp: FamilyParams, y):
    _require(fp, Family.F2)
    return rational_inverse(fp, y)


@_scalar_or_array
def f3_inverse_eval(fp: FamilyParams, y):
    """(A^2 y + y^q + A y^(q^2))^(q^3 - 2) * y^(q+1); total on the field."""
    if fp.family is not Family.F3:
        raise ValueError("f3_inverse_eval needs f3 parameters")
    A, q = fp.A, fp.q
    yq = y**q
    lin = y * (A * A) + yq + (yq**q) * A
    return lin ** (q**3 - 2) * y ** (q + 1)


@_scalar_or_array
def f3_remark_case_eval(fp: FamilyParams, y):
    """The four-case solution listed alongside the f3 resultant, y != 0 entries only.

    Cases: a in GF(q)* and A = -1 -> a; a in GF(q)* otherwise ->
    a / (A^2 + A + 1); a outside GF(q) with a + bA = 0 -> b / A^2;
    else ab / (aA^2 + cA + b).  Zero maps to zero.
    """
    A = fp.A
    spec = fp.tower.spec
    a, b, c = _projections(fp, y)
    in_base = (b - a).iszero() & ~a.iszero()
    minus_one = A == -spec.one
    s = A * A + A + 1
    case1 = a
    case2 = a / s if s else a * 0
    case3 = b / (A * A)
    case4 = _safe_div(a * b, a * (A * A) + c * A + b)
    out = where((a + b * A).iszero(), case3, case4)
    out = where(in_base, case1 if minus_one else case2, out)
    return where(a.iszero(), spec.zero, out)


@dataclass(frozen=True)
class InverseForm:
    """One way of computing the inverse: piecewise_theorem, rational_remark, power_map or brute_table."""

    kind: str
    evaluate: Callable[[FieldArray], FieldArray] = field(repr=False)

    def __call__(self, y):
        if isinstance(y, FieldElement):
            return self.evaluate(FieldArray(y.spec, [y.value]))[0]
        return self.evaluate(y)


def inverse_forms(fp: FamilyParams) -> dict[str, InverseForm]:
    """Closed-form inverses available for the family (brute table excluded)."""
    if fp.family is Family.F3:
        return {
            "power_map": InverseForm("power_map", lambda y: f3_inverse_eval(fp, y)),
            "remark_cases": InverseForm("remark_cases", lambda y: f3_remark_case_eval(fp, y)),
        }
    return {
        "piecewise_theorem": InverseForm("piecewise_theorem", lambda y: piecewise_inverse(fp, y)[0]),
        "rational_remark": InverseForm("rational_remark", lambda y: rational_inverse(fp, y)),
    }


# ---------------------------------------------------------------------------
# resultant factorizations from the remarks


def remark_quartics_f1(t: TowerParams, A, a, b, c, x) -> tuple[DensePoly, DensePoly]:
    """The two quartics in y obtained by eliminating z in the f1 system."""
    spec = t.spec
    f = DensePoly.from_values(spec, [
        A * a * b * x * x + A * b * x**3 + a * a * x * x,
        a * A * x * x + A * x**3,
        b * x + a * b,
        a + x,
        A,
    ])
    g = DensePoly.from_values(spec, [
        A * A * x**4 + c * A * x**3 + a * c * A * x * x,
        x**3 + a * a * x,
        a * a * A + A * x * x + a * c + c * x,
        spec.zero,
        spec.one,
    ])
    return f, g


def remark_alpha_beta_f1(A, a, b, c) -> tuple[FieldElement, FieldElement]:
    A2 = A * A
    alpha = a * b * b * A2 + b * c * c * A2 + c * a * a * A2 + a**3 + b**3 + c**3 + a * b * c
    beta = (a * a * b * b * A2 + a**3 * c * A2 + a * b * c * c * A2 + c**4 * A2 + a * a * c * c * A
            + a * b**3 + a * a * b * c + b * b * c * c + a * c**3)
    return alpha, beta


def remark_quartics_f2(t: TowerParams, A, a, b, c, y) -> tuple[DensePoly, DensePoly]:
    """The two quartics in x obtained by eliminating z in the f2 system."""
    spec = t.spec
    f = DensePoly.from_values(spec, [
        A * a * b * y * y + A * a * y**3 + b * b * y * y,
        b * A * y * y + A * y**3,
        a * y + a * b,
        b + y,
        A,
    ])
    g = DensePoly.from_values(spec, [
        A * A * y**4 + c * A * y**3 + b * c * A * y * y,
        y**3 + b * b * y,
        b * b * A + A * y * y + b * c + c * y,
        spec.zero,
        spec.one,
    ])
    return f, g


def remark_alpha_beta_f2(A, a, b, c) -> tuple[FieldElement, FieldElement]:
    A2 = A * A
    alpha = b * a * a * A2 + b * b * c * A2 + c * c * a * A2 + a**3 + b**3 + c**3 + a * b * c
    beta = (a * a * b * b * A2 + b**3 * c * A2 + a * b * c * c * A2 + c**4 * A2 + b * b * c * c * A
            + b * a**3 + b * b * a * c + a * a * c * c + b * c**3)
    return alpha, beta


def remark_pair_f3(t: TowerParams, A, a, b, c, x) -> tuple[DensePoly, DensePoly]:
    """Linear and quadratic polynomials in y from the f3 system."""
    spec = t.spec
    f = DensePoly.from_values(spec, [
        A * A * c * x * x - b * c * x,
        A * x * x + A * A * b * x - A**4 * x * x + c * x,
    ])
    g = DensePoly.from_values(spec, [
        spec.zero,
        x * b - a * b + A * A * a * x,
        A**3 * x - x + a,
    ])
    return f, g


def remark_factored_form(family: Family, A, a, b, c, x) -> FieldElement:
    family = Family(family)
    if family is Family.F1:
        alpha, beta = remark_alpha_beta_f1(A, a, b, c)
        return x**4 * (x + a) ** 8 * (alpha * x + beta)
    if family is Family.F2:
        alpha, beta = remark_alpha_beta_f2(A, a, b, c)
        return x**4 * (x + b) ** 8 * (alpha * x + beta)
    return A * c * x * x * (A * A * x - b) * ((A**3 - 1) * x - b * A) * ((a * A * A + c * A + b) * x - a * b)


def remark_resultant_identity(family: Family, t: TowerParams, A, x, a) -> bool:
    """Sylvester resultant of the displayed pair against its displayed factorization.

    ``b = a^q`` and ``c = a^(q^2)`` are derived from ``a``.  ``x`` is the
    variable left after elimination (it is called y in the f2 display).
    Raises DegenerateSampleError when a displayed leading coefficient vanishes.
    """
    family = Family(family)
    b = frob_q(t, a)
    c = frob_q(t, b)
    if family is Family.F1:
        f, g = remark_quartics_f1(t, A, a, b, c, x)
        expected_degrees = (4, 4)
    elif family is Family.F2:
        f, g = remark_quartics_f2(t, A, a, b, c, x)
        expected_degrees = (4, 4)
    else:
        f, g = remark_pair_f3(t, A, a, b, c, x)
        expected_degrees = (1, 2)
    if (f.degree, g.degree) != expected_degrees:
        raise DegenerateSampleError(f"leading coefficient vanished at x={x!r}, a={a!r}")
    return sylvester_resultant(f, g) == remark_factored_form(family, A, a, b, c, x)


def max_draws_for(samples: int) -> int:
    return 20 * samples + 100


@dataclass
class ResultantReport:
    family: str
    seed: int
    samples: int
    equal: int = 0
    unequal: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)
    skipped_draws: list = field(default_factory=list)


def resultant_identity_suite(fp: FamilyParams, samples: int = 500, seed: int = DEFAULT_SEED) -> ResultantReport:
    """``samples`` non-degenerate seeded draws (x, a) with a != 0.

    Degenerate draws are logged in ``skipped_draws`` and replaced by further
    draws from the same stream, up to ``max_draws`` in total.
    """
    rng = random.Random(seed)
    spec = fp.tower.spec
    rep = ResultantReport(fp.family.value, seed, samples)
    draws = 0
    while rep.equal + rep.unequal < samples and draws < max_draws_for(samples):
        draws += 1
        x = spec(rng.randrange(spec.order))
        a = spec(rng.randrange(1, spec.order))
        try:
            ok = remark_resultant_identity(fp.family, fp.tower, fp.A, x, a)
        except DegenerateSampleError:
            rep.skipped += 1
            rep.skipped_draws.append((x.value, a.value))
            continue
        if ok:
            rep.equal += 1
        else:
            rep.unequal += 1
            rep.failures.append((x.value, a.value))
    return rep


# ---------------------------------------------------------------------------
# non-permutation witnesses for f3


@dataclass(frozen=True)
class F3Witness:
    kind: str
    roots: tuple[FieldElement, ...]
    alpha: Optional[FieldElement] = None


def f3_non_pp_witness(fp: FamilyParams, kind: Optional[str] = None) -> Optional[F3Witness]:
    """Witness that f3 is not a permutation when A^3 = 1.

    For A^2 + A + 1 = 0 this is f3(0) = f3(1) = 0 (kind "cube_root_pair").
    For A = 1 it is a nonzero root beta of f3 whose (q-1)-th power alpha
    satisfies alpha^(q+1) + alpha^q + 1 = 0, found by scanning the field
    (kind "frobenius_root").  In characteristic 3 both apply to A = 1;
    ``kind`` selects one, otherwise the first available is returned.
    """
    if fp.family is not Family.F3:
        raise ValueError("f3 parameters expected")
    if kind not in (None, "cube_root_pair", "frobenius_root"):
        raise ValueError(f"unknown witness kind {kind!r}")
    spec, A, q = fp.tower.spec, fp.A, fp.q
    f = family_poly(fp)
    if kind != "frobenius_root" and A * A + A + 1 == spec.zero:
        if not poly_eval(f, spec.zero) and not poly_eval(f, spec.one):
            return F3Witness("cube_root_pair", (spec.zero, spec.one))
    if kind != "cube_root_pair" and A == spec.one:
        xs = FieldArray.all(spec)
        alpha = xs ** (q - 1)
        ok = (~xs.iszero() & poly_eval(f, xs).iszero()
              & (alpha ** (q + 1) + alpha**q + 1).iszero())
        if ok.any():
            i = int(np.argmax(ok))
            return F3Witness("frobenius_root", (xs[i],), alpha[i])
    return None

from math import gcd

import pytest

from permpoly.families import Family, FamilyParams, family_poly, predicted_pp
from permpoly.gf import field
from permpoly.gfarray import FieldArray
from permpoly.localmethod import (
    LocalScheme,
    discriminant_nonvanishing,
    discriminant_values,
    discriminant_witness,
    first_projection,
    frob_projections,
    frobenius_projections,
    gcd_sanity,
    identity_abc_check,
    lemma_certify,
    theorem_scheme,
)
from permpoly.poly import SparsePoly, brute_inverse_table
from permpoly.tower import cube_roots_of_unity, subfield_units, tower_make


def test_identity_with_first_projection():
    t = tower_make(2, 1)
    scheme = LocalScheme(SparsePoly.x(t.spec), frobenius_projections(t), first_projection)
    cert = lemma_certify(scheme)
    assert cert and (cert.inverse_table.values == FieldArray.all(t.spec).values).all()


def test_frob_projections():
    t = tower_make(2, 2)
    x = t.spec(37)
    assert frob_projections(t, SparsePoly.x(t.spec), x) == (x, x**4, x**16)
    fp = FamilyParams(Family.F1, t, t.spec.one)
    zero = t.spec.zero
    assert frob_projections(t, family_poly(fp), zero) == (zero, zero, zero)


def test_f3_scheme_certified():
    t = tower_make(3, 1)
    fp = FamilyParams(Family.F3, t, t.spec(2))
    cert = lemma_certify(theorem_scheme(fp))
    assert cert.ok
    assert (cert.inverse_table.values == brute_inverse_table(family_poly(fp)).values).all()


def test_non_permutation_gives_counterexample():
    t = tower_make(2, 2)
    cert = lemma_certify(theorem_scheme(FamilyParams(Family.F1, t, t.spec.one)))
    assert not cert and cert.counterexample is not None


def test_wrong_combiner_rejected():
    t = tower_make(2, 1)
    fp = FamilyParams(Family.F1, t, t.spec.one)
    scheme = LocalScheme(family_poly(fp), frobenius_projections(t), first_projection)
    assert not lemma_certify(scheme)


@pytest.mark.parametrize("family,p,m", [("f1", 2, 1), ("f1", 2, 3), ("f1", 2, 4), ("f2", 2, 2), ("f2", 2, 3), ("f3", 3, 1), ("f3", 5, 1), ("f3", 3, 2)])
def test_certified_tables_match_brute(family, p, m):
    t = tower_make(p, m)
    values = subfield_units(t) if family == "f3" else cube_roots_of_unity(t)
    for A in values:
        fp = FamilyParams(Family(family), t, A)
        cert = lemma_certify(theorem_scheme(fp), chunk=100)
        assert cert.ok == predicted_pp(fp)
        if cert.ok:
            assert (cert.inverse_table.values == brute_inverse_table(family_poly(fp)).values).all()


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_identity_abc(m):
    t = tower_make(2, m)
    for A in cube_roots_of_unity(t):
        assert identity_abc_check(FamilyParams(Family.F1, t, A))
    with pytest.raises(ValueError):
        identity_abc_check(FamilyParams(Family.F2, t, t.spec.one))


def test_discriminant():
    t8 = tower_make(2, 1)
    fp = FamilyParams(Family.F1, t8, t8.spec.one)
    d = discriminant_values(fp)
    assert d[0] == t8.spec.zero and not d.iszero()[1:].any()
    assert discriminant_nonvanishing(FamilyParams(Family.F1, tower_make(2, 3), tower_make(2, 3).spec.one))
    t64 = tower_make(2, 2)
    assert discriminant_witness(FamilyParams(Family.F1, t64, t64.spec.one)) is not None
    assert discriminant_witness(FamilyParams(Family.F2, t8, t8.spec.one)) is not None
    with pytest.raises(ValueError):
        discriminant_nonvanishing(FamilyParams(Family.F2, t8, t8.spec.one))


def test_gcd_sanity():
    assert gcd_sanity(1, Family.F1) and gcd(3, 7) == 1
    assert gcd_sanity(3, "f1") and gcd(15, 511) == 1
    assert not gcd_sanity(2, "f1") and not gcd_sanity(1, "f2")
    for m in range(1, 31):
        assert gcd_sanity(m, "f1") == (m % 3 != 2)
        assert gcd_sanity(m, "f2") == (m % 3 != 1)
    with pytest.raises(ValueError):
        gcd_sanity(0, "f1")


def test_lemma_field_is_whole_tower():
    t = tower_make(2, 1)
    scheme = theorem_scheme(FamilyParams(Family.F1, t, t.spec.one))
    assert scheme.f.spec == field(2, 3)

"""Command line interface: ``permpoly <command> [options]``.

Commands
--------
verify            run the verification suites for one family / tower / A
invert            evaluate an inverse at one value
enumerate         cross-tabulate predicted vs observed bijectivity
resultant-check   seeded checks of the resultant factorizations
interpolate       interpolate the inverse table into a polynomial
check-poly        permutation check for an arbitrary polynomial literal

Element selectors (``--A``): ``unity3:j`` (j-th cube root of unity in
generator order), ``unit:j`` (j-th element of GF(q)*, generator order) or
``coeffs:c0,c1,...``.

Field element literals (``--value`` and polynomial coefficients): base-p
digits joined by ``:``, constant term first (``1:0:1`` is 1 + t^2), or
``g^j`` for the j-th power of the field generator.

Polynomial literals::

    poly  := term ('+' term)*
    term  := coeff '*' mono | mono | coeff
    mono  := 'x' | 'x^' INT
    coeff := DIGITS (':' DIGITS)* | 'g^' INT

Whitespace is ignored.  Example: ``x + g^3*x^6 + x^5``.

Output is one JSON document on stdout (``--format text`` for a table).
Exit status: 0 when every observation matches what the theorems predict,
1 on a contradicting observation, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from contextlib import contextmanager
from typing import Optional

from . import gf
from .families import (
    DEFAULT_SEED,
    Family,
    FamilyParams,
    TheoremContractError,
    f3_inverse_eval,
    f3_non_pp_witness,
    family_poly,
    inverse_forms,
    piecewise_inverse,
    predicted_pp,
    rational_inverse,
    resultant_identity_suite,
)
from .gf import FieldElement, FieldSpec, fe_pow, find_generator
from .gfarray import FieldArray
from .localmethod import (
    discriminant_witness,
    identity_abc_check,
    lemma_certify,
    theorem_scheme,
)
from .poly import (
    SparsePoly,
    brute_inverse_table,
    is_permutation,
    lagrange_interpolate,
    reduce_mod_field,
    value_table,
    verify_inverse,
)
from .tower import (
    TowerParams,
    cube_roots_of_unity,
    resolve_selector,
    subfield_units,
    tower_make,
)

EXIT_OK, EXIT_CONTRADICTION, EXIT_USAGE = 0, 1, 2

ALL_SUITES = ("bijectivity", "inverse", "branches", "discriminant", "identity_abc", "lemma", "normalization", "witness")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# literals


def parse_element(spec: FieldSpec, text: str) -> FieldElement:
    text = text.strip()
    m = re.fullmatch(r"g\^(\d+)", text)
    if m:
        return fe_pow(find_generator(spec), int(m.group(1)))
    if not re.fullmatch(r"\d+(:\d+)*", text):
        raise UsageError(f"cannot parse field element {text!r}")
    digits = [int(d) for d in text.split(":")]
    if len(digits) > spec.k or any(d >= spec.p for d in digits):
        raise UsageError(f"{text!r} is not a reduced element of {spec!r}")
    return spec.from_coeffs(digits)


def format_element(a: FieldElement) -> str:
    return ":".join(map(str, a.coeffs))


def parse_poly(spec: FieldSpec, text: str) -> SparsePoly:
    terms = []
    for raw in re.sub(r"\s+", "", text).split("+"):
        if not raw:
            raise UsageError(f"empty term in {text!r}")
        m = re.fullmatch(r"(?:(?P<c>[^*]+)\*)?x(?:\^(?P<e>\d+))?", raw)
        if m:
            coeff = parse_element(spec, m.group("c")) if m.group("c") else spec.one
            terms.append((int(m.group("e") or 1), coeff))
        else:
            terms.append((0, parse_element(spec, raw)))
    return SparsePoly.from_terms(spec, terms)


# ---------------------------------------------------------------------------
# reports


class Report:
    """Accumulates suite results; timings are kept apart from the body."""

    def __init__(self, argv, **header):
        self.body = {"command": list(argv), **header, "suites": []}
        self.timings: dict[str, float] = {}

    @contextmanager
    def timed(self, name):
        t0 = time.perf_counter()
        yield
        self.timings[name] = round((time.perf_counter() - t0) * 1000, 3)

    def add(self, name, passed, expected, observed, **details):
        self.body["suites"].append(
            {"name": name, "passed": bool(passed), "expected": expected, "observed": observed, **details}
        )

    @property
    def passed(self) -> bool:
        return all(s["passed"] for s in self.body["suites"])

    def finish(self) -> dict:
        self.body["status"] = "PASS" if self.passed else "FAIL"
        return {**self.body, "timings_ms": self.timings}


def field_header(t: TowerParams) -> dict:
    return {"p": t.p, "m": t.m, "q": t.q, "k": t.spec.k, "modulus": list(t.spec.modulus)}


def element_json(a: Optional[FieldElement]):
    return None if a is None else format_element(a)


def emit(doc: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        return
    for key in ("family", "A", "field", "predicted_pp", "status"):
        if key in doc:
            out.write(f"{key:>14}: {doc[key]}\n")
    for s in doc.get("suites", []):
        mark = "PASS" if s["passed"] else "FAIL"
        out.write(f"  [{mark}] {s['name']:<14} expected={s['expected']} observed={s['observed']}\n")
    for row in doc.get("rows", []):
        out.write("  " + "  ".join(f"{k}={v}" for k, v in row.items()) + "\n")
    for key in ("result", "branch", "polynomial"):
        if key in doc:
            out.write(f"{key:>14}: {doc[key]}\n")
    for note in doc.get("errata", []):
        out.write(f"  note: {note['claim']}: {note['observed']}\n")


# ---------------------------------------------------------------------------
# shared argument handling


def _params(args) -> FamilyParams:
    t = tower_make(args.p, args.m)
    sel = args.A or ("unit:0" if args.family == "f3" else "unity3:0")
    args.A = sel
    try:
        A = resolve_selector(t, sel)
        return FamilyParams(Family(args.family), t, A)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _header(fp: FamilyParams, args) -> dict:
    return {
        "family": fp.family.value,
        "A": {"selector": args.A, "coeffs": list(fp.A.coeffs)},
        "field": field_header(fp.tower),
        "predicted_pp": predicted_pp(fp),
    }


# ---------------------------------------------------------------------------
# verify


def run_verify(fp: FamilyParams, suites, report: Report) -> None:
    spec = fp.tower.spec
    pp = predicted_pp(fp)
    f = family_poly(fp)
    errata = []
    brute = None

    if "bijectivity" in suites:
        with report.timed("bijectivity"):
            rep = is_permutation(f)
        report.add(
            "bijectivity", rep.is_permutation == pp, {"is_permutation": pp},
            {"is_permutation": rep.is_permutation, "root_count": rep.root_count},
            collision=None if rep.collision is None else [element_json(e) for e in rep.collision],
        )
        if not rep.is_permutation and fp.family is not Family.F3 and rep.root_count != 1:
            errata.append({"claim": "non-permutation f has 0 as its only root",
                           "observed": f"{rep.root_count} roots"})

    if "inverse" in suites and pp:
        with report.timed("inverse"):
            brute = brute_inverse_table(f)
            observed = {}
            for name, form in inverse_forms(fp).items():
                try:
                    table = form(FieldArray.all(spec))
                except TheoremContractError as exc:
                    observed[name] = f"contract violation: {exc}"
                    continue
                both = verify_inverse(f, table, spec)
                observed[name] = bool(both) and bool((table.values == brute.values).all())
        report.add("inverse", all(v is True for v in observed.values()),
                   {k: True for k in observed}, observed)

    if "branches" in suites and pp and fp.family is not Family.F3:
        with report.timed("branches"):
            ys = FieldArray.all(spec)
            try:
                vals, branch = piecewise_inverse(fp, ys)
                counts = {f"branch{i}": int((branch == i).sum()) for i in (0, 1, 2)}
                brute = brute if brute is not None else brute_inverse_table(f)
                per_branch = {f"branch{i}_correct": bool((vals.values == brute.values)[branch == i].all())
                              for i in (0, 1, 2)}
                ok = all(per_branch.values())
                observed = {**counts, **per_branch, "contract_violation": False}
            except TheoremContractError as exc:
                ok, observed = False, {"contract_violation": str(exc)}
        report.add("branches", ok, {"contract_violation": False}, observed)
        if fp.family is Family.F2:
            try:
                vals, branch = piecewise_inverse(fp, ys, printed=True)
                as_printed = bool((vals.values == brute.values).all())
            except TheoremContractError:
                as_printed = False
            if not as_printed:
                errata.append({"claim": "f2 second branch y^(q^2+2q+1)/(y^(q^2+2q)+A y^(2q^2+1)+y^(2q+1))",
                               "observed": "not an inverse on its branch; y^(2q^2+q+1)/(y^(2q^2+q)+A y^(2q^2+1)+y^(2q+1)) is"})

    if "discriminant" in suites and fp.family is not Family.F3:
        with report.timed("discriminant"):
            w = discriminant_witness(fp)
        report.add("discriminant", (w is None) == pp, {"nonvanishing": pp},
                   {"nonvanishing": w is None}, witness=element_json(w))

    if "identity_abc" in suites and fp.family is Family.F1:
        with report.timed("identity_abc"):
            ok = identity_abc_check(fp)
        report.add("identity_abc", ok, True, ok)

    if "lemma" in suites:
        with report.timed("lemma"):
            cert = lemma_certify(theorem_scheme(fp))
            matches = None
            if cert.ok:
                brute = brute if brute is not None else brute_inverse_table(f)
                matches = bool((cert.inverse_table.values == brute.values).all())
        ok = (cert.ok == pp) and (matches is not False)
        report.add("lemma", ok, {"certified": pp}, {"certified": cert.ok, "table_matches_brute": matches},
                   counterexample=element_json(cert.counterexample))

    if "normalization" in suites and fp.family is Family.F2:
        with report.timed("normalization"):
            same = bool((value_table(f, spec) == value_table(f.normalized(), spec)).all())
        report.add("normalization", same, True, same)

    if "witness" in suites and fp.family is Family.F3 and not pp:
        with report.timed("witness"):
            w = f3_non_pp_witness(fp)
        report.add("witness", w is not None, True, w is not None,
                   kind=None if w is None else w.kind,
                   roots=None if w is None else [element_json(r) for r in w.roots])

    if errata:
        report.body["errata"] = errata


def cmd_verify(args) -> tuple[dict, int]:
    fp = _params(args)
    suites = ALL_SUITES if args.suites == "all" else tuple(s.strip() for s in args.suites.split(","))
    unknown = set(suites) - set(ALL_SUITES)
    if unknown:
        raise UsageError(f"unknown suites: {sorted(unknown)}")
    report = Report(args.argv, **_header(fp, args))
    run_verify(fp, suites, report)
    doc = report.finish()
    return doc, EXIT_OK if report.passed else EXIT_CONTRADICTION


# ---------------------------------------------------------------------------
# invert


def cmd_invert(args) -> tuple[dict, int]:
    fp = _params(args)
    if not predicted_pp(fp):
        raise UsageError(f"{fp.family.value} does not permute GF({fp.q}^3) for A={args.A}")
    spec = fp.tower.spec
    y = parse_element(spec, args.value)
    ys = FieldArray(spec, [y.value])
    branch = None
    form = args.form
    if form == "brute":
        x = brute_inverse_table(family_poly(fp))[y.value]
    elif fp.family is Family.F3:
        if form not in ("piecewise", "power", "rational"):
            raise UsageError(f"unknown form {form!r}")
        x = f3_inverse_eval(fp, y)
        form = "power"
    elif form == "piecewise":
        vals, br = piecewise_inverse(fp, ys)
        x, branch = vals[0], int(br[0])
    elif form == "rational":
        x = rational_inverse(fp, ys)[0]
    else:
        raise UsageError(f"unknown form {form!r}")
    doc = {"command": list(args.argv), **_header(fp, args), "value": format_element(y),
           "form": form, "result": format_element(x), "branch": branch}
    return doc, EXIT_OK


# ---------------------------------------------------------------------------
# enumerate


def _prime_powers(limit: int):
    for q in range(2, limit + 1):
        ps = gf.prime_factors(q)
        if len(ps) == 1:
            p = ps[0]
            m = 0
            r = q
            while r > 1:
                r //= p
                m += 1
            yield p, m, q


def enumerate_rows(family: Family, limit: int):
    """(tower, selector, A) triples: cube roots of unity for f1/f2, subfield units for f3."""
    if family is Family.F3:
        towers = [(p, m) for p, m, q in _prime_powers(limit) if q**3 <= gf.MAX_ORDER]
    else:
        towers = [(2, m) for m in range(1, limit + 1) if 8**m <= gf.MAX_ORDER]
    for p, m in towers:
        t = tower_make(p, m)
        if family is Family.F3:
            for j, A in enumerate(subfield_units(t)):
                yield t, f"unit:{j}", A
        else:
            for j, A in enumerate(cube_roots_of_unity(t)):
                yield t, f"unity3:{j}", A


def cmd_enumerate(args) -> tuple[dict, int]:
    family = Family(args.family)
    limit = args.max_q if family is Family.F3 else args.max_m
    if limit is None:
        raise UsageError("--max-q (f3) or --max-m (f1, f2) is required")
    rows = []
    timings = {}
    for t, sel, A in enumerate_rows(family, limit):
        fp = FamilyParams(family, t, A)
        t0 = time.perf_counter()
        observed = is_permutation(family_poly(fp)).is_permutation
        timings[f"q={t.q},{sel}"] = round((time.perf_counter() - t0) * 1000, 3)
        pred = predicted_pp(fp)
        rows.append({"p": t.p, "m": t.m, "q": t.q, "A": sel, "A_coeffs": ":".join(map(str, A.coeffs)),
                     "predicted": pred, "verified": observed, "match": pred == observed})
    ok = all(r["match"] for r in rows)
    doc = {"command": list(args.argv), "family": family.value, "rows": rows,
           "status": "PASS" if ok else "FAIL", "timings_ms": timings}
    return doc, EXIT_OK if ok else EXIT_CONTRADICTION


# ---------------------------------------------------------------------------
# resultant-check


def cmd_resultant_check(args) -> tuple[dict, int]:
    fp = _params(args)
    report = Report(args.argv, **_header(fp, args), seed=args.seed)
    with report.timed("resultant"):
        rep = resultant_identity_suite(fp, args.samples, args.seed)
    report.add("resultant", rep.unequal == 0 and rep.equal == rep.samples, {"equal": rep.samples},
               {"equal": rep.equal, "unequal": rep.unequal, "skipped": rep.skipped},
               failures=rep.failures, skipped_draws=rep.skipped_draws)
    doc = report.finish()
    return doc, EXIT_OK if report.passed else EXIT_CONTRADICTION


# ---------------------------------------------------------------------------
# interpolate


def cmd_interpolate(args) -> tuple[dict, int]:
    if args.poly is not None:
        spec = gf.field(args.p, args.k if args.k else 3 * args.m)
        f = parse_poly(spec, args.poly)
        fp = None
        header = {"polynomial_in": str(f), "field": {"p": spec.p, "k": spec.k, "modulus": list(spec.modulus)}}
    else:
        if args.family is None:
            raise UsageError("--family or --poly is required")
        fp = _params(args)
        if not predicted_pp(fp):
            raise UsageError("parameters do not give a permutation")
        spec, f = fp.tower.spec, family_poly(fp)
        header = _header(fp, args)
    if spec.order > args.guard:
        raise UsageError(f"field order {spec.order} exceeds interpolation guard {args.guard}")
    table = brute_inverse_table(f)
    xs = FieldArray.all(spec)
    g = lagrange_interpolate((xs, table), guard=args.guard)
    g_vals = FieldArray(spec, value_table(g, spec))
    report = Report(args.argv, **header)
    report.add("composition", bool(verify_inverse(f, g)), True, bool(verify_inverse(f, g)))
    if fp is not None:
        for name, form in inverse_forms(fp).items():
            same = bool((form(xs).values == g_vals.values).all())
            report.add(f"matches_{name}", same, True, same)
    doc = report.finish()
    doc["polynomial"] = str(reduce_mod_field(g))
    doc["degree"] = g.degree
    return doc, EXIT_OK if report.passed else EXIT_CONTRADICTION


# ---------------------------------------------------------------------------
# check-poly


def cmd_check_poly(args) -> tuple[dict, int]:
    spec = gf.field(args.p, args.k)
    f = parse_poly(spec, args.poly)
    rep = is_permutation(f)
    doc = {
        "command": list(args.argv),
        "field": {"p": spec.p, "k": spec.k, "modulus": list(spec.modulus)},
        "polynomial": str(f),
        "is_permutation": rep.is_permutation,
        "root_count": rep.root_count,
        "collision": None if rep.collision is None else [format_element(e) for e in rep.collision],
    }
    return doc, EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permpoly", description=__doc__.split("\n\n")[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--modulus-cache", default=None,
                        help=f"modulus cache file (default: ${gf.ENV_MODULUS_CACHE})")
    sub = parser.add_subparsers(dest="command", required=True)

    def family_args(p, need_A=True, need_family=True):
        p.add_argument("--family", choices=[f.value for f in Family], required=need_family)
        p.add_argument("--p", type=int, default=2)
        p.add_argument("--m", type=int, default=1)
        if need_A:
            p.add_argument("--A", default=None, help="unity3:j | unit:j | coeffs:c0,c1,...")

    p = sub.add_parser("verify", help="run verification suites")
    family_args(p)
    p.add_argument("--suites", default="all", help=f"comma list from {','.join(ALL_SUITES)} or 'all'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("invert", help="evaluate the inverse at one value")
    family_args(p)
    p.add_argument("--value", required=True)
    p.add_argument("--form", choices=("piecewise", "rational", "brute", "power"), default="piecewise")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("enumerate", help="prediction vs exhaustive verification")
    p.add_argument("--family", choices=[f.value for f in Family], required=True)
    p.add_argument("--max-m", type=int, default=None)
    p.add_argument("--max-q", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("resultant-check", help="seeded resultant factorization checks")
    family_args(p)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_resultant_check)

    p = sub.add_parser("interpolate", help="interpolate the inverse into a polynomial")
    family_args(p, need_family=False)
    p.add_argument("--poly", default=None, help="interpolate the inverse of this literal instead")
    p.add_argument("--k", type=int, default=None, help="extension degree for --poly (default 3m)")
    p.add_argument("--guard", type=int, default=4096)
    p.set_defaults(func=cmd_interpolate)

    p = sub.add_parser("check-poly", help="permutation check of a polynomial literal")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_check_poly)
    return parser


def main(argv=None, out=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.argv = argv
    if args.modulus_cache or os.environ.get(gf.ENV_MODULUS_CACHE):
        gf.set_modulus_cache(args.modulus_cache or os.environ[gf.ENV_MODULUS_CACHE])
    try:
        doc, status = args.func(args)
    except (UsageError, gf.GFError, ValueError) as exc:
        print(f"permpoly: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    emit(doc, args.format, out)
    return status


if __name__ == "__main__":
    sys.exit(main())

"""Verification suites: each returns a list of claims with pass/fail status.

A claim is a dict ``{id, anchor, status, details}``; some also carry a
``witness`` payload that :func:`replay_witness` can re-check without
repeating the search that produced it.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import __version__

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


class Claims(list):
    def add(self, cid: str, anchor: str, ok, details="", witness=None):
        status = ok if isinstance(ok, str) else (PASS if ok else FAIL)
        entry = {"id": cid, "anchor": anchor, "status": status, "details": details}
        if witness is not None:
            entry["witness"] = witness
        self.append(entry)
        return bool(ok is True or ok == PASS)


def _s(x) -> str:
    return x.pretty() if hasattr(x, "pretty") else str(x)


# group ---------------------------------------------------------------------------

CLASS_SIZES = [1, 1, 15, 15, 20, 12, 12, 20, 12, 12]
CHARACTER_ROW = ["3", "-3", "1", "-1", "0", "w", "1-w", "0", "w-1", "-w"]


def group_suite() -> Claims:
    from .field import parse_element
    from .group import GENERATORS, IDENTITY, class_data, group, mirror_lines, projective_group, pseudoreflections

    c = Claims()
    G = group()
    c.add("group.order", "order of the linear group", len(G) == 120, f"|G| = {len(G)}")
    PG = projective_group()
    c.add("group.projective_order", "order of the projective image", len(PG) == 60, f"|PG| = {len(PG)}")
    classes = class_data()
    sizes = sorted(k.size for k in classes)
    c.add("group.class_sizes", "conjugacy class sizes", sizes == sorted(CLASS_SIZES),
          f"sizes {sizes}")
    got = Counter((k.size, k.trace) for k in classes)
    want = Counter(zip(CLASS_SIZES, (parse_element(t) for t in CHARACTER_ROW)))
    c.add("group.character_row", "traces of the representation on each class", got == want,
          ", ".join(f"{k.size}:{_s(k.trace)}" for k in classes))
    refl = pseudoreflections()
    cls_ok = all(r.trace == parse_element("1") and r.order() == 2 for r in refl)
    c.add("group.pseudoreflections", "pseudoreflections of the group", len(refl) == 15 and cls_ok,
          f"{len(refl)} elements of order 2 with trace 1")
    lines = mirror_lines()
    c.add("group.mirror_lines", "mirror lines of the pseudoreflections", len(set(lines)) == 15,
          f"{len(set(lines))} distinct mirror forms")
    inv = all(g * g == IDENTITY for g in GENERATORS)
    c.add("group.generators", "the three generating matrices", inv,
          "each generator squares to the identity")
    return c


# arrangement -----------------------------------------------------------------------

def arrangement_suite() -> Claims:
    from .arrangement import build_arrangement, check_named_points, line_profile, pair_count, verify_orbit_claims

    c = Claims()
    arr = build_arrangement()
    hist = arr.histogram()
    c.add("arrangement.points", "31 singular points", len(arr.points) == 31 and hist == {5: 6, 3: 10, 2: 15},
          f"{len(arr.points)} points, histogram {dict(sorted(hist.items(), reverse=True))}")
    prof = line_profile(arr)
    c.add("arrangement.line_profile", "singular points on each line",
          all(p == {5: 2, 3: 2, 2: 2} for p in prof) and len(prof) == 15,
          "every line carries 2 quintuple, 2 triple and 2 double points")
    pc = pair_count(arr)
    c.add("arrangement.pair_count", "pairs of lines counted through singular points", pc == 105,
          f"sum of C(mult, 2) = {pc} = C(15, 2)")
    for entry in verify_orbit_claims(arr):
        c.add("arrangement." + entry["id"], "orbits and stabilizers", entry["status"] == PASS, entry["details"])
    named = check_named_points()
    ok = (named["[0:0:1]"] == "double" and named["[1:1:1]"] == "triple"
          and named["[w:0:1]"] == "quintuple")
    c.add("arrangement.named_points", "representatives of the three orbits", ok,
          "; ".join(f"{k} -> {v}" for k, v in named.items()))
    return c


# invariants ------------------------------------------------------------------------

def invariants_suite(intersections: bool = True) -> Claims:
    from .arrangement import build_arrangement
    from .field import parse_element
    from .group import GENERATORS, mirror_lines
    from .invariants import (PUBLISHED_RELATION, WeightedPoint, express_in_invariants, fundamental_invariants,
                             is_invariant, phi15_relation, polar_product, psi_forms, quotient_map)
    from .poly import ProjectivePoint, intersection_count, product

    c = Claims()
    arr = build_arrangement()
    inv = fundamental_invariants()
    for n, f in ((2, inv.phi2), (6, inv.phi6), (10, inv.phi10)):
        c.add(f"invariants.phi{n}.invariant", "invariance under the generators", is_invariant(f),
              f"degree {f.degree}, {len(f.terms)} terms")
    semi = all(inv.phi15.act(g) == inv.phi15.scale(g.det()) for g in GENERATORS)
    c.add("invariants.phi15.semi_invariant", "phi15 transforms by the determinant", semi,
          f"degree 15, {len(inv.phi15.terms)} terms; g(phi15) = det(g) phi15")
    c.add("invariants.transcription", "displayed fundamental invariants", not inv.notes,
          "; ".join(inv.notes) or "displayed forms used unchanged")
    for n, f, label in ((6, inv.phi6, "quintuple"), (10, inv.phi10, "triple")):
        unit = polar_product(arr.by_label(label)).proportional_to(f)
        c.add(f"invariants.phi{n}.polar_product", f"phi{n} as product of {label} polar lines",
              unit is not None, f"phi{n} = ({_s(unit)}) * product" if unit is not None else "not proportional")
    unit = product(mirror_lines()).proportional_to(inv.phi15)
    c.add("invariants.phi15.mirrors", "Jacobian equals the arrangement", unit is not None,
          f"phi15 = ({_s(unit)}) * product of mirror forms" if unit is not None else "not proportional")
    for n, f in ((6, inv.phi6), (10, inv.phi10)):
        ms = {f.multiplicity_at(p) for p in arr.by_label("double")}
        c.add(f"invariants.phi{n}.doubles", "vanishing order at double points", ms == {2},
              f"multiplicities at doubles: {sorted(ms)}")
    rel = phi15_relation()
    ok = (rel.constant_c is not None and not rel.mismatched and len(rel.misprinted) <= 1
          and not rel.unlisted_nonzero and len(rel.coefficients) <= 13)
    mis = ", ".join(f"{e} read as {t}" for e, t in rel.misprinted.items())
    c.add("invariants.relation", "square of phi15 in phi2, phi6, phi10", ok,
          f"c = {_s(rel.constant_c)}; {len(rel.matched)} of {len(PUBLISHED_RELATION)} listed terms match"
          + (f"; misprint {mis}" if mis else ""))
    ex = express_in_invariants(psi_forms().psi6p)
    want = {(3, 0, 0): parse_element("-25"), (0, 1, 0): parse_element("675*w-675")}
    c.add("invariants.psi6p", "psi6' in the invariant algebra", ex == want,
          ", ".join(f"{k}: {_s(v)}" for k, v in sorted(ex.items())))
    q2 = quotient_map(ProjectivePoint(0, 0, 1))
    q3 = quotient_map(ProjectivePoint(1, 1, 1))
    ok = (q2.weighted_equal(WeightedPoint(parse_element("1"), parse_element("0"), parse_element("0")))
          and q3.weighted_equal(WeightedPoint(parse_element("3"), parse_element("w"), parse_element("45*w-60"))))
    c.add("invariants.quotient_map", "images of p2 and p3 in weighted projective space", ok,
          f"[0:0:1] -> {q2}, [1:1:1] -> {q3}")
    if intersections:
        for (a, b), want in (((2, 6), (12, 12)), ((2, 10), (20, 20)), ((6, 10), (15, 60))):
            fa, fb = [getattr(inv, f"phi{n}") for n in (a, b)]
            r = intersection_count(fa, fb)
            got = (r["distinct_points"], r["total_multiplicity"])
            c.add(f"invariants.meet.phi{a}.phi{b}", f"intersection of phi{a} and phi{b}", got == want,
                  f"{got[0]} distinct points, total multiplicity {got[1]}")
    return c


# psi30 --------------------------------------------------------------------------------

def psi30_suite() -> Claims:
    from .invariants import build_psi30, irreducibility_certificate, psi_forms, pull_back, weighted_image

    c = Claims()
    S = build_psi30()
    c.add("psi30.alpha", "congruence constant at p3", S.checks["alpha = -1"], f"alpha = {_s(S.alpha_const)}")
    c.add("psi30.lambda", "solution of the 5x4 system", S.checks["lambda = (2,1,2,1)"],
          "kernel spanned by (" + ", ".join(_s(v) for v in S.lam) + ")")
    for key in ("quintuple row from evaluation", "5-uple row from partials", "6-uple rows from partials"):
        c.add("psi30.rows." + key.split()[0], "rows of the linear system", S.checks[key], key)
    for label, low in (("quintuple", 2), ("triple", 6), ("double", 6)):
        ms = S.multiplicities[label]
        c.add(f"psi30.mult.{label}", f"multiplicity at {label} points", min(ms) >= low,
              f"multiplicities {sorted(set(ms))}, required >= {low}",
              witness={"kind": "multiplicity", "poly": str(S.psi30), "degree": 30, "orbit": label,
                       "at_least": low})
    c.add("psi30.invariant", "invariance of psi30", S.checks["invariant"], f"{len(S.psi30.terms)} terms")
    s = psi_forms()
    back = pull_back(weighted_image(), (s.psi2, s.psi6, s.psi10))
    c.add("psi30.weighted_form", "psi30 as a weighted cubic", back == S.psi30,
          "G(psi2, psi6, psi10) reproduces psi30 exactly")
    for literal in (False, True):
        cert = irreducibility_certificate(literal)
        tag = "published" if literal else "exact"
        c.add(f"psi30.irreducible.{tag}", "no factor linear in w10", cert["no_linear_factor"],
              f"s-roots {cert.get('s_roots')}, divisor degrees {cert['divisor_degrees']}, "
              f"lead {cert['leading_coefficient']}")
    return c


# picard (lattice arithmetic only) --------------------------------------------------------

def picard_suite(k_chi: int = 10, k_sandwich: int = 100) -> Claims:
    from .picard import A, B, C, D, H, euler_char, intersect, nef_certificate_D, nef_lower_bound, parse_class, sandwich

    c = Claims()
    c.add("picard.A2", "self-intersection of A", intersect(A, A) == -75, f"A^2 = {intersect(A, A)}")
    c.add("picard.B2", "self-intersection of B", intersect(B, B) < 0, f"B^2 = {intersect(B, B)}")
    c.add("picard.C2", "self-intersection of C", intersect(C, C) < 0, f"C^2 = {intersect(C, C)}")
    c.add("picard.D2", "self-intersection of D", intersect(D, D) == 0, f"D^2 = {intersect(D, D)}")
    c.add("picard.decomposition", "6D = 4A + 5B + 5C", 6 * D == 4 * A + 5 * B + 5 * C,
          f"6D = {6 * D}, 4A+5B+5C = {4 * A + 5 * B + 5 * C}")
    dots = [intersect(D, X) for X in (A, B, C)]
    c.add("picard.D_orthogonal", "D meets A, B, C trivially", dots == [0, 0, 0], f"D.A, D.B, D.C = {dots}")
    chis = [euler_char(k * D + 2 * H) for k in range(1, k_chi + 1)]
    c.add("picard.chi", "chi(kD + 2H) = 6 + 30k", chis == [6 + 30 * k for k in range(1, k_chi + 1)],
          f"k = 1..{k_chi}: {chis}")
    c.add("picard.chi_42", "chi of 42H-5E5-7E3-8E2", euler_char(parse_class("42H-5E5-7E3-8E2")) == 36,
          f"chi = {euler_char(parse_class('42H-5E5-7E3-8E2'))}")
    cert = nef_certificate_D(with_evidence=False)
    bound = nef_lower_bound(cert, check_evidence=False)
    c.add("picard.nef_bound", "nef class D gives the lower bound", bound == Fraction(11, 2),
          f"lower bound {bound} (component curves are checked by the descent suite)")
    rows = sandwich(k_sandwich)
    vals = [r[1] for r in rows]
    ok = (all(v > Fraction(11, 2) for v in vals) and all(a > b for a, b in zip(vals, vals[1:]))
          and all(v - Fraction(11, 2) == Fraction(1, 5 * k) for k, v, _ in rows)
          and all(x > 0 for *_, x in rows))
    c.add("picard.sandwich", "upper bounds (55k+2)/(10k) decreasing to 11/2", ok,
          f"k = 1..{k_sandwich}: first {vals[0]}, last {vals[-1]}, gap 1/(5k)")
    return c


# descent and nef witnesses -----------------------------------------------------------------

def descent_suite() -> Claims:
    from .picard import (certified_lower_bound, check_witness, nef_certificate_D, nef_lower_bound,
                         standard_descent_certificates, standard_witnesses)

    c = Claims()
    W = standard_witnesses()
    want = {"double": Fraction(3), "triple": Fraction(3), "quintuple": Fraction(12, 5)}
    for label, cert in standard_descent_certificates().items():
        try:
            b = certified_lower_bound(label)
            err = ""
        except Exception as e:  # noqa: BLE001 - reported as a failed claim
            b, err = None, str(e)
        s2 = cert.self_intersection()
        ok = b == want[label] and s2 <= 0 and Fraction(cert.b, cert.mu) <= Fraction(cert.mu * cert.s, cert.b)
        wit = cert.witness
        c.add(f"descent.{label}", f"Waldschmidt constant of the {label} points", ok,
              err or f"bound {b}, B = {cert.divisor}, B^2 = {s2}, witness {wit.name}: {wit.irreducibility}",
              witness={"kind": "multiplicity", "poly": str(wit.poly), "degree": wit.poly.degree,
                       "orbit": label, "exactly": cert.mu} if wit else None)
    names = {"A": "15H-5E5-3E3-2E2", "B": "6H-2E2", "C": "30H-2E5-6E3-6E2"}
    from .picard import NAMED

    for key in ("A", "B", "C"):
        wit = W[key]
        ok = check_witness(NAMED[key], wit, exact=True) and bool(wit.irreducibility)
        c.add(f"descent.witness.{key}", f"curve realising {names[key]}", ok,
              f"{wit.name}: multiplicities {wit.multiplicities}; {wit.irreducibility}")
    bound = nef_lower_bound(nef_certificate_D())
    c.add("descent.nef_with_curves", "nef certificate with explicit curves", bound == Fraction(11, 2),
          f"lower bound {bound}")
    return c


# interpolation -------------------------------------------------------------------------------

def symbolic_suite(m_all: int = 4, cache=None) -> Claims:
    from .picard import certified_lower_bound
    from .symbolic import Inconclusive, TableRow, alpha, check_table

    c = Claims()

    def get(label, m):
        if cache is not None:
            hit = cache.get(label, m)
            if hit is not None:
                return hit
        cert = alpha(label, m)
        if cache is not None:
            cache.put(cert)
        return cert

    for label, m, want in (("double", 2, 6), ("triple", 2, 6), ("quintuple", 5, 12)):
        try:
            cert = get(label, m)
        except Inconclusive as e:
            c.add(f"alpha.{label}.{m}", "initial degree of a symbolic power", INCONCLUSIVE, str(e))
            continue
        c.add(f"alpha.{label}.{m}", "initial degree of a symbolic power", cert.alpha == want and not cert.validate(),
              f"alpha = {cert.alpha}", witness={"kind": "alpha", "certificate": cert.to_json()})
    rows = []
    bound = certified_lower_bound("all")
    for m in range(1, m_all + 1):
        try:
            cert = get("all", m)
        except Inconclusive as e:
            c.add(f"alpha.all.{m}", "initial degree for all 31 points", INCONCLUSIVE, str(e))
            continue
        rows.append(TableRow(m, cert.alpha, cert.ratio, cert))
        c.add(f"alpha.all.{m}", "initial degree for all 31 points", cert.ratio >= bound and not cert.validate(),
              f"alpha = {cert.alpha}, ratio {cert.ratio} >= {bound}",
              witness={"kind": "alpha", "certificate": cert.to_json()})
    try:
        checks = check_table(rows)
        c.add("alpha.table", "subadditivity and monotonicity", all(checks.values()), str(checks))
    except AssertionError as e:
        c.add("alpha.table", "subadditivity and monotonicity", False, str(e))
    return c


SUITES: dict[str, Callable[[], Claims]] = {
    "group": group_suite,
    "arrangement": arrangement_suite,
    "invariants": invariants_suite,
    "psi30": psi30_suite,
    "picard": picard_suite,
    "descent": descent_suite,
    "symbolic": symbolic_suite,
}


# reports ------------------------------------------------------------------------------------

def version_stamp() -> dict:
    import platform

    import gmpy2
    import numpy
    import sympy

    return {"icosa": __version__, "python": platform.python_version(), "gmpy2": gmpy2.version(),
            "numpy": numpy.__version__, "sympy": sympy.__version__}


@dataclass
class VerificationReport:
    suite: str
    claims: list[dict]
    timing_ms: dict[str, float] = field(default_factory=dict)
    version: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(cl["status"] == PASS for cl in self.claims)

    def to_json(self) -> dict:
        return {"suite": self.suite, "claims": self.claims, "timing_ms": self.timing_ms, "version": self.version}

    @classmethod
    def from_json(cls, data: dict) -> "VerificationReport":
        return cls(data["suite"], list(data["claims"]), dict(data.get("timing_ms", {})), dict(data.get("version", {})))


def run_suite(name: str, **kwargs) -> VerificationReport:
    names = list(SUITES) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise KeyError(name)
    claims, timing = [], {}
    for n in names:
        t0 = time.perf_counter()
        fn = SUITES[n]
        extra = {k: v for k, v in kwargs.items() if k in fn.__code__.co_varnames}
        try:
            claims.extend(fn(**extra))
        except Exception as e:  # noqa: BLE001 - a crashed suite is a failed claim
            claims.append({"id": f"{n}.error", "anchor": n, "status": FAIL, "details": f"{type(e).__name__}: {e}"})
        timing[n] = round(1000 * (time.perf_counter() - t0), 1)
    ids = [cl["id"] for cl in claims]
    assert len(ids) == len(set(ids)), "duplicate claim ids"
    return VerificationReport(name, claims, timing, version_stamp())


def replay_witness(w: dict) -> tuple[bool, str]:
    """Re-check a serialized witness without repeating any search."""
    from .arrangement import build_arrangement
    from .poly import parse_poly
    from .symbolic import AlphaCertificate

    if w["kind"] == "alpha":
        cert = AlphaCertificate.from_json(w["certificate"])
        problems = cert.validate()
        return not problems, "; ".join(problems) or f"alpha({cert.orbit}, {cert.m}) = {cert.alpha} re-validated"
    if w["kind"] == "multiplicity":
        f = parse_poly(w["poly"], w["degree"])
        ms = [f.multiplicity_at(p) for p in build_arrangement().by_label(w["orbit"])]
        if "exactly" in w:
            ok = set(ms) == {w["exactly"]}
        else:
            ok = min(ms) >= w["at_least"]
        return ok, f"multiplicities {sorted(set(ms))} on {w['orbit']} points"
    return False, f"unknown witness kind {w['kind']!r}"


def replay_report(report: VerificationReport) -> VerificationReport:
    t0 = time.perf_counter()
    claims = []
    for cl in report.claims:
        if "witness" not in cl:
            continue
        ok, details = replay_witness(cl["witness"])
        claims.append({"id": cl["id"], "anchor": cl["anchor"], "status": PASS if ok else FAIL, "details": details})
    return VerificationReport(report.suite + ":replay", claims,
                              {"replay": round(1000 * (time.perf_counter() - t0), 1)}, version_stamp())

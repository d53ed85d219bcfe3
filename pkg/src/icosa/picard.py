"""The G-symmetric rank-4 sublattice of Pic of the blow-up at the 31 points.

A class ``h H - m5 E5 - m3 E3 - m2 E2`` pairs as
``h h' - 6 m5 m5' - 10 m3 m3' - 15 m2 m2'``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import ceil

ORBIT_SIZES = {"m5": 6, "m3": 10, "m2": 15}
LABEL_TO_FIELD = {"quintuple": "m5", "triple": "m3", "double": "m2"}


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    h: int
    m5: int = 0
    m3: int = 0
    m2: int = 0

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.h + other.h, self.m5 + other.m5, self.m3 + other.m3, self.m2 + other.m2)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.h - other.h, self.m5 - other.m5, self.m3 - other.m3, self.m2 - other.m2)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.h, k * self.m5, k * self.m3, k * self.m2)

    __rmul__ = __mul__

    def __str__(self):
        s = f"{self.h}H"
        for name, v in (("E5", self.m5), ("E3", self.m3), ("E2", self.m2)):
            if v:
                s += f"-{v}{name}" if v > 0 else f"+{-v}{name}"
        return s

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.h, self.m5, self.m3, self.m2)

    @classmethod
    def parse(cls, text: str) -> "DivisorClass":
        return parse_class(text)


_TERM = re.compile(r"([+-])?(\d*)(H|E5|E3|E2)")


def parse_class(text: str) -> DivisorClass:
    """Parse strings such as ``"40H-5E5-7E3-8E2"`` (terms in any order)."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty divisor class")
    vals: dict[str, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse divisor class {text!r} at {s[pos:]!r}")
        sign, num, name = m.groups()
        if pos > 0 and sign is None:
            raise ValueError(f"missing sign before {name} in {text!r}")
        if name in vals:
            raise ValueError(f"duplicate term {name} in {text!r}")
        v = int(num) if num else 1
        vals[name] = -v if sign == "-" else v
        pos = m.end()
    return DivisorClass(vals.get("H", 0), -vals.get("E5", 0), -vals.get("E3", 0), -vals.get("E2", 0))


H = DivisorClass(1)
A = DivisorClass(15, 5, 3, 2)
B = DivisorClass(6, 0, 0, 2)
C = DivisorClass(30, 2, 6, 6)
D = DivisorClass(40, 5, 7, 8)
NAMED = {"H": H, "A": A, "B": B, "C": C, "D": D}


def intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    return d1.h * d2.h - 6 * d1.m5 * d2.m5 - 10 * d1.m3 * d2.m3 - 15 * d1.m2 * d2.m2


def euler_char(dc: DivisorClass) -> int:
    """Riemann-Roch: (h+1)(h+2)/2 - sum over points of m(m+1)/2 (valid for any class)."""
    def tri(n):
        return n * (n + 1) // 2

    return tri(dc.h + 1) - 6 * tri(dc.m5) - 10 * tri(dc.m3) - 15 * tri(dc.m2)


def verify_decomposition() -> dict:
    lhs = 6 * D
    rhs = 4 * A + 5 * B + 5 * C
    if lhs != rhs:
        raise CertificateError(f"6D = {lhs} but 4A+5B+5C = {rhs}")
    return {
        "6D": str(lhs), "4A+5B+5C": str(rhs), "holds": True,
        "A^2": intersect(A, A), "B^2": intersect(B, B), "C^2": intersect(C, C),
        "D^2": intersect(D, D),
        "D.A": intersect(D, A), "D.B": intersect(D, B), "D.C": intersect(D, C),
    }


# witnesses ---------------------------------------------------------------------------

@dataclass
class Witness:
    """An explicit curve for a class: its equation plus how irreducibility is known."""

    name: str
    poly: object  # icosa.poly.Poly
    irreducibility: str
    multiplicities: dict[str, int] = field(default_factory=dict)


def check_witness(dc: DivisorClass, wit: Witness, exact: bool, labels=("quintuple", "triple", "double")) -> bool:
    """The witness has degree h and multiplicity m_k (exactly, or at least) on each orbit."""
    from .arrangement import build_arrangement

    if wit.poly.degree != dc.h or wit.poly.is_zero():
        return False
    arr = build_arrangement()
    for label in labels:
        want = getattr(dc, LABEL_TO_FIELD[label])
        ms = {wit.poly.multiplicity_at(p) for p in arr.by_label(label)}
        if len(ms) != 1:
            return False
        got = ms.pop()
        wit.multiplicities[label] = got
        if (exact and got != want) or got < want:
            return False
    return True


@lru_cache(maxsize=None)
def standard_witnesses() -> dict[str, Witness]:
    """Curves for A, B, C and for the sub-configuration descent classes."""
    from . import irreducibility as irr
    from .invariants import build_psi30, invariant_subspace, irreducibility_certificate, phi, psi_forms

    out = {}
    out["A"] = Witness("phi15", phi(15), irr.single_orbit_of_lines(phi(15)))
    out["B"] = Witness("phi6", phi(6), irr.single_orbit_of_lines(phi(6)))
    cert = irreducibility_certificate()
    out["C"] = Witness("psi30", build_psi30().psi30,
                       "weighted cubic has no w10-linear factor" if cert["no_linear_factor"] else "")
    out["6H-2E3"] = Witness("psi6'", psi_forms().psi6p, irr.no_small_invariant_factor(psi_forms().psi6p))
    f12 = invariant_subspace(12, 5, 0, 0)
    if len(f12) == 1:
        out["12H-5E5"] = Witness("degree-12 invariant", f12[0], irr.single_orbit_of_conics(f12[0]))
    return out


# nef certificates ------------------------------------------------------------------------

@dataclass
class NefCertificate:
    target: DivisorClass
    components: list[tuple[DivisorClass, Fraction]]
    evidence: list[Witness] | None = None

    def validate(self, check_evidence: bool = True) -> list[str]:
        """Lattice checks always; the witness curves only when ``check_evidence``."""
        problems = []
        if not self.components:
            if not (self.target.h >= 0 and self.target.m5 == self.target.m3 == self.target.m2 == 0):
                problems.append("empty certificate only covers multiples of H")
            return problems
        total = [Fraction(0)] * 4
        for comp, wt in self.components:
            if wt <= 0:
                problems.append(f"non-positive weight {wt}")
            for i, v in enumerate(comp.as_tuple()):
                total[i] += wt * v
        if tuple(total) != self.target.as_tuple():
            problems.append(f"components sum to {total}, not {self.target}")
        for comp, _ in self.components:
            if intersect(self.target, comp) < 0:
                problems.append(f"target meets {comp} negatively")
        if not check_evidence:
            return problems
        if self.evidence is None or len(self.evidence) != len(self.components):
            problems.append("one witness per component required")
            return problems
        for (comp, _), wit in zip(self.components, self.evidence):
            if not wit.irreducibility:
                problems.append(f"{comp}: no G-irreducibility witness")
            if not check_witness(comp, wit, exact=True):
                problems.append(f"{comp}: witness {wit.name} does not realise the class")
        return problems


def nef_lower_bound(cert: NefCertificate, check_evidence: bool = True) -> Fraction:
    """Waldschmidt lower bound from a nef class: beta >= (6 m5 + 10 m3 + 15 m2) / h."""
    problems = cert.validate(check_evidence)
    if problems:
        raise CertificateError("; ".join(problems))
    t = cert.target
    return Fraction(6 * t.m5 + 10 * t.m3 + 15 * t.m2, t.h)


def nef_certificate_D(with_evidence: bool = True) -> NefCertificate:
    comps = [(A, Fraction(4, 6)), (B, Fraction(5, 6)), (C, Fraction(5, 6))]
    if not with_evidence:
        return NefCertificate(D, comps)
    w = standard_witnesses()
    return NefCertificate(D, comps, [w["A"], w["B"], w["C"]])


def pairing_against_D(beta: Fraction) -> Fraction:
    """F . D for F = beta H - E5 - E3 - E2."""
    return 40 * Fraction(beta) - 30 - 70 - 120


# descent certificates --------------------------------------------------------------------

@dataclass
class DescentCertificate:
    label: str  # "double", "triple" or "quintuple"
    b: int
    mu: int
    witness: Witness | None = None

    @property
    def s(self) -> int:
        return ORBIT_SIZES[LABEL_TO_FIELD[self.label]]

    @property
    def divisor(self) -> DivisorClass:
        kw = {LABEL_TO_FIELD[self.label]: self.mu}
        return DivisorClass(self.b, **kw)

    @property
    def bound(self) -> Fraction:
        return Fraction(self.b, self.mu)

    def self_intersection(self) -> int:
        return self.b * self.b - self.mu * self.mu * self.s


def descent_bound(cert: DescentCertificate) -> Fraction:
    """Certified Waldschmidt constant b/mu of the orbit's ideal."""
    if cert.self_intersection() > 0:
        raise CertificateError(f"B^2 = {cert.self_intersection()} > 0")
    if cert.witness is None or not cert.witness.irreducibility:
        raise CertificateError("missing effectivity / G-irreducibility witness")
    if not check_witness(cert.divisor, cert.witness, exact=True, labels=(cert.label,)):
        raise CertificateError(f"witness {cert.witness.name} does not realise {cert.divisor}")
    return cert.bound


def standard_descent_certificates() -> dict[str, DescentCertificate]:
    w = standard_witnesses()
    return {
        "double": DescentCertificate("double", 6, 2, w["B"]),
        "triple": DescentCertificate("triple", 6, 2, w["6H-2E3"]),
        "quintuple": DescentCertificate("quintuple", 12, 5, w.get("12H-5E5")),
    }


@lru_cache(maxsize=None)
def certified_lower_bound(label: str) -> Fraction:
    if label == "all":
        return nef_lower_bound(nef_certificate_D())
    return descent_bound(standard_descent_certificates()[label])


def sandwich(k_max: int = 100) -> list[tuple[int, Fraction, int]]:
    """(k, (55k+2)/(10k), chi(kD+2H)) with the upper-bound class kD + 2H + kA."""
    rows = []
    for k in range(1, k_max + 1):
        cls = k * D + 2 * H + k * A
        assert cls == DivisorClass(55 * k + 2, 10 * k, 10 * k, 10 * k)
        rows.append((k, Fraction(55 * k + 2, 10 * k), euler_char(k * D + 2 * H)))
    return rows


def alpha_floor(label: str, m: int) -> int:
    return ceil(m * certified_lower_bound(label))

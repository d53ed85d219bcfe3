"""Initial degrees of symbolic powers of the singular point ideals.

The degree-d part of I^(m) is the kernel of the matrix of derivative
functionals: rows are the order-(m-1) partials at each point, columns the
monomials of degree d.  Ranks are screened modulo split primes; a kernel
vector is reconstructed exactly (CRT + rational reconstruction) and its
multiplicities are checked exactly, while a full-column-rank minor modulo p
one degree lower proves nothing smaller exists, since reduction can only
lose rank.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice
from typing import Sequence

import numpy as np

from . import linalg
from .arrangement import build_arrangement
from .field import BadPrime, FieldElement, ModularImage, fe, valid_primes
from .poly import Poly, ProjectivePoint, _ff, exponents, parse_poly

log = logging.getLogger(__name__)

ORBIT_LABELS = ("all", "double", "triple", "quintuple")
DEFAULT_BUDGET = 25


class Inconclusive(RuntimeError):
    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial or {}


class CertificateInvalid(AssertionError):
    pass


def orbit_points(label: str) -> list[ProjectivePoint]:
    if label not in ORBIT_LABELS:
        raise ValueError(f"unknown orbit {label!r}; choose from {ORBIT_LABELS}")
    return build_arrangement().by_label(label)


def _order(m: int, d: int) -> int:
    # for d < m - 1 the order-d functionals (all coefficients) already force f = 0
    return min(m - 1, d)


@dataclass
class VanishingSystem:
    points: list[ProjectivePoint]
    m: int
    d: int

    @property
    def betas(self):
        return exponents(_order(self.m, self.d))

    @property
    def rows(self) -> int:
        return len(self.points) * len(self.betas)

    @property
    def cols(self) -> int:
        return (self.d + 1) * (self.d + 2) // 2

    def exact_matrix(self) -> list[list[FieldElement]]:
        mons = exponents(self.d)
        out = []
        for p in self.points:
            c = p.coords
            pw = [[fe(1)] for _ in range(3)]
            for i in range(3):
                for _ in range(self.d):
                    pw[i].append(pw[i][-1] * c[i])
            for b in self.betas:
                row = []
                for e in mons:
                    r = (e[0] - b[0], e[1] - b[1], e[2] - b[2])
                    if min(r) < 0:
                        row.append(fe(0))
                        continue
                    k = _ff(e[0], b[0]) * _ff(e[1], b[1]) * _ff(e[2], b[2])
                    row.append(pw[0][r[0]] * pw[1][r[1]] * pw[2][r[2]] * k)
                out.append(row)
        return out

    def modular_matrix(self, img: ModularImage) -> np.ndarray:
        p = img.p
        mons = exponents(self.d)
        betas = self.betas
        M = np.zeros((self.rows, self.cols), dtype=np.int64)
        r = 0
        for pt in self.points:
            c = [img.reduce(v) for v in pt.coords]
            pw = [[1] * (self.d + 1) for _ in range(3)]
            for i in range(3):
                for k in range(1, self.d + 1):
                    pw[i][k] = pw[i][k - 1] * c[i] % p
            for b in betas:
                row = M[r]
                for j, e in enumerate(mons):
                    e0, e1, e2 = e[0] - b[0], e[1] - b[1], e[2] - b[2]
                    if e0 < 0 or e1 < 0 or e2 < 0:
                        continue
                    k = _ff(e[0], b[0]) * _ff(e[1], b[1]) * _ff(e[2], b[2])
                    row[j] = k % p * pw[0][e0] % p * pw[1][e1] % p * pw[2][e2] % p
                r += 1
        return M


def vanishing_matrix(points: Sequence[ProjectivePoint], m: int, d: int) -> VanishingSystem:
    if m < 1 or d < 0:
        raise ValueError("need m >= 1 and d >= 0")
    return VanishingSystem(list(points), m, d)


def _images(count: int, start: int = 10007):
    for p in islice(valid_primes(start), count):
        yield ModularImage.pair(p)[0]


def modular_rank(sys: VanishingSystem, img: ModularImage) -> int:
    return linalg.rank_mod(sys.modular_matrix(img), img.p)


def screened_rank(sys: VanishingSystem, primes: int = 3) -> int:
    """Largest rank seen over a few primes (a lower bound for the true rank)."""
    best = 0
    for img in _images(primes):
        try:
            best = max(best, modular_rank(sys, img))
        except BadPrime:
            continue
        if best == sys.cols:
            break
    return best


@dataclass
class AlphaCertificate:
    orbit: str
    m: int
    alpha: int
    upper_witness: Poly
    lower_prime: int | None
    lower_root: int | None
    minor_rows: list[int]
    minor_cols: list[int]
    stats: dict = field(default_factory=dict)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.alpha, self.m)

    def to_json(self) -> dict:
        return {
            "orbit": self.orbit,
            "m": self.m,
            "alpha": self.alpha,
            "witness": str(self.upper_witness),
            "prime": self.lower_prime,
            "omega_root": self.lower_root,
            "minor_rows": self.minor_rows,
            "minor_cols": self.minor_cols,
            "stats": self.stats,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlphaCertificate":
        return cls(
            data["orbit"], data["m"], data["alpha"],
            parse_poly(data["witness"], data["alpha"]),
            data["prime"], data["omega_root"], list(data["minor_rows"]), list(data["minor_cols"]),
            dict(data.get("stats", {})),
        )

    def validate(self) -> list[str]:
        """Re-check both witnesses from scratch; empty list means valid."""
        problems = []
        pts = orbit_points(self.orbit)
        f = self.upper_witness
        if f.is_zero() or f.degree != self.alpha:
            problems.append("upper witness is zero or has the wrong degree")
        else:
            bad = [str(p) for p in pts if not f.vanishes_to_order(p, self.m)]
            if bad:
                problems.append(f"upper witness has multiplicity < {self.m} at {len(bad)} points")
        if self.alpha - 1 >= 0:
            sys = vanishing_matrix(pts, self.m, self.alpha - 1)
            if self.lower_prime is None:
                problems.append("missing lower witness")
            else:
                img = ModularImage(self.lower_prime, self.lower_root)
                M = sys.modular_matrix(img)
                if sorted(self.minor_cols) != list(range(sys.cols)):
                    problems.append("minor must use every column")
                elif len(self.minor_rows) != sys.cols:
                    problems.append("minor is not square")
                else:
                    sub = M[np.array(self.minor_rows, dtype=np.int64)]
                    if linalg.rank_mod(sub, img.p) != sys.cols:
                        problems.append("minor is singular modulo p")
        return problems


def _lower_witness(points, m: int, d: int, primes: int = 4):
    """(img, rows) proving the degree-d system has trivial kernel, or None."""
    if d < 0:
        return None
    sys = vanishing_matrix(points, m, d)
    if sys.rows < sys.cols:
        return None
    for img in _images(primes):
        try:
            M = sys.modular_matrix(img)
        except BadPrime:
            continue
        _, piv, rows = linalg.rref_mod(M, img.p)
        if len(piv) == sys.cols:
            return img, rows
    return None


def _exact_kernel_poly(points, m: int, d: int) -> tuple[Poly, dict]:
    sys = vanishing_matrix(points, m, d)

    def verify(vec):
        f = Poly.from_vector(d, vec)
        return (not f.is_zero()) and all(f.vanishes_to_order(p, m) for p in points)

    vec, info = linalg.reconstruct_kernel_vector(sys.modular_matrix, verify)
    return Poly.from_vector(d, vec), info


def alpha(label: str, m: int, search_floor: int | None = None, max_degree: int | None = None,
          use_bounds: bool = True) -> AlphaCertificate:
    """Certified initial degree of I^(m) for one of the point sets."""
    if m < 1:
        raise ValueError("m must be positive")
    pts = orbit_points(label)
    floor = m  # a form of degree < m cannot have a point of multiplicity m
    if use_bounds:
        from .picard import alpha_floor

        floor = max(floor, alpha_floor(label, m))
    if search_floor is not None:
        floor = max(floor, search_floor)
    budget = max_degree if max_degree is not None else floor + DEFAULT_BUDGET
    t0 = time.perf_counter()
    d = floor
    screened = {}
    while d <= budget:
        sys = vanishing_matrix(pts, m, d)
        rk = screened_rank(sys)
        screened[d] = rk
        if rk < sys.cols:
            break
        d += 1
    else:
        raise Inconclusive(f"no kernel up to degree {budget}", {"screened_ranks": screened})
    # certify the degree below; step down if the floor was not tight
    while True:
        low = _lower_witness(pts, m, d - 1) if d - 1 >= 0 else None
        if low is not None or d - 1 < 0:
            break
        if d - 1 < m:
            raise Inconclusive(f"cannot certify degree {d - 1}", {"screened_ranks": screened})
        log.warning("degree %d of I^(%d) on %s looks non-trivial; stepping below the floor",
                    d - 1, m, label)
        d -= 1
    witness, info = _exact_kernel_poly(pts, m, d)
    img, rows = low if low is not None else (None, [])
    sys_low = vanishing_matrix(pts, m, d - 1)
    cert = AlphaCertificate(
        label, m, d, witness,
        img.p if img else None, img.r if img else None,
        sorted(rows), list(range(sys_low.cols)),
        {"floor": floor, "screened_ranks": {str(k): v for k, v in screened.items()},
         "kernel_dim_mod_p": vanishing_matrix(pts, m, d).cols - screened[d] if d in screened else None,
         "reconstruction": {k: v for k, v in info.items() if k != "pivots"},
         "seconds": round(time.perf_counter() - t0, 3)},
    )
    return cert


@dataclass
class TableRow:
    m: int
    alpha: int
    ratio: Fraction
    certificate: AlphaCertificate


class InconsistentTable(AssertionError):
    pass


def waldschmidt_table(label: str, ms: Sequence[int] | int) -> list[TableRow]:
    """Certified alpha(I^(m)) for each m, with the cross-checks applied."""
    from .picard import certified_lower_bound

    if isinstance(ms, int):
        ms = range(1, ms + 1)
    bound = certified_lower_bound(label)
    rows = []
    for m in ms:
        cert = alpha(label, m)
        if cert.ratio < bound:
            raise InconsistentTable(f"alpha({label}, {m}) / m = {cert.ratio} < {bound}")
        rows.append(TableRow(m, cert.alpha, cert.ratio, cert))
    check_table(rows)
    return rows


def check_table(rows: Sequence[TableRow]) -> dict[str, bool]:
    by_m = {r.m: r.alpha for r in rows}
    sub = all(by_m[a + b] <= by_m[a] + by_m[b] for a in by_m for b in by_m if a + b in by_m)
    ms = sorted(by_m)
    mono = all(by_m[a] < by_m[b] for a, b in zip(ms, ms[1:]))
    if not sub:
        raise InconsistentTable("subadditivity violated")
    if not mono:
        raise InconsistentTable("monotonicity violated")
    return {"subadditive": sub, "monotone": mono}

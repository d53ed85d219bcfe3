"""The 15-line icosahedral arrangement and its 31 singular points."""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

from .field import FieldElement, fe, parse_element
from .group import GENERATORS, group, line_orbit, mirror_lines, orbit
from .poly import Poly, ProjectivePoint, meet, parse_poly

LABELS = {2: "double", 3: "triple", 5: "quintuple"}


class VerificationFailure(AssertionError):
    pass


@dataclass
class SingularPoint:
    point: ProjectivePoint
    multiplicity: int
    orbit_id: str


@dataclass
class Arrangement:
    lines: list[Poly]
    points: list[SingularPoint]
    incidence: list[list[int]] = field(default_factory=list)

    def by_label(self, label: str) -> list[ProjectivePoint]:
        if label == "all":
            return [s.point for s in self.points]
        return [s.point for s in self.points if s.orbit_id == label]

    def histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(s.multiplicity for s in self.points).items()))

    def points_on_line(self, i: int) -> list[SingularPoint]:
        return [s for s, inc in zip(self.points, self.incidence) if i in inc]

    def to_json(self) -> dict:
        return {
            "lines": [str(l) for l in self.lines],
            "points": [
                {"point": s.point.to_json(), "multiplicity": s.multiplicity,
                 "orbit": s.orbit_id, "lines": inc}
                for s, inc in zip(self.points, self.incidence)
            ],
        }


@lru_cache(maxsize=1)
def build_arrangement() -> Arrangement:
    lines = mirror_lines()
    pts: list[ProjectivePoint] = []
    for l1, l2 in itertools.combinations(lines, 2):
        p = meet(l1, l2)
        if p not in pts:
            pts.append(p)
    singular = []
    incidence = []
    for p in pts:
        inc = [i for i, l in enumerate(lines) if p.on(l)]
        singular.append(SingularPoint(p, len(inc), LABELS.get(len(inc), f"{len(inc)}-fold")))
        incidence.append(inc)
    order = sorted(range(len(pts)), key=lambda i: (-singular[i].multiplicity, i))
    arr = Arrangement(lines, [singular[i] for i in order], [incidence[i] for i in order])
    hist = arr.histogram()
    if hist != {2: 15, 3: 10, 5: 6}:
        raise VerificationFailure(f"unexpected multiplicity histogram {hist}: {arr.to_json()}")
    return arr


def representative(label: str) -> ProjectivePoint:
    return build_arrangement().by_label(label)[0]


def line_profile(arr: Arrangement) -> list[dict[int, int]]:
    """Per line: how many singular points of each multiplicity it carries."""
    return [
        dict(sorted(Counter(s.multiplicity for s in arr.points_on_line(i)).items()))
        for i in range(len(arr.lines))
    ]


def pair_count(arr: Arrangement) -> int:
    return sum(comb(s.multiplicity, 2) for s in arr.points)


def _smooth_point_on_line(arr: Arrangement, rng: random.Random) -> ProjectivePoint:
    line = arr.lines[0]
    sing = {s.point for s in arr.points}
    while True:
        # points of x = 0 (the first mirror) are [0 : s : t]
        cand = _param_point(line, fe(rng.randint(-9, 9)), fe(rng.randint(1, 9)))
        if cand is not None and cand not in sing:
            return cand


def _param_point(line: Poly, s: FieldElement, t: FieldElement):
    a = [line.terms.get(e, fe(0)) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
    # choose two vectors spanning the kernel of (a0, a1, a2)
    if a[0]:
        v1 = (-a[1] / a[0], fe(1), fe(0))
        v2 = (-a[2] / a[0], fe(0), fe(1))
    elif a[1]:
        v1 = (fe(1), fe(0), fe(0))
        v2 = (fe(0), -a[2] / a[1], fe(1))
    else:
        v1 = (fe(1), fe(0), fe(0))
        v2 = (fe(0), fe(1), fe(0))
    c = [s * v1[i] + t * v2[i] for i in range(3)]
    if not any(c):
        return None
    return ProjectivePoint(*c)


def generic_point(arr: Arrangement, rng: random.Random) -> ProjectivePoint:
    while True:
        p = ProjectivePoint(rng.randint(-9, 9), rng.randint(-9, 9), rng.randint(1, 9))
        if not any(p.on(l) for l in arr.lines):
            return p


def verify_orbit_claims(arr: Arrangement | None = None, seed: int = 0) -> list[dict]:
    """Check orbit and stabilizer statements; returns one entry per claim."""
    arr = arr or build_arrangement()
    rng = random.Random(seed)
    out = []

    def claim(cid, ok, details):
        out.append({"id": cid, "status": "pass" if ok else "fail", "details": details})

    expected = {"double": (15, 4, "D4 (Klein four)"), "triple": (10, 6, "D6"),
                "quintuple": (6, 10, "D10")}
    for label, (size, stab, typ) in expected.items():
        members = arr.by_label(label)
        rec = orbit(members[0])
        same = set(rec.points) == set(members)
        claim(f"orbit.{label}", same and rec.size == size,
              f"orbit size {rec.size}, class size {len(members)}")
        claim(f"stabilizer.{label}", rec.stabilizer_order == stab and rec.stabilizer_type == typ,
              f"order {rec.stabilizer_order}, type {rec.stabilizer_type}")
    p = _smooth_point_on_line(arr, rng)
    rec = orbit(p)
    claim("orbit.smooth_line_point", rec.size == 30, f"{p} has orbit size {rec.size}")
    q = generic_point(arr, rng)
    rec = orbit(q)
    claim("orbit.generic_point", rec.size == 60, f"{q} has orbit size {rec.size}")
    lo = line_orbit(arr.lines[0])
    claim("orbit.lines", len(lo) == 15 and set(lo) == set(arr.lines), f"line orbit size {len(lo)}")
    pts = {s.point for s in arr.points}
    closed = all(p.transform(g) in pts for g in GENERATORS for p in pts)
    claim("closure.points", closed, "point set closed under generators")
    return out


def check_named_points() -> dict[str, str]:
    """Classify [0:0:1], [1:1:1], [w+1:0:2] and [w:0:1] in the computed arrangement."""
    arr = build_arrangement()
    lookup = {s.point: s.orbit_id for s in arr.points}
    w = parse_element("w")
    cands = {
        "[0:0:1]": ProjectivePoint(0, 0, 1),
        "[1:1:1]": ProjectivePoint(1, 1, 1),
        "[w+1:0:2]": ProjectivePoint(w + 1, 0, 2),
        "[w:0:1]": ProjectivePoint(w, 0, 1),
    }
    return {k: lookup.get(p, "not singular") for k, p in cands.items()}


# rendering ---------------------------------------------------------------------

_COLORS = {5: "#ffffff", 3: "#000000", 2: "#888888"}


def _complement_basis(patch: tuple[float, float, float]):
    import numpy as np

    n = np.array(patch, dtype=float)
    basis = []
    for e in np.eye(3):
        v = e - (e @ n) / (n @ n) * n
        for b in basis:
            v = v - (v @ b) * b
        if np.linalg.norm(v) > 1e-9:
            basis.append(v / np.linalg.norm(v))
        if len(basis) == 2:
            break
    return basis


def render_affine(arr: Arrangement | None = None, patch: Poly | str = "y - w*z",
                  size: int = 640) -> tuple[str, dict]:
    """SVG drawing of the arrangement in the chart where ``patch`` is nonzero.

    Floats (w to 12 digits) are used only here.  Returns the SVG text and a
    summary with the finite/infinite point counts.
    """
    import numpy as np

    arr = arr or build_arrangement()
    if isinstance(patch, str):
        patch = parse_poly(patch)
    if patch.degree != 1:
        raise ValueError("patch must be a linear form")
    wf = round(fe("w").to_float(), 12)

    def fl(c: FieldElement) -> float:
        return float(c.a) + float(c.b) * wf

    lvec = np.array([fl(patch.terms.get(e, fe(0))) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    u, v = _complement_basis(tuple(lvec))
    finite, infinite = [], []
    for s in arr.points:
        if s.point.on(patch):
            infinite.append(s)
        else:
            P = np.array([fl(c) for c in s.point.coords])
            lp = P @ lvec
            finite.append((s, (P @ u) / lp, (P @ v) / lp))
    if not finite:
        raise ValueError("patch vanishes on every singular point")
    xs = [f[1] for f in finite]
    ys = [f[2] for f in finite]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    cx, cy = (max(xs) + min(xs)) / 2, (max(ys) + min(ys)) / 2
    scale = 0.8 * size / span
    half = size / 2

    def to_px(x, y):
        return half + (x - cx) * scale, half - (y - cy) * scale

    segs = []
    lines_at_infinity = 0
    for l in arr.lines:
        a = np.array([fl(l.terms.get(e, fe(0))) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))])
        # the line in chart coordinates: (a.u) X + (a.v) Y + (a.lvec)/(lvec.lvec) ... solve via two points
        A, B = a @ u, a @ v
        C = (a @ lvec) / (lvec @ lvec)
        if abs(A) < 1e-12 and abs(B) < 1e-12:
            lines_at_infinity += 1
            continue
        # affine point (X, Y) corresponds to X u + Y v + lvec/|lvec|^2
        R = 4 * span
        d = np.array([-B, A]) / np.hypot(A, B)
        p0 = -C * np.array([A, B]) / (A * A + B * B)
        c0 = np.array([cx, cy])
        p0 = p0 + ((c0 - p0) @ d) * d
        x1, y1 = to_px(*(p0 - R * d))
        x2, y2 = to_px(*(p0 + R * d))
        segs.append(f'<line x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
                    f'stroke="#3060a0" stroke-width="1.2"/>')
    dots = []
    for s, x, y in finite:
        px, py = to_px(x, y)
        dots.append(f'<circle cx="{px:.3f}" cy="{py:.3f}" r="5" fill="{_COLORS[s.multiplicity]}" '
                    f'stroke="#000" stroke-width="1"><title>{s.orbit_id} {s.point}</title></circle>')
    inf_counts = Counter(s.orbit_id for s in infinite)
    legend_inf = ", ".join(f"{n} {lab} point{'s' if n != 1 else ''}" for lab, n in sorted(inf_counts.items()))
    legend = [
        f"chart {patch.pretty()} != 0; {len(arr.lines) - lines_at_infinity} lines drawn, "
        f"{len(finite)} finite points",
        (f"{legend_inf} at infinity" if infinite else "no singular points at infinity"),
        "white: quintuple, black: triple, grey: double",
    ]
    texts = [f'<text x="10" y="{18 + 16 * i}" font-size="13" font-family="monospace">{t}</text>'
             for i, t in enumerate(legend)]
    svg = "\n".join([
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="#f4f4f0"/>',
        f'<clipPath id="frame"><rect width="{size}" height="{size}"/></clipPath>',
        '<g clip-path="url(#frame)">', *segs, *dots, "</g>", *texts, "</svg>",
    ])
    summary = {
        "lines_drawn": len(arr.lines) - lines_at_infinity,
        "finite_points": len(finite),
        "points_at_infinity": dict(inf_counts),
        "legend": legend,
    }
    return svg, summary

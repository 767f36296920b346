"""Incidence spectra: i-point lines (t_i) and i-point circles (s_i).

Two engines compute the same spectrum: a naive triple enumerator (the ground
truth oracle) and an inversion-accelerated counter that turns circles through
each point into lines among the inverted remainder. Both are exact; point
sets whose coordinates do not reduce to a common exact domain are handled by
certified expression predicates, with undecidable predicates counted and the
run flagged.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from math import comb, lcm

from .errors import DuplicatePoints, PredicateUndecided
from .exactnum import (
    CycloElement,
    DyadicInterval,
    QuadraticElement,
    scalar_is_zero,
    scalar_sign,
)
from .geometry import (
    Point,
    circle_through,
    collinear,
    concyclic,
    domain_one,
    point_scalars,
    points_equal,
)
from .kernels import circle3_minors, det3_sign, incident_indices


class CircleSpectrum:
    """Exact counts t_i (i-point lines, i >= 2) and s_i (i-point circles, i >= 3)."""

    def __init__(self, n: int, line_counts: dict[int, int], circle_counts: dict[int, int],
                 complete: bool = True):
        self.n = n
        self.line_counts = {i: c for i, c in sorted(line_counts.items()) if c}
        self.circle_counts = {i: c for i, c in sorted(circle_counts.items()) if c}
        if complete:
            lhs = sum(comb(i, 3) * c for i, c in self.line_counts.items())
            lhs += sum(comb(i, 3) * c for i, c in self.circle_counts.items())
            if lhs != comb(n, 3):
                raise AssertionError(
                    f"triple identity violated: {lhs} != C({n},3) = {comb(n, 3)}"
                )

    @property
    def ordinary_circles(self) -> int:
        return self.circle_counts.get(3, 0)

    @property
    def ordinary_generalised(self) -> int:
        return self.line_counts.get(3, 0) + self.circle_counts.get(3, 0)

    @property
    def four_point_generalised(self) -> int:
        return self.line_counts.get(4, 0) + self.circle_counts.get(4, 0)

    def __eq__(self, other):
        return (
            isinstance(other, CircleSpectrum)
            and self.n == other.n
            and self.line_counts == other.line_counts
            and self.circle_counts == other.circle_counts
        )

    def __repr__(self):
        return f"CircleSpectrum(n={self.n}, t={self.line_counts}, s={self.circle_counts})"

    def to_json(self):
        return {
            "n": self.n,
            "line_counts": {str(i): c for i, c in self.line_counts.items()},
            "circle_counts": {str(i): c for i, c in self.circle_counts.items()},
            "ordinary_circles": self.ordinary_circles,
            "ordinary_generalised": self.ordinary_generalised,
            "four_point_generalised": self.four_point_generalised,
        }

    def to_csv(self) -> str:
        lines = ["kind,i,count"]
        for i, c in self.line_counts.items():
            lines.append(f"line,{i},{c}")
        for i, c in self.circle_counts.items():
            lines.append(f"circle,{i},{c}")
        return "\n".join(lines) + "\n"


class SpectrumReport:
    def __init__(self, spectrum, backend, undecided_predicates, wall_time):
        self.spectrum = spectrum
        self.backend = backend
        self.undecided_predicates = undecided_predicates
        self.wall_time = wall_time

    def to_json(self):
        obj = self.spectrum.to_json()
        obj["backend"] = self.backend
        obj["undecided_predicates"] = self.undecided_predicates
        return obj


# ---------------- exact coordinate tables ----------------


class _ExactTable:
    """Per-point-set exact coordinates in one shared domain."""

    def __init__(self, points):
        self.points = points
        self.n = len(points)
        sc = point_scalars(points)
        self.sc = sc
        self.kind = None
        if sc is not None:
            if all(isinstance(v, Fraction) for v in sc):
                self.kind = "frac"
                self.rows = []
                for i in range(0, len(sc), 2):
                    x, y = sc[i], sc[i + 1]
                    q = lcm(x.denominator, y.denominator)
                    a, b = int(x * q), int(y * q)
                    self.rows.append((a * a + b * b, a * q, b * q, q * q))
                self.flat = [(sc[2 * i], sc[2 * i + 1]) for i in range(self.n)]
            else:
                self.kind = "field"
                self.one = domain_one(sc)
                self.flat = [(sc[2 * i], sc[2 * i + 1]) for i in range(self.n)]
                self.lift = [
                    (x * x + y * y, x, y, self.one) for (x, y) in self.flat
                ]
                self._enc_cache: dict[int, list] = {}

    def coords(self, i):
        return self.flat[i]

    def lifted(self, i):
        return self.rows[i] if self.kind == "frac" else self.lift[i]

    def enclosures(self, prec=64):
        enc = self._enc_cache.get(prec)
        if enc is None:
            enc = [
                (_enclose(x, prec), _enclose(y, prec)) for (x, y) in self.flat
            ]
            self._enc_cache[prec] = enc
        return enc


def _enclose(scalar, prec) -> DyadicInterval:
    if isinstance(scalar, Fraction):
        return DyadicInterval.from_fraction(scalar, prec)
    if isinstance(scalar, CycloElement):
        return scalar.interval(prec)
    if isinstance(scalar, QuadraticElement):
        root = DyadicInterval.from_int(scalar.d).sqrt(prec)
        return DyadicInterval.from_fraction(scalar.a, prec).add(
            DyadicInterval.from_fraction(scalar.b, prec).mul(root, prec), prec
        )
    raise TypeError(scalar)


def _check_inputs(points):
    n = len(points)
    if n < 3:
        raise ValueError("need at least three points")
    approx = [p.approx() for p in points]
    for i, j in combinations(range(n), 2):
        if abs(approx[i][0] - approx[j][0]) < 1e-6 and abs(approx[i][1] - approx[j][1]) < 1e-6:
            if points_equal(points[i], points[j]):
                raise DuplicatePoints(f"points {i} and {j} coincide")


# ---------------- naive engine ----------------


def _naive_exact_groups(table: _ExactTable):
    """Map: sorted tuple of incident point indices -> is_line, via all triples."""
    n = table.n
    groups: dict[tuple, bool] = {}
    if table.kind == "frac":
        rows = table.rows
        for tri in combinations(range(n), 3):
            r1, r2, r3 = rows[tri[0]], rows[tri[1]], rows[tri[2]]
            t, l1, l2, l0 = circle3_minors(*r1, *r2, *r3)
            if t == 0 and l1 == 0 and l2 == 0:
                raise DuplicatePoints("degenerate triple (coincident points?)")
            incident = incident_indices(t, l1, l2, l0, rows)
            groups[incident] = (t == 0)
    elif table.kind == "field":
        enc = table.enclosures(64)
        prec = 64
        for tri in combinations(range(n), 3):
            lifted = [table.lifted(i) for i in tri]
            t = _sdet3([r[1:] for r in lifted])
            l1 = -_sdet3([[r[0], r[2], r[3]] for r in lifted])
            l2 = _sdet3([[r[0], r[1], r[3]] for r in lifted])
            l0 = -_sdet3([[r[0], r[1], r[2]] for r in lifted])
            et = _enclose(t, prec)
            e1 = _enclose(l1, prec)
            e2 = _enclose(l2, prec)
            e0 = _enclose(l0, prec)
            incident = []
            for i in range(n):
                ex, ey = enc[i]
                rho = ex.mul(ex, prec).add(ey.mul(ey, prec), prec)
                val = (
                    et.mul(rho, prec)
                    .add(e1.mul(ex, prec), prec)
                    .add(e2.mul(ey, prec), prec)
                    .add(e0, prec)
                )
                if val.contains_zero():
                    if i in tri or _field_incident(table, (t, l1, l2, l0), i):
                        incident.append(i)
            groups[tuple(incident)] = scalar_is_zero(t)
    else:
        raise AssertionError
    return groups


def _field_incident(table, coeffs, i) -> bool:
    t, l1, l2, l0 = coeffs
    x, y = table.coords(i)
    val = t * (x * x + y * y) + l1 * x + l2 * y + l0 * table.one
    return scalar_is_zero(val)


def _sdet3(r):
    (a, b, c), (d, e, f), (g, h, i) = r
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def _naive_expr_groups(points):
    """Certified-expression fallback; returns (groups, undecided count)."""
    n = len(points)
    undecided = 0
    groups: dict[tuple, bool] = {}
    for tri in combinations(range(n), 3):
        a, b, c = (points[i] for i in tri)
        try:
            is_line = collinear(a, b, c)
        except PredicateUndecided:
            undecided += 1
            continue
        incident = list(tri)
        for i in range(n):
            if i in tri:
                continue
            p = points[i]
            try:
                if is_line:
                    hit = collinear(a, b, p)
                else:
                    hit = concyclic(a, b, c, p)
            except PredicateUndecided:
                undecided += 1
                hit = False
            if hit:
                incident.append(i)
        groups[tuple(sorted(incident))] = is_line
    return groups, undecided


def _spectrum_from_groups(n, groups, complete=True):
    line_counts: dict[int, int] = {}
    circle_counts: dict[int, int] = {}
    for key, is_line in groups.items():
        i = len(key)
        if is_line:
            line_counts[i] = line_counts.get(i, 0) + 1
        else:
            circle_counts[i] = circle_counts.get(i, 0) + 1
    t2 = comb(n, 2) - sum(comb(i, 2) * c for i, c in line_counts.items())
    if t2 > 0:
        line_counts[2] = t2
    return CircleSpectrum(n, line_counts, circle_counts, complete=complete)


def spectrum_naive(points, _check=True) -> SpectrumReport:
    """Ground-truth spectrum by triple enumeration; O(n^4) incidence tests."""
    start = time.perf_counter()
    if _check:
        _check_inputs(points)
    table = _ExactTable(points)
    undecided = 0
    if table.kind is not None:
        groups = _naive_exact_groups(table)
    else:
        groups, undecided = _naive_expr_groups(points)
    spec = _spectrum_from_groups(len(points), groups, complete=undecided == 0)
    return SpectrumReport(spec, "naive", undecided, time.perf_counter() - start)


# ---------------- inversion-accelerated engine ----------------


def _invert_table(table: _ExactTable, ci: int):
    """Projective images (X, Y, W) of all points != ci inverted in point ci.

    W = |q - c|^2 > 0, so orientation signs computed on scaled coordinates
    agree with affine ones.
    """
    if table.kind == "frac":
        cx, cy = table.coords(ci)
        out = []
        for j in range(table.n):
            if j == ci:
                out.append(None)
                continue
            x, y = table.coords(j)
            dx, dy = x - cx, y - cy
            rho = dx * dx + dy * dy
            out.append((cx * rho + dx, cy * rho + dy, rho))
        return out
    cx, cy = table.coords(ci)
    out = []
    for j in range(table.n):
        if j == ci:
            out.append(None)
            continue
        x, y = table.coords(j)
        dx, dy = x - cx, y - cy
        rho = dx * dx + dy * dy
        out.append((cx * rho + dx, cy * rho + dy, rho))
    return out


def _direction(pa, pb):
    """Direction from projective pa to pb: (dx, dy) scaled by Wa*Wb > 0."""
    (xa, ya, wa) = pa
    (xb, yb, wb) = pb
    return (xb * wa - xa * wb, yb * wa - ya * wb)


def _sgn_scalar(v):
    if isinstance(v, Fraction):
        return -1 if v < 0 else (1 if v > 0 else 0)
    return scalar_sign(v)


def _centre_lines(table: _ExactTable, ci: int):
    """All maximal collinear classes (size >= 2) among the inverted points."""
    proj = _invert_table(table, ci)
    idx = [j for j in range(table.n) if j != ci]
    lines: set[frozenset] = set()
    for ai, a in enumerate(idx):
        others = idx[:ai] + idx[ai + 1:]
        pa = proj[a]
        dirs = []
        for b in others:
            d = _direction(pa, proj[b])
            sy = _sgn_scalar(d[1])
            if sy < 0 or (sy == 0 and _sgn_scalar(d[0]) < 0):
                d = (-d[0], -d[1])
            dirs.append((d, b))

        def cmp(u, v):
            du, dv = u[0], v[0]
            s = _sgn_scalar(du[0] * dv[1] - du[1] * dv[0])
            return -s  # sort by angle; orientation sign flips order only

        dirs.sort(key=cmp_to_key(cmp))
        group = [dirs[0]]
        for item in dirs[1:]:
            d0 = group[-1][0]
            d1 = item[0]
            if scalar_is_zero(d0[0] * d1[1] - d0[1] * d1[0]):
                group.append(item)
            else:
                if len(group) >= 1:
                    lines.add(frozenset([a] + [g[1] for g in group]))
                group = [item]
        lines.add(frozenset([a] + [g[1] for g in group]))
    return {ln for ln in lines if len(ln) >= 2}


def _centre_buckets(table: _ExactTable, ci: int):
    """For one centre: counts {(points_on_circle, is_line_of_P): count}."""
    buckets: dict[tuple[int, bool], int] = {}
    lines = _centre_lines(table, ci)
    for ln in lines:
        members = sorted(ln)
        # the generalised circle through the centre and the class: it is an
        # original line of P iff the spanned line passes through the centre
        a, b = members[0], members[1]
        is_line = _collinear_indices(table, ci, a, b)
        key = (len(members) + 1, is_line)
        buckets[key] = buckets.get(key, 0) + 1
    return buckets


def _collinear_indices(table, i, j, k) -> bool:
    if table.kind == "frac":
        (ax, ay), (bx, by), (cx, cy) = table.coords(i), table.coords(j), table.coords(k)
        q1 = lcm(ax.denominator, ay.denominator)
        q2 = lcm(bx.denominator, by.denominator)
        q3 = lcm(cx.denominator, cy.denominator)
        return (
            det3_sign(
                int(ax * q1), int(ay * q1), q1,
                int(bx * q2), int(by * q2), q2,
                int(cx * q3), int(cy * q3), q3,
            )
            == 0
        )
    (ax, ay), (bx, by), (cx, cy) = table.coords(i), table.coords(j), table.coords(k)
    v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return scalar_is_zero(v)


def spectrum_fast(points, workers: int = 1, _check=True) -> SpectrumReport:
    """Inversion-accelerated spectrum; identical output to spectrum_naive.

    For each point p the set inverted in p is scanned for collinear classes
    by certified angular sorting around every inverted point; a generalised
    circle with k points is discovered at each of its k member centres, so
    bucket counts divide by k. Deterministic regardless of worker count.
    """
    start = time.perf_counter()
    if _check:
        _check_inputs(points)
    table = _ExactTable(points)
    if table.kind is None:
        groups, undecided = _naive_expr_groups(points)
        spec = _spectrum_from_groups(len(points), groups, complete=undecided == 0)
        return SpectrumReport(spec, "fast", undecided, time.perf_counter() - start)
    n = table.n
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            all_buckets = list(ex.map(lambda ci: _centre_buckets(table, ci), range(n)))
    else:
        all_buckets = [_centre_buckets(table, ci) for ci in range(n)]
    totals: dict[tuple[int, bool], int] = {}
    for b in all_buckets:
        for key, c in b.items():
            totals[key] = totals.get(key, 0) + c
    line_counts: dict[int, int] = {}
    circle_counts: dict[int, int] = {}
    for (i, is_line), c in totals.items():
        assert c % i == 0, "inversion covariance bookkeeping failed"
        if is_line:
            line_counts[i] = line_counts.get(i, 0) + c // i
        else:
            circle_counts[i] = circle_counts.get(i, 0) + c // i
    t2 = comb(n, 2) - sum(comb(i, 2) * c for i, c in line_counts.items())
    if t2:
        line_counts[2] = t2
    spec = CircleSpectrum(n, line_counts, circle_counts)
    return SpectrumReport(spec, "fast", 0, time.perf_counter() - start)


# ---------------- derived queries ----------------

ORDINARY_GENERALISED = "ordinary_generalised"
FOUR_POINT = "four_point"


def spanned_circles(points):
    """All spanned generalised circles: list of (incident index tuple, is_line)."""
    _check_inputs(points)
    table = _ExactTable(points)
    if table.kind is None:
        groups, undecided = _naive_expr_groups(points)
        if undecided:
            raise PredicateUndecided(f"{undecided} undecided predicates")
    else:
        groups = _naive_exact_groups(table)
    return table, groups


def circles_through_point(points, q: Point, which: str) -> int:
    """Number of spanned generalised circles of the given class through q."""
    sizes = {ORDINARY_GENERALISED: 3, FOUR_POINT: 4}
    if which not in sizes:
        raise ValueError(f"unknown class {which!r}")
    size = sizes[which]
    table, groups = spanned_circles(points)
    qi = None
    for i, p in enumerate(points):
        if points_equal(p, q):
            qi = i
            break
    count = 0
    for key, is_line in groups.items():
        if len(key) != size:
            continue
        if qi is not None:
            if qi in key:
                count += 1
            continue
        tri = key[:3]
        g = circle_through(points[tri[0]], points[tri[1]], points[tri[2]])
        if g.contains(q):
            count += 1
    return count


def stability_bound(n: int, s: int, K: int) -> int:
    """Explicit bound on ordinary generalised circles after K point edits:
    s + sum_{j=0}^{K-1} C(n+j, 2)."""
    if K < 0:
        raise ValueError("K must be nonnegative")
    return s + sum(comb(n + j, 2) for j in range(K))

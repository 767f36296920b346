"""Numeric parametrization of real circular cubics by the invariant
differential.

After rotating the asymptote vertical, an irreducible circular cubic reads
A(x) y^2 + B(x) y + C(x) = 0 with A linear, and the invariant differential
along either sheet is dx / sqrt(D), D = B^2 - 4AC. Arc coordinates u are
cumulative integrals of that differential along the closed real branches,
normalised so the component through the real point at infinity has period one
and u = 0 at that point. Group addition corresponds to parameter addition;
the second oval of a two-component curve carries a component bit whose base
offset is calibrated by a numeric doubling.

Everything here is numeric (mpmath at 256-bit working precision); it drives
synthesis and verification, never certified counting.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath as mp

from .errors import HostUnsupported, ToleranceExceeded

_PREC = 256
_EPS = mp.mpf(2) ** -180
_GLUE_TOL = mp.mpf(2) ** -40


def _to_mpf(q: Fraction):
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


class _Poly1:
    """Dense univariate mpf polynomial, ascending coefficients."""

    def __init__(self, coeffs):
        while len(coeffs) > 1 and abs(coeffs[-1]) < _EPS:
            coeffs = coeffs[:-1]
        self.c = list(coeffs)

    def __call__(self, x):
        acc = mp.mpf(0)
        for co in reversed(self.c):
            acc = acc * x + co
        return acc

    def deriv(self):
        return _Poly1([i * co for i, co in enumerate(self.c)][1:] or [mp.mpf(0)])

    def real_roots(self):
        if len(self.c) <= 1:
            return []
        roots = mp.polyroots(list(reversed(self.c)), maxsteps=400, extraprec=200)
        out = sorted(mp.re(r) for r in roots if abs(mp.im(r)) < mp.mpf(2) ** -50)
        merged = []
        for r in out:
            if merged and abs(r - merged[-1]) < mp.mpf(2) ** -50:
                continue
            merged.append(r)
        return merged


def _mul2(a, b):
    out: dict = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            m = (i1 + i2, j1 + j2)
            out[m] = out.get(m, mp.mpf(0)) + c1 * c2
    return out


def _poly_mul(a, b):
    out = [mp.mpf(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [mp.mpf(0)] * (n - len(a))
    b = list(b) + [mp.mpf(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


class RotatedCubic:
    """Rotated model A(x) y^2 + B(x) y + C(x) with a vertical asymptote."""

    def __init__(self, curve, u: Fraction, v: Fraction):
        norm = mp.sqrt(_to_mpf(u) ** 2 + _to_mpf(v) ** 2)
        c = _to_mpf(v) / norm
        s = -_to_mpf(u) / norm
        self.rot_c, self.rot_s = c, s
        terms: dict[tuple[int, int], mp.mpf] = {}
        for (i, j, _k), coeff in curve.coeffs.items():
            base = {(0, 0): _to_mpf(coeff)}
            for _ in range(i):
                base = _mul2(base, {(1, 0): s, (0, 1): c})
            for _ in range(j):
                base = _mul2(base, {(1, 0): -c, (0, 1): s})
            for m, cf in base.items():
                terms[m] = terms.get(m, mp.mpf(0)) + cf
        A = [mp.mpf(0)] * 2
        B = [mp.mpf(0)] * 3
        C = [mp.mpf(0)] * 4
        for (i, j), cf in terms.items():
            if j >= 3:
                if abs(cf) > mp.mpf(2) ** -120:
                    raise AssertionError("rotation failed to kill the y^3 term")
                continue
            if j == 2:
                if i >= 2:
                    if abs(cf) > mp.mpf(2) ** -120:
                        raise AssertionError("y^2 coefficient is not linear")
                    continue
                A[i] += cf
            elif j == 1:
                B[i] += cf
            else:
                C[i] += cf
        self.A, self.B, self.C = _Poly1(A), _Poly1(B), _Poly1(C)
        self.D = _Poly1(_poly_sub(_poly_mul(B, B), [4 * t for t in _poly_mul(A, C)]))
        if len(self.A.c) < 2 or abs(self.A.c[1]) < _EPS:
            raise HostUnsupported("degenerate asymptote structure")
        self.pole = -self.A.c[0] / self.A.c[1]

    def to_rotated(self, x, y):
        return (self.rot_s * x - self.rot_c * y, self.rot_c * x + self.rot_s * y)

    def from_rotated(self, xr, yr):
        return (self.rot_s * xr + self.rot_c * yr, -self.rot_c * xr + self.rot_s * yr)

    def sheets(self, x):
        d = self.D(x)
        a, b = self.A(x), self.B(x)
        if d < 0:
            # cancellation noise at turning points: treat as a double root
            scale = 1 + b * b + abs(4 * a * self.C(x))
            if d > -(mp.mpf(2) ** -100) * scale:
                d = mp.mpf(0)
            else:
                return []
        r = mp.sqrt(d)
        return [(-b + r) / (2 * a), (-b - r) / (2 * a)]

    def f_value(self, x, y):
        return (self.A(x) * y + self.B(x)) * y + self.C(x)

    def f_y(self, x, y):
        return 2 * self.A(x) * y + self.B(x)

    def f_x(self, x, y):
        return self.A.deriv()(x) * y * y + self.B.deriv()(x) * y + self.C.deriv()(x)


class _Node:
    """One sheet of the curve over one span, traversed in a known direction."""

    __slots__ = ("lo", "hi", "sheet", "forward", "length", "cum")

    def __init__(self, lo, hi, sheet):
        self.lo = lo
        self.hi = hi
        self.sheet = sheet  # sign of f_y = sign of the sqrt branch
        self.forward = True
        self.length = None
        self.cum = None


class CubicParametrization:
    """Arc-coordinate map of a smooth or acnodal circular cubic."""

    def __init__(self, host, tolerance=None):
        self.host = host
        self.tolerance = tolerance if tolerance is not None else mp.mpf(10) ** -9
        self.oval_offset = None
        self._oval_sign = 1
        with mp.workprec(_PREC):
            self._build()

    # ---------------- construction ----------------
    def _build(self):
        rc = RotatedCubic(self.host.curve, self.host.u, self.host.v)
        self.rc = rc
        droots = rc.D.real_roots()
        turning, isolated = [], []
        for r in droots:
            left = rc.D(r - _GLUE_TOL)
            right = rc.D(r + _GLUE_TOL)
            if left > 0 and right > 0:
                continue  # tangential double root inside a span: treat as interior
            if left < 0 and right < 0:
                isolated.append(r)
            else:
                turning.append(r)
        self.isolated = isolated
        cuts = sorted(turning + [rc.pole])
        bound = max([abs(p) for p in cuts] + [mp.mpf(1)]) * 4 + 10
        edges = [-bound] + cuts + [bound]
        spans = []
        for a, b in zip(edges, edges[1:]):
            if b - a < _GLUE_TOL:
                continue
            if rc.D((a + b) / 2) > 0:
                if a == -bound or b == bound:
                    raise HostUnsupported("unbounded real branch in rotated frame")
                spans.append((a, b))
        self.spans = spans
        sigma_f = 1 if rc.B(rc.pole) > 0 else -1
        self.sigma_infinite = -sigma_f

        # gluing map: (span idx, sheet, endpoint side) -> (next span idx, sheet, side, kind)
        glue = {}
        for si, (a, b) in enumerate(spans):
            for x0, side in ((a, "lo"), (b, "hi")):
                if abs(x0 - rc.pole) < _GLUE_TOL:
                    # partner span on the other side of the pole
                    for sj, (c_, d_) in enumerate(spans):
                        if sj == si:
                            continue
                        if abs(c_ - x0) < _GLUE_TOL or abs(d_ - x0) < _GLUE_TOL:
                            oside = "lo" if abs(c_ - x0) < _GLUE_TOL else "hi"
                            for sheet in (1, -1):
                                kind = "pole" if sheet == sigma_f else "o"
                                glue[(si, sheet, side)] = (sj, sheet, oside, kind)
                else:
                    for sheet in (1, -1):
                        glue[(si, sheet, side)] = (si, -sheet, side, "turn")
        self.glue = glue

        visited = set()
        cycles = []
        for start in [(si, sh) for si in range(len(spans)) for sh in (1, -1)]:
            if start in visited:
                continue
            cycle = []
            si, sheet = start
            enter_side = "lo"
            while (si, sheet) not in visited:
                visited.add((si, sheet))
                node = _Node(spans[si][0], spans[si][1], sheet)
                node.forward = enter_side == "lo"
                cycle.append(((si, sheet), node))
                exit_side = "hi" if enter_side == "lo" else "lo"
                nsi, nsheet, nside, kind = glue[(si, sheet, exit_side)]
                node_exit_kind = kind
                cycle[-1] = ((si, sheet), node, node_exit_kind)
                si, sheet, enter_side = nsi, nsheet, nside
            cycles.append(cycle)

        ident_cycle, oval_cycle = None, None
        for cyc in cycles:
            if any(kind == "o" for (_k, _n, kind) in cyc):
                ident_cycle = cyc
            else:
                oval_cycle = cyc
        if ident_cycle is None:
            raise HostUnsupported("no component passes through the infinite point")

        self.ident = self._layout(ident_cycle)
        self.period_raw = sum(n.length for (_k, n, _kind) in self.ident)
        # u(o) = 0: o sits at the exit of the node whose exit kind is "o"
        off = mp.mpf(0)
        o_at = None
        for (_key, node, kind) in self.ident:
            off += node.length
            if kind == "o":
                o_at = off
                break
        self.o_offset = o_at % self.period_raw
        self.oval = None
        if oval_cycle is not None:
            self.oval = self._layout(oval_cycle)
            ototal = sum(n.length for (_k, n, _kind) in self.oval)
            rel = abs(ototal - self.period_raw) / self.period_raw
            if rel > mp.mpf(10) ** -25:
                raise ToleranceExceeded("oval and identity periods disagree")

    def _layout(self, cycle):
        out = []
        cum = mp.mpf(0)
        for (key, node, kind) in cycle:
            node.length = self._seg_u(node.lo, node.hi)
            node.cum = cum
            cum += node.length
            out.append((key, node, kind))
        return out

    def _seg_u(self, a, b):
        def f(t):
            d = self.rc.D(t)
            # endpoint neighbourhoods of width ~2^-200 may evaluate negative;
            # dropping them changes the integral by O(2^-100)
            return 1 / mp.sqrt(d) if d > 0 else mp.mpf(0)

        return mp.quad(f, [a, b])

    # ---------------- coordinate queries ----------------
    def _find_node(self, cyc, xr, sheet):
        for (key, node, _kind) in cyc:
            if node.sheet == sheet and node.lo - _GLUE_TOL <= xr <= node.hi + _GLUE_TOL:
                return node
        return None

    def _clamp_to_spans(self, xr):
        """Snap x to the nearest span when float input noise pushes it just
        past a turning point (where D < 0 immediately outside)."""
        window = mp.mpf(2) ** -40 * (1 + abs(xr))
        best = None
        for (a, b) in self.spans:
            if a <= xr <= b:
                return xr
            for edge in (a, b):
                d = abs(xr - edge)
                if best is None or d < best[0]:
                    best = (d, edge)
        if best is not None and best[0] < window:
            return best[1]
        return xr

    def _project_y(self, xr, yr):
        sheets = self.rc.sheets(xr)
        if not sheets:
            raise ToleranceExceeded("x-coordinate off the real branches")
        return min(sheets, key=lambda s: abs(s - yr))

    def u_of(self, x, y):
        """(u in [0,1), component bit) for an affine point (floats/mpf)."""
        with mp.workprec(_PREC):
            xr, yr = self.rc.to_rotated(mp.mpf(x), mp.mpf(y))
            xr = self._clamp_to_spans(xr)
            yr = self._project_y(xr, yr)
            fy = self.rc.f_y(xr, yr)
            sheet = 1 if fy >= 0 else -1
            node = self._find_node(self.ident, xr, sheet)
            comp = 0
            cyc = self.ident
            if node is None and self.oval is not None:
                node = self._find_node(self.oval, xr, sheet)
                comp = 1
                cyc = self.oval
            if node is None:
                raise ToleranceExceeded("point not on a parametrized branch")
            part = self._seg_u(node.lo, xr)
            raw = node.cum + (part if node.forward else node.length - part)
            if comp == 0:
                return (((raw - self.o_offset) / self.period_raw) % 1, 0)
            return ((raw / self.period_raw) % 1, 1)

    def point_at(self, u, component=0):
        """Affine (x, y) mpf pair at group parameter u on the given component."""
        with mp.workprec(_PREC):
            if component == 0:
                cyc = self.ident
                raw = (mp.mpf(u) % 1) * self.period_raw + self.o_offset
            else:
                if self.oval is None:
                    raise HostUnsupported("host has no second component")
                c = self.oval_base_offset()
                w = (mp.mpf(u) - c) % 1
                if self._oval_sign < 0:
                    w = (-w) % 1
                cyc = self.oval
                raw = w * self.period_raw
            raw = raw % self.period_raw
            upos = mp.mpf(0)
            for (_key, node, _kind) in cyc:
                if raw <= upos + node.length + mp.mpf(2) ** -60:
                    want = raw - upos
                    if not node.forward:
                        want = node.length - want
                    want = max(mp.mpf(0), min(want, node.length))
                    xr = self._invert_integral(node, want)
                    ys = self.rc.sheets(xr)
                    if not ys:
                        xr = min(max(xr, node.lo), node.hi)
                        ys = self.rc.sheets(xr)
                    y = ys[0] if self.rc.f_y(xr, ys[0]) * node.sheet >= 0 else ys[1]
                    return self.rc.from_rotated(xr, y)
                upos += node.length
            raise ToleranceExceeded("parameter outside the period")

    def _invert_integral(self, node, want):
        lo, hi = node.lo, node.hi
        for _ in range(260):
            mid = (lo + hi) / 2
            if self._seg_u(node.lo, mid) < want:
                lo = mid
            else:
                hi = mid
            if hi - lo < mp.mpf(2) ** -120:
                break
        return (lo + hi) / 2

    # ---------------- numeric group law (rotated frame) ----------------
    def _chord_third(self, p, q):
        rc = self.rc
        px, py = p
        qx, qy = q
        same = abs(px - qx) < mp.mpf(2) ** -80 and abs(py - qy) < mp.mpf(2) ** -80
        if same:
            dx, dy = rc.f_y(px, py), -rc.f_x(px, py)
        else:
            dx, dy = qx - px, qy - py
        vals = [rc.f_value(px + t * dx, py + t * dy) for t in (0, 1, 2, 3)]
        c1 = (-11 * vals[0] + 18 * vals[1] - 9 * vals[2] + 2 * vals[3]) / 6
        c3 = (-vals[0] + 3 * vals[1] - 3 * vals[2] + vals[3]) / 6
        c2 = vals[1] - vals[0] - c1 - c3
        if abs(c3) < _EPS:
            raise ToleranceExceeded("degenerate chord")
        t3 = (-c2 / c3 - 1) if not same else (-c2 / c3)
        # for distinct points roots are 0, 1, t3 with sum = -c2/c3
        x3, y3 = px + t3 * dx, py + t3 * dy
        return (x3, self._project_y(x3, y3))

    def add_numeric(self, p, q):
        """(p*q)*o in rotated coordinates; o is the vertical direction."""
        s = self._chord_third(p, q)
        sheets = self.rc.sheets(s[0])
        if len(sheets) < 2:
            raise ToleranceExceeded("vertical chord lost a sheet")
        other = sheets[0] if abs(sheets[0] - s[1]) > abs(sheets[1] - s[1]) else sheets[1]
        return (s[0], other)

    def oval_base_offset(self):
        if self.oval is None:
            raise HostUnsupported("host has no second component")
        if self.oval_offset is not None:
            return self.oval_offset
        with mp.workprec(_PREC):
            (_k, node, _kind) = self.oval[0]
            samples = []
            for frac in (Fraction(1, 2), Fraction(1, 3)):
                xm = node.lo + (node.hi - node.lo) * _to_mpf(frac)
                ys = self.rc.sheets(xm)
                ym = ys[0] if self.rc.f_y(xm, ys[0]) * node.sheet >= 0 else ys[1]
                samples.append((xm, ym))
            p, q = samples
            updbl, comp = self._u_rot_pair(self.add_numeric(p, p))
            if comp != 0:
                raise ToleranceExceeded("doubling left the identity component")
            wp = self._oval_walk_u(p)
            wq = self._oval_walk_u(q)
            uqd, comp2 = self._u_rot_pair(self.add_numeric(q, q))
            if comp2 != 0:
                raise ToleranceExceeded("doubling left the identity component")
            for sign in (1, -1):
                for half in (0, Fraction(1, 2)):
                    c = (updbl / 2 - sign * wp + _to_mpf(half)) % 1
                    if self._close_mod1(2 * ((sign * wq + c) % 1), uqd):
                        self._oval_sign = sign
                        self.oval_offset = c
                        return c
            raise ToleranceExceeded("oval calibration failed")

    def _oval_walk_u(self, p):
        xr, yr = p
        sheet = 1 if self.rc.f_y(xr, yr) >= 0 else -1
        node = self._find_node(self.oval, xr, sheet)
        if node is None:
            raise ToleranceExceeded("oval point not located")
        part = self._seg_u(node.lo, xr)
        raw = node.cum + (part if node.forward else node.length - part)
        return (raw / self.period_raw) % 1

    def _u_rot_pair(self, p):
        xy = self.rc.from_rotated(*p)
        return self.u_of(*xy)

    def u_group(self, x, y):
        """(u, component) making the map a group homomorphism."""
        u, comp = self.u_of(x, y)
        if comp == 0:
            return (u, 0)
        c = self.oval_base_offset()
        w = u if self._oval_sign > 0 else (-u) % 1
        return ((w + c) % 1, 1)

    def _close_mod1(self, a, b):
        d = (a - b) % 1
        return min(d, 1 - d) < self.tolerance

    def check_homomorphism(self, pairs):
        """max |u(a+b) - u(a) - u(b)| mod 1 over numeric point pairs."""
        worst = mp.mpf(0)
        with mp.workprec(_PREC):
            for (p, q) in pairs:
                pr = self.rc.to_rotated(mp.mpf(p[0]), mp.mpf(p[1]))
                qr = self.rc.to_rotated(mp.mpf(q[0]), mp.mpf(q[1]))
                pr = (self._clamp_to_spans(pr[0]),) + pr[1:]
                qr = (self._clamp_to_spans(qr[0]),) + qr[1:]
                pr = (pr[0], self._project_y(*pr))
                qr = (qr[0], self._project_y(*qr))
                up = self.u_group(*p)
                uq = self.u_group(*q)
                s = self.add_numeric(pr, qr)
                us = self.u_group(*self.rc.from_rotated(*s))
                d = (up[0] + uq[0] - us[0]) % 1
                d = min(d, 1 - d)
                worst = max(worst, d)
                if (up[1] + uq[1]) % 2 != us[1]:
                    raise ToleranceExceeded("component bit is not additive")
        return worst

"""Battery hosts: concrete circular cubics with exactly-known coset structure.

Two-component smooth hosts are built from Weierstrass curves with rational
torsion via a rational projective change that sends a Gaussian-rational
conjugate pair of curve points to the circular points [+-i : 1 : 0]. The pair
is produced from a rational point on the quadratic twist by -1, and the third
intersection of its chord (a rational curve point we control) becomes the
real point at infinity of the circular model. The acnodal host is the inverse
of the standard ellipse in a rational point on it.

All derived data (curve polynomials, mapped points) is exact.
"""
from __future__ import annotations

from fractions import Fraction

from .curves import CurvePoly, _padd, _pmul
from .errors import HostUnsupported

# ---------------- Weierstrass arithmetic (rational, affine + infinity) -------


def _ec_add(A, B, P, Q):
    """Chord-tangent addition on y^2 = x(x+A)(x+B); None is the infinity O."""
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    a2, a4 = A + B, A * B
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - a2 - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def _ec_neg(P):
    return None if P is None else (P[0], -P[1])


def _ec_mul(A, B, k, P):
    if k < 0:
        return _ec_neg(_ec_mul(A, B, -k, P))
    R, Q = None, P
    while k:
        if k & 1:
            R = _ec_add(A, B, R, Q)
        Q = _ec_add(A, B, Q, Q)
        k >>= 1
    return R


class _Gauss:
    """Minimal Gaussian-rational pair used during host construction."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=Fraction(0)):
        self.re, self.im = Fraction(re), Fraction(im)

    def __add__(s, o):
        return _Gauss(s.re + o.re, s.im + o.im)

    def __sub__(s, o):
        return _Gauss(s.re - o.re, s.im - o.im)

    def __mul__(s, o):
        return _Gauss(s.re * o.re - s.im * o.im, s.re * o.im + s.im * o.re)

    def __truediv__(s, o):
        n = o.re * o.re + o.im * o.im
        return _Gauss((s.re * o.re + s.im * o.im) / n, (s.im * o.re - s.re * o.im) / n)


def _gauss_chord_third(A, B, P, Q):
    """Third intersection's coordinates for Gaussian points on the curve."""
    a2 = _Gauss(A + B)
    lam = (Q[1] - P[1]) / (Q[0] - P[0])
    x3 = lam * lam - a2 - P[0] - Q[0]
    y3 = lam * (P[0] - x3) - P[1]
    return (x3, y3)


def _mat_inv3(M):
    a, b, c = M[0]
    d, e, f = M[1]
    g, h, i = M[2]
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if det == 0:
        raise ValueError("singular matrix")
    adj = [
        [e * i - f * h, c * h - b * i, b * f - c * e],
        [f * g - d * i, a * i - c * g, c * d - a * f],
        [d * h - e * g, b * g - a * h, a * e - b * d],
    ]
    return [[v / det for v in row] for row in adj]


def _mat_vec(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(3)) for i in range(3))


def transform_curve(f: CurvePoly, Minv) -> CurvePoly:
    """The curve f(Minv * X) (image of f under the map with inverse Minv)."""
    lin = []
    for i in range(3):
        lin.append(
            {
                (1, 0, 0): Minv[i][0],
                (0, 1, 0): Minv[i][1],
                (0, 0, 1): Minv[i][2],
            }
        )
    out: dict = {}
    for (i, j, k), c in f.coeffs.items():
        term = {(0, 0, 0): c}
        for _ in range(i):
            term = _pmul(term, lin[0])
        for _ in range(j):
            term = _pmul(term, lin[1])
        for _ in range(k):
            term = _pmul(term, lin[2])
        out = _padd(out, term)
    return CurvePoly(out)


class TwoComponentHost:
    """A smooth two-component circular cubic with exact coset data."""

    def __init__(self, name, A, B, twist_point, base_point, torsion_gens):
        """base_point: rational curve point R; the real infinity of the
        circular model is D = -2R (so the coset shift solves 4x = omega).
        torsion_gens: dict with the exact torsion generators used by cosets.
        """
        self.name = name
        self.A, self.B = Fraction(A), Fraction(B)
        self.base_point = (Fraction(base_point[0]), Fraction(base_point[1]))
        self.twist_point = (Fraction(twist_point[0]), Fraction(twist_point[1]))
        self.torsion = torsion_gens
        self._build()

    def _build(self):
        A, B = self.A, self.B
        x0, y0 = self.twist_point
        if y0 == 0 or x0 * (x0 - A) * (x0 - B) != y0 * y0:
            raise ValueError("invalid twist point")
        iota = (_Gauss(-x0), _Gauss(0, y0))
        R = (_Gauss(self.base_point[0]), _Gauss(self.base_point[1]))
        # group sum P = R + iota(R'): non-real, with conj(P) = R - iota(R'),
        # so the chord through P and conj(P) meets the curve again at -2R
        P = _gauss_chord_third(A, B, R, iota)
        if P[0].im == 0:
            raise ValueError("chord point has real x-coordinate; unusable pair")
        self.D = _ec_mul(A, B, -2, self.base_point)
        v = (P[0].re, P[1].re, Fraction(1))
        w = (P[0].im, P[1].im, Fraction(0))
        aux_candidates = [
            (Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(1)),
            (Fraction(1), Fraction(1), Fraction(1)),
        ]
        M = None
        for aux in aux_candidates:
            cols = [[v[i], w[i], aux[i]] for i in range(3)]
            try:
                inv = _mat_inv3(cols)
            except ValueError:
                continue
            C = [
                [Fraction(0), Fraction(1), Fraction(0)],
                [Fraction(1), Fraction(0), Fraction(0)],
                [Fraction(0), Fraction(0), Fraction(1)],
            ]
            M = [
                [sum(C[i][k] * inv[k][j] for k in range(3)) for j in range(3)]
                for i in range(3)
            ]
            break
        if M is None:
            raise ValueError("no usable auxiliary point")
        self.M = M
        self.Minv = _mat_inv3(M)
        FW = CurvePoly(
            {
                (0, 2, 1): Fraction(1),
                (3, 0, 0): -Fraction(1),
                (2, 0, 1): -(A + B),
                (1, 0, 2): -(A * B),
            }
        )
        self.curve = transform_curve(FW, self.Minv)
        # sanity: circular (contains [i:1:0]) and real infinity at phi(D)
        val = _gauss_eval(self.curve)
        if not (val.re == 0 and val.im == 0):
            raise AssertionError("transformed curve is not circular")
        o = self.map_point(self.D)
        if o[2] != 0:
            raise AssertionError("distinguished point did not map to infinity")
        self.o_proj = o

    def map_point(self, P):
        """phi(P): projective rational triple of the circular model."""
        if P is None:
            v = (Fraction(0), Fraction(1), Fraction(0))
        else:
            v = (P[0], P[1], Fraction(1))
        return _mat_vec(self.M, v)

    def weierstrass_add(self, P, Q):
        return _ec_add(self.A, self.B, P, Q)

    def weierstrass_mul(self, k, P):
        return _ec_mul(self.A, self.B, k, P)

    def coset_points(self, n: int, variant: str):
        """Weierstrass-side coset for the order-n construction; returns a list
        of affine rational pairs in the circular model."""
        A, B = self.A, self.B
        out_w = []
        if variant == "Z_half_times_Z2":
            gens = self.torsion.get("z_variant")
            if gens is None or gens["n"] != n:
                raise HostUnsupported(
                    f"host {self.name} has no exact Z_{n//2}xZ_2 coset of order {n}"
                )
            shift = gens["shift"]
            for t in gens["subgroup"]:
                out_w.append(_ec_add(A, B, shift, t))
        elif variant == "cyclic":
            gens = self.torsion.get("cyclic")
            if gens is None or gens["n"] != n:
                raise HostUnsupported(
                    f"host {self.name} has no exact cyclic coset of order {n}"
                )
            shift = gens["shift"]
            for t in gens["subgroup"]:
                out_w.append(_ec_add(A, B, shift, t))
        else:
            raise ValueError(f"unknown variant {variant!r}")
        pts = []
        for P in out_w:
            img = self.map_point(P)
            if img[2] == 0:
                raise AssertionError("coset point landed at infinity")
            pts.append((img[0] / img[2], img[1] / img[2]))
        return pts


def _gauss_eval(curve: CurvePoly) -> _Gauss:
    """curve([i:1:0]) as a Gaussian rational."""
    tot = _Gauss(0)
    I = _Gauss(0, 1)
    for (i, j, k), c in curve.coeffs.items():
        if k:
            continue
        term = _Gauss(c)
        for _ in range(i):
            term = term * I
        tot = tot + term
    return tot


def _q(a, b):
    return (Fraction(a), Fraction(b))


def _build_host_n8() -> TwoComponentHost:
    """Order-8 torsion structure: y^2 = x(x+4096)(x+50625).

    The rational torsion is Z/2 x Z/8 with eight-torsion point g8; the real
    four-torsion (abstract Z4 x Z2) is fully rational, the coset shift is g8
    itself, and D = -2 g8 maps to infinity so the coset satisfies the
    quarter-of-omega condition.
    """
    A, B = Fraction(4096), Fraction(50625)
    g8 = _q(96000, 37536000)
    P4 = _ec_mul(A, B, 2, g8)
    T = (-A, Fraction(0))
    subgroup4 = []
    for i in range(4):
        for j in range(2):
            t = _ec_mul(A, B, i, P4)
            if j:
                t = _ec_add(A, B, t, T)
            subgroup4.append(t)
    g8T = _ec_add(A, B, g8, T)
    subgroup_cyc = [_ec_mul(A, B, i, g8) for i in range(8)]
    torsion = {
        "z_variant": {"n": 8, "shift": g8, "subgroup": subgroup4},
        "cyclic": {"n": 8, "shift": g8T, "subgroup": subgroup_cyc},
        "two_torsion": [(-A, Fraction(0)), (-B, Fraction(0)), (Fraction(0), Fraction(0))],
    }
    base = _ec_mul(A, B, -2, g8)  # -2 g8, so infinity lands on 4 g8
    return TwoComponentHost(
        "two-component-8", A, B, _q(50, 101150), base, torsion
    )


def _build_host_n12() -> TwoComponentHost:
    """Order-12 structure: y^2 = x(x+1024)(x-351), torsion Z/2 x Z/6 plus a
    point of infinite order g; D = 4g is the infinity-designate and the coset
    is g + [6]."""
    A, B = Fraction(1024), Fraction(-351)
    g = _q(-384, 13440)
    T3 = _q(576, 14400)
    two_tors = [None, (Fraction(0), Fraction(0)), (-A, Fraction(0)), (-B, Fraction(0))]
    subgroup6 = []
    for i in range(3):
        for T2 in two_tors:
            t = _ec_mul(A, B, i, T3)
            subgroup6.append(_ec_add(A, B, t, T2))
    torsion = {
        "z_variant": {"n": 12, "shift": g, "subgroup": subgroup6},
        "two_torsion": [t for t in two_tors if t is not None],
    }
    base = _ec_mul(A, B, -2, g)  # infinity lands on 4g
    return TwoComponentHost("two-component-12", A, B, _q(-54, 4158), base, torsion)


_HOST_CACHE: dict[str, TwoComponentHost] = {}


def two_component_host(n: int, variant: str = "Z_half_times_Z2") -> TwoComponentHost:
    """The battery host admitting an exact order-n coset of the given kind."""
    if variant == "cyclic" and n == 8 or variant == "Z_half_times_Z2" and n == 8:
        key = "n8"
        builder = _build_host_n8
    elif variant == "Z_half_times_Z2" and n == 12:
        key = "n12"
        builder = _build_host_n12
    else:
        raise HostUnsupported(f"no exact two-component host for n={n}, {variant}")
    host = _HOST_CACHE.get(key)
    if host is None:
        host = builder()
        _HOST_CACHE[key] = host
    return host

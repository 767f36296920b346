"""Pure-Python twins of the compiled kernels.

Same contracts as ``_kernels.pyx``; exact integer arithmetic throughout.
"""

BACKEND = "pure"


def det3_sign(a, b, c, d, e, f, g, h, i):
    v = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return (v > 0) - (v < 0)


def det3(a, b, c, d, e, f, g, h, i):
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det4_sign(m):
    """Sign of the determinant of a 4x4 integer matrix given as a flat list."""
    (
        a00, a01, a02, a03,
        a10, a11, a12, a13,
        a20, a21, a22, a23,
        a30, a31, a32, a33,
    ) = m
    # 2x2 minors of the last two rows
    m01 = a20 * a31 - a21 * a30
    m02 = a20 * a32 - a22 * a30
    m03 = a20 * a33 - a23 * a30
    m12 = a21 * a32 - a22 * a31
    m13 = a21 * a33 - a23 * a31
    m23 = a22 * a33 - a23 * a32
    c0 = a11 * m23 - a12 * m13 + a13 * m12
    c1 = a10 * m23 - a12 * m03 + a13 * m02
    c2 = a10 * m13 - a11 * m03 + a13 * m01
    c3 = a10 * m12 - a11 * m02 + a12 * m01
    v = a00 * c0 - a01 * c1 + a02 * c2 - a03 * c3
    return (v > 0) - (v < 0)


def circle3_minors(w1, x1, y1, z1, w2, x2, y2, z2, w3, x3, y3, z3):
    """Coefficients (t, l1, l2, l0) of the generalised circle through three
    lifted rows (w, x, y, z) with w = (x^2+y^2)/z scaled homogeneously."""
    t = det3(x1, y1, z1, x2, y2, z2, x3, y3, z3)
    l1 = -det3(w1, y1, z1, w2, y2, z2, w3, y3, z3)
    l2 = det3(w1, x1, z1, w2, x2, z2, w3, x3, z3)
    l0 = -det3(w1, x1, y1, w2, x2, y2, w3, x3, y3)
    return t, l1, l2, l0


def incident_indices(t, l1, l2, l0, rows):
    """Indices of lifted integer rows (w, x, y, z) on the circle
    t w + l1 x + l2 y + l0 z = 0."""
    out = []
    for i, (w, x, y, z) in enumerate(rows):
        if t * w + l1 * x + l2 * y + l0 * z == 0:
            out.append(i)
    return tuple(out)


def poly_mul_reduce(a, b, reduction_rows, degree):
    """(a * b) mod Phi, over the power basis.

    ``a``/``b`` are integer coefficient sequences of length ``degree``;
    ``reduction_rows[k]`` holds x^(degree+k) reduced over the basis.
    """
    conv = [0] * (2 * degree - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    conv[i + j] += ai * bj
    out = conv[:degree] + [0] * (degree - min(degree, len(conv)))
    for k in range(degree, len(conv)):
        c = conv[k]
        if c:
            row = reduction_rows[k - degree]
            for i, rv in enumerate(row):
                if rv:
                    out[i] += c * rv
    return tuple(out)

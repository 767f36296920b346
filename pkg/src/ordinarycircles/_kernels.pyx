# cython: language_level=3
"""Compiled integer kernels for the hot predicate paths.

Every function mirrors its twin in ``_kernels_py.py`` exactly. Small inputs
take a fixed-width C fast path (products bounded well inside 128 bits);
anything larger falls back to exact PyLong arithmetic, so results are always
exact regardless of magnitude.
"""

BACKEND = "compiled"

cdef extern from *:
    ctypedef long long int128 "__int128"


cdef inline int _bl(object n):
    return (<object>n).bit_length()


def det3_sign(a, b, c, d, e, f, g, h, i):
    cdef int128 A, B, C, D, E, F, G, H, I, v
    if (
        _bl(a) < 40 and _bl(b) < 40 and _bl(c) < 40
        and _bl(d) < 40 and _bl(e) < 40 and _bl(f) < 40
        and _bl(g) < 40 and _bl(h) < 40 and _bl(i) < 40
    ):
        A = a; B = b; C = c; D = d; E = e; F = f; G = g; H = h; I = i
        v = A * (E * I - F * H) - B * (D * I - F * G) + C * (D * H - E * G)
        return (v > 0) - (v < 0)
    vv = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return (vv > 0) - (vv < 0)


def det3(a, b, c, d, e, f, g, h, i):
    cdef int128 A, B, C, D, E, F, G, H, I, v
    if (
        _bl(a) < 40 and _bl(b) < 40 and _bl(c) < 40
        and _bl(d) < 40 and _bl(e) < 40 and _bl(f) < 40
        and _bl(g) < 40 and _bl(h) < 40 and _bl(i) < 40
    ):
        A = a; B = b; C = c; D = d; E = e; F = f; G = g; H = h; I = i
        v = A * (E * I - F * H) - B * (D * I - F * G) + C * (D * H - E * G)
        return int(v)
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def det4_sign(m):
    cdef int128 a00, a01, a02, a03, a10, a11, a12, a13
    cdef int128 a20, a21, a22, a23, a30, a31, a32, a33
    cdef int128 m01, m02, m03, m12, m13, m23, c0, c1, c2, c3, v
    cdef int small = 1
    cdef int k
    for k in range(16):
        if _bl(m[k]) >= 30:
            small = 0
            break
    if small:
        a00 = m[0]; a01 = m[1]; a02 = m[2]; a03 = m[3]
        a10 = m[4]; a11 = m[5]; a12 = m[6]; a13 = m[7]
        a20 = m[8]; a21 = m[9]; a22 = m[10]; a23 = m[11]
        a30 = m[12]; a31 = m[13]; a32 = m[14]; a33 = m[15]
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
    return _det4_sign_obj(m)


def _det4_sign_obj(m):
    (
        a00, a01, a02, a03,
        a10, a11, a12, a13,
        a20, a21, a22, a23,
        a30, a31, a32, a33,
    ) = m
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
    t = det3(x1, y1, z1, x2, y2, z2, x3, y3, z3)
    l1 = -det3(w1, y1, z1, w2, y2, z2, w3, y3, z3)
    l2 = det3(w1, x1, z1, w2, x2, z2, w3, x3, z3)
    l0 = -det3(w1, x1, y1, w2, x2, y2, w3, x3, y3)
    return t, l1, l2, l0


def incident_indices(t, l1, l2, l0, rows):
    """Indices of lifted integer rows (w, x, y, z) on the circle
    t w + l1 x + l2 y + l0 z = 0."""
    cdef int128 T, L1, L2, L0, W, X, Y, Z
    cdef Py_ssize_t i, n
    cdef int small = _bl(t) < 60 and _bl(l1) < 60 and _bl(l2) < 60 and _bl(l0) < 60
    out = []
    n = len(rows)
    if small:
        T = t; L1 = l1; L2 = l2; L0 = l0
        for i in range(n):
            row = rows[i]
            if (
                _bl(row[0]) < 60 and _bl(row[1]) < 60
                and _bl(row[2]) < 60 and _bl(row[3]) < 60
            ):
                W = row[0]; X = row[1]; Y = row[2]; Z = row[3]
                if T * W + L1 * X + L2 * Y + L0 * Z == 0:
                    out.append(i)
            else:
                if t * row[0] + l1 * row[1] + l2 * row[2] + l0 * row[3] == 0:
                    out.append(i)
        return tuple(out)
    for i in range(n):
        row = rows[i]
        if t * row[0] + l1 * row[1] + l2 * row[2] + l0 * row[3] == 0:
            out.append(i)
    return tuple(out)


def poly_mul_reduce(a, b, reduction_rows, Py_ssize_t degree):
    cdef Py_ssize_t i, j, k, n
    cdef int128 buf[128]
    cdef int128 av[64]
    cdef int128 bv[64]
    cdef int small = 1
    cdef int128 c
    n = degree
    if n <= 64:
        for i in range(n):
            if _bl(a[i]) >= 52 or _bl(b[i]) >= 52:
                small = 0
                break
        if small:
            for row in reduction_rows:
                for rv in row:
                    if _bl(rv) >= 8:
                        small = 0
                        break
                if not small:
                    break
    else:
        small = 0
    if small:
        for i in range(n):
            av[i] = a[i]
            bv[i] = b[i]
        for i in range(2 * n - 1):
            buf[i] = 0
        for i in range(n):
            if av[i] != 0:
                for j in range(n):
                    if bv[j] != 0:
                        buf[i + j] += av[i] * bv[j]
        # conv entries < 2^110; reduction row entries < 2^8: no overflow
        for k in range(2 * n - 2, n - 1, -1):
            c = buf[k]
            if c != 0:
                row = reduction_rows[k - n]
                for i in range(len(row)):
                    if row[i]:
                        buf[i] += c * (<int128>(<long long>row[i]))
        return tuple(int(buf[i]) for i in range(n))
    return _poly_mul_reduce_obj(a, b, reduction_rows, degree)


def _poly_mul_reduce_obj(a, b, reduction_rows, degree):
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

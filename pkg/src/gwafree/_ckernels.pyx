# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled coefficient kernels, same contract as ``_pykernels``.

Prime fields with p < 2**31 run on C ``long long`` buffers.  Rationals and
larger primes go through typed object loops.
"""
from fractions import Fraction

from libc.stdlib cimport malloc, free

BACKEND = "cython"

cdef long long SMALL_P = 2147483648


cdef list _strip(list c):
    while c and not c[len(c) - 1]:
        c.pop()
    return c


cdef inline long long _mod(long long x, long long p):
    x %= p
    if x < 0:
        x += p
    return x


cdef long long _inv_mod(long long x, long long p):
    # extended Euclid; p prime, x != 0 mod p
    cdef long long t = 0, nt = 1, r = p, nr = _mod(x, p), q, tmp
    while nr:
        q = r // nr
        tmp = t - q * nt
        t = nt
        nt = tmp
        tmp = r - q * nr
        r = nr
        nr = tmp
    return _mod(t, p)


cdef long long* _buf(list a, Py_ssize_t n, long long p) except NULL:
    cdef long long* out = <long long*> malloc(max(n, 1) * sizeof(long long))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = _mod(a[i], p) if i < len(a) else 0
    return out


cdef list _tolist(long long* buf, Py_ssize_t n):
    cdef list out = [buf[i] for i in range(n)]
    return _strip(out)


def poly_add(list a, list b, p):
    cdef Py_ssize_t i
    if len(a) < len(b):
        a, b = b, a
    cdef list out = list(a)
    if p:
        for i in range(len(b)):
            out[i] = (out[i] + b[i]) % p
    else:
        for i in range(len(b)):
            out[i] = out[i] + b[i]
    return _strip(out)


def poly_sub(list a, list b, p):
    cdef Py_ssize_t i, n = max(len(a), len(b))
    cdef list out = list(a) + [0] * (n - len(a))
    if p:
        for i in range(len(b)):
            out[i] = (out[i] - b[i]) % p
    else:
        for i in range(len(b)):
            out[i] = out[i] - b[i]
    return _strip(out)


cdef list _mul_small(list a, list b, long long p):
    cdef Py_ssize_t na = len(a), nb = len(b), i, j
    cdef long long* x = _buf(a, na, p)
    cdef long long* y = _buf(b, nb, p)
    cdef long long* z = <long long*> malloc((na + nb - 1) * sizeof(long long))
    cdef list out
    try:
        for i in range(na + nb - 1):
            z[i] = 0
        for i in range(na):
            if x[i] == 0:
                continue
            for j in range(nb):
                z[i + j] = (z[i + j] + x[i] * y[j]) % p
        out = _tolist(z, na + nb - 1)
    finally:
        free(x)
        free(y)
        free(z)
    return out


def poly_mul(list a, list b, p):
    cdef Py_ssize_t i, j
    cdef object xi
    if not a or not b:
        return []
    if p and p < SMALL_P:
        return _mul_small(a, b, p)
    cdef list out = [0] * (len(a) + len(b) - 1)
    for i in range(len(a)):
        xi = a[i]
        if not xi:
            continue
        for j in range(len(b)):
            out[i + j] += xi * b[j]
    if p:
        out = [c % p for c in out]
    return _strip(out)


cdef tuple _divmod_small(list a, list b, long long p):
    cdef Py_ssize_t na = len(a), db = len(b) - 1, k, j
    cdef long long* rem = _buf(a, na, p)
    cdef long long* den = _buf(b, db + 1, p)
    cdef long long* quo = <long long*> malloc(max(na - db, 1) * sizeof(long long))
    cdef long long inv, c
    cdef list q, r
    try:
        inv = _inv_mod(den[db], p)
        for k in range(na - db):
            quo[k] = 0
        for k in range(na - 1 - db, -1, -1):
            c = rem[k + db]
            if c == 0:
                continue
            c = (c * inv) % p
            quo[k] = c
            for j in range(db + 1):
                rem[k + j] = _mod(rem[k + j] - c * den[j], p)
        q = _tolist(quo, na - db)
        r = _tolist(rem, db)
    finally:
        free(rem)
        free(den)
        free(quo)
    return q, r


def poly_divmod(list a, list b, p):
    cdef Py_ssize_t db, k, j
    cdef object inv, c
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], _strip(list(a))
    if p and p < SMALL_P:
        return _divmod_small(a, b, p)
    cdef list rem = list(a)
    cdef list quo = [0] * (len(rem) - db)
    inv = pow(b[db], -1, p) if p else Fraction(1) / b[db]
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db]
        if not c:
            continue
        c = c * inv % p if p else c * inv
        quo[k] = c
        for j in range(db + 1):
            if p:
                rem[k + j] = (rem[k + j] - c * b[j]) % p
            else:
                rem[k + j] = rem[k + j] - c * b[j]
    return _strip(quo), _strip(rem[:db])


def taylor_shift(list a, s, p):
    cdef Py_ssize_t n = len(a), i, k
    cdef long long ss
    cdef long long* buf
    cdef list out
    if n == 0:
        return []
    if p and p < SMALL_P:
        buf = _buf(a, n, p)
        ss = _mod(s, p)
        try:
            # synthetic division repeated: in-place Taylor shift
            for i in range(n - 1):
                for k in range(n - 2, i - 1, -1):
                    buf[k] = (buf[k] + ss * buf[k + 1]) % p
            out = _tolist(buf, n)
        finally:
            free(buf)
        return out
    out = list(a)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + s * out[k + 1]
            if p:
                out[k] = out[k] % p
    return _strip(out)


def scale_var(list a, g, p):
    cdef list out = []
    cdef object w = 1
    for c in a:
        out.append(c * w % p if p else c * w)
        w = w * g % p if p else w * g
    return _strip(out)


def powmod(list base, e, list mod, p):
    cdef list result = [1]
    cdef list b = poly_divmod(base, mod, p)[1]
    while e > 0:
        if e & 1:
            result = poly_divmod(poly_mul(result, b, p), mod, p)[1]
        e >>= 1
        if e:
            b = poly_divmod(poly_mul(b, b, p), mod, p)[1]
    return poly_divmod(result, mod, p)[1]

"""Pure-Python coefficient kernels.

Coefficient lists are constant-first.  ``p == 0`` means the coefficients are
exact rationals (``Fraction`` or ``int``); ``p > 0`` means residues in
``range(p)``.  Every function returns a freshly allocated, trailing-zero
stripped list.  This module is the reference the compiled kernels are
checked against.
"""
from fractions import Fraction

BACKEND = "python"


def _strip(c):
    while c and not c[-1]:
        c.pop()
    return c


def _inverse(x, p):
    if p:
        return pow(x, -1, p)
    return Fraction(1) / x


def poly_add(a, b, p):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    if p:
        for i, c in enumerate(b):
            out[i] = (out[i] + c) % p
    else:
        for i, c in enumerate(b):
            out[i] = out[i] + c
    return _strip(out)


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = list(a) + [0] * (n - len(a))
    if p:
        for i, c in enumerate(b):
            out[i] = (out[i] - c) % p
    else:
        for i, c in enumerate(b):
            out[i] = out[i] - c
    return _strip(out)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    if p:
        out = [c % p for c in out]
    return _strip(out)


def poly_divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _strip(rem)
    inv = _inverse(b[-1], p)
    quo = [0] * (len(rem) - db)
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


def taylor_shift(a, s, p):
    """Coefficients of f(h + s) by Horner's rule."""
    out = []
    for c in reversed(a):
        # out <- out * (h + s) + c
        nxt = [0] * (len(out) + 1)
        for i, x in enumerate(out):
            nxt[i + 1] += x
            nxt[i] += x * s
        nxt[0] += c
        out = [x % p for x in nxt] if p else nxt
    return _strip(out)


def scale_var(a, g, p):
    """Coefficients of f(g * h)."""
    out = []
    w = 1
    for c in a:
        out.append(c * w % p if p else c * w)
        w = w * g % p if p else w * g
    return _strip(out)


def powmod(base, e, mod, p):
    """base**e reduced modulo ``mod``; intended for prime fields."""
    result = [1]
    b = poly_divmod(base, mod, p)[1]
    while e > 0:
        if e & 1:
            result = poly_divmod(poly_mul(result, b, p), mod, p)[1]
        e >>= 1
        if e:
            b = poly_divmod(poly_mul(b, b, p), mod, p)[1]
    return poly_divmod(result, mod, p)[1]

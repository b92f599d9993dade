"""Exact univariate polynomials over the rationals or a prime field.

Coefficients are stored constant-first with trailing zeros stripped, so the
zero polynomial is the empty tuple.  Rational coefficients are ``Fraction``;
prime-field coefficients are ``int`` residues in ``range(p)``.
"""
from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .errors import ConstantInput, DivisionByZero, FieldMismatch, NotADivisor, ParseError, ZeroPolynomial


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24 with these bases
    for b in small:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """A scalar field: ``p == 0`` is the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def char(self) -> int:
        return self.p

    def coerce(self, x) -> Fraction | int:
        if isinstance(x, str):
            return self.parse(x)
        if self.p == 0:
            if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
                raise TypeError(f"cannot use {x!r} as a rational")
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        raise TypeError(f"cannot use {x!r} as an element of GF({self.p})")

    def parse(self, text: str) -> Fraction | int:
        try:
            value = Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad scalar {text!r}") from exc
        if self.p and value.denominator % self.p == 0:
            raise ParseError(f"denominator of {text!r} vanishes mod {self.p}")
        return self.coerce(value)

    def fmt(self, x) -> str:
        return str(x)

    def inv(self, x):
        if not x:
            raise DivisionByZero("inverse of zero")
        return pow(x, -1, self.p) if self.p else 1 / Fraction(x)

    def to_json(self):
        return "Q" if self.p == 0 else {"Fp": self.p}

    @staticmethod
    def from_json(obj) -> "Field":
        if obj == "Q":
            return QQ
        if isinstance(obj, dict) and set(obj) == {"Fp"} and isinstance(obj["Fp"], int):
            try:
                return Field(obj["Fp"])
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        raise ParseError(f"bad field {obj!r}")

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


class Poly:
    """Immutable polynomial in ``h`` over a :class:`Field`."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs: Iterable = ()):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(_strip([field.coerce(c) for c in coeffs])))
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, field: Field, coeffs) -> "Poly":
        obj = cls.__new__(cls)
        object.__setattr__(obj, "field", field)
        object.__setattr__(obj, "coeffs", tuple(coeffs))
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def gen(cls, field: Field = QQ) -> "Poly":
        return cls._raw(field, (field.coerce(0), field.coerce(1)))

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, [c])

    # basic queries
    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.coerce(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        acc = self.field.coerce(0)
        x = self.field.coerce(x)
        for c in reversed(self.coeffs):
            acc = acc * x + c
            if self.field.p:
                acc %= self.field.p
        return acc

    # arithmetic
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
            return other
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._lift(other)
        return Poly._raw(self.field, kernels.poly_add(list(self.coeffs), list(other.coeffs), self.field.p))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return Poly._raw(self.field, kernels.poly_sub(list(self.coeffs), list(other.coeffs), self.field.p))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._lift(other)
        return Poly._raw(self.field, kernels.poly_mul(list(self.coeffs), list(other.coeffs), self.field.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = Poly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q, r = kernels.poly_divmod(list(self.coeffs), list(other.coeffs), self.field.p)
        return Poly._raw(self.field, q), Poly._raw(self.field, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        """Quotient ``self / other``; raises :class:`NotADivisor` if inexact."""
        q, r = divmod(self, other)
        if r:
            raise NotADivisor(f"{other} does not divide {self}")
        return q

    def divides(self, other: "Poly") -> bool:
        """True when ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    def scale(self, s) -> "Poly":
        return self * Poly.const(self.field, s)

    def monic(self) -> "Poly":
        return normalize_monic(self)[1]

    def taylor_shift(self, s) -> "Poly":
        """Return ``f(h + s)``."""
        s = self.field.coerce(s)
        return Poly._raw(self.field, kernels.taylor_shift(list(self.coeffs), s, self.field.p))

    def scale_var(self, g) -> "Poly":
        """Return ``f(g*h)``."""
        g = self.field.coerce(g)
        return Poly._raw(self.field, kernels.scale_var(list(self.coeffs), g, self.field.p))

    def derivative(self) -> "Poly":
        return Poly(self.field, [i * c for i, c in enumerate(self.coeffs)][1:])

    # comparison and hashing
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly(self.field, [other]).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.field.p, self.coeffs)))
        return self._hash

    def sort_key(self):
        """Order by degree, then coefficients from the top down."""
        return (self.degree, tuple(reversed(self.coeffs)))

    # display and serialization
    def to_str(self, var: str = "h") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            neg = self.field.p == 0 and c < 0
            mag = -c if neg else c
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            if not terms:
                terms.append(("-" if neg else "") + body)
            else:
                terms.append((" - " if neg else " + ") + body)
        return "".join(terms)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.field!r}, {self.to_str()!r})"

    def to_json(self) -> list[str]:
        return [self.field.fmt(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, field: Field, obj) -> "Poly":
        if not isinstance(obj, list) or not all(isinstance(c, (str, int)) for c in obj):
            raise ParseError(f"bad polynomial {obj!r}")
        return cls(field, [field.parse(c) if isinstance(c, str) else c for c in obj])


def poly(field: Field, coeffs: Sequence) -> Poly:
    """Shorthand constructor, constant term first."""
    return Poly(field, coeffs)


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd, with ``gcd(0, 0) = 0``."""
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")
    while b:
        a, b = b, a % b
    return a.monic() if a else a


def normalize_monic(p: Poly) -> tuple:
    """Split ``p`` as ``(u, m)`` with ``m`` monic and ``p == u*m``."""
    if p.is_zero():
        raise ZeroPolynomial("zero has no monic normalization")
    u = p.lc
    if u == 1:
        return u, p
    inv = p.field.inv(u)
    return u, p.scale(inv)


# the automorphism sigma


@dataclass(frozen=True)
class Sigma:
    """``sigma(h) = h - param`` (classical) or ``sigma(h) = param*h`` (quantum)."""

    kind: str
    param: Fraction | int
    field: Field = QQ

    def __post_init__(self):
        if self.kind not in ("classical", "quantum"):
            raise ValueError(f"unknown sigma kind {self.kind!r}")
        object.__setattr__(self, "param", self.field.coerce(self.param))
        if self.kind == "quantum" and not self.param:
            raise ValueError("quantum gamma must be nonzero")

    @classmethod
    def classical(cls, shift, field: Field = QQ) -> "Sigma":
        return cls("classical", shift, field)

    @classmethod
    def quantum(cls, gamma, field: Field = QQ) -> "Sigma":
        return cls("quantum", gamma, field)

    @property
    def is_identity(self) -> bool:
        return self.param == (0 if self.kind == "classical" else 1)

    def apply(self, f: Poly, k: int = 1) -> Poly:
        """Return ``sigma^k(f)``."""
        if k == 0 or f.is_constant():
            return f
        if self.kind == "classical":
            return f.taylor_shift(-k * self.param)
        g = self.param
        gk = pow(g, k, self.field.p) if self.field.p else Fraction(g) ** k
        return f.scale_var(gk)

    def power(self, n: int) -> "Sigma":
        if self.kind == "classical":
            return Sigma("classical", n * self.param, self.field)
        g = pow(self.param, n, self.field.p) if self.field.p else Fraction(self.param) ** n
        return Sigma("quantum", g, self.field)

    def order(self) -> float | int:
        """Order of sigma as an automorphism of F[h]; ``math.inf`` if infinite."""
        if self.is_identity:
            return 1
        if self.kind == "classical":
            return self.field.p if self.field.p else math.inf
        g = self.param
        if self.field.p:
            n, x = 1, g
            while x != 1:
                x = x * g % self.field.p
                n += 1
            return n
        return 2 if g == -1 else math.inf

    def to_json(self):
        key = "shift" if self.kind == "classical" else "gamma"
        return {self.kind: {key: self.field.fmt(self.param)}}

    def __str__(self):
        if self.kind == "classical":
            return f"h -> h - {self.param}"
        return f"h -> {self.param}*h"


def apply_sigma(p: Poly, spec, k: int = 1) -> Poly:
    """``sigma^k(p)`` where ``spec`` is a :class:`Sigma` or carries one."""
    sigma = getattr(spec, "sigma", spec)
    if p.field != sigma.field:
        raise FieldMismatch(f"{p.field!r} vs {sigma.field!r}")
    return sigma.apply(p, k)


# irreducibility


class Irreducibility(enum.Enum):
    YES = "yes"
    NO = "no"
    UNVERIFIED = "unverified"


KRONECKER_LIMIT = 100_000


def _integer_primitive(f: Poly) -> list[int]:
    den = 1
    for c in f.coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    ints = [int(c * den) for c in f.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _has_rational_root(ints: list[int]) -> bool:
    if ints[0] == 0:
        return True
    f = Poly(QQ, ints)
    for num in _divisors(ints[0]):
        for den in _divisors(ints[-1]):
            for s in (1, -1):
                if not f(Fraction(s * num, den)):
                    return True
    return False


def _irreducible_mod_p(f: Poly) -> bool:
    p = f.field.p
    f = f.monic()
    d = f.degree
    hx = [0, 1]
    x = hx
    for _ in range(d // 2):
        x = kernels.powmod(x, p, list(f.coeffs), p)
        diff = Poly._raw(f.field, kernels.poly_sub(x, hx, p))
        if gcd(f, diff).degree > 0:
            return False
    return True


def _kronecker(ints: list[int], limit: int) -> Irreducibility:
    f = Poly(QQ, ints)
    d = f.degree
    used = 0
    for e in range(2, d // 2 + 1):
        pts: list[int] = []
        x = 0
        while len(pts) < e + 1:
            for cand in (x, -x) if x else (0,):
                if len(pts) < e + 1:
                    if not f(cand):
                        return Irreducibility.NO
                    pts.append(cand)
            x += 1
        choices = [_divisors(int(f(t))) for t in pts]
        for combo in itertools.product(*choices):
            for signs in itertools.product((1, -1), repeat=e):
                used += 1
                if used > limit:
                    return Irreducibility.UNVERIFIED
                vals = [combo[0]] + [s * v for s, v in zip(signs, combo[1:])]
                g = _interpolate(pts, vals)
                if g is None or g.degree != e:
                    continue
                if g.divides(f):
                    return Irreducibility.NO
    return Irreducibility.YES


def _interpolate(xs: list[int], ys: list[int]) -> Poly | None:
    total = Poly(QQ, [])
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Poly(QQ, [yi])
        for j, xj in enumerate(xs):
            if j != i:
                term = term * Poly(QQ, [Fraction(-xj, xi - xj), Fraction(1, xi - xj)])
        total = total + term
    if any(c.denominator != 1 for c in total.coeffs):
        return None
    return total


def is_irreducible(p: Poly, limit: int = KRONECKER_LIMIT) -> Irreducibility:
    """Decide irreducibility; over the rationals degree >= 4 may be undecided."""
    if p.is_constant():
        raise ConstantInput("irreducibility of a constant is undefined")
    if p.degree == 1:
        return Irreducibility.YES
    if p.field.p:
        return Irreducibility.YES if _irreducible_mod_p(p) else Irreducibility.NO
    ints = _integer_primitive(p)
    if _has_rational_root(ints):
        return Irreducibility.NO
    if p.degree <= 3:
        return Irreducibility.YES
    # irreducible modulo a prime not dividing the leading coefficient
    for q in range(2, 200):
        if not _is_prime(q) or ints[-1] % q == 0:
            continue
        if _irreducible_mod_p(Poly(Field(q), ints)):
            return Irreducibility.YES
    return _kronecker(ints, limit)

"""Brute-force ground truth: normal forms in A and module actions by rewriting.

Nothing here uses the factor combinatorics of the other modules; elements of
A are rewritten with the four defining relations only, and module elements
are pushed through the raw ``x``/``y`` maps.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import SpecMismatch
from .gwa import GwaSpec
from .polyring import Field, Poly


class AlgebraElement:
    """``sum_d r_d X_d`` with ``X_d = x^d`` (d > 0), ``y^{-d}`` (d < 0), ``X_0 = 1``.

    Coefficients sit on the left.  Zero components are dropped.
    """

    __slots__ = ("spec", "terms")

    def __init__(self, spec: GwaSpec, terms: dict):
        self.spec = spec
        self.terms = {d: r for d, r in terms.items() if r}

    @classmethod
    def x(cls, spec, k: int = 1) -> "AlgebraElement":
        return cls(spec, {k: Poly.const(spec.field, 1)})

    @classmethod
    def y(cls, spec, k: int = 1) -> "AlgebraElement":
        return cls(spec, {-k: Poly.const(spec.field, 1)})

    @classmethod
    def ring(cls, spec, r: Poly) -> "AlgebraElement":
        return cls(spec, {0: r})

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _same(self, other)
        out = dict(self.terms)
        for d, r in other.terms.items():
            out[d] = out[d] + r if d in out else r
        return AlgebraElement(self.spec, out)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return nf_mul(self, other, self.spec)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def degrees(self) -> set[int]:
        return set(self.terms)

    def __repr__(self):
        parts = []
        for d in sorted(self.terms):
            mono = "" if d == 0 else (f"x^{d}" if d > 0 else f"y^{-d}")
            parts.append(f"({self.terms[d]}){mono}")
        return " + ".join(parts) or "0"


def _same(u: AlgebraElement, v: AlgebraElement) -> None:
    if u.spec != v.spec:
        raise SpecMismatch("elements of different algebras")


def _monomial_product(m: int, n: int, spec: GwaSpec) -> tuple[Poly, int]:
    """``X_m X_n = c X_{m+n}``; returns ``(c, m + n)``.

    ``x^m y^k`` peels ``x y = a`` from the middle, ``y^k x^n`` peels
    ``y x = sigma(a)``; each peeled factor is moved left past the remaining
    ``x``'s or ``y``'s.
    """
    sigma = spec.sigma
    a = spec.a.expand()
    c = Poly.const(spec.field, 1)
    if m >= 0 and n >= 0 or m <= 0 and n <= 0:
        return c, m + n
    if m > 0:
        # x^m y^k
        k = -n
        for i in range(1, min(m, k) + 1):
            c = c * sigma.apply(a, -(m - i))
        return c, m - k
    # y^k x^n
    k = -m
    for i in range(min(k, n)):
        c = c * sigma.apply(a, k - i)
    return c, n - k


def nf_mul(u: AlgebraElement, v: AlgebraElement, spec: GwaSpec) -> AlgebraElement:
    """Normal-form product using ``X_m s = sigma^{-m}(s) X_m`` and the monomial rule."""
    if u.spec != spec or v.spec != spec:
        raise SpecMismatch("elements of different algebras")
    out: dict[int, Poly] = {}
    for m, r in u.terms.items():
        for n, s in v.terms.items():
            c, d = _monomial_product(m, n, spec)
            term = r * spec.sigma.apply(s, -m) * c
            out[d] = out[d] + term if d in out else term
    return AlgebraElement(spec, out)


# module actions by rewriting


def _is_rank1(module) -> bool:
    return callable(module.P)


def _apply_gen(module, letter: str, v):
    sigma = module.spec.sigma
    if _is_rank1(module):
        if letter == "x":
            return sigma.apply(v, -1) * module.P()
        return sigma.apply(v, 1) * module.Q()
    if letter == "x":
        return module.P.apply([sigma.apply(e, -1) for e in v])
    return module.Q.apply([sigma.apply(e, 1) for e in v])


def _scale(module, r: Poly, v):
    if isinstance(v, Poly):
        return r * v
    return tuple(r * e for e in v)


def _add(u, v):
    if isinstance(u, Poly):
        return u + v
    return tuple(a + b for a, b in zip(u, v))


def _zero(module, v):
    if isinstance(v, Poly):
        return Poly(module.field, [])
    return tuple(Poly(module.field, []) for _ in v)


def act_via_words(module, u: AlgebraElement, v):
    """Act with ``u`` on a module element by expanding each ``r X_d`` into letters."""
    if u.spec != module.spec:
        raise SpecMismatch("element and module over different algebras")
    total = _zero(module, v)
    for d, r in u.terms.items():
        w = v
        letter = "x" if d > 0 else "y"
        for _ in range(abs(d)):
            w = _apply_gen(module, letter, w)
        total = _add(total, _scale(module, r, w))
    return total


def brute_submodule_closure(m, g: Poly, steps: int = 3) -> bool:
    """Push ``g`` through ``x``, ``y`` and ``h`` for ``steps`` rounds; all images must stay in ``<g>``."""
    if g.is_zero():
        raise ValueError("g must be nonzero")
    h = Poly.gen(m.field)
    frontier = [g]
    for _ in range(steps):
        nxt = []
        for e in frontier:
            for img in (_apply_gen(m, "x", e), _apply_gen(m, "y", e), h * e):
                if not g.divides(img):
                    return False
                nxt.append(img)
        frontier = nxt
    return True


# random sampling and the relation suite


def random_poly(rng: random.Random, field: Field, max_deg: int = 4, height: int = 10) -> Poly:
    deg = rng.randint(0, max_deg)
    coeffs = []
    for _ in range(deg + 1):
        num = rng.randint(-height, height)
        den = rng.randint(1, 3) if field.p == 0 else 1
        coeffs.append(Fraction(num, den) if field.p == 0 else num)
    return Poly(field, coeffs)


def random_element(rng: random.Random, spec: GwaSpec, max_deg: int = 4, height: int = 10, span: int = 2) -> AlgebraElement:
    terms = {}
    for d in range(-span, span + 1):
        if rng.random() < 0.6:
            terms[d] = random_poly(rng, spec.field, max_deg, height)
    return AlgebraElement(spec, terms)


def random_vector(rng: random.Random, module, max_deg: int = 4, height: int = 10):
    if _is_rank1(module):
        return random_poly(rng, module.field, max_deg, height)
    return tuple(random_poly(rng, module.field, max_deg, height) for _ in range(module.n))


@dataclass(frozen=True)
class OracleReport:
    name: str
    passed: bool
    seed: Optional[int]
    samples: int
    counterexample: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "pass": self.passed,
            "seed": self.seed,
            "samples": self.samples,
            "counterexample": self.counterexample,
        }


def relation_suite(module, rng: random.Random, samples: int = 20, seed: Optional[int] = None) -> OracleReport:
    """Defining relations as operator identities on basis and random vectors.

    Checks ``x(y v) = a v``, ``y(x v) = sigma(a) v``, ``x(sigma(r) v) = r x(v)``
    and ``y(r v) = sigma(r) y(v)``.
    """
    spec = module.spec
    sigma = spec.sigma
    a = spec.a.expand()
    sa = sigma.apply(a, 1)
    if _is_rank1(module):
        vectors = [Poly.const(spec.field, 1)]
    else:
        vectors = [tuple(Poly.const(spec.field, 1 if k == i else 0) for k in range(module.n)) for i in range(module.n)]
    vectors += [random_vector(rng, module, 8) for _ in range(samples)]
    count = 0
    for v in vectors:
        r = random_poly(rng, spec.field, 4)
        x = lambda w: _apply_gen(module, "x", w)  # noqa: E731
        y = lambda w: _apply_gen(module, "y", w)  # noqa: E731
        checks = (
            ("xy=a", x(y(v)), _scale(module, a, v)),
            ("yx=sigma(a)", y(x(v)), _scale(module, sa, v)),
            ("x sigma(r)=r x", x(_scale(module, sigma.apply(r, 1), v)), _scale(module, r, x(v))),
            ("y r=sigma(r) y", y(_scale(module, r, v)), _scale(module, sigma.apply(r, 1), y(v))),
        )
        for name, lhs, rhs in checks:
            count += 1
            if lhs != rhs:
                return OracleReport("relations", False, seed, count, f"{name} fails on v={v}, r={r}")
    return OracleReport("relations", True, seed, count)


def associativity_suite(spec: GwaSpec, rng: random.Random, samples: int = 30, seed: Optional[int] = None) -> OracleReport:
    for i in range(samples):
        u, v, w = (random_element(rng, spec) for _ in range(3))
        if (u * v) * w != u * (v * w):
            return OracleReport("associativity", False, seed, i + 1, f"{u} | {v} | {w}")
    return OracleReport("associativity", True, seed, samples)


def action_suite(module, rng: random.Random, samples: int = 50, seed: Optional[int] = None) -> OracleReport:
    """``u.(w.v) = (u w).v`` and agreement of word actions with the native maps."""
    spec = module.spec
    for i in range(samples):
        u = random_element(rng, spec, 3, 5, 2)
        w = random_element(rng, spec, 3, 5, 2)
        v = random_vector(rng, module, 3, 5)
        if act_via_words(module, u * w, v) != act_via_words(module, u, act_via_words(module, w, v)):
            return OracleReport("action", False, seed, i + 1, f"u={u}, w={w}, v={v}")
    return OracleReport("action", True, seed, samples)

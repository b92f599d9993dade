"""The algebra descriptor R(sigma, a) and the sigma-dynamics on irreducibles."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, Optional

from .errors import FieldMismatch, MathError, ParseError, ReducibleFactor
from .polyring import Field, Irreducibility, Poly, Sigma, is_irreducible, normalize_monic

if TYPE_CHECKING:
    from .factored import FactoredElement


@dataclass(frozen=True)
class GwaSpec:
    """Field, automorphism and the factored element ``a``.

    ``unverified`` lists factors whose irreducibility could not be decided
    (or was asserted by the caller); reports built on this spec should say so.
    """

    field: Field
    sigma: Sigma
    a: FactoredElement
    unverified: tuple = ()

    def __post_init__(self):
        if self.sigma.field != self.field or self.a.field != self.field:
            raise FieldMismatch("sigma, a and the spec must share one field")
        if not self.a.unit:
            raise MathError("a must be nonzero")

    @classmethod
    def make(cls, sigma: Sigma, a, asserted=()) -> "GwaSpec":
        """Validate the factors of ``a`` and build the spec.

        Factors in ``asserted`` skip the irreducibility test.
        """
        asserted = {p.monic() for p in asserted}
        flagged = []
        for z, _ in a.factors:
            if z in asserted:
                flagged.append(z)
                continue
            verdict = is_irreducible(z)
            if verdict is Irreducibility.NO:
                raise ReducibleFactor(f"{z} is reducible")
            if verdict is Irreducibility.UNVERIFIED:
                flagged.append(z)
        return cls(sigma.field, sigma, a, tuple(flagged))

    def with_sigma(self, sigma: Sigma, a) -> "GwaSpec":
        """A spec over the same field with a new automorphism and element."""
        return GwaSpec(self.field, sigma, a, self.unverified)

    @property
    def is_degenerate(self) -> bool:
        return self.sigma.is_identity

    def to_json(self) -> dict:
        flagged = set(self.unverified)
        return {
            "field": self.field.to_json(),
            "sigma": self.sigma.to_json(),
            "a": self.a.to_json(asserted=flagged),
        }

    @classmethod
    def from_json(cls, obj) -> "GwaSpec":
        from .factored import FactoredElement

        if not isinstance(obj, dict) or not {"field", "sigma", "a"} <= set(obj):
            raise ParseError("gwa spec needs field, sigma and a")
        fld = Field.from_json(obj["field"])
        sig = obj["sigma"]
        try:
            if isinstance(sig, dict) and "classical" in sig:
                sigma = Sigma.classical(fld.parse(str(sig["classical"]["shift"])), fld)
            elif isinstance(sig, dict) and "quantum" in sig:
                sigma = Sigma.quantum(fld.parse(str(sig["quantum"]["gamma"])), fld)
            else:
                raise ParseError(f"bad sigma {sig!r}")
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad sigma {sig!r}") from exc
        a, asserted = FactoredElement.from_json(fld, obj["a"])
        return cls.make(sigma, a, asserted)


def _sigma_of(spec) -> Sigma:
    return getattr(spec, "sigma", spec)


def _same_class(f: Poly, w: Poly) -> bool:
    return normalize_monic(f)[1] == w


def orbit_shift(z: Poly, w: Poly, spec) -> Optional[int]:
    """The shift ``k`` with ``sigma^k(z) ~ w``, or ``None``.

    Infinite orbits give the unique such ``k``; finite orbits give the least
    ``k >= 0``.  Every returned value is verified by substitution.
    """
    sigma = _sigma_of(spec)
    if z.field != sigma.field or w.field != sigma.field:
        raise FieldMismatch("polynomials and sigma live over different fields")
    z, w = z.monic(), w.monic()
    if z.degree != w.degree:
        return None
    if z == w:
        return 0
    if sigma.is_identity or z.degree <= 0:
        return None
    k = _candidate_shift(z, w, sigma)
    if k is None:
        return None
    return k if _same_class(sigma.apply(z, k), w) else None


def _search(z: Poly, w: Poly, sigma: Sigma, bound: int) -> Optional[int]:
    f = z
    for k in range(1, bound):
        f = sigma.apply(f, 1).monic()
        if f == w:
            return k
        if f == z:
            return None
    return None


def _candidate_shift(z: Poly, w: Poly, sigma: Sigma) -> Optional[int]:
    fld = sigma.field
    d = z.degree
    if sigma.kind == "classical":
        # roots move by +c per step, so the root sum moves by d*c
        sz, sw = -z.coeffs[d - 1], -w.coeffs[d - 1]
        if fld.p == 0:
            k = Fraction(sw - sz) / (d * sigma.param)
            return int(k) if k.denominator == 1 else None
        if d % fld.p:
            return (sw - sz) * fld.inv(d * sigma.param % fld.p) % fld.p
        return _search(z, w, sigma, fld.p)
    # quantum
    if z == Poly.gen(fld) or w == Poly.gen(fld):
        return None
    if fld.p:
        return _search(z, w, sigma, sigma.order())
    g = Fraction(sigma.param)
    if g == -1:
        return 1
    z0, w0 = z.coeffs[0], w.coeffs[0]
    if not z0 or not w0:
        return None
    # monic sigma^k(z) has constant term z0 * g**(-k*d); solve g**(k*d) = z0/w0
    target = Fraction(z0) / Fraction(w0)
    step = g**d
    if abs(target) == 1:
        return 0 if target == 1 else None
    base = step if (abs(step) > 1) == (abs(target) > 1) else 1 / step
    sign = 1 if base is step else -1
    acc, k = base, 1
    # |base| > 1 in the direction of |target|, so magnitudes grow monotonically
    while abs(acc) < abs(target) if abs(target) > 1 else abs(acc) > abs(target):
        acc *= base
        k += 1
    return sign * k if acc == target else None


def orbit_size(z: Poly, spec) -> float | int:
    """Size of the orbit of ``[z]``; ``math.inf`` when infinite."""
    sigma = _sigma_of(spec)
    z = z.monic()
    if sigma.is_identity or z.degree <= 0:
        return 1
    if sigma.kind == "classical":
        if sigma.field.p == 0:
            return math.inf
        return 1 if sigma.apply(z, 1).monic() == z else sigma.field.p
    if z == Poly.gen(sigma.field):
        return 1
    order = sigma.order()
    if order == math.inf:
        return math.inf
    for k in range(1, order + 1):
        if order % k == 0 and sigma.apply(z, k).monic() == z:
            return k
    return order


def all_orbits_infinite(spec) -> bool:
    sigma = _sigma_of(spec)
    return sigma.kind == "classical" and sigma.field.p == 0 and not sigma.is_identity


@dataclass(frozen=True)
class SimplicityCertificate:
    simple: bool
    condition: Optional[str] = None
    witness: object = None

    def to_json(self) -> dict:
        wit = self.witness
        if isinstance(wit, tuple):
            wit = [x.to_json() if isinstance(x, Poly) else x for x in wit]
        elif isinstance(wit, Poly):
            wit = wit.to_json()
        return {"simple": self.simple, "condition": self.condition, "witness": wit}


def is_simple_ring(spec: GwaSpec) -> SimplicityCertificate:
    """Decide simplicity of the ring A over F[h] with a named witness."""
    sigma = spec.sigma
    h = Poly.gen(spec.field)
    if sigma.order() != math.inf:
        return SimplicityCertificate(False, "sigma has finite order", sigma.order())
    if not all_orbits_infinite(spec):
        # quantum with gamma not a root of unity: <h> is a sigma-ideal
        return SimplicityCertificate(False, "proper sigma-stable ideal", h)
    factors = [z for z, _ in spec.a.factors]
    for z in factors:
        for w in factors:
            k = orbit_shift(z, w, spec)
            if k is not None and k >= 1:
                return SimplicityCertificate(False, "gcd(a, sigma^n(a)) is not a unit", (z, w, k))
    return SimplicityCertificate(True)


def center_report(spec: GwaSpec) -> dict:
    """Describe the sigma-invariants of R and whether finite length is possible."""
    sigma = spec.sigma
    fld = spec.field
    h = Poly.gen(fld)
    if sigma.is_identity:
        invariants, generator, witness = "F[h]", h, h
    elif sigma.kind == "classical" and fld.p == 0:
        invariants, generator, witness = "F", None, None
    elif sigma.kind == "classical":
        generator = h**fld.p - h
        invariants, witness = f"F_{fld.p}[{generator}]", generator
    else:
        order = sigma.order()
        if order == math.inf:
            invariants, generator = "F", None
        else:
            generator = h**order
            invariants = f"F[{generator}]"
        # sigma(h) is a unit multiple of h
        witness = h
    return {
        "sigma_invariants": invariants,
        "invariant_generator": generator.to_json() if generator is not None else None,
        "center_meets_R_in_field": generator is None,
        "finite_length_possible": witness is None,
        "finite_orbit_witness": witness.to_json() if witness is not None else None,
        "degenerate_sigma": sigma.is_identity,
    }

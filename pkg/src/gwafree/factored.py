"""Factored elements and the orbit combinatorics of their irreducible factors.

A factored element is a unit times a multiset of monic irreducibles.  Inside a
single sigma-orbit, a multiset is the same thing as an integer profile: the
multiplicity of ``sigma^k(rep)`` as a function of ``k``.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import FactorOutsideOrbit, NotADivisor, NotComparable, ParseError
from .gwa import orbit_shift, orbit_size
from .polyring import Field, Poly, normalize_monic


class FactoredElement:
    """``unit * prod(z**m for z, m in factors)`` with monic, distinct ``z``."""

    __slots__ = ("field", "unit", "factors", "_expanded")

    def __init__(self, field: Field, unit, factors: Iterable = ()):
        unit = field.coerce(unit)
        merged: dict[Poly, int] = {}
        for f, m in factors:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m == 0:
                continue
            if f.field != field:
                raise ValueError("factor over a different field")
            u, z = normalize_monic(f)
            if u != 1:
                unit = unit * (field.coerce(u) ** m)
                if field.p:
                    unit %= field.p
            if z.degree == 0:
                continue
            merged[z] = merged.get(z, 0) + m
        self.field = field
        self.unit = unit
        self.factors = tuple(sorted(merged.items(), key=lambda t: t[0].sort_key()))
        self._expanded = None

    @classmethod
    def one(cls, field: Field) -> "FactoredElement":
        return cls(field, 1)

    @classmethod
    def of(cls, *polys: Poly, unit=1) -> "FactoredElement":
        """Factored element from a list of (possibly repeated) irreducibles."""
        fld = polys[0].field
        return cls(fld, unit, [(p, 1) for p in polys])

    # multiset views
    def counter(self) -> Counter:
        return Counter(dict(self.factors))

    def mult(self, z: Poly) -> int:
        z = z.monic()
        for f, m in self.factors:
            if f == z:
                return m
        return 0

    def irr(self) -> list[Poly]:
        """Irreducible factors listed with multiplicity."""
        return [f for f, m in self.factors for _ in range(m)]

    @property
    def n_factors(self) -> int:
        """Number of irreducible factors counted with multiplicity."""
        return sum(m for _, m in self.factors)

    @property
    def degree(self) -> int:
        return sum(f.degree * m for f, m in self.factors)

    def is_unit(self) -> bool:
        return not self.factors

    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    def expand(self) -> Poly:
        if self._expanded is None:
            out = Poly.const(self.field, self.unit)
            for f, m in self.factors:
                out = out * f**m
            self._expanded = out
        return self._expanded

    # arithmetic
    def __mul__(self, other: "FactoredElement") -> "FactoredElement":
        return FactoredElement(self.field, self.unit * other.unit, list(self.factors) + list(other.factors))

    def __pow__(self, e: int) -> "FactoredElement":
        return FactoredElement(self.field, self.unit**e, [(f, m * e) for f, m in self.factors])

    def scale(self, u) -> "FactoredElement":
        return FactoredElement(self.field, self.unit * self.field.coerce(u), self.factors)

    def monic(self) -> "FactoredElement":
        return FactoredElement(self.field, 1, self.factors)

    def divides(self, other: "FactoredElement") -> bool:
        """Multiset containment (units are ignored)."""
        mine, theirs = self.counter(), other.counter()
        return all(theirs[z] >= m for z, m in mine.items())

    def exact_div(self, other: "FactoredElement") -> "FactoredElement":
        if not other.divides(self):
            raise NotADivisor(f"{other} does not divide {self}")
        rest = self.counter()
        rest.subtract(other.counter())
        return FactoredElement(self.field, self.unit * self.field.inv(other.unit), rest.items())

    def gcd(self, other: "FactoredElement") -> "FactoredElement":
        return FactoredElement(self.field, 1, (self.counter() & other.counter()).items())

    def sigma(self, spec, k: int = 1) -> "FactoredElement":
        """``sigma^k`` applied factorwise; leading coefficients move to the unit."""
        s = getattr(spec, "sigma", spec)
        return FactoredElement(self.field, self.unit, [(s.apply(f, k), m) for f, m in self.factors])

    def associate(self, other: "FactoredElement") -> bool:
        return self.factors == other.factors

    def __eq__(self, other):
        if not isinstance(other, FactoredElement):
            return NotImplemented
        return self.field == other.field and self.unit == other.unit and self.factors == other.factors

    def __hash__(self):
        return hash((self.field.p, self.unit, self.factors))

    def __str__(self):
        parts = []
        if self.unit != 1 or not self.factors:
            parts.append(str(self.unit))
        for f, m in self.factors:
            body = f"({f})" if f.degree > 0 and len(f.coeffs) > 1 else str(f)
            parts.append(body if m == 1 else f"{body}^{m}")
        return "*".join(parts)

    def __repr__(self):
        return f"FactoredElement({self})"

    def to_json(self, asserted=()) -> dict:
        out = []
        for f, m in self.factors:
            entry = {"poly": f.to_json(), "mult": m}
            if f in asserted:
                entry["asserted"] = True
            out.append(entry)
        return {"unit": self.field.fmt(self.unit), "factors": out}

    @classmethod
    def from_json(cls, field: Field, obj) -> tuple:
        """Parse ``{"unit", "factors"}``; returns the element and asserted factors."""
        if not isinstance(obj, dict) or "factors" not in obj:
            raise ParseError(f"bad factored element {obj!r}")
        unit = field.parse(str(obj.get("unit", "1")))
        if not unit:
            raise ParseError("unit must be nonzero")
        factors, asserted = [], []
        for entry in obj["factors"]:
            if not isinstance(entry, dict) or "poly" not in entry:
                raise ParseError(f"bad factor {entry!r}")
            f = Poly.from_json(field, entry["poly"])
            mult = entry.get("mult", 1)
            if not isinstance(mult, int) or mult < 1 or f.degree < 1:
                raise ParseError(f"bad factor {entry!r}")
            factors.append((f, mult))
            if entry.get("asserted"):
                asserted.append(f)
        return cls(field, unit, factors), asserted


# orbits


def _leftmost(members: list[Poly], spec) -> Poly:
    best = members[0]
    for z in members[1:]:
        k = orbit_shift(z, best, spec)
        if k is not None and k > 0:
            best = z
    return best


def orbit_rep(members: Iterable[Poly], spec) -> Poly:
    """Representative of the orbit containing ``members``.

    Infinite orbits use the leftmost member (the one every other member is a
    nonnegative shift of); finite orbits use the least member by sort key.
    """
    members = sorted({m.monic() for m in members}, key=Poly.sort_key)
    if orbit_size(members[0], spec) == math.inf:
        return _leftmost(members, spec)
    return members[0]


def group_by_orbit(polys: Iterable[Poly], spec) -> list[list[Poly]]:
    """Partition distinct monic irreducibles into orbit classes."""
    groups: list[list[Poly]] = []
    for z in sorted({p.monic() for p in polys}, key=Poly.sort_key):
        for g in groups:
            if orbit_shift(g[0], z, spec) is not None:
                g.append(z)
                break
        else:
            groups.append([z])
    return groups


def orbit_partition(f: FactoredElement, spec) -> list[tuple[Poly, FactoredElement]]:
    """Split ``f`` (without its unit) into per-orbit parts keyed by representative."""
    parts = []
    mult = dict(f.factors)
    for group in group_by_orbit(mult, spec):
        rep = orbit_rep(group, spec)
        parts.append((rep, FactoredElement(f.field, 1, [(z, mult[z]) for z in group])))
    parts.sort(key=lambda t: t[0].sort_key())
    return parts


def restrict(f: FactoredElement, rep: Poly, spec) -> FactoredElement:
    """The part of ``f`` lying in the orbit of ``rep`` (unit dropped)."""
    return FactoredElement(f.field, 1, [(z, m) for z, m in f.factors if orbit_shift(rep, z, spec) is not None])


@dataclass(frozen=True)
class Profile:
    """Multiplicity of ``sigma^k(rep)`` as a function of ``k``.

    ``period`` is ``None`` for an infinite orbit; otherwise keys live in
    ``range(period)``.  Only nonzero values are stored.
    """

    rep: Poly
    period: Optional[int]
    values: tuple

    @classmethod
    def make(cls, rep: Poly, period: Optional[int], values: dict) -> "Profile":
        if period is not None:
            folded: Counter = Counter()
            for k, v in values.items():
                folded[k % period] += v
            values = folded
        return cls(rep, period, tuple(sorted((k, v) for k, v in values.items() if v)))

    @property
    def kind(self):
        return "line" if self.period is None else ("cycle", self.period)

    def as_dict(self) -> dict:
        return dict(self.values)

    def __call__(self, k: int) -> int:
        if self.period is not None:
            k %= self.period
        return self.as_dict().get(k, 0)

    def vector(self) -> list[int]:
        """Explicit period vector (cycles only)."""
        if self.period is None:
            raise ValueError("line profiles have no period vector")
        d = self.as_dict()
        return [d.get(k, 0) for k in range(self.period)]

    def shifted(self, j: int) -> "Profile":
        """Translate the graph ``j`` steps to the right."""
        return Profile.make(self.rep, self.period, {k + j: v for k, v in self.values})

    def to_json(self) -> dict:
        kind = "line" if self.period is None else {"cycle": self.period}
        return {"rep": self.rep.to_json(), "kind": kind, "values": {str(k): v for k, v in self.values}}


def profile_of(f: FactoredElement, rep: Poly, spec) -> Profile:
    size = orbit_size(rep, spec)
    period = None if size == math.inf else int(size)
    values: dict[int, int] = {}
    for z, m in f.factors:
        k = orbit_shift(rep, z, spec)
        if k is None:
            raise FactorOutsideOrbit(f"{z} is not in the orbit of {rep}")
        values[k] = values.get(k, 0) + m
    return Profile.make(rep.monic(), period, values)


def from_profile(profile: Profile, spec) -> FactoredElement:
    """Monic-factor product ``prod sigma^k(rep)**v`` (the unit is whatever sigma produces)."""
    sigma = getattr(spec, "sigma", spec)
    return FactoredElement(profile.rep.field, 1, [(sigma.apply(profile.rep, k), v) for k, v in profile.values])


def delta_nabla(profile: Profile) -> tuple[dict, dict]:
    """Forward and backward differences as sparse signed maps."""
    f = profile
    keys = set()
    for k, _ in f.values:
        keys.update((k - 1, k, k + 1))
    if f.period is not None:
        keys = {k % f.period for k in keys}
    delta = {k: f(k + 1) - f(k) for k in sorted(keys)}
    nabla = {k: f(k) - f(k - 1) for k in sorted(keys)}
    return {k: v for k, v in delta.items() if v}, {k: v for k, v in nabla.items() if v}


def positive_part(m: dict, sign: int = 1) -> dict:
    """``max(0, sign*m)`` restricted to its support."""
    return {k: sign * v for k, v in m.items() if sign * v > 0}


@dataclass(frozen=True)
class Chain:
    """The chain product ``prod_{i=0}^{n} sigma^i(start)``."""

    start: Poly
    end: Poly
    shift: int
    basic: bool
    element: FactoredElement

    def to_json(self) -> dict:
        return {"chain": {"from": self.start.to_json(), "to": self.end.to_json(), "n": self.shift, "basic": self.basic}}


def chain_product(q0: Poly, p0: Poly, spec) -> Chain:
    n = orbit_shift(q0, p0, spec)
    if n is None or n < 0:
        raise NotComparable(f"{p0} is not a nonnegative shift of {q0}")
    sigma = getattr(spec, "sigma", spec)
    elem = FactoredElement(q0.field, 1, [(sigma.apply(q0, i), 1) for i in range(n + 1)])
    size = orbit_size(q0, spec)
    return Chain(q0.monic(), p0.monic(), n, n < size - 1, elem)


def full_orbit_product(z: Poly, spec) -> FactoredElement:
    """``prod_{i=1}^{l} sigma^i(z)`` for a finite orbit of size ``l``."""
    size = orbit_size(z, spec)
    if size == math.inf:
        raise ValueError(f"the orbit of {z} is infinite")
    sigma = getattr(spec, "sigma", spec)
    return FactoredElement(z.field, 1, [(sigma.apply(z, i), 1) for i in range(1, int(size) + 1)])


@dataclass(frozen=True)
class OmegaPair:
    z: Poly
    w: Poly
    shift: int
    count: int

    def to_json(self) -> dict:
        return {"q_factor": self.z.to_json(), "p_factor": self.w.to_json(), "shift": self.shift, "count": self.count}


def omega_pairs(p: FactoredElement, q: FactoredElement, spec) -> list[OmegaPair]:
    """Pairs ``(z, w)`` in Irr(q) x Irr(p) with ``sigma^n(z) ~ w`` for some ``n >= 0``."""
    out = []
    for z, mz in q.factors:
        for w, mw in p.factors:
            n = orbit_shift(z, w, spec)
            if n is not None and n >= 0:
                out.append(OmegaPair(z, w, n, mz * mw))
    return out


def omega_size(pairs: list[OmegaPair]) -> int:
    return sum(pr.count for pr in pairs)


# decomposition of a generator into chains and full orbits


def _runs(support: list[int]) -> list[tuple[int, int]]:
    runs = []
    for k in sorted(support):
        if runs and k == runs[-1][1] + 1:
            runs[-1] = (runs[-1][0], k)
        else:
            runs.append((k, k))
    return runs


def _circular_runs(support: set[int], period: int) -> list[tuple[int, int]]:
    """Maximal circular intervals ``[a, a + len - 1]`` of a proper subset of Z_period."""
    runs = []
    for k in sorted(support):
        if (k - 1) % period in support:
            continue
        length = 1
        while (k + length) % period in support:
            length += 1
        runs.append((k, k + length - 1))
    return runs


def decompose(g: FactoredElement, spec) -> list[tuple]:
    """Superlevel-set decomposition of ``g`` per orbit.

    Returns entries ``("chain", Chain)`` and ``("orbit", rep, power)``; the
    product of all entries is associate to ``g``.
    """
    sigma = getattr(spec, "sigma", spec)
    out: list[tuple] = []
    for rep, part in orbit_partition(g, spec):
        prof = profile_of(part, rep, spec)
        vals = prof.as_dict()
        if prof.period is not None:
            low = min(prof.vector())
            if low:
                out.append(("orbit", rep, low))
                vals = {k: v - low for k, v in vals.items() if v > low}
        top = max(vals.values(), default=0)
        for level in range(1, top + 1):
            support = {k for k, v in vals.items() if v >= level}
            runs = _runs(list(support)) if prof.period is None else _circular_runs(support, prof.period)
            for lo, hi in runs:
                start, end = sigma.apply(rep, lo).monic(), sigma.apply(rep, hi).monic()
                out.append(("chain", chain_product(start, end, spec)))
    return out

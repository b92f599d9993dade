"""Rank-one modules V_p: action, submodules, composition series, socle, homs.

``V_p`` is ``R = F[h]`` with ``x.r = sigma^{-1}(r) p`` and ``y.r = sigma(r) q``
where ``q = sigma(a/p)``.  Its submodules are the ideals ``<g>`` that are
closed under both maps, and most questions reduce to multiset combinatorics
of the irreducible factors of ``p``, ``q`` and ``g`` inside sigma-orbits.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import InfiniteLength, NoMaximalSubmodule, NotADivisor, SpecMismatch, ZeroUnit
from .factored import (
    FactoredElement,
    chain_product,
    decompose,
    delta_nabla,
    full_orbit_product,
    group_by_orbit,
    omega_pairs,
    omega_size,
    orbit_partition,
    orbit_rep,
    profile_of,
    restrict,
)
from .gwa import GwaSpec, all_orbits_infinite, orbit_shift, orbit_size
from .polyring import Field, Poly
from .weight import WeightData, chain_weight_data


@dataclass(frozen=True)
class Rank1Module:
    spec: GwaSpec
    p: FactoredElement
    q: FactoredElement

    @property
    def field(self) -> Field:
        return self.spec.field

    def P(self) -> Poly:
        return self.p.expand()

    def Q(self) -> Poly:
        return self.q.expand()

    def label(self) -> str:
        return f"V_{{{self.p}}}"


def make_vp(spec: GwaSpec, p: Union[FactoredElement, Sequence[Poly], None] = None, unit=1) -> Rank1Module:
    """Build ``V_p`` for a divisor ``p`` of ``a``.

    ``p`` is a factored element, or a list of irreducible factors of ``a``
    (repeats allowed) combined with ``unit``.
    """
    if p is None:
        p = FactoredElement(spec.field, unit)
    elif not isinstance(p, FactoredElement):
        p = FactoredElement(spec.field, unit, [(f, 1) for f in p])
    if not p.divides(spec.a):
        raise NotADivisor(f"{p} does not divide a = {spec.a}")
    q = spec.a.exact_div(p).sigma(spec, 1)
    return Rank1Module(spec, p, q)


def whittaker_module(spec: GwaSpec, zeta) -> Rank1Module:
    """``V_{zeta^{-1} a}``, whose ``q`` is the constant ``zeta``."""
    zeta = spec.field.coerce(zeta)
    if not zeta:
        raise ZeroUnit("zeta must be nonzero")
    return make_vp(spec, spec.a.scale(spec.field.inv(zeta)))


# the action

def act(m: Rank1Module, gen, v: Poly) -> Poly:
    """Apply ``x``, ``y``, a ring element, or a word to ``v``.

    A word is a string over ``x``, ``y``, ``h`` (or a sequence mixing those
    letters with ring elements) read as an algebra product, so the rightmost
    letter acts first: ``act(m, "xy", v) == act(m, "x", act(m, "y", v))``.
    """
    sigma = m.spec.sigma
    if isinstance(gen, Poly):
        return gen * v
    if gen == "x":
        return sigma.apply(v, -1) * m.P()
    if gen == "y":
        return sigma.apply(v, 1) * m.Q()
    if gen == "h":
        return Poly.gen(m.field) * v
    if isinstance(gen, (str, list, tuple)):
        for letter in reversed(list(gen)):
            v = act(m, letter, v)
        return v
    raise ValueError(f"unknown generator {gen!r}")


# submodule tests


def is_submodule(m: Rank1Module, g, method: str = "divisibility") -> bool:
    """Is the ideal ``<g>`` an A-submodule of ``m``?

    ``multiset`` and ``profile`` need ``g`` factored; ``divisibility`` works on
    the dense polynomial and serves as the oracle for the other two.
    """
    if method == "divisibility":
        G = g.expand() if isinstance(g, FactoredElement) else g
        if G.is_zero():
            raise ValueError("g must be nonzero")
        sigma = m.spec.sigma
        return G.divides(sigma.apply(G, -1) * m.P()) and G.divides(sigma.apply(G, 1) * m.Q())
    if not isinstance(g, FactoredElement):
        raise TypeError(f"method {method!r} needs a factored generator")
    if method == "multiset":
        cg = g.counter()
        left = g.sigma(m.spec, -1).counter() + m.p.counter()
        right = g.sigma(m.spec, 1).counter() + m.q.counter()
        return all(left[z] >= k and right[z] >= k for z, k in cg.items())
    if method == "profile":
        for rep, part in orbit_partition(g, m.spec):
            gbar = profile_of(part, rep, m.spec)
            pbar = profile_of(restrict(m.p, rep, m.spec), rep, m.spec)
            qbar = profile_of(restrict(m.q, rep, m.spec), rep, m.spec)
            delta, nabla = delta_nabla(gbar)
            if any(pbar(k) < -d for k, d in delta.items()):
                return False
            if any(qbar(k) < n for k, n in nabla.items()):
                return False
        return True
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class SubmoduleCert:
    """A submodule ``<generator>`` with its decomposition and induced parameters."""

    generator: FactoredElement
    kind: str
    decomposition: tuple
    induced_p: FactoredElement
    induced_q: FactoredElement
    case: Optional[str] = None
    quotient: Optional[WeightData] = None

    def to_json(self) -> dict:
        out = {
            "generator": str(self.generator),
            "kind": self.kind,
            "induced_p": str(self.induced_p),
            "induced_q": str(self.induced_q),
            "decomposition": [_decomp_json(d) for d in self.decomposition],
        }
        if self.case:
            out["case"] = self.case
        if self.quotient is not None:
            out["quotient"] = self.quotient.to_json()
        return out


def _decomp_json(entry) -> dict:
    if entry[0] == "chain":
        return entry[1].to_json()
    return {"orbit": {"rep": entry[1].to_json(), "power": entry[2]}}


@dataclass(frozen=True)
class OrbitFamily:
    """Symbolic stand-in for the infinitely many full finite-orbit maximal submodules."""

    description: str
    kind: str = "full-finite-orbit-family"

    def to_json(self) -> dict:
        return {"kind": self.kind, "description": self.description}


def certify(m: Rank1Module, g: FactoredElement, kind: str = "general", case=None, quotient=None) -> SubmoduleCert:
    """Induced parameters of ``<g>``; raises :class:`NotADivisor` if ``<g>`` is not a submodule."""
    g = g.monic()
    p2 = (g.sigma(m.spec, -1) * m.p).exact_div(g)
    q2 = (g.sigma(m.spec, 1) * m.q).exact_div(g)
    return SubmoduleCert(g, kind, tuple(decompose(g, m.spec)), p2, q2, case, quotient)


def submodule(m: Rank1Module, g: FactoredElement) -> Rank1Module:
    """``<g>`` as a module ``V_{p'}`` via ``r -> r*g``."""
    cert = certify(m, g)
    return Rank1Module(m.spec, cert.induced_p, cert.induced_q)


# orbit bookkeeping shared by the structure routines


@dataclass
class _Orbit:
    rep: Poly
    size: float
    p_pos: Counter
    q_pos: Counter

    def at(self, spec, k: int) -> Poly:
        return spec.sigma.apply(self.rep, k).monic()


def _orbits(m: Rank1Module, extra: Iterable[Poly] = ()) -> list[_Orbit]:
    spec = m.spec
    pm, qm = dict(m.p.factors), dict(m.q.factors)
    out = []
    for group in group_by_orbit(list(pm) + list(qm) + list(extra), spec):
        rep = orbit_rep(group, spec)
        size = orbit_size(rep, spec)
        pp, qp = Counter(), Counter()
        for z in group:
            k = orbit_shift(rep, z, spec)
            if z in pm:
                pp[k] += pm[z]
            if z in qm:
                qp[k] += qm[z]
        out.append(_Orbit(rep, size, pp, qp))
    out.sort(key=lambda o: o.rep.sort_key())
    return out


def orbit_positions(m: Rank1Module) -> list[tuple[Poly, tuple, tuple]]:
    """``(rep, p positions, q positions)`` per orbit, positions as shifts of ``rep``."""
    return [(o.rep, tuple(sorted(o.p_pos.elements())), tuple(sorted(o.q_pos.elements()))) for o in _orbits(m)]


def _basic_maximals(m: Rank1Module, orbits: list[_Orbit]) -> list[tuple]:
    """Minimal pairs ``(orbit, i, n)``: a chain from q-position ``i`` of length ``n``.

    Sorted by orbit, then q-position, then length.
    """
    out = []
    for oi, orb in enumerate(orbits):
        finite = orb.size != math.inf
        for i in sorted(orb.q_pos):
            for j in sorted(orb.p_pos):
                n = (j - i) % orb.size if finite else j - i
                if n < 0 or (finite and n >= orb.size - 1):
                    continue
                if _minimal(orb, i, n):
                    out.append((oi, i, n))
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return out


def _minimal(orb: _Orbit, start: int, n: int) -> bool:
    """No q-position ``s+i`` and p-position ``s+j`` with ``0<=i<=j<=n``, ``j-i<n``."""
    def norm(k):
        return k % orb.size if orb.size != math.inf else k

    qs = [i for i in range(n + 1) if norm(start + i) in orb.q_pos]
    ps = [j for j in range(n + 1) if norm(start + j) in orb.p_pos]
    return not any(i <= j and j - i < n for i in qs for j in ps)


def _chain_cert(m: Rank1Module, orb: _Orbit, i: int, n: int) -> SubmoduleCert:
    start = orb.at(m.spec, i)
    ch = chain_product(start, orb.at(m.spec, i + n), m.spec)
    return certify(m, ch.element, "basic", quotient=chain_weight_data(m.spec, start, n))


def maximal_submodules(m: Rank1Module, probes: Iterable[Poly] = ()) -> list:
    """All maximal submodules, concrete ones first.

    Basic chains come first (in composition-series order), then full
    finite-orbit products for the orbits meeting ``p``, ``q``, ``h`` (quantum
    case) or ``probes``.  When sigma has finite order, a trailing
    :class:`OrbitFamily` stands for the remaining finite orbits.  A simple
    module gives an empty list.
    """
    spec = m.spec
    extra = list(probes)
    if spec.sigma.kind == "quantum":
        extra.append(Poly.gen(spec.field))
    orbits = _orbits(m, extra)
    out: list = [_chain_cert(m, orbits[oi], i, n) for oi, i, n in _basic_maximals(m, orbits)]
    for orb in orbits:
        if orb.size == math.inf:
            continue
        ell = int(orb.size)
        pcls, qcls = set(orb.p_pos), set(orb.q_pos)
        cases = []
        if not pcls:
            cases.append("i")
        if not qcls:
            cases.append("ii")
        if len(pcls) == 1 and len(qcls) == 1:
            (j,), (i,) = pcls, qcls
            if (j - i) % ell == ell - 1:
                cases.append("iii")
        if cases:
            g = full_orbit_product(orb.rep, spec)
            quotient = chain_weight_data(spec, orb.at(spec, 1), ell - 1)
            out.append(certify(m, g, "full-finite-orbit", "+".join(cases), quotient))
    if spec.sigma.order() != math.inf:
        out.append(OrbitFamily("<full orbit product> for every finite orbit disjoint from Irr(p) and Irr(q)"))
    return out


@dataclass(frozen=True)
class SimplicityResult:
    simple: bool
    reason: Optional[str] = None
    witness: object = None

    def __bool__(self):
        return self.simple

    def to_json(self):
        w = self.witness
        if isinstance(w, Poly):
            w = w.to_json()
        elif w is not None and hasattr(w, "to_json"):
            w = w.to_json()
        return {"simple": self.simple, "reason": self.reason, "witness": w}


def is_simple(m: Rank1Module) -> SimplicityResult:
    spec = m.spec
    if not all_orbits_infinite(spec):
        h = Poly.gen(spec.field)
        return SimplicityResult(False, "finite orbit", h)
    pairs = omega_pairs(m.p, m.q, spec)
    if pairs:
        best = min(pairs, key=lambda pr: (pr.shift, pr.z.sort_key(), pr.w.sort_key()))
        return SimplicityResult(False, "omega pair", best)
    return SimplicityResult(True)


# composition series and socle


@dataclass(frozen=True)
class SeriesTerm:
    """One term ``<absolute>`` of a composition series, isomorphic to ``V_p``."""

    p: FactoredElement
    q: FactoredElement
    absolute: FactoredElement
    step: Optional[SubmoduleCert] = None  # the next, smaller term relative to this one

    @property
    def quotient(self) -> Optional[WeightData]:
        return self.step.quotient if self.step else None

    def to_json(self) -> dict:
        out = {"p": str(self.p), "q": str(self.q), "absolute_generator": str(self.absolute)}
        if self.step is not None:
            out["next_generator"] = str(self.step.generator)
            out["quotient"] = self.step.quotient.to_json()
        return out


def composition_series(m: Rank1Module) -> list[SeriesTerm]:
    """Deterministic composition series; the last term is the socle.

    At each step the chosen minimal pair has the leftmost q-factor (orbits in
    representative order), then the shortest chain.
    """
    if not all_orbits_infinite(m.spec):
        raise InfiniteLength("some sigma-orbit is finite, so V_p has infinite length")
    terms = []
    cur = m
    absolute = FactoredElement.one(m.field)
    while True:
        orbits = _orbits(cur)
        pairs = _basic_maximals(cur, orbits)
        if not pairs:
            terms.append(SeriesTerm(cur.p, cur.q, absolute))
            return terms
        oi, i, n = pairs[0]
        cert = _chain_cert(cur, orbits[oi], i, n)
        terms.append(SeriesTerm(cur.p, cur.q, absolute, cert))
        absolute = absolute * cert.generator
        cur = Rank1Module(m.spec, cert.induced_p, cert.induced_q)


def length(m: Rank1Module) -> Union[int, float]:
    if not all_orbits_infinite(m.spec):
        return math.inf
    return len(composition_series(m))


@dataclass(frozen=True)
class ColorSwitch:
    """Per-orbit positions before and after the socle rearrangement."""

    rep: Poly
    p_before: tuple
    q_before: tuple
    p_after: tuple
    q_after: tuple


def color_switch(m: Rank1Module) -> list[ColorSwitch]:
    """Rearrange factor positions orbit by orbit to read off the socle.

    Shift the q-positions one step left, sort everything, give the lowest
    ``deg_p`` slots to p, and shift the rest back.
    """
    if not all_orbits_infinite(m.spec):
        raise InfiniteLength("socle is only defined in finite length")
    out = []
    for orb in _orbits(m):
        pp = sorted(orb.p_pos.elements())
        qp = sorted(orb.q_pos.elements())
        merged = sorted(pp + [k - 1 for k in qp])
        cut = len(pp)
        out.append(ColorSwitch(orb.rep, tuple(pp), tuple(qp), tuple(merged[:cut]), tuple(k + 1 for k in merged[cut:])))
    return out


def socle(m: Rank1Module, method: str = "color_switch") -> FactoredElement:
    """Parameter ``p_hat`` with ``soc(V_p) = V_{p_hat}``."""
    if method == "iterate":
        return composition_series(m)[-1].p
    if method != "color_switch":
        raise ValueError(f"unknown method {method!r}")
    sigma = m.spec.sigma
    factors = []
    for sw in color_switch(m):
        factors.extend((sigma.apply(sw.rep, k), 1) for k in sw.p_after)
    return FactoredElement(m.field, m.p.unit, factors)


# homomorphisms


def _nullspace(rows: list[list], fld: Field) -> list[list]:
    """Basis of the right nullspace of a matrix over ``fld`` (exact RREF)."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = fld.inv(mat[r][c])
        mat[r] = [fld.coerce(x * inv) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [fld.coerce(x - f * y) for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [fld.coerce(0)] * ncols
        vec[fc] = fld.coerce(1)
        for i, pc in enumerate(pivots):
            vec[pc] = fld.coerce(-mat[i][fc])
        basis.append(vec)
    return basis


@dataclass(frozen=True)
class HomResult:
    basis: tuple
    isomorphic: bool
    max_deg: int
    checks: tuple

    def to_json(self) -> dict:
        return {
            "basis": [v.to_json() for v in self.basis],
            "isomorphic": self.isomorphic,
            "max_deg": self.max_deg,
            "checks": list(self.checks),
            "complete_up_to_degree": self.max_deg,
        }


def hom_basis(src: Rank1Module, dst: Rank1Module, max_deg: Optional[int] = None) -> HomResult:
    """Homomorphisms ``r -> r*v`` from ``src`` to ``dst`` with ``deg v <= max_deg``.

    ``v`` must satisfy ``sigma^{-1}(v) p_dst = p_src v``; the space is found by
    an exact linear solve and every basis vector is cross-checked as a
    submodule generator of ``dst`` with induced parameter ``p_src``.
    """
    if src.spec != dst.spec:
        raise SpecMismatch("modules over different algebras")
    spec = src.spec
    fld = spec.field
    if max_deg is None:
        max_deg = spec.a.degree + 4
    sigma = spec.sigma
    Ps, Pd = src.P(), dst.P()
    h = Poly.gen(fld)
    cols = []
    for i in range(max_deg + 1):
        mono = h**i
        cols.append(sigma.apply(mono, -1) * Pd - Ps * mono)
    height = max((c.degree for c in cols), default=-1) + 1
    rows = [[c.coeffs[r] if r < len(c.coeffs) else fld.coerce(0) for c in cols] for r in range(height)]
    if not rows:
        rows = [[fld.coerce(0)] * (max_deg + 1)]
    basis = []
    for vec in _nullspace(rows, fld):
        basis.append(Poly(fld, vec).monic())
    basis.sort(key=Poly.sort_key)
    checks = []
    for v in basis:
        ok_sub = is_submodule(dst, v, "divisibility")
        induced = (sigma.apply(v, -1) * Pd).exact_div(v)
        checks.append({"v": v.to_json(), "submodule": ok_sub, "induced_matches_src": induced == Ps, "injective": True})
    iso = Ps == Pd
    return HomResult(tuple(basis), iso, max_deg, tuple(checks))


def unit_twist(m: Rank1Module, u) -> tuple[Rank1Module, dict]:
    """``V_{u p}`` together with the twist ``x -> u x``, ``y -> y u^{-1}``."""
    u = m.field.coerce(u)
    if not u:
        raise ZeroUnit("twist by zero")
    twisted = Rank1Module(m.spec, m.p.scale(u), m.q.scale(m.field.inv(u)))
    return twisted, {"x": m.field.fmt(u), "y": m.field.fmt(m.field.inv(u))}


# filtrations when some orbit is finite


@dataclass(frozen=True)
class FiltrationStep:
    cert: SubmoduleCert
    absolute: FactoredElement

    @property
    def parameter(self) -> FactoredElement:
        return self.cert.induced_p

    def to_json(self) -> dict:
        out = self.cert.to_json()
        out["absolute_generator"] = str(self.absolute)
        return out


@dataclass(frozen=True)
class Filtration:
    steps: tuple
    period: Optional[dict] = None

    def parameters(self, m: Rank1Module) -> list[FactoredElement]:
        return [m.p] + [s.parameter for s in self.steps]

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps], "period": self.period}


def filtration_steps(m: Rank1Module, depth: int) -> Filtration:
    """Descend ``depth`` times through a chosen maximal submodule.

    The first concrete entry of :func:`maximal_submodules` is taken each
    time.  Reports when a parameter repeats an earlier one up to a unit.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if is_simple(m):
        return Filtration(())
    steps = []
    seen = [m.p]
    period = None
    cur = m
    absolute = FactoredElement.one(m.field)
    for _ in range(depth):
        concrete = [c for c in maximal_submodules(cur) if isinstance(c, SubmoduleCert)]
        if not concrete:
            raise NoMaximalSubmodule(f"no concrete maximal submodule of V_{cur.p}")
        cert = concrete[0]
        absolute = absolute * cert.generator
        steps.append(FiltrationStep(cert, absolute))
        new_p = cert.induced_p
        if period is None:
            for idx, old in enumerate(seen):
                if old.associate(new_p):
                    ratio = m.field.fmt(new_p.unit * m.field.inv(old.unit))
                    period = {"length": len(seen) - idx, "since_step": idx, "unit_ratio": ratio}
                    break
        seen.append(new_p)
        cur = Rank1Module(m.spec, cert.induced_p, cert.induced_q)
    return Filtration(tuple(steps), period)


# reports


def analyze(m: Rank1Module) -> dict:
    """The report section for ``V_p``."""
    spec = m.spec
    simple = is_simple(m)
    pairs = omega_pairs(m.p, m.q, spec)
    out = {
        "p": str(m.p),
        "q": str(m.q),
        "simple": simple.simple,
        "witness": simple.to_json()["witness"],
        "omega": [pr.to_json() for pr in pairs],
        "omega_size": omega_size(pairs),
    }
    if all_orbits_infinite(spec):
        series = composition_series(m)
        out["length"] = len(series)
        out["series"] = [t.to_json() for t in series]
        out["socle"] = str(socle(m))
    else:
        out["length"] = "infinite"
        out["series"] = []
        out["socle"] = None
    out["maximal"] = [c.to_json() for c in maximal_submodules(m)]
    if spec.unverified:
        out["unverified_factors"] = [z.to_json() for z in spec.unverified]
    return out

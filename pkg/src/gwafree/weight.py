"""Weight data of subquotients and finite windows of the weighting functor."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NotMaximal, ReducibleIdeal
from .polyring import Irreducibility, Poly, is_irreducible


@dataclass(frozen=True)
class WeightSpace:
    ideal: Poly
    dim: int
    is_break: bool

    @property
    def total(self) -> int:
        """Dimension over the base field."""
        return self.ideal.degree * self.dim


@dataclass(frozen=True)
class Transition:
    """Residue matrix of ``x`` or ``y`` from one window slot to another."""

    gen: str
    source: Poly
    target: Poly
    matrix: tuple


@dataclass(frozen=True)
class WeightData:
    support: tuple
    transitions: tuple = ()

    @property
    def total_dim(self) -> int:
        return sum(ws.total for ws in self.support)

    @property
    def breaks(self) -> list[Poly]:
        return [ws.ideal for ws in self.support if ws.is_break]

    def ideals(self) -> list[Poly]:
        return [ws.ideal for ws in self.support]

    def to_json(self) -> dict:
        out = {
            "support": [{"ideal": ws.ideal.to_json(), "dim": ws.dim, "break": ws.is_break} for ws in self.support],
            "total_dim": self.total_dim,
        }
        if self.transitions:
            out["transitions"] = [
                {
                    "gen": t.gen,
                    "from": t.source.to_json(),
                    "to": t.target.to_json(),
                    "matrix": [[e.to_json() for e in row] for row in t.matrix],
                }
                for t in self.transitions
            ]
        return out


def chain_weight_data(spec, start: Poly, n: int) -> WeightData:
    """Support ``<sigma^i(start)>`` for ``i = 0..n``, each of dimension one."""
    a = spec.a.expand()
    support = []
    for i in range(n + 1):
        z = spec.sigma.apply(start, i).monic()
        support.append(WeightSpace(z, 1, z.divides(a)))
    return WeightData(tuple(support))


def quotient_weight_data(m, cert) -> WeightData:
    """Weight data of ``V_p / <g>`` for a maximal submodule ``<g>``."""
    from .rank1 import maximal_submodules, SubmoduleCert

    gen = cert.generator if isinstance(cert, SubmoduleCert) else cert
    for cand in maximal_submodules(m):
        if isinstance(cand, SubmoduleCert) and cand.generator.associate(gen):
            return cand.quotient
    raise NotMaximal(f"<{gen}> is not a maximal submodule of V_{m.p}")


def _residue(f: Poly, ideal: Poly) -> Poly:
    return f % ideal


def weighting_window(m, ideals: Sequence[Poly]) -> WeightData:
    """Evaluate the weighting functor on a finite set of maximal ideals.

    ``m`` is a rank-one or matrix module.  Each slot ``M/mM`` has dimension
    equal to the rank; ``x`` maps slot ``m`` to slot ``sigma^{-1}(m)`` and
    ``y`` maps slot ``m`` to ``sigma(m)``, recorded as residue matrices when
    both slots are in the window.
    """
    spec = m.spec
    sigma = spec.sigma
    a = spec.a.expand()
    slots = []
    for ideal in ideals:
        if ideal.degree < 1 or is_irreducible(ideal) is Irreducibility.NO:
            raise ReducibleIdeal(f"{ideal} does not generate a maximal ideal")
        slots.append(ideal.monic())
    P, Q = _matrices(m)
    rank = len(P)
    support = tuple(WeightSpace(z, rank, z.divides(a)) for z in slots)
    present = set(slots)
    trans = []
    for z in slots:
        down = sigma.apply(z, -1).monic()
        if down in present:
            trans.append(Transition("x", z, down, tuple(tuple(_residue(e, down) for e in row) for row in P)))
        up = sigma.apply(z, 1).monic()
        if up in present:
            trans.append(Transition("y", z, up, tuple(tuple(_residue(e, up) for e in row) for row in Q)))
    return WeightData(support, tuple(trans))


def _matrices(m):
    if not callable(m.P):
        return m.P.rows, m.Q.rows
    return ((m.p.expand(),),), ((m.q.expand(),),)


def consecutive_break_blocks(spec) -> list[tuple[Poly, int]]:
    """Blocks ``(start, n)`` between consecutive breaks in each infinite orbit.

    For factor positions ``b_i < b_{i+1}`` of ``a`` in one orbit the block is
    ``sigma^{b_i + 1}(z), ..., sigma^{b_{i+1}}(z)``.
    """
    from .factored import orbit_partition, profile_of

    out = []
    for rep, part in orbit_partition(spec.a, spec):
        positions = sorted(k for k, _ in profile_of(part, rep, spec).values)
        for lo, hi in zip(positions, positions[1:]):
            out.append((spec.sigma.apply(rep, lo + 1).monic(), hi - lo - 1))
    return out

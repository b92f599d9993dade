import random
from fractions import Fraction

import pytest

from gwafree.errors import InfiniteLength, NotADivisor, ZeroUnit
from gwafree.factored import FactoredElement
from gwafree.gwa import GwaSpec
from gwafree.polyring import GF, QQ, Poly, Sigma
from gwafree.rank1 import (
    OrbitFamily,
    SubmoduleCert,
    act,
    analyze,
    color_switch,
    composition_series,
    filtration_steps,
    hom_basis,
    is_simple,
    is_submodule,
    length,
    make_vp,
    maximal_submodules,
    socle,
    unit_twist,
    whittaker_module,
)
from gwafree.rankn import sl2_spec

from instances import comp_series_instance, quantum_chain_instance

h = Poly.gen(QQ)


def fe(*polys, unit=1):
    return FactoredElement.of(*polys, unit=unit)


@pytest.fixture
def b3():
    return sl2_spec(3)


def test_q_parameter(b3):
    m = make_vp(b3, fe(h - 1))
    assert m.q == fe(h + 1, unit=Fraction(-1, 4))
    m1 = make_vp(b3)
    assert m1.q == b3.a.sigma(b3, 1)
    with pytest.raises(NotADivisor):
        make_vp(b3, fe(h - 5))


def test_whittaker(b3):
    w = whittaker_module(b3, 5)
    assert w.q.is_unit and w.q.unit == 5
    with pytest.raises(ZeroUnit):
        whittaker_module(b3, 0)


def test_action_on_one(b3):
    m = make_vp(b3, fe(h - 1))
    one = Poly.const(QQ, 1)
    assert act(m, "x", one) == m.P()
    assert act(m, "y", one) == m.Q()
    rng = random.Random(0)
    for _ in range(20):
        v = Poly(QQ, [rng.randint(-5, 5) for _ in range(4)])
        assert act(m, "xy", v) == b3.a.expand() * v


def test_weyl_basis_action():
    spec = GwaSpec.make(Sigma.classical(1), fe(h))
    m = make_vp(spec)
    assert m.Q() == h - 1
    v = [Poly.const(QQ, 1)]
    for k in range(1, 7):
        v.append(v[-1] * (h - k))
    for k in range(6):
        assert act(m, "y", v[k]) == v[k + 1]
        expected = v[k] + (k * v[k - 1] if k else Poly(QQ))
        assert act(m, "x", v[k]) == expected


def test_submodule_examples(b3):
    _, m = comp_series_instance()
    g = fe(h, h - 1, h - 2)
    one = FactoredElement.one(QQ)
    for method in ("divisibility", "multiset", "profile"):
        assert is_submodule(m, g, method)
        assert is_submodule(m, one, method)
        assert not is_submodule(make_vp(b3, fe(h + 3)), fe(h + 1, h - 1), method)
    assert is_submodule(m, g.expand())


def test_maximal_submodules(b3):
    mx = maximal_submodules(make_vp(b3, fe(h - 1)))
    assert len(mx) == 1 and mx[0].generator == fe(h + 1, h - 1)
    assert maximal_submodules(make_vp(b3, fe(h + 3))) == []
    _, mq = quantum_chain_instance()
    mx = maximal_submodules(mq)
    full = [c for c in mx if isinstance(c, SubmoduleCert) and c.generator == fe(h)]
    assert full and full[0].quotient.total_dim == 1


def test_simplicity(b3):
    for b in (Fraction(1, 2),):
        s = sl2_spec(b)
        t = Poly.gen(QQ)
        for p in ([], [t + b], [t - b + 2], [t + b, t - b + 2]):
            assert is_simple(make_vp(s, fe(*p) if p else None)).simple
    res = is_simple(make_vp(b3, fe(h - 1)))
    assert not res.simple
    assert (res.witness.z, res.witness.w, res.witness.shift) == (h + 1, h - 1, 1)
    assert is_simple(make_vp(GwaSpec.make(Sigma.classical(1), fe(h)))).simple


def test_composition_series_example():
    _, m = comp_series_instance()
    series = composition_series(m)
    assert [t.p for t in series] == [
        fe(h - 3, h - 2, h - 2),
        fe(h + 1, h - 2, h - 3),
        fe(h + 1, h + 1, h - 3),
        fe(h + 1, h + 1, h - 2),
    ]
    assert length(m) == 4
    assert socle(m).associate(fe(h + 1, h + 1, h - 2))
    assert socle(m, "iterate").associate(socle(m))


def test_b3_series_and_socle(b3):
    m = make_vp(b3, fe(h - 1))
    assert length(m) == 2
    assert socle(m).associate(fe(h + 3))
    # the socle <(h+1)(h-1)> is the image of V_{h+3}
    hom = hom_basis(make_vp(b3, fe(h + 3)), m, 4)
    assert list(hom.basis) == [(h + 1) * (h - 1)]
    assert sl2_spec(3).sigma.apply((h + 1) * (h - 1), -1) * (h - 1) == (h + 3) * (h + 1) * (h - 1)


def test_simple_module_series():
    spec = GwaSpec.make(Sigma.classical(1), fe(h))
    m = make_vp(spec)
    assert length(m) == 1
    assert socle(m) == m.p


def test_color_switch_positions():
    _, m = comp_series_instance()
    (sw,) = color_switch(m)
    assert sw.rep == h
    assert (sw.p_before, sw.q_before) == ((2, 2, 3), (0, 0))
    assert (sw.p_after, sw.q_after) == ((-1, -1, 2), (3, 4))


def test_infinite_length_raised():
    _, mq = quantum_chain_instance()
    with pytest.raises(InfiniteLength):
        composition_series(mq)
    with pytest.raises(InfiniteLength):
        socle(mq)


def test_hom_examples(b3):
    m = make_vp(b3, fe(h - 1))
    end = hom_basis(m, m, 0)
    assert list(end.basis) == [Poly.const(QQ, 1)]
    assert list(hom_basis(m, m).basis) == [Poly.const(QQ, 1)]
    assert hom_basis(m, make_vp(b3, b3.a)).basis == ()
    # V_p and V_{2p} are not isomorphic
    twisted, _ = unit_twist(m, 2)
    assert hom_basis(m, twisted).basis == ()
    assert not hom_basis(m, twisted).isomorphic


def test_unit_twist():
    _, mq = quantum_chain_instance()
    same, maps = unit_twist(mq, 1)
    assert same == mq and maps == {"x": "1", "y": "1"}
    cert = [c for c in maximal_submodules(mq) if isinstance(c, SubmoduleCert)][0]
    twisted, _ = unit_twist(mq, 2)
    assert (cert.induced_p, cert.induced_q) == (twisted.p, twisted.q)


def test_quantum_filtration():
    _, mq = quantum_chain_instance()
    filt = filtration_steps(mq, 3)
    assert filt.parameters(mq) == [mq.p.scale(u) for u in (1, 2, 4, 8)]
    assert [s.absolute for s in filt.steps] == [fe(h), fe(h, h), fe(h, h, h)]
    assert all(s.cert.quotient.total_dim == 1 for s in filt.steps)


def test_filtration_of_simple_module():
    spec = GwaSpec.make(Sigma.classical(1), fe(h))
    assert filtration_steps(make_vp(spec), 5).steps == ()


def test_finite_field_filtration():
    g = Poly.gen(GF(3))
    spec = GwaSpec.make(Sigma.classical(1, GF(3)), FactoredElement.of(g, g - 1))
    m = make_vp(spec, FactoredElement.of(g))
    mx = maximal_submodules(m)
    assert any(isinstance(c, OrbitFamily) for c in mx)
    filt = filtration_steps(m, 2)
    assert filt.steps[-1].absolute.expand() == g * (g - 1) * (g - 2)


def test_analyze_report_shape(b3):
    rep = analyze(make_vp(b3, fe(h - 1)))
    assert {"p", "q", "simple", "witness", "omega", "length", "series", "socle", "maximal"} <= set(rep)
    assert rep["length"] == 2 and rep["simple"] is False
    _, mq = quantum_chain_instance()
    assert analyze(mq)["length"] == "infinite"

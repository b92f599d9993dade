from fractions import Fraction

import pytest

from gwafree.errors import NotMaximal, ReducibleIdeal
from gwafree.factored import FactoredElement
from gwafree.gwa import GwaSpec
from gwafree.polyring import QQ, Poly, Sigma
from gwafree.rank1 import SubmoduleCert, make_vp, maximal_submodules
from gwafree.rankn import construct_simple_vn, sl2_spec
from gwafree.weight import chain_weight_data, consecutive_break_blocks, quotient_weight_data, weighting_window

from instances import comp_series_instance, quantum_chain_instance

h = Poly.gen(QQ)


def test_b3_quotient():
    spec = sl2_spec(3)
    m = make_vp(spec, FactoredElement.of(h - 1))
    data = quotient_weight_data(m, FactoredElement.of(h + 1, h - 1))
    assert data.ideals() == [h + 1, h - 1]
    assert data.total_dim == 2


def test_quantum_quotient():
    _, m = quantum_chain_instance()
    data = quotient_weight_data(m, FactoredElement.of(h))
    assert data.ideals() == [h] and data.total_dim == 1


def test_degree_two_slot():
    z = h**2 + 1
    spec = GwaSpec.make(Sigma.classical(1), FactoredElement.of(z, (h + 1) ** 2 + 1))
    m = make_vp(spec, FactoredElement.of(z))
    assert m.q == FactoredElement.of(z)
    (cert,) = [c for c in maximal_submodules(m) if isinstance(c, SubmoduleCert)]
    assert cert.generator == FactoredElement.of(z)
    assert cert.quotient.ideals() == [z]
    assert cert.quotient.total_dim == 2


def test_not_maximal():
    _, m = comp_series_instance()
    with pytest.raises(NotMaximal):
        quotient_weight_data(m, FactoredElement.of(h))


def test_window_dimensions_and_breaks():
    spec = sl2_spec(3)
    m = make_vp(spec, FactoredElement.of(h - 1))
    win = weighting_window(m, [h + 3, h + 1, h + 7])
    assert [ws.dim for ws in win.support] == [1, 1, 1]
    assert [ws.is_break for ws in win.support] == [True, False, False]
    with pytest.raises(ReducibleIdeal):
        weighting_window(m, [h**2 - 1])


def test_rank_three_window():
    spec = sl2_spec(Fraction(1, 2))
    cert = construct_simple_vn(spec, FactoredElement.of(h + Fraction(1, 2)), 3)
    win = weighting_window(cert.module, [h, h - 2, h - 4, h + 2])
    assert [ws.dim for ws in win.support] == [3, 3, 3, 3]
    assert win.total_dim == 12
    # x lowers h -> h+2 in the window; its residue matrix is P mod (h+2)
    xs = [t for t in win.transitions if t.gen == "x" and t.source == h]
    assert xs and xs[0].target == h + 2


def test_chain_weight_data():
    spec = sl2_spec(3)
    data = chain_weight_data(spec, h + 1, 1)
    assert data.ideals() == [h + 1, h - 1]
    assert data.breaks == [h - 1]


def test_break_blocks_example():
    spec, _ = comp_series_instance()
    blocks = consecutive_break_blocks(spec)
    assert sorted((str(s), n) for s, n in blocks) == [("h", 2), ("h - 3", 0)]

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gwafree.errors import DimensionMismatch, FiniteOrbit, NotADivisor, NotCompatible, NotInvertible, NotMinimal, SingularP
from gwafree.factored import FactoredElement
from gwafree.polyring import QQ, Poly
from gwafree.rankn import (
    PolyMatrix,
    act_rankn,
    basis_vector,
    brute_set_equation,
    check_set_equation,
    conjugate,
    construct_simple_vn,
    construct_sl2_family,
    inverse_unimodular,
    is_unimodular,
    make_matrix_module,
    minor_gcd_factors,
    set_equation,
    sl2_spec,
    snf,
    solve_set_equation,
    verify_iso_conjugate,
)

from instances import quantum_chain_instance

h = Poly.gen(QQ)
half = Fraction(1, 2)


def M(rows):
    return PolyMatrix(QQ, rows)


def one(x=1):
    return Poly.const(QQ, x)


def test_snf_examples():
    assert snf(PolyMatrix.diag(QQ, [h, h**2])).invariant_factors == [h, h**2]
    sf = snf(M([[one(), h], [h, one()]]))
    assert sf.invariant_factors == [one(), h**2 - 1]
    assert minor_gcd_factors(M([[one(), h], [h, one()]])) == [one(), h**2 - 1]


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_companion_snf(n):
    a0 = h + half
    C = PolyMatrix.companion(a0, n)
    expected = [one()] * (n - 1) + [a0]
    assert snf(C).invariant_factors == expected
    assert minor_gcd_factors(C) == expected


entries = st.lists(st.integers(-3, 3), min_size=1, max_size=3).map(lambda c: Poly(QQ, c))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)))
def test_snf_against_minor_gcds(rows):
    A = M(rows)
    sf = snf(A)
    assert sf.S * sf.D * sf.T == A
    assert is_unimodular(sf.S) and is_unimodular(sf.T)
    assert sf.D.is_diagonal()
    ds = sf.invariant_factors
    assert ds == minor_gcd_factors(A)
    for d1, d2 in zip(ds, ds[1:]):
        if not d2.is_zero():
            assert d1.divides(d2)


def test_rank_one_consistency():
    spec = sl2_spec(3)
    m = make_matrix_module(spec, M([[h - 1]]))
    assert m.Q.rows[0][0] == (h + 1).scale(Fraction(-1, 4))
    with pytest.raises(NotCompatible):
        make_matrix_module(spec, M([[h - 5]]))


def test_companion_module_and_rejections():
    spec = sl2_spec(half)
    m = make_matrix_module(spec, PolyMatrix.companion(h + half, 2))
    assert m.invariant_factors == (one(), h + half)
    a = spec.a.expand()
    with pytest.raises(NotCompatible) as err:
        make_matrix_module(spec, PolyMatrix.diag(QQ, [a, a * a]))
    assert err.value.last_invariant_factor == (a * a).monic()
    with pytest.raises(SingularP):
        make_matrix_module(spec, M([[h, h], [h, h]]))


def test_actions():
    spec = sl2_spec(half)
    cert = construct_simple_vn(spec, FactoredElement.of(h + half), 3)
    m = cert.module
    a = spec.a.expand()
    for i in range(3):
        e = basis_vector(QQ, 3, i)
        assert act_rankn(m, "xy", e) == tuple(a * c for c in e)
        assert act_rankn(m, h**2, e) == tuple(h**2 * c for c in e)
        want = spec.sigma.apply(h + half, -i)
        assert act_rankn(m, "xxx", e) == tuple(want * c for c in e)
    with pytest.raises(DimensionMismatch):
        act_rankn(m, "x", (one(),))


def test_conjugation():
    spec = sl2_spec(half)
    m = construct_simple_vn(spec, FactoredElement.of(h + half), 2).module
    S = M([[one(), h], [Poly(QQ), one()]])
    m2 = conjugate(m, S)
    assert verify_iso_conjugate(m, m2, S)
    assert verify_iso_conjugate(m, m, PolyMatrix.identity(QQ, 2))
    with pytest.raises(NotInvertible):
        inverse_unimodular(M([[h, Poly(QQ)], [Poly(QQ), one()]]))


def test_random_unimodular_conjugation():
    rng = random.Random(11)
    spec = sl2_spec(half)
    m = construct_simple_vn(spec, FactoredElement.of(h + Fraction(3, 2)), 3).module
    for _ in range(5):
        S = PolyMatrix.identity(QQ, 3)
        for _ in range(3):
            i, j = rng.sample(range(3), 2)
            E = [[one() if r == c else Poly(QQ) for c in range(3)] for r in range(3)]
            E[i][j] = Poly(QQ, [rng.randint(-2, 2), rng.randint(-2, 2)])
            S = S * M(E)
        m2 = conjugate(m, S)
        assert verify_iso_conjugate(m, m2, S)
        assert verify_iso_conjugate(m2, m, inverse_unimodular(S))


def test_vn_certificate_examples():
    spec = sl2_spec(half)
    cert = construct_simple_vn(spec, FactoredElement.of(h + half), 3)
    assert cert.certified
    assert "certified" in cert.to_json()["simplicity"]
    both = construct_simple_vn(spec, spec.a.monic(), 2)
    assert both.certified
    assert both.module.invariant_factors[-1] == (h + half) * (h + Fraction(3, 2))
    single = construct_simple_vn(spec, FactoredElement.of(h + Fraction(3, 2)), 1)
    assert single.certified and single.module.n == 1


def test_vn_preconditions():
    spec = sl2_spec(3)
    with pytest.raises(NotMinimal):
        construct_simple_vn(spec, FactoredElement.of(h - 1), 2)
    with pytest.raises(NotADivisor):
        construct_simple_vn(spec, FactoredElement.of(h - 7), 2)
    qspec, _ = quantum_chain_instance()
    with pytest.raises(FiniteOrbit):
        construct_simple_vn(qspec, FactoredElement.of(h - 3), 2)


def test_sl2_family_examples():
    fam = construct_sl2_family(half, 2)
    assert fam.chi == Fraction(-3, 16)
    assert all(c.passed for c in fam.checks)
    fam3 = construct_sl2_family(3, 2)
    assert all(c.passed for c in fam3.checks)
    fam1 = construct_sl2_family(half, 1)
    assert fam1.module.P.rows[0][0] == h + half


def test_set_equation_examples():
    assert solve_set_equation(1, 3, 2) == ((), (3,))
    assert check_set_equation(1, 3, 2, (), (3,))
    assert solve_set_equation(4, 4, 0) == ((), ())
    assert solve_set_equation(0, 1, 2) is None
    assert brute_set_equation(0, 1, 2, 3, -6, 6) is None
    assert set_equation(0, 1, 2, "brute") is False
    assert set_equation(1, 3, 2, "brute") is True


@settings(max_examples=80, deadline=None)
@given(st.integers(-8, 8), st.integers(-8, 8), st.integers(-5, 5))
def test_solver_output_checks(j, k, n):
    sol = solve_set_equation(j, k, n)
    solvable = (j == k) if n == 0 else (j - k) % n == 0
    assert (sol is not None) == solvable
    if sol is not None:
        assert check_set_equation(j, k, n, *sol)

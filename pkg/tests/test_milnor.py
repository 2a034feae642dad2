"""Quotient ring of a quasi-homogeneous polynomial by its partials."""

import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orbifrob.milnor import (
    MilnorRing,
    NoSolution,
    NonIsolated,
    Underdetermined,
    solve_weights,
    tensor_ring,
)
from orbifrob.poly import Polynomial, parse_polynomial


def ring(text, vs, weights=None):
    return MilnorRing(parse_polynomial(text, vs), weights)


def test_solve_weights_chain():
    assert solve_weights(parse_polynomial("z^4", ("z",))) == (F(1, 4),)
    assert solve_weights(parse_polynomial("x^4+x*y^2", ("x", "y"))) == (F(1, 4), F(3, 8))
    assert solve_weights(parse_polynomial("x^3+x*y^3", ("x", "y"))) == (F(1, 3), F(2, 9))
    assert solve_weights(parse_polynomial("x^3+y^3+z^3+x*y*z", ("x", "y", "z"))) == (
        F(1, 3),
        F(1, 3),
        F(1, 3),
    )


def test_solve_weights_underdetermined():
    # one equation, two unknowns
    with pytest.raises(Underdetermined):
        solve_weights(parse_polynomial("x^2*y^2", ("x", "y")))


def test_solve_weights_inconsistent():
    with pytest.raises(NoSolution):
        solve_weights(parse_polynomial("x + x^2", ("x",)))


def test_non_isolated_rejected():
    f = parse_polynomial("x^2*y^2", ("x", "y"))
    with pytest.raises(NonIsolated):
        MilnorRing(f, (F(1, 4), F(1, 4)))


def test_a_series_closed_form():
    for n in range(1, 13):
        r = ring(f"z^{n + 1}", ("z",))
        assert r.weights == (F(1, n + 1),)
        assert r.mu == n == r.mu_formula
        assert r.basis == [(k,) for k in range(n)]
        d = sum(1 - 2 * q for q in r.weights)
        assert d == F(n - 1, n + 1)
        assert r.socle_monomial == (n - 1,)


def test_d_series_closed_form():
    # x^(m-1) + x y^2 has mu = m
    for m in range(4, 10):
        r = ring(f"x^{m - 1}+x*y^2", ("x", "y"))
        assert r.weights == (F(1, m - 1), F(m - 2, 2 * (m - 1)))
        assert r.mu == m == r.mu_formula
        d = sum(1 - 2 * q for q in r.weights)
        assert d == F(m - 2, m - 1)


def test_exceptional_and_pham():
    e6 = ring("x^3+y^4", ("x", "y"))
    assert (e6.mu, e6.socle_monomial) == (6, (1, 2))
    e7 = ring("x^3+x*y^3", ("x", "y"))
    assert (e7.mu, e7.socle_monomial) == (7, (0, 4))
    e8 = ring("x^3+y^5", ("x", "y"))
    assert (e8.mu, e8.socle_monomial) == (8, (1, 3))
    p8 = ring("x^3+y^3+z^3+x*y*z", ("x", "y", "z"))
    assert p8.mu == 8
    assert p8.weights == (F(1, 3), F(1, 3), F(1, 3))
    # mu_formula counts the tensor cube; the cusp term corrects nothing
    assert p8.mu_formula == 8


def test_basis_degrees_are_symmetric():
    # multiset of charges is symmetric about d/2
    for text, vs in [("x^3+x*y^3", ("x", "y")), ("x^3+y^3+z^3+x*y*z", ("x", "y", "z"))]:
        r = ring(text, vs)
        d = sum(1 - 2 * q for q in r.weights)
        degs = sorted(r.degree(m) for m in r.basis)
        assert degs == sorted(d - t for t in degs)
        assert degs[-1] == d == r.degree(r.socle_monomial)


def _det(mat):
    # fraction-exact Gaussian elimination
    m = [row[:] for row in mat]
    n = len(m)
    det = F(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return F(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            k = m[r][c] / m[c][c]
            for j in range(c, n):
                m[r][j] -= k * m[c][j]
    return det


@pytest.mark.parametrize(
    "text,vs",
    [
        ("z^5", ("z",)),
        ("x^4+x*y^2", ("x", "y")),
        ("x^3+y^4", ("x", "y")),
        ("x^3+x*y^3", ("x", "y")),
        ("x^3+y^3+z^3+x*y*z", ("x", "y", "z")),
    ],
)
def test_residue_pairing_nondegenerate(text, vs):
    r = ring(text, vs)
    mat = r.pairing_matrix()
    assert len(mat) == r.mu
    assert _det(mat) != 0
    # only complementary degrees pair
    for i, a in enumerate(r.basis):
        for j, b in enumerate(r.basis):
            if mat[i][j] != 0:
                assert r.degree(a) + r.degree(b) == r.degree(r.socle_monomial)


def test_socle_pairs_with_unit():
    r = ring("x^3+x*y^3", ("x", "y"))
    one = r.element((0, 0))
    top = r.element(r.socle_monomial)
    assert r.pairing(one, top) != 0
    assert r.pairing(one, one) == 0


def test_normal_form_reduces_partials_to_zero():
    r = ring("x^3+x*y^3", ("x", "y"))
    for i in range(2):
        assert r.normal_form(r.f.diff(i)).is_zero
    # x^3 = -x y^3 / ... lands back in the staircase
    p = r.normal_form(parse_polynomial("x^3", ("x", "y")))
    assert set(p.monomials()) <= set(r.basis)


def test_subring_restricts_to_fixed_axis():
    r = ring("x^3+x*y^3", ("x", "y"))
    s = r.subring([0])
    assert s.vars == ("x",)
    assert s.mu == 2 and s.basis == [(0,), (1,)]
    empty = r.subring([])
    assert empty.mu == 1 and empty.basis == [()]


def test_tensor_ring_matches_sum_of_singularities():
    r1 = ring("x^3", ("x",))
    r2 = ring("y^4", ("y",))
    t = tensor_ring(r1, r2)
    direct = ring("x^3+y^4", ("x", "y"))
    assert t.mu == direct.mu == r1.mu * r2.mu
    assert sorted(t.basis) == sorted(direct.basis)
    assert t.weights == direct.weights


def test_tensor_ring_renames_clashing_variables():
    r = ring("z^3", ("z",))
    t = tensor_ring(r, r)
    assert t.vars == ("z_1", "z_2")
    assert t.mu == 4


E7 = ring("x^3+x*y^3", ("x", "y"))
e7_monos = st.tuples(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=4))
e7_polys = st.dictionaries(
    e7_monos,
    st.builds(F, st.integers(min_value=-5, max_value=5), st.integers(min_value=1, max_value=3)),
    max_size=4,
).map(lambda t: Polynomial(("x", "y"), t))


@given(e7_polys)
def test_normal_form_idempotent(p):
    r = E7.normal_form(p)
    assert E7.normal_form(r) == r
    assert set(r.monomials()) <= set(E7.basis)


@given(e7_polys, e7_polys)
@settings(max_examples=60)
def test_normal_form_multiplicative(a, b):
    lhs = E7.normal_form(a * b)
    rhs = E7.multiply(E7.normal_form(a), E7.normal_form(b))
    assert lhs == rhs


def _random_quasi_homogeneous(rng):
    # one variable invertible polynomial plus optional chain partner
    kind = rng.choice(["fermat", "chain"])
    if kind == "fermat":
        return f"z^{rng.randint(2, 6)}", ("z",)
    a, b = rng.randint(2, 4), rng.randint(2, 4)
    return f"x^{a}+x*y^{b}", ("x", "y")


def test_tensor_ring_agrees_on_random_pairs():
    rng = random.Random(7)
    for _ in range(20):
        t1, v1 = _random_quasi_homogeneous(rng)
        t2, v2 = _random_quasi_homogeneous(rng)
        r1, r2 = ring(t1, v1), ring(t2, v2)
        t = tensor_ring(r1, r2)
        assert t.mu == r1.mu * r2.mu
        assert t.mu == len(t.basis)
        top = t.socle_monomial
        k1 = len(r1.vars)
        assert top[:k1] == r1.socle_monomial and top[k1:] == r2.socle_monomial

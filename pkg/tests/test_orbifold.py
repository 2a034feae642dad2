"""Twisted sectors, bigrading, group action, and the reconstructed products."""

from fractions import Fraction as F

import pytest

from orbifrob import (
    build_module,
    check_axioms,
    metric_normalizations,
    mutated_copy,
    parse_polynomial,
    phase,
    reconstruct_structure,
)


def a_module(n, gens=None, sigma=None):
    f = parse_polynomial(f"z^{n + 1}", ("z",))
    return build_module(f, gens or [(F(1, n + 1),)], sigma=sigma)


def e7_module():
    f = parse_polynomial("x^3+x*y^3", ("x", "y"))
    return build_module(f, [(F(1, 3), F(2, 9))])


def jp(i):
    # powers of the grading element of x^3+x*y^3
    return (F(i, 3) % 1, F(2 * i, 9) % 1)


# one row per group element: rank, d_g, nu, s+, s-, s, s_bar
E7_SECTOR_TABLE = {
    0: (7, F(8, 9), (F(0), F(0)), F(0), F(0), F(0), F(0)),
    1: (1, F(0), (F(1, 3), F(2, 9)), F(8, 9), F(-8, 9), F(0), F(8, 9)),
    2: (1, F(0), (F(2, 3), F(4, 9)), F(8, 9), F(2, 9), F(5, 9), F(1, 3)),
    3: (2, F(1, 3), (F(0), F(2, 3)), F(5, 9), F(1, 3), F(4, 9), F(1, 9)),
    4: (1, F(0), (F(1, 3), F(8, 9)), F(8, 9), F(4, 9), F(2, 3), F(2, 9)),
    5: (1, F(0), (F(2, 3), F(1, 9)), F(8, 9), F(-4, 9), F(2, 9), F(2, 3)),
    6: (2, F(1, 3), (F(0), F(1, 3)), F(5, 9), F(-1, 3), F(1, 9), F(4, 9)),
    7: (1, F(0), (F(1, 3), F(5, 9)), F(8, 9), F(-2, 9), F(1, 3), F(5, 9)),
    8: (1, F(0), (F(2, 3), F(7, 9)), F(8, 9), F(8, 9), F(8, 9), F(0)),
}


def test_e7_sector_table():
    mod = e7_module()
    assert mod.group.order == 9
    for i, (rank, d, nu, sp, sm, s, sbar) in E7_SECTOR_TABLE.items():
        row = mod.sector_row(jp(i))
        assert row["rank"] == rank
        assert row["degree"] == d
        assert row["nu"] == nu
        assert row["s_plus"] == sp
        assert row["s_minus"] == sm
        assert row["s"] == s
        assert row["s_bar"] == sbar


def test_e7_fixed_polynomials():
    mod = e7_module()
    assert mod.sector_row(jp(0))["fixed_polynomial"] == "x*y^3 + x^3"
    assert mod.sector_row(jp(3))["fixed_polynomial"] == "x^3"
    assert mod.sector_row(jp(1))["fixed_polynomial"] == "0"


def test_e7_character_and_action():
    mod = e7_module()
    for i in range(9):
        assert mod.chi(jp(i)) == phase(F(5 * i, 9))
        for k in range(9):
            want = F(0)
            if k % 9 != 0:
                want = F(-2 * i, 9) if k % 9 in (3, 6) else F(-5 * i, 9)
            assert mod.phi_coeff(jp(i), jp(k)) == phase(want)


def test_e7_invariants_are_the_unit():
    mod = e7_module()
    inv = mod.invariants()
    assert len(inv) == 1
    assert inv[0].g == mod.group.identity
    assert inv[0].mono == (0, 0)
    assert inv[0].bidegree == (F(0), F(0))


def test_e7_class_count():
    mod = e7_module()
    assert len(mod.classes()) == 7 + 2 * 2 + 6 * 1
    # bidegree of y^2 in the untwisted sector
    assert mod.bidegree((jp(0), (0, 2))) == (F(4, 9), F(4, 9))


def test_a_series_shift_closed_form():
    for n in (2, 3, 5, 8):
        mod = a_module(n)
        for i in range(1, n + 1):
            row = mod.sector_row((F(i, n + 1),))
            assert row["s"] == F(i - 1, n + 1)
            assert row["s_bar"] == F(n - i, n + 1)
            assert row["rank"] == 1


def test_a3_even_subgroup_invariants():
    # sigma = 0 keeps 1 and z^2, both body classes
    mod = a_module(3, gens=[(F(1, 2),)], sigma={(F(0),): 0, (F(1, 2),): 0})
    pairs = {(c.g, c.mono) for c in mod.invariants()}
    assert pairs == {((F(0),), (0,)), ((F(0),), (2,))}
    # sigma = 1 also admits the twisted unit at bidegree (1/4, 1/4)
    mod1 = a_module(3, gens=[(F(1, 2),)], sigma={(F(0),): 0, (F(1, 2),): 1})
    pairs1 = {(c.g, c.mono) for c in mod1.invariants()}
    assert pairs1 == pairs | {((F(1, 2),), ())}


def test_equivariant_trace_and_sector_counts():
    mod = a_module(3)
    j = (F(1, 4),)
    # trace of j on the 3 dim ring: 1 + i + i^2 summed exactly
    assert mod.milnor_class_value(j) == 1
    assert mod.sector_milnor_number(j) == 1
    assert mod.sector_milnor_number((F(0),)) == 3
    assert mod.orbifold_milnor_number() == 0
    even = a_module(3, gens=[(F(1, 2),)])
    assert even.orbifold_milnor_number() == 1
    assert even.twist_invariant_dimension() == 1


def test_twist_invariants_match_orbifold_count_when_reflections_generate():
    # Wall style integrality check on a product group
    f = parse_polynomial("x^3+y^4", ("x", "y"))
    mod = build_module(f, [(F(1, 3), F(0)), (F(0), F(1, 4))])
    assert mod.group.pseudo_reflection_generated()
    mu = mod.orbifold_milnor_number()
    assert mu == mod.twist_invariant_dimension()
    assert mu == int(mu) and mu >= 0


def test_reconstructed_axioms_hold():
    for mod in (a_module(3), a_module(5), e7_module()):
        st = reconstruct_structure(mod)
        rep = check_axioms(st)
        assert rep.ok, rep.summary()


def test_a_series_twisted_products_support():
    # gamma vanishes except onto the socle at i + k = n + 1
    n = 4
    st = reconstruct_structure(a_module(n))
    for i in range(1, n + 1):
        for k in range(1, n + 1):
            out = st.product_of_classes(((F(i, n + 1),), ()), ((F(k, n + 1),), ()))
            hits = {c for c, v in out.items() if not v.is_zero}
            if i + k == n + 1:
                assert hits == {((F(0),), (n - 1,))}
            else:
                assert hits == set()


def test_metric_normalization_and_pairing():
    mod = e7_module()
    norm, notes = metric_normalizations(mod)
    assert set(norm) == set(mod.group.elements)
    assert norm[mod.group.identity].is_one
    st = reconstruct_structure(mod)
    one = ((F(0), F(0)), (0, 0))
    top = ((F(0), F(0)), (0, 4))
    assert not st.metric(one, top).is_zero
    assert st.metric(one, one).is_zero
    # classes in sectors g, h only pair when gh = e
    assert st.metric((jp(1), ()), (jp(2), ())).is_zero
    assert not st.metric((jp(1), ()), (jp(8), ())).is_zero


def test_mutations_are_caught():
    st = reconstruct_structure(a_module(3))
    for seed in range(12):
        bad, what = mutated_copy(st, seed)
        rep = check_axioms(bad)
        assert not rep.ok, f"mutation not caught: {what}"
        assert rep.failures[0].witness


def test_wall_identity_over_e7():
    mod = e7_module()
    for g in mod.group.elements:
        assert mod.sector_milnor_number(g) == mod.milnor_class_value(g)

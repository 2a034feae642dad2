"""Dualization: shifts, invariants, involution, and the degenerate products."""

from fractions import Fraction as F

import pytest

from orbifrob import (
    DualModule,
    NotCyclic,
    NotQuasiEuler,
    build_module,
    check_degenerate_axioms,
    degenerate_structure,
    double_dual_matches,
    dualize,
    eulerize,
    involution_check,
    maximality_report,
    pairing_invariance,
    parse_polynomial,
)


def jp(i):
    return (F(i, 3) % 1, F(2 * i, 9) % 1)


def e7_module():
    f = parse_polynomial("x^3+x*y^3", ("x", "y"))
    return build_module(f, [(F(1, 3), F(2, 9))])


def a_module(n, gens=None, sigma=None):
    f = parse_polynomial(f"z^{n + 1}", ("z",))
    return build_module(f, gens or [(F(1, n + 1),)], sigma=sigma)


# dual shifts (s, s_bar) for j^0 .. j^8
E7_DUAL_SHIFTS = [
    (F(0), F(0)),
    (F(-8, 9), F(0)),
    (F(-8, 9), F(8, 9)),
    (F(-1, 3), F(1, 3)),
    (F(-4, 9), F(1, 9)),
    (F(-2, 9), F(2, 9)),
    (F(-2, 3), F(2, 3)),
    (F(-7, 9), F(4, 9)),
    (F(-5, 9), F(5, 9)),
]

E7_DUAL_INVARIANT_DEGREES = {
    (F(0), F(0)),
    (F(-4, 9), F(4, 9)),
    (F(-8, 9), F(8, 9)),
    (F(-1, 3), F(1, 3)),
    (F(-2, 9), F(2, 9)),
    (F(-2, 3), F(2, 3)),
    (F(-5, 9), F(5, 9)),
}


def test_e7_dual_shift_table():
    dual = dualize(e7_module())
    assert dual.is_g_euler
    for i, (s, sbar) in enumerate(E7_DUAL_SHIFTS):
        assert dual.shifts[jp(i)] == (s, sbar)


def test_e7_dual_sector_ranks():
    dual = dualize(e7_module())
    # underlying element is shifted by j^-1, so label j carries the full ring
    assert dual.underlying(jp(1)) == jp(0)
    assert dual.sector_ring(jp(1)).mu == 7
    assert dual.sector_ring(jp(4)).mu == 2
    assert dual.sector_ring(jp(0)).mu == 1


def test_e7_dual_invariants():
    dual = dualize(e7_module())
    inv = dual.invariants()
    assert len(inv) == 7
    assert {c.bidegree for c in inv} == E7_DUAL_INVARIANT_DEGREES
    # the only non unit monomial among them is y^2 over the label j
    nonunit = [c for c in inv if any(c.mono)]
    assert len(nonunit) == 1
    assert nonunit[0].g == jp(1) and nonunit[0].mono == (0, 2)
    # all of diagonal type (-q, q)
    assert all(q + qbar == 0 for q, qbar in (c.bidegree for c in inv))


def test_e7_spectrum_matches_antichiral_realization():
    dual = dualize(e7_module())
    spec = sorted(q for q, _ in (c.bidegree for c in dual.invariants()))
    assert spec == sorted(-q for q in [F(0), F(2, 9), F(1, 3), F(4, 9), F(5, 9), F(2, 3), F(8, 9)])


def test_involution_on_euler_modules():
    assert involution_check(e7_module())
    assert involution_check(a_module(3))
    assert involution_check(a_module(5))
    f = parse_polynomial("x^4+x*y^2", ("x", "y"))
    d4 = build_module(f, [(F(1, 4), F(3, 8))])
    assert involution_check(d4)


def test_involution_through_eulerization():
    # j is outside Z/2 inside A_5, sigma = 0: quasi Euler case
    mod = a_module(5, gens=[(F(1, 2),)])
    assert involution_check(mod)
    assert double_dual_matches(mod, eulerize(mod))


def test_eulerize_extends_sigma():
    mod = a_module(5, gens=[(F(1, 2),)], sigma={(F(0),): 0, (F(1, 2),): 1})
    eul = eulerize(mod)
    assert (F(1, 6),) in eul.group
    # sigma on the extension satisfies k * s = sigma(j^k) mod 2
    assert eul.sigma[(F(1, 6),)] == 1


def test_eulerize_obstruction():
    # even n: sigma(j) forced to both parities at once
    mod = a_module(3, gens=[(F(1, 2),)], sigma={(F(0),): 0, (F(1, 2),): 1})
    with pytest.raises(NotQuasiEuler):
        eulerize(mod)


def test_dual_requires_eulerization_when_j_missing():
    mod = a_module(5, gens=[(F(1, 2),)])
    with pytest.raises(ValueError):
        dualize(mod)
    dual = dualize(mod, eulerize(mod))
    # labels are the original group, inside the extended ambient
    assert dual.group.order == 2
    assert mod.j not in dual.group
    assert dual.ambient.group.order == 6


def test_a5_degenerate_structure():
    dual = dualize(a_module(5))
    st = degenerate_structure(dual)
    assert st.ramond == {(F(1, 6),)}
    # 25 nonzero pairs; the ramond sector only multiplies against the unit
    nonzero = {k for k, tab in st.products.items() if any(not v.is_zero for v in tab.values())}
    assert len(nonzero) == 25
    unit = ((F(0),), ())
    for a, b in nonzero:
        if (F(1, 6),) in (a[0], b[0]):
            assert unit in (a, b)
    rep = check_degenerate_axioms(st)
    assert not rep.ok
    assert all(f.axiom == "trace'" for f in rep.failures)
    assert all("Fraction(1, 6)" in f.witness for f in rep.failures)


def test_a5_pairing_invariance_and_maximality():
    st = degenerate_structure(dualize(a_module(5)))
    assert pairing_invariance(st) == {"eta": False, "eta_prime": True}
    ok, notes = maximality_report(st)
    assert ok, notes


def test_e7_degenerate_structure():
    dual = dualize(e7_module())
    st = degenerate_structure(dual)
    assert st.ramond == {jp(1), jp(4), jp(7)}
    assert st.notes == ["3 Ramond-type sectors; their eta' blocks are zeroed"]
    rep = check_degenerate_axioms(st)
    axioms = sorted({f.axiom for f in rep.failures})
    assert axioms == ["invariant-pairing", "trace'"]
    # every failure touches a ramond label
    for f in rep.failures:
        assert any(repr(r) in f.witness for r in ((1, 3),)) or any(
            str(r) in f.witness for r in st.ramond
        )
    assert pairing_invariance(st) == {"eta": False, "eta_prime": True}
    ok, _ = maximality_report(st)
    assert ok


def test_e7_degenerate_products_respect_grading():
    dual = dualize(e7_module())
    st = degenerate_structure(dual)
    # x o y = xy under the association to the anti chiral ring; monomial keys
    # live over the fixed variables of the underlying element, here none
    out = st.product((jp(3), ()), (jp(5), ()))
    hits = {c for c, v in out.items() if not v.is_zero}
    assert hits == {(jp(8), ())}
    # y o y = y^2 over the label j, even though that label is ramond
    yy = st.product((jp(5), ()), (jp(5), ()))
    assert {c: v for c, v in yy.items() if not v.is_zero} == {(jp(1), (0, 2)): yy[(jp(1), (0, 2))]}
    assert yy[(jp(1), (0, 2))].to_fraction() == 1
    for (a, b), tab in st.products.items():
        qa, qb = dual.bidegree(a), dual.bidegree(b)
        want = (qa[0] + qb[0], qa[1] + qb[1])
        for c, v in tab.items():
            if not v.is_zero:
                assert dual.bidegree(c) == want


def test_degenerate_structure_requires_cyclic_labels():
    f = parse_polynomial("x^2+y^2", ("x", "y"))
    mod = build_module(f, [(F(1, 2), F(0)), (F(0), F(1, 2))])
    dual = dualize(mod)
    with pytest.raises(NotCyclic):
        degenerate_structure(dual)


def test_full_label_group_spectrum():
    # duals can also be taken with the whole group as labels
    mod = e7_module()
    dual = DualModule(mod, mod.group)
    assert len(dual.classes()) == len(mod.classes())
    specs = dual.module_spectrum()
    assert len(specs) == 17

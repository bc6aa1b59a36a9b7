from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mullat.errors import (
    CoefficientFieldNotClosed,
    IdentityFailure,
    InseparableStep,
    NotInValuationRing,
    PlaceUndefined,
    ZeroInput,
)
from mullat.multfield import parse_element
from mullat.puiseux import (
    QQ,
    ExtensionField,
    PuiseuxSeries,
    Subfield,
    descend_root,
    evaluate_poly,
    newton_puiseux,
    parse_series,
    parse_ypoly,
    prime_field,
)
from mullat.puiseux import upoly

F2 = prime_field(2)


def S(text, **kw):
    return parse_series(text, **kw)


# --- arithmetic ------------------------------------------------------------------


def test_arith_examples():
    assert S("(1+t)*(1-t)") == S("1-t^2")
    assert S("t^(1/2)*t^(1/2)") == S("t")
    x = S("3 + t^(1/3) + O(t^2)")
    assert (x - x).is_zero()


def test_invert_examples():
    assert str(S("1-t + O(t^5)").invert()) == "1 + t + t^2 + t^3 + t^4 + O(t^5)"
    assert S("t").invert() == S("t^(-1)")
    inv = S("2+t").invert(6)
    assert str(inv) == "1/2 - 1/4*t + 1/8*t^2 - 1/16*t^3 + 1/32*t^4 - 1/64*t^5 + O(t^6)"
    assert (inv * S("2+t")).truncate(6) == S("1 + O(t^6)")


def test_invert_zero():
    with pytest.raises(ZeroInput):
        PuiseuxSeries.big_o(3).invert()


def test_truncation_rules():
    a = S("1 + t + O(t^3)")
    b = S("t^(1/2) + O(t^2)")
    assert (a * b).trunc == Fraction(2)
    assert (a + b).trunc == Fraction(2)


def test_residue_examples():
    assert S("3+t+t^2").residue() == 3
    assert S("t^(1/2)+5*t").residue() == 0
    with pytest.raises(NotInValuationRing):
        S("t^(-1)").residue()


def test_print_parse_round_trip():
    for text in ["1 + 1/2*t - 1/8*t^2 + O(t^4)", "-t^(-1/2) + 3*t^(2/3) + O(t^(5/2))", "0", "O(1)", "t"]:
        assert str(S(text)) == text


def test_rayner_witness():
    assert S("t^(1/2) + t^(2/3)").ram == 6
    # over F_3 the 3-part of a denominator is allowed (perfect closure)
    assert parse_series("t^(1/3) + t^(1/2)", prime_field(3)).ram == 2


def test_subfield_preservation():
    K = ExtensionField(QQ, [Fraction(-2), Fraction(0), Fraction(1)])
    a = K.gen()
    s = PuiseuxSeries(K, [(0, a), (1, 3)])
    t = PuiseuxSeries(K, [(Fraction(1, 2), 1), (0, a + 1)])
    sub = Subfield(K, [a])
    rat = Subfield(K, [])
    assert (s * t).coefficients_in(sub) and (s * t).residue() in sub
    assert not (s * t).coefficients_in(rat)
    u = PuiseuxSeries(K, [(0, 5), (2, Fraction(1, 3))])
    assert (u * u).residue() in rat


# --- Newton-Puiseux ---------------------------------------------------------------


def residual_ok(coeffs, root, prec):
    val = evaluate_poly([c.with_field(root.field) for c in coeffs], root.series)
    return val.valuation() >= prec


def test_newton_ramified_monomial():
    roots = newton_puiseux(parse_ypoly("y^2-t"), 4)
    assert sorted(str(r.series) for r in roots) == ["-t^(1/2)", "t^(1/2)"]
    assert all(r.exact and r.multiplicity == 1 for r in roots)


def test_newton_square_root_of_one_plus_t():
    f = parse_ypoly("y^2-(1+t)")
    roots = newton_puiseux(f, 4)
    assert sorted(str(r.series) for r in roots) == [
        "-1 - 1/2*t + 1/8*t^2 - 1/16*t^3 + O(t^4)",
        "1 + 1/2*t - 1/8*t^2 + 1/16*t^3 + O(t^4)",
    ]
    assert all(residual_ok(f, r, 4) for r in roots)


def test_newton_conjugates_and_multiplicity():
    f = parse_ypoly("(y-t)^2*(y^2+1)")
    roots = newton_puiseux(f, 5)
    assert sum(r.count() for r in roots) == 4
    by_series = {str(r.series): r for r in roots}
    assert by_series["t"].multiplicity == 2
    assert any(r.conjugates == 2 for r in roots)


def test_newton_negative_valuation():
    roots = newton_puiseux(parse_ypoly("t*y-1"), 3)
    assert [str(r.series) for r in roots] == ["t^(-1)"]


def test_newton_char_p_separable():
    f = parse_ypoly("y^2+y+t", F2)
    roots = newton_puiseux(f, 4)
    assert sorted(str(r.series) for r in roots) == ["1 + t + t^2 + O(t^4)", "t + t^2 + O(t^4)"]
    assert all(residual_ok(f, r, 4) for r in roots)


def test_newton_artin_schreier_raises():
    with pytest.raises(InseparableStep):
        newton_puiseux(parse_ypoly("y^2+y+t^(-1)", F2), 4)


def test_newton_extension_cap():
    with pytest.raises(CoefficientFieldNotClosed) as info:
        newton_puiseux(parse_ypoly("y^5-y-1"), 2)
    assert info.value.minpoly is not None and len(info.value.minpoly) == 6


def test_newton_tower_roots():
    f = parse_ypoly("y^4-2*t^2")
    roots = newton_puiseux(f, 3)
    assert sum(r.count() for r in roots) == 4
    assert all(residual_ok(f, r, 3) for r in roots)


def test_extension_factoring():
    K = ExtensionField(QQ, [Fraction(-2), Fraction(0), Fraction(1)])
    _, fs = upoly.factor(K, [K.coerce(-2), K.zero(), K.one()])
    assert [len(g) for g, _ in fs] == [2, 2]


# --- root descent ---------------------------------------------------------------------


def test_descend_examples():
    r = descend_root(parse_element("x^2"), parse_element("x"), 2)
    assert r.verified and str(r.base) == "x^2"
    r = descend_root(parse_element("l^2*x^2"), parse_element("l*x"), 2, kill=["l"])
    assert r.point == {"l": 1}
    assert str(r.base) == "x^2" and str(r.image) == "x" and str(r.witness) == "l"


def test_descend_place_undefined():
    with pytest.raises(PlaceUndefined):
        descend_root(parse_element("x^-2"), parse_element("x^-1"), 2, kill=["x"], point={"x": 0})


def test_descend_identity_failure():
    with pytest.raises(IdentityFailure):
        descend_root(parse_element("x^3"), parse_element("x"), 2)
    with pytest.raises(IdentityFailure):
        descend_root(parse_element("x^3"), parse_element("x"), 2, multiplier=parse_element("x"), kill=["x"])


# --- properties ---------------------------------------------------------------------------

exps = st.fractions(min_value=0, max_value=4, max_denominator=3)
coeff = st.integers(-5, 5)
series = st.lists(st.tuples(exps, coeff), min_size=0, max_size=4).map(lambda ts: PuiseuxSeries(QQ, ts, Fraction(5)))


@settings(max_examples=80, deadline=None)
@given(series, series)
def test_residue_is_a_ring_homomorphism(a, b):
    assert (a + b).residue() == a.residue() + b.residue()
    assert (a * b).residue() == a.residue() * b.residue()


@settings(max_examples=80, deadline=None)
@given(series, series)
def test_valuation_axioms(a, b):
    if a.terms and b.terms:
        assert (a * b).valuation() == a.valuation() + b.valuation()
        s = a + b
        if s.terms:
            assert s.valuation() >= min(a.valuation(), b.valuation())
            if a.valuation() != b.valuation():
                assert s.valuation() == min(a.valuation(), b.valuation())


@settings(max_examples=60, deadline=None)
@given(series.filter(lambda s: bool(s.terms)))
def test_invert_round_trip(a):
    one = a * a.invert()
    assert (one - 1).is_zero()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 3), st.integers(-3, 3)), min_size=1, max_size=3), st.integers(-3, 3))
def test_newton_quadratic_residuals(c0_terms, c1):
    c0 = PuiseuxSeries(QQ, [(e, c) for e, c in c0_terms])
    f = [c0, PuiseuxSeries.constant(Fraction(c1)), PuiseuxSeries.constant(Fraction(1))]
    roots = newton_puiseux(f, 5)
    assert sum(r.count() for r in roots) == 2
    for r in roots:
        assert residual_ok(f, r, 5)
        assert r.series.ram >= 1

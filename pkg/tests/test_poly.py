import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tamecheck.errors import ContextMismatch, ValidationError
from tamecheck.exprparse import parse_in_gens
from tamecheck.poly import (
    QQ,
    Arc,
    Polynomial,
    arc_compose,
    arc_order,
    t_expansion,
    translate_to_point,
)

XT = ("x", "t")
XYT = ("x", "y", "t")
XYZT = ("x", "y", "z", "t")
ABCT = ("a", "b", "c", "t")


def P(text, gens=XYT):
    return parse_in_gens(text, gens)


def test_product_of_conjugates():
    assert P("x+t", XT) * P("x-t", XT) == P("x^2 - t^2", XT)


def test_zero_is_additive_identity():
    p = P("x*y - 3*t")
    assert p + Polynomial.zero(XYT) == p


def test_binomial_cube():
    assert P("x+y") ** 3 == P("x^3 + 3*x^2*y + 3*x*y^2 + y^3")


def test_no_zero_coefficients_stored():
    p = P("x") - P("x")
    assert p.is_zero() and p.terms == {}


def test_mixing_variable_lists_is_an_error():
    with pytest.raises(ContextMismatch):
        P("x", XT) + P("x", XYT)


def test_partial_derivatives():
    F = P("y^2*(x^2-(y-t)^2)")
    assert F.diff("x") == P("2*x*y^2")
    G = P("y^2 + x^2*(t*z - x)", XYZT)
    assert G.diff("t") == P("x^2*z", XYZT)
    assert Polynomial.constant(XYT, 7).diff("x").is_zero()


def test_t_expansion_of_three_line_family():
    f0, f1, f2 = t_expansion(P("y^2*(x^2-(y-t)^2)"), "t")
    assert f0 == parse_in_gens("x^2*y^2 - y^4", ("x", "y"))
    assert f1 == parse_in_gens("2*y^3", ("x", "y"))
    assert f2 == parse_in_gens("-y^2", ("x", "y"))


def test_t_expansion_constant_family():
    assert len(t_expansion(P("x^2 + y^2"), "t")) == 1


def test_t_expansion_quintic_pair():
    f0, f1 = t_expansion(P("a^5+b^5+a^6*b^6*c^2+t*a^3*b^3", ABCT), "t")
    assert f0 == parse_in_gens("a^5+b^5+a^6*b^6*c^2", ("a", "b", "c"))
    assert f1 == parse_in_gens("a^3*b^3", ("a", "b", "c"))


def test_t_expansion_rejects_coefficients_alive_at_origin():
    with pytest.raises(ValidationError):
        t_expansion(P("x^2 + t"), "t")


def test_slice_at_t_zero():
    F = P("y^2*(x^2-(y-t)^2)")
    assert F.subs({"t": 0}, gens=("x", "y")) == parse_in_gens("y^2*(x^2-y^2)", ("x", "y"))


def test_substitution_of_polynomials():
    g = parse_in_gens("u*v^4 + 16*u^2", ("u", "v"))
    F = P("y^2*(x^2-(y-t)^2)")
    pulled = g.subs({"u": F, "v": P("t")}, gens=XYT)
    assert pulled == F * P("t") ** 4 + F * F * 16


def test_translation_to_a_point():
    assert translate_to_point(P("x^2", ("x",)), (1,)) == P("x^2 + 2*x + 1", ("x",))
    p = P("x*y - t^3")
    assert translate_to_point(p, (0, 0, 0)) == p
    F = P("y^2*(x^2-(y-t)^2)")
    moved = translate_to_point(F, (1, 0, 0))
    assert moved.constant_term() == F.evaluate((1, 0, 0)) == 0


@settings(max_examples=60, deadline=None)
@given(st.tuples(*[st.fractions(-3, 3, max_denominator=3)] * 3), st.tuples(*[st.integers(-3, 3)] * 3))
def test_translation_value_shift(point, probe):
    p = P("x^2*y - 3*y*t + t^3 - x")
    pt = tuple(QQ(a.numerator, a.denominator) for a in point)
    moved = translate_to_point(p, pt)
    assert moved.evaluate(tuple(QQ(b) for b in probe)) == p.evaluate(tuple(a + b for a, b in zip(pt, probe)))


def test_arc_composition_examples():
    xyz = ("x", "y", "z")
    arc = Arc.from_strings(["s", "s^2", "0"])
    assert arc_compose(parse_in_gens("x*y", xyz), arc) == parse_in_gens("s^3", ("s",))
    d = parse_in_gens("6*y^2", ("x", "y"))
    assert arc_compose(d, Arc.from_strings(["s", "s"])) == parse_in_gens("6*s^2", ("s",))
    zero_arc = Arc.from_strings(["0", "0"])
    assert arc_compose(parse_in_gens("x + y + 5", ("x", "y")), zero_arc) == Polynomial.constant(("s",), 5)


def test_arc_orders():
    xy = ("x", "y")
    assert arc_order(parse_in_gens("2*x*y^2", xy), Arc.from_strings(["s", "s"])).order == 3
    assert math.isinf(arc_order(Polynomial.zero(xy), Arc.from_strings(["s", "s^2"])).order)
    F = P("y^2*(x^2-(y-t)^2)")
    arc = Arc.from_strings(["0", "s", "2*s"])
    r = arc_order(F.diff("t"), arc)
    assert (r.order, r.leading_coeff) == (3, -2)
    assert all(math.isinf(arc_order(F.diff(v), arc).order) for v in ("x", "y"))


def test_arc_through_a_base_point():
    arc = Arc.from_strings(["s", "0"], (QQ(1), QQ(2)))
    assert arc.point_at_zero() == (1, 2)
    assert arc_compose(parse_in_gens("x*y", ("x", "y")), arc) == parse_in_gens("2*s + 2", ("s",))


def test_arc_coordinates_must_vanish_at_zero():
    with pytest.raises(ValueError):
        Arc.from_strings(["s + 1", "s"])


def test_monomial_and_general_paths_agree():
    p = P("x^3 - 2*x*y*t + t^5 - y^2")
    mono = Arc.from_strings(["2*s", "-s^2", "1/2*s^3"])
    general = Arc.from_strings(["2*s", "-s^2", "1/2*s^3"], (QQ(0),) * 3)  # base point forces the general path
    assert arc_order(p, mono) == arc_order(p, general)
    two_term = Arc.from_strings(["2*s + s^3", "-s^2", "s"])
    assert arc_order(p, two_term).order == min(m[0] for m in arc_compose(p, two_term).terms)


def test_string_form_is_canonical():
    assert str(P("t + y^2 + x^2 - 3/2*x*y")) == "x^2 - 3/2*x*y + y^2 + t"


def test_monomial_arc_matches_parsed_arc():
    assert Arc.monomial([(2, 1), None, (QQ(1, 2), 3)]) == Arc.from_strings(["2*s", "0", "1/2*s^3"])

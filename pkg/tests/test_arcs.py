import itertools
import math

from tamecheck.arcs import ArcCatalog, arcs_inside, coefficient_height
from tamecheck.exprparse import parse_in_gens
from tamecheck.poly import QQ, arc_order


def test_heights():
    assert coefficient_height(1) == 0
    assert coefficient_height(QQ(-1, 2)) == 1
    assert coefficient_height(3) == 2


def test_catalog_is_deterministic_and_bounded():
    a = [str(arc) for arc in ArcCatalog(3, max_arcs=500)]
    b = [str(arc) for arc in ArcCatalog(3, max_arcs=500)]
    assert a == b
    assert len(a) == 500
    assert len(set(a)) == 500


def test_catalog_starts_with_cheapest_arcs():
    first = [arc.strings() for arc in itertools.islice(ArcCatalog(2), 4)]
    assert first[0] == ["0", "s"] or first[0] == ["s", "0"]
    assert all(any(c != "0" for c in coords) for coords in first)


def test_frozen_coordinates_stay_zero():
    for arc in ArcCatalog(3, max_arcs=200, frozen=frozenset({1})):
        assert arc.coords[1].is_zero()


def test_arcs_inside_the_y_axis():
    xy = ("x", "y")
    inside = list(itertools.islice(arcs_inside([parse_in_gens("x", xy)], ArcCatalog(2, max_arcs=300)), 5))
    assert inside
    for arc in inside:
        assert arc.coords[0].is_zero()
        assert math.isinf(arc_order(parse_in_gens("x^2 + x*y", xy), arc).order)


def test_arcs_inside_with_a_nonvanishing_requirement():
    xy = ("x", "y")
    cusp = parse_in_gens("x^3 - y^2", xy)
    got = next(arcs_inside([cusp], ArcCatalog(2, max_arcs=3000), [parse_in_gens("x", xy)]))
    assert math.isinf(arc_order(cusp, got).order)
    assert not got.coords[0].is_zero()

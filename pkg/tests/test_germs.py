import math

import pytest

from tamecheck import corpus
from tamecheck.exprparse import DeformationProblem, VarContext, parse_in_gens, parse_problem_file
from tamecheck.germs import (
    build_singular_loci,
    check_cond0,
    check_sing_equal,
    check_tame,
    discriminant,
    divide_linear,
    germ_reduce,
    grid_points,
    milnor_minors,
    milnor_set,
    ray_vanishes,
    real_branch_cover,
)
from tamecheck.ideals import Ideal, ideal_equal_radical, ideal_member
from tamecheck.poly import QQ, arc_order
from tamecheck.verdict import FAILS, HOLDS

UV = ("u", "v")


def U(text):
    return parse_in_gens(text, UV)


def loci_of(name):
    return build_singular_loci(corpus.load(name))


def test_loci_of_three_lines():
    L = loci_of("three_lines")
    assert L.f0 == parse_in_gens("x^2*y^2 - y^4", ("x", "y"))
    assert L.f1 == parse_in_gens("2*y^3", ("x", "y"))
    assert len(L.sing_F.generators) == 3 and len(L.sing_Ftilde.generators) == 2


# oracle values (sympy elimination): u*(t^4 + 16*u), u*(4*t^3 + 27*u) and u
@pytest.mark.parametrize("name, expected", [
    ("three_lines", "u*(v^4 + 16*u)"),
    ("cubic_surface", "u*(4*v^3 + 27*u)"),
    ("z_axis", "u"),
])
def test_discriminants(name, expected):
    d = discriminant(loci_of(name))
    assert ideal_equal_radical(d.ideal, Ideal([U(expected)], UV))


def test_germ_reduce():
    assert germ_reduce(U("u^3*v^2*(1 + u)")) == U("u*v")
    g = U("u*v^4 + 27/4*u^2")
    assert germ_reduce(g) == g


def test_divide_linear():
    g = U("(u - v^2)*(u + 1)")
    assert divide_linear(g, "u", U("v^2")) == U("u + 1")
    assert divide_linear(U("u + v"), "u", U("v^2")) is None


def test_cubic_surface_minor():
    L = loci_of("cubic_surface")
    minors = {(i, j): p for i, j, p in milnor_minors(L)}
    xyzt = L.full_ring
    # oracle value for y*dF/dz - z*dF/dy
    assert minors[(1, 2)] == parse_in_gens("y*(x - t)*(y^2 - 2*z^2)", xyzt)


def test_cond0_on_the_corpus():
    for name in ("three_lines", "cubic_surface", "z_axis"):
        assert check_cond0(loci_of(name)).status == HOLDS, name


def test_sing_equal_on_z_axis_and_three_lines():
    assert check_sing_equal(loci_of("z_axis")).status == HOLDS
    v = check_sing_equal(loci_of("three_lines"))
    assert v.status == FAILS


def test_tame_fails_on_z_axis_with_a_ray():
    L = loci_of("z_axis")
    d = discriminant(L)
    M = milnor_set(L, d)
    v = check_tame(L, M, witness_points=[(0, 0, 1)], disc=d)
    assert v.status == FAILS and v.evidence["kind"] == "ray-witness"
    point = tuple(QQ(a) for a in v.evidence["point"])
    assert point[:2] == (0, 0) and point[3] == 0
    gens = [parse_in_gens(g, L.spatial_ring) for g in v.evidence["ideal"]]
    assert all(g.evaluate(point[:3]) == 0 for g in gens)
    assert ray_vanishes(gens, point[:3])


def test_tame_holds_without_caveat_on_three_lines():
    L = loci_of("three_lines")
    d = discriminant(L)
    v = check_tame(L, milnor_set(L, d), disc=d)
    assert v.status == HOLDS and v.flag is None


def test_branch_cover_reaches_every_branch():
    L = loci_of("cubic_surface")
    d = discriminant(L)
    arcs = real_branch_cover(L, d)
    assert arcs
    for arc in arcs:
        assert all(math.isinf(arc_order(p, arc).order) for p in L.spatial_partials)


def test_saturated_milnor_set_of_cubic_surface():
    L = loci_of("cubic_surface")
    M = milnor_set(L, discriminant(L))
    xyzt = L.full_ring
    assert ideal_member(parse_in_gens("y^2 - 2*z^2", xyzt), M.saturated_ideal)


def test_grid_points_order():
    pts = grid_points(2, extra=[(5, 5)])
    assert pts[0] == (5, 5)
    assert (0, 0) not in pts
    assert sum(1 for a in pts[1] if a) == 1


def test_x_squared_family():
    pr = parse_problem_file("vars = x y\nF = x^2 + t*y^2\n")
    L = build_singular_loci(pr)
    # Sing F~ contains the line x = t = 0, where dF/dt = y^2 is nonzero
    v = check_cond0(L)
    assert v.status == FAILS
    # for t > 0 the Milnor set contains x = 0, y != 0, whose closure is all of Sing F0
    d = discriminant(L)
    assert check_tame(L, milnor_set(L, d), disc=d).status == FAILS


def test_loci_need_a_context_for_bare_polynomials():
    with pytest.raises(ValueError):
        build_singular_loci(parse_in_gens("x^2", ("x", "t")))
    ctx = VarContext(("x",), "t")
    L = build_singular_loci(DeformationProblem(ctx, parse_in_gens("x^2", ("x",))))
    assert L.dF_dt.is_zero()

from tamecheck import corpus
from tamecheck.closure import closure_member, verify_closure_evidence
from tamecheck.conditions import (
    ClosureSettings,
    check_cond,
    check_cond2,
    implied,
    jacobian_criterion,
    arc_order_diagnostics,
)
from tamecheck.exprparse import parse_problem_file
from tamecheck.germs import build_singular_loci
from tamecheck.poly import Arc
from tamecheck.verdict import FAILS, HOLDS, ON_SAMPLE, UNDETERMINED


def loci_of(name):
    return build_singular_loci(corpus.load(name))


def test_cond2_fails_on_three_lines_along_a_singular_line():
    L = loci_of("three_lines")
    v = check_cond2(L)
    assert v.status == FAILS
    assert verify_closure_evidence(v.evidence)
    # the witness runs inside Sing F~, where every spatial partial vanishes
    assert v.evidence["ord_J"] == "inf"


def test_cond_holds_near_a_point_of_sing_f0():
    L = loci_of("three_lines")
    v = closure_member(L.dF_dt, list(L.spatial_partials), base=(1, 0, 0), avoid=list(L.spatial_partials))
    assert v.status == HOLDS
    assert verify_closure_evidence(v.evidence)


def test_cond_on_three_lines_holds_on_every_sample():
    v = check_cond(loci_of("three_lines"), ClosureSettings(sample_arcs=2000, max_base_points=2))
    assert v.status == UNDETERMINED and v.flag == ON_SAMPLE
    assert all(p["status"] == HOLDS for p in v.evidence["points"])


def test_cond_fails_on_cubic_surface():
    v = check_cond(loci_of("cubic_surface"))
    assert v.status == FAILS
    assert verify_closure_evidence(v.evidence)
    assert v.evidence["avoid_order"] != "inf"


def test_jacobian_criterion_on_quintic_pair():
    v = jacobian_criterion(loci_of("quintic_pair"))
    assert v.status == HOLDS
    items = v.evidence["items"]
    assert {(it["i"], it["j"]) for it in items} == {("a", 1), ("b", 1), ("c", 1)}
    for it in items:
        assert it["status"] == HOLDS and it["evidence"]["m"] <= 6
        assert verify_closure_evidence(it["evidence"])


def test_jacobian_criterion_fails_on_three_lines():
    v = jacobian_criterion(loci_of("three_lines"))
    assert v.status == FAILS and v.evidence["kind"] == "arc-witness"
    assert (v.evidence["i"], v.evidence["j"]) in {("x", 1), ("y", 1), ("x", 2), ("y", 2)}
    assert verify_closure_evidence(v.evidence)


def test_order_diagnostics_along_the_diagonal():
    L = loci_of("quintic_pair")
    d = arc_order_diagnostics(L, Arc.from_strings(["s", "s", "0"]))
    assert d.applicable and d.kappa == 4 and d.ell == "a"
    assert d.coefficient_orders[1] == 6
    assert d.consistent


def test_order_diagnostics_refuses_bad_arcs():
    L = loci_of("quintic_pair")
    assert not arc_order_diagnostics(L, Arc.from_strings(["s", "s"])).applicable
    off = Arc.from_strings(["s", "0", "0"], (1, 0, 0))
    assert not arc_order_diagnostics(L, off).applicable


def test_constant_family_is_trivially_fine():
    L = build_singular_loci(parse_problem_file("vars = x y\nF = x^2 + y^3\n"))
    assert jacobian_criterion(L).status == HOLDS
    assert check_cond(L).status == HOLDS
    assert check_cond2(L).status == HOLDS


def test_implied_verdict_shape():
    v = implied("jacobian", "reason", "germ at the origin", {"status": "UNDETERMINED"})
    assert v.status == HOLDS and v.evidence["by"] == "jacobian" and v.evidence["direct"]

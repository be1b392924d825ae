"""Independent re-check of every certificate and witness in a JSON report."""

from __future__ import annotations

import math
from typing import Iterator

from .closure import verify_closure_evidence
from .errors import BudgetExceeded, TamecheckError
from .germs import SingularLoci, build_singular_loci, divide_linear, milnor_minors, ray_vanishes
from .groebner import Budget
from .ideals import DIM_ZERO, EMPTY_AT_ORIGIN, Ideal, LocalLift, ideal_member, local_dim_zero, local_radical_member
from .exprparse import parse_in_gens, parse_rational
from .poly import ARC_VAR, Arc, Polynomial, arc_compose, arc_order, t_expansion, translate_to_point
from .report import IMPLICATIONS, OK, implication_audit, problem_from_dict
from .verdict import HOLDS, UNDETERMINED, Verdict

# implied verdicts may only cite these premises
IMPLIED_BY = {
    "cond2": {"jacobian"},
    "cond": {"cond2", "jacobian"},
    "tame": {"jacobian", "cond", "cond2"},
}


class _Checker:
    def __init__(self, doc: dict, loci: SingularLoci, verdicts: dict[str, Verdict], budget: Budget):
        self.doc = doc
        self.loci = loci
        self.verdicts = verdicts
        self.budget = budget
        self.full = loci.full_ring
        self.spatial = loci.spatial_ring

    # expected (f, J, ring) for each check
    def closure_target(self, name: str, ev: dict) -> tuple[Polynomial, list[Polynomial]]:
        if name in ("cond", "cond2"):
            return self.loci.dF_dt, list(self.loci.spatial_partials)
        if name == "jacobian":
            coeffs = t_expansion(self.loci.F, self.loci.ctx.param)
            j = int(ev["j"])
            if not 1 <= j < len(coeffs) or ev["i"] not in self.spatial:
                raise ValueError(f"no coefficient derivative d_{ev['i']} f_{j}")
            return coeffs[j].diff(ev["i"]), self.loci.f0_partials()
        raise ValueError(f"closure evidence is not expected for {name}")

    def closure(self, name: str, ev: dict) -> Iterator[str]:
        f, J = self.closure_target(name, ev)
        ring = self.full if name in ("cond", "cond2") else self.spatial
        if tuple(ev["ring"]) != ring:
            yield f"ring {ev['ring']} differs from {list(ring)}"
            return
        base = ev.get("base")
        base = None if base is None else tuple(parse_rational(a) for a in base)
        if base is not None and name == "cond":
            n = len(self.spatial)
            if base[n] or not any(base) or any(g.evaluate(base[:n]) for g in self.loci.f0_partials()):
                yield "base point is not a point of Sing F0 other than the origin at t = 0"
        if ev["kind"] == "closure-certificate" and base is not None and any(base):
            f = translate_to_point(f, base)
            J = [translate_to_point(g, base) for g in J]
        if parse_in_gens(ev["f"], ring) != f:
            yield f"certified function {ev['f']} is not the expected {f}"
        J = [g for g in J if not g.is_zero()]
        if sorted(str(g) for g in Ideal(J, ring).generators) != sorted(ev["J"]):
            yield "ideal generators do not match the problem"
        if ev["kind"] == "arc-witness" and name == "cond":
            avoid = ev.get("avoid") or []
            if sorted(avoid) != sorted(str(g) for g in self.loci.spatial_partials):
                yield "witness arc is not checked against Sing F~"
        if not verify_closure_evidence(ev):
            yield f"{ev['kind']} does not re-verify"

    def germ_target(self, name: str) -> tuple[Polynomial, Ideal]:
        if name == "cond0":
            return self.loci.f1, self.loci.sing_F0
        if name == "sing_equal":
            return self.loci.dF_dt, self.loci.sing_Ftilde
        raise ValueError(f"germ evidence is not expected for {name}")

    def germ(self, name: str, ev: dict) -> Iterator[str]:
        f, I = self.germ_target(name)
        ring = I.ring
        if tuple(ev["ring"]) != ring or parse_in_gens(ev["f"], ring) != f or ev["J"] != I.strings():
            yield "function or ideal does not match the problem"
            return
        if ev["kind"] == "radical-certificate":
            lift = LocalLift(parse_in_gens(ev["unit"], ring),
                             tuple(parse_in_gens(c, ring) for c in ev["cofactors"]))
            if not lift.check(f ** int(ev["power"]), list(I.generators)):
                yield "radical certificate does not expand"
        elif ev["kind"] == "radical-membership":
            if not local_radical_member(f, I, self.budget):
                yield "radical membership does not recompute"
        elif ev["kind"] == "slice-witness":
            arc = Arc.from_strings(ev["arc"])
            if any(not math.isinf(arc_order(g, arc).order) for g in I.generators):
                yield "witness arc leaves the zero set"
            if arc_order(f, arc).order != int(ev["ord_f"]):
                yield "witness order does not recompute"

    def tame_ideal(self) -> tuple[Ideal, Ideal]:
        """The sliced Milnor ideal as reported, and the reported saturated ideal."""
        m = self.doc["milnor_set"]
        if m.get("status") != "computed":
            raise ValueError("tameness evidence needs a computed Milnor set")
        sat = Ideal([parse_in_gens(g, self.full) for g in m["saturated"]], self.full)
        t = self.loci.ctx.param
        sliced = [g.subs({t: 0}, gens=self.spatial) for g in sat.generators]
        return Ideal(sliced + list(self.loci.sing_F0.generators), self.spatial), sat

    def tame(self, ev: dict, v: Verdict) -> Iterator[str]:
        T, sat = self.tame_ideal()
        if ev["ideal"] != T.strings():
            yield "tameness ideal does not match the reported Milnor set"
            return
        minors = [p for _, _, p in milnor_minors(self.loci)]
        if [str(p) for p in minors] != self.doc["milnor_set"]["minors"]:
            yield "Milnor minors do not match the problem"
        try:
            if not all(ideal_member(p, sat, budget=self.budget) for p in minors):
                yield "saturated Milnor ideal does not contain the minors"
        except BudgetExceeded:
            pass
        kind = ev["kind"]
        if kind == "local-dimension":
            dv = local_dim_zero(T, self.budget)
            if dv.value != ev["value"] or [[a, e] for a, e in dv.certificate] != ev["pure_powers"]:
                yield "local dimension does not recompute"
            if v.flag is None and "discriminant" in ev:
                yield from self.branch_cover(ev["discriminant"])
            elif v.flag is None:
                raw = Ideal([p.subs({self.loci.ctx.param: 0}, gens=self.spatial) for p in minors]
                            + list(self.loci.sing_F0.generators), self.spatial)
                if local_dim_zero(raw, self.budget).value not in (DIM_ZERO, EMPTY_AT_ORIGIN):
                    yield "unconditional HOLDS without a zero-dimensional unsaturated slice"
        elif kind == "ray-witness":
            point = tuple(parse_rational(a) for a in ev["point"])
            n = len(self.spatial)
            if len(point) != n + 1 or point[n] or not any(point[:n]):
                yield "ray witness must be a nonzero point with t = 0"
                return
            if not ray_vanishes(list(T.generators), point[:n]):
                yield "ray leaves the tameness zero set"
            if any(g.evaluate(point) for g in sat.generators):
                yield "saturated Milnor generators do not vanish at the witness"
            if any(g.evaluate(point[:n]) for g in self.loci.sing_F0.generators):
                yield "witness is not on Sing F0"
        elif kind == "curve-witness":
            arc = Arc.from_strings(ev["arc"])
            if any(not math.isinf(arc_order(g, arc).order) for g in T.generators):
                yield "curve witness leaves the tameness zero set"
        else:
            yield f"unexpected tameness evidence {kind}"

    def branch_cover(self, d: dict) -> Iterator[str]:
        disc = self.doc["discriminant"]
        if disc.get("generators") != d["generators"] or len(d["generators"]) != 1:
            yield "branch cover refers to a different discriminant"
            return
        u, v = d["vars"]
        target = (u, v)
        g = parse_in_gens(d["generators"][0], target)
        V = Polynomial.var(target, v)
        for coords in d["branch_arcs"]:
            arc = Arc.from_strings(coords)
            if len(coords) != len(self.full):
                yield "branch arc has the wrong arity"
                return
            if any(not math.isinf(arc_order(p, arc).order) for p in self.loci.spatial_partials):
                yield "branch arc leaves Sing F~"
                return
            tc = arc.coords[-1]
            c = tc.terms.get((1,))
            if len(tc.terms) != 1 or c is None:
                yield "branch arc must have t linear in s"
                return
            phi = arc_compose(self.loci.F, arc).subs({ARC_VAR: V * (1 / c)}, gens=target)
            q = divide_linear(g, u, phi)
            if q is None:
                yield "branch does not divide the discriminant"
                return
            while q is not None:
                g, q = q, divide_linear(q, u, phi)
        if not g.constant_term():
            yield "branches do not exhaust the discriminant germ"

    def verdict(self, name: str, v: Verdict, ev: dict | None = None) -> Iterator[str]:
        ev = v.evidence if ev is None else ev
        kind = ev.get("kind")
        if kind in ("note", "budget"):
            if v.status != UNDETERMINED:
                yield f"{v.status} without evidence"
            return
        if kind in ("closure-certificate", "arc-witness"):
            yield from self.closure(name, ev)
        elif kind in ("radical-certificate", "radical-membership", "slice-witness"):
            yield from self.germ(name, ev)
        elif kind == "jacobian-certificates":
            coeffs = t_expansion(self.loci.F, self.loci.ctx.param)
            wanted = {(i, j) for j in range(1, len(coeffs)) for i in self.spatial}
            seen = set()
            for item in ev["items"]:
                seen.add((item["i"], int(item["j"])))
                sub = Verdict(item["status"], item["evidence"])
                for msg in self.verdict("jacobian", sub, {**item["evidence"], "i": item["i"], "j": item["j"]}):
                    yield f"d_{item['i']} f_{item['j']}: {msg}"
            if v.status == HOLDS and (seen != wanted or any(it["status"] != HOLDS for it in ev["items"])):
                yield "not every coefficient derivative is certified"
        elif kind == "implied":
            src = self.verdicts.get(ev["by"])
            if ev["by"] not in IMPLIED_BY.get(name, ()) or src is None or not src.binding or src.status != HOLDS:
                yield f"implication from {ev['by']} is not backed by a binding HOLDS"
        elif kind == "trivial":
            if not self.loci.dF_dt.is_zero():
                yield "F depends on the parameter"
        elif kind == "vacuous":
            if ev["ideal"] != self.loci.sing_F0.strings() or \
                    local_dim_zero(self.loci.sing_F0, self.budget).value not in (DIM_ZERO, EMPTY_AT_ORIGIN):
                yield "Sing F0 is not isolated"
        elif kind == "sample":
            for point in ev["points"]:
                sub = Verdict(point["status"], point["evidence"])
                for msg in self.verdict(name, sub):
                    yield f"sample {point['base']}: {msg}"
        elif kind in ("local-dimension", "ray-witness", "curve-witness") and name == "tame":
            yield from self.tame(ev, v)
        else:
            yield f"unknown evidence kind {kind!r}"


def verify_report(doc: dict, budget: Budget | None = None) -> list[str]:
    """Failures found while re-checking ``doc``; an empty list means the report verifies."""
    budget = budget or Budget()
    try:
        problem = problem_from_dict(doc["problem"])
        verdicts = {k: Verdict.from_dict(v) for k, v in doc["verdicts"].items()}
    except (TamecheckError, KeyError, ValueError) as exc:
        return [f"report cannot be loaded: {exc}"]
    loci = build_singular_loci(problem)
    failures = []
    if doc["loci"] != loci.summary():
        failures.append("singular loci do not match the problem")
    checker = _Checker(doc, loci, verdicts, budget)
    for name, v in sorted(verdicts.items()):
        try:
            failures.extend(f"{name}: {msg}" for msg in checker.verdict(name, v))
        except (TamecheckError, KeyError, ValueError, TypeError) as exc:
            failures.append(f"{name}: evidence is malformed ({exc})")
    audit = implication_audit(verdicts)
    if audit != doc["audit"]:
        failures.append("implication audit does not match the verdicts")
    pairs = {(a["premise"], a["conclusion"]) for a in doc["audit"]}
    if pairs != set(IMPLICATIONS):
        failures.append("implication audit is incomplete")
    failures.extend(f"audit violation: {a['premise']} => {a['conclusion']}" for a in audit if a["status"] != OK)
    return failures

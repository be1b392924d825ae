"""Integral-closure membership: certificates ``u*f^m = sum c_k * prod(J)`` and arc witnesses.

A certificate is an identity in the polynomial ring with a unit ``u``
(``u(0) != 0``), which places ``f^m`` in the localized ideal ``J^m`` and
hence ``f`` in the integral closure of ``J`` at the origin.  A witness is an
arc along which ``f`` has strictly smaller order than every generator of ``J``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .arcs import ArcCatalog
from .errors import BudgetExceeded
from .exprparse import parse_in_gens
from .groebner import Budget
from .ideals import Ideal, ideal_member, ideal_power, local_lift
from .poly import QQ, Arc, Polynomial, arc_order, translate_to_point
from .verdict import FAILS, HOLDS, UNDETERMINED, Verdict

DEFAULT_MAX_POWER = 6


def _order_json(k) -> int | str:
    return "inf" if math.isinf(k) else int(k)


def _order_from_json(v) -> float:
    return math.inf if v == "inf" else int(v)


@dataclass(frozen=True)
class ClosureCertificate:
    m: int
    unit: Polynomial
    terms: tuple[tuple[tuple[int, ...], Polynomial], ...]

    def expand(self, generators: Sequence[Polynomial]) -> Polynomial:
        ring = self.unit.gens
        total = Polynomial.zero(ring)
        for idx, cof in self.terms:
            prod = cof
            for i in idx:
                prod = prod * generators[i]
            total = total + prod
        return total

    def verify(self, f: Polynomial, generators: Sequence[Polynomial]) -> bool:
        if self.m < 1 or not self.unit.constant_term():
            return False
        if any(len(idx) != self.m or not all(0 <= i < len(generators) for i in idx) for idx, _ in self.terms):
            return False
        return self.unit * f ** self.m == self.expand(generators)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "unit": str(self.unit),
            "terms": [{"product": list(idx), "cofactor": str(c)} for idx, c in self.terms],
        }

    @classmethod
    def from_dict(cls, d: dict, ring: Sequence[str]) -> "ClosureCertificate":
        return cls(
            int(d["m"]),
            parse_in_gens(d["unit"], ring),
            tuple((tuple(t["product"]), parse_in_gens(t["cofactor"], ring)) for t in d["terms"]),
        )


@dataclass(frozen=True)
class ArcWitness:
    arc: Arc
    ord_f: int
    ord_J: float
    avoid_order: float | None = None

    def verify(self, f: Polynomial, generators: Sequence[Polynomial],
               avoid: Sequence[Polynomial] | None = None) -> bool:
        of = arc_order(f, self.arc).order
        oj = min((arc_order(g, self.arc).order for g in generators), default=math.inf)
        if not (of < oj and of == self.ord_f and oj == self.ord_J):
            return False
        if avoid:
            oa = min(arc_order(g, self.arc).order for g in avoid)
            if math.isinf(oa):
                return False
        return True

    def to_dict(self) -> dict:
        d = {
            "arc": self.arc.strings(),
            "base": None if self.arc.base_point is None else [str(a) for a in self.arc.base_point],
            "ord_f": self.ord_f,
            "ord_J": _order_json(self.ord_J),
        }
        if self.avoid_order is not None:
            d["avoid_order"] = _order_json(self.avoid_order)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ArcWitness":
        base = d.get("base")
        arc = Arc.from_strings(d["arc"], None if base is None else tuple(QQ(a) for a in base))
        ao = d.get("avoid_order")
        return cls(arc, int(d["ord_f"]), _order_from_json(d["ord_J"]),
                   None if ao is None else _order_from_json(ao))


def arc_falsify(f: Polynomial, J: Sequence[Polynomial], base: Sequence | None, catalog: ArcCatalog,
                avoid: Sequence[Polynomial] | None = None) -> ArcWitness | None:
    """First catalog arc (based at ``base``) with ``ord f < min ord J``.

    With ``avoid`` the arc must also leave the zero set of ``avoid``: some
    avoid-generator has finite order along it.
    """
    if base is not None and any(base):
        f_loc = translate_to_point(f, base)
        J_loc = [translate_to_point(g, base) for g in J]
        avoid_loc = [translate_to_point(g, base) for g in avoid] if avoid else None
    else:
        base = None
        f_loc, J_loc, avoid_loc = f, list(J), list(avoid) if avoid else None
    for arc in catalog:
        of = arc_order(f_loc, arc).order
        if math.isinf(of):
            continue
        oj = math.inf
        for g in J_loc:
            o = arc_order(g, arc).order
            if o <= of:
                oj = o
                break
            oj = min(oj, o)
        if oj <= of:
            continue
        oa = None
        if avoid_loc:
            oa = min(arc_order(g, arc).order for g in avoid_loc)
            if math.isinf(oa):
                continue
        placed = arc if base is None else Arc(arc.coords, tuple(base))
        return ArcWitness(placed, int(of), oj, oa)
    return None


def certify_power(f: Polynomial, J: Ideal, m: int, budget: Budget | None = None) -> ClosureCertificate | None:
    """Certificate for ``f^m`` in the local ideal ``J^m``, or None."""
    power = ideal_power(J, m, max_gens=(budget.max_gens if budget else 5000))
    fm = f ** m
    if not ideal_member(fm, power.ideal, local=True, budget=budget):
        return None
    lift = local_lift(fm, power.ideal, budget)
    terms = tuple((power.products[k], c) for k, c in enumerate(lift.cofactors) if not c.is_zero())
    return ClosureCertificate(m, lift.unit, terms)


def _scope(base) -> str:
    if base is None or not any(base):
        return "germ at the origin"
    return "germ at (" + ", ".join(str(QQ(a)) for a in base) + ")"


def closure_member(f: Polynomial, J: Sequence[Polynomial] | Ideal, base: Sequence | None = None,
                   max_m: int = DEFAULT_MAX_POWER, catalog: ArcCatalog | None = None,
                   avoid: Sequence[Polynomial] | None = None, budget: Budget | None = None,
                   early_powers: int = 2) -> Verdict:
    """Is ``f`` in the integral closure of ``J`` at ``base`` (default: origin)?

    Powers ``m = 1..early_powers`` are tried first, then the arc catalog, then
    the remaining powers up to ``max_m``.
    """
    gens = list(J.generators) if isinstance(J, Ideal) else [g for g in J if not g.is_zero()]
    ring = f.gens
    if base is not None:
        base = tuple(QQ(a) for a in base)
    scope = _scope(base)
    if catalog is None:
        catalog = ArcCatalog(len(ring))
    shifted = base is not None and any(base)
    f_loc = translate_to_point(f, base) if shifted else f
    J_loc = Ideal([translate_to_point(g, base) if shifted else g for g in gens], ring)
    head = {"ring": list(ring), "base": None if base is None else [str(a) for a in base]}

    def certified(cert: ClosureCertificate) -> Verdict:
        ev = {"kind": "closure-certificate", **head, "f": str(f_loc), "J": J_loc.strings(), **cert.to_dict()}
        return Verdict(HOLDS, ev, scope)

    budget_note = None

    def sweep(ms) -> Verdict | None:
        nonlocal budget_note
        for m in ms:
            if budget_note is not None:
                return None
            try:
                cert = certify_power(f_loc, J_loc, m, budget)
            except BudgetExceeded as exc:
                budget_note = f"m={m}: {exc}"
                return None
            if cert is not None:
                return certified(cert)
        return None

    if f_loc.is_zero():
        return certified(ClosureCertificate(1, Polynomial.one(ring), ()))
    if J_loc.is_zero():
        witness = arc_falsify(f, gens, base, catalog, avoid)
        if witness is not None:
            return Verdict(FAILS, {"kind": "arc-witness", **head, "f": str(f), "J": [str(g) for g in gens],
                                   "avoid": [str(g) for g in avoid] if avoid else None, **witness.to_dict()}, scope)
        return Verdict(UNDETERMINED, {"kind": "note", "reason": "nonzero function against the zero ideal, "
                                      "no admissible arc in the catalog"}, scope)
    early = min(early_powers, max_m)
    got = sweep(range(1, early + 1))
    if got is not None:
        return got
    witness = arc_falsify(f, gens, base, catalog, avoid)
    if witness is not None:
        ev = {"kind": "arc-witness", **head, "f": str(f), "J": [str(g) for g in gens],
              "avoid": [str(g) for g in avoid] if avoid else None, **witness.to_dict()}
        return Verdict(FAILS, ev, scope)
    got = sweep(range(early + 1, max_m + 1))
    if got is not None:
        return got
    if budget_note is not None:
        return Verdict(UNDETERMINED, {"kind": "budget", "reason": budget_note}, scope)
    return Verdict(UNDETERMINED, {"kind": "note", "reason": f"no certificate with m <= {max_m} "
                                  "and no violating arc in the catalog"}, scope)


def verify_closure_evidence(ev: dict) -> bool:
    """Re-check a closure certificate or arc witness from its JSON form."""
    ring = tuple(ev["ring"])
    f = parse_in_gens(ev["f"], ring)
    J = [parse_in_gens(g, ring) for g in ev["J"]]
    if ev["kind"] == "closure-certificate":
        cert = ClosureCertificate.from_dict(ev, ring)
        return cert.verify(f, J)
    if ev["kind"] == "arc-witness":
        avoid = [parse_in_gens(g, ring) for g in ev["avoid"]] if ev.get("avoid") else None
        w = ArcWitness.from_dict(ev)
        if len(w.arc.coords) != len(ring):
            return False
        return w.verify(f, J, avoid)
    raise ValueError(f"not closure evidence: {ev['kind']}")

"""The metric conditions on ``dF/dt`` and the coefficient-wise Jacobian criterion.

``cond2`` asks for ``|dF/dt| <= c*|d_x F|`` near the origin, i.e. ``dF/dt``
in the integral closure of the spatial partials at 0.  ``cond`` asks the same
near each point of ``Sing F0`` other than the origin, off ``Sing F~``.  The
Jacobian criterion asks for every ``d_i f_j`` (``j >= 1``) to lie in the
integral closure of ``(d f_0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .arcs import ArcCatalog
from .closure import DEFAULT_MAX_POWER, closure_member
from .errors import BudgetExceeded
from .germs import SingularLoci, grid_points
from .groebner import Budget
from .ideals import DIM_ZERO, EMPTY_AT_ORIGIN, Ideal, local_dim_zero
from .poly import QQ, Arc, Polynomial, arc_order, t_expansion
from .verdict import FAILS, HOLDS, ON_SAMPLE, UNDETERMINED, Verdict


@dataclass
class ClosureSettings:
    max_power: int = DEFAULT_MAX_POWER
    max_weight: int = 4
    max_arcs: int = 3000
    max_base_points: int = 6
    sample_arcs: int = 30000  # per base point of Sing F0, where failures hide deeper in the catalog
    budget: Budget = field(default_factory=Budget)

    def catalog(self, dim: int, max_arcs: int | None = None) -> ArcCatalog:
        return ArcCatalog(dim, max_weight=self.max_weight, max_arcs=max_arcs or self.max_arcs)


def implied(by: str, reason: str, scope: str, direct: dict | None = None) -> Verdict:
    ev = {"kind": "implied", "by": by, "reason": reason}
    if direct is not None:
        ev["direct"] = direct
    return Verdict(HOLDS, ev, scope)


def check_cond2(loci: SingularLoci, settings: ClosureSettings | None = None, witness_points=(),
                jacobian: Verdict | None = None) -> Verdict:
    """Is ``dF/dt`` in the integral closure of ``(d_x F)`` at the origin of ``(x, t)``?

    A certificate at the origin bounds the ratio on a whole neighbourhood, so
    it settles every base point at once.  Witness points of
    ``Z(d f_0, f_1)`` are only used to look for failures.
    """
    settings = settings or ClosureSettings()
    n = len(loci.spatial_ring)
    J = [p for p in loci.spatial_partials]
    v = closure_member(loci.dF_dt, J, None, settings.max_power, settings.catalog(n + 1),
                       budget=settings.budget)
    if v.status != UNDETERMINED:
        return v
    for p in witness_points:
        p = tuple(QQ(a) for a in p)
        if not any(p) or any(g.evaluate(p) for g in loci.f0_partials()) or loci.f1.evaluate(p):
            continue
        w = closure_member(loci.dF_dt, J, p + (QQ(0),), settings.max_power, settings.catalog(n + 1),
                           budget=settings.budget)
        if w.status == FAILS:
            return w
    if jacobian is not None and jacobian.binding and jacobian.status == HOLDS:
        return implied("jacobian", "every coefficient derivative lies in the closure of (d f0)", v.scope, v.to_dict())
    return v


def check_cond(loci: SingularLoci, settings: ClosureSettings | None = None, witness_points=(),
               cond2: Verdict | None = None) -> Verdict:
    """The condition at points of ``Sing F0`` other than the origin, arcs restricted off ``Sing F~``."""
    settings = settings or ClosureSettings()
    scope = "points of Sing F0 near but other than the origin"
    n = len(loci.spatial_ring)
    if loci.dF_dt.is_zero():
        return Verdict(HOLDS, {"kind": "trivial", "reason": "F does not depend on the parameter"}, scope)
    note = None
    try:
        dv = local_dim_zero(loci.sing_F0, settings.budget)
    except BudgetExceeded as exc:
        dv = None
        note = f"isolation of Sing F0 not decided: {exc}"
    if dv is not None and dv.value in (DIM_ZERO, EMPTY_AT_ORIGIN):
        ev = {"kind": "vacuous", "reason": "Sing F0 is at most the origin near 0", "value": dv.value,
              "ring": list(loci.spatial_ring), "ideal": loci.sing_F0.strings(),
              "pure_powers": [[a, e] for a, e in dv.certificate]}
        return Verdict(HOLDS, ev, scope)
    if cond2 is not None and cond2.binding and cond2.status == HOLDS:
        return implied("cond2", "the closure bound at the origin covers a neighbourhood", scope)
    partials = [p for p in loci.spatial_partials]
    f0_partials = loci.f0_partials()
    bases = [p for p in grid_points(n, witness_points)
             if all(not g.evaluate(p) for g in f0_partials)][: settings.max_base_points]
    if not bases:
        return Verdict(UNDETERMINED, {"kind": "note", "reason": "no sample point of Sing F0 found"}, scope)
    results = []
    catalog = settings.catalog(n + 1, settings.sample_arcs)
    for p in bases:
        base = p + (QQ(0),)
        v = closure_member(loci.dF_dt, partials, base, settings.max_power, catalog,
                           avoid=partials, budget=settings.budget)
        if v.status == FAILS:
            return Verdict(FAILS, v.evidence, v.scope)
        results.append({"base": [str(a) for a in base], "status": v.status, "evidence": v.evidence})
    ev = {"kind": "sample", "points": results}
    if note:
        ev["note"] = note
    if all(r["status"] == HOLDS for r in results):
        return Verdict(UNDETERMINED, ev, scope, ON_SAMPLE)
    return Verdict(UNDETERMINED, ev, scope)


def jacobian_criterion(loci: SingularLoci, settings: ClosureSettings | None = None) -> Verdict:
    """``d_i f_j`` in the integral closure of ``(d f0)`` for every ``j >= 1`` and every ``i``."""
    settings = settings or ClosureSettings()
    scope = "germ at the origin"
    coeffs = t_expansion(loci.F, loci.ctx.param)
    spatial = loci.spatial_ring
    if len(coeffs) == 1:
        return Verdict(HOLDS, {"kind": "trivial", "reason": "F does not depend on the parameter"}, scope)
    J = Ideal(loci.f0_partials(), spatial)
    catalog = settings.catalog(len(spatial))
    items = []
    pending = []
    for j, fj in enumerate(coeffs[1:], start=1):
        for name in spatial:
            p = fj.diff(name)
            v = closure_member(p, J, None, settings.max_power, catalog, budget=settings.budget)
            if v.status == FAILS:
                return Verdict(FAILS, {**v.evidence, "i": name, "j": j}, scope)
            entry = {"i": name, "j": j, "status": v.status, "evidence": v.evidence}
            items.append(entry)
            if v.status != HOLDS:
                pending.append(entry)
    ev = {"kind": "jacobian-certificates", "items": items}
    if pending:
        return Verdict(UNDETERMINED, ev, scope)
    return Verdict(HOLDS, ev, scope)


@dataclass
class OrderDiagnostics:
    applicable: bool
    reason: str = ""
    kappa: float | None = None
    ell: str | None = None
    partial_order: float | None = None  # ord of dF/dx_ell along the full arc
    dt_order: float | None = None
    coefficient_orders: dict[int, float] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        if not self.applicable or self.kappa is None or math.isinf(self.kappa):
            return True
        return (self.partial_order == self.kappa and self.dt_order > self.kappa
                and all(o > self.kappa for o in self.coefficient_orders.values()))


def arc_order_diagnostics(loci: SingularLoci, arc: Arc) -> OrderDiagnostics:
    """Order bookkeeping along ``s -> (x(s), t(s))`` used as a sanity check of a Jacobian HOLDS.

    A spatial arc (``n`` coordinates) is taken with ``t = 0``.
    """
    spatial = loci.spatial_ring
    n = len(spatial)
    if arc.dim == n:
        full = Arc(arc.coords + (Polynomial.zero(("s",)),),
                   None if arc.base_point is None else arc.base_point + (QQ(0),))
        xarc = arc
    elif arc.dim == n + 1:
        full = arc
        xarc = Arc(arc.coords[:n], None if arc.base_point is None else arc.base_point[:n])
        if arc.base_point is not None and arc.base_point[n]:
            return OrderDiagnostics(False, "the arc must start at t = 0")
    else:
        return OrderDiagnostics(False, "arc arity does not match the problem")
    start = xarc.point_at_zero()
    f0_partials = loci.f0_partials()
    if any(g.evaluate(start) for g in f0_partials):
        return OrderDiagnostics(False, "the arc does not start on Sing f0")
    orders = [arc_order(g, xarc).order for g in f0_partials]
    kappa = min(orders)
    if math.isinf(kappa):
        return OrderDiagnostics(True, "the arc stays inside Sing f0", kappa)
    ell_idx = orders.index(kappa)
    coeffs = t_expansion(loci.F, loci.ctx.param)
    return OrderDiagnostics(
        True,
        kappa=kappa,
        ell=spatial[ell_idx],
        partial_order=arc_order(loci.spatial_partials[ell_idx], full).order,
        dt_order=arc_order(loci.dF_dt, full).order,
        coefficient_orders={j: arc_order(f, xarc).order for j, f in enumerate(coeffs)},
    )

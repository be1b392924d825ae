"""Singular loci, the slice condition, discriminant, Milnor set and tameness.

Conventions: the full ring is ``(x_1, ..., x_n, t)``; ``Sing F0`` lives in
the spatial ring ``(x_1, ..., x_n)``.  The Milnor set is cut out by the
minors ``x_i*dF/dx_j - x_j*dF/dx_i`` with the preimage of the discriminant
removed by saturation.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .arcs import ArcCatalog, arcs_inside
from .errors import BudgetExceeded
from .exprparse import DeformationProblem, VarContext
from .groebner import Budget
from .ideals import (
    DIM_ZERO,
    EMPTY_AT_ORIGIN,
    Ideal,
    eliminate,
    fresh_name,
    ideal_member,
    local_dim_zero,
    local_lift,
    local_radical_member,
    saturate,
)
from .poly import ARC_VAR, QQ, Arc, Polynomial, arc_compose, arc_order
from .verdict import CAVEAT, FAILS, HOLDS, UNDETERMINED, Verdict, budget_verdict

GRID = tuple(QQ(c) for c in ("0", "1", "-1", "1/2", "-1/2", "2", "-2"))
MAX_RADICAL_POWER = 12


@dataclass
class SingularLoci:
    ctx: VarContext
    F: Polynomial
    f0: Polynomial
    f1: Polynomial
    dF_dt: Polynomial
    spatial_partials: tuple[Polynomial, ...]  # in the full ring, one per spatial variable
    sing_F0: Ideal
    sing_F: Ideal
    sing_Ftilde: Ideal

    @property
    def full_ring(self) -> tuple[str, ...]:
        return self.ctx.gens

    @property
    def spatial_ring(self) -> tuple[str, ...]:
        return self.ctx.spatial_vars

    def f0_partials(self) -> list[Polynomial]:
        return [self.f0.diff(v) for v in self.spatial_ring]

    def summary(self) -> dict:
        return {
            "sing_F0": self.sing_F0.strings(),
            "sing_F": self.sing_F.strings(),
            "sing_Ftilde": self.sing_Ftilde.strings(),
        }


def build_singular_loci(problem: DeformationProblem | Polynomial, ctx: VarContext | None = None) -> SingularLoci:
    if isinstance(problem, DeformationProblem):
        F, ctx = problem.F, problem.vars
    else:
        F = problem
        if ctx is None:
            raise ValueError("a variable context is required")
    spatial = ctx.spatial_vars
    partials = tuple(F.diff(v) for v in spatial)
    dt = F.diff(ctx.param)
    f0 = F.subs({ctx.param: 0}, gens=spatial)
    f1 = dt.subs({ctx.param: 0}, gens=spatial)
    return SingularLoci(
        ctx=ctx,
        F=F,
        f0=f0,
        f1=f1,
        dF_dt=dt,
        spatial_partials=partials,
        sing_F0=Ideal([f0.diff(v) for v in spatial], spatial),
        sing_F=Ideal(list(partials) + [dt], ctx.gens),
        sing_Ftilde=Ideal(list(partials), ctx.gens),
    )


def slice_catalog(n: int, max_weight: int = 4, max_arcs: int = 4000) -> ArcCatalog:
    return ArcCatalog(n, max_weight=max_weight, max_arcs=max_arcs)


def vanishes_on_germ(f: Polynomial, I: Ideal, scope: str, catalog: ArcCatalog | None = None,
                     budget: Budget | None = None) -> Verdict:
    """Does ``f`` vanish on the real zero-set germ of ``I`` at the origin?

    HOLDS comes with a lift of a power of ``f`` (complex vanishing, hence real).
    FAILS needs a real arc inside ``Z(I)`` along which ``f`` is not zero.
    """
    try:
        member = local_radical_member(f, I, budget)
    except BudgetExceeded as exc:
        return budget_verdict(exc, scope)
    if member:
        for k in range(1, MAX_RADICAL_POWER + 1):
            try:
                lift = local_lift(f ** k, I, budget)
            except BudgetExceeded as exc:
                return Verdict(HOLDS, {"kind": "radical-membership", "reason": f"saturation test; lift: {exc}"}, scope)
            if lift is not None:
                ev = {
                    "kind": "radical-certificate",
                    "ring": list(I.ring),
                    "f": str(f),
                    "J": I.strings(),
                    "power": k,
                    "unit": str(lift.unit),
                    "cofactors": [str(c) for c in lift.cofactors],
                }
                return Verdict(HOLDS, ev, scope)
        return Verdict(HOLDS, {"kind": "radical-membership", "reason": "saturation contains a unit at the origin"},
                       scope)
    catalog = catalog or slice_catalog(len(I.ring))
    for arc in arcs_inside(list(I.generators), catalog, [f]):
        ev = {
            "kind": "slice-witness",
            "ring": list(I.ring),
            "f": str(f),
            "J": I.strings(),
            "arc": arc.strings(),
            "ord_f": int(arc_order(f, arc).order),
        }
        return Verdict(FAILS, ev, scope)
    return Verdict(UNDETERMINED, {"kind": "note", "reason": "the complex germs differ but no real arc "
                                  "separating them was found in the catalog"}, scope)


def check_cond0(loci: SingularLoci, catalog: ArcCatalog | None = None, budget: Budget | None = None) -> Verdict:
    """Do the slices of ``Sing F`` and ``Sing F~`` at ``t = 0`` agree as set germs?

    The slices are ``Z(dF0, f1)`` and ``Z(dF0)``, so the question is whether
    ``f1 = dF/dt(x, 0)`` vanishes on the germ of ``Z(dF0)``.
    """
    return vanishes_on_germ(loci.f1, loci.sing_F0, "set germs at the origin, slice t = 0", catalog, budget)


def check_sing_equal(loci: SingularLoci, catalog: ArcCatalog | None = None, budget: Budget | None = None) -> Verdict:
    """``Sing F~ = Sing F`` as set germs, i.e. ``dF/dt`` vanishes on the germ of ``Z(d_x F)``."""
    catalog = catalog or slice_catalog(len(loci.full_ring), max_arcs=2000)
    return vanishes_on_germ(loci.dF_dt, loci.sing_Ftilde, "set germs at the origin of (x, t)", catalog, budget)


@dataclass
class Discriminant:
    ideal: Ideal  # over the target variables (u, v)
    value_var: str
    param_var: str
    pullbacks: tuple[Polynomial, ...] = ()

    def summary(self) -> dict:
        return {"vars": [self.value_var, self.param_var], "generators": self.ideal.strings()}


def discriminant(loci: SingularLoci, budget: Budget | None = None) -> Discriminant:
    """Zariski closure of the image of ``Sing F~`` under ``(x, t) -> (F, t)``."""
    ctx = loci.ctx
    u = fresh_name("u", ctx.gens)
    v = fresh_name("v", ctx.gens + (u,))
    ring = ctx.gens + (u,)
    U = Polynomial.var(ring, u)
    gens = [p.embed(ring) for p in loci.spatial_partials] + [U - loci.F.embed(ring)]
    E = eliminate(Ideal(gens, ring), ctx.spatial_vars, budget)  # over (t, u)
    target = (u, v)
    renamed = []
    for g in E.generators:
        g = g.embed((ctx.param, u))
        renamed.append(Polynomial._raw(target, {(m[1], m[0]): c for m, c in g.terms.items()}))
    ideal = Ideal([g.content_primitive() for g in renamed], target)
    pull = tuple(g.subs({u: loci.F, v: Polynomial.var(ctx.gens, ctx.param)}, gens=ctx.gens)
                 for g in germ_generators(ideal))
    return Discriminant(ideal, u, v, pull)


def germ_reduce(g: Polynomial) -> Polynomial:
    """Polynomial with the same zero-set germ at the origin, when cheaply available.

    The monomial content ``m`` of ``g = m*h`` is split off.  If ``h`` is a unit
    at the origin only the squarefree part of ``m`` matters; otherwise ``g``
    is returned unchanged.
    """
    if g.is_zero() or not g.terms:
        return g
    n = len(g.gens)
    low = tuple(min(m[i] for m in g.terms) for i in range(n))
    h_const = g.terms.get(low)
    if h_const is None:
        return g
    return Polynomial._raw(g.gens, {tuple(1 if e else 0 for e in low): QQ(1)})


def germ_generators(I: Ideal) -> list[Polynomial]:
    return [germ_reduce(g) for g in I.generators]


def divide_linear(g: Polynomial, var: str, phi: Polynomial) -> Polynomial | None:
    """Exact quotient of ``g`` by ``var - phi`` (``phi`` free of ``var``), or None."""
    k = g.gens.index(var)
    by_power: dict[int, dict] = {}
    for m, c in g.terms.items():
        by_power.setdefault(m[k], {})[m[:k] + (0,) + m[k + 1:]] = c
    if not by_power:
        return Polynomial.zero(g.gens)
    d = max(by_power)
    coeffs = [Polynomial._raw(g.gens, by_power.get(e, {})) for e in range(d + 1)]
    # Horner: quotient coefficients from the top down
    q = [Polynomial.zero(g.gens)] * d
    carry = Polynomial.zero(g.gens)
    for e in range(d, 0, -1):
        carry = coeffs[e] + phi * carry if e < d else coeffs[e]
        q[e - 1] = carry
    if not (coeffs[0] + phi * carry if d else coeffs[0]).is_zero():
        return None
    X = Polynomial.var(g.gens, var)
    out = Polynomial.zero(g.gens)
    for e in range(d - 1, -1, -1):
        out = out * X + q[e]
    return out


def real_branch_cover(loci: SingularLoci, disc: Discriminant, catalog: ArcCatalog | None = None):
    """Arcs of ``Sing F~`` whose images fill the real discriminant germ, or None.

    Every arc has ``t = c*s``, so its image is the full graph ``u = phi(v)``
    near 0.  Once the discriminant generator divided by all these
    ``u - phi(v)`` is a unit at the origin, the real discriminant equals the
    real points of its Zariski closure.
    """
    if len(disc.ideal.generators) != 1:
        return None
    g = disc.ideal.generators[0]
    target = disc.ideal.ring
    u, v = disc.value_var, disc.param_var
    n = len(loci.spatial_ring)
    catalog = catalog or ArcCatalog(n, max_arcs=2000)
    s = Polynomial.var((ARC_VAR,), ARC_VAR)
    V = Polynomial.var(target, v)
    found: list[Arc] = []
    for arc in itertools.chain([Arc(tuple(Polynomial.zero((ARC_VAR,)) for _ in range(n)))], catalog):
        for c in catalog.coefficients:
            if g.constant_term():
                return found
            full = Arc(arc.coords + (s * c,))
            if not all(math.isinf(arc_order(p, full).order) for p in loci.spatial_partials):
                continue
            phi = arc_compose(loci.F, full).subs({ARC_VAR: V * (1 / c)}, gens=target)
            q = divide_linear(g, u, phi)
            if q is None:
                continue
            while q is not None:
                g = q
                q = divide_linear(g, u, phi)
            found.append(full)
    return found if g.constant_term() else None


@dataclass
class MilnorSet:
    minors: tuple[tuple[int, int, Polynomial], ...]
    minors_ideal: Ideal
    saturated_ideal: Ideal
    removed_flag: bool

    def summary(self) -> dict:
        return {
            "minors": [str(p) for _, _, p in self.minors],
            "saturated": self.saturated_ideal.strings(),
            "saturation_removed_components": self.removed_flag,
        }


def milnor_minors(loci: SingularLoci) -> list[tuple[int, int, Polynomial]]:
    ring = loci.full_ring
    xs = [Polynomial.var(ring, v) for v in loci.spatial_ring]
    d = loci.spatial_partials
    return [(i, j, xs[i] * d[j] - xs[j] * d[i])
            for i, j in itertools.combinations(range(len(xs)), 2)]


def milnor_set(loci: SingularLoci, disc: Discriminant, budget: Budget | None = None) -> MilnorSet:
    minors = milnor_minors(loci)
    ring = loci.full_ring
    M = Ideal([p for _, _, p in minors], ring)
    pull = Ideal(list(disc.pullbacks), ring)
    S = saturate(M, pull, budget)
    removed = not all(ideal_member(g, M, budget=budget) for g in S.generators)
    return MilnorSet(tuple(minors), M, S, removed)


def _slice_ideal(gens, loci: SingularLoci) -> Ideal:
    spatial = loci.spatial_ring
    t = loci.ctx.param
    return Ideal([g.subs({t: 0}, gens=spatial) for g in gens] + list(loci.sing_F0.generators), spatial)


def grid_points(n: int, extra=()) -> list[tuple]:
    """User points first, then nonzero grid points ordered by height."""
    pts = [tuple(QQ(a) for a in p) for p in extra]
    grid = [p for p in itertools.product(GRID, repeat=n) if any(p)]
    grid.sort(key=lambda p: (sum(1 for a in p if a), sum(abs(int(a.numerator)) + int(a.denominator) for a in p)))
    seen = set()
    out = []
    for p in pts + grid:
        if p not in seen:
            seen.add(p)
            out.append(p)
    return out


def ray_vanishes(gens, point) -> bool:
    """Every polynomial vanishes on the whole line through 0 and ``point``."""
    for g in gens:
        for comp in g.homogeneous_components().values():
            if comp.evaluate(point):
                return False
    return True


def check_tame(loci: SingularLoci, milnor: MilnorSet, witness_points=(), catalog: ArcCatalog | None = None,
               budget: Budget | None = None, disc: Discriminant | None = None) -> Verdict:
    """Does the Milnor set meet ``{t = 0} ∩ Sing F0`` only at the origin?"""
    scope = "set germs at the origin, slice t = 0"
    T_sat = _slice_ideal(milnor.saturated_ideal.generators, loci)
    T_raw = _slice_ideal(milnor.minors_ideal.generators, loci)
    try:
        dv = local_dim_zero(T_sat, budget)
    except BudgetExceeded as exc:
        return budget_verdict(exc, scope)
    if dv.value in (DIM_ZERO, EMPTY_AT_ORIGIN):
        ev = {"kind": "local-dimension", "ring": list(T_sat.ring), "ideal": T_sat.strings(),
              "value": dv.value, "pure_powers": [[v, e] for v, e in dv.certificate]}
        try:
            raw = local_dim_zero(T_raw, budget)
        except BudgetExceeded:
            raw = None
        if raw is not None and raw.value in (DIM_ZERO, EMPTY_AT_ORIGIN):
            return Verdict(HOLDS, ev, scope)
        cover = real_branch_cover(loci, disc) if disc is not None else None
        if cover is not None:
            ev["discriminant"] = {"vars": [disc.value_var, disc.param_var], "generators": disc.ideal.strings(),
                                  "branch_arcs": [a.strings() for a in cover]}
            return Verdict(HOLDS, ev, scope)
        ev["caveat"] = ("only the saturated ideal is zero-dimensional; the removed part of the discriminant "
                        "preimage is a Zariski closure")
        return Verdict(HOLDS, ev, scope, CAVEAT)
    gens = list(T_sat.generators)
    n = len(loci.spatial_ring)
    for p in grid_points(n, witness_points):
        if ray_vanishes(gens, p):
            ev = {"kind": "ray-witness", "ring": list(loci.full_ring), "point": [str(a) for a in p] + ["0"],
                  "ideal": T_sat.strings()}
            return Verdict(FAILS, ev, scope)
    catalog = catalog or ArcCatalog(n, max_arcs=2000)
    for arc in arcs_inside(gens, catalog):
        ev = {"kind": "curve-witness", "ring": list(loci.spatial_ring), "arc": arc.strings(),
              "ideal": T_sat.strings()}
        return Verdict(FAILS, ev, scope)
    return Verdict(UNDETERMINED, {"kind": "note", "reason": "positive-dimensional germ but no real witness "
                                  "found", "ideal": T_sat.strings()}, scope)

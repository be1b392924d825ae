"""Ideals over named variables and the operations built on standard bases.

Global questions (membership in the polynomial ring, elimination, radical
membership) use degrevlex or block orderings.  Germ questions at the origin
use the local ordering ``negdegrevlex``.  Saturation is done in one shot with
an auxiliary variable, ``I : g^oo = (I + (1 - w*g)) ∩ K[x]``, and
intersected over the generators of the saturating ideal.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import BudgetExceeded, ContextMismatch
from .groebner import (
    DEGREVLEX,
    NEGDEGREVLEX,
    BasisResult,
    Budget,
    MonomialOrdering,
    _make,
    axpy,
    compute_basis,
    local_corner,
    nf_full,
    nf_top,
    EngineStats,
    reduce_by,
)
from .poly import Polynomial

DIM_ZERO = "dim-zero-at-origin"
POSITIVE_DIM = "positive-dimensional"
EMPTY_AT_ORIGIN = "empty-at-origin"


def fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    k = 1
    while f"{base}{k}" in taken:
        k += 1
    return f"{base}{k}"


class Ideal:
    """Finite generating set over a fixed variable list, with cached bases."""

    def __init__(self, generators: Iterable[Polynomial], ring: Sequence[str] | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("an empty ideal needs an explicit variable list")
            ring = gens[0].gens
        ring = tuple(ring)
        seen = set()
        kept = []
        for g in gens:
            if g.gens != ring:
                if set(g.variables()) - set(ring):
                    raise ContextMismatch(f"generator {g} is not over {ring}")
                g = g.embed(ring)
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            kept.append(g)
        self.ring = ring
        self.generators: tuple[Polynomial, ...] = tuple(kept)
        self._cache: dict = {}

    # -- basics ----------------------------------------------------------
    def __repr__(self) -> str:
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"

    def __len__(self) -> int:
        return len(self.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def strings(self) -> list[str]:
        return [str(g) for g in self.generators]

    def __add__(self, other: "Ideal | Iterable[Polynomial]") -> "Ideal":
        extra = other.generators if isinstance(other, Ideal) else tuple(other)
        return Ideal(self.generators + tuple(extra), self.ring)

    def embed(self, ring: Sequence[str]) -> "Ideal":
        return Ideal([g.embed(ring) for g in self.generators], ring)

    # -- standard bases --------------------------------------------------
    def basis_result(self, ordering: MonomialOrdering = DEGREVLEX, budget: Budget | None = None,
                     track: bool = False) -> BasisResult:
        key = (ordering, track)
        got = self._cache.get(key)
        if got is None:
            got = compute_basis([g.terms for g in self.generators], len(self.ring), ordering,
                                budget, track=track)
            self._cache[key] = got
        return got

    def standard_basis(self, ordering: MonomialOrdering = DEGREVLEX,
                       budget: Budget | None = None) -> list[Polynomial]:
        res = self.basis_result(ordering, budget)
        return [Polynomial._raw(self.ring, dict(p)) for p in res.polys]

    def contains(self, f: Polynomial, local: bool = False, budget: Budget | None = None) -> bool:
        return ideal_member(f, self, local=local, budget=budget)

    def is_unit(self, local: bool = False, budget: Budget | None = None) -> bool:
        if local:
            return any(g.constant_term() for g in self.generators)
        return ideal_member(Polynomial.one(self.ring), self, budget=budget)


def _as_poly_dict(f: Polynomial, ring: tuple[str, ...]) -> dict:
    if f.gens != ring:
        f = f.embed(ring)
    return f.terms


def standard_basis(I: Ideal, ordering: MonomialOrdering = DEGREVLEX,
                   budget: Budget | None = None) -> list[Polynomial]:
    return I.standard_basis(ordering, budget)


def normal_form(f: Polynomial, basis: Sequence[Polynomial], ordering: MonomialOrdering = DEGREVLEX,
                budget: Budget | None = None) -> Polynomial:
    """Remainder of ``f`` on division by a standard basis.

    For global orderings no term of the result is divisible by a leading
    monomial of the basis.  For the local ordering this is Mora's weak normal
    form: only the leading monomial is guaranteed irreducible, which suffices
    to decide membership in the local ring.
    """
    budget = budget or Budget()
    key = ordering.key()
    elems = [_make(dict(b.terms), key) for b in basis if not b.is_zero()]
    stats = EngineStats()
    h = dict(f.terms)
    if ordering.is_local:
        h, _ = nf_top(h, None, elems, key, True, budget, stats, local_corner(elems, len(f.gens)))
    else:
        h, _ = nf_full(h, None, elems, key, budget, stats)
    return Polynomial._raw(f.gens, h)


def _mora_budget(budget: Budget | None) -> Budget:
    # Mora's normal form can converge very slowly; give up early and switch methods
    b = budget or Budget()
    return replace(b, max_coeff_bits=min(b.max_coeff_bits, 1024), max_steps=min(b.max_steps, 50_000))


def exact_quotient(h: Polynomial, f: Polynomial) -> Polynomial:
    """``h / f`` when ``f`` divides ``h``; ArithmeticError otherwise."""
    key = DEGREVLEX.key()
    ft = f.terms
    lm = max(ft, key=key)
    lc = ft[lm]
    r = dict(h.terms)
    q: dict = {}
    while r:
        m = max(r, key=key)
        if any(a < b for a, b in zip(m, lm)):
            raise ArithmeticError("polynomial does not divide")
        shift = tuple(a - b for a, b in zip(m, lm))
        c = r[m] / lc
        q[shift] = c
        axpy(r, c, shift, ft)
    return Polynomial._raw(h.gens, q)


def local_unit_multiplier(f: Polynomial, I: Ideal, budget: Budget | None = None) -> Polynomial | None:
    """Some ``g`` with ``g(0) != 0`` and ``g*f`` in ``I``, or None if there is none.

    Such ``g`` exists iff ``f`` lies in the localization of ``I`` at the origin,
    and the generators of the quotient ``I : f`` include one when it does.
    """
    f = f.embed(I.ring)
    Q = intersect(I, Ideal([f], I.ring), budget)
    best = None
    for h in Q.generators:
        g = exact_quotient(h, f)
        if g.constant_term() and (best is None or len(g) < len(best)):
            best = g
    return best


def ideal_member(f: Polynomial, I: Ideal, local: bool = False, budget: Budget | None = None) -> bool:
    """``f in I`` in the polynomial ring, or in the local ring at the origin."""
    if f.is_zero():
        return True
    if I.is_zero():
        return False
    if not local:
        res = I.basis_result(DEGREVLEX, budget)
        h, _ = reduce_by(_as_poly_dict(f, I.ring), res, budget)
        return not h
    if I.is_unit(local=True):
        return True
    try:
        res = I.basis_result(NEGDEGREVLEX, budget)
        h, _ = reduce_by(_as_poly_dict(f, I.ring), res, _mora_budget(budget))
        return not h
    except BudgetExceeded:
        return local_unit_multiplier(f, I, budget) is not None


@dataclass(frozen=True)
class LocalLift:
    """``unit * f = sum(cofactors[k] * generators[k])`` with ``unit(0) != 0``."""

    unit: Polynomial
    cofactors: tuple[Polynomial, ...]

    def check(self, f: Polynomial, generators: Sequence[Polynomial]) -> bool:
        if not self.unit.constant_term():
            return False
        rhs = Polynomial.zero(f.gens)
        for a, g in zip(self.cofactors, generators):
            rhs = rhs + a * g
        return self.unit * f == rhs


def local_lift(f: Polynomial, I: Ideal, budget: Budget | None = None) -> LocalLift | None:
    """Explicit local membership certificate, or None when ``f`` is not in ``I`` at 0."""
    ring = I.ring
    if f.is_zero():
        return LocalLift(Polynomial.one(ring), tuple(Polynomial.zero(ring) for _ in I.generators))
    if I.is_zero():
        return None
    f = f.embed(ring)
    try:
        res = I.basis_result(NEGDEGREVLEX, budget, track=True)
        h, rep = reduce_by(_as_poly_dict(f, ring), res, _mora_budget(budget), track_unit=True)
        unit = Polynomial.one(ring)
    except BudgetExceeded:
        g = local_unit_multiplier(f, I, budget)
        if g is None:
            return None
        res = I.basis_result(DEGREVLEX, budget, track=True)
        h, rep = reduce_by(dict((g * f).terms), res, budget, track_unit=True)
        unit = g
    if h:
        return None
    u, a = rep
    # remainder 0 = u*p + sum a_k g_k with p = unit*f
    lift = LocalLift(Polynomial._raw(ring, u) * unit,
                     tuple(Polynomial._raw(ring, {m: -c for m, c in q.items()}) for q in a))
    if not lift.check(f, I.generators):
        raise ArithmeticError("local lift failed to re-verify")
    return lift


def eliminate(I: Ideal, drop_vars: Iterable[str], budget: Budget | None = None) -> Ideal:
    """``I ∩ K[remaining variables]`` via a two-block elimination ordering."""
    drop = [v for v in I.ring if v in set(drop_vars)]
    keep = tuple(v for v in I.ring if v not in drop)
    if not drop:
        return Ideal(I.generators, I.ring)
    order_ring = tuple(drop) + keep
    J = I.embed(order_ring)
    res = J.basis_result(MonomialOrdering("elim", len(drop)), budget)
    r = len(drop)
    out = []
    for p in res.polys:
        if all(not any(m[:r]) for m in p):
            out.append(Polynomial._raw(keep, {m[r:]: c for m, c in p.items()}))
    return Ideal(out, keep)


def local_eliminate(I: Ideal, drop_vars: Iterable[str], budget: Budget | None = None) -> Ideal:
    """Elimination in the ring of germs at the origin (of the kept variables).

    Uses the mixed ordering: global on the dropped block, local on the rest.
    The result generates the elimination ideal after localization, so only
    statements about germs at the origin may be drawn from it.
    """
    drop = [v for v in I.ring if v in set(drop_vars)]
    keep = tuple(v for v in I.ring if v not in drop)
    if not drop:
        return Ideal(I.generators, I.ring)
    order_ring = tuple(drop) + keep
    J = I.embed(order_ring)
    res = J.basis_result(MonomialOrdering("mixed", len(drop)), budget)
    r = len(drop)
    out = []
    for p in res.polys:
        if all(not any(m[:r]) for m in p):
            out.append(Polynomial._raw(keep, {m[r:]: c for m, c in p.items()}))
    return Ideal(out, keep)


def local_saturate_by_poly(I: Ideal, g: Polynomial, budget: Budget | None = None) -> Ideal:
    """Generators whose germs at 0 generate the localization of ``I : g^oo``."""
    if g.is_zero():
        return Ideal([Polynomial.one(I.ring)], I.ring)
    if g.constant_term() or I.is_zero():
        return Ideal(I.generators, I.ring)
    w = fresh_name("w", I.ring)
    ring = (w,) + I.ring
    W = Polynomial.var(ring, w)
    gens = [h.embed(ring) for h in I.generators] + [1 - W * g.embed(ring)]
    return local_eliminate(Ideal(gens, ring), [w], budget).embed(I.ring)


def intersect(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    if I.ring != J.ring:
        raise ContextMismatch("ideals live over different variables")
    if I.is_zero() or J.is_zero():
        return Ideal([], I.ring)
    y = fresh_name("y", I.ring)
    ring = (y,) + I.ring
    Y = Polynomial.var(ring, y)
    gens = [Y * g.embed(ring) for g in I.generators]
    gens += [(1 - Y) * g.embed(ring) for g in J.generators]
    return eliminate(Ideal(gens, ring), [y], budget).embed(I.ring)


def saturate_by_poly(I: Ideal, g: Polynomial, budget: Budget | None = None) -> Ideal:
    """``I : g^oo`` via one auxiliary variable."""
    if g.is_zero():
        return Ideal([Polynomial.one(I.ring)], I.ring)
    if g.is_constant() or I.is_zero():
        return Ideal(I.generators, I.ring)
    w = fresh_name("w", I.ring)
    ring = (w,) + I.ring
    W = Polynomial.var(ring, w)
    gens = [h.embed(ring) for h in I.generators] + [1 - W * g.embed(ring)]
    return eliminate(Ideal(gens, ring), [w], budget).embed(I.ring)


def saturate(I: Ideal, J: Ideal, budget: Budget | None = None) -> Ideal:
    """``I : J^oo`` as the intersection of ``I : g^oo`` over the generators ``g`` of ``J``."""
    if J.is_zero():
        return Ideal([Polynomial.one(I.ring)], I.ring)
    result: Ideal | None = None
    for g in J.generators:
        S = saturate_by_poly(I, g.embed(I.ring), budget)
        result = S if result is None else intersect(result, S, budget)
    return result


@dataclass(frozen=True)
class PowerIdeal:
    ideal: Ideal
    products: tuple[tuple[int, ...], ...]  # generator index tuple for each generator of ``ideal``


def ideal_power(I: Ideal, m: int, max_gens: int = 5000) -> PowerIdeal:
    """Generators ``g_{i1} * ... * g_{im}`` (duplicates removed)."""
    if m < 1:
        raise ValueError("power must be positive")
    gens = I.generators
    combos = list(combinations_with_replacement(range(len(gens)), m))
    if len(combos) > max_gens:
        raise BudgetExceeded(f"power {m} would have {len(combos)} generators (cap {max_gens})")
    seen: dict = {}
    polys, idxs = [], []
    for c in combos:
        p = Polynomial.one(I.ring)
        for i in c:
            p = p * gens[i]
        if p.is_zero() or p in seen:
            continue
        seen[p] = c
        polys.append(p)
        idxs.append(c)
    return PowerIdeal(Ideal(polys, I.ring), tuple(idxs))


def radical_member(f: Polynomial, I: Ideal, budget: Budget | None = None) -> bool:
    """Does ``f`` vanish on the (complex) zero set of ``I``?"""
    if f.is_zero():
        return True
    w = fresh_name("w", I.ring)
    ring = (w,) + I.ring
    W = Polynomial.var(ring, w)
    J = Ideal([g.embed(ring) for g in I.generators] + [1 - W * f.embed(ring)], ring)
    return J.is_unit(budget=budget)


def local_radical_member(f: Polynomial, I: Ideal, budget: Budget | None = None) -> bool:
    """Does ``f`` vanish on the zero-set germ of ``I`` at the origin?

    ``f`` is in the radical of the localized ideal iff ``I : f^oo`` contains
    an element that is a unit at the origin.
    """
    if f.is_zero():
        return True
    S = saturate_by_poly(I, f.embed(I.ring), budget)
    return S.is_unit(local=True)


def ideal_equal_radical(I: Ideal, J: Ideal, budget: Budget | None = None) -> bool:
    return all(radical_member(g, J, budget) for g in I.generators) and \
        all(radical_member(g, I, budget) for g in J.generators)


def local_equal_radical(I: Ideal, J: Ideal, budget: Budget | None = None) -> bool:
    return all(local_radical_member(g, J, budget) for g in I.generators) and \
        all(local_radical_member(g, I, budget) for g in J.generators)


@dataclass(frozen=True)
class DimVerdict:
    value: str
    certificate: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if (self.value == DIM_ZERO) != bool(self.certificate):
            raise ValueError("certificate must be present exactly for dim-zero verdicts")


def local_dim_zero(I: Ideal, budget: Budget | None = None) -> DimVerdict:
    """Is the zero-set germ of ``I`` at the origin just the origin (or empty)?"""
    if I.is_zero():
        return DimVerdict(POSITIVE_DIM)
    if I.is_unit(local=True):
        return DimVerdict(EMPTY_AT_ORIGIN)
    res = I.basis_result(NEGDEGREVLEX, budget)
    lms = [e.lm for e in res.elems]
    if any(not any(m) for m in lms):
        return DimVerdict(EMPTY_AT_ORIGIN)
    cert = []
    for i, name in enumerate(I.ring):
        pure = [m[i] for m in lms if m[i] and all(e == 0 for j, e in enumerate(m) if j != i)]
        if not pure:
            return DimVerdict(POSITIVE_DIM)
        cert.append((name, min(pure)))
    return DimVerdict(DIM_ZERO, tuple(cert))


def check_dim_certificate(I: Ideal, verdict: DimVerdict) -> bool:
    """Each claimed pure power must be divisible by a leading monomial of the local basis."""
    res = I.basis_result(NEGDEGREVLEX)
    lms = [e.lm for e in res.elems]
    for name, e in verdict.certificate:
        i = I.ring.index(name)
        mono = tuple(e if j == i else 0 for j in range(len(I.ring)))
        if not any(all(a <= b for a, b in zip(lm, mono)) for lm in lms):
            return False
    return True

"""Standard-basis engine on raw ``{exponent: coefficient}`` dictionaries.

Global orderings run Buchberger's algorithm with the Gebauer-Moeller pair
criteria and finish with a reduced basis.  The local ordering
(``negdegrevlex``) uses the same pair loop with Mora's tangent-cone normal
form: reducers are chosen by minimal ecart and earlier remainders are added
to the reducer set whenever their ecart is smaller than the chosen reducer's.

Every element can optionally carry a *representation* ``(u, a)`` meaning
``poly = u*f + sum_k a[k]*g[k]`` where ``g`` are the input generators and
``f`` a polynomial being tested for membership.  Basis elements have
``u = 0``.  Tracking is what turns a membership answer into a certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import BudgetExceeded
from .poly import QQ

Exp = tuple
Poly = dict


@dataclass(frozen=True)
class MonomialOrdering:
    """``degrevlex`` and ``negdegrevlex`` act on all variables.

    ``elim`` is a two-block ordering (degrevlex on each block) whose first
    ``nelim`` variables are eliminated.  ``mixed`` has the same global front
    block but is local (negdegrevlex) on the remaining variables; it
    eliminates the front block in the ring of germs at the origin.
    """

    kind: str = "degrevlex"
    nelim: int = 0

    def __post_init__(self):
        if self.kind not in ("degrevlex", "negdegrevlex", "elim", "mixed"):
            raise ValueError(f"unknown ordering {self.kind!r}")
        if self.kind in ("elim", "mixed") and self.nelim < 1:
            raise ValueError("elimination ordering needs a nonempty front block")

    @property
    def is_local(self) -> bool:
        """True when 1 is not the smallest monomial, so Mora's normal form is needed."""
        return self.kind in ("negdegrevlex", "mixed")

    def key(self) -> Callable[[Exp], tuple]:
        if self.kind == "degrevlex":
            def k(m):
                return (sum(m),) + tuple(-e for e in m[::-1])
        elif self.kind == "negdegrevlex":
            def k(m):
                return (-sum(m),) + tuple(-e for e in m[::-1])
        elif self.kind == "elim":
            r = self.nelim

            def k(m):
                a, b = m[:r], m[r:]
                return (sum(a),) + tuple(-e for e in a[::-1]) + (sum(b),) + tuple(-e for e in b[::-1])
        else:
            r = self.nelim

            def k(m):
                a, b = m[:r], m[r:]
                return (sum(a),) + tuple(-e for e in a[::-1]) + (-sum(b),) + tuple(-e for e in b[::-1])
        cache: dict = {}

        def cached(m):
            v = cache.get(m)
            if v is None:
                v = cache[m] = k(m)
            return v
        return cached


DEGREVLEX = MonomialOrdering("degrevlex")
NEGDEGREVLEX = MonomialOrdering("negdegrevlex")


@dataclass
class Budget:
    max_pairs: int = 200_000
    max_degree: int = 60
    max_terms: int = 60_000
    max_steps: int = 2_000_000
    max_gens: int = 5_000
    max_coeff_bits: int = 4_096
    max_work: int = 3_000_000  # term operations per basis computation

    def scaled(self, factor: int) -> "Budget":
        return Budget(*(getattr(self, f) * factor for f in
                        ("max_pairs", "max_degree", "max_terms", "max_steps", "max_gens", "max_coeff_bits",
                         "max_work")))


@dataclass
class EngineStats:
    pairs: int = 0
    reductions: int = 0
    work: int = 0

    def absorb(self, other: "EngineStats") -> None:
        self.pairs += other.pairs
        self.reductions += other.reductions
        self.work += other.work

    def charge(self, amount: int, budget: "Budget") -> None:
        self.work += amount
        if self.work > budget.max_work:
            raise BudgetExceeded(f"reduction work exceeded {budget.max_work} term operations")


@dataclass
class _Elem:
    poly: Poly
    lm: Exp
    lc: object
    deg: int
    sugar: int
    rep: tuple | None = None

    @property
    def ecart(self) -> int:
        return self.deg - sum(self.lm)


# -- small helpers -------------------------------------------------------

def divides(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a: Exp, b: Exp) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def _sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


def poly_degree(p: Poly) -> int:
    return max(sum(m) for m in p) if p else -1


def axpy(p: Poly, coef, shift: Exp, q: Poly) -> None:
    """In place ``p -= coef * x^shift * q``."""
    for m, c in q.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        v = p.get(mm)
        if v is None:
            p[mm] = -coef * c
        else:
            v = v - coef * c
            if v:
                p[mm] = v
            else:
                del p[mm]


def _rep_axpy(rep: tuple, coef, shift: Exp, other: tuple) -> None:
    u, a = rep
    ou, oa = other
    if ou:
        axpy(u, coef, shift, ou)
    for k, q in enumerate(oa):
        if q:
            axpy(a[k], coef, shift, q)


def _mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        for k, d in q.items():
            mk = tuple(x + y for x, y in zip(m, k))
            v = out.get(mk, 0) + c * d
            if v:
                out[mk] = v
            else:
                out.pop(mk, None)
    return out


def _sub_poly(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, 0) - c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _absorb_by_unit(h: Poly, rep, e: "_Elem"):
    """``e`` is a unit at the origin, so ``e*h - h*e = 0`` kills ``h`` outright."""
    if rep is None:
        return {}, None
    u, a = rep
    eu, ea = e.rep
    new_u = _sub_poly(_mul(e.poly, u), _mul(h, eu))
    new_a = [_sub_poly(_mul(e.poly, q), _mul(h, b)) for q, b in zip(a, ea)]
    return {}, (new_u, new_a)


def _rep_copy(rep: tuple | None) -> tuple | None:
    if rep is None:
        return None
    return (dict(rep[0]), [dict(q) for q in rep[1]])


def _rep_scale(rep: tuple, c) -> tuple:
    return ({m: v * c for m, v in rep[0].items()}, [{m: v * c for m, v in q.items()} for q in rep[1]])


def _coeff_bits(p: Poly) -> int:
    return max(max(int(c.numerator).bit_length(), int(c.denominator).bit_length()) for c in p.values())


def _check_coeff(c, budget: Budget) -> None:
    if max(int(c.numerator).bit_length(), int(c.denominator).bit_length()) > budget.max_coeff_bits:
        raise BudgetExceeded(f"coefficient size exceeds {budget.max_coeff_bits} bits")


def _make(p: Poly, key, rep=None, sugar=None) -> _Elem:
    lm = max(p, key=key)
    deg = poly_degree(p)
    return _Elem(p, lm, p[lm], deg, deg if sugar is None else sugar, rep)


def spoly(f: _Elem, g: _Elem) -> tuple[Poly, tuple | None, int]:
    L = lcm(f.lm, g.lm)
    sf, sg = _sub(L, f.lm), _sub(L, g.lm)
    p: Poly = {}
    axpy(p, -1 / f.lc, sf, f.poly)  # p = x^sf f / lc(f)
    axpy(p, 1 / g.lc, sg, g.poly)   # minus x^sg g / lc(g)
    rep = None
    if f.rep is not None:
        nv = len(f.rep[1])
        rep = ({}, [{} for _ in range(nv)])
        _rep_axpy(rep, -1 / f.lc, sf, f.rep)
        _rep_axpy(rep, 1 / g.lc, sg, g.rep)
    sugar = max(f.sugar + sum(sf), g.sugar + sum(sg))
    return p, rep, sugar


# -- normal forms --------------------------------------------------------

def local_corner(elems: Sequence[_Elem], nvars: int) -> int | None:
    """Degree ``D`` with every monomial of degree ``>= D`` a leading monomial, if any.

    For a local standard basis such ``D`` means ``m^D`` lies in the ideal.
    """
    pure = [None] * nvars
    for e in elems:
        support = [i for i, a in enumerate(e.lm) if a]
        if len(support) == 1:
            i = support[0]
            if pure[i] is None or e.lm[i] < pure[i]:
                pure[i] = e.lm[i]
        elif not support:
            return 0
    if any(a is None for a in pure):
        return None
    return sum(a - 1 for a in pure) + 1


def _truncate(h: Poly, corner: int) -> None:
    for m in [m for m in h if sum(m) >= corner]:
        del h[m]


def nf_top(h: Poly, rep, reducers: Sequence[_Elem], key, local: bool,
           budget: Budget, stats: EngineStats, corner: int | None = None) -> tuple[Poly, tuple | None]:
    """Reduce until the leading monomial is irreducible.

    ``h`` and ``rep`` are consumed.  In the local case this is Mora's
    normal form; the result is then only determined up to a unit factor,
    which the ``u`` component of the representation records.  Without a
    representation, a ``corner`` from :func:`local_corner` lets terms of
    degree ``>= corner`` be discarded as they appear.
    """
    if corner is not None and rep is None:
        _truncate(h, corner)
    else:
        corner = None
    T = list(reducers)
    if local and h:
        for g in T:
            if not any(g.lm):
                return _absorb_by_unit(h, rep, g)
    steps = 0
    while h:
        lm = max(h, key=key)
        best = None
        for g in T:
            if divides(g.lm, lm):
                if not local:
                    best = g
                    break
                if best is None or g.ecart < best.ecart:
                    best = g
                    if best.ecart == 0:
                        break
        if best is None:
            break
        coef = h[lm] / best.lc
        shift = _sub(lm, best.lm)
        if local:
            eh = poly_degree(h) - sum(lm)
            if best.ecart > eh:
                T.append(_Elem(dict(h), lm, h[lm], eh + sum(lm), 0, _rep_copy(rep)))
        axpy(h, coef, shift, best.poly)
        if rep is not None:
            _rep_axpy(rep, coef, shift, best.rep)
        if corner is not None:
            _truncate(h, corner)
        stats.charge(len(h) + len(best.poly), budget)
        _check_coeff(coef, budget)
        steps += 1
        if steps > budget.max_steps or len(h) > budget.max_terms:
            raise BudgetExceeded("normal form reduction exceeded its budget")
    stats.reductions += steps
    return h, rep


def nf_full(h: Poly, rep, reducers: Sequence[_Elem], key,
            budget: Budget, stats: EngineStats) -> tuple[Poly, tuple | None]:
    """Complete reduction for global orderings: no term of the result is divisible
    by a leading monomial of ``reducers``."""
    rem: Poly = {}
    steps = 0
    while h:
        lm = max(h, key=key)
        c = h[lm]
        for g in reducers:
            if divides(g.lm, lm):
                coef = c / g.lc
                shift = _sub(lm, g.lm)
                axpy(h, coef, shift, g.poly)
                if rep is not None:
                    _rep_axpy(rep, coef, shift, g.rep)
                stats.charge(len(h) + len(g.poly), budget)
                _check_coeff(coef, budget)
                steps += 1
                break
        else:
            rem[lm] = c
            del h[lm]
        if steps > budget.max_steps or len(h) > budget.max_terms:
            raise BudgetExceeded("normal form reduction exceeded its budget")
    stats.reductions += steps
    return rem, rep


# -- Buchberger / Mora loop ---------------------------------------------

@dataclass
class BasisResult:
    elems: list[_Elem]
    ordering: MonomialOrdering
    nvars: int
    stats: EngineStats = field(default_factory=EngineStats)

    @property
    def polys(self) -> list[Poly]:
        return [e.poly for e in self.elems]


def _update(G: list[int], B: list, elems: list[_Elem], h: int) -> list[int]:
    hl = elems[h].lm
    C = list(G)
    D: list[int] = []
    while C:
        g1 = C.pop(0)
        l1 = lcm(hl, elems[g1].lm)
        if coprime(hl, elems[g1].lm):
            D.append(g1)
            continue
        if any(divides(lcm(hl, elems[g2].lm), l1) for g2 in C) or \
                any(divides(lcm(hl, elems[g2].lm), l1) for g2 in D):
            continue
        D.append(g1)
    E = [g for g in D if not coprime(hl, elems[g].lm)]
    kept = []
    for pair in B:
        i, j, L = pair[2], pair[3], pair[4]
        if divides(hl, L) and lcm(elems[i].lm, hl) != L and lcm(elems[j].lm, hl) != L:
            continue
        kept.append(pair)
    B[:] = kept
    for g in E:
        L = lcm(hl, elems[g].lm)
        fe, ge = elems[h], elems[g]
        sugar = max(fe.sugar + sum(L) - sum(fe.lm), ge.sugar + sum(L) - sum(ge.lm))
        B.append((sugar, sum(L), g, h, L))
    return [g for g in G if not divides(hl, elems[g].lm)] + [h]


def compute_basis(gens: Sequence[Poly], nvars: int, ordering: MonomialOrdering,
                  budget: Budget | None = None, track: bool = False) -> BasisResult:
    """Standard basis of the ideal generated by ``gens``.

    Global orderings yield the reduced Groebner basis (monic, sorted by
    decreasing leading monomial).  The local ordering yields a minimal,
    monic standard basis of the ideal in the localization at the origin.
    """
    budget = budget or Budget()
    key = ordering.key()
    local = ordering.is_local
    stats = EngineStats()
    k = len(gens)
    elems: list[_Elem] = []
    G: list[int] = []
    B: list = []

    inputs = []
    for idx, g in enumerate(gens):
        if not g:
            continue
        rep = None
        if track:
            a = [{} for _ in range(k)]
            a[idx] = {(0,) * nvars: QQ(1)}
            rep = ({}, a)
        inputs.append((dict(g), rep))
    inputs.sort(key=lambda pr: key(max(pr[0], key=key)))

    def add(poly: Poly, rep, sugar=None):
        nonlocal G
        # monic elements keep rational coefficients from swelling
        c = 1 / poly[max(poly, key=key)]
        if c != 1:
            poly = {m: v * c for m, v in poly.items()}
            if rep is not None:
                rep = _rep_scale(rep, c)
        e = _make(poly, key, rep, sugar)
        if _coeff_bits(poly) > budget.max_coeff_bits:
            raise BudgetExceeded(f"coefficient size exceeds {budget.max_coeff_bits} bits")
        if e.deg > budget.max_degree:
            raise BudgetExceeded(f"degree {e.deg} exceeds cap {budget.max_degree}")
        elems.append(e)
        G = _update(G, B, elems, len(elems) - 1)

    for poly, rep in inputs:
        h, rep = nf_top(poly, rep, [elems[i] for i in G], key, local, budget, stats)
        if h:
            add(h, rep)

    while B:
        best = min(range(len(B)), key=lambda i: (B[i][0], key(B[i][4]), B[i][2], B[i][3]))
        sugar, _, i, j, L = B.pop(best)
        stats.pairs += 1
        if stats.pairs > budget.max_pairs:
            raise BudgetExceeded(f"pair budget {budget.max_pairs} exceeded")
        if sum(L) > budget.max_degree:
            raise BudgetExceeded(f"S-polynomial degree {sum(L)} exceeds cap {budget.max_degree}")
        p, rep, sugar = spoly(elems[i], elems[j])
        h, rep = nf_top(p, rep, [elems[g] for g in G], key, local, budget, stats)
        if h:
            add(h, rep, sugar)

    basis = [elems[i] for i in G]
    # minimality: drop elements whose leading monomial is divisible by another's
    basis.sort(key=lambda e: key(e.lm))
    minimal: list[_Elem] = []
    for e in basis:
        if not any(divides(m.lm, e.lm) for m in minimal):
            minimal.append(e)
    out: list[_Elem] = []
    if local:
        for e in minimal:
            c = 1 / e.lc
            poly = {m: v * c for m, v in e.poly.items()}
            out.append(_Elem(poly, e.lm, QQ(1), e.deg, e.sugar,
                             _rep_scale(e.rep, c) if e.rep is not None else None))
    else:
        for idx, e in enumerate(minimal):
            others = minimal[:idx] + minimal[idx + 1:]
            tail = dict(e.poly)
            del tail[e.lm]
            rem, rep = nf_full(tail, _rep_copy(e.rep), others, key, budget, stats)
            rem[e.lm] = e.lc
            c = 1 / e.lc
            poly = {m: v * c for m, v in rem.items()}
            out.append(_Elem(poly, e.lm, QQ(1), poly_degree(poly), e.sugar,
                             _rep_scale(rep, c) if rep is not None else None))
    out.sort(key=lambda e: key(e.lm), reverse=True)
    return BasisResult(out, ordering, nvars, stats)


def reduce_by(p: Poly, basis: BasisResult, budget: Budget | None = None,
              track_unit: bool = False) -> tuple[Poly, tuple | None]:
    """Normal form of ``p`` against a computed basis.

    With ``track_unit`` the returned representation ``(u, a)`` satisfies
    ``remainder = u*p + sum_k a[k]*g[k]`` with respect to the basis' input
    generators (the basis must have been computed with ``track=True``).
    """
    budget = budget or Budget()
    key = basis.ordering.key()
    stats = EngineStats()
    rep = None
    if track_unit:
        nv = len(basis.elems[0].rep[1]) if basis.elems else 0
        rep = ({(0,) * basis.nvars: QQ(1)}, [{} for _ in range(nv)])
    h = dict(p)
    if basis.ordering.is_local:
        corner = None if rep is not None else local_corner(basis.elems, basis.nvars)
        h, rep = nf_top(h, rep, basis.elems, key, True, budget, stats, corner)
    else:
        h, rep = nf_full(h, rep, basis.elems, key, budget, stats)
    basis.stats.absorb(stats)
    return h, rep


def all_spolys_reduce(basis: BasisResult, budget: Budget | None = None) -> bool:
    """Direct check of the Buchberger criterion on a finished basis."""
    budget = budget or Budget()
    key = basis.ordering.key()
    local = basis.ordering.is_local
    stats = EngineStats()
    E = [_Elem(e.poly, e.lm, e.lc, e.deg, e.sugar, None) for e in basis.elems]
    for i in range(len(E)):
        for j in range(i + 1, len(E)):
            p, _, _ = spoly(E[i], E[j])
            h, _ = nf_top(p, None, E, key, local, budget, stats)
            if h:
                return False
    return True

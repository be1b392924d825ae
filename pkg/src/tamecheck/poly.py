"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives over an ordered tuple of variable names
(``gens``) and stores a map ``exponent tuple -> nonzero coefficient``.
Values are never mutated after construction.

Arcs are parametrized curves ``s -> (x_1(s), ..., x_k(s))`` with polynomial
coordinates; composing a polynomial with an arc and reading off the order of
the composite in ``s`` is the basic falsification primitive of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import ContextMismatch, ValidationError

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

ARC_VAR = "s"

__all__ = [
    "QQ",
    "Polynomial",
    "Arc",
    "ArcOrderResult",
    "arc_compose",
    "arc_order",
    "t_expansion",
    "translate_to_point",
    "format_rational",
    "degrevlex_key",
]


def to_qq(value) -> "QQ":
    if isinstance(value, float):
        raise TypeError("floating point coefficients are not allowed")
    return QQ(value)


def format_rational(c) -> str:
    c = QQ(c)
    return str(c)


def degrevlex_key(m: tuple[int, ...]) -> tuple:
    """Sort key: larger key means larger monomial in degrevlex."""
    return (sum(m), tuple(-e for e in reversed(m)))


def _add_exp(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x + y for x, y in zip(a, b))


class Polynomial:
    __slots__ = ("gens", "terms", "_hash")

    def __init__(self, gens: Iterable[str], terms: Mapping[tuple[int, ...], object] | None = None):
        gens = tuple(gens)
        n = len(gens)
        clean = {}
        if terms:
            for m, c in terms.items():
                m = tuple(int(e) for e in m)
                if len(m) != n:
                    raise ValueError(f"exponent {m} does not match {n} variables")
                if any(e < 0 for e in m):
                    raise ValueError(f"negative exponent in {m}")
                c = to_qq(c)
                if c:
                    clean[m] = clean.get(m, 0) + c
                    if not clean[m]:
                        del clean[m]
        self.gens = gens
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, gens: tuple[str, ...], terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.gens = gens
        p.terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, gens: Iterable[str]) -> "Polynomial":
        return cls._raw(tuple(gens), {})

    @classmethod
    def constant(cls, gens: Iterable[str], c) -> "Polynomial":
        gens = tuple(gens)
        c = to_qq(c)
        return cls._raw(gens, {(0,) * len(gens): c} if c else {})

    @classmethod
    def one(cls, gens: Iterable[str]) -> "Polynomial":
        return cls.constant(gens, 1)

    @classmethod
    def var(cls, gens: Iterable[str], name: str) -> "Polynomial":
        gens = tuple(gens)
        i = gens.index(name)
        e = [0] * len(gens)
        e[i] = 1
        return cls._raw(gens, {tuple(e): QQ(1)})

    @classmethod
    def monomial(cls, gens: Iterable[str], exps: Sequence[int], c=1) -> "Polynomial":
        return cls(gens, {tuple(exps): c})

    # -- basic queries -------------------------------------------------
    @property
    def nvars(self) -> int:
        return len(self.gens)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * len(self.gens), QQ(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def low_degree(self) -> int:
        """Smallest total degree of a term; -1 for zero."""
        return min((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.gens.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def variables(self) -> set[str]:
        used = set()
        for m in self.terms:
            for name, e in zip(self.gens, m):
                if e:
                    used.add(name)
        return used

    def free_of(self, name: str) -> bool:
        i = self.gens.index(name)
        return all(m[i] == 0 for m in self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- ring structure -----------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.gens != self.gens:
                raise ContextMismatch(f"variables {other.gens} vs {self.gens}")
            return other
        if isinstance(other, float):
            raise TypeError("floating point values are not allowed")
        return Polynomial.constant(self.gens, other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if len(other.terms) > len(self.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        r = dict(a)
        for m, c in b.items():
            v = r.get(m)
            if v is None:
                r[m] = c
            else:
                v = v + c
                if v:
                    r[m] = v
                else:
                    del r[m]
        return Polynomial._raw(self.gens, r)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.gens, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = to_qq(other)
            if not c:
                return Polynomial.zero(self.gens)
            return Polynomial._raw(self.gens, {m: v * c for m, v in self.terms.items()})
        other = self._coerce(other)
        r: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = r.get(m)
                r[m] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial._raw(self.gens, {m: c for m, c in r.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.one(self.gens)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> "Polynomial":
        return self * c

    def __truediv__(self, c) -> "Polynomial":
        if isinstance(c, Polynomial):
            if not c.is_constant() or c.is_zero():
                raise ValueError("division only by nonzero constants")
            c = c.constant_term()
        c = to_qq(c)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self * (1 / c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.gens == other.gens and self.terms == other.terms
        if isinstance(other, (int, type(QQ(0)))):
            return self.terms == ({(0,) * len(self.gens): QQ(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.gens, frozenset(self.terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------
    def diff(self, name: str) -> "Polynomial":
        i = self.gens.index(name)
        r = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                r[mm] = c * e
        return Polynomial._raw(self.gens, r)

    def evaluate(self, point) -> "QQ":
        """Exact value at a point given as a sequence or a name->value map."""
        if isinstance(point, Mapping):
            values = [to_qq(point[g]) for g in self.gens]
        else:
            values = [to_qq(v) for v in point]
            if len(values) != len(self.gens):
                raise ContextMismatch("point has wrong arity")
        total = QQ(0)
        for m, c in self.terms.items():
            v = c
            for x, e in zip(values, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def subs(self, assignment: Mapping[str, object], gens: Iterable[str] | None = None) -> "Polynomial":
        """Simultaneous substitution ``name -> value`` into a polynomial over ``gens``.

        Values may be scalars or polynomials over the target ``gens`` (default:
        this polynomial's own variables).  Variables not assigned are carried
        over by name and must exist in the target variable list.
        """
        target = tuple(gens) if gens is not None else self.gens
        images = []
        for name in self.gens:
            if name in assignment:
                v = assignment[name]
                if isinstance(v, Polynomial):
                    if v.gens != target:
                        v = v.embed(target)
                    images.append(v)
                else:
                    images.append(Polynomial.constant(target, v))
            elif name in target:
                images.append(Polynomial.var(target, name))
            else:
                images.append(None)
        cache: list[dict[int, Polynomial]] = [dict() for _ in self.gens]

        def power(i: int, e: int) -> Polynomial:
            got = cache[i].get(e)
            if got is None:
                if images[i] is None:
                    raise ValueError(f"variable {self.gens[i]} is not assigned")
                got = images[i] ** e
                cache[i][e] = got
            return got

        result: dict = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(target, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for mm, cc in term.terms.items():
                v = result.get(mm, 0) + cc
                if v:
                    result[mm] = v
                else:
                    result.pop(mm, None)
        return Polynomial._raw(target, result)

    def embed(self, gens: Iterable[str]) -> "Polynomial":
        """Same polynomial viewed over a different variable list (by name)."""
        gens = tuple(gens)
        if gens == self.gens:
            return self
        pos = {g: i for i, g in enumerate(gens)}
        idx = []
        for i, g in enumerate(self.gens):
            if g in pos:
                idx.append((i, pos[g]))
        used = self.variables()
        missing = used - set(gens)
        if missing:
            raise ContextMismatch(f"variables {sorted(missing)} not present in {gens}")
        r = {}
        n = len(gens)
        for m, c in self.terms.items():
            e = [0] * n
            for i, j in idx:
                e[j] = m[i]
            r[tuple(e)] = c
        return Polynomial._raw(gens, r)

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        comps: dict[int, dict] = {}
        for m, c in self.terms.items():
            comps.setdefault(sum(m), {})[m] = c
        return {d: Polynomial._raw(self.gens, t) for d, t in sorted(comps.items())}

    def content_primitive(self) -> "Polynomial":
        """Scale so that the degrevlex-leading coefficient is 1."""
        if not self.terms:
            return self
        lead = max(self.terms, key=degrevlex_key)
        return self * (1 / self.terms[lead])

    def sorted_terms(self) -> list[tuple[tuple[int, ...], "QQ"]]:
        return sorted(self.terms.items(), key=lambda mc: degrevlex_key(mc[0]), reverse=True)

    # -- printing ------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (g if e == 1 else f"{g}^{e}") for g, e in zip(self.gens, m) if e
            )
            neg = c < 0
            a = -c if neg else c
            if not mono:
                body = format_rational(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_rational(a)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({', '.join(self.gens)}: {self})"


def translate_to_point(p: Polynomial, point: Sequence, names: Sequence[str] | None = None) -> Polynomial:
    """Return ``p(x + x0)`` so that germs at ``x0`` become germs at the origin.

    ``names`` selects which variables are shifted (default: the first
    ``len(point)`` variables of ``p``).
    """
    if names is None:
        if len(point) > len(p.gens):
            raise ContextMismatch("point has more coordinates than variables")
        names = p.gens[: len(point)]
    if len(names) != len(point):
        raise ContextMismatch("point arity does not match the variables to shift")
    assignment = {}
    for name, a in zip(names, point):
        a = to_qq(a)
        if a:
            assignment[name] = Polynomial.var(p.gens, name) + a
    if not assignment:
        return p
    return p.subs(assignment)


def t_expansion(F: Polynomial, param: str) -> list[Polynomial]:
    """Coefficients ``f_0, f_1, ...`` of ``F = sum_j param^j f_j`` over the spatial variables.

    Raises ValidationError if some ``f_j`` does not vanish at the origin.
    """
    i = F.gens.index(param)
    spatial = F.gens[:i] + F.gens[i + 1:]
    d = max(F.degree_in(param), 0)
    buckets: list[dict] = [dict() for _ in range(d + 1)]
    for m, c in F.terms.items():
        buckets[m[i]][m[:i] + m[i + 1:]] = c
    coeffs = [Polynomial._raw(spatial, b) for b in buckets]
    for j, f in enumerate(coeffs):
        if f.constant_term():
            raise ValidationError(f"coefficient f_{j} does not vanish at the origin")
    return coeffs


# ----------------------------------------------------------------------
# arcs


@dataclass(frozen=True)
class ArcOrderResult:
    order: float  # int, or math.inf for an identically zero composite
    leading_coeff: object

    @property
    def is_infinite(self) -> bool:
        return self.order == math.inf


@dataclass(frozen=True)
class Arc:
    """Polynomial arc ``s -> base + coords(s)``; without a base it is a germ at 0."""

    coords: tuple[Polynomial, ...]
    base_point: tuple | None = None

    def __post_init__(self):
        coords = tuple(
            c if c.gens == (ARC_VAR,) else c.embed((ARC_VAR,)) for c in self.coords
        )
        object.__setattr__(self, "coords", coords)
        for c in coords:
            if c.constant_term():
                raise ValidationError("arc coordinates must vanish at s = 0")
        if self.base_point is not None:
            bp = tuple(to_qq(a) for a in self.base_point)
            if len(bp) != len(coords):
                raise ValidationError("base point arity differs from arc arity")
            object.__setattr__(self, "base_point", bp)

    @classmethod
    def monomial(cls, pairs: Sequence[tuple[object, int] | None], base_point=None) -> "Arc":
        """Build from ``(coefficient, weight)`` pairs; ``None`` freezes a coordinate at 0."""
        coords = []
        for item in pairs:
            if item is None:
                coords.append(Polynomial.zero((ARC_VAR,)))
            else:
                c, w = item
                coords.append(Polynomial((ARC_VAR,), {(w,): c}))
        return cls(tuple(coords), base_point)

    @classmethod
    def from_strings(cls, coords: Sequence[str], base_point=None) -> "Arc":
        from .exprparse import parse_in_gens

        return cls(tuple(parse_in_gens(c, (ARC_VAR,)) for c in coords), base_point)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def is_monomial(self) -> bool:
        return self.base_point is None and all(len(c.terms) <= 1 for c in self.coords)

    def is_constant(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def point_at_zero(self) -> tuple:
        if self.base_point is None:
            return tuple(QQ(0) for _ in self.coords)
        return self.base_point

    def shifted(self) -> tuple[Polynomial, ...]:
        """Absolute coordinates ``base + coords(s)``."""
        if self.base_point is None:
            return self.coords
        return tuple(c + a for c, a in zip(self.coords, self.base_point))

    def strings(self) -> list[str]:
        return [str(c) for c in self.coords]

    def __str__(self) -> str:
        body = "(" + ", ".join(self.strings()) + ")"
        if self.base_point is not None:
            body += " at (" + ", ".join(format_rational(a) for a in self.base_point) + ")"
        return body


def _compose_monomial_arc(p: Polynomial, arc: Arc) -> dict[int, object]:
    data = []
    for c in arc.coords:
        if c.terms:
            ((w,), a), = c.terms.items()
            data.append((w, a))
        else:
            data.append(None)
    out: dict[int, object] = {}
    for m, c in p.terms.items():
        deg = 0
        v = c
        for d, e in zip(data, m):
            if e:
                if d is None:
                    v = None
                    break
                deg += d[0] * e
                v = v * d[1] ** e
        if v is None:
            continue
        out[deg] = out.get(deg, 0) + v
    return {k: v for k, v in out.items() if v}


def arc_compose(p: Polynomial, arc: Arc) -> Polynomial:
    """Exact composite ``p(arc(s))`` as a polynomial in ``s``."""
    if len(arc.coords) != len(p.gens):
        raise ContextMismatch(f"arc has {len(arc.coords)} coordinates, polynomial {len(p.gens)} variables")
    if arc.is_monomial():
        return Polynomial._raw((ARC_VAR,), {(k,): v for k, v in _compose_monomial_arc(p, arc).items()})
    if arc.base_point is not None:
        p = translate_to_point(p, arc.base_point)
    # powers of each coordinate are built once and reused across terms
    coords = arc.coords
    one = Polynomial.one((ARC_VAR,))
    powers: list[list[Polynomial]] = [[one] for _ in coords]

    def power(i: int, e: int) -> Polynomial:
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * coords[i])
        return cache[e]

    result: dict = {}
    for m, c in p.terms.items():
        term = {(0,): c}
        for i, e in enumerate(m):
            if e:
                q = power(i, e)
                nxt: dict = {}
                for (a,), x in term.items():
                    for (b,), y in q.terms.items():
                        k = (a + b,)
                        nxt[k] = nxt.get(k, 0) + x * y
                term = nxt
                if not term:
                    break
        for k, v in term.items():
            result[k] = result.get(k, 0) + v
    return Polynomial._raw((ARC_VAR,), {k: v for k, v in result.items() if v})


def order_of_univariate(u: Polynomial) -> ArcOrderResult:
    if not u.terms:
        return ArcOrderResult(math.inf, QQ(0))
    k = min(m[0] for m in u.terms)
    return ArcOrderResult(k, u.terms[(k,)])


def arc_order(p: Polynomial, arc: Arc) -> ArcOrderResult:
    """Order in ``s`` of ``p`` along the arc (``math.inf`` if identically zero)."""
    if arc.is_monomial():
        comp = _compose_monomial_arc(p, arc)
        if not comp:
            return ArcOrderResult(math.inf, QQ(0))
        k = min(comp)
        return ArcOrderResult(k, comp[k])
    return order_of_univariate(arc_compose(p, arc))

"""Deterministic catalog of test arcs through the origin.

Each coordinate of an arc is ``0``, ``c*s^w`` or ``c*s^w + c'*s^w'`` with
``1 <= w < w' <= W``, ``c`` from a small fixed set and ``c' = +-1``.  Arcs are
listed by increasing cost and, within one cost, in a fixed lexicographic
order, so two runs always visit the same arcs in the same order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .poly import ARC_VAR, QQ, Arc, Polynomial, arc_order

DEFAULT_COEFFICIENTS = tuple(QQ(c) for c in ("1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3", "3/2", "-3/2"))


DEFAULT_CORRECTIONS = (QQ(1), QQ(-1))


def coefficient_height(c) -> int:
    c = QQ(c)
    return abs(int(c.numerator)) + int(c.denominator) - 2


@dataclass(frozen=True)
class ArcCatalog:
    dim: int
    max_weight: int = 4
    max_arcs: int = 20000
    coefficients: tuple = DEFAULT_COEFFICIENTS
    frozen: frozenset = field(default_factory=frozenset)
    corrections: tuple = DEFAULT_CORRECTIONS  # coefficients allowed on the second term

    @cached_property
    def options(self) -> list[tuple[int, Polynomial]]:
        """Coordinate choices as ``(cost, polynomial in s)`` sorted by cost."""
        opts: list[tuple[int, int, Polynomial]] = []
        order = 0
        W = self.max_weight
        for w in range(1, W + 1):
            for c in self.coefficients:
                opts.append((w + coefficient_height(c), order, Polynomial((ARC_VAR,), {(w,): c})))
                order += 1
        for w in range(1, W + 1):
            for w2 in range(w + 1, W + 1):
                for c in self.coefficients:
                    for c2 in self.corrections:
                        cost = w2 + coefficient_height(c) + coefficient_height(c2)
                        opts.append((cost, order, Polynomial((ARC_VAR,), {(w,): c, (w2,): c2})))
                        order += 1
        opts.sort(key=lambda o: (o[0], o[1]))
        return [(cost, p) for cost, _, p in opts]

    @cached_property
    def _by_cost(self) -> dict[int, list[Polynomial]]:
        table: dict[int, list[Polynomial]] = {}
        for cost, p in self.options:
            table.setdefault(cost, []).append(p)
        return table

    def __iter__(self) -> Iterator[Arc]:
        zero = Polynomial.zero((ARC_VAR,))
        table = self._by_cost
        costs = sorted(table)
        free = [i for i in range(self.dim) if i not in self.frozen]
        if not free:
            return
        max_total = costs[-1] * len(free)
        emitted = 0

        def fill(pos: int, remaining: int, chosen: list):
            if pos == len(free):
                if remaining == 0:
                    yield list(chosen)
                return
            # option "zero" costs nothing
            rest = len(free) - pos - 1
            for cost in [0] + costs:
                if cost > remaining:
                    break
                if remaining - cost > costs[-1] * rest:
                    continue
                choices = [zero] if cost == 0 else table[cost]
                for p in choices:
                    chosen.append(p)
                    yield from fill(pos + 1, remaining - cost, chosen)
                    chosen.pop()

        for total in range(1, max_total + 1):
            for picked in fill(0, total, []):
                coords = [zero] * self.dim
                for i, p in zip(free, picked):
                    coords[i] = p
                yield Arc(tuple(coords))
                emitted += 1
                if emitted >= self.max_arcs:
                    return


def arcs_inside(gens: Sequence[Polynomial], catalog: ArcCatalog,
                nonvanishing: Sequence[Polynomial] = ()) -> Iterator[Arc]:
    """Catalog arcs along which every ``gens`` polynomial vanishes identically,
    and (if given) some ``nonvanishing`` polynomial does not."""
    for arc in catalog:
        if all(math.isinf(arc_order(g, arc).order) for g in gens):
            if not nonvanishing or any(not math.isinf(arc_order(h, arc).order) for h in nonvanishing):
                yield arc

"""Exhaustive generation and counting of canonical subdivisions.

Shapes of arity ``n`` are built from a root cut ``(k, w)``, a composition of
``n`` into ``arity(w)`` parts and one canonical shape per part.  The result
is canonical exactly when no direction below ``k`` is admissible in every
child, so each shape is produced once and no deduplication is needed.
Shapes of each arity are grouped by their admissible-root set, which lets
the root test run once per group tuple instead of once per tree.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from math import factorial

from .errors import BudgetExceeded
from .series import f_series
from .subdivision import LEAF, Cut, to_sexpr

DEFAULT_BUDGET = 10 ** 7
BUDGET_ENV = "CUTOPERAD_BUDGET"


def default_budget():
    try:
        return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))
    except ValueError:
        return DEFAULT_BUDGET


def compositions(n, parts):
    """Ordered tuples of ``parts`` positive integers summing to ``n``."""
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in compositions(n - first, parts - 1):
            yield (first,) + rest


def _adm(t):
    return t.adm if isinstance(t, Cut) else ()


class ShapeGenerator:
    """Caches canonical shapes by arity, grouped by admissible-root set.

    ``budget`` caps the number of shape nodes generated over the lifetime of
    the generator; exceeding it raises :class:`BudgetExceeded`.
    """

    def __init__(self, sig, budget=None):
        self.sig = sig
        self.budget = default_budget() if budget is None else budget
        self.generated = 0
        self._groups = {1: {(): [LEAF]}}
        self._roots = [(g.direction, g.name, g.arity) for g in sig.all_generators()]

    def _spend(self, k=1):
        self.generated += k
        if self.generated > self.budget:
            raise BudgetExceeded(
                f"shape budget of {self.budget} nodes exhausted at {self.generated}")

    def groups(self, n):
        """``{adm-set: [shapes]}`` for arity ``n`` (materialized and cached)."""
        for m in range(2, n + 1):
            if m not in self._groups:
                grouped = {}
                for shp in self._generate(m):
                    grouped.setdefault(shp.adm, []).append(shp)
                self._groups[m] = grouped
        return self._groups[n]

    def iter_shapes(self, n):
        """Stream arity-``n`` shapes without caching arity ``n`` itself."""
        if n in self._groups:
            for grp in self._groups[n].values():
                yield from grp
            return
        for m in range(2, n):
            self.groups(m)
        yield from self._generate(n)

    def _generate(self, n):
        for k, w, m in self._roots:
            if m > n:
                continue
            for comp in compositions(n, m):
                if any(c not in self._groups for c in comp):
                    # only reachable when called through groups(), which fills in order
                    for c in comp:
                        self.groups(c)
                for keys in itertools.product(*(self._groups[c].keys() for c in comp)):
                    common = _intersect(keys, k)
                    if common and common[0][0] < k:
                        continue
                    adm = tuple(sorted(((k, w),) + common))
                    lists = [self._groups[c][key] for c, key in zip(comp, keys)]
                    size = 1
                    for lst in lists:
                        size *= len(lst)
                    self._spend(size)
                    for kids in itertools.product(*lists):
                        yield Cut(k, w, kids, adm)

    def count(self, n):
        """Number of canonical shapes of arity ``n``, counted by generating them."""
        if n == 1:
            return 1
        if n in self._groups:
            return sum(len(g) for g in self._groups[n].values())
        return sum(1 for _ in self.iter_shapes(n))


def _intersect(keys, exclude):
    first = keys[0]
    cand = [p for p in first if p[0] != exclude]
    for key in keys[1:]:
        if not cand:
            break
        cand = [p for p in cand if p in key]
    return tuple(cand)


def enumerate_shapes(sig, n, budget=None) -> list:
    """All canonical shapes of arity ``n``, sorted by their S-expression."""
    if n < 1:
        raise ValueError("arity must be at least 1")
    gen = ShapeGenerator(sig, budget)
    return sorted(gen.iter_shapes(n), key=to_sexpr)


@dataclass
class CountTable:
    """``shapes[n]`` for ``n = 1..N`` (index 0 unused)."""

    shapes: list = field(default_factory=lambda: [0])

    @property
    def max_arity(self):
        return len(self.shapes) - 1

    def elements(self, n):
        return self.shapes[n] * factorial(n)

    def rows(self):
        return [{"arity": n, "shapes": self.shapes[n], "elements": self.elements(n)}
                for n in range(1, len(self.shapes))]


def count_by_enumeration(sig, N, budget=None) -> CountTable:
    gen = ShapeGenerator(sig, budget)
    return CountTable([0] + [gen.count(n) for n in range(1, N + 1)])


def count_by_recurrence(sig, N) -> CountTable:
    """Shape counts as the coefficients of the inverse of ``N(D(s))``."""
    f = f_series(sig, N)
    out = [0]
    for n in range(1, N + 1):
        c = f[n]
        if getattr(c, "denominator", 1) != 1:
            raise ArithmeticError(f"non-integral coefficient {c} at x^{n}")
        out.append(int(c))
    return CountTable(out)


def crosscheck(sig, N, budget=None) -> dict:
    """Compare brute-force counts with the functional-equation counts up to ``N``."""
    rec = count_by_recurrence(sig, N)
    gen = ShapeGenerator(sig, budget)
    rows, first_bad = [], None
    for n in range(1, N + 1):
        brute = gen.count(n)
        row = {"arity": n, "brute_force": brute, "recurrence": rec.shapes[n],
               "elements": rec.elements(n)}
        rows.append(row)
        if brute != rec.shapes[n] and first_bad is None:
            first_bad = row
    return {"pass": first_bad is None, "first_mismatch": first_bad, "rows": rows}

"""The free right-module resolution of the augmentation module, made explicit.

A basis element is a two-coloured subdivision: a *black* grid given by a
strictly increasing list of ``(direction, generator)`` pairs, all cutting the
whole cube simultaneously, and inside each grid cell a numbered canonical
(*white*) subdivision.  Cells are stored in row-major order over the black
directions.  Homological degree is the number of black directions.

``d`` whitens one black system at a time (sign ``(-1)^(p-1)`` for the
``p``-th), ``h`` blackens one cut-through direction (sign from moving the new
wedge factor into increasing order).  A direction is cut-through when every
cell admits the same root cut in it, so the blackened grid is again a basis
element.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from fractions import Fraction
from math import factorial, prod
from typing import NamedTuple

from .enumeration import ShapeGenerator, compositions, default_budget
from .errors import BudgetExceeded, CutOperadError
from .series import composition_dimension, graded_dirichlet
from .subdivision import Cut, arity, join, relabel, slab


class ChainBasisElement(NamedTuple):
    black: tuple   # ((direction, generator), ...) strictly increasing directions
    cells: tuple   # canonical numbered trees, row-major over the black grid

    @property
    def degree(self):
        return len(self.black)

    @property
    def arity(self):
        return sum(arity(c) for c in self.cells)


def grid_shape(black, sig):
    return tuple(sig.arity(w) for _, w in black)


def _strides(dims):
    out, acc = [], 1
    for m in reversed(dims):
        out.append(acc)
        acc *= m
    return tuple(reversed(out))


def add_into(vec, key, coeff):
    c = vec.get(key, 0) + coeff
    if c:
        vec[key] = c
    else:
        vec.pop(key, None)


# ---------------------------------------------------------------------------
# d and h


def whiten(C: ChainBasisElement, p, sig) -> ChainBasisElement:
    """Turn the ``p``-th (0-based) black system white, merging cells along it."""
    dims = grid_shape(C.black, sig)
    k, w = C.black[p]
    m = dims[p]
    rest = dims[:p] + dims[p + 1:]
    strides = _strides(dims)
    cells = []
    for idx in itertools.product(*(range(x) for x in rest)):
        base = sum(i * s for i, s in zip(idx[:p] + (0,) + idx[p:], strides))
        cells.append(join(k, w, tuple(C.cells[base + j * strides[p]] for j in range(m))))
    return ChainBasisElement(C.black[:p] + C.black[p + 1:], tuple(cells))


def differential(C: ChainBasisElement, sig) -> dict:
    """``d(C)`` as a ``{basis element: coefficient}`` dict."""
    out = {}
    for p in range(len(C.black)):
        add_into(out, whiten(C, p, sig), -1 if p % 2 else 1)
    return out


def cut_through_data(C: ChainBasisElement) -> list:
    """Directions (with generator) along which every cell admits the same root cut.

    Black directions are excluded.  At most one entry per direction.
    """
    black_dirs = {k for k, _ in C.black}
    first = C.cells[0]
    if not isinstance(first, Cut):
        return []
    cand = [p for p in first.adm if p[0] not in black_dirs]
    for c in C.cells[1:]:
        if not cand:
            break
        if not isinstance(c, Cut):
            return []
        cand = [p for p in cand if p in c.adm]
    return cand


def blacken(C: ChainBasisElement, k, v, sig):
    """Blacken the cut-through system ``(k, v)``; returns ``(sign, element)``."""
    m = sig.arity(v)
    q = sum(1 for kk, _ in C.black if kk < k)
    dims = grid_shape(C.black, sig)
    new_black = C.black[:q] + ((k, v),) + C.black[q:]
    split = [tuple(slab(c, k, v, j, m) for j in range(m)) for c in C.cells]
    strides = _strides(dims)
    cells = []
    for idx in itertools.product(*(range(x) for x in dims[:q] + (m,) + dims[q:])):
        old = idx[:q] + idx[q + 1:]
        cells.append(split[sum(i * s for i, s in zip(old, strides))][idx[q]])
    return (-1 if q % 2 else 1), ChainBasisElement(new_black, tuple(cells))


def homotopy(C: ChainBasisElement, sig) -> dict:
    """``h(C)``: sum over cut-through directions of the blackened element."""
    out = {}
    for k, v in cut_through_data(C):
        sign, B = blacken(C, k, v, sig)
        add_into(out, B, sign)
    return out


def apply(op, vec, sig):
    out = {}
    for C, c in vec.items():
        for D, e in op(C, sig).items():
            add_into(out, D, c * e)
    return out


def weight(C: ChainBasisElement):
    """``n_b + n_w``: black cuts plus cut-through directions."""
    return len(C.black) + len(cut_through_data(C))


def total(C: ChainBasisElement, sig):
    """The underlying numbered subdivision with all cuts white."""
    while C.black:
        C = whiten(C, 0, sig)
    return C.cells[0]


# ---------------------------------------------------------------------------
# bases


def black_data(sig, degree):
    """All black data with ``degree`` directions, in a fixed order."""
    for dirs in itertools.combinations(range(1, sig.d + 1), degree):
        for gens in itertools.product(*(sig.in_direction(k) for k in dirs)):
            yield tuple((k, g.name) for k, g in zip(dirs, gens))


def basis(sig, n, degree, shapes=None, budget=None):
    """All basis elements of arity ``n`` and homological degree ``degree``.

    Ordered by black datum, then cell arities, then cell shapes (generation
    order), then numbering in lexicographic order.
    """
    if not 0 <= degree <= sig.d:
        return []
    gen = shapes or ShapeGenerator(sig, budget)
    limit = default_budget() if budget is None else budget
    out = []
    perms = list(itertools.permutations(range(1, n + 1)))
    for black in black_data(sig, degree):
        K = prod(grid_shape(black, sig))
        if K > n:
            continue
        for comp in compositions(n, K):
            lists = [[s for grp in gen.groups(c).values() for s in grp] for c in comp]
            for cell_shapes in itertools.product(*lists):
                for p in perms:
                    it = iter(p)
                    cells = tuple(relabel(s, [next(it) for _ in range(c)])
                                  for s, c in zip(cell_shapes, comp))
                    out.append(ChainBasisElement(black, cells))
                if len(out) > limit:
                    raise BudgetExceeded(f"basis larger than budget {limit}")
    return out


def predicted_dimensions(sig, n, shape_counts):
    """``dim (H o C)_h(n)`` per degree from the collection formulas."""
    graded = graded_dirichlet(sig, n)
    return [composition_dimension(lambda k, E=E: E[k] * factorial(k),
                                  lambda k: shape_counts[k] * factorial(k), n)
            for E in graded]


# ---------------------------------------------------------------------------
# exact linear algebra


def rank(columns) -> int:
    """Rank over Q of the matrix whose columns are sparse ``{row: value}`` dicts.

    Gaussian elimination in column order with pivots on the smallest row key;
    entries are Fractions, so the result is exact.
    """
    pivots = {}  # row -> reduced column with that leading row
    r = 0
    for col in columns:
        v = {k: Fraction(x) for k, x in col.items() if x}
        while v:
            lead = min(v)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = v
                r += 1
                break
            f = v[lead] / piv[lead]
            for k, x in piv.items():
                y = v.get(k, 0) - f * x
                if y:
                    v[k] = y
                else:
                    v.pop(k, None)
    return r


def _ranks_of_block(elems, sig):
    """Ranks of ``d`` from each degree within one block of basis elements."""
    by_deg = defaultdict(list)
    for C in elems:
        by_deg[C.degree].append(C)
    out = {}
    for h, cs in by_deg.items():
        if h == 0:
            continue
        index = {C: i for i, C in enumerate(by_deg.get(h - 1, []))}
        cols = []
        for C in cs:
            col = {}
            for D, c in differential(C, sig).items():
                if D not in index:
                    raise CutOperadError("differential left its block; basis is incomplete")
                col[index[D]] = c
            cols.append(col)
        out[h] = rank(cols)
    return out


def homology_ranks(sig, n, bases=None, blocks=True):
    """Per degree: dimension, rank of ``d`` out of it, and homology dimension.

    ``d`` and ``h`` never change the underlying uncoloured subdivision, so the
    complex is a direct sum of small complexes, one per numbered subdivision;
    with ``blocks=True`` ranks are computed blockwise and summed.
    """
    if bases is None:
        gen = ShapeGenerator(sig)
        bases = [basis(sig, n, h, gen) for h in range(sig.d + 1)]
    dims = [len(b) for b in bases]
    ranks = [0] * (len(bases) + 1)
    if blocks:
        grouped = defaultdict(list)
        for b in bases:
            for C in b:
                grouped[total(C, sig)].append(C)
        for elems in grouped.values():
            for h, r in _ranks_of_block(elems, sig).items():
                ranks[h] += r
    else:
        ranks_ = _ranks_of_block([C for b in bases for C in b], sig)
        for h, r in ranks_.items():
            ranks[h] = r
    rows = []
    for h in range(len(bases)):
        rows.append({"degree": h, "dim": dims[h], "rank_d": ranks[h],
                     "homology": dims[h] - ranks[h] - ranks[h + 1]})
    return rows


# ---------------------------------------------------------------------------
# verification


def verify_arity(sig, n, gen=None, check_ranks=True):
    """Run every exhaustive check at arity ``n``; returns a JSON-able report."""
    gen = gen or ShapeGenerator(sig)
    bases = [basis(sig, n, h, gen) for h in range(sig.d + 1)]
    failures = []

    def fail(kind, C, detail=""):
        if len(failures) < 20:
            failures.append({"check": kind, "element": _describe(C), "detail": detail})

    counts = [0] + [gen.count(m) for m in range(1, n + 1)]
    predicted = predicted_dimensions(sig, n, counts)
    dims = [len(b) for b in bases]
    if dims != predicted:
        failures.append({"check": "dimensions", "element": None,
                         "detail": f"basis sizes {dims} vs predicted {predicted}"})

    n_checked = 0
    for b in bases:
        for C in b:
            n_checked += 1
            dC = differential(C, sig)
            if apply(differential, dC, sig):
                fail("d^2 = 0", C)
            for D in dC:
                if all(not isinstance(c, Cut) for c in D.cells):
                    fail("minimality", C, "a differential term has no white cut")
            hC = homotopy(C, sig)
            p = weight(C)
            if any(weight(D) != p for D in list(dC) + list(hC)):
                fail("weight closure", C)
            lhs = apply(differential, hC, sig)
            for D, c in apply(homotopy, dC, sig).items():
                add_into(lhs, D, c)
            if lhs != ({C: p} if p else {}):
                fail("dh + hd = (n_b + n_w) id", C)

    report = {"arity": n, "basis_elements": n_checked, "dims": dims,
              "predicted_dims": predicted}
    if check_ranks:
        rows = homology_ranks(sig, n, bases)
        report["ranks"] = rows
        expected = [1 if (n == 1 and r["degree"] == 0) else 0 for r in rows]
        if [r["homology"] for r in rows] != expected:
            failures.append({"check": "homology", "element": None,
                             "detail": f"homology {[r['homology'] for r in rows]}"})
    report["failures"] = failures
    report["pass"] = not failures
    return report


def verify_resolution(sig, max_arity, check_ranks=True, budget=None):
    gen = ShapeGenerator(sig, budget)
    arities = [verify_arity(sig, n, gen, check_ranks) for n in range(1, max_arity + 1)]
    return {"pass": all(a["pass"] for a in arities), "max_arity": max_arity,
            "signature": sig.to_json(), "arities": arities}


def _describe(C):
    from .subdivision import to_sexpr
    return {"black": [list(b) for b in C.black], "cells": [to_sexpr(c) for c in C.cells]}

"""Exact geometric realization of subdivisions.

A :class:`GeomForm` lists the boxes of a subdivision of ``[0, 1]^d`` with
rational corners, the payload carried by each box and, for each of the
``2d`` faces of a box, either ``BOUNDARY`` or the name of the generator
labelling the cut that face lies on.  Comparing geometric forms is the
ground-truth equality test; nothing here looks at tree structure beyond
building the boxes, so it is independent of the normal-form code.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import AmbiguousRootError, StructureError
from .subdivision import Node, _kids, is_tree

BOUNDARY = None

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class GeomForm:
    """``cells`` is a tuple of ``(box, payload, faces)`` sorted by box.

    ``box`` is a tuple of ``(lo, hi)`` Fractions per direction and ``faces``
    a tuple ``(lo_1, hi_1, lo_2, hi_2, ...)`` of labels.
    """

    d: int
    cells: tuple

    @property
    def arity(self):
        return len(self.cells)

    def boxes(self):
        return [c[0] for c in self.cells]

    def payloads(self):
        return [c[1] for c in self.cells]

    def face_label(self, i, k, side):
        """Label of face ``side`` ('lo' or 'hi') in direction ``k`` of cell ``i``."""
        return self.cells[i][2][2 * (k - 1) + (side == "hi")]

    def denominators(self):
        return {x.denominator for box, _, _ in self.cells for lo, hi in box for x in (lo, hi)}


def to_geom(t, d) -> GeomForm:
    """Realize a tree (canonical or construction) or bare payload in ``[0,1]^d``."""
    cells = []

    def go(x, box, faces):
        if not is_tree(x):
            cells.append((box, x, faces))
            return
        kids = _kids(x)
        k = x.dir
        if not 1 <= k <= d:
            raise StructureError(f"direction {k} outside 1..{d}")
        m = len(kids)
        lo, hi = box[k - 1]
        step = (hi - lo) / m
        for j, child in enumerate(kids):
            a = lo + j * step
            b = hi if j == m - 1 else a + step
            nb = box[:k - 1] + ((a, b),) + box[k:]
            nf = list(faces)
            if j > 0:
                nf[2 * (k - 1)] = x.gen
            if j < m - 1:
                nf[2 * (k - 1) + 1] = x.gen
            go(child, nb, tuple(nf))

    go(t, ((_ZERO, _ONE),) * d, (BOUNDARY,) * (2 * d))
    cells.sort(key=lambda c: c[0])
    return GeomForm(d, tuple(cells))


def geom_equal(g1: GeomForm, g2: GeomForm) -> bool:
    """True iff boxes, their payloads and all face labels coincide exactly."""
    return g1.d == g2.d and g1.cells == g2.cells


def check_geom(g: GeomForm):
    """Validate the structural invariants of a geometric form.

    Boxes tile the cube (volumes sum to one, interiors pairwise disjoint),
    boundary faces are ``BOUNDARY`` and interior faces carry a label that is
    seen identically from both sides wherever two boxes touch.
    """
    d = g.d
    vol = _ZERO
    for box, _, faces in g.cells:
        v = _ONE
        for k, (lo, hi) in enumerate(box):
            if not (0 <= lo < hi <= 1):
                raise StructureError(f"degenerate box {box}")
            v *= hi - lo
            for side, x in ((0, lo), (1, hi)):
                on_boundary = x == 0 or x == 1
                if on_boundary != (faces[2 * k + side] is BOUNDARY):
                    raise StructureError(f"face label mismatch on box {box}")
        vol += v
    if vol != 1:
        raise StructureError(f"boxes cover volume {vol}, not 1")
    cells = g.cells
    for i in range(len(cells)):
        bi = cells[i][0]
        for j in range(i + 1, len(cells)):
            bj = cells[j][0]
            if all(max(a[0], b[0]) < min(a[1], b[1]) for a, b in zip(bi, bj)):
                raise StructureError(f"boxes {bi} and {bj} overlap")
            for k in range(d):
                if bi[k][1] == bj[k][0]:
                    a, b = cells[i][2][2 * k + 1], cells[j][2][2 * k]
                elif bj[k][1] == bi[k][0]:
                    a, b = cells[j][2][2 * k + 1], cells[i][2][2 * k]
                else:
                    continue
                touching = all(max(x[0], y[0]) < min(x[1], y[1])
                               for q, (x, y) in enumerate(zip(bi, bj)) if q != k)
                if touching and a != b:
                    raise StructureError(f"boxes {bi} and {bj} disagree on a shared cut")
    return True


# ---------------------------------------------------------------------------
# geometric admissibility (independent of the tree algorithm)

def _system_full(g, k, m, name):
    k0 = k - 1
    for j in range(1, m):
        c = Fraction(j, m)
        for box, _, faces in g.cells:
            lo, hi = box[k0]
            if lo < c < hi:
                return False
            if lo == c and faces[2 * k0] != name:
                return False
            if hi == c and faces[2 * k0 + 1] != name:
                return False
    return True


def geom_slab(g, k, m, j) -> GeomForm:
    """Slab ``j`` (0-based) between ``x_k = j/m`` and ``(j+1)/m``, rescaled."""
    k0 = k - 1
    a, b = Fraction(j, m), Fraction(j + 1, m)
    out = []
    for box, payload, faces in g.cells:
        lo, hi = box[k0]
        if lo >= a and hi <= b:
            nb = box[:k0] + (((lo - a) * m, (hi - a) * m),) + box[k0 + 1:]
            nf = list(faces)
            if lo == a:
                nf[2 * k0] = BOUNDARY
            if hi == b:
                nf[2 * k0 + 1] = BOUNDARY
            out.append((nb, payload, tuple(nf)))
    out.sort(key=lambda c: c[0])
    return GeomForm(g.d, tuple(out))


@lru_cache(maxsize=200_000)
def _roots(g, sig):
    found = []
    for k in range(1, g.d + 1):
        for gen in sig.in_direction(k):
            m = gen.arity
            if not _system_full(g, k, m, gen.name):
                continue
            if all(_valid(geom_slab(g, k, m, j), sig) for j in range(m)):
                found.append((k, gen.name))
    return tuple(found)


def _valid(g, sig):
    return len(g.cells) == 1 or bool(_roots(g, sig))


def geom_admissible_roots(g: GeomForm, sig) -> list:
    """All ``(k, w)`` whose full hyperplane system is labelled ``w`` throughout
    and whose ``arity(w)`` slabs are each valid subdivisions (checked
    recursively).  Several entries per direction are reported as found; see
    :func:`from_geom` for the uniqueness assertion.
    """
    if len(g.cells) == 1:
        return []
    return list(_roots(g, sig))


def is_valid_geom(g: GeomForm, sig) -> bool:
    return _valid(g, sig)


def from_geom(g: GeomForm, sig):
    """Read a construction tree off a geometric form, minimal direction first.

    Raises ``AmbiguousRootError`` if a direction admits two root systems and
    ``StructureError`` if the form is not a valid subdivision.
    """
    if len(g.cells) == 1:
        return g.cells[0][1]
    roots = _roots(g, sig)
    if not roots:
        raise StructureError("not a valid subdivision over this signature")
    k, w = roots[0]
    same = [r for r in roots if r[0] == k]
    if len(same) > 1:
        raise AmbiguousRootError(
            f"direction {k} admits root systems {[r[1] for r in same]}",
            counterexample={"cells": [[[[str(lo), str(hi)] for lo, hi in box], p, list(f)]
                                      for box, p, f in g.cells]})
    m = sig.arity(w)
    return Node(k, w, tuple(from_geom(geom_slab(g, k, m, j), sig) for j in range(m)))

"""Canonical guillotine subdivisions and their normal form.

Two tree types live here:

``Node``
    a construction tree (a term): any nesting of labelled cuts, in any
    order.  Different construction trees may describe the same subdivision
    of the cube because cuts in different directions interchange.
``Cut``
    a node of a *canonical* tree.  At every ``Cut`` the root direction is the
    smallest direction admitting a full, equally spaced, same-labelled
    hyperplane system whose slabs are themselves valid subdivisions.  Each
    ``Cut`` caches that set of admissible root cuts in ``adm``.

Leaves are arbitrary non-tree payloads: ``None`` for bare shapes, integers for
numbered (operadic) subdivisions, strings for free-algebra monomials.  The
payload travels with its box through every rearrangement, so numbering is
never tracked separately.

Children are always ordered by increasing coordinate along the cut axis.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, NamedTuple

from .errors import AmbiguousRootError, ParseError, StructureError

LEAF = None


class Node(NamedTuple):
    """Construction-tree node: cut in direction ``dir`` labelled ``gen``."""
    dir: int
    gen: str
    args: tuple


class Cut(NamedTuple):
    """Canonical-tree node; build with :func:`join`, not directly."""
    dir: int
    gen: str
    children: tuple
    adm: tuple  # ((direction, generator), ...) sorted by direction


def is_tree(x) -> bool:
    return isinstance(x, (Cut, Node))


def _kids(t):
    return t.children if isinstance(t, Cut) else t.args


# ---------------------------------------------------------------------------
# normal form

def _common_roots(children, exclude):
    """Root cuts admissible in every child, ignoring direction ``exclude``."""
    first = children[0]
    if not isinstance(first, Cut):
        return ()
    cand = [p for p in first.adm if p[0] != exclude]
    for c in children[1:]:
        if not cand:
            break
        if not isinstance(c, Cut):
            return ()
        cand = [p for p in cand if p in c.adm]
    return tuple(cand)


def _system_arity(t, k):
    """Arity of the admissible direction-``k`` system of canonical ``t``."""
    while t.dir != k:
        t = t.children[0]
    return len(t.children)


def _ambiguous(t, k, w, found):
    return AmbiguousRootError(
        f"two admissible root systems in direction {k}: {w!r} and {found!r}",
        counterexample={"direction": k, "generators": [w, found],
                        "subdivision": to_json(t)})


def slab(t, k, w, j, m):
    """The ``j``-th of the ``m`` slabs cut off ``t`` by its admissible system (k, w).

    ``t`` must be canonical with ``(k, w)`` in ``t.adm``; the slab comes back
    canonical, rescaled to the unit cube.
    """
    if t.dir == k:
        if t.gen != w or len(t.children) != m:
            raise _ambiguous(t, k, w, t.gen)
        return t.children[j]
    return join(t.dir, t.gen, tuple(slab(c, k, w, j, m) for c in t.children))


def join(k, w, children) -> Cut:
    """Canonical form of the cut ``(k, w)`` applied to canonical ``children``.

    If some direction smaller than ``k`` is admissible in every child, the
    interchange law lets that direction move to the root; otherwise the cut
    stays where it is.
    """
    children = tuple(children)
    common = _common_roots(children, k)
    if common and common[0][0] < k:
        l, v = common[0]
        m = _system_arity(children[0], l)
        for c in children[1:]:
            if _system_arity(c, l) != m:
                raise _ambiguous(c, l, v, v)
        cols = tuple(join(k, w, tuple(slab(c, l, v, j, m) for c in children))
                     for j in range(m))
        top = tuple(sorted(((k, w),) + common))
        return Cut(l, v, cols, top)
    adm = tuple(sorted(((k, w),) + common))
    return Cut(k, w, children, adm)


def canonicalize(raw, sig=None):
    """Normal form of a construction tree (``Node``/``Cut`` nesting, any order).

    With ``sig`` given, directions and arities are validated against it.
    """
    if not is_tree(raw):
        return raw
    if sig is not None:
        g = sig[raw.gen]
        kids = _kids(raw)
        if g.direction != raw.dir:
            raise StructureError(
                f"generator {raw.gen!r} belongs to direction {g.direction}, not {raw.dir}")
        if len(kids) != g.arity:
            raise StructureError(
                f"generator {raw.gen!r} has arity {g.arity} but got {len(kids)} children")
    return join(raw.dir, raw.gen, tuple(canonicalize(c, sig) for c in _kids(raw)))


def admissible_roots(t) -> list:
    """Admissible root cuts ``[(direction, generator), ...]`` of a canonical tree."""
    return list(t.adm) if isinstance(t, Cut) else []


def is_canonical(t) -> bool:
    """Recheck every cached admissible set and the min-direction rule."""
    if not is_tree(t):
        return True
    if not isinstance(t, Cut):
        return False
    if not all(is_canonical(c) for c in t.children):
        return False
    common = _common_roots(t.children, t.dir)
    if common and common[0][0] < t.dir:
        return False
    return t.adm == tuple(sorted(((t.dir, t.gen),) + common))


# ---------------------------------------------------------------------------
# traversal helpers

def leaves(t) -> list:
    """Leaf payloads in canonical order (depth first, children in coordinate order)."""
    out = []
    stack = [t]
    while stack:
        x = stack.pop()
        if is_tree(x):
            stack.extend(reversed(_kids(x)))
        else:
            out.append(x)
    return out


def arity(t) -> int:
    if not is_tree(t):
        return 1
    return sum(arity(c) for c in _kids(t))


def relabel(t, labels):
    """Replace leaf payloads, in canonical order, by ``labels``."""
    it = iter(labels)

    def go(x):
        if isinstance(x, Cut):
            return x._replace(children=tuple(go(c) for c in x.children))
        if isinstance(x, Node):
            return x._replace(args=tuple(go(c) for c in x.args))
        return next(it)

    out = go(t)
    if next(it, StopIteration) is not StopIteration:
        raise StructureError("more labels than leaves")
    return out


def map_leaves(t, fn):
    if isinstance(t, Cut):
        return t._replace(children=tuple(map_leaves(c, fn) for c in t.children))
    if isinstance(t, Node):
        return t._replace(args=tuple(map_leaves(c, fn) for c in t.args))
    return fn(t)


def shape(t):
    """The bare shape: same tree with every leaf payload set to ``None``."""
    return map_leaves(t, lambda _: LEAF)


def depth(t) -> int:
    if not is_tree(t):
        return 0
    return 1 + max(depth(c) for c in _kids(t))


def cuts(t):
    """Number of cut nodes."""
    if not is_tree(t):
        return 0
    return 1 + sum(cuts(c) for c in _kids(t))


def to_node(t):
    """Forget canonicality: rebuild a canonical tree as a construction tree."""
    if isinstance(t, Cut):
        return Node(t.dir, t.gen, tuple(to_node(c) for c in t.children))
    if isinstance(t, Node):
        return Node(t.dir, t.gen, tuple(to_node(c) for c in t.args))
    return t


# ---------------------------------------------------------------------------
# labelled subdivisions

@dataclass(frozen=True)
class LabelledSubdivision:
    """A canonical subdivision whose boxes carry the numbers 1..n.

    ``tree`` is a canonical ``Cut`` tree (or a bare leaf) with integer
    leaves.  ``shape`` and ``numbering`` split it into the unlabelled shape
    and the labels read in canonical leaf order.
    """

    tree: Any

    def __post_init__(self):
        labels = leaves(self.tree)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise StructureError(f"numbering {labels} is not a bijection onto 1..{len(labels)}")

    @classmethod
    def from_shape(cls, shp, numbering=None):
        n = arity(shp)
        if numbering is None:
            numbering = range(1, n + 1)
        numbering = tuple(numbering)
        if len(numbering) != n:
            raise StructureError(f"numbering has {len(numbering)} labels for arity {n}")
        return cls(relabel(shp, numbering))

    @property
    def arity(self) -> int:
        return arity(self.tree)

    @property
    def shape(self):
        return shape(self.tree)

    @property
    def numbering(self) -> tuple:
        return tuple(leaves(self.tree))

    def __str__(self):
        return to_sexpr(self.tree)


def unit():
    """The identity element: a single box numbered 1."""
    return LabelledSubdivision(1)


# ---------------------------------------------------------------------------
# serialization

def to_json(t):
    """Nested JSON: ``{"cut": {"dir", "gen", "children"}}`` or ``{"leaf": label}``."""
    if is_tree(t):
        return {"cut": {"dir": t.dir, "gen": t.gen,
                        "children": [to_json(c) for c in _kids(t)]}}
    return {"leaf": t}


def from_json(data, canonical=True):
    """Inverse of :func:`to_json`; returns a canonical tree unless ``canonical=False``."""
    if isinstance(data, (str, bytes)):
        data = json.loads(data)

    def go(x):
        if not isinstance(x, dict) or len(x) != 1:
            raise ParseError(f"expected {{'cut': ...}} or {{'leaf': ...}}, got {x!r}")
        if "leaf" in x:
            return x["leaf"]
        if "cut" not in x:
            raise ParseError(f"unknown node {x!r}")
        c = x["cut"]
        try:
            return Node(int(c["dir"]), str(c["gen"]), tuple(go(ch) for ch in c["children"]))
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed cut node {c!r}") from exc

    raw = go(data)
    return canonicalize(raw) if canonical else raw


def _atom(x):
    if x is None:
        return "_"
    if isinstance(x, str):
        return json.dumps(x)
    return str(x)


def to_sexpr(t) -> str:
    """S-expression such as ``(h (v 1 2) (v 3 4))``; string leaves are quoted."""
    if is_tree(t):
        return "(" + " ".join([t.gen] + [to_sexpr(c) for c in _kids(t)]) + ")"
    return _atom(t)

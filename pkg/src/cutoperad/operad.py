"""The cut operad: generators, composition and the symmetric-group action.

Elements are :class:`~cutoperad.subdivision.LabelledSubdivision` values.
Right action convention: ``act(e, s)`` gives the box numbered ``s(i)`` the
number ``i``, so that ``act(act(e, s), t) == act(e, s * t)`` with
``(s * t)(i) = s(t(i))``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import StructureError
from .subdivision import (Cut, LabelledSubdivision, Node, canonicalize, is_tree, leaves,
                          map_leaves, to_node)

CutOperadElement = LabelledSubdivision


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{1..n}`` stored as the tuple of images of ``1..n``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(i) for i in self.images)
        if sorted(imgs) != list(range(1, len(imgs) + 1)):
            raise StructureError(f"{imgs} is not a permutation of 1..{len(imgs)}")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n, i, j):
        imgs = list(range(1, n + 1))
        imgs[i - 1], imgs[j - 1] = j, i
        return cls(tuple(imgs))

    @classmethod
    def exchange(cls, k, l):
        """``sigma_{k,l}``: row-major ``k x l`` position to column-major position."""
        imgs = [0] * (k * l)
        for i in range(1, k + 1):
            for j in range(1, l + 1):
                imgs[(i - 1) * l + j - 1] = (j - 1) * k + i
        return cls(tuple(imgs))

    def __len__(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def __mul__(self, other):
        if len(self) != len(other):
            raise StructureError("permutations of different sizes")
        return Permutation(tuple(self(other(i)) for i in range(1, len(self) + 1)))

    def inverse(self):
        inv = [0] * len(self)
        for i, s in enumerate(self.images, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def sign(self):
        seen, sgn = set(), 1
        for start in range(1, len(self) + 1):
            if start in seen:
                continue
            length, i = 0, start
            while i not in seen:
                seen.add(i)
                i = self(i)
                length += 1
            if length % 2 == 0:
                sgn = -sgn
        return sgn


def generator(sig, k, x) -> LabelledSubdivision:
    """``omega_{k,x}``: ``arity(x)`` parallel slabs along direction ``k``, numbered in order."""
    g = sig[x]
    if g.direction != k:
        raise StructureError(f"generator {x!r} lives in direction {g.direction}, not {k}")
    return LabelledSubdivision(
        canonicalize(Node(k, x, tuple(range(1, g.arity + 1)))))


def _graft(t, inners, offsets):
    """Substitute ``inners[i-1]`` (shifted by ``offsets[i-1]``) for the leaf numbered ``i``."""
    if is_tree(t):
        kids = t.children if isinstance(t, Cut) else t.args
        return Node(t.dir, t.gen, tuple(_graft(c, inners, offsets) for c in kids))
    off = offsets[t - 1]
    return map_leaves(to_node(inners[t - 1]), lambda x: x + off)


def compose(outer: LabelledSubdivision, inners) -> LabelledSubdivision:
    """Full composition ``gamma(outer; inners)``.

    ``inners[i-1]`` is substituted into the box numbered ``i``; its labels
    form the ``i``-th consecutive block of the result's numbering.
    """
    inners = [e.tree if isinstance(e, LabelledSubdivision) else e for e in inners]
    n = outer.arity
    if len(inners) != n:
        raise StructureError(f"outer element has arity {n} but {len(inners)} inputs were given")
    offsets, acc = [], 0
    for t in inners:
        offsets.append(acc)
        acc += len(leaves(t))
    return LabelledSubdivision(canonicalize(_graft(outer.tree, inners, offsets)))


def partial_compose(outer: LabelledSubdivision, i, inner) -> LabelledSubdivision:
    """``outer o_i inner``: compose with ``inner`` at box ``i`` and units elsewhere."""
    n = outer.arity
    if not 1 <= i <= n:
        raise StructureError(f"index {i} out of range 1..{n}")
    ins = [1] * n
    ins[i - 1] = inner
    return compose(outer, ins)


def act(e: LabelledSubdivision, sigma) -> LabelledSubdivision:
    """Right action: the box numbered ``sigma(i)`` is renumbered ``i``."""
    if not isinstance(sigma, Permutation):
        sigma = Permutation(tuple(sigma))
    if len(sigma) != e.arity:
        raise StructureError(f"permutation of size {len(sigma)} acting on arity {e.arity}")
    inv = sigma.inverse()
    return LabelledSubdivision(map_leaves(e.tree, inv))


def orbit(e: LabelledSubdivision):
    """All elements ``act(e, s)`` for ``s`` in ``S_n`` (as a set)."""
    n = e.arity
    return {act(e, Permutation(p)) for p in itertools.permutations(range(1, n + 1))}


def numberings(shp):
    """All ``n!`` labelled versions of a bare shape, in lexicographic numbering order."""
    n = len(leaves(shp))
    for p in itertools.permutations(range(1, n + 1)):
        yield LabelledSubdivision.from_shape(shp, p)

"""Terms over the union of the free signatures, and their evaluation.

A term is a construction tree (:class:`~cutoperad.subdivision.Node`) whose
leaves are positive integers (operadic mode, a bijection onto ``1..n``) or
strings (free-algebra mode, repetitions allowed).  The surface syntax is an
S-expression, e.g. ``(h (v 1 2) (v 3 4))`` or ``(h "x" "y")``; the direction
of each node is looked up from the generator name in the signature.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Any

from .errors import ParseError, StructureError
from .geometry import geom_equal, to_geom
from .operad import generator
from .subdivision import (Cut, LabelledSubdivision, Node, canonicalize, leaves,
                          to_json, to_node, to_sexpr)

Term = Any  # Node tree or bare leaf

# ---------------------------------------------------------------------------
# S-expressions


class Atom(tuple):
    """``(kind, token)`` pair remembering its offset in the source text."""

    def __new__(cls, kind, token, pos):
        self = super().__new__(cls, (kind, token))
        self.pos = pos
        return self


class Group(list):
    """Parenthesized list remembering the offset of its ``(``."""

    pos = 0


def _tokenize(text):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            yield c, i
            i += 1
        elif c in "\"'":
            j = text.find(c, i + 1)
            if j < 0:
                raise ParseError("unterminated quoted atom", i)
            yield Atom("str", text[i + 1:j], i), i
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()\"'":
                j += 1
            yield Atom("atom", text[i:j], i), i
            i = j


def parse_sexpr(text):
    """Parse into nested Python lists; atoms are ``("atom"|"str", token)`` pairs."""
    tokens = list(_tokenize(text))
    if not tokens:
        raise ParseError("empty expression", 0)
    pos = 0

    def read():
        nonlocal pos
        if pos >= len(tokens):
            raise ParseError("unexpected end of input", len(text))
        tok, off = tokens[pos]
        pos += 1
        if tok == "(":
            items = Group()
            items.pos = off
            while True:
                if pos >= len(tokens):
                    raise ParseError("missing ')'", len(text))
                if tokens[pos][0] == ")":
                    pos += 1
                    return items
                items.append(read())
        if tok == ")":
            raise ParseError("unexpected ')'", off)
        return tok

    expr = read()
    if pos != len(tokens):
        raise ParseError("trailing input", tokens[pos][1])
    return expr


def _pos(x):
    return getattr(x, "pos", None)


def _leaf(tok):
    kind, s = tok
    if kind == "str":
        return s
    try:
        v = int(s)
    except ValueError:
        raise ParseError(f"bad leaf {s!r}: expected an integer or a quoted atom",
                         _pos(tok)) from None
    if v < 1:
        raise ParseError(f"leaf numbers must be positive, got {v}", _pos(tok))
    return v


def parse_term(text, sig) -> Term:
    """Parse the S-expression syntax into a construction tree over ``sig``."""

    def build(x):
        if isinstance(x, tuple):
            return _leaf(x)
        if not x or not isinstance(x[0], tuple) or x[0][0] != "atom":
            raise ParseError("expected (generator arg ...)", _pos(x))
        name = x[0][1]
        if name not in sig:
            raise ParseError(f"unknown generator {name!r}", _pos(x[0]))
        g = sig[name]
        args = tuple(build(a) for a in x[1:])
        if len(args) != g.arity:
            raise ParseError(f"generator {name!r} takes {g.arity} arguments, got {len(args)}",
                             _pos(x))
        return Node(g.direction, name, args)

    return build(parse_sexpr(text))


def format_term(t) -> str:
    return to_sexpr(t)


def term_to_json(t):
    return to_json(t)


def term_from_json(data):
    from .subdivision import from_json
    return from_json(data, canonical=False)


# ---------------------------------------------------------------------------
# validation, evaluation, equality


def check_term(t, sig, operadic=True):
    """Check generator arities and directions; in operadic mode, the numbering."""
    def go(x):
        if isinstance(x, Node):
            g = sig[x.gen]
            if g.direction != x.dir or len(x.args) != g.arity:
                raise StructureError(f"node {x.gen!r} violates the signature")
            for a in x.args:
                go(a)
        elif isinstance(x, Cut):
            go(to_node(x))
    go(t)
    if operadic:
        labels = leaves(t)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise StructureError(f"leaves {labels} are not a bijection onto 1..{len(labels)}")
    return t


def evaluate(t, sig) -> LabelledSubdivision:
    """Image of an operadic term in the cut operad."""
    check_term(t, sig)
    return LabelledSubdivision(canonicalize(t, sig))


def equivalent(t1, t2, sig) -> bool:
    """Equality in the tensor product: the evaluated subdivisions coincide geometrically."""
    a, b = len(leaves(t1)), len(leaves(t2))
    if a != b:
        raise StructureError(f"arity mismatch: {a} vs {b}")
    e1, e2 = evaluate(t1, sig), evaluate(t2, sig)
    return geom_equal(to_geom(e1.tree, sig.d), to_geom(e2.tree, sig.d))


def canonical_term(e) -> Term:
    """The term read directly off the canonical tree (a section of :func:`evaluate`)."""
    t = e.tree if isinstance(e, (LabelledSubdivision, FreeAlgebraElement)) else e
    return to_node(t)


def graft(t, subterms):
    """Substitute ``subterms[i-1]`` for leaf ``i`` with block renumbering."""
    offsets, acc = [], 0
    for s in subterms:
        offsets.append(acc)
        acc += len(leaves(s))

    def go(x):
        if isinstance(x, Node):
            return Node(x.dir, x.gen, tuple(go(a) for a in x.args))
        off = offsets[x - 1]
        return _shift(subterms[x - 1], off)

    return go(t)


def _shift(t, off):
    if isinstance(t, Node):
        return Node(t.dir, t.gen, tuple(_shift(a, off) for a in t.args))
    return t + off


def generator_term(sig, k, x):
    return canonical_term(generator(sig, k, x))


# ---------------------------------------------------------------------------
# free interchange algebras


@dataclass(frozen=True)
class FreeAlgebraElement:
    """Monomial of the free algebra: a canonical shape whose boxes carry letters."""

    tree: Any

    @classmethod
    def letter(cls, x):
        return cls(str(x))

    @property
    def letters(self):
        return tuple(leaves(self.tree))

    def __str__(self):
        return to_sexpr(self.tree)


def free_mult(sig, k, w, args) -> FreeAlgebraElement:
    """Stack ``args`` along direction ``k`` in equal slabs separated by cuts labelled ``w``."""
    g = sig[w]
    if g.direction != k:
        raise StructureError(f"generator {w!r} lives in direction {g.direction}, not {k}")
    if len(args) != g.arity:
        raise StructureError(f"{w!r} has arity {g.arity}, got {len(args)} arguments")
    trees = tuple(a.tree if isinstance(a, FreeAlgebraElement) else a for a in args)
    return FreeAlgebraElement(canonicalize(Node(k, w, trees), sig))


# ---------------------------------------------------------------------------
# interchange moves (used to generate equivalent terms)


def _swappable(x):
    """If every argument of ``x`` is a node with one common (dir, gen) != x's, return it."""
    if not isinstance(x, Node) or not x.args:
        return None
    first = x.args[0]
    if not isinstance(first, Node) or first.dir == x.dir:
        return None
    key = (first.dir, first.gen)
    for a in x.args[1:]:
        if not isinstance(a, Node) or (a.dir, a.gen) != key:
            return None
    return key


def interchange(x: Node) -> Node:
    """Rewrite ``gamma(w_k; u_1..u_m)`` with all ``u_i`` cut by ``w_l`` into
    ``gamma(w_l; gamma(w_k; u_1[j], ..., u_m[j])_j)``.

    The rule is its own inverse.  Leaves move with their subterms, which is
    the ``sigma_{k,l}`` renumbering in term form.
    """
    key = _swappable(x)
    if key is None:
        raise StructureError("interchange does not apply at this node")
    l, v = key
    mp = len(x.args[0].args)
    return Node(l, v, tuple(Node(x.dir, x.gen, tuple(u.args[j] for u in x.args))
                            for j in range(mp)))


def interchange_sites(t, path=()):
    """Paths (tuples of child indices) of nodes where :func:`interchange` applies."""
    if not isinstance(t, Node):
        return []
    out = [path] if _swappable(t) is not None else []
    for i, a in enumerate(t.args):
        out.extend(interchange_sites(a, path + (i,)))
    return out


def apply_at(t, path, fn):
    if not path:
        return fn(t)
    i = path[0]
    args = list(t.args)
    args[i] = apply_at(args[i], path[1:], fn)
    return Node(t.dir, t.gen, tuple(args))


def random_interchange(t, rng):
    """Apply one interchange at a uniformly chosen site (or return ``t`` if none)."""
    sites = interchange_sites(t)
    if not sites:
        return t
    return apply_at(t, rng.choice(sites), interchange)


# ---------------------------------------------------------------------------
# random generation (for tests and the CLI)


def random_shape_term(sig, n, rng: random.Random, grid_bias=0.3):
    """Random construction tree with ``n`` leaves (payloads ``None``).

    With probability ``grid_bias`` a node is built as a two-level grid
    ``gamma(w_k; gamma(w_l;...)...)`` so that interchange sites are common.
    ``n`` must be reachable with the signature's arities.
    """
    gens = sig.all_generators()
    if not _reachable(sig, n):
        raise StructureError(f"arity {n} cannot be built from this signature")

    def split(total, parts):
        # random composition into parts that are themselves reachable
        for _ in range(1000):
            cuts = sorted(rng.sample(range(1, total), parts - 1))
            bounds = [0] + cuts + [total]
            sizes = [bounds[i + 1] - bounds[i] for i in range(parts)]
            if all(_reachable(sig, s) for s in sizes):
                return sizes
        return None

    def go(m):
        if m == 1:
            return None
        while True:
            g = rng.choice(gens)
            if g.arity > m:
                continue
            if sig.d > 1 and rng.random() < grid_bias:
                others = [h for h in gens
                          if h.direction != g.direction and g.arity * h.arity <= m]
                if others:
                    h = rng.choice(others)
                    sizes = split(m, g.arity * h.arity)
                    if sizes is not None:
                        it = iter(sizes)
                        return Node(g.direction, g.name, tuple(
                            Node(h.direction, h.name, tuple(go(next(it)) for _ in range(h.arity)))
                            for _ in range(g.arity)))
            sizes = split(m, g.arity)
            if sizes is not None:
                return Node(g.direction, g.name, tuple(go(s) for s in sizes))

    return go(n)


def number_leaves(t, labels):
    from .subdivision import relabel
    return relabel(t, labels)


def random_term(sig, n, rng: random.Random, grid_bias=0.3):
    """Random operadic term of arity ``n`` with a random numbering."""
    shp = random_shape_term(sig, n, rng, grid_bias)
    labels = list(range(1, n + 1))
    rng.shuffle(labels)
    return number_leaves(shp, labels)


def random_arity(sig, lo, hi, rng):
    """A random arity in ``[lo, hi]`` reachable with the signature's arities."""
    while True:
        n = rng.randint(lo, hi)
        if n == 1 or _reachable(sig, n):
            return n


def _reachable(sig, n):
    # n is reachable iff n - 1 is a nonnegative combination of (arity - 1)
    steps = {g.arity - 1 for g in sig.all_generators()}
    ok = [False] * n
    ok[0] = True
    for i in range(1, n):
        ok[i] = any(i >= s and ok[i - s] for s in steps)
    return ok[n - 1]


def dumps(t) -> str:
    return json.dumps(to_json(t))


__all__ = [
    "FreeAlgebraElement", "Term", "apply_at", "canonical_term", "check_term",
    "dumps", "equivalent", "evaluate", "format_term", "free_mult", "graft", "interchange",
    "interchange_sites", "parse_sexpr", "parse_term", "random_interchange", "random_term",
    "random_shape_term", "term_from_json", "term_to_json",
]

"""Interchange rewriting for two associative products.

Terms are kept flattened modulo associativity: a node is ``(op, children)``
with ``op`` in ``{".", "*"}``, at least two children and no child carrying
the same operation.  Leaves are positive integers.  With associativity
quotiented out structurally, the only rewrite left is the interchange law

    (a1 . a2) * (a3 . a4) = (a1 * a3) . (a2 * a4)

applied to consecutive blocks of factors, in either direction.
:func:`reachable` runs a bidirectional breadth-first search over these
moves.
"""

from __future__ import annotations

import hashlib
import json
import os
import resource
from collections import deque
from dataclasses import dataclass, field

from .errors import ParseError, StructureError
from .terms import parse_sexpr

DOT, STAR = ".", "*"
OPS = (DOT, STAR)

DEFAULT_STATE_BUDGET = 10 ** 7


def other(op):
    return STAR if op == DOT else DOT


def is_node(t):
    return isinstance(t, tuple)


def mk(op, items):
    """Flattened node ``op(items)``; a single item is returned as is."""
    flat = []
    for x in items:
        if is_node(x) and x[0] == op:
            flat.extend(x[1])
        else:
            flat.append(x)
    if len(flat) == 1:
        return flat[0]
    return (op, tuple(flat))


def flatten(t):
    """Normalize an arbitrary bracketing (nested ``(op, children)``) to flattened form."""
    if not is_node(t):
        return t
    op, kids = t
    if op not in OPS:
        raise StructureError(f"unknown operation {op!r}")
    if len(kids) < 2:
        raise StructureError("operations need at least two arguments")
    return mk(op, [flatten(k) for k in kids])


def leaves(t):
    if not is_node(t):
        return [t]
    out = []
    for k in t[1]:
        out.extend(leaves(k))
    return out


def parse(text):
    """Parse ``(. (* 1 2) (* 3 4))``-style S-expressions (any arity, any bracketing)."""
    def build(x):
        if isinstance(x, tuple):
            kind, s = x
            try:
                v = int(s)
            except ValueError:
                raise ParseError(f"bad leaf {s!r}", getattr(x, "pos", None)) from None
            return v
        if not x or not isinstance(x[0], tuple) or x[0][1] not in OPS:
            raise ParseError("expected (. args...) or (* args...)", getattr(x, "pos", None))
        if len(x) < 3:
            raise ParseError("operations need at least two arguments", getattr(x, "pos", None))
        return (x[0][1], tuple(build(a) for a in x[1:]))

    t = flatten(build(parse_sexpr(text)))
    labels = leaves(t)
    if sorted(labels) != list(range(1, len(labels) + 1)):
        raise ParseError(f"leaves {labels} are not a bijection onto 1..{len(labels)}")
    return t


def to_sexpr(t):
    if not is_node(t):
        return str(t)
    return "(" + " ".join([t[0]] + [to_sexpr(k) for k in t[1]]) + ")"


def to_infix(t, parent=None):
    if not is_node(t):
        return str(t)
    s = t[0].join(to_infix(k, t[0]) for k in t[1])
    return f"({s})" if parent is not None else s


# ---------------------------------------------------------------------------
# moves


def _groupings(items, r):
    """Ways to cut ``items`` into ``r`` consecutive nonempty groups."""
    n = len(items)
    if r > n:
        return
    for cuts in _choose(range(1, n), r - 1):
        bounds = (0,) + cuts + (n,)
        yield [items[bounds[i]:bounds[i + 1]] for i in range(r)]


def _choose(seq, k):
    from itertools import combinations
    return combinations(seq, k)


def _splits(node):
    kids = node[1]
    return range(1, len(kids))


def _root_moves(t):
    op, kids = t
    b = other(op)
    out = []
    n = len(kids)
    # forward: a block of b-nodes under op becomes one b-node of two op-products
    for i in range(n):
        j = i
        while j < n and is_node(kids[j]) and kids[j][0] == b:
            j += 1
        for end in range(i + 2, j + 1):
            block = kids[i:end]
            from itertools import product
            for splits in product(*(_splits(x) for x in block)):
                left = [mk(b, x[1][:s]) for x, s in zip(block, splits)]
                right = [mk(b, x[1][s:]) for x, s in zip(block, splits)]
                new = mk(b, [mk(op, left), mk(op, right)])
                out.append(mk(op, kids[:i] + (new,) + kids[end:]))
    # reverse: two adjacent b-nodes under op become a b-node of op-products
    for q in range(n - 1):
        p1, p2 = kids[q], kids[q + 1]
        if not (is_node(p1) and is_node(p2) and p1[0] == b and p2[0] == b):
            continue
        for r in range(2, min(len(p1[1]), len(p2[1])) + 1):
            for g1 in _groupings(p1[1], r):
                for g2 in _groupings(p2[1], r):
                    new = mk(b, [mk(op, [mk(b, x), mk(b, y)]) for x, y in zip(g1, g2)])
                    out.append(mk(op, kids[:q] + (new,) + kids[q + 2:]))
    return out


def moves(t) -> list:
    """All terms one interchange away from ``t`` (deduplicated, deterministic order)."""
    if not is_node(t):
        return []
    out = list(_root_moves(t))
    op, kids = t
    for i, k in enumerate(kids):
        for k2 in moves(k):
            out.append(mk(op, kids[:i] + (k2,) + kids[i + 1:]))
    seen, uniq = set(), []
    for x in out:
        if x not in seen and x != t:
            seen.add(x)
            uniq.append(x)
    return uniq


# ---------------------------------------------------------------------------
# search


@dataclass
class SearchResult:
    found: bool
    path: list = field(default_factory=list)
    states: int = 0
    reason: str = ""

    @property
    def status(self):
        return "FOUND" if self.found else "NOT_FOUND_WITHIN_BUDGET"

    def to_json(self):
        return {"status": self.status, "moves": max(len(self.path) - 1, 0),
                "states": self.states, "reason": self.reason,
                "path": [to_sexpr(t) for t in self.path]}


def replay(path) -> bool:
    """Check that each step of ``path`` is a single move."""
    return all(b in moves(a) for a, b in zip(path, path[1:]))


def _rss_mb():
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024


def reachable(src, dst, budget=DEFAULT_STATE_BUDGET, max_memory_mb=None,
              cache_dir=None) -> SearchResult:
    """Bidirectional BFS from ``src`` and ``dst`` over interchange moves.

    Stops when the frontiers meet (FOUND, with a validated path) or when
    the number of stored states exceeds ``budget`` or memory use passes
    ``max_memory_mb`` (inconclusive, never a proof of inequality).
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    src, dst = flatten(src), flatten(dst)
    if sorted(leaves(src)) != sorted(leaves(dst)):
        raise StructureError("terms have different leaves")
    cache = _cache_path(cache_dir, src, dst)
    if cache and os.path.exists(cache):
        hit = _load_cache(cache, budget)
        if hit is not None:
            return hit
    if src == dst:
        return SearchResult(True, [src], 1)

    parents = ({src: None}, {dst: None})
    frontiers = (deque([src]), deque([dst]))
    result = None
    while frontiers[0] and frontiers[1] and result is None:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        mine, theirs = parents[side], parents[1 - side]
        nxt = deque()
        for t in frontiers[side]:
            for u in moves(t):
                if u in mine:
                    continue
                mine[u] = t
                if u in theirs:
                    result = u
                    break
                nxt.append(u)
            if result is not None:
                break
            if len(parents[0]) + len(parents[1]) > budget:
                return _store(cache, budget, SearchResult(
                    False, [], len(parents[0]) + len(parents[1]), "state budget exhausted"))
            if max_memory_mb and _rss_mb() > max_memory_mb:
                return SearchResult(False, [], len(parents[0]) + len(parents[1]),
                                    "memory limit reached")
        frontiers = (nxt, frontiers[1]) if side == 0 else (frontiers[0], nxt)
    states = len(parents[0]) + len(parents[1])
    if result is None:
        # one side exhausted its whole class without meeting the other
        return _store(cache, budget, SearchResult(False, [], states, "equivalence class exhausted"))
    path = _trace(parents[0], result)[::-1] + _trace(parents[1], result)[1:]
    if not replay(path) or path[0] != src or path[-1] != dst:
        raise AssertionError("search produced a path that does not replay")
    return _store(cache, budget, SearchResult(True, path, states))


def _trace(parents, t):
    out = [t]
    while parents[t] is not None:
        t = parents[t]
        out.append(t)
    return out


def _cache_path(cache_dir, src, dst):
    if not cache_dir:
        return None
    key = hashlib.sha256(f"{to_sexpr(src)}|{to_sexpr(dst)}".encode()).hexdigest()[:24]
    return os.path.join(cache_dir, f"assass-{key}.json")


def _store(cache, budget, res):
    if cache:
        os.makedirs(os.path.dirname(cache), exist_ok=True)
        with open(cache, "w") as fh:
            json.dump(dict(res.to_json(), budget=budget), fh)
    return res


def _load_cache(cache, budget):
    with open(cache) as fh:
        data = json.load(fh)
    if data["status"] == "FOUND":
        path = [parse(s) for s in data["path"]]
        if replay(path):
            return SearchResult(True, path, data["states"], "cached")
        return None
    # an inconclusive result only stands for budgets no larger than the cached one
    if data.get("reason") == "equivalence class exhausted" or budget <= data.get("budget", 0):
        return SearchResult(False, [], data["states"], data["reason"] + " (cached)")
    return None


# ---------------------------------------------------------------------------
# finite models


def evaluate_projection(t, dot_first, star_first):
    """Value in the algebra where each product returns its first or last argument.

    Any pair of such projection products is associative and interchanges.
    """
    while is_node(t):
        first = dot_first if t[0] == DOT else star_first
        t = t[1][0] if first else t[1][-1]
    return t


def model_signature(t):
    """Values of ``t`` in all four projection models, plus its leaf multiset."""
    return (tuple(evaluate_projection(t, a, b) for a in (True, False) for b in (True, False)),
            tuple(sorted(leaves(t))))


# the relation of arity 9 in the tensor square of Ass
ARITY9_LHS = "(. (* 1 2) (* 3 4 5 6) (* 7 8 9))"
ARITY9_RHS = "(. (* 1 2) (* 3 5 4 6) (* 7 8 9))"
INTERCHANGE_LHS = "(* (. 1 2) (. 3 4))"
INTERCHANGE_RHS = "(. (* 1 3) (* 2 4))"

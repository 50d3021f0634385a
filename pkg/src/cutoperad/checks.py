"""Seeded randomized trials of the normal form and the operad axioms."""

from __future__ import annotations

import itertools
import random

from .geometry import from_geom, geom_equal, to_geom
from .operad import Permutation, act, compose, generator
from .subdivision import LabelledSubdivision, canonicalize, is_canonical, to_node
from .terms import random_arity, random_interchange, random_term


def _term(sig, rng, lo, hi):
    return random_term(sig, random_arity(sig, lo, hi, rng), rng)


def completeness_trials(sig, trials, seed=0, max_arity=12):
    """Random terms pushed through 1-20 random interchanges must normalize identically.

    Also checks that the interchanged term has the same geometry, that
    normalization preserves geometry and is idempotent, and that the
    geometric read-back agrees with the normal form.
    """
    rng = random.Random(seed)
    fails = []
    for i in range(trials):
        t = _term(sig, rng, 1, max_arity)
        u = t
        for _ in range(rng.randint(1, 20)):
            u = random_interchange(u, rng)
        ct, cu = canonicalize(t, sig), canonicalize(u, sig)
        g = to_geom(t, sig.d)
        ok = (ct == cu
              and geom_equal(g, to_geom(u, sig.d))
              and geom_equal(g, to_geom(ct, sig.d))
              and canonicalize(ct, sig) == ct
              and is_canonical(ct)
              and from_geom(g, sig) == to_node(ct))
        if not ok:
            fails.append(i)
    return {"trials": trials, "failures": len(fails), "failed_trials": fails[:10]}


def soundness_trials(sig, trials, seed=0, max_arity=12):
    """Independent random pairs: distinct normal forms must be geometrically distinct.

    Pairs share an arity.  Identical normal forms (which happen for small
    arities) must conversely be geometrically equal.
    """
    rng = random.Random(seed)
    distinct = fails = 0
    for _ in range(trials):
        n = random_arity(sig, 2, max_arity, rng)
        a = canonicalize(random_term(sig, n, rng), sig)
        b = canonicalize(random_term(sig, n, rng), sig)
        same_geom = geom_equal(to_geom(a, sig.d), to_geom(b, sig.d))
        if a != b:
            distinct += 1
        if (a != b) == same_geom:
            fails += 1
    return {"trials": trials, "distinct_pairs": distinct, "failures": fails}


def _element(sig, rng, lo, hi):
    return LabelledSubdivision(canonicalize(_term(sig, rng, lo, hi), sig))


def _perm(n, rng):
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return Permutation(tuple(p))


def operad_axiom_trials(sig, trials, seed=0, max_arity=4):
    """Associativity, unit laws and both equivariance laws on random instances."""
    rng = random.Random(seed)
    fails = {"associativity": 0, "unit": 0, "equivariance_outer": 0,
             "equivariance_inner": 0, "action": 0}
    for _ in range(trials):
        a = _element(sig, rng, 1, max_arity)
        bs = [_element(sig, rng, 1, max_arity) for _ in range(a.arity)]
        cs = [[_element(sig, rng, 1, 3) for _ in range(b.arity)] for b in bs]
        # (a; b...)(c...) == (a; (b_i; c_i...)...)
        lhs = compose(compose(a, bs), [c for row in cs for c in row])
        rhs = compose(a, [compose(b, row) for b, row in zip(bs, cs)])
        fails["associativity"] += lhs != rhs
        one = LabelledSubdivision(1)
        fails["unit"] += (compose(a, [one] * a.arity) != a or compose(one, [a]) != a)
        # outer: gamma(a.s; b_1..b_n) == gamma(a; b_{s^-1(1)}..).block
        s = _perm(a.arity, rng)
        inv = s.inverse()
        lhs = compose(act(a, s), bs)
        permuted = [bs[inv(j) - 1] for j in range(1, a.arity + 1)]
        rhs = act(compose(a, permuted), _block_perm(s, [b.arity for b in bs]))
        fails["equivariance_outer"] += lhs != rhs
        # inner: gamma(a; b_1.t_1..) == gamma(a; b..).(t_1 + ... + t_n)
        ts = [_perm(b.arity, rng) for b in bs]
        lhs = compose(a, [act(b, t) for b, t in zip(bs, ts)])
        rhs = act(compose(a, bs), _direct_sum(ts))
        fails["equivariance_inner"] += lhs != rhs
        t2 = _perm(a.arity, rng)
        fails["action"] += act(act(a, s), t2) != act(a, s * t2)
    return {"trials": trials, "failures": fails}


def _block_perm(s, sizes):
    """Permutation relating ``gamma(a.s; b)`` to ``gamma(a; b_{s^-1(1)}, ...)``.

    ``b_i`` lands in the box of ``a`` numbered ``s(i)``, so its labels sit in
    block ``s(i)`` on one side and block ``i`` on the other.
    """
    n = len(s)
    inv = s.inverse()
    starts, acc = [], 0
    for j in range(1, n + 1):
        starts.append(acc)
        acc += sizes[inv(j) - 1]
    return Permutation(tuple(starts[s(i) - 1] + r
                             for i in range(1, n + 1) for r in range(1, sizes[i - 1] + 1)))


def _direct_sum(ts):
    images, off = [], 0
    for t in ts:
        images.extend(off + t(i) for i in range(1, len(t) + 1))
        off += len(t)
    return Permutation(tuple(images))


def interchange_identities(sig):
    """``gamma(w_k; w_l..) == gamma(w_l; w_k..).sigma`` for every cross-direction pair."""
    results = []
    gens = sig.all_generators()
    for x, y in itertools.product(gens, gens):
        if x.direction == y.direction:
            continue
        p, q = generator(sig, x.direction, x.name), generator(sig, y.direction, y.name)
        lhs = compose(p, [q] * x.arity)
        rhs = act(compose(q, [p] * y.arity), Permutation.exchange(x.arity, y.arity))
        results.append({"pair": [x.name, y.name], "holds": lhs == rhs})
    return results


def freeness(shapes, d):
    """Number of shapes whose orbit under the numbering action is smaller than ``n!``.

    The orbit of the identity-numbered element is generated with :func:`act`
    and compared by normal form (sound and complete by the trials above).
    Each orbit representative is also checked against geometry: its boxes
    must be pairwise distinct, so no two numberings can coincide.
    """
    from math import factorial
    bad = 0
    for shp in shapes:
        e = LabelledSubdivision.from_shape(shp)
        n = e.arity
        orbit = {act(e, Permutation(p)).tree for p in itertools.permutations(range(1, n + 1))}
        boxes = to_geom(e.tree, d).boxes()
        if len(orbit) != factorial(n) or len(set(boxes)) != n:
            bad += 1
    return bad

import itertools
from fractions import Fraction
from math import comb, factorial

import pytest
import sympy

from conftest import SIGNATURES
from cutoperad import count_by_enumeration
from cutoperad.errors import CutOperadError
from cutoperad.series import (Dirichlet, Series, box_dimension, composition_dimension, compose,
                              dirichlet_product, euler_check, f_series, g_series, n_transform,
                              series_inverse, signature_dirichlet)
from cutoperad import binary_signature, make_signature


def lagrange_inverse(g, order):
    """[x^n] f = (1/n) [t^(n-1)] (t / g(t))^n, computed with sympy."""
    t = sympy.symbols("t")
    poly = sum(sympy.Rational(c) * t ** (i + 1) for i, c in enumerate(g))
    out = []
    for n in range(1, order + 1):
        expr = sympy.series((t / poly) ** n, t, 0, n).removeO()
        out.append(sympy.Rational(expr.coeff(t, n - 1), n))
    return out


def test_inverse_of_x():
    assert series_inverse(Series.x(6)) == Series.x(6)


def test_inverse_d2():
    g = Series.from_list([1, -2, 0, 1], 8)
    f = series_inverse(g)
    assert f.to_list()[:4] == [1, 2, 8, 39]
    assert compose(f, g) == Series.x(8) and compose(g, f) == Series.x(8)


def test_catalan():
    f = series_inverse(Series.from_list([1, -1], 10))
    assert f.to_list() == [comb(2 * m, m) // (m + 1) for m in range(10)]


@pytest.mark.parametrize("g", [[1, -2, 0, 1], [1, -1], [2, 3, -1], [1, 0, -1, 0, 0, 1],
                               [Fraction(1, 2), 1, Fraction(-1, 3)]])
def test_inverse_matches_lagrange(g):
    f = series_inverse(Series.from_list(g, 9))
    assert [sympy.Rational(str(c)) for c in f.to_list()] == lagrange_inverse(g, 9)


def test_inverse_requires_linear_term():
    with pytest.raises(CutOperadError):
        series_inverse(Series.from_list([0, 1], 4))


def test_dirichlet_square():
    a = Dirichlet.from_list([1, -1, 0, 0])
    assert dirichlet_product(a, a).to_list() == [1, -2, 0, 1]
    assert n_transform(dirichlet_product(a, a)) == Series.from_list([1, -2, 0, 1])
    assert n_transform(Dirichlet.unit(5)) == Series.x(5)


def test_n_transform_linear():
    a, b = Dirichlet.from_list([1, 2, 3]), Dirichlet.from_list([0, -1, 5])
    assert n_transform(a + b) == n_transform(a) + n_transform(b)


def test_dirichlet_product_brute_force():
    a = Dirichlet.from_list([1, 3, -1, 2, 0, 7, 1, 1])
    b = Dirichlet.from_list([2, 0, 1, -4, 5, 1, 0, 3])
    c = dirichlet_product(a, b)
    for n in range(1, 9):
        assert c[n] == sum(a[i] * b[j] for i in range(1, 9) for j in range(1, 9) if i * j == n)


def test_g_series_d2():
    assert g_series(binary_signature(2), 6).to_list() == [1, -2, 0, 1, 0, 0]
    assert signature_dirichlet(binary_signature(2), 4).to_list() == [1, -2, 0, 1]


# -- box dimension against brute force


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[first]] + p
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]


def box_dimension_brute(da, db, n):
    """Sum over all pairs of set partitions of {0..n-1} whose blocks meet in singletons."""
    by_size = {}
    for p in set_partitions(list(range(n))):
        by_size.setdefault(len(p), []).append([frozenset(b) for b in p])
    total = 0
    for k, Ps in by_size.items():
        # orthogonal pairs have k * l = n; other pairs cannot meet in singletons
        if n % k or n // k not in by_size:
            continue
        for P in Ps:
            for Q in by_size[n // k]:
                if all(len(x & y) == 1 for x in P for y in Q):
                    total += da.get(k, 0) * db.get(n // k, 0)
    return total


COMM = {1: 1, 2: 1}


def test_box_dimension_examples():
    assert box_dimension(COMM, COMM, 4) == 6
    assert box_dimension(COMM, COMM, 1) == 1
    assert box_dimension(COMM, COMM, 2) == 2


@pytest.mark.parametrize("da,db", [(COMM, COMM), ({1: 1, 2: 2, 3: 1}, {1: 1, 2: 1, 4: 3}),
                                   ({1: 1, 3: 2}, {1: 1, 2: 5, 3: 1})])
def test_box_dimension_oracle(da, db):
    for n in range(1, 8):
        assert box_dimension(da, db, n) == box_dimension_brute(da, db, n)
        assert box_dimension(da, db, n) == box_dimension(db, da, n)


def test_composition_dimension_brute():
    # free binary operad composed with itself: arity 3 = sum over surjections
    dp = {1: 1, 2: 2}
    dq = {1: 1, 2: 2}
    brute = 0
    n = 3
    for k in (1, 2, 3):
        for f in itertools.product(range(k), repeat=n):
            if len(set(f)) != k:
                continue
            blocks = [f.count(i) for i in range(k)]
            inner = 1
            for b in blocks:
                inner *= dq.get(b, 0)
            brute += Fraction(dp.get(k, 0), factorial(k)) * inner
    assert composition_dimension(dp, dq, 3) == brute


# -- Euler characteristic


@pytest.mark.parametrize("name", sorted(SIGNATURES))
def test_euler_check(name):
    sig = SIGNATURES[name]
    counts = count_by_enumeration(sig, 6).shapes
    report = euler_check(sig, 6, counts)
    assert report["pass"], report
    assert report["rows"][0]["euler_characteristic"] == 1


def test_euler_check_catches_wrong_counts(sig2):
    assert not euler_check(sig2, 5, [0, 1, 2, 8, 40, 212])["pass"]


def test_d1_single_generator():
    for a in (2, 3):
        sig = make_signature([("w", a)])
        assert euler_check(sig, 8, count_by_enumeration(sig, 8).shapes)["pass"]


def test_f_series_integral():
    assert all(Fraction(c).denominator == 1
               for c in f_series(SIGNATURES["d2_hg_vu"], 10).to_list())

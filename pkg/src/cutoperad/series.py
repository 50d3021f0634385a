"""Exact power series and Dirichlet series.

Power series are truncated at an explicit order ``N`` and have no constant
term; Dirichlet series are indexed by ``n >= 1`` (the coefficient of
``n^{-s}``).  Coefficients are ``Fraction``s, or ints where they stay
integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .errors import CutOperadError


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


@dataclass(frozen=True)
class Series:
    """``sum_{n=1}^{N} coeffs[n] x^n``; ``coeffs[0]`` is always 0."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(_norm(x) for x in self.coeffs)
        if not c or c[0] != 0:
            raise CutOperadError("power series here have zero constant term")
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_list(cls, coeffs, order=None):
        """Series with ``coeffs[i]`` the coefficient of ``x^(i+1)``."""
        order = len(coeffs) if order is None else order
        c = [0] * (order + 1)
        for i, x in enumerate(coeffs[:order]):
            c[i + 1] = x
        return cls(tuple(c))

    @classmethod
    def x(cls, order):
        return cls.from_list([1], order)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n] if 0 <= n <= self.order else 0

    def to_list(self):
        return list(self.coeffs[1:])

    def truncate(self, order):
        return Series.from_list(self.to_list(), order)

    def __add__(self, other):
        n = min(self.order, other.order)
        return Series(tuple(self[i] + other[i] for i in range(n + 1)))

    def __sub__(self, other):
        n = min(self.order, other.order)
        return Series(tuple(self[i] - other[i] for i in range(n + 1)))

    def __eq__(self, other):
        return isinstance(other, Series) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*x^{i}" for i, c in enumerate(self.coeffs) if c]
        return "Series(" + (" + ".join(terms) or "0") + f" + O(x^{self.order + 1}))"


def _mul_trunc(a, b, order):
    """Product of coefficient lists (index = power) truncated at ``order``."""
    out = [0] * (order + 1)
    for i, x in enumerate(a):
        if not x or i > order:
            continue
        for j in range(min(len(b), order - i + 1)):
            if b[j]:
                out[i + j] += x * b[j]
    return out


def compose(f: Series, g: Series) -> Series:
    """``f(g(x))`` truncated at ``min(f.order, g.order)``."""
    order = min(f.order, g.order)
    out = [0] * (order + 1)
    power = list(g.coeffs[:order + 1])  # g^1
    for k in range(1, order + 1):
        if f[k]:
            for i in range(order + 1):
                out[i] += f[k] * power[i]
        power = _mul_trunc(power, g.coeffs, order)
    return Series(tuple(out))


def series_inverse(g: Series) -> Series:
    """Compositional inverse ``f`` with ``g(f(x)) = x`` to the order of ``g``.

    Coefficients are solved one at a time: the ``x^n`` coefficient of
    ``g(f)`` is ``g_1 f_n`` plus terms involving only ``f_1..f_{n-1}``.
    """
    if g[1] == 0:
        raise CutOperadError("series is not invertible: linear coefficient is zero")
    N = g.order
    g1 = Fraction(g[1])
    f = [0] * (N + 1)
    f[1] = 1 / g1
    for n in range(2, N + 1):
        # powers f^k truncated at x^n, with f_n still unknown (zero); f_n
        # only enters g(f) through the linear term g_1 f_n
        acc = Fraction(0)
        power = f[:n + 1]
        for k in range(2, n + 1):
            power = _mul_trunc(power, f[:n + 1], n)
            if g[k]:
                acc += g[k] * power[n]
        f[n] = -acc / g1
    return Series(tuple(f))


# ---------------------------------------------------------------------------
# Dirichlet series


@dataclass(frozen=True)
class Dirichlet:
    """``sum_{n=1}^{N} coeffs[n] n^{-s}``; ``coeffs[0]`` is unused (0)."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", (0,) + tuple(_norm(x) for x in self.coeffs[1:]))

    @classmethod
    def from_list(cls, coeffs, order=None):
        """Dirichlet series with ``coeffs[i]`` the coefficient of ``(i+1)^{-s}``."""
        order = len(coeffs) if order is None else order
        c = [0] * (order + 1)
        for i, x in enumerate(coeffs[:order]):
            c[i + 1] = x
        return cls(tuple(c))

    @classmethod
    def unit(cls, order):
        return cls.from_list([1], order)

    @property
    def order(self):
        return len(self.coeffs) - 1

    def __getitem__(self, n):
        return self.coeffs[n] if 1 <= n <= self.order else 0

    def to_list(self):
        return list(self.coeffs[1:])

    def __add__(self, other):
        n = min(self.order, other.order)
        return Dirichlet(tuple([0] + [self[i] + other[i] for i in range(1, n + 1)]))

    def scale(self, c):
        return Dirichlet(tuple([0] + [c * x for x in self.coeffs[1:]]))


def dirichlet_product(a: Dirichlet, b: Dirichlet) -> Dirichlet:
    """``(ab)_n = sum_{kl = n} a_k b_l``, truncated at the smaller order."""
    N = min(a.order, b.order)
    out = [0] * (N + 1)
    for k in range(1, N + 1):
        if not a[k]:
            continue
        for l in range(1, N // k + 1):
            out[k * l] += a[k] * b[l]
    return Dirichlet(tuple(out))


def n_transform(D: Dirichlet) -> Series:
    """The linear map ``n^{-s} -> x^n``."""
    return Series(tuple([0] + D.to_list()))


def signature_factors(sig, order):
    """Per direction ``k``, the Dirichlet series ``sum_n a_k(n) n^{-s}``."""
    out = []
    for k in range(1, sig.d + 1):
        c = [0] * (order + 1)
        for a, cnt in sig.arity_counts(k).items():
            if a <= order:
                c[a] += cnt
        out.append(Dirichlet(tuple(c)))
    return out


def signature_dirichlet(sig, order) -> Dirichlet:
    """``prod_k (1 - sum_n a_k(n) n^{-s})``: Euler characteristics of the generators."""
    D = Dirichlet.unit(order)
    for A in signature_factors(sig, order):
        D = dirichlet_product(D, Dirichlet.unit(order) + A.scale(-1))
    return D


def graded_dirichlet(sig, order):
    """Unsigned dimension series ``[E_0, ..., E_d]`` of the generator collection by degree.

    ``E_h`` is the sum over ``h``-subsets of directions of the product of the
    per-direction factors, i.e. ``dim`` in arity ``n`` divided by ``n!``.
    """
    factors = signature_factors(sig, order)
    graded = [Dirichlet.unit(order)]
    for A in factors:
        nxt = [Dirichlet.from_list([], order) for _ in range(len(graded) + 1)]
        for h, E in enumerate(graded):
            nxt[h] = nxt[h] + E
            nxt[h + 1] = nxt[h + 1] + dirichlet_product(E, A)
        graded = nxt
    return graded


def g_series(sig, order) -> Series:
    return n_transform(signature_dirichlet(sig, order))


def f_series(sig, order) -> Series:
    """Generating function of the shape counts, as the inverse of :func:`g_series`."""
    return series_inverse(g_series(sig, order))


# ---------------------------------------------------------------------------
# dimensions of collections


def box_dimension(dims_a, dims_b, n) -> int:
    """Dimension in arity ``n`` of the matrix product of two collections.

    ``sum_{kl=n} n!/(k! l!) dims_a(k) dims_b(l)``: the number of orthogonal
    pairs of set partitions with ``k`` and ``l`` blocks is ``n!/(k! l!)``.
    ``dims_*`` may be callables or mappings (missing arities count as 0).
    """
    da, db = _dims(dims_a), _dims(dims_b)
    total = 0
    for k in range(1, n + 1):
        if n % k:
            continue
        l = n // k
        total += factorial(n) // (factorial(k) * factorial(l)) * da(k) * db(l)
    return total


def composition_dimension(dims_p, dims_q, n) -> int:
    """Dimension in arity ``n`` of the composite of two collections.

    Sums over surjections of ``{1..n}`` onto ``{1..k}`` (ordered set
    partitions); ``dims_p(k)`` must be divisible by ``k!`` (free action).
    """
    dp, dq = _dims(dims_p), _dims(dims_q)
    # ways[k][m]: weighted count of ordered set partitions of an m-set into k blocks
    ways = [[0] * (n + 1) for _ in range(n + 1)]
    ways[0][0] = 1
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            ways[k][m] = sum(comb(m, j) * dq(j) * ways[k - 1][m - j]
                             for j in range(1, m - k + 2))
    total = Fraction(0)
    for k in range(1, n + 1):
        if dp(k):
            total += Fraction(dp(k), factorial(k)) * ways[k][n]
    if total.denominator != 1:
        raise CutOperadError("composite dimension is not an integer; is the collection free?")
    return total.numerator


def _dims(d):
    if callable(d):
        return d
    return lambda n: d.get(n, 0) if hasattr(d, "get") else (d[n] if n < len(d) else 0)


def euler_check(sig, order, shape_counts):
    """Check that the resolution complex has Euler characteristic ``delta_{n,1}``.

    ``shape_counts[n]`` is the number of shapes in arity ``n`` (index 0
    ignored).  Two routes are compared: the series identities
    ``g(f(x)) = x`` and ``f(g(x)) = x``, and, per arity, the alternating sum of
    ``dim (H o C)_h(n)`` computed by composing collections degree by degree.
    """
    f = Series(tuple([0] + [shape_counts[n] for n in range(1, order + 1)]))
    g = g_series(sig, order)
    gf, fg = compose(g, f), compose(f, g)
    x = Series.x(order)
    graded = graded_dirichlet(sig, order)
    rows, ok = [], gf == x and fg == x
    for n in range(1, order + 1):
        dims = []
        for h, E in enumerate(graded):
            dims.append(composition_dimension(
                lambda k, E=E: E[k] * factorial(k),
                lambda k: shape_counts[k] * factorial(k) if k <= order else 0, n))
        chi = sum((-1) ** h * v for h, v in enumerate(dims))
        expect = 1 if n == 1 else 0
        ok = ok and chi == expect
        rows.append({"arity": n, "dims_by_degree": dims, "euler_characteristic": chi,
                     "expected": expect})
    return {"pass": ok, "g_of_f_is_x": gf == x, "f_of_g_is_x": fg == x,
            "g": g.to_list(), "f": f.to_list(), "rows": rows}

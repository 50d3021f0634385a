import random

import pytest
import sympy

from conftest import SIGNATURES
from cutoperad import binary_signature, canonicalize, Node
from cutoperad.enumeration import ShapeGenerator
from cutoperad.homology import (ChainBasisElement, apply, basis, cut_through_data, differential,
                                homology_ranks, homotopy, predicted_dimensions, rank,
                                verify_arity, verify_resolution, weight)


def test_arity_one(sig2):
    assert basis(sig2, 1, 0) == [ChainBasisElement((), (1,))]
    assert homology_ranks(sig2, 1)[0]["homology"] == 1


def test_arity_two_dims(sig2):
    assert [len(basis(sig2, 2, h)) for h in range(3)] == [4, 4, 0]
    rows = homology_ranks(sig2, 2)
    assert rows[1]["rank_d"] == 4
    assert [r["homology"] for r in rows] == [0, 0, 0]


def test_fully_black_grid(sig2):
    b = basis(sig2, 4, 2)
    assert len(b) == 24
    assert all(cut_through_data(C) == [] for C in b)


def test_differential_of_black_bisection(sig2):
    C = ChainBasisElement(((1, "h"),), (1, 2))
    white = ChainBasisElement((), (canonicalize(Node(1, "h", (1, 2)), sig2),))
    assert differential(C, sig2) == {white: 1}
    assert differential(white, sig2) == {}


def test_homotopy_of_white_bisection(sig2):
    white = ChainBasisElement((), (canonicalize(Node(1, "h", (1, 2)), sig2),))
    assert cut_through_data(white) == [(1, "h")]
    assert homotopy(white, sig2) == {ChainBasisElement(((1, "h"),), (1, 2)): 1}
    assert homotopy(ChainBasisElement((), (1,)), sig2) == {}


def test_grid_d2_signs(sig2):
    C = basis(sig2, 4, 2)[0]
    dC = differential(C, sig2)
    assert sorted(dC.values()) == [-1, 1]
    assert apply(differential, dC, sig2) == {}


def test_predicted_dimensions(sig2):
    gen = ShapeGenerator(sig2)
    counts = [0] + [gen.count(m) for m in range(1, 6)]
    assert predicted_dimensions(sig2, 4, counts) == [936, 960, 24]
    assert predicted_dimensions(sig2, 5, counts) == [25440, 26400, 960]


def test_d3_arity_four_dims():
    sig = binary_signature(3)
    gen = ShapeGenerator(sig)
    assert [len(basis(sig, 4, h, gen)) for h in range(4)] == [3168, 3240, 72, 0]


def test_euler_alternating_sum_zero(sig2):
    rows = homology_ranks(sig2, 4)
    assert sum((-1) ** r["degree"] * r["dim"] for r in rows) == 0


def test_rank_against_sympy():
    rng = random.Random(1)
    for _ in range(30):
        m, n = rng.randint(1, 7), rng.randint(1, 7)
        cols = []
        for _ in range(n):
            col = {i: rng.choice([0, 0, 1, -1, 2]) for i in range(m)}
            cols.append({i: c for i, c in col.items() if c})
        dense = sympy.Matrix(m, n, lambda i, j: cols[j].get(i, 0))
        assert rank(cols) == dense.rank()


def test_blockwise_ranks_match_global():
    sig = SIGNATURES["d2_ht_v"]
    assert homology_ranks(sig, 3, blocks=True) == homology_ranks(sig, 3, blocks=False)


def test_weight_counts_cuts(sig2):
    C = basis(sig2, 4, 2)[0]
    assert weight(C) == 2
    assert weight(ChainBasisElement((), (1,))) == 0


@pytest.mark.parametrize("name,n", [("d2_binary", 4), ("d3_binary", 3), ("d1_a2_b3", 6),
                                    ("d2_ht_v", 4), ("d2_hg_vu", 4), ("d3_h3_v_z", 4)])
def test_verify_arity(name, n):
    report = verify_arity(SIGNATURES[name], n)
    assert report["pass"], report["failures"]


def test_verify_resolution_report_shape(sig2):
    report = verify_resolution(sig2, 3)
    assert report["pass"]
    assert [a["arity"] for a in report["arities"]] == [1, 2, 3]
    assert report["arities"][1]["dims"] == [4, 4, 0]

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SIGNATURES
from cutoperad import (FreeAlgebraElement, LabelledSubdivision, ParseError, StructureError,
                       binary_signature, canonical_term, compose, equivalent, evaluate,
                       free_mult, generator, make_signature, parse_term, to_geom)
from cutoperad.enumeration import enumerate_shapes
from cutoperad.terms import (format_term, graft, interchange, random_interchange, random_term,
                             random_arity, term_from_json, term_to_json)

LHS = "(h (v 1 2) (v 3 4))"
RHS = "(v (h 1 3) (h 2 4))"


def test_parse_and_format(sig2):
    t = parse_term(LHS, sig2)
    assert format_term(t) == LHS
    assert term_from_json(term_to_json(t)) == t


@pytest.mark.parametrize("text,pos", [("(h 1", 4), ("(h 1 2))", 7), ("(q 1 2)", 1), ("", 0),
                                      ("(h 1 (v 2))", 5), ("(h 1 x)", 5)])
def test_parse_errors_have_positions(sig2, text, pos):
    with pytest.raises(ParseError) as exc:
        parse_term(text, sig2)
    assert exc.value.position == pos


def test_parse_rejects_wrong_arity(sig2):
    with pytest.raises((ParseError, StructureError)):
        evaluate(parse_term("(h 1 2 3)", sig2), sig2)


def test_generator_evaluates_to_generator(sig2):
    assert evaluate(parse_term("(h 1 2)", sig2), sig2) == generator(sig2, 1, "h")


def test_eq1(sig2):
    a, b = parse_term(LHS, sig2), parse_term(RHS, sig2)
    assert evaluate(a, sig2) == evaluate(b, sig2)
    assert equivalent(a, b, sig2)


def test_no_associativity(sig2):
    assert not equivalent(parse_term("(h (h 1 2) 3)", sig2), parse_term("(h 1 (h 2 3))", sig2),
                          sig2)


def test_canonical_term_examples(sig2):
    assert canonical_term(LabelledSubdivision(1)) == 1
    e = evaluate(parse_term(RHS, sig2), sig2)
    assert format_term(canonical_term(e)) == LHS


def test_canonical_term_roundtrip_random():
    rng = random.Random(5)
    for name, sig in SIGNATURES.items():
        for _ in range(300):
            e = evaluate(random_term(sig, random_arity(sig, 1, 10, rng), rng), sig)
            assert evaluate(canonical_term(e), sig) == e, name


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(sorted(SIGNATURES)), st.integers(0, 10 ** 9), st.integers(1, 20))
def test_equivalence_invariant_under_moves(name, seed, k):
    sig = SIGNATURES[name]
    rng = random.Random(seed)
    t = random_term(sig, random_arity(sig, 2, 12, rng), rng)
    u = t
    for _ in range(k):
        u = random_interchange(u, rng)
    assert equivalent(t, u, sig) and equivalent(u, t, sig)
    assert evaluate(t, sig) == evaluate(u, sig)


def test_interchange_is_self_inverse(sig2):
    t = parse_term(LHS, sig2)
    assert interchange(interchange(t)) == t
    assert format_term(interchange(t)) == RHS
    with pytest.raises(StructureError):
        interchange(parse_term("(h 1 2)", sig2))


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(SIGNATURES)), st.integers(0, 10 ** 9))
def test_evaluate_is_a_homomorphism(name, seed):
    sig = SIGNATURES[name]
    rng = random.Random(seed)
    t = random_term(sig, random_arity(sig, 1, 4, rng), rng)
    n = len(evaluate(t, sig).numbering)
    subs = [random_term(sig, random_arity(sig, 1, 3, rng), rng) for _ in range(n)]
    lhs = evaluate(graft(t, subs), sig)
    rhs = compose(evaluate(t, sig), [evaluate(s, sig) for s in subs])
    assert lhs == rhs


def test_injective_in_dimension_one():
    sig = binary_signature(1)
    for n in range(1, 8):
        shapes = enumerate_shapes(sig, n)
        # every binary bracketing is its own shape
        catalan = [1, 1, 2, 5, 14, 42, 132, 429][n - 1]
        assert len(shapes) == catalan
        assert len({to_geom(s, 1) for s in shapes}) == catalan


def test_free_mult_bisection(sig2):
    p, q = FreeAlgebraElement.letter("x"), FreeAlgebraElement.letter("y")
    e = free_mult(sig2, 1, "h", [p, q])
    g = to_geom(e.tree, 2)
    assert [b[0] for b in g.boxes()] == [(0, 0.5), (0.5, 1)]
    assert g.payloads() == ["x", "y"]
    assert e.letters == ("x", "y")


def test_free_mult_equal_args(sig2):
    x = FreeAlgebraElement.letter("x")
    e = free_mult(sig2, 2, "v", [x, x])
    assert e.letters == ("x", "x")


def test_free_algebra_interchange(sig2):
    a, b, c, d = (FreeAlgebraElement.letter(s) for s in "abcd")
    lhs = free_mult(sig2, 1, "h", [free_mult(sig2, 2, "v", [a, b]), free_mult(sig2, 2, "v", [c, d])])
    rhs = free_mult(sig2, 2, "v", [free_mult(sig2, 1, "h", [a, c]), free_mult(sig2, 1, "h", [b, d])])
    assert lhs == rhs
    assert str(lhs) == '(h (v "a" "b") (v "c" "d"))'
    assert parse_term('(h "a" "b")', sig2) is not None


def test_free_mult_errors(sig2):
    x = FreeAlgebraElement.letter("x")
    with pytest.raises(StructureError):
        free_mult(sig2, 1, "v", [x, x])
    with pytest.raises(StructureError):
        free_mult(sig2, 1, "h", [x])


def test_random_terms_respect_arity():
    sig = make_signature([("t", 3)])
    rng = random.Random(0)
    for n in (1, 3, 5, 7, 9):
        t = random_term(sig, n, rng)
        assert len(evaluate(t, sig).numbering) == n

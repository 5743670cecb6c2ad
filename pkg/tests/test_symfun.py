"""Exponential-polynomial arithmetic and the Jacobian bracket."""

import random
from fractions import Fraction

import pytest

from trilie.symfun import ExpPoly, from_text, jacobian_bracket, rho_ad

X, Y, Z = ExpPoly.var("x"), ExpPoly.var("y"), ExpPoly.var("z")


def _random_poly(rng, nterms=3):
    p = ExpPoly.zero()
    for _ in range(nterms):
        p = p + ExpPoly.monomial(rng.randint(0, 2), rng.randint(0, 2),
                                 rng.randint(0, 2), rng.randint(-1, 1),
                                 rng.randint(-3, 3))
    return p


def test_ring_laws_random():
    rng = random.Random(41)
    for _ in range(20):
        p, q, r = (_random_poly(rng) for _ in range(3))
        assert p * q == q * p
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r


def test_partial_product_rule():
    rng = random.Random(42)
    for _ in range(20):
        p, q = _random_poly(rng), _random_poly(rng)
        for var in ("x", "y", "z"):
            lhs = (p * q).partial(var)
            rhs = p.partial(var) * q + p * q.partial(var)
            assert lhs == rhs


def test_partial_z_sees_frequencies():
    p = ExpPoly.monomial(2, 0, 0, 2)  # x^2 e^{2z}
    assert p.partial("z") == ExpPoly.monomial(2, 0, 0, 2, 2)
    q = ExpPoly.monomial(0, 0, 1, -1)  # z e^{-z}
    assert q.partial("z") == (ExpPoly.exp(-1)
                              + ExpPoly.monomial(0, 0, 1, -1, -1))


def test_jacobian_bracket_frozen():
    assert jacobian_bracket(X, Y, Z) == ExpPoly.const(1)
    assert jacobian_bracket(X, Y, ExpPoly.exp(1)) == ExpPoly.exp(1)
    # swapping two arguments flips the sign
    assert jacobian_bracket(Y, X, Z) == -ExpPoly.const(1)


def test_jacobian_bracket_alternating_random():
    rng = random.Random(43)
    for _ in range(12):
        f, g, h = (_random_poly(rng, 2) for _ in range(3))
        assert jacobian_bracket(f, g, h) == -jacobian_bracket(g, f, h)
        assert jacobian_bracket(f, g, h) == -jacobian_bracket(f, h, g)
        assert jacobian_bracket(f, f, h).is_zero()


def test_jacobian_bracket_trilinear():
    rng = random.Random(44)
    for _ in range(10):
        f, g, h, k = (_random_poly(rng, 2) for _ in range(4))
        lhs = jacobian_bracket(f + k, g, h)
        rhs = jacobian_bracket(f, g, h) + jacobian_bracket(k, g, h)
        assert lhs == rhs


def test_rho_ad_is_bracket_slot():
    rng = random.Random(45)
    for _ in range(10):
        f, g, a = (_random_poly(rng, 2) for _ in range(3))
        assert rho_ad(f, g, a) == jacobian_bracket(f, g, a)


def test_text_roundtrip():
    samples = (
        "0",
        "1",
        "3 * x y e^{-1 z} + 1/2 * z^2",
        "-2 * x^2 + 1 * e^{3 z}",
    )
    for text in samples:
        p = from_text(text)
        assert from_text(p.to_text()) == p


def test_from_text_rejects_garbage():
    with pytest.raises(ValueError):
        from_text("3 * w^2")
    with pytest.raises(ValueError):
        from_text("x + + y")


def test_eval_at_exact():
    p = X * Y + ExpPoly.exp(1)
    assert p.eval_at(2, 3, 0) == 7
    q = ExpPoly.monomial(0, 0, 0, 1, Fraction(1, 2))
    assert q.eval_at(0, 0, 0, ev=Fraction(2, 3)) == Fraction(1, 3)


def test_degree_and_frequency_bounds():
    p = ExpPoly.monomial(2, 1, 0, -3)
    assert p.degree() == 3
    assert p.max_freq() == 3
    assert ExpPoly.zero().degree() == -1
    assert ExpPoly.zero().max_freq() == 0

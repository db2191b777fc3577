"""Scalar kernel and truncated jet ring."""

import random
from fractions import Fraction

import pytest

from skewpoly.jets import DEFAULT_JET_SPEC, Jet, JetSpec, OrderMismatchError, TruncationError
from skewpoly.scalars import GaussianRational, exact_div, format_scalar, parse_scalar


def rand_scalar(rng):
    return Fraction(rng.randint(-9, 9), rng.randint(1, 5))


def rand_jet(rng, spec=DEFAULT_JET_SPEC):
    return Jet(spec, {a: rand_scalar(rng) for a in spec.alphas()})


def test_rational_exactness():
    rng = random.Random(0)
    for _ in range(200):
        a, b = rand_scalar(rng), rand_scalar(rng)
        assert (a + b) - b == a


def test_gaussian_arithmetic_and_conjugation():
    a = GaussianRational.of(Fraction(3, 2), Fraction(-1, 3))
    b = GaussianRational.of(2, 5)
    assert (a + b) - b == a
    assert a * b == b * a
    assert (a / b) * b == a
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert a + Fraction(1, 2) == GaussianRational.of(2, Fraction(-1, 3))
    assert a ** 3 == a * a * a


def test_scalar_format_round_trip():
    rng = random.Random(1)
    for _ in range(100):
        f = rand_scalar(rng)
        assert parse_scalar(format_scalar(f)) == f
        g = GaussianRational.of(rand_scalar(rng), rand_scalar(rng))
        assert parse_scalar(format_scalar(g)) == g
    assert parse_scalar("3/4-2/5i") == GaussianRational.of(Fraction(3, 4), Fraction(-2, 5))


def test_exact_div_never_floats():
    assert exact_div(1, 1) == 1
    assert isinstance(exact_div(1, 1), Fraction)
    assert exact_div(Fraction(3), 2) == Fraction(3, 2)


def test_jet_difference_of_squares():
    spec = DEFAULT_JET_SPEC
    one_plus = Jet(spec, {(0, 0): Fraction(1), (1, 0): Fraction(1)})
    one_minus = Jet(spec, {(0, 0): Fraction(1), (1, 0): Fraction(-1)})
    prod = one_plus * one_minus
    assert prod == Jet(spec, {(0, 0): Fraction(1), (2, 0): Fraction(-1)})


def test_jet_identity_and_truncation_drop():
    rng = random.Random(2)
    spec = DEFAULT_JET_SPEC
    a = rand_jet(rng)
    assert a * Jet.constant(Fraction(1), spec) == a
    eps1 = Jet(spec, {(1, 0): Fraction(1)})
    eps1_sq = Jet(spec, {(2, 0): Fraction(1)})
    assert (eps1 * eps1_sq).is_zero()


def test_jet_ring_axioms_random():
    rng = random.Random(3)
    spec = JetSpec((2, 1))
    for _ in range(1000):
        a, b, c = (rand_jet(rng, spec) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a and a * b == b * a


def test_jet_extract_product_rule():
    rng = random.Random(4)
    for _ in range(50):
        f, g = rand_jet(rng), rand_jet(rng)
        lhs = (f * g).extract(1, 0)
        rhs = f.extract(1, 0) * g.base + f.base * g.extract(1, 0)
        assert lhs == rhs


def test_jet_extract_hand_expanded_quadratic():
    # (2 + 3 e1)(5 - e1) = 10 + 13 e1 - 3 e1^2
    spec = JetSpec((2, 1))
    f = Jet(spec, {(0, 0): Fraction(2), (1, 0): Fraction(3)})
    g = Jet(spec, {(0, 0): Fraction(5), (1, 0): Fraction(-1)})
    h = f * g
    assert h.extract(0, 0) == 10
    assert h.extract(1, 0) == 13
    assert h.extract(2, 0) == -6  # 2! times the stored coefficient -3


def test_jet_extract_constant():
    c = Jet.constant(Fraction(7, 3))
    assert c.extract(0, 0) == Fraction(7, 3)
    assert c.extract(1, 0) == 0


def test_order_mismatch_and_truncation_errors():
    a = Jet.constant(Fraction(1), JetSpec((2, 1)))
    b = Jet.constant(Fraction(1), JetSpec((1, 1)))
    with pytest.raises(OrderMismatchError):
        _ = a + b
    with pytest.raises(TruncationError):
        a.extract(3, 0)


def test_jet_division_by_unit():
    rng = random.Random(5)
    for _ in range(50):
        a = rand_jet(rng)
        if not a.base:
            continue
        inv = a.inverse()
        assert a * inv == Jet.constant(Fraction(1))
    nonunit = Jet(DEFAULT_JET_SPEC, {(1, 0): Fraction(1)})
    with pytest.raises(ZeroDivisionError):
        nonunit.inverse()


def test_jet_deriv_shrinks_spec():
    rng = random.Random(6)
    a = rand_jet(rng)
    d = a.deriv(0)
    assert d.spec.orders == (1, 1)
    assert d.base == a.extract(1, 0)


def test_weighted_spec_enumeration():
    spec = JetSpec((3, 1, 1), weight_cap=3)
    alphas = set(spec.alphas())
    assert (3, 0, 0) in alphas and (1, 1, 0) in alphas and (0, 0, 1) in alphas
    assert (2, 1, 0) not in alphas  # weight 4

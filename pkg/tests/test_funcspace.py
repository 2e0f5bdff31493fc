import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from diffuni.funcspace import (
    DegenerateFunction,
    ParseError,
    PolyFunc,
    affine_conjugate,
    format_function,
    interpolate,
    is_normalized,
    normalize,
    parse_function,
    parse_table,
    random_normalized,
    reduce_exponent,
    square_function,
)
from diffuni.gf2m import GF2m
from diffuni.rng import SplitMix64
from diffuni.uniformity import delta_exhaustive


def test_evaluate_monomial_exhaustive(fields):
    F = fields(4)
    f = PolyFunc.monomial(F, 3)
    assert [f(a) for a in range(16)] == [F.pow(a, 3) for a in range(16)]
    assert list(f.table) == [F.pow(a, 3) for a in range(16)]


def test_evaluate_constant_and_cancel(fields):
    F = fields(5)
    f = parse_function(F, "x^7 + 0x9")
    assert f(0) == 9
    for m in (3, 6, 9):
        assert parse_function(fields(m), "x^3 + x")(1) == 0


def test_exponent_reduction_convention():
    q = 16
    assert reduce_exponent(0, q) == 0
    assert reduce_exponent(15, q) == 15
    assert reduce_exponent(16, q) == 1
    assert reduce_exponent(30, q) == 15
    assert reduce_exponent(31, q) == 1


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_reduced_polynomial_agrees_pointwise(m, fields):
    F = fields(m)
    rng = SplitMix64(m)
    for _ in range(10):
        raw = [(rng.below(5 * F.q), rng.nonzero(F.q)) for _ in range(4)]
        f = PolyFunc(F, raw)
        assert all(e < F.q for e in f.terms)
        for x in range(F.q):
            direct = 0
            for e, c in raw:
                direct ^= F.mul(c, F.pow(x, e))
            assert f(x) == direct


def test_normalize_examples(fields):
    F = fields(5)
    assert normalize(parse_function(F, "x^4 + x^3")) == PolyFunc.monomial(F, 3)
    assert normalize(parse_function(F, "x^3 + 1")) == PolyFunc.monomial(F, 3)
    with pytest.raises(DegenerateFunction):
        normalize(parse_function(F, "x^2 + x + 1"))
    with pytest.raises(DegenerateFunction):
        normalize(parse_function(F, "x^6 + x^2"))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_normalize_idempotent(m, fields):
    F = fields(m)
    rng = SplitMix64(99)
    for _ in range(30):
        f = PolyFunc(F, {e: rng.below(F.q) for e in range(F.q)})
        try:
            g = normalize(f)
        except DegenerateFunction:
            continue
        assert is_normalized(g)
        assert normalize(g) == g


def test_affine_conjugate_identity_and_monomial(fields):
    F = fields(5)
    f = parse_function(F, "0x3*x^7 + x^5 + x^3")
    assert affine_conjugate(f, 1, 0, 1) == f
    for a in (2, 7, 19):
        assert affine_conjugate(PolyFunc.monomial(F, 3), a, 0, 1) == PolyFunc.monomial(F, 3, F.pow(a, 3))
    with pytest.raises(ValueError):
        affine_conjugate(f, 0, 1, 1)
    with pytest.raises(ValueError):
        affine_conjugate(f, 1, 1, 0)


@pytest.mark.parametrize("m", [3, 4, 5])
def test_affine_conjugate_pointwise_and_composes(m, fields):
    F = fields(m)
    rng = SplitMix64(m + 100)
    for _ in range(10):
        f = random_normalized(F, rng, F.q - 1)
        a1, b1, c1 = rng.nonzero(F.q), rng.below(F.q), rng.nonzero(F.q)
        a2, b2, c2 = rng.nonzero(F.q), rng.below(F.q), rng.nonzero(F.q)
        g = affine_conjugate(f, a1, b1, c1)
        assert all(g(x) == F.mul(c1, f(F.mul(a1, x) ^ b1)) for x in range(F.q))
        # c2 * g(a2 x + b2) = c1 c2 f(a1 a2 x + a1 b2 + b1)
        twice = affine_conjugate(g, a2, b2, c2)
        once = affine_conjugate(f, F.mul(a1, a2), F.mul(a1, b2) ^ b1, F.mul(c1, c2))
        assert twice == once


def test_square_function(fields):
    F = fields(4)
    assert square_function(PolyFunc.monomial(F, 3)) == PolyFunc.monomial(F, 6)
    rng = SplitMix64(4)
    f = random_normalized(F, rng, 15)
    g = square_function(f)
    assert all(g(x) == F.mul(f(x), f(x)) for x in range(F.q))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_prop_reductions_preserve_delta(m, fields):
    F = fields(m)
    rng = SplitMix64(7 * m)
    for _ in range(15):
        f = random_normalized(F, rng, F.q - 1)
        base = delta_exhaustive(f).delta
        a, b, c = rng.nonzero(F.q), rng.below(F.q), rng.nonzero(F.q)
        assert delta_exhaustive(affine_conjugate(f, a, b, c)).delta == base
        assert delta_exhaustive(square_function(f)).delta == base
        lin = PolyFunc(F, {1 << k: rng.below(F.q) for k in range(m)} | {0: rng.below(F.q)})
        assert delta_exhaustive(f + lin).delta == base


def test_interpolate_examples(fields):
    F = fields(4)
    f = PolyFunc.monomial(F, 7)
    assert interpolate(F, list(f.table)) == f
    assert interpolate(F, [0] * 16).is_zero()
    with pytest.raises(ValueError):
        interpolate(F, [0] * 15)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_interpolate_round_trip(m, fields):
    F = fields(m)
    rng = np.random.default_rng(m)
    for _ in range(5):
        table = [int(v) for v in rng.integers(0, F.q, F.q)]
        f = interpolate(F, table)
        assert f.degree <= F.q - 1
        assert [f(x) for x in range(F.q)] == table


def test_parse_grammar(fields):
    F = fields(8)
    f = parse_function(F, " 0x3 * x^7 +x^5+ 0X1f*x + 0xa ")
    assert f.terms == {0: 0xA, 1: 0x1F, 5: 1, 7: 3}
    assert parse_function(F, format_function(f)) == f
    assert parse_function(F, "x^254") == PolyFunc.monomial(F, 254)
    assert parse_function(F, "x^3 + x^3").is_zero()


@pytest.mark.parametrize("text, pos", [("x^3 +", 5), ("x^3 y", 4), ("", 0), ("0x1ff*x^3", 0)])
def test_parse_errors_carry_position(text, pos, fields):
    with pytest.raises(ParseError) as ei:
        parse_function(fields(8), text)
    assert ei.value.pos == pos


def test_parse_table(fields):
    F = fields(3)
    assert parse_table(F, ["0x1", "", "# comment", "7", "0 # zero"]) == [1, 7, 0]
    with pytest.raises(ValueError):
        parse_table(F, ["0x8"])


@settings(max_examples=50, deadline=None)
@given(st.integers(3, 7), st.integers(0, 2**32))
def test_random_normalized_is_normalized(m, seed):
    F = GF2m(m)
    f = random_normalized(F, SplitMix64(seed), 9, odd_leading=True)
    assert is_normalized(f)
    assert f.degree % 2 == 1 and f.degree <= 9

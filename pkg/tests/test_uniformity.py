import numpy as np
import pytest

from diffuni.funcspace import PolyFunc, random_normalized
from diffuni.gf2m import GF2m
from diffuni.rng import SplitMix64
from diffuni.uniformity import (
    FieldTooLarge,
    ddt_row,
    ddt_table,
    delta,
    delta_exhaustive,
    delta_monomial,
    delta_sampled,
    row_solutions,
    sample_alphas,
)

from conftest import naive_ddt_max, naive_pow


def test_splitmix_reference_stream():
    # first outputs for seed 0 of the reference SplitMix64
    r = SplitMix64(0)
    assert [r.next() for _ in range(3)] == [
        0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F,
    ]


def test_row_x3_m3():
    F = GF2m(3)
    row = ddt_row(PolyFunc.monomial(F, 3), 1)
    assert row.counts.sum() == 8
    assert set(row.as_dict().values()) == {2}
    with pytest.raises(ValueError):
        ddt_row(PolyFunc.monomial(F, 3), 0)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_delta_x3_against_naive(m):
    F = GF2m(m)
    vals = [naive_pow(x, 3, F.modulus, m) for x in range(F.q)]
    assert naive_ddt_max(vals) == 2
    assert delta_exhaustive(PolyFunc.monomial(F, 3)).delta == 2


@pytest.mark.parametrize("m, want", [(4, 4), (6, 4), (8, 4), (3, 2), (5, 2), (7, 2)])
def test_inverse_map(m, want):
    F = GF2m(m)
    vals = [naive_pow(x, F.q - 2, F.modulus, m) for x in range(F.q)]
    assert naive_ddt_max(vals) == want
    assert delta_exhaustive(PolyFunc.monomial(F, F.q - 2)).delta == want
    row = ddt_row(PolyFunc.monomial(F, F.q - 2), 1)
    assert row.max == want


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_ddt_evenness_and_row_sums(m):
    F = GF2m(m)
    f = random_normalized(F, SplitMix64(m), 9)
    T = ddt_table(f)
    assert (T[1:] % 2 == 0).all()
    assert (T[1:].sum(axis=1) == F.q).all()
    assert T[0, 0] == F.q


@pytest.mark.parametrize("m", [3, 4, 5])
def test_exhaustive_matches_naive_random(m):
    F = GF2m(m)
    rng = SplitMix64(1000 + m)
    for _ in range(20):
        f = random_normalized(F, rng, F.q - 1)
        vals = [f(x) for x in range(F.q)]
        r = delta_exhaustive(f)
        assert r.delta == naive_ddt_max(vals)
        assert r.delta % 2 == 0 and r.delta > 0
        # witness is the lexicographically first maximal cell
        alpha, beta = r.witness
        assert len(row_solutions(f, alpha, beta)) == r.delta
        for a in range(1, alpha):
            assert ddt_row(f, a).max < r.delta
        assert ddt_row(f, alpha).counts[:beta].max(initial=0) < r.delta
        assert sum(r.spectrum.values()) == (F.q - 1) * F.q


def test_monomial_examples():
    assert delta_monomial(7, GF2m(7)).delta >= 6
    assert delta_monomial(3, GF2m(10)).delta == 2
    with pytest.raises(ValueError):
        delta_monomial(2, GF2m(4))
    with pytest.raises(ValueError):
        delta_monomial(16, GF2m(4))


def test_monomial_equals_exhaustive_m3_to_m6():
    for m in range(3, 7):
        F = GF2m(m)
        for d in range(3, F.q - 1):
            a = delta_monomial(d, F)
            b = delta_exhaustive(PolyFunc.monomial(F, d))
            assert (a.delta, a.witness) == (b.delta, b.witness), (m, d)


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_monomial_modulus_independence(m):
    from diffuni.gf2m import is_irreducible
    moduli = [f for f in range((1 << m) + 1, 1 << (m + 1), 2) if is_irreducible(f)][:6]
    for d in range(3, (1 << m) - 1, 2):
        deltas = {delta_monomial(d, GF2m(m, mod)).delta for mod in moduli}
        assert len(deltas) == 1, (m, d, deltas)


@pytest.mark.parametrize("m", [4, 6, 8])
def test_sampled_is_lower_bound_and_deterministic(m):
    F = GF2m(m)
    rng = SplitMix64(m)
    for _ in range(5):
        f = random_normalized(F, rng, 15)
        full = delta_exhaustive(f).delta
        for budget in (1, 3, 10):
            s = delta_sampled(f, budget, seed=42)
            assert s.mode == "sampled" and not s.exact
            assert s.delta <= full
            assert s.rows_examined == budget
            assert s.to_dict() == delta_sampled(f, budget, seed=42).to_dict()
        assert delta_sampled(f, F.q, seed=1).delta == full


def test_sample_alphas_distinct():
    a = sample_alphas(1 << 10, 500, seed=3)
    assert len(set(a)) == 500 and 0 not in a
    assert sample_alphas(16, 100, seed=3) == list(range(1, 16))


def test_sampled_stop_at():
    F = GF2m(7)
    s = delta_sampled(PolyFunc.monomial(F, 7), 100, seed=0, stop_at=6)
    assert s.delta == 6 and s.rows_examined == 1


def test_exhaustive_field_limit():
    with pytest.raises(FieldTooLarge):
        delta_exhaustive(PolyFunc.monomial(GF2m(17), 5))
    with pytest.raises(FieldTooLarge):
        ddt_table(PolyFunc.monomial(GF2m(9), 5))


def test_dispatch():
    F = GF2m(6)
    assert delta(PolyFunc.monomial(F, 5, c=7)).mode == "monomial-fast"
    assert delta(PolyFunc(F, {5: 1, 3: 1})).mode == "exhaustive"
    assert delta(PolyFunc(GF2m(17), {5: 1, 3: 1}), alpha_budget=2).mode == "sampled"


def test_report_json_shape():
    d = delta_exhaustive(PolyFunc.monomial(GF2m(4), 3)).to_dict()
    assert d["delta"] == 2
    # x^2+x+1 splits over F_16, so beta = 0 already reaches 2
    assert d["witness"] == {"alpha": 1, "beta": 0}
    assert d["mode"] == "exhaustive"
    assert d["field"] == {"m": 4, "modulus": "0x13"}


def test_threaded_scan_is_identical(monkeypatch):
    F = GF2m(9)
    f = random_normalized(F, SplitMix64(9), 20)
    one = delta_exhaustive(f).to_dict()
    monkeypatch.setenv("DIFFUNI_THREADS", "3")
    assert delta_exhaustive(f).to_dict() == one

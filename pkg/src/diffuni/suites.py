"""Named end-to-end verification suites, run by ``diffuni verify`` and the tests.

Each suite yields Case records.  A case is "pass", "fail", or
"inconclusive" (only the sampled witness search can be inconclusive).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import bounds
from .funcspace import (
    PolyFunc,
    affine_conjugate,
    parse_function,
    random_normalized,
    square_function,
)
from .geometry import (
    equivalence_verdicts,
    proj_curve_points,
    structural_checks,
    x_point_count,
)
from .gf2m import GF2m
from .mvpoly import DIVISOR, eval_tripoly, numerator, pf_polynomial
from .rng import SplitMix64
from .uniformity import delta_exhaustive, delta_monomial, delta_sampled, ddt_row

DEFAULT_SEED = 20100101


@dataclass
class Case:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def line(self) -> str:
        return f"[{self.status.upper():>12}] {self.name}" + (f"  ({self.detail})" if self.detail else "")


def _case(name: str, ok: bool, detail: str = "") -> Case:
    return Case(name, "pass" if ok else "fail", detail)


def equivalence(ms=(3, 4, 5), n_random: int = 200, max_degree: int = 9, seed: int = DEFAULT_SEED):
    """delta <= 4 by DDT, by containment in V, and by direct 6-point search all agree."""
    rng = SplitMix64(seed)
    for m in ms:
        F = GF2m(m)
        funcs = [PolyFunc.monomial(F, d) for d in range(3, F.q - 1, 2)]
        funcs += [random_normalized(F, rng, max_degree) for _ in range(n_random)]
        bad = []
        n_le4 = 0
        for f in funcs:
            v = equivalence_verdicts(f)
            if len(set(v.values())) != 1:
                bad.append(f"{f}: {v}")
            n_le4 += v["ddt"]
        yield _case(f"equivalence m={m}", not bad,
                    f"{len(funcs)} functions, {n_le4} with delta<=4" + (f"; first mismatch {bad[0]}" if bad else ""))


def inverse(even=(4, 6, 8), odd=(3, 5, 7)):
    """delta(x^(q-2)) is 4 for even m and 2 for odd m."""
    for m, want in [(m, 4) for m in even] + [(m, 2) for m in odd]:
        F = GF2m(m)
        got = delta_exhaustive(PolyFunc.monomial(F, F.q - 2)).delta
        yield _case(f"delta(x^(q-2)) m={m} == {want}", got == want, f"got {got}")


def _random_affine(F: GF2m, rng: SplitMix64) -> PolyFunc:
    terms = {0: rng.below(F.q)}
    for k in range(F.m):
        terms[1 << k] = rng.below(F.q)
    return PolyFunc(F, terms)


def invariances(ms=(3, 4, 5, 6), n: int = 100, seed: int = DEFAULT_SEED):
    """delta is unchanged by adding a q-affine map, by c*f(a*x+b), and by squaring."""
    rng = SplitMix64(seed)
    for m in ms:
        F = GF2m(m)
        bad = []
        for _ in range(n):
            f = random_normalized(F, rng, F.q - 1)
            a, b, c = rng.nonzero(F.q), rng.below(F.q), rng.nonzero(F.q)
            base = delta_exhaustive(f).delta
            variants = {
                "affine_add": f + _random_affine(F, rng),
                "conjugate": affine_conjugate(f, a, b, c),
                "square": square_function(f),
            }
            for name, g in variants.items():
                got = delta_exhaustive(g).delta
                if got != base:
                    bad.append(f"{name} of {f}: {got} != {base}")
        yield _case(f"invariances m={m}", not bad, f"{n} instances" + (f"; {bad[0]}" if bad else ""))


def pf_reconstruction(ms=(4, 5, 6, 7, 8), n: int = 50, max_degree: int = 31, seed: int = DEFAULT_SEED):
    """P_f * (x+y)(x+z)(y+z) == numerator(f) and deg P_f == deg f - 3."""
    rng = SplitMix64(seed)
    for m in ms:
        F = GF2m(m)
        bad = []
        for _ in range(n):
            f = random_normalized(F, rng, max_degree, odd_leading=True)
            P = pf_polynomial(f)
            if P * DIVISOR != numerator(f):
                bad.append(f"{f}: product differs from numerator")
            elif P.total_degree != f.degree - 3:
                bad.append(f"{f}: degree {P.total_degree}")
        yield _case(f"P_f reconstruction m={m}", not bad, f"{n} functions" + (f"; {bad[0]}" if bad else ""))


def weil(cases=None):
    """Chart counts of C : P_{x^d} = 0 fall in [q+1 - 2g sqrt(q), q+1 + 2g sqrt(q)]."""
    if cases is None:
        cases = [(7, m) for m in range(4, 11)] + [(15, m) for m in range(6, 13)]
    for d, m in cases:
        F = GF2m(m)
        g = bounds.arithmetic_genus(d)
        lo, hi = bounds.weil_interval(F.q, g)
        n = proj_curve_points(d, F)
        yield _case(f"#C(F_q) d={d} m={m} in [{lo}, {hi}]", lo <= n <= hi, f"count {n}")


def structural(ds=(7, 15), ms=(4, 5, 6, 7, 8)):
    """Vertex, C7 on S1, projection onto C, and the x+z+t = 0 plane."""
    for d in ds:
        for m in ms:
            r = structural_checks(d, GF2m(m))
            yield _case(f"structural d={d} m={m}", r.all(), str(r.to_dict()))


BORNE1_DEFAULT_MAX_M = {7: 16, 15: 16, 31: 20}


def borne1(max_m=None):
    """delta(x^d) >= 6 wherever the exact monomial inequality holds."""
    max_m = max_m or BORNE1_DEFAULT_MAX_M
    for d, top in max_m.items():
        first = bounds.smallest_m(bounds.monomial_theorem_applies, d)
        for m in range(first, top + 1):
            assert bounds.monomial_theorem_applies(d, m)
            r = delta_monomial(d, GF2m(m))
            yield _case(f"delta(x^{d}) m={m} >= 6", r.delta >= 6, f"delta {r.delta}")


def certify_witness(f: PolyFunc, alpha: int, beta: int, needed: int = 6) -> bool:
    """Recompute the row and confirm ``needed`` distinct solutions with scalar arithmetic."""
    counts = ddt_row(f, alpha).counts
    if counts[beta] < needed:
        return False
    xs = f.field.elements()
    cand = xs[(f.table[xs ^ np.uint64(alpha)] ^ f.table) == np.uint64(beta)]
    sols = {int(x) for x in cand if f.evaluate(int(x) ^ alpha) ^ f.evaluate(int(x)) == beta}
    return len(sols) >= needed


def lawe(m: int = 22, n_funcs: int = 3, alpha_budget: int = 10_000, seed: int = DEFAULT_SEED):
    """Sampled search for a >= 6 row in random degree-7 polynomials over F_{2^m}."""
    rng = SplitMix64(seed)
    F = GF2m(m)
    for i in range(n_funcs):
        f = random_normalized(F, rng, 7, odd_leading=True)
        while f.degree != 7:
            f = random_normalized(F, rng, 7, odd_leading=True)
        r = delta_sampled(f, alpha_budget, seed + i, stop_at=6)
        name = f"sampled witness f{i}={f} m={m}"
        if r.delta < 6:
            yield Case(name, "inconclusive", f"no row >= 6 in {r.rows_examined} rows")
            continue
        alpha, beta = r.witness
        ok = certify_witness(f, alpha, beta)
        yield _case(name, ok, f"delta >= {r.delta} at alpha={alpha:#x} beta={beta:#x} after {r.rows_examined} rows")


def naive_x_count(f: PolyFunc) -> int:
    """#X(F_q) by testing every (x, y, z, t) in F_q^4."""
    F = f.field
    P = pf_polynomial(f)
    q = F.q
    vals = {}
    for x, y, z in itertools.product(range(q), repeat=3):
        vals[x, y, z] = eval_tripoly(P, x, y, z, F)
    return sum(
        1 for x, y, z, t in itertools.product(range(q), repeat=4)
        if vals[x, y, z] == 0 and vals[x, y, t] == 0
    )


X_COUNT_FUNCS = ("x^5", "x^7+x^3", "0x3*x^6+x^5+x^3")


def oracles(ms=(3, 4, 5, 6, 7, 8)):
    """Monomial fast path vs full DDT; X point count vs q^4 brute force."""
    for m in ms:
        F = GF2m(m)
        bad = []
        for d in range(3, F.q - 1):
            mono = delta_monomial(d, F)
            full = delta_exhaustive(PolyFunc.monomial(F, d))
            scaled = {k: v * (F.q - 1) for k, v in mono.spectrum.items()}
            if (mono.delta, mono.witness, scaled) != (full.delta, full.witness, full.spectrum):
                bad.append(d)
        yield _case(f"delta_monomial == delta_exhaustive m={m}", not bad,
                    f"d in [3, {F.q - 2}]" + (f"; mismatches at d={bad[:5]}" if bad else ""))
    F = GF2m(3)
    for text in X_COUNT_FUNCS:
        f = parse_function(F, text)
        fast, slow = x_point_count(f), naive_x_count(f)
        yield _case(f"#X(F_8) for {text}", fast == slow, f"{fast} vs brute force {slow}")


SUITES = {
    "equivalence": equivalence,
    "inverse": inverse,
    "invariances": invariances,
    "pf": pf_reconstruction,
    "weil": weil,
    "structural": structural,
    "borne1": borne1,
    "lawe": lawe,
    "oracles": oracles,
}


def run_suite(name: str, **kwargs) -> list[Case]:
    if name not in SUITES:
        raise KeyError(name)
    return list(SUITES[name](**kwargs))

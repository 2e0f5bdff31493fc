"""Point-count bounds and the degree/field-size thresholds for delta(f) > 4.

Every comparison is exact: square roots are removed by squaring both sides
(after checking signs) and fractional constants are Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from fractions import Fraction
from math import isqrt


def is_mersenne_degree(d: int) -> int | None:
    """r if d = 2^r - 1 with r >= 3, else None."""
    r = (d + 1).bit_length() - 1
    if d >= 7 and (d + 1) == 1 << r:
        return r
    return None


def arithmetic_genus(d: int) -> int:
    """Genus (d-4)(d-5)/2 of the degree d-3 plane curve P_{x^d} = 0."""
    if d < 5 or d % 2 == 0:
        raise ValueError(f"arithmetic genus needs odd d >= 5 (d = {d})")
    return (d - 4) * (d - 5) // 2


def weil_interval(q: int, genus: int) -> tuple[int, int]:
    """Integers in [q + 1 - 2g sqrt(q), q + 1 + 2g sqrt(q)]."""
    if q < 2 or q & (q - 1):
        raise ValueError(f"q must be a power of 2 (q = {q})")
    if genus < 0:
        raise ValueError("negative genus")
    # 2g sqrt(q) = sqrt(4 g^2 q)
    r = isqrt(4 * genus * genus * q)
    return q + 1 - r, q + 1 + r


def hyperplane_cap(deg_c: int) -> int:
    """A plane curve of degree deg_c off V meets the seven planes in <= 7 deg_c points."""
    if deg_c < 1:
        raise ValueError("curve degree must be >= 1")
    return 7 * deg_c


def serre_cap(deg_x: int, q: int) -> int:
    """Max rational points of a degree > 1 surface inside V and the hyperplane at infinity."""
    if deg_x < 2:
        raise ValueError("serre_cap needs a surface of degree >= 2")
    return 8 * (deg_x * q + 1)


def _gt_sqrt(lhs: int, k2: int, q: int) -> bool:
    """lhs > sqrt(k2 * q), exactly (k2 >= 0)."""
    return lhs > 0 and lhs * lhs > k2 * q


def monomial_inequality(d: int, m: int) -> bool:
    """q - 2 g sqrt(q) - 7(d-3) + 1 > 0 with g = (d-4)(d-5)/2."""
    q = 1 << m
    g = arithmetic_genus(d)
    return _gt_sqrt(q - 7 * (d - 3) + 1, 4 * g * g, q)


def monomial_closed_form_quartic(d: int, m: int) -> bool:
    """q >= d^4 - 18d^3 + 121d^2 - 348d + 362."""
    return (1 << m) >= d**4 - 18 * d**3 + 121 * d**2 - 348 * d + 362


def monomial_closed_form_root(d: int, m: int) -> bool:
    """5 <= d < q^(1/4) + 4.6, i.e. (d - 23/5)^4 < q."""
    if d < 5:
        return False
    return (Fraction(d) - Fraction(23, 5)) ** 4 < (1 << m)


def polynomial_inequality(d: int, m: int) -> bool:
    """q - (d-3)^4 sqrt(q) - 36(2d-3)^5 - 8(d-3) > 0."""
    q = 1 << m
    return _gt_sqrt(q - 36 * (2 * d - 3) ** 5 - 8 * (d - 3), (d - 3) ** 8, q)


def polynomial_closed_form_root(d: int, m: int) -> bool:
    """31 <= d < q^(1/8) + 2, i.e. (d - 2)^8 < q."""
    return d >= 31 and (d - 2) ** 8 < (1 << m)


def polynomial_closed_form_sqrt(d: int, m: int) -> bool:
    """sqrt(q) > d^4 - 12d^3 + 54d^2 + 1044d + 5265 + 25920/d."""
    rhs = Fraction(d**4 - 12 * d**3 + 54 * d**2 + 1044 * d + 5265) + Fraction(25920, d)
    if rhs < 0:
        return True
    return rhs * rhs < (1 << m)


def polynomial_stated_claim(d: int, m: int) -> bool:
    """Threshold as usually stated (looser than the inequality): d=7 and m>=22, d=15 and m>=30, or 31 <= d < q^(1/8)+2."""
    if is_mersenne_degree(d) is None:
        return False
    if d == 7:
        return m >= 22
    if d == 15:
        return m >= 30
    return polynomial_closed_form_root(d, m)


def monomial_theorem_applies(d: int, m: int) -> bool:
    return is_mersenne_degree(d) is not None and monomial_inequality(d, m)


def polynomial_theorem_applies(d: int, m: int) -> bool:
    return is_mersenne_degree(d) is not None and polynomial_inequality(d, m)


def smallest_m(predicate, d: int, limit: int = 128) -> int | None:
    for m in range(1, limit + 1):
        if predicate(d, m):
            return m
    return None


@dataclass
class BoundReport:
    d: int
    m: int
    q: int
    hypotheses_met: bool
    genus: int | None
    weil_interval: tuple[int, int] | None
    hyperplane_cap: int | None
    serre_cap: int | None
    monomial_inequality_holds: bool
    polynomial_inequality_holds: bool
    predicted_delta_gt_4_monomial: bool
    predicted_delta_gt_4_polynomial: bool
    closed_forms: dict

    def to_dict(self) -> dict:
        d = asdict(self)
        d["weil_interval"] = list(self.weil_interval) if self.weil_interval else None
        return d


def bound_report(d: int, m: int) -> BoundReport:
    q = 1 << m
    hyp = is_mersenne_degree(d) is not None
    odd5 = d >= 5 and d % 2 == 1
    genus = arithmetic_genus(d) if odd5 else None
    mono = monomial_inequality(d, m) if odd5 else False
    poly = polynomial_inequality(d, m) if d >= 4 else False
    return BoundReport(
        d=d, m=m, q=q,
        hypotheses_met=hyp,
        genus=genus,
        weil_interval=weil_interval(q, genus) if genus is not None else None,
        hyperplane_cap=hyperplane_cap(d - 3) if d >= 4 else None,
        serre_cap=serre_cap((d - 3) ** 2, q) if d >= 5 else None,
        monomial_inequality_holds=mono,
        polynomial_inequality_holds=poly,
        predicted_delta_gt_4_monomial=hyp and mono,
        predicted_delta_gt_4_polynomial=hyp and poly,
        closed_forms={
            "note": "closed forms are sufficient conditions quoted for reference; "
                    "the predicted flags use the exact proof inequalities",
            "monomial_quartic": monomial_closed_form_quartic(d, m),
            "monomial_root": monomial_closed_form_root(d, m),
            "polynomial_root": polynomial_closed_form_root(d, m),
            "polynomial_sqrt": polynomial_closed_form_sqrt(d, m),
            "polynomial_stated_claim": polynomial_stated_claim(d, m),
        },
    )

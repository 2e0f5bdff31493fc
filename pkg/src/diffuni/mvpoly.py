"""Sparse polynomials in x, y, z over F_{2^m} and the quotient P_f.

P_f(x, y, z) = (f(x) + f(y) + f(z) + f(x+y+z)) / ((x+y)(x+z)(y+z))

A TriPoly whose ``field`` is None has coefficients in the prime field F_2
(all coefficients equal 1); such polynomials evaluate over any F_{2^m}.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .funcspace import PolyFunc, is_power_of_two
from .gf2m import GF2m

Key = tuple[int, int, int]


class InexactDivision(ArithmeticError):
    """A division that must be exact left a remainder (a bug, never user error)."""


class TriPoly:
    def __init__(self, field: GF2m | None, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, int] = {}
        for k, c in items:
            acc[k] = acc.get(k, 0) ^ c
        self.terms = {k: c for k, c in acc.items() if c}

    def _cmul(self, a: int, b: int) -> int:
        return a & b if self.field is None else self.field.mul(a, b)

    @property
    def total_degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        return len({sum(k) for k in self.terms}) <= 1

    def permute(self, perm: tuple[int, int, int]) -> TriPoly:
        """Substitute variable perm[v] for variable v."""
        out = {}
        for k, c in self.terms.items():
            nk = [0, 0, 0]
            for v in range(3):
                nk[perm[v]] = k[v]
            out[tuple(nk)] = c
        return TriPoly(self.field, out)

    def over(self, field: GF2m) -> TriPoly:
        """Same polynomial with coefficients viewed in ``field``."""
        return TriPoly(field, self.terms)

    def _common(self, other: TriPoly) -> GF2m | None:
        if self.field is None:
            return other.field
        if other.field is not None and other.field != self.field:
            raise ValueError("polynomials over different fields")
        return self.field

    def __add__(self, other: TriPoly) -> TriPoly:
        return TriPoly(self._common(other), list(self.terms.items()) + list(other.terms.items()))

    def __mul__(self, other: TriPoly) -> TriPoly:
        field = self._common(other)
        out: dict[Key, int] = {}
        mul = (lambda a, b: a & b) if field is None else field.mul
        for (a1, b1, c1), u in self.terms.items():
            for (a2, b2, c2), v in other.terms.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                out[k] = out.get(k, 0) ^ mul(u, v)
        return TriPoly(field, out)

    def __eq__(self, other):
        # coefficient maps only: an F_2 polynomial equals its image over F_q
        return isinstance(other, TriPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"TriPoly({self.field!r}, {len(self.terms)} terms, deg {self.total_degree})"


X = TriPoly(None, {(1, 0, 0): 1})
Y = TriPoly(None, {(0, 1, 0): 1})
Z = TriPoly(None, {(0, 0, 1): 1})
DIVISOR = (X + Y) * (X + Z) * (Y + Z)


def sum_power_terms(e: int) -> list[Key]:
    """Monomials of (x+y+z)^e over F_2.

    By Lucas' theorem x^i y^j z^k survives iff i, j, k have disjoint binary
    digits that together make up e.
    """
    out = []
    i = e
    while True:
        rest = e & ~i
        j = rest
        while True:
            out.append((i, j, rest & ~j))
            if j == 0:
                break
            j = (j - 1) & rest
        if i == 0:
            break
        i = (i - 1) & e
    return out


def numerator(f: PolyFunc) -> TriPoly:
    """f(x) + f(y) + f(z) + f(x+y+z) expanded."""
    terms: list[tuple[Key, int]] = []
    for e, c in f.terms.items():
        terms += [((e, 0, 0), c), ((0, e, 0), c), ((0, 0, e), c)]
        terms += [(k, c) for k in sum_power_terms(e)]
    return TriPoly(f.field, terms)


def divide_linear(P: TriPoly, var: int, other: int) -> TriPoly:
    """Exact quotient of P by (v + w), v = variable ``var``, w = variable ``other``.

    Synthetic division in v over the ring of polynomials in the remaining
    variables: with root v = w, q_{a-1} = p_a + w * q_a.
    """
    by_deg: dict[int, dict[Key, int]] = {}
    for k, c in P.terms.items():
        rest = list(k)
        a = rest[var]
        rest[var] = 0
        by_deg.setdefault(a, {})[tuple(rest)] = c

    def shift(poly: dict[Key, int]) -> dict[Key, int]:
        out = {}
        for k, c in poly.items():
            nk = list(k)
            nk[other] += 1
            out[tuple(nk)] = c
        return out

    def add(a: dict[Key, int], b: dict[Key, int]) -> dict[Key, int]:
        out = dict(a)
        for k, c in b.items():
            v = out.get(k, 0) ^ c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return out

    quotient: dict[Key, int] = {}
    carry: dict[Key, int] = {}
    top = max(by_deg, default=0)
    for a in range(top, 0, -1):
        cur = add(by_deg.get(a, {}), carry)
        for k, c in cur.items():
            nk = list(k)
            nk[var] = a - 1
            quotient[tuple(nk)] = c
        carry = shift(cur)
    remainder = add(by_deg.get(0, {}), carry)
    if remainder:
        raise InexactDivision(f"nonzero remainder dividing by variables {var}+{other}")
    return TriPoly(P.field, quotient)


def _quotient(N: TriPoly) -> TriPoly:
    Q = divide_linear(N, 0, 1)   # x + y
    Q = divide_linear(Q, 0, 2)   # x + z
    return divide_linear(Q, 1, 2)  # y + z


def pf_polynomial(f: PolyFunc) -> TriPoly:
    d = f.degree
    if d < 3 or is_power_of_two(d):
        raise ValueError(f"P_f needs deg(f) >= 3 and not a power of 2 (deg = {d})")
    return _quotient(numerator(f))


def homogeneous_pf(d: int) -> TriPoly:
    """P_{x^d} over F_2; homogeneous of degree d - 3."""
    if d < 3 or is_power_of_two(d):
        raise ValueError(f"homogeneous_pf needs d >= 3 and not a power of 2 (d = {d})")
    N = TriPoly(None, [((d, 0, 0), 1), ((0, d, 0), 1), ((0, 0, d), 1)]
                + [(k, 1) for k in sum_power_terms(d)])
    return _quotient(N)


def eval_tripoly(P: TriPoly, x: int, y: int, z: int, field: GF2m | None = None) -> int:
    F = field or P.field
    if F is None:
        raise ValueError("an F_2 polynomial needs a field to evaluate in")
    cache: dict[tuple[int, int], int] = {}

    def pw(v: int, val: int, e: int) -> int:
        key = (v, e)
        if key not in cache:
            cache[key] = F.pow(val, e)
        return cache[key]

    r = 0
    for (i, j, k), c in P.terms.items():
        t = F.mul(F.mul(pw(0, x, i), pw(1, y, j)), pw(2, z, k))
        r ^= t if c == 1 else F.mul(c, t)
    return r


def eval_tripoly_vec(P: TriPoly, xs, ys, zs, field: GF2m | None = None) -> np.ndarray:
    """Vectorized eval_tripoly over broadcastable uint64 arrays."""
    F = field or P.field
    if F is None:
        raise ValueError("an F_2 polynomial needs a field to evaluate in")
    xs, ys, zs = (np.asarray(a, dtype=np.uint64) for a in (xs, ys, zs))
    shape = np.broadcast_shapes(xs.shape, ys.shape, zs.shape)
    powers: dict[tuple[int, int], np.ndarray] = {}

    def pw(v: int, arr: np.ndarray, e: int) -> np.ndarray:
        if (v, e) not in powers:
            powers[(v, e)] = F.pow_vec(arr, e)
        return powers[(v, e)]

    out = np.zeros(shape, dtype=np.uint64)
    for (i, j, k), c in P.terms.items():
        t = F.mul_vec(F.mul_vec(pw(0, xs, i), pw(1, ys, j)), pw(2, zs, k))
        out ^= t if c == 1 else F.mul_vec(np.uint64(c), t)
    return out


def format_tripoly(P: TriPoly) -> str:
    """One ``coeff*x^i*y^j*z^k`` line per term, graded-lex order (highest first)."""
    lines = []
    for (i, j, k) in sorted(P.terms, key=lambda t: (sum(t), t), reverse=True):
        lines.append(f"{P.terms[(i, j, k)]:#x}*x^{i}*y^{j}*z^{k}")
    return "\n".join(lines)

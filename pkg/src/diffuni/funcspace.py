"""Polynomial functions F_q -> F_q held as sparse exponent -> coefficient maps."""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np

from .gf2m import GF2m

# interpolation cost is O(q^2) field operations
INTERPOLATE_MAX_M = 12


class DegenerateFunction(ValueError):
    """The function has no odd-degree term once q-affine terms are removed."""


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos = text, pos
        super().__init__(f"{msg} at position {pos}: {text!r}\n{' ' * (pos + 1)}^")


def reduce_exponent(e: int, q: int) -> int:
    """Exponent of the same function on F_q: x^q = x, so e >= q folds into [1, q-1]."""
    if e < 0:
        raise ValueError("negative exponent")
    if e < q:
        return e
    return (e - 1) % (q - 1) + 1


def is_power_of_two(e: int) -> bool:
    return e > 0 and e & (e - 1) == 0


class PolyFunc:
    """A polynomial function on ``field`` with nonzero coefficients and exponents < q."""

    def __init__(self, field: GF2m, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        self.field = field
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            field.check(c)
            e = reduce_exponent(e, field.q)
            acc[e] = acc.get(e, 0) ^ c
        self.terms = {e: c for e, c in sorted(acc.items()) if c}

    @classmethod
    def monomial(cls, field: GF2m, d: int, c: int = 1) -> PolyFunc:
        return cls(field, {d: c})

    @property
    def degree(self) -> int:
        """Largest exponent; -1 for the zero polynomial."""
        return max(self.terms, default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def monomial_degree(self) -> int | None:
        """d if this is c*x^d for a single term, else None."""
        if len(self.terms) == 1:
            return next(iter(self.terms))
        return None

    def evaluate(self, x: int) -> int:
        F = self.field
        r = 0
        for e, c in self.terms.items():
            r ^= F.mul(c, F.pow(x, e))
        return r

    __call__ = evaluate

    @cached_property
    def table(self) -> np.ndarray:
        """f(x) for every x in F_q, indexed by the bits of x."""
        F = self.field
        xs = F.elements()
        out = np.zeros(F.q, dtype=np.uint64)
        for e, c in self.terms.items():
            p = F.pow_vec(xs, e)
            out ^= p if c == 1 else F.mul_vec(np.uint64(c), p)
        out.setflags(write=False)
        return out

    def __add__(self, other: PolyFunc) -> PolyFunc:
        if other.field != self.field:
            raise ValueError("functions over different fields")
        return PolyFunc(self.field, list(self.terms.items()) + list(other.terms.items()))

    def __eq__(self, other):
        return isinstance(other, PolyFunc) and self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(self.terms.items())))

    def __str__(self):
        return format_function(self)

    def __repr__(self):
        return f"PolyFunc({self.field!r}, {format_function(self)!r})"


def is_normalized(f: PolyFunc) -> bool:
    return (
        bool(f.terms)
        and all(e != 0 and not is_power_of_two(e) for e in f.terms)
        and any(e % 2 for e in f.terms)
    )


def normalize(f: PolyFunc) -> PolyFunc:
    """Strip the constant and every x^(2^k) term; these do not affect delta.

    Raises DegenerateFunction when nothing of odd degree survives.
    """
    g = PolyFunc(f.field, {e: c for e, c in f.terms.items() if e != 0 and not is_power_of_two(e)})
    if not any(e % 2 for e in g.terms):
        raise DegenerateFunction(
            f"{f} has no odd-degree term after removing q-affine terms; "
            "delta is still defined but the normal form does not exist"
        )
    return g


def _binom_expand(field: GF2m, a: int, b: int, e: int) -> dict[int, int]:
    """(a*x + b)^e in characteristic 2: sum over bit-subsets i of e of a^i b^(e-i) x^i."""
    out = {}
    i = e
    while True:
        out[i] = field.mul(field.pow(a, i), field.pow(b, e - i))
        if i == 0:
            break
        i = (i - 1) & e
    return out


def affine_conjugate(f: PolyFunc, a: int, b: int, c: int) -> PolyFunc:
    """Polynomial of x -> c * f(a*x + b)."""
    F = f.field
    if a == 0 or c == 0:
        raise ValueError("affine_conjugate needs a != 0 and c != 0")
    terms = []
    for e, coef in f.terms.items():
        k = F.mul(c, coef)
        for i, v in _binom_expand(F, a, b, e).items():
            if v:
                terms.append((i, F.mul(k, v)))
    return PolyFunc(F, terms)


def square_function(f: PolyFunc) -> PolyFunc:
    """Polynomial of x -> f(x)^2 (Frobenius is additive, so termwise)."""
    F = f.field
    return PolyFunc(F, [(2 * e, F.mul(c, c)) for e, c in f.terms.items()])


def interpolate(field: GF2m, table) -> PolyFunc:
    """The unique polynomial of degree <= q-1 taking the given values.

    Coefficient k (k >= 1) is sum_a T[a] a^(q-1-k); the constant term is T[0].
    """
    q = field.q
    if len(table) != q:
        raise ValueError(f"table has {len(table)} entries, expected q = {q}")
    if field.m > INTERPOLATE_MAX_M:
        raise ValueError(f"interpolation is limited to m <= {INTERPOLATE_MAX_M}")
    T = np.array([field.check(int(v)) for v in table], dtype=np.uint64)
    xs = field.elements()
    terms = {0: int(T[0])}
    for k in range(1, q):
        prod = field.mul_vec(T, field.pow_vec(xs, q - 1 - k))
        terms[k] = int(np.bitwise_xor.reduce(prod))
    return PolyFunc(field, terms)


# -- text formats ------------------------------------------------------------

_TERM = re.compile(
    r"(?:(?P<coef>(?:0[xX])?[0-9a-fA-F]+)\s*\*\s*)?x(?:\s*\^\s*(?P<exp>\d+))?"
    r"|(?P<const>(?:0[xX])?[0-9a-fA-F]+)"
)


def parse_function(field: GF2m, text: str) -> PolyFunc:
    """Parse ``"x^d"`` or ``"0x3*x^7 + 0x1*x^5 + ..."``.

    Coefficients are hexadecimal, exponents decimal, whitespace is ignored.
    """
    terms = []
    pos = 0
    n = len(text)
    expect_term = True
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if expect_term:
            mt = _TERM.match(text, pos)
            if mt is None or mt.end() == pos:
                raise ParseError(text, pos, "expected a term like 0x3*x^7")
            if mt.group("const") is not None:
                e, cs = 0, mt.group("const")
            else:
                e = int(mt.group("exp")) if mt.group("exp") is not None else 1
                cs = mt.group("coef") or "1"
            c = int(cs, 16)
            if c >= field.q:
                raise ParseError(text, pos, f"coefficient {cs} is not in F_{field.q}")
            terms.append((e, c))
            pos = mt.end()
            expect_term = False
        else:
            if pos == n:
                break
            if text[pos] != "+":
                raise ParseError(text, pos, "expected '+' or end of input")
            pos += 1
            expect_term = True
    return PolyFunc(field, terms)


def format_function(f: PolyFunc) -> str:
    if not f.terms:
        return "0"
    parts = []
    for e, c in sorted(f.terms.items(), reverse=True):
        if e == 0:
            parts.append(f"{c:#x}")
        else:
            mono = "x" if e == 1 else f"x^{e}"
            parts.append(mono if c == 1 else f"{c:#x}*{mono}")
    return "+".join(parts)


def parse_table(field: GF2m, lines: Iterable[str]) -> list[int]:
    """One hexadecimal element per line; blank lines and ``#`` comments skipped."""
    out = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(field.check(int(line, 16)))
    return out


def random_normalized(field: GF2m, rng, max_degree: int, *, odd_leading: bool = False) -> PolyFunc:
    """Random normalized polynomial with exponents <= min(max_degree, q-1).

    Draws each allowed exponent with probability 1/2 and a random nonzero
    coefficient; ``odd_leading`` forces the top exponent to be odd.
    """
    top = min(max_degree, field.q - 1)
    allowed = [e for e in range(3, top + 1) if not is_power_of_two(e)]
    odd = [e for e in allowed if e % 2]
    while True:
        lead = odd[rng.below(len(odd))] if odd_leading else None
        terms = {}
        for e in allowed:
            if lead is not None and e > lead:
                break
            if e == lead or rng.below(2):
                terms[e] = rng.nonzero(field.q)
        f = PolyFunc(field, terms)
        if is_normalized(f):
            return f

"""Arithmetic in the binary field F_{2^m}.

Elements are plain Python ints in the polynomial basis (bit i is the
coefficient of x^i).  Scalar operations work on ints; the ``*_vec`` variants
work on numpy ``uint64`` arrays and are what the table-driven analyses use.
"""

from __future__ import annotations

import os
from functools import cached_property
from importlib import resources

import numpy as np

MIN_M = 2
MAX_M = 24
# log/antilog tables are built only up to this degree
TABLE_MAX_M = 16

MODULI_ENV = "DIFFUNI_MODULI"


class FieldError(ValueError):
    pass


# -- polynomials over F_2 packed into ints ---------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, b: int) -> int:
    db = b.bit_length()
    while a.bit_length() >= db:
        a ^= b << (a.bit_length() - db)
    return a


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def _mulmod(a: int, b: int, modulus: int) -> int:
    return poly_mod(clmul(a, b), modulus)


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def smallest_factor(f: int) -> int | None:
    """Smallest nontrivial divisor of ``f`` in F_2[x] by trial division, or None."""
    deg = f.bit_length() - 1
    for g in range(2, 1 << (deg // 2 + 1)):
        if poly_mod(f, g) == 0:
            return g
    return None


def is_irreducible(f: int) -> bool:
    """Rabin's test: x^(2^m) = x mod f and gcd(x^(2^(m/p)) - x, f) = 1 for primes p | m."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True

    def frob_x(k: int) -> int:
        # x^(2^k) mod f
        r = 2
        for _ in range(k):
            r = _mulmod(r, r, f)
        return r

    if frob_x(m) != poly_mod(2, f):
        return False
    for p in _prime_factors(m):
        if poly_gcd(f, frob_x(m // p) ^ 2) != 1:
            return False
    return True


def load_default_moduli(path: str | os.PathLike | None = None) -> dict[int, int]:
    """Read the ``m: hex`` modulus table (``#`` lines are comments)."""
    if path is None:
        path = os.environ.get(MODULI_ENV)
    if path is None:
        text = resources.files("diffuni").joinpath("moduli.txt").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    table = {}
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        m, hexval = line.split(":")
        table[int(m)] = int(hexval, 16)
    return table


def parse_modulus(s: str | int) -> int:
    if isinstance(s, int):
        return s
    return int(s, 16)


class GF2m:
    """The field F_{2^m} defined by an irreducible ``modulus`` of degree m.

    Instances are immutable; lookup tables are built lazily and cached.
    """

    def __init__(self, m: int, modulus: int | str | None = None):
        if not (MIN_M <= m <= MAX_M):
            raise FieldError(f"field degree m={m} outside supported range [{MIN_M}, {MAX_M}]")
        if modulus is None:
            modulus = load_default_moduli()[m]
        modulus = parse_modulus(modulus)
        if modulus.bit_length() - 1 != m:
            raise FieldError(f"modulus {modulus:#x} does not have degree {m}")
        if not modulus & 1:
            raise FieldError(f"modulus {modulus:#x} is divisible by x")
        if not is_irreducible(modulus):
            factor = smallest_factor(modulus)
            raise FieldError(f"modulus {modulus:#x} is reducible: divisible by {factor:#x}")
        self.m = m
        self.modulus = modulus
        self.q = 1 << m

    def __repr__(self):
        return f"GF2m(m={self.m}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def to_dict(self) -> dict:
        return {"m": self.m, "modulus": f"{self.modulus:#x}"}

    def check(self, a: int) -> int:
        if not (0 <= a < self.q):
            raise FieldError(f"{a!r} is not an element of F_{self.q}")
        return a

    # -- scalar ops --------------------------------------------------------

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if self.m <= TABLE_MAX_M:
            if a == 0 or b == 0:
                return 0
            log, exp = self._table_lists
            return exp[log[a] + log[b]]
        return _mulmod(a, b, self.modulus)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            raise FieldError("negative exponent")
        if e == 0:
            return 1
        if a == 0:
            return 0
        e %= self.q - 1
        if self.m <= TABLE_MAX_M:
            log, exp = self._table_lists
            return exp[(log[a] * e) % (self.q - 1)]
        r = 1
        while e:
            if e & 1:
                r = _mulmod(r, a, self.modulus)
            a = _mulmod(a, a, self.modulus)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse in F_q")
        return self.pow(a, self.q - 2)

    # -- tables ------------------------------------------------------------

    @cached_property
    def generator(self) -> int:
        """Smallest primitive element."""
        order = self.q - 1
        cofactors = [order // p for p in _prime_factors(order)]
        for g in range(2, self.q):
            if all(self._slow_pow(g, c) != 1 for c in cofactors):
                return g
        return 1  # q == 2 never happens (m >= 2)

    def _slow_pow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = _mulmod(r, a, self.modulus)
            a = _mulmod(a, a, self.modulus)
            e >>= 1
        return r

    @cached_property
    def _table_lists(self) -> tuple[list[int], list[int]]:
        if self.m > TABLE_MAX_M:
            raise FieldError(f"log tables not built for m > {TABLE_MAX_M}")
        order = self.q - 1
        g = self.generator
        exp = [0] * (2 * order)
        log = [0] * self.q
        x = 1
        for i in range(order):
            exp[i] = exp[i + order] = x
            log[x] = i
            x = _mulmod(x, g, self.modulus)
        return log, exp

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        log, exp = self._table_lists
        return np.array(log, dtype=np.int64), np.array(exp, dtype=np.int64)

    # -- vectorized ops ----------------------------------------------------

    def elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.uint64)

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        b = np.asarray(b, dtype=np.uint64)
        if self.m <= TABLE_MAX_M:
            log, exp = self._tables
            ai = a.astype(np.int64)
            bi = b.astype(np.int64)
            out = exp[log[ai] + log[bi]].astype(np.uint64)
            return np.where((ai == 0) | (bi == 0), np.uint64(0), out)
        return self._clmul_reduce(a, b)

    def _clmul_reduce(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        a, b = np.broadcast_arrays(a, b)
        one = np.uint64(1)
        acc = np.zeros(a.shape, dtype=np.uint64)
        for i in range(self.m):
            bit = (b >> np.uint64(i)) & one
            acc ^= (a << np.uint64(i)) * bit
        mod = np.uint64(self.modulus)
        for i in range(2 * self.m - 2, self.m - 1, -1):
            bit = (acc >> np.uint64(i)) & one
            acc ^= (mod << np.uint64(i - self.m)) * bit
        return acc

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.uint64)
        if e < 0:
            raise FieldError("negative exponent")
        if e == 0:
            return np.ones(a.shape, dtype=np.uint64)
        zero = a == 0
        e %= self.q - 1
        if e == 0:
            return np.where(zero, np.uint64(0), np.uint64(1))
        if self.m <= TABLE_MAX_M:
            log, exp = self._tables
            out = exp[(log[a.astype(np.int64)] * e) % (self.q - 1)].astype(np.uint64)
            return np.where(zero, np.uint64(0), out)
        result = np.ones(a.shape, dtype=np.uint64)
        base = a.copy()
        while e:
            if e & 1:
                result = self._clmul_reduce(result, base)
            e >>= 1
            if e:
                base = self._clmul_reduce(base, base)
        return result

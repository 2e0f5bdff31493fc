import pytest

from diffuni.gf2m import GF2m


@pytest.fixture(scope="session")
def fields():
    cache = {}

    def get(m, modulus=None):
        key = (m, modulus)
        if key not in cache:
            cache[key] = GF2m(m, modulus)
        return cache[key]

    return get


def naive_mul(a, b, modulus, m):
    """Schoolbook shift-and-reduce product, kept apart from the library code."""
    r = 0
    for i in range(m):
        if (b >> i) & 1:
            r ^= a << i
    for i in range(2 * m - 2, m - 1, -1):
        if (r >> i) & 1:
            r ^= modulus << (i - m)
    return r


def naive_pow(a, e, modulus, m):
    r = 1
    for _ in range(e):
        r = naive_mul(r, a, modulus, m)
    return r


def naive_ddt_max(values):
    """max over alpha != 0, beta of the DDT by a direct triple loop over a value list."""
    q = len(values)
    best = 0
    for alpha in range(1, q):
        counts = [0] * q
        for x in range(q):
            counts[values[x ^ alpha] ^ values[x]] += 1
        best = max(best, max(counts))
    return best

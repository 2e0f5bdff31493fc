"""Difference distribution tables and the differential uniformity delta(f).

delta(f) = max over alpha != 0 and beta of #{x : f(x + alpha) + f(x) = beta}.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .funcspace import PolyFunc
from .gf2m import GF2m
from .rng import SplitMix64

EXHAUSTIVE_MAX_M = 16
DDT_DUMP_MAX_M = 8
# rows per block in the exhaustive scan, sized to keep blocks near 2^22 cells
_BLOCK_CELLS = 1 << 22

MODES = ("exhaustive", "monomial-fast", "sampled")

THREADS_ENV = "DIFFUNI_THREADS"


def thread_count() -> int:
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def ordered_map(fn, items):
    """map() that runs on a thread pool when DIFFUNI_THREADS > 1; results stay in order."""
    n = thread_count()
    if n == 1:
        yield from map(fn, items)
        return
    with ThreadPoolExecutor(n) as pool:
        yield from pool.map(fn, items)


class FieldTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class DdtRow:
    alpha: int
    counts: np.ndarray  # counts[beta]

    def as_dict(self) -> dict[int, int]:
        nz = np.flatnonzero(self.counts)
        return {int(b): int(self.counts[b]) for b in nz}

    @property
    def max(self) -> int:
        return int(self.counts.max())


@dataclass
class DdtReport:
    delta: int
    witness: tuple[int, int]
    spectrum: dict[int, int]
    mode: str
    field: GF2m
    rows_examined: int = 0
    extra: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def exact(self) -> bool:
        return self.mode != "sampled"

    def to_dict(self) -> dict:
        d = {
            "delta": self.delta,
            "witness": {"alpha": self.witness[0], "beta": self.witness[1]},
            "spectrum": {str(k): v for k, v in sorted(self.spectrum.items())},
            "mode": self.mode,
            "exact": self.exact,
            "rows_examined": self.rows_examined,
            "field": self.field.to_dict(),
        }
        d.update(self.extra)
        return d


def _row_counts(table: np.ndarray, alpha: int) -> np.ndarray:
    q = len(table)
    xs = np.arange(q, dtype=np.uint64)
    diff = table[xs ^ np.uint64(alpha)] ^ table
    return np.bincount(diff.astype(np.int64), minlength=q)


def ddt_row(f: PolyFunc, alpha: int) -> DdtRow:
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    f.field.check(alpha)
    return DdtRow(alpha, _row_counts(f.table, alpha))


def _merge_spectrum(spec: dict[int, int], counts: np.ndarray) -> None:
    hist = np.bincount(counts.ravel())
    for v in np.flatnonzero(hist):
        spec[int(v)] = spec.get(int(v), 0) + int(hist[v])


def _block_rows(table: np.ndarray, alphas: np.ndarray) -> np.ndarray:
    q = len(table)
    xs = np.arange(q, dtype=np.uint64)
    diff = table[xs[None, :] ^ alphas[:, None]] ^ table[None, :]
    offs = (np.arange(len(alphas), dtype=np.int64) * q)[:, None]
    flat = np.bincount((diff.astype(np.int64) + offs).ravel(), minlength=len(alphas) * q)
    return flat.reshape(len(alphas), q)


def ddt_table(f: PolyFunc) -> np.ndarray:
    """Full q x q DDT (row alpha, column beta); only offered for small fields."""
    if f.field.m > DDT_DUMP_MAX_M:
        raise FieldTooLarge(f"full DDT dump is limited to m <= {DDT_DUMP_MAX_M}")
    return _block_rows(f.table, np.arange(f.field.q, dtype=np.uint64))


def delta_exhaustive(f: PolyFunc) -> DdtReport:
    F = f.field
    if F.m > EXHAUSTIVE_MAX_M:
        raise FieldTooLarge(
            f"exhaustive DDT needs m <= {EXHAUSTIVE_MAX_M} (got m={F.m}); use delta_sampled"
        )
    q = F.q
    table = f.table
    block = max(1, _BLOCK_CELLS // q)
    starts = range(1, q, block)

    def run(start):
        alphas = np.arange(start, min(q, start + block), dtype=np.uint64)
        return alphas, _block_rows(table, alphas)

    best, witness = -1, (0, 0)
    spectrum: dict[int, int] = {}
    for alphas, counts in ordered_map(run, starts):
        _merge_spectrum(spectrum, counts)
        mx = int(counts.max())
        if mx > best:
            i, b = divmod(int(np.argmax(counts)), q)
            best, witness = mx, (int(alphas[i]), b)
    return DdtReport(best, witness, spectrum, "exhaustive", F, rows_examined=q - 1)


def delta_monomial(d: int, F: GF2m) -> DdtReport:
    """Exact delta(x^d) from the single row alpha = 1.

    Substituting x = alpha*u turns row alpha into row 1 with beta scaled by
    alpha^d, so every row has the same multiset of counts.
    """
    if not 3 <= d <= F.q - 1:
        raise ValueError(f"delta_monomial needs 3 <= d <= q-1 (d={d}, q={F.q})")
    u = F.elements()
    vals = F.pow_vec(u ^ np.uint64(1), d) ^ F.pow_vec(u, d)
    counts = np.bincount(vals.astype(np.int64), minlength=F.q)
    spectrum: dict[int, int] = {}
    _merge_spectrum(spectrum, counts)
    beta = int(np.argmax(counts))
    return DdtReport(int(counts[beta]), (1, beta), spectrum, "monomial-fast", F,
                     rows_examined=1, extra={"d": d})


def sample_alphas(q: int, budget: int, seed: int) -> list[int]:
    """Distinct nonzero alphas drawn from SplitMix64(seed), in draw order.

    A budget of q-1 or more returns every nonzero alpha in increasing order.
    """
    if budget >= q - 1:
        return list(range(1, q))
    rng = SplitMix64(seed)
    seen: set[int] = set()
    out = []
    while len(out) < budget:
        a = rng.nonzero(q)
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out


def delta_sampled(f: PolyFunc, alpha_budget: int, seed: int, stop_at: int | None = None) -> DdtReport:
    """Lower bound on delta(f) from ``alpha_budget`` pseudo-random rows.

    With ``stop_at`` the scan ends at the first row whose maximum reaches it.
    """
    if alpha_budget < 1:
        raise ValueError("alpha_budget must be >= 1")
    F = f.field
    table = f.table
    best, witness = -1, (0, 0)
    spectrum: dict[int, int] = {}
    examined = 0
    for alpha in sample_alphas(F.q, alpha_budget, seed):
        counts = _row_counts(table, alpha)
        examined += 1
        _merge_spectrum(spectrum, counts)
        b = int(np.argmax(counts))
        mx = int(counts[b])
        if mx > best or (mx == best and (alpha, b) < witness):
            best, witness = mx, (alpha, b)
        if stop_at is not None and best >= stop_at:
            break
    return DdtReport(best, witness, spectrum, "sampled", F, rows_examined=examined,
                     extra={"alpha_budget": alpha_budget, "seed": seed})


def row_solutions(f: PolyFunc, alpha: int, beta: int) -> list[int]:
    """All x with f(x + alpha) + f(x) = beta, by direct scalar evaluation."""
    return [x for x in range(f.field.q) if f.evaluate(x ^ alpha) ^ f.evaluate(x) == beta]


def delta(f: PolyFunc, *, alpha_budget: int = 10_000, seed: int = 0) -> DdtReport:
    """Pick the cheapest exact method, falling back to sampling on big fields."""
    F = f.field
    d = f.monomial_degree()
    if d is not None and 3 <= d <= F.q - 1:
        return delta_monomial(d, F)
    if F.m <= EXHAUSTIVE_MAX_M:
        return delta_exhaustive(f)
    return delta_sampled(f, alpha_budget, seed)

"""Rational points of the varieties attached to f.

Affine side: V is the union of the seven hyperplanes x+y, x+z, x+t, y+z, y+t,
z+t, x+y+z+t = 0 in 4-space, and X = {P_f(x,y,z) = P_f(x,y,t) = 0}.
delta(f) <= 4 exactly when every F_q-point of X lies on V.

Projective side (f = x^d): the plane curve C : P_{x^d}(x,y,z) = 0 and the
cones S1 : P(x,y,z) = 0, S2 : P(x,y,t) = 0 in P^3.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .funcspace import PolyFunc, is_power_of_two
from .gf2m import GF2m
from .mvpoly import eval_tripoly, eval_tripoly_vec, homogeneous_pf, pf_polynomial
from .uniformity import FieldTooLarge, delta_exhaustive, ordered_map, thread_count

CONTAINMENT_MAX_M = 10
EQUIVALENCE_MAX_M = 8
X_COUNT_MAX_M = 7
CURVE_MAX_M = 12
STRUCTURAL_MAX_M = 10


def _require(F: GF2m, limit: int, what: str) -> None:
    if F.m > limit:
        raise FieldTooLarge(f"{what} is limited to m <= {limit} (got m={F.m})")


def in_V(p: tuple[int, int, int, int]) -> bool:
    x, y, z, t = p
    return (
        x == y or x == z or x == t or y == z or y == t or z == t
        or (x ^ y ^ z ^ t) == 0
    )


def normalize_projective(p: tuple[int, ...], F: GF2m) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    for c in p:
        if c:
            if c == 1:
                return tuple(p)
            inv = F.inv(c)
            return tuple(F.mul(v, inv) for v in p)
    raise ValueError("the zero vector is not a projective point")


@dataclass
class GeometryReport:
    contained: bool
    violation: tuple[int, int, int, int] | None
    points_scanned: int
    field: GF2m
    x_point_count: int | None = None

    def to_dict(self) -> dict:
        return {
            "contained": self.contained,
            "violation": list(self.violation) if self.violation else None,
            "points_scanned": self.points_scanned,
            "x_point_count": self.x_point_count,
            "field": self.field.to_dict(),
        }


def contained_in_V(f: PolyFunc) -> GeometryReport:
    """Decide X(F_q) within V; report the lexicographically smallest point off V.

    Off V all the factors (x+y), (x+z), (y+z), (x+t), (y+t) are nonzero, so
    there P_f vanishes exactly where the numerator does and the scan never
    needs the quotient polynomial.  For each prefix (x, y) with x != y the
    numerator roots Z in z (minus the trivial z = x, z = y) are collected;
    a violation is any z, t in Z with t not in {z, x+y+z}.
    """
    F = f.field
    _require(F, CONTAINMENT_MAX_M, "containment scan")
    q = F.q
    T = f.table
    e = F.elements()
    ei = e.astype(np.int64)

    def scan(x: int):
        # N[y, z] = f(x) + f(y) + f(z) + f(x+y+z)
        N = T[x] ^ T[:, None] ^ T[None, :] ^ T[(np.uint64(x) ^ e[:, None]) ^ e[None, :]]
        roots = N == 0
        roots[:, x] = False
        roots[ei, ei] = False
        roots[x, :] = False  # x == y lies on V
        counts = roots.sum(axis=1)
        for y in np.flatnonzero(counts >= 2):
            y = int(y)
            zs = [int(z) for z in np.flatnonzero(roots[y])]
            for z in zs:
                partner = x ^ y ^ z
                for t in zs:
                    if t != z and t != partner:
                        return (x, y, z, t)
        return None

    chunk = 4 * thread_count()
    for start in range(0, q, chunk):
        xs = range(start, min(q, start + chunk))
        for x, point in zip(xs, ordered_map(scan, xs)):
            if point is not None:
                assert not in_V(point)
                return GeometryReport(False, point, (x + 1) * q * q, F)
    return GeometryReport(True, None, q ** 3, F)


def x_point_count(f: PolyFunc) -> int:
    """#X(F_q) including points on V, from the true quotient P_f.

    With n(x, y) = #{z : P_f(x, y, z) = 0}, the count is sum of n(x, y)^2
    because z and t range independently over the same root set.
    """
    F = f.field
    _require(F, X_COUNT_MAX_M, "exact point count of X")
    P = pf_polynomial(f)
    e = F.elements()
    vals = eval_tripoly_vec(P, e[:, None, None], e[None, :, None], e[None, None, :], F)
    n = (vals == 0).sum(axis=2).astype(np.int64)
    return int((n * n).sum())


def six_point_witness(f: PolyFunc) -> tuple[int, int, list[int]] | None:
    """Search for 6 distinct x0..x5 pairing up as x_{2i} + x_{2i+1} = alpha with a
    common difference beta, by grouping x per row with scalar arithmetic.

    Returns (alpha, beta, [x0, ..., x5]) for the first row that has one.
    """
    F = f.field
    vals = [f.evaluate(x) for x in range(F.q)]
    for alpha in range(1, F.q):
        groups: dict[int, list[int]] = {}
        for x in range(F.q):
            groups.setdefault(vals[x] ^ vals[x ^ alpha], []).append(x)
        for beta in sorted(groups):
            g = groups[beta]
            if len(g) < 6:
                continue
            xs: list[int] = []
            for x in g:
                if x not in xs:
                    xs += [x, x ^ alpha]
                if len(xs) == 6:
                    break
            return alpha, beta, xs
    return None


def equivalence_verdicts(f: PolyFunc) -> dict[str, bool]:
    """delta <= 4 by three independent routes."""
    _require(f.field, EQUIVALENCE_MAX_M, "equivalence check")
    return {
        "ddt": delta_exhaustive(f).delta <= 4,
        "containment": contained_in_V(f).contained,
        "lemma_search": six_point_witness(f) is None,
    }


def equivalence_check(f: PolyFunc) -> bool:
    v = equivalence_verdicts(f)
    return len(set(v.values())) == 1


# -- projective side ---------------------------------------------------------

def projective_plane(F: GF2m) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All points of P^2(F_q) as normalized (x, y, z) arrays: (1:y:z), (0:1:z), (0:0:1)."""
    q = F.q
    e = F.elements()
    xs = np.concatenate([np.ones(q * q, np.uint64), np.zeros(q + 1, np.uint64)])
    ys = np.concatenate([np.repeat(e, q), np.ones(q, np.uint64), np.zeros(1, np.uint64)])
    zs = np.concatenate([np.tile(e, q), e, np.ones(1, np.uint64)])
    return xs, ys, zs


def proj_curve_points(d: int, F: GF2m) -> int:
    """#C(F_q) for C : P_{x^d}(x, y, z) = 0 in P^2, chart by chart.

    On the chart x = 1 the numerator 1 + y^d + z^d + (1+y+z)^d stands in for
    P off the lines y = 1, z = 1, y = z; those lines, and the charts (0:1:z)
    and (0:0:1), are evaluated with P itself.
    """
    if d < 3 or is_power_of_two(d):
        raise ValueError(f"curve needs d >= 3 and not a power of 2 (d = {d})")
    _require(F, CURVE_MAX_M, "projective point count")
    q = F.q
    P = homogeneous_pf(d)
    e = F.elements()
    pw = F.pow_vec(e, d)
    one = np.uint64(1)

    count = 0
    block = max(1, (1 << 22) // q)
    for y0 in range(0, q, block):
        ys = e[y0:y0 + block, None]
        N = one ^ pw[ys] ^ pw[None, :] ^ pw[ys ^ one ^ e[None, :]]
        generic = (ys != one) & (e[None, :] != one) & (ys != e[None, :])
        count += int(((N == 0) & generic).sum())

    # chart x = 1 on the exceptional lines; (1:1:1) lies on all three
    line_pts = {(1, 1, z) for z in range(q)} | {(1, y, 1) for y in range(q)} | {(1, y, y) for y in range(q)}
    lx, ly, lz = (np.array(c, dtype=np.uint64) for c in zip(*sorted(line_pts)))
    count += int((eval_tripoly_vec(P, lx, ly, lz, F) == 0).sum())

    count += int((eval_tripoly_vec(P, np.uint64(0), one, e, F) == 0).sum())
    count += int(eval_tripoly(P, 0, 0, 1, F) == 0)
    return count


@dataclass
class StructuralReport:
    vertex: bool
    intercurve: bool
    projection: bool
    component_plane: bool

    def all(self) -> bool:
        return self.vertex and self.intercurve and self.projection and self.component_plane

    def to_dict(self) -> dict:
        return {
            "vertex": self.vertex,
            "intercurve": self.intercurve,
            "projection": self.projection,
            "component_plane": self.component_plane,
        }


def structural_checks(d: int, F: GF2m) -> StructuralReport:
    """Pointwise checks over F_q of the cone/curve statements for f = x^d.

    vertex: P(0,0,1) = 1, so the vertex (0:0:1:0) of S2 is off S1.
    intercurve: F_q-points of S2 on the plane x+y+z+t = 0 lie on S1.
    projection: (x:y:z:t) -> (x:y:z) maps C7(F_q) injectively onto C(F_q).
    component_plane: on the plane x+z+t = 0, S1 and S2 have the same F_q-points.
    """
    if d < 3 or is_power_of_two(d):
        raise ValueError(f"structural checks need d >= 3 and not a power of 2 (d = {d})")
    _require(F, STRUCTURAL_MAX_M, "structural checks")
    P = homogeneous_pf(d)
    vertex = eval_tripoly(P, 0, 0, 1, F) == 1

    xs, ys, zs = projective_plane(F)
    on_C = eval_tripoly_vec(P, xs, ys, zs, F) == 0

    # plane x+y+z+t = 0: t = x+y+z, points parametrized by (x:y:z)
    ts = xs ^ ys ^ zs
    on_S2 = eval_tripoly_vec(P, xs, ys, ts, F) == 0
    intercurve = bool(np.all(on_C[on_S2]))

    # C7 points as normalized 4-tuples, then their projections
    c7 = [normalize_projective((int(a), int(b), int(c), int(t)), F)
          for a, b, c, t in zip(xs[on_S2], ys[on_S2], zs[on_S2], ts[on_S2])]
    images = {normalize_projective(p[:3], F) for p in c7}
    curve = set(zip(xs[on_C].tolist(), ys[on_C].tolist(), zs[on_C].tolist()))
    projection = len(images) == len(set(c7)) and images == curve

    # plane x+z+t = 0: t = x+z
    on_S2_plane = eval_tripoly_vec(P, xs, ys, xs ^ zs, F) == 0
    component_plane = bool(np.array_equal(on_C, on_S2_plane))

    return StructuralReport(vertex, intercurve, projection, component_plane)

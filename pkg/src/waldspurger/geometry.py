"""Exact geometry of the cone decomposition and the finite tile.

Regions are generated by the columns of a transform matrix: cones allow any
nonnegative coefficients, tile simplices additionally cap the coefficient
sum at one, faces pin it to one.  Membership is decided exactly over the
rationals; openness means strictly positive coefficients (and a strict cap).
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import linalg
from .core import CounterexampleError, InputError, Permutation, cartan_data
from .transform import height, wt_general, wt_perm
from .um_vectors import enumerate_um


CONE, SIMPLEX, FACE = "cone", "simplex", "face"


@dataclass(frozen=True)
class GeneratedRegion:
    generators: tuple  # column vectors
    mode: str = CONE
    open_mode: bool = False

    @classmethod
    def from_matrix(cls, w, mode=CONE, open_mode=False):
        return cls(generators=tuple(zip(*w)), mode=mode, open_mode=open_mode)


def _simplex_max(a_rows, b, c):
    """Maximize c·x subject to A x = b, x >= 0, exactly.

    Bland's rule throughout, artificial phase one.  Returns a pair
    (status, value) with status in {"infeasible", "optimal", "unbounded"}.
    """
    m = len(a_rows)
    n = len(a_rows[0]) if m else 0
    rows = []
    rhs = []
    for i in range(m):
        row = [Fraction(x) for x in a_rows[i]]
        r = Fraction(b[i])
        if r < 0:
            row = [-x for x in row]
            r = -r
        rows.append(row)
        rhs.append(r)
    # tableau with artificial basis
    total = n + m
    table = [rows[i] + [Fraction(1) if j == i else Fraction(0) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]

    def pivot(r, c):
        pv = table[r][c]
        table[r] = [x / pv for x in table[r]]
        for i in range(len(table)):
            if i != r and table[i][c] != 0:
                f = table[i][c]
                table[i] = [x - f * y for x, y in zip(table[i], table[r])]
        basis[r] = c

    def run(obj, allowed, width):
        # maximize obj over the current tableau with Bland's rule
        while True:
            reduced = list(obj)
            for i, bi in enumerate(basis):
                coef = obj[bi]
                if coef:
                    for j in range(width):
                        reduced[j] -= coef * table[i][j]
            enter = next((j for j in allowed if reduced[j] > 0), None)
            if enter is None:
                return "optimal", sum(
                    obj[bi] * table[i][width] for i, bi in enumerate(basis)
                )
            ratios = [
                (table[i][width] / table[i][enter], basis[i], i)
                for i in range(len(table))
                if table[i][enter] > 0
            ]
            if not ratios:
                return "unbounded", None
            _, _, r = min(ratios)
            pivot(r, enter)

    art_obj = [Fraction(0)] * n + [Fraction(-1)] * m
    status, value = run(art_obj, range(total), total)
    if value != 0:
        return "infeasible", None
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if table[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    # remaining artificial-basic rows are redundant zero rows: drop them,
    # then drop the artificial columns
    keep = [i for i in range(m) if basis[i] < n]
    table = [table[i][:n] + [table[i][total]] for i in keep]
    basis = [basis[i] for i in keep]
    obj = [Fraction(x) for x in c]
    status, value = run(obj, range(n), n)
    return status, value


def region_membership(region, point):
    """Exact membership of a rational point in a generated region."""
    gens = [tuple(Fraction(x) for x in g) for g in region.generators]
    p = tuple(Fraction(x) for x in point)
    if any(len(g) != len(p) for g in gens):
        raise InputError("dimension mismatch")
    d = len(p)
    k = len(gens)
    cap = region.mode in (SIMPLEX, FACE)
    nvars = k + (1 if region.mode == SIMPLEX else 0)
    rows = [[gens[j][i] for j in range(k)] + ([0] if region.mode == SIMPLEX else []) for i in range(d)]
    b = list(p)
    if cap:
        rows.append([1] * k + ([1] if region.mode == SIMPLEX else []))
        b.append(1)

    def feasible():
        status, _ = _simplex_max(rows, b, [0] * nvars)
        return status != "infeasible"

    def sup_positive(idx):
        status, value = _simplex_max(rows, b, [1 if j == idx else 0 for j in range(nvars)])
        return status == "unbounded" or (status == "optimal" and value > 0)

    if region.mode in (CONE, SIMPLEX) and k == d:
        # invertible generators pin the coefficients down uniquely
        sqm = [[gens[j][i] for j in range(k)] for i in range(d)]
        if linalg.det(sqm) != 0:
            sol = linalg.solve_right(sqm, [[x] for x in b[:d]])
            vals = [Fraction(sol[i][0]) for i in range(k)]
            low_ok = all(v > 0 for v in vals) if region.open_mode else all(v >= 0 for v in vals)
            if region.mode == CONE:
                return low_ok
            total = sum(vals)
            cap_ok = total < 1 if region.open_mode else total <= 1
            return low_ok and cap_ok
    if not feasible():
        return False
    if not region.open_mode:
        return True
    strict = list(range(k)) + ([k] if region.mode == SIMPLEX else [])
    return all(sup_positive(i) for i in strict)


def cone_of(p):
    return GeneratedRegion.from_matrix(wt_perm(p), CONE)


def simplex_of(p):
    return GeneratedRegion.from_matrix(wt_perm(p), SIMPLEX)


def in_root_cone(point):
    return all(Fraction(x) >= 0 for x in point)


def classify_cone_point(point, n):
    """The unique permutation whose open cone contains the point.

    Existence and uniqueness are the decomposition claim; violations raise
    a counterexample error carrying the witnesses.
    """
    if not in_root_cone(point):
        raise InputError("point is outside the closed positive root cone")
    hits = []
    for p in Permutation.all(n):
        region = GeneratedRegion.from_matrix(wt_perm(p), CONE, open_mode=True)
        if region_membership(region, point):
            hits.append(p)
    if len(hits) != 1:
        raise CounterexampleError(
            f"open cone membership count is {len(hits)}, not 1",
            {
                "point": [linalg.frac_str(x) for x in point],
                "n": n,
                "hits": [h.one_line() for h in hits],
            },
        )
    return hits[0]


def classify_tile_point(point, n):
    """Open-simplex classification, with a closed-hit report on boundaries.

    Returns (permutation, closed_hits): the permutation is None when no
    open simplex contains the point, and closed_hits then lists every
    permutation whose closed simplex does.
    """
    open_hits = []
    closed_hits = []
    for p in Permutation.all(n):
        w = wt_perm(p)
        if region_membership(GeneratedRegion.from_matrix(w, SIMPLEX, open_mode=True), point):
            open_hits.append(p)
        if region_membership(GeneratedRegion.from_matrix(w, SIMPLEX), point):
            closed_hits.append(p)
    if len(open_hits) > 1:
        raise CounterexampleError(
            "open simplices overlap",
            {"point": [linalg.frac_str(x) for x in point], "hits": [h.one_line() for h in open_hits]},
        )
    if open_hits:
        return open_hits[0], []
    return None, closed_hits


def volume_sum_check(n):
    """Sum of |det| over all transforms equals (n-1)!."""
    if not 2 <= n <= 6:
        raise InputError("supported for 2 <= n <= 6")
    total = sum(abs(linalg.det(wt_perm(p))) for p in Permutation.all(n))
    return total == factorial(n - 1), total


def wt_rank(p):
    return linalg.rank(wt_perm(p))


def reflect_theta(v):
    """Reflection through the hyperplane orthogonal to the highest root at
    height one: v - (v_1 + v_m)·theta + theta."""
    v = tuple(v)
    s = v[0] + v[-1]
    return tuple(x - s + 1 for x in v)


def _swap_first_last_values(p):
    n = p.n
    repl = {1: n, n: 1}
    return Permutation(repl.get(v, v) for v in p.window)


def _swap_first_last_positions(p):
    w = list(p.window)
    w[0], w[-1] = w[-1], w[0]
    return Permutation(w)


def check_R_involution(n):
    """Exhaustive reflection and gluing checks for the symmetric group.

    Reflecting every column of WT(p) gives the columns of the transform of
    p with first and last positions swapped; adding/subtracting theta to
    rows by their end-sum gives the transform of p with the values 1 and n
    relabelled.  Both are verified for all p, along with involutivity.
    """
    report = {"n": n, "columns_checked": 0, "rows_checked": 0, "violations": []}
    for v in enumerate_um(n - 1):
        if reflect_theta(reflect_theta(v)) != tuple(v):
            report["violations"].append({"kind": "involution", "vector": list(v)})
    for p in Permutation.all(n):
        w = wt_perm(p)
        cols = sorted(zip(*w))
        reflected = sorted(reflect_theta(c) for c in zip(*w))
        expected_cols = sorted(zip(*wt_perm(_swap_first_last_positions(p))))
        if reflected != expected_cols:
            report["violations"].append({"kind": "column", "perm": p.one_line()})
        report["columns_checked"] += 1
        new_rows = []
        for row in w:
            s = row[0] + row[-1]
            if s == 0:
                new_rows.append(tuple(x + 1 for x in row))
            elif s == 2:
                new_rows.append(tuple(x - 1 for x in row))
            else:
                new_rows.append(tuple(row))
        expected = wt_perm(_swap_first_last_values(p))
        if tuple(new_rows) != expected:
            report["violations"].append({"kind": "row", "perm": p.one_line()})
        report["rows_checked"] += 1
    report["ok"] = not report["violations"]
    return report


def barycenter(w):
    """Center of mass of the simplex spanned by the matrix, in root
    coordinates: the column-sum vector divided by the number of rows."""
    m = len(w)
    sums = [sum(w[i][j] for i in range(m)) for j in range(m)]
    return tuple(Fraction(s, m) for s in sums)


def rho_pairing_value(point, n):
    """Pairing against the rho direction; proportional to the entry sum."""
    rsd = cartan_data("A", n - 1)
    cv = linalg.mat_vec(rsd.cartan, rsd.rho_pairing)
    return sum(Fraction(x) * c for x, c in zip(point, cv))


def census_permutohedron(n):
    """Barycenter multiplicity table over all ASMs of size n."""
    from .asm_lattice import enumerate_asm, flatten_matrix

    table = {}
    for idx, a in enumerate(enumerate_asm(n)):
        w = wt_general(a)
        b = barycenter(w)
        table.setdefault(b, []).append({"id": idx, "matrix": flatten_matrix(w), "height": height(w)})
    points = sorted(table.items())
    return {
        "n": n,
        "asm_count": sum(len(v) for v in table.values()),
        "distinct_points": len(table),
        "multiplicities": sorted(
            (len(v) for v in table.values()), reverse=True
        ),
        "points": [
            {
                "coords": [linalg.frac_str(x) for x in b],
                "multiplicity": len(entries),
                "asm_ids": [e["id"] for e in entries],
                "matrices": [e["matrix"] for e in entries],
            }
            for b, entries in points
        ],
    }


def census_csv(census):
    lines = ["coords,multiplicity,asm_ids"]
    for row in census["points"]:
        coords = ";".join(row["coords"])
        ids = ";".join(str(i) for i in row["asm_ids"])
        lines.append(f"{coords},{row['multiplicity']},{ids}")
    return "\n".join(lines) + "\n"


def sample_cone_points(n, count, seed, max_den=8, max_num=6):
    """Seeded rational points with bounded denominators in the root cone."""
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        coords = []
        for _ in range(n - 1):
            den = rng.randint(1, max_den)
            num = rng.randint(0, max_num * den)
            coords.append(Fraction(num, den))
        pts.append(tuple(coords))
    return pts


def sample_tile_points(n, count, seed, max_den=8):
    """Seeded rational points in a box around the tile."""
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        coords = []
        for _ in range(n - 1):
            den = rng.randint(1, max_den)
            num = rng.randint(-den, 2 * den)
            coords.append(Fraction(num, den))
        pts.append(tuple(coords))
    return pts

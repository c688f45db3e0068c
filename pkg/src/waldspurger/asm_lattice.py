"""Monotone triangles, the alternating-sign-matrix lattice, and completions."""

from functools import lru_cache

from .core import CounterexampleError, InputError, Permutation, bruhat_leq
from .linalg import mat
from .transform import (
    ImageError,
    height,
    validate_asm,
    validate_waldspurger_image,
    wt_general,
    wt_inverse_asm,
)
from .um_vectors import is_um_at


class PeelError(ValueError):
    """Requested part count is infeasible; carries the feasible ones."""

    def __init__(self, feasible):
        super().__init__(f"infeasible part count; feasible counts are {sorted(feasible)}")
        self.feasible = tuple(sorted(feasible))


def validate_mt(t):
    """Monotone triangle axioms, reporting the first violation."""
    n = len(t)
    for k, row in enumerate(t, start=1):
        if len(row) != k:
            raise ImageError(f"row {k} does not have {k} entries")
        if any(not (1 <= x <= n) for x in row):
            raise ImageError(f"row {k} has an entry outside 1..{n}")
        if any(a >= b for a, b in zip(row, row[1:])):
            raise ImageError(f"row {k} is not strictly increasing")
    for k in range(n - 1):
        upper, lower = t[k], t[k + 1]
        for i, x in enumerate(upper):
            if not (lower[i] <= x <= lower[i + 1]):
                raise ImageError(
                    f"rows {k + 1} and {k + 2} do not interlace at position {i + 1}"
                )
    if tuple(t[-1]) != tuple(range(1, n + 1)):
        raise ImageError("bottom row is not 1..n")


def asm_to_mt(m):
    """Rows record positions of ones in the partial row sums."""
    validate_asm(m)
    n = len(m)
    rows = []
    acc = [0] * n
    for k in range(n):
        acc = [a + x for a, x in zip(acc, m[k])]
        if any(x not in (0, 1) for x in acc):
            raise ImageError(f"partial sums after row {k + 1} are not 0/1")
        rows.append(tuple(j + 1 for j, x in enumerate(acc) if x == 1))
    t = tuple(rows)
    validate_mt(t)
    return t


def mt_to_asm(t):
    validate_mt(t)
    n = len(t)
    out = []
    prev = [0] * n
    for k in range(n):
        cur = [0] * n
        for j in t[k]:
            cur[j - 1] = 1
        out.append(tuple(c - p for c, p in zip(cur, prev)))
        prev = cur
    m = tuple(out)
    validate_asm(m)
    return m


def reduce_mt(t):
    """Subtract the identity triangle entrywise."""
    return tuple(tuple(x - (j + 1) for j, x in enumerate(row)) for row in t)


def unreduce_mt(r):
    return tuple(tuple(x + (j + 1) for j, x in enumerate(row)) for row in r)


def paint(reduced):
    """Brush-stroke a reduced triangle into a Waldspurger matrix.

    Load r at triangle position (i,j) paints ones onto matrix cells
    (i,j)..(i,j+r-1).  A trailing all-zero bottom row is accepted and
    dropped.
    """
    rows = [tuple(r) for r in reduced]
    if rows and len(rows[-1]) == len(rows) and all(x == 0 for x in rows[-1]):
        rows = rows[:-1]
    m = len(rows)
    grid = [[0] * m for _ in range(m)]
    for i, row in enumerate(rows, start=1):
        if len(row) != i:
            raise ImageError(f"row {i} does not have {i} entries")
        for j, load in enumerate(row, start=1):
            if load < 0:
                raise ImageError(f"negative load at ({i},{j})")
            if j + load - 1 > m:
                raise ImageError(f"load at ({i},{j}) paints past column {m}")
            for col in range(j, j + load):
                grid[i - 1][col - 1] += 1
    return mat(grid)


def paint_row(loads, m):
    """Paint one triangle row of loads into a vector of length m."""
    v = [0] * m
    for j, load in enumerate(loads, start=1):
        if j + load - 1 > m:
            raise ImageError(f"load {load} at position {j} paints past {m}")
        for col in range(j, j + load):
            v[col - 1] += 1
    return tuple(v)


def feasible_peel_counts(v):
    return tuple(k for k in range(1, len(v) + 1) if is_um_at(v, k))


def peel(v, parts):
    """Invert painting for one row: the unique loads reproducing v.

    Load j covers columns [j, j+load-1]; interval ends are recovered from
    prefix deficiencies (v_p < p) before the diagonal and unit falls after
    it.
    """
    v = tuple(v)
    m = len(v)
    k = parts
    if not (1 <= k <= m) or not is_um_at(v, k):
        raise PeelError(feasible_peel_counts(v))
    ends = []
    c_prev = 0
    for p in range(1, k + 1):
        c = p - v[p - 1]
        if c - c_prev == 1:
            ends.append(p)
        elif c - c_prev != 0:
            raise PeelError(feasible_peel_counts(v))
        c_prev = c
    ext = v + (0,)
    for p in range(k, m + 1):
        drop = ext[p - 1] - ext[p]
        if drop == 1:
            ends.append(p + 1)
        elif drop != 0:
            raise PeelError(feasible_peel_counts(v))
    ends.sort()
    if len(ends) != k:
        raise PeelError(feasible_peel_counts(v))
    loads = tuple(e - j for j, e in enumerate(ends, start=1))
    if paint_row(loads, m) != v:
        raise CounterexampleError("peel failed to invert painting", {"v": v, "k": k})
    return loads


def _interlacings(row, n):
    """Strictly increasing rows one longer that interlace the given row."""
    k = len(row)
    out = []

    def grow(prefix, idx, minimum):
        if idx == k + 1:
            out.append(tuple(prefix))
            return
        hi = row[idx] if idx < k else n
        lo = minimum if idx == 0 else max(minimum, row[idx - 1])
        for x in range(lo, hi + 1):
            grow(prefix + [x], idx + 1, x + 1)

    grow([], 0, 1)
    return out


@lru_cache(maxsize=None)
def enumerate_mt(n):
    """All monotone triangles of size n, by interlacing transfer."""
    if n < 1:
        raise InputError("n must be >= 1")
    triangles = []

    def build(prefix):
        if len(prefix) == n:
            triangles.append(tuple(prefix))
            return
        for lower in _interlacings(prefix[-1], n):
            prefix.append(lower)
            build(prefix)
            prefix.pop()

    for top in range(1, n + 1):
        build([(top,)])
    return tuple(triangles)


@lru_cache(maxsize=None)
def enumerate_asm(n):
    return tuple(mt_to_asm(t) for t in enumerate_mt(n))


def mat_leq(a, b):
    return all(x <= y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def mat_max(a, b):
    return tuple(tuple(max(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_min(a, b):
    return tuple(tuple(min(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


class FinitePoset:
    """Explicit finite poset over arbitrary hashable elements.

    ``down[i]`` is a bitmask of the indices j with elements[j] <= elements[i];
    the masks are built lazily from the comparison function.
    """

    def __init__(self, elements, leq):
        self.elements = list(elements)
        self._leq = leq
        self._down = None
        self._up = None

    def __len__(self):
        return len(self.elements)

    @property
    def down(self):
        if self._down is None:
            els = self.elements
            n = len(els)
            self._down = [0] * n
            for i, x in enumerate(els):
                m = 0
                for j, y in enumerate(els):
                    if self._leq(y, x):
                        m |= 1 << j
                self._down[i] = m
        return self._down

    @property
    def up(self):
        if self._up is None:
            n = len(self.elements)
            up = [0] * n
            for j, mask in enumerate(self.down):
                m = mask
                while m:
                    low = m & -m
                    up[low.bit_length() - 1] |= 1 << j
                    m ^= low
            self._up = up
        return self._up

    def leq(self, i, j):
        return bool(self.down[j] >> i & 1)

    def covers(self):
        """All cover pairs (i, j) with j covering i."""
        out = []
        for j, mask in enumerate(self.down):
            strictly_below = mask & ~(1 << j)
            m = strictly_below
            while m:
                low = m & -m
                i = low.bit_length() - 1
                if strictly_below & self.up[i] & ~(1 << i) == 0:
                    out.append((i, j))
                m ^= low
        return out

    def is_partial_order(self):
        n = len(self.elements)
        for i in range(n):
            if not self.leq(i, i):
                return False
            for j in range(n):
                if i != j and self.leq(i, j):
                    if self.leq(j, i):
                        return False
                    if self.down[i] & ~self.down[j]:
                        return False
        return True

    def join(self, i, j):
        """Index of the least upper bound, or None."""
        common = self.up[i] & self.up[j]
        m = common
        while m:
            low = m & -m
            z = low.bit_length() - 1
            if common & ~self.up[z] == 0:
                return z
            m ^= low
        return None

    def meet(self, i, j):
        common = self.down[i] & self.down[j]
        m = common
        while m:
            low = m & -m
            z = low.bit_length() - 1
            if common & ~self.down[z] == 0:
                return z
            m ^= low
        return None

    def is_lattice(self):
        n = len(self.elements)
        return all(
            self.join(i, j) is not None and self.meet(i, j) is not None
            for i in range(n)
            for j in range(i + 1, n)
        )

    def join_irreducible_indices(self):
        """Elements with exactly one lower cover."""
        lower = {i: 0 for i in range(len(self.elements))}
        for i, j in self.covers():
            lower[j] += 1
        return [j for j, c in lower.items() if c == 1]

    def to_dot(self, label=str):
        lines = ["digraph hasse {", "  rankdir=BT;"]
        for i, x in enumerate(self.elements):
            lines.append(f'  n{i} [label="{label(x)}"];')
        for i, j in sorted(self.covers()):
            lines.append(f"  n{i} -> n{j};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self, label=str):
        return {
            "elements": [label(x) for x in self.elements],
            "covers": sorted(self.covers()),
        }


def flatten_matrix(w):
    return "|".join(",".join(str(x) for x in row) for row in w)


def triangle_text(t):
    return ";".join(" ".join(str(x) for x in row) for row in t)


class AsmLattice(FinitePoset):
    """ASMs of size n ordered by componentwise transform comparison."""

    def __init__(self, n):
        if not 2 <= n <= 6:
            raise InputError("lattice construction supported for 2 <= n <= 6")
        asms = enumerate_asm(n)
        self.n = n
        self.wt = {a: wt_general(a) for a in asms}
        self.heights = {a: height(self.wt[a]) for a in asms}
        elements = sorted(asms, key=lambda a: (self.heights[a], self.wt[a]))
        super().__init__(elements, lambda x, y: mat_leq(self.wt[x], self.wt[y]))

    def covers(self):
        # strict componentwise order raises the entry sum, so height-step-1
        # comparable pairs are covers; grading (verified at desk scale)
        # says these are all of them
        by_height = {}
        for i, a in enumerate(self.elements):
            by_height.setdefault(self.heights[a], []).append(i)
        out = []
        for h, idxs in sorted(by_height.items()):
            for j in by_height.get(h + 1, ()):
                wj = self.wt[self.elements[j]]
                for i in idxs:
                    if mat_leq(self.wt[self.elements[i]], wj):
                        out.append((i, j))
        return out

    def join_matrix(self, a, b):
        """Entrywise maximum, validated to stay in the image."""
        j = mat_max(self.wt[a], self.wt[b])
        wt_inverse_asm(j)
        return j

    def meet_matrix(self, a, b):
        m = mat_min(self.wt[a], self.wt[b])
        wt_inverse_asm(m)
        return m


@lru_cache(maxsize=None)
def build_asm_lattice(n):
    return AsmLattice(n)


class CutLattice(FinitePoset):
    """Dedekind-MacNeille completion: the lattice of cuts of a poset.

    Elements are bitmasks over the source poset; a cut is any intersection
    of principal down-sets (the empty intersection giving everything).
    """

    def __init__(self, source):
        n = len(source.elements)
        if n > 2200:
            raise InputError("poset too large for cut enumeration")
        full = (1 << n) - 1
        principal = sorted(set(source.down), reverse=True)
        cuts = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for cut in frontier:
                for p in principal:
                    c = cut & p
                    if c not in cuts:
                        cuts.add(c)
                        nxt.append(c)
            frontier = nxt
        ordered = sorted(cuts)
        super().__init__(ordered, lambda c, d: c & ~d == 0)
        self.source = source
        self.index = {c: i for i, c in enumerate(ordered)}

    def members(self, cut):
        """Source elements belonging to a cut."""
        out = []
        m = cut
        while m:
            low = m & -m
            out.append(self.source.elements[low.bit_length() - 1])
            m ^= low
        return out

    def embed(self, i):
        """Index of the principal cut of source element i."""
        return self.index[self.source.down[i]]

    def embeds_faithfully(self):
        src = self.source
        n = len(src.elements)
        imgs = [self.embed(i) for i in range(n)]
        if len(set(imgs)) != n:
            return False
        return all(
            src.leq(i, j) == self.leq(imgs[i], imgs[j])
            for i in range(n)
            for j in range(n)
        )

    def closure(self, subset):
        """Lower bounds of the upper bounds of a subset mask."""
        out = (1 << len(self.source.elements)) - 1
        for p in self.source.down:
            if subset & ~p == 0:
                out &= p
        return out

    def join_irreducible_cuts(self):
        """Cuts with a unique lower cover.

        Principal cuts are join-dense, so irreducibles live among them; a
        cut is irreducible exactly when the union of the cuts strictly
        below it closes to something smaller.
        """
        principal = set(self.source.down)
        out = []
        for x in self.elements:
            if x not in principal:
                continue
            union = 0
            for y in self.elements:
                if y != x and y & ~x == 0:
                    union |= y
            if union != x and self.closure(union) != x:
                out.append(x)
        return out


def dm_completion(poset):
    return CutLattice(poset)


def bigrassmannians(n):
    """Permutations with exactly one descent and one inverse descent."""
    if n > 7:
        raise InputError("supported up to n = 7")
    return [
        p
        for p in Permutation.all(n)
        if len(p.descents()) == 1 and len(p.left_descents()) == 1
    ]


def fixing_count_table(n):
    """Number of admissible nonzero values per entry, min(i,j,n-i,n-j)."""
    return tuple(
        tuple(min(i, j, n - i, n - j) for j in range(1, n)) for i in range(1, n)
    )


def min_with_fixed_entry(n, i, j, v):
    """Least transform matrix of an ASM with entry (i,j) >= v.

    Computed as the entrywise minimum over every qualifying element, then
    validated to lie in the image (so it is the lattice meet).
    """
    bound = min(i, j, n - i, n - j)
    if not (0 <= v <= bound):
        raise InputError(f"value {v} exceeds the bound {bound} at ({i},{j})")
    lat = build_asm_lattice(n)
    best = None
    for a in lat.elements:
        w = lat.wt[a]
        if w[i - 1][j - 1] >= v:
            best = w if best is None else mat_min(best, w)
    wt_inverse_asm(best)
    return best


def falling_min_matrix(size, seeds):
    """Least unimodal-image matrix dominating the given entry seeds.

    Fixpoint of the lower-bound consequences of row/column unimodality with
    diagonal maxima; ``seeds`` maps 1-based (i,j) to a value.
    """
    m = [[0] * size for _ in range(size)]
    for (i, j), v in seeds.items():
        m[i - 1][j - 1] = max(m[i - 1][j - 1], v)
    changed = True
    while changed:
        changed = False
        for a in range(size):
            for b in range(size):
                x = m[a][b]
                if x == 0:
                    continue
                if b < a and m[a][b + 1] < x:
                    m[a][b + 1] = x
                    changed = True
                if b > a and m[a][b - 1] < x:
                    m[a][b - 1] = x
                    changed = True
                if b <= a and b > 0 and m[a][b - 1] < x - 1:
                    m[a][b - 1] = x - 1
                    changed = True
                if b >= a and b + 1 < size and m[a][b + 1] < x - 1:
                    m[a][b + 1] = x - 1
                    changed = True
                if a < b and m[a + 1][b] < x:
                    m[a + 1][b] = x
                    changed = True
                if a > b and m[a - 1][b] < x:
                    m[a - 1][b] = x
                    changed = True
                if a <= b and a > 0 and m[a - 1][b] < x - 1:
                    m[a - 1][b] = x - 1
                    changed = True
                if a >= b and a + 1 < size and m[a + 1][b] < x - 1:
                    m[a + 1][b] = x - 1
                    changed = True
    out = mat(m)
    validate_waldspurger_image(out)
    return out


def lattice_to_json(lat):
    return {
        "n": lat.n,
        "elements": [flatten_matrix(lat.wt[a]) for a in lat.elements],
        "covers": sorted(lat.covers()),
    }


def lattice_to_dot(lat):
    return lat.to_dot(label=lambda a: flatten_matrix(lat.wt[a]))


@lru_cache(maxsize=None)
def bruhat_poset(n):
    """Strong Bruhat order on the symmetric group, as a FinitePoset."""
    return FinitePoset(list(Permutation.all(n)), bruhat_leq)

"""The Waldspurger transform and its inverse on alternating sign matrices."""

from . import linalg
from .core import (
    CounterexampleError,
    InputError,
    Permutation,
    cartan_data,
    perm_to_root_matrix,
    signed_perm_to_root_matrix,
    simple_root_embedding,
)
from .linalg import identity, mat, mat_mul, mat_sub, normalize


class ImageError(ValueError):
    """Matrix is not in the transform's image; names the violated constraint."""


def is_sum_symmetric(m):
    n = len(m)
    return all(
        sum(m[i][j] for j in range(n)) == sum(m[j][i] for j in range(n))
        for i in range(n)
    )


def validate_asm(m):
    """Raise ImageError naming the first violated alternating-sign axiom."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ImageError("matrix is not square")
    for i, row in enumerate(m, start=1):
        if any(x not in (-1, 0, 1) for x in row):
            raise ImageError(f"row {i} has an entry outside -1,0,1")
    for i, row in enumerate(m, start=1):
        nz = [x for x in row if x]
        if sum(row) != 1:
            raise ImageError(f"row {i} does not sum to 1")
        if any(a == b for a, b in zip(nz, nz[1:])):
            raise ImageError(f"row {i} does not alternate in sign")
    for j in range(n):
        col = [m[i][j] for i in range(n)]
        nz = [x for x in col if x]
        if sum(col) != 1:
            raise ImageError(f"column {j + 1} does not sum to 1")
        if any(a == b for a, b in zip(nz, nz[1:])):
            raise ImageError(f"column {j + 1} does not alternate in sign")


def is_asm(m):
    try:
        validate_asm(m)
        return True
    except ImageError:
        return False


def _corner_sums(m):
    n = len(m)
    s = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            s[i][j] = m[i - 1][j - 1] + s[i - 1][j] + s[i][j - 1] - s[i - 1][j - 1]
    return s


def wt_general(m):
    """Waldspurger transform of a sum-symmetric matrix.

    Entry (i,j) sums the block above-right for i <= j and below-left for
    i >= j; the diagonal is computed from the first branch and asserted
    equal to the second, which doubles as the sum-symmetry check.
    """
    n = len(m)
    if any(len(row) != n for row in m):
        raise InputError("matrix is not square")
    s = _corner_sums(m)
    total_by_row = [s[i][n] for i in range(n + 1)]
    out = []
    for i in range(1, n):
        row = []
        for j in range(1, n):
            if i <= j:
                row.append(total_by_row[i] - s[i][j])
            else:
                row.append(s[n][j] - s[i][j])
        out.append(tuple(row))
    for i in range(1, n):
        upper = total_by_row[i] - s[i][i]
        lower = s[n][i] - s[i][i]
        if upper != lower:
            raise InputError(
                "matrix is not sum-symmetric: the diagonal would be "
                f"over-determined at position {i} ({upper} vs {lower})"
            )
    return tuple(out)


def wt_perm(p):
    """Waldspurger matrix of a permutation.

    Satisfies (I - P) = D·C exactly, with P the root-coordinate matrix of p
    and C the Cartan matrix; that identity is checked on demand in tests.
    """
    if p.n < 2:
        raise InputError("need n >= 2")
    return wt_general(p.matrix())


def defining_identity_holds(p):
    """(I - P) = D·C for the permutation p, checked exactly."""
    n = p.n
    d = wt_perm(p)
    c = cartan_data("A", n - 1).cartan
    lhs = mat_sub(identity(n - 1), perm_to_root_matrix(p))
    return normalize(lhs) == normalize(mat_mul(d, c))


def _is_um_with_max_at(v, k):
    padded = (0,) + tuple(v) + (0,)
    for a, b in zip(padded, padded[1:]):
        if abs(b - a) > 1:
            return False
    seen_down = False
    for a, b in zip(padded, padded[1:]):
        if b > a:
            if seen_down:
                return False
        elif b < a:
            seen_down = True
    return max(v) == v[k] if v else True


def validate_waldspurger_image(w):
    """Check rows/columns are unimodal with diagonal maxima; raise otherwise."""
    m = len(w)
    for i, row in enumerate(w):
        if len(row) != m:
            raise ImageError("matrix is not square")
        if any(x < 0 or not isinstance(x, int) for x in row):
            raise ImageError(f"row {i + 1} has a negative or non-integer entry")
        if not _is_um_with_max_at(row, i):
            raise ImageError(f"row {i + 1} is not unimodal with its maximum on the diagonal")
    for j in range(m):
        col = tuple(w[i][j] for i in range(m))
        if not _is_um_with_max_at(col, j):
            raise ImageError(f"column {j + 1} is not unimodal with its maximum on the diagonal")


def wt_inverse_asm(w):
    """Reconstruct the alternating sign matrix with the given transform.

    Off-diagonal entries are -(A·W·A^T); the diagonal makes each row sum
    to 1.  The result is validated against the full ASM axioms and the
    round trip back through the transform.
    """
    m = len(w)
    n = m + 1
    validate_waldspurger_image(w)

    def d(i, j):
        if 1 <= i <= m and 1 <= j <= m:
            return w[i - 1][j - 1]
        return 0

    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            second = d(i, j) - d(i - 1, j) - d(i, j - 1) + d(i - 1, j - 1)
            row.append(-second)
        rows.append(row)
    for i in range(n):
        rows[i][i] = 0
        rows[i][i] = 1 - sum(rows[i])
    candidate = mat(rows)
    validate_asm(candidate)
    if wt_general(candidate) != w:
        raise ImageError("reconstruction does not round-trip")
    return candidate


def wt_phi(s, family):
    """(Id - R)·C^{-1} for a signed permutation in the given family.

    Entries are asserted integral; a violation means a convention bug.
    """
    if family not in ("B", "C"):
        raise InputError(f"family must be B or C, got {family!r}")
    rsd = cartan_data(family, s.n)
    r = signed_perm_to_root_matrix(s, family)
    out = normalize(mat_mul(mat_sub(identity(s.n), r), rsd.cartan_inverse))
    if not linalg.is_integral(out):
        raise CounterexampleError(
            "transform of a signed permutation came out non-integral",
            {"window": s.window, "family": family},
        )
    return linalg.to_int(out)


def entropy(p):
    """Sum of squared displacements of the window."""
    return sum((v - i) ** 2 for i, v in enumerate(p.window, start=1))


def height(w):
    """Total entry sum; equals half the entropy for permutation transforms."""
    return sum(sum(row) for row in w)


def sum_symmetric_preimage(w):
    """A sum-symmetric matrix mapping to w; witnesses surjectivity.

    Off-diagonal entries are -(A·W·A^T) with zero diagonal, which is
    sum-symmetric for any integer target.
    """
    m = len(w)
    n = m + 1

    def d(i, j):
        if 1 <= i <= m and 1 <= j <= m:
            return w[i - 1][j - 1]
        return 0

    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                row.append(0)
            else:
                row.append(-(d(i, j) - d(i - 1, j) - d(i, j - 1) + d(i - 1, j - 1)))
        rows.append(tuple(row))
    return tuple(rows)


def asm_to_json(m):
    return {"n": len(m), "rows": [list(r) for r in m]}


def asm_from_json(d):
    m = mat(d["rows"])
    validate_asm(m)
    return m


def wt_to_json(w, family="A"):
    out = linalg.mat_to_json(w)
    out["family"] = family
    return out

"""Exact integer / rational matrix helpers.

Matrices are tuples of tuples, row major, with ``int`` or ``Fraction``
entries.  Floats never appear; every routine is exact.
"""

from fractions import Fraction


def mat(rows):
    """Freeze a row iterable into the canonical tuple-of-tuples form."""
    return tuple(tuple(r) for r in rows)


def zeros(nrows, ncols):
    return tuple((0,) * ncols for _ in range(nrows))


def identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def dims(m):
    return len(m), len(m[0]) if m else 0


def transpose(m):
    return tuple(zip(*m)) if m else ()


def mat_add(a, b):
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def scalar_mul(c, m):
    return tuple(tuple(c * x for x in row) for row in m)


def mat_mul(a, b):
    bt = transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def vec_mat(v, m):
    return tuple(sum(x * y for x, y in zip(v, col)) for col in transpose(m))


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def is_integral(m):
    return all(Fraction(x).denominator == 1 for row in m for x in row)


def to_int(m):
    """Cast an integral rational matrix back to plain ints."""
    out = []
    for row in m:
        new = []
        for x in row:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValueError(f"entry {x} is not an integer")
            new.append(f.numerator)
        out.append(tuple(new))
    return tuple(out)


def _normalize(x):
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def normalize(m):
    """Reduce Fractions, demoting integral entries to int."""
    return tuple(tuple(_normalize(x) for x in row) for row in m)


def rref(m):
    """Row-reduce over the rationals.

    Returns (reduced matrix, pivot column list).
    """
    rows = [[Fraction(x) for x in row] for row in m]
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        pivot = next((i for i in range(r, nr) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return mat(rows), pivots


def rank(m):
    if not m:
        return 0
    return len(rref(m)[1])


def inverse(m):
    """Exact inverse by Gauss-Jordan elimination, or ValueError if singular."""
    n = len(m)
    aug = [list(row) + [1 if i == j else 0 for j in range(n)] for i, row in enumerate(m)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return normalize(tuple(row[n:] for row in red))


def solve_right(a, b):
    """Solve A·X = B exactly.  Returns X, or None if inconsistent.

    When the system is underdetermined the free variables are set to zero.
    """
    nr, nc = dims(a)
    bc = len(b[0])
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, pivots = rref(aug)
    for i in range(len(pivots), nr):
        if any(red[i][nc + j] != 0 for j in range(bc)):
            return None
    x = [[Fraction(0)] * bc for _ in range(nc)]
    free = [c for c in range(nc) if c not in pivots]
    for r, c in enumerate(pivots):
        for j in range(bc):
            x[c][j] = red[r][nc + j] - sum(red[r][k] * x[k][j] for k in free)
    if normalize(mat_mul(a, mat(x))) != normalize(mat(b)):
        return None
    return normalize(mat(x))


def det(m):
    """Exact determinant via Bareiss (integer input) or rational elimination."""
    n = len(m)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in m for x in row):
        a = [list(row) for row in m]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) for x in row] for row in m]
    d = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            d = -d
        d *= a[k][k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return _normalize(d)


def frac_str(x):
    f = Fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def frac_parse(s):
    if isinstance(s, int):
        return s
    if isinstance(s, str) and "/" in s:
        num, den = s.split("/")
        return _normalize(Fraction(int(num), int(den)))
    return int(s)


def mat_to_json(m):
    """JSON form {"rows": [...]}; non-integers rendered as "p/q" strings."""
    rows = []
    for row in m:
        rows.append([x if isinstance(x, int) else frac_str(x) for x in row])
    return {"rows": rows}


def mat_from_json(d):
    return mat([[frac_parse(x) for x in row] for row in d["rows"]])

"""Unimodal column vectors: classification and bijections.

A vector qualifies when zero-padding both ends gives consecutive steps in
{-1,0,+1} with every rise before every fall; these are exactly the columns
of permutation transforms.
"""

from dataclasses import dataclass

from .core import InputError, cartan_data
from .linalg import mat_vec

UP, DOWN, FLAT = "up", "down", "flat"


def is_um(v):
    """Padded unimodal-Motzkin test."""
    padded = (0,) + tuple(v) + (0,)
    if any(x < 0 for x in padded):
        return False
    seen_down = False
    for a, b in zip(padded, padded[1:]):
        step = b - a
        if step not in (-1, 0, 1):
            return False
        if step == 1:
            if seen_down:
                return False
        elif step == -1:
            seen_down = True
    return True


def is_um_at(v, k):
    """is_um plus the maximum sitting at 1-based position k."""
    v = tuple(v)
    if not (1 <= k <= len(v)):
        return False
    if not is_um(v):
        return False
    prefix_ok = all(v[i + 1] - v[i] in (0, 1) for i in range(k - 1))
    suffix_ok = all(v[i] - v[i + 1] in (0, 1) for i in range(k - 1, len(v) - 1))
    return prefix_ok and suffix_ok and v[k - 1] == max(v)


def enumerate_um(m):
    """All unimodal vectors of length m, lexicographically sorted."""
    if m < 1:
        raise InputError("length must be >= 1")
    out = []

    def grow(prefix, h, seen_down):
        if len(prefix) == m:
            if h in (0, 1):
                out.append(tuple(prefix))
            return
        for step in (-1, 0, 1):
            nh = h + step
            if nh < 0 or (step == 1 and seen_down):
                continue
            grow(prefix + [nh], nh, seen_down or step == -1)

    grow([], 0, False)
    return sorted(v for v in out if is_um(v))


@dataclass(frozen=True)
class MotzkinPath:
    """Lattice path over steps up/down/flat, nonnegative, ending at zero."""

    steps: tuple

    def __post_init__(self):
        h = 0
        seen_down = False
        for s in self.steps:
            if s == UP:
                if seen_down:
                    raise InputError("rise after a fall; path is not unimodal")
                h += 1
            elif s == DOWN:
                seen_down = True
                h -= 1
            elif s != FLAT:
                raise InputError(f"unknown step {s!r}")
            if h < 0:
                raise InputError("path dips below the axis")
        if h != 0:
            raise InputError("path does not return to the axis")

    def heights(self):
        h = 0
        out = [0]
        for s in self.steps:
            h += 1 if s == UP else (-1 if s == DOWN else 0)
            out.append(h)
        return tuple(out)


def um_to_ump(v):
    if not is_um(v):
        raise InputError(f"not a unimodal vector: {v}")
    padded = (0,) + tuple(v) + (0,)
    steps = []
    for a, b in zip(padded, padded[1:]):
        steps.append(UP if b > a else (DOWN if b < a else FLAT))
    return MotzkinPath(tuple(steps))


def ump_to_um(path):
    return path.heights()[1:-1]


@dataclass(frozen=True)
class RootIdeal:
    """Positive roots of type A as intervals [i,j], with generated ideal.

    ``generators`` sum (as indicator vectors) to the source vector; the
    ``ideal`` is their upward closure and is abelian.
    """

    m: int
    generators: tuple
    ideal: frozenset

    def indicator_sum(self):
        v = [0] * self.m
        for (i, j) in self.generators:
            for k in range(i - 1, j):
                v[k] += 1
        return tuple(v)


def _upward_closure(m, intervals):
    closed = set()
    for (i, j) in intervals:
        for a in range(1, i + 1):
            for b in range(j, m + 1):
                closed.add((a, b))
    return frozenset(closed)


def is_abelian(ideal):
    """No two members sum to a root, i.e. no member ends right before another starts."""
    for (i1, j1) in ideal:
        for (i2, j2) in ideal:
            if j1 + 1 == i2:
                return False
    return True


def is_upward_closed(m, ideal):
    for (i, j) in ideal:
        if i > 1 and (i - 1, j) not in ideal:
            return False
        if j < m and (i, j + 1) not in ideal:
            return False
    return True


def um_to_roots(v):
    """Greedy root decomposition of a unimodal vector.

    Repeatedly subtracts the indicator of the leftmost maximal interval on
    which the remainder is positive and nondecreasing.  The extracted
    intervals generate an abelian upward-closed ideal and sum back to v.
    """
    v = tuple(v)
    if not is_um(v):
        raise InputError(f"not a unimodal vector: {v}")
    m = len(v)
    work = list(v)
    gens = []
    while any(work):
        a = next(i for i in range(m) if work[i] > 0)
        b = a
        while b + 1 < m and work[b + 1] > 0 and work[b + 1] >= work[b]:
            b += 1
        gens.append((a + 1, b + 1))
        for k in range(a, b + 1):
            work[k] -= 1
    ideal = _upward_closure(m, gens)
    return RootIdeal(m=m, generators=tuple(gens), ideal=ideal)


def um_to_partition(v):
    """Young diagram of the generated ideal, read row by row.

    Row i collects the ideal's intervals starting at i, which form a
    suffix of columns; its length is the number of such intervals.
    """
    ri = um_to_roots(v)
    m = ri.m
    lam = []
    for i in range(1, m + 1):
        row = sum(1 for (a, b) in ri.ideal if a == i)
        if row:
            lam.append(row)
    lam.sort(reverse=True)
    return tuple(lam)


def max_hook(partition):
    if not partition:
        return 0
    return partition[0] + len(partition) - 1


def partitions_with_max_hook(bound):
    """All partitions whose largest hook is <= bound."""
    out = [()]
    for rows in range(1, bound + 1):
        maxcol = bound - rows + 1

        def grow(prefix, remaining_rows, cap):
            if remaining_rows == 0:
                out.append(tuple(prefix))
                return
            for c in range(1, cap + 1):
                grow(prefix + [c], remaining_rows - 1, c)

        for first in range(1, maxcol + 1):
            grow([first], rows - 1, first)
    # prefixes above fix the first column height exactly = rows
    return sorted(set(out))


def peterson_test(v):
    """Whether all positive-root pairings of v lie in [-1, 2].

    Evaluated both through the Cartan form and through the boundary-term
    reduction; the two must agree.
    """
    v = tuple(v)
    m = len(v)
    cart = cartan_data("A", m).cartan
    cv = mat_vec(cart, v)
    x = (0,) + v + (0,)
    ok = True
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            via_cartan = sum(cv[k - 1] for k in range(i, j + 1))
            via_boundary = -x[i - 1] + x[i] + x[j] - x[j + 1]
            if via_cartan != via_boundary:
                raise AssertionError("pairing implementations disagree")
            if not (-1 <= via_cartan <= 2):
                ok = False
    return ok

"""Group elements in window notation and exact root-system constants."""

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .linalg import mat, identity, mat_mul, normalize


class InputError(ValueError):
    """Malformed or out-of-range user input."""


class CounterexampleError(RuntimeError):
    """A verified-by-computation claim failed; carries a replayable witness."""

    def __init__(self, message, details=None):
        super().__init__(message)
        self.details = details or {}


class Permutation:
    """A permutation of {1..n} in one-line (window) notation.

    The matrix convention puts the 1 of row i in column window[i], so the
    matrix of w applied on the right of a row vector permutes positions.
    """

    __slots__ = ("window",)

    def __init__(self, window):
        w = tuple(window)
        if sorted(w) != list(range(1, len(w) + 1)):
            raise InputError(f"not a permutation window: {w}")
        object.__setattr__(self, "window", w)

    def __setattr__(self, *a):
        raise AttributeError("Permutation is immutable")

    @property
    def n(self):
        return len(self.window)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        return cls(range(n, 0, -1))

    @classmethod
    def from_string(cls, s):
        s = s.strip()
        if not s.isdigit():
            raise InputError(f"cannot parse permutation from {s!r}")
        return cls(int(ch) for ch in s)

    @classmethod
    def all(cls, n):
        for w in itertools.permutations(range(1, n + 1)):
            yield cls(w)

    def __call__(self, i):
        return self.window[i - 1]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"Permutation({''.join(map(str, self.window))})"

    def one_line(self):
        return "".join(map(str, self.window))

    def matrix(self):
        n = self.n
        return tuple(
            tuple(1 if self.window[i] == j + 1 else 0 for j in range(n))
            for i in range(n)
        )

    def inverse(self):
        inv = [0] * self.n
        for i, v in enumerate(self.window):
            inv[v - 1] = i + 1
        return Permutation(inv)

    def compose(self, other):
        """self after other: (self∘other)(i) = self(other(i))."""
        return Permutation(self.window[v - 1] for v in other.window)

    __mul__ = compose

    def descents(self):
        w = self.window
        return [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]

    def left_descents(self):
        return self.inverse().descents()

    def cycle_count(self):
        seen = [False] * self.n
        count = 0
        for i in range(self.n):
            if not seen[i]:
                count += 1
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = self.window[j] - 1
        return count


class SignedPermutation:
    """Element of the hyperoctahedral group: window of signed values."""

    __slots__ = ("window",)

    def __init__(self, window):
        w = tuple(window)
        if sorted(abs(v) for v in w) != list(range(1, len(w) + 1)) or 0 in w:
            raise InputError(f"not a signed permutation window: {w}")
        object.__setattr__(self, "window", w)

    def __setattr__(self, *a):
        raise AttributeError("SignedPermutation is immutable")

    @property
    def n(self):
        return len(self.window)

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, n):
        return cls(range(-1, -n - 1, -1))

    @classmethod
    def from_string(cls, s):
        try:
            return cls(int(p) for p in s.split(","))
        except (ValueError, InputError) as exc:
            raise InputError(f"cannot parse signed window from {s!r}") from exc

    @classmethod
    def all(cls, n):
        for w in itertools.permutations(range(1, n + 1)):
            for signs in itertools.product((1, -1), repeat=n):
                yield cls(v * s for v, s in zip(w, signs))

    def __call__(self, i):
        return self.window[i - 1]

    def __eq__(self, other):
        return isinstance(other, SignedPermutation) and self.window == other.window

    def __hash__(self):
        return hash(self.window)

    def __repr__(self):
        return f"SignedPermutation({self.comma_window()})"

    def comma_window(self):
        return ",".join(map(str, self.window))

    def matrix(self):
        n = self.n
        rows = []
        for v in self.window:
            row = [0] * n
            row[abs(v) - 1] = 1 if v > 0 else -1
            rows.append(tuple(row))
        return tuple(rows)

    def transpose(self):
        """Element whose matrix is the transpose (= the group inverse)."""
        inv = [0] * self.n
        for i, v in enumerate(self.window):
            inv[abs(v) - 1] = (i + 1) if v > 0 else -(i + 1)
        return SignedPermutation(inv)

    inverse = transpose

    def compose(self, other):
        """self after other, acting on signed positions."""
        out = []
        for v in other.window:
            img = self.window[abs(v) - 1]
            out.append(img if v > 0 else -img)
        return SignedPermutation(out)

    __mul__ = compose

    def descents(self):
        """Right descent positions; position n when the last value is negative."""
        w = self.window
        des = [i + 1 for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if w[-1] < 0:
            des.append(len(w))
        return des

    def left_descents(self):
        return self.inverse().descents()


@dataclass(frozen=True)
class RootSystemData:
    family: str
    rank: int
    cartan: tuple
    cartan_inverse: tuple
    embedding: tuple
    theta: tuple
    rho_pairing: tuple


def simple_root_embedding(family, rank):
    """Simple roots as columns, in standard coordinates.

    Type A uses n x (n-1) columns e_i - e_{i+1}; types B and C are square.
    """
    if family == "A":
        n = rank + 1
        return tuple(
            tuple(1 if i == j else (-1 if i == j + 1 else 0) for j in range(rank))
            for i in range(n)
        )
    if family == "B":
        return tuple(
            tuple(1 if i == j else (-1 if i == j + 1 else 0) for j in range(rank))
            for i in range(rank)
        )
    if family == "C":
        return tuple(
            tuple(
                2 if i == j == rank - 1 else (1 if i == j else (-1 if i == j + 1 else 0))
                for j in range(rank)
            )
            for i in range(rank)
        )
    raise InputError(f"unsupported family {family!r}")


def _gram_cartan(emb):
    cols = linalg.transpose(emb)
    n = len(cols)
    cart = []
    for i in range(n):
        norm = linalg.dot(cols[i], cols[i])
        row = []
        for j in range(n):
            num = 2 * linalg.dot(cols[i], cols[j])
            if num % norm:
                raise ValueError("non-integral Cartan pairing")
            row.append(num // norm)
        cart.append(tuple(row))
    return tuple(cart)


def _closed_form_inverse(family, rank):
    n = rank
    if family == "A":
        # min(i,j) - ij/n over n = rank+1
        m = rank + 1
        return tuple(
            tuple(
                Fraction(min(i, j)) - Fraction(i * j, m)
                for j in range(1, n + 1)
            )
            for i in range(1, n + 1)
        )
    if family == "B":
        return tuple(
            tuple(
                Fraction(i, 2) if j == n else Fraction(min(i, j))
                for j in range(1, n + 1)
            )
            for i in range(1, n + 1)
        )
    if family == "C":
        return tuple(
            tuple(
                Fraction(j, 2) if i == n else Fraction(min(i, j))
                for j in range(1, n + 1)
            )
            for i in range(1, n + 1)
        )
    raise InputError(f"unsupported family {family!r}")


def _theta(family, rank):
    if family == "A":
        return (1,) * rank
    if rank == 1:
        return (1,)
    if family == "B":
        return (1,) + (2,) * (rank - 1)
    return (2,) * (rank - 1) + (1,)


def _rho_pairing(family, rank, cartan_inverse):
    if family == "A":
        return tuple(i * (rank + 1 - i) for i in range(1, rank + 1))
    halfsums = [sum(row, Fraction(0)) for row in cartan_inverse]
    scale = 1
    for h in halfsums:
        f = Fraction(h)
        scale = scale * f.denominator // gcd(scale, f.denominator)
    return tuple(int(h * scale) for h in halfsums)


def cartan_data(family, rank):
    """Cartan matrix, its exact inverse, and companion constants.

    The inverse is computed by elimination and cross-checked against the
    closed forms for each family.
    """
    if family not in ("A", "B", "C"):
        raise InputError(f"unsupported family {family!r}")
    if rank < 1:
        raise InputError("rank must be >= 1")
    emb = simple_root_embedding(family, rank)
    cart = _gram_cartan(emb)
    inv = linalg.inverse(cart)
    closed = normalize(_closed_form_inverse(family, rank))
    if inv != closed:
        raise CounterexampleError(
            f"elimination inverse disagrees with closed form for {family}{rank}",
            {"family": family, "rank": rank},
        )
    if mat_mul(cart, inv) != identity(rank):
        raise CounterexampleError(f"cartan inverse check failed for {family}{rank}")
    return RootSystemData(
        family=family,
        rank=rank,
        cartan=cart,
        cartan_inverse=inv,
        embedding=emb,
        theta=_theta(family, rank),
        rho_pairing=_rho_pairing(family, rank, inv),
    )


def perm_to_root_matrix(p):
    """Matrix of a permutation in simple-root coordinates.

    This is the unique P with A·P = M·A for the n x (n-1) simple-root
    embedding A; rows of P are prefix sums of the rows of M·A.
    """
    n = p.n
    if n < 2:
        raise InputError("need n >= 2")
    a = simple_root_embedding("A", n - 1)
    ma = tuple(a[p.window[i] - 1] for i in range(n))
    rows = []
    acc = (0,) * (n - 1)
    for i in range(n - 1):
        acc = tuple(x + y for x, y in zip(acc, ma[i]))
        rows.append(acc)
    out = tuple(rows)
    if tuple(-x for x in rows[-1]) != ma[n - 1]:
        raise CounterexampleError("root-coordinate solve inconsistent")
    return out


def signed_perm_to_root_matrix(s, family):
    """Matrix of a signed permutation in the simple-root basis of B or C.

    Entries come out integral for these bases; that is asserted.
    """
    if family not in ("B", "C"):
        raise InputError(f"family must be B or C, got {family!r}")
    emb = simple_root_embedding(family, s.n)
    inv = linalg.inverse(emb)
    r = normalize(mat_mul(mat_mul(inv, s.matrix()), emb))
    if not linalg.is_integral(r):
        raise CounterexampleError(
            "root-coordinate matrix is not integral",
            {"window": s.window, "family": family},
        )
    return linalg.to_int(r)


def rank_matrix(p):
    """r(i,j) = #{a <= i : p(a) <= j}, the standard Bruhat rank table."""
    n = p.n
    rows = []
    prev = (0,) * n
    for i in range(n):
        v = p.window[i]
        row = tuple(prev[j] + (1 if v <= j + 1 else 0) for j in range(n))
        rows.append(row)
        prev = row
    return tuple(rows)


def bruhat_leq(u, v):
    """Strong Bruhat order via rank-matrix dominance."""
    if u.n != v.n:
        raise InputError("size mismatch")
    ru = rank_matrix(u)
    rv = rank_matrix(v)
    return all(
        ru[i][j] >= rv[i][j] for i in range(u.n) for j in range(u.n)
    )


def signed_to_cs_window(s):
    """Embed a signed permutation as a centrally symmetric window in S_{2n}."""
    n = s.n
    win = [0] * (2 * n)
    for i, v in enumerate(s.window, start=1):
        if v > 0:
            a, b = i, v
        else:
            a, b = 2 * n + 1 - i, -v
        win[a - 1] = b
        win[2 * n - a] = 2 * n + 1 - b
    return Permutation(win)


def bruhat_leq_signed(u, v):
    """Bruhat order on signed permutations via the S_{2n} embedding."""
    if u.n != v.n:
        raise InputError("size mismatch")
    return bruhat_leq(signed_to_cs_window(u), signed_to_cs_window(v))

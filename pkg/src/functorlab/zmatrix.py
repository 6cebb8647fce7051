"""Exact arithmetic for square matrices over the nonnegative integers.

These matrices are decategorified shadows of exact endofunctors acting on a
finite set of simples: entry (i, j) counts how often simple j appears in the
image of simple i, composition becomes matrix product, direct sum becomes
entrywise sum, and taking adjoints becomes transposition.  Everything is done
in plain Python integers so arbitrary precision is automatic and no floating
point is involved anywhere.

Indexing is 1-based at every external interface (JSON, error payloads,
reported positions); internal storage is 0-based.
"""

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import lcm

from .errors import DimensionMismatch, DimensionTooLarge, InvalidInput

CANON_CAP_ENV = "FUNCTORLAB_CANON_CAP"
_DEFAULT_CANON_CAP = 8


def canonical_cap():
    """Dimension cap for operations that enumerate all n! permutations."""
    raw = os.environ.get(CANON_CAP_ENV)
    if raw is None:
        return _DEFAULT_CANON_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidInput(
            f"{CANON_CAP_ENV} must be an integer, got {raw!r}", value=raw
        ) from None
    if cap < 1:
        raise InvalidInput(f"{CANON_CAP_ENV} must be >= 1, got {cap}", value=cap)
    return cap


def _check_entry(x):
    if isinstance(x, bool) or not isinstance(x, int):
        raise InvalidInput(f"matrix entries must be integers, got {x!r}")
    if x < 0:
        raise InvalidInput(f"matrix entries must be nonnegative, got {x}")
    return x


# -- raw-row helpers ---------------------------------------------------------
# The solver iterates over huge candidate spaces, so the inner arithmetic
# works on plain tuples of row tuples; NatMatrix wraps them for the API.

def _identity_rows(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _mul_rows(a, b):
    cols = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a
    )


@lru_cache(maxsize=1 << 16)
def _pow_rows(rows, d):
    if d == 0:
        return _identity_rows(len(rows))
    if d == 1:
        return rows
    return _mul_rows(_pow_rows(rows, d - 1), rows)


@lru_cache(maxsize=1 << 16)
def _poly_rows(coeffs, rows):
    n = len(rows)
    acc = [[0] * n for _ in range(n)]
    for d, c in enumerate(coeffs):
        if c == 0:
            continue
        p = _pow_rows(rows, d)
        for i in range(n):
            pi = p[i]
            ai = acc[i]
            for j in range(n):
                ai[j] += c * pi[j]
    return tuple(tuple(r) for r in acc)


def _conjugate_rows(rows, images):
    # out[images[i]][images[j]] = rows[i][j]
    n = len(rows)
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        oi = images[i]
        ri = rows[i]
        for j in range(n):
            out[oi][images[j]] = ri[j]
    return tuple(tuple(r) for r in out)


def _orbit_min_rows(rows):
    n = len(rows)
    best = None
    for images in itertools.permutations(range(n)):
        cand = _conjugate_rows(rows, images)
        if best is None or cand < best:
            best = cand
    return best


# -- public types ------------------------------------------------------------

@dataclass(frozen=True, order=True)
class NatMatrix:
    """Square matrix with nonnegative integer entries."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(_check_entry(x) for x in row) for row in self.entries)
        if not rows:
            raise InvalidInput("matrices must have dimension >= 1")
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise InvalidInput(
                    f"matrix must be square, got row of length {len(row)} in "
                    f"a {n}-row matrix"
                )
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows):
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def zero(cls, n):
        return cls(tuple(tuple(0 for _ in range(n)) for _ in range(n)))

    @classmethod
    def identity(cls, n):
        return cls(_identity_rows(n))

    @property
    def n(self):
        return len(self.entries)

    def __add__(self, other):
        if not isinstance(other, NatMatrix):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(
                f"cannot add a {self.n}x{self.n} matrix to a {other.n}x{other.n} one"
            )
        return NatMatrix(
            tuple(
                tuple(x + y for x, y in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __mul__(self, other):
        if not isinstance(other, NatMatrix):
            return NotImplemented
        if self.n != other.n:
            raise DimensionMismatch(
                f"cannot multiply a {self.n}x{self.n} matrix by a "
                f"{other.n}x{other.n} one"
            )
        return NatMatrix(_mul_rows(self.entries, other.entries))

    def __rmul__(self, k):
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise InvalidInput(f"scalar must be nonnegative, got {k}")
        return NatMatrix(tuple(tuple(k * x for x in row) for row in self.entries))

    def power(self, d):
        if isinstance(d, bool) or not isinstance(d, int) or d < 0:
            raise InvalidInput(f"exponent must be a nonnegative integer, got {d!r}")
        return NatMatrix(_pow_rows(self.entries, d))

    def transpose(self):
        return NatMatrix(tuple(zip(*self.entries)))

    def is_symmetric(self):
        e = self.entries
        return all(
            e[i][j] == e[j][i] for i in range(self.n) for j in range(i + 1, self.n)
        )

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def is_identity(self):
        return self.entries == _identity_rows(self.n)

    def is_permutation_matrix(self):
        e = self.entries
        n = self.n
        for row in e:
            if sum(row) != 1 or any(x not in (0, 1) for x in row):
                return False
        return all(sum(e[i][j] for i in range(n)) == 1 for j in range(n))

    def permutation(self):
        """The permutation sending i to the row carrying the 1 of column i."""
        if not self.is_permutation_matrix():
            raise InvalidInput("matrix is not a permutation matrix")
        n = self.n
        images = [0] * n
        for j in range(n):
            for i in range(n):
                if self.entries[i][j]:
                    images[j] = i
                    break
        return Permutation(tuple(images))


@dataclass(frozen=True, order=True)
class Permutation:
    """Permutation of {0, ..., n-1}, stored as the tuple of images."""

    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        n = len(images)
        if n == 0:
            raise InvalidInput("permutations must have dimension >= 1")
        if sorted(images) != list(range(n)):
            raise InvalidInput(f"not a permutation of 0..{n - 1}: {images}")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)))

    @classmethod
    def from_one_based(cls, seq):
        seq = list(seq)
        if any(isinstance(x, bool) or not isinstance(x, int) for x in seq):
            raise InvalidInput(f"permutation images must be integers: {seq}")
        return cls(tuple(x - 1 for x in seq))

    @property
    def n(self):
        return len(self.images)

    def one_based(self):
        return tuple(x + 1 for x in self.images)

    def __call__(self, i):
        return self.images[i]

    def compose(self, other):
        """self after other: (self.compose(other))(i) = self(other(i))."""
        if self.n != other.n:
            raise DimensionMismatch("cannot compose permutations of different sizes")
        return Permutation(tuple(self.images[other.images[i]] for i in range(self.n)))

    def inverse(self):
        inv = [0] * self.n
        for i, img in enumerate(self.images):
            inv[img] = i
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(img == i for i, img in enumerate(self.images))

    def is_involution(self):
        return all(self.images[img] == i for i, img in enumerate(self.images))

    def order(self):
        seen = [False] * self.n
        result = 1
        for start in range(self.n):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                length += 1
            result = lcm(result, length)
        return result

    def matrix(self):
        n = self.n
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[self.images[i]][i] = 1
        return NatMatrix(tuple(tuple(r) for r in rows))


def _normalize_coeffs(coeffs, side):
    coeffs = list(coeffs)
    for c in coeffs:
        if isinstance(c, bool) or not isinstance(c, int):
            raise InvalidInput(f"{side} coefficients must be integers, got {c!r}")
        if c < 0:
            raise InvalidInput(f"{side} coefficients must be nonnegative, got {c}")
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class RelationPoly:
    """A polynomial identity g(X) = h(X), both sides with coefficients in Z+.

    Coefficient lists are ascending (index d holds the coefficient of X^d) and
    are normalized by dropping trailing zeros; g and h must differ after
    normalization, so padded copies of the same polynomial are rejected.
    A constant c stands for c times the identity matrix.
    """

    g: tuple
    h: tuple

    def __post_init__(self):
        g = _normalize_coeffs(self.g, "g")
        h = _normalize_coeffs(self.h, "h")
        if g == h:
            raise InvalidInput("relation is trivial: both sides are the same polynomial")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "h", h)

    @property
    def max_degree(self):
        return max(len(self.g), len(self.h)) - 1

    def reduced(self):
        """Both sides with the common part cancelled (sound over the integers:
        g(M) = h(M) iff (g-m)(M) = (h-m)(M) for m the coefficientwise min)."""
        width = max(len(self.g), len(self.h))
        g = self.g + (0,) * (width - len(self.g))
        h = self.h + (0,) * (width - len(self.h))
        gr = [a - min(a, b) for a, b in zip(g, h)]
        hr = [b - min(a, b) for a, b in zip(g, h)]
        while gr and gr[-1] == 0:
            gr.pop()
        while hr and hr[-1] == 0:
            hr.pop()
        return tuple(gr), tuple(hr)

    def satisfied_by(self, m):
        return _poly_rows(self.g, m.entries) == _poly_rows(self.h, m.entries)


# -- operations --------------------------------------------------------------

def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def scalar_mul(k, m):
    out = k * m
    if out is NotImplemented:
        raise InvalidInput(f"scalar must be an integer, got {k!r}")
    return out


def poly_eval(coeffs, m):
    """Evaluate a Z+ coefficient polynomial at m, degree-0 term meaning c*I."""
    coeffs = _normalize_coeffs(coeffs, "polynomial")
    return NatMatrix(_poly_rows(coeffs, m.entries))


def direct_sum(a, b):
    n = a.n + b.n
    rows = [[0] * n for _ in range(n)]
    for i in range(a.n):
        for j in range(a.n):
            rows[i][j] = a.entries[i][j]
    for i in range(b.n):
        for j in range(b.n):
            rows[a.n + i][a.n + j] = b.entries[i][j]
    return NatMatrix(tuple(tuple(r) for r in rows))


def external_tensor(m, b_simples):
    """Kronecker product of m with the identity on b_simples letters.

    Index (i, s) of the product maps to row (i-1)*b_simples + s in 1-based
    terms: the left factor is the major index.
    """
    if isinstance(b_simples, bool) or not isinstance(b_simples, int) or b_simples < 1:
        raise InvalidInput(f"b_simples must be a positive integer, got {b_simples!r}")
    n = m.n * b_simples
    rows = [[0] * n for _ in range(n)]
    for i in range(m.n):
        for j in range(m.n):
            x = m.entries[i][j]
            if x:
                for s in range(b_simples):
                    rows[i * b_simples + s][j * b_simples + s] = x
    return NatMatrix(tuple(tuple(r) for r in rows))


def conjugate(m, s):
    """Relabel simples by the permutation s: entry (i, j) moves to (s(i), s(j))."""
    if m.n != s.n:
        raise DimensionMismatch(
            f"matrix is {m.n}x{m.n} but permutation acts on {s.n} letters"
        )
    return NatMatrix(_conjugate_rows(m.entries, s.images))


def canonical_rep(m, cap=None):
    """Lexicographically least relabeling of m (row-major entry order).

    Scans all n! permutations, so n is capped (default 8, overridable via the
    FUNCTORLAB_CANON_CAP environment variable or the cap argument).
    """
    if cap is None:
        cap = canonical_cap()
    if m.n > cap:
        raise DimensionTooLarge(
            f"canonical form scans n! relabelings; n={m.n} exceeds cap {cap}",
            n=m.n,
            cap=cap,
        )
    return NatMatrix(_orbit_min_rows(m.entries))

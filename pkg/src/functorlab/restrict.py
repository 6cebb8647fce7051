"""Invariant index subsets, restriction of relations, and a Cartan checker.

A subset S of the indices is invariant for M when no column of S leaks mass
outside S; then the S x S corner of M describes the action on the subquotient
generated by S (Serre restriction) and the complementary corner of the
transpose describes the quotient action.  A relation satisfied by M passes to
both corners.

`cartan_check` certifies, over the rationals, that a symmetric-matrix family
commuting with a candidate Cartan matrix forces that matrix to be scalar:
commutation is checked exactly, then irreducibility of the family via the
dimension of the algebra it spans (a span of n^2 is decisive), with a
reducibility witness search through integer eigenvectors as the fallback.
The checker is sound but deliberately incomplete: `inconclusive` is a
possible verdict, never a wrong one, and all arithmetic is exact rational.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    DimensionMismatch,
    DimensionTooLarge,
    EmptyComplement,
    EmptySubset,
    InternalFault,
    InvalidInput,
    NotInvariant,
    NotSymmetric,
    RelationNotSatisfied,
)
from .zmatrix import NatMatrix, _poly_rows

_SUBSET_ENUM_CAP = 20


@dataclass(frozen=True)
class IndexSubset:
    """Subset of {1..n}, stored sorted; members are 1-based indices."""

    n: int
    members: tuple

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int) or self.n < 1:
            raise InvalidInput(f"n must be a positive integer, got {self.n!r}")
        seen = set()
        for i in self.members:
            if isinstance(i, bool) or not isinstance(i, int):
                raise InvalidInput(f"subset members must be integers, got {i!r}")
            if not 1 <= i <= self.n:
                raise InvalidInput(f"subset member {i} outside 1..{self.n}")
            if i in seen:
                raise InvalidInput(f"duplicate subset member {i}")
            seen.add(i)
        object.__setattr__(self, "members", tuple(sorted(seen)))

    @property
    def size(self):
        return len(self.members)

    def complement(self):
        inside = set(self.members)
        return IndexSubset(
            self.n, tuple(i for i in range(1, self.n + 1) if i not in inside)
        )

    def zero_based(self):
        return tuple(i - 1 for i in self.members)


def _check_dims(m, subset):
    if m.n != subset.n:
        raise DimensionMismatch(
            f"matrix is {m.n}x{m.n} but subset lives in 1..{subset.n}"
        )


def is_invariant_subset(m, subset):
    """True when every column of S is supported inside S."""
    _check_dims(m, subset)
    inside = set(subset.zero_based())
    for j in inside:
        for i in range(m.n):
            if i not in inside and m.entries[i][j]:
                return False
    return True


def _invariance_witness(m, subset):
    inside = set(subset.zero_based())
    for j in sorted(inside):
        for i in range(m.n):
            if i not in inside and m.entries[i][j]:
                return (i + 1, j + 1)
    return None


def invariant_subsets(m):
    """All invariant subsets, ordered by size then lexicographically."""
    if m.n > _SUBSET_ENUM_CAP:
        raise DimensionTooLarge(
            f"subset enumeration scans 2^n sets; n={m.n} exceeds cap "
            f"{_SUBSET_ENUM_CAP}",
            n=m.n,
            cap=_SUBSET_ENUM_CAP,
        )
    out = []
    for mask in range(1 << m.n):
        members = tuple(i + 1 for i in range(m.n) if mask >> i & 1)
        s = IndexSubset(m.n, members)
        if is_invariant_subset(m, s):
            out.append(s)
    out.sort(key=lambda s: (s.size, s.members))
    return out


def _require_invariant(m, subset):
    witness = _invariance_witness(m, subset)
    if witness is not None:
        i, j = witness
        raise NotInvariant(
            f"column {j} leaks outside the subset at row {i} "
            f"(entry {m.entries[i - 1][j - 1]})",
            position=(i, j),
            value=m.entries[i - 1][j - 1],
        )


def _corner(m, idx):
    return NatMatrix(
        tuple(tuple(m.entries[i][j] for j in idx) for i in idx)
    )


def restrict_serre(m, subset):
    """The S x S corner of an S-invariant matrix."""
    _check_dims(m, subset)
    if subset.size == 0:
        raise EmptySubset("cannot restrict to the empty subset")
    _require_invariant(m, subset)
    return _corner(m, subset.zero_based())


def restrict_quotient(m, subset):
    """The complementary corner of the transpose of an S-invariant matrix."""
    _check_dims(m, subset)
    comp = subset.complement()
    if comp.size == 0:
        raise EmptyComplement("quotient by the full subset is empty")
    _require_invariant(m, subset)
    return _corner(m.transpose(), comp.zero_based())


def preserves_add(m, subset):
    """Whether the transpose keeps every column of the subset inside it.

    Concretely: the block with rows in the subset and columns outside it
    vanishes.  Equivalent to is_invariant_subset(m, complement), the two
    sides of one duality.
    """
    _check_dims(m, subset)
    return is_invariant_subset(m.transpose(), subset)


@dataclass(frozen=True)
class DescentReport:
    """Outcome of pushing a relation to the two corners of an invariant subset.

    A corner is None when that side is empty (empty subset or full subset);
    present corners always satisfy the relation, this being forced.
    """

    ambient_satisfied: bool
    serre: NatMatrix = None
    quotient: NatMatrix = None


def relation_descends(m, subset, rel):
    """Check rel on m, restrict to both corners, and re-verify it there."""
    _check_dims(m, subset)
    _require_invariant(m, subset)
    gm = _poly_rows(rel.g, m.entries)
    hm = _poly_rows(rel.h, m.entries)
    if gm != hm:
        for i in range(m.n):
            for j in range(m.n):
                if gm[i][j] != hm[i][j]:
                    raise RelationNotSatisfied(
                        f"g(M)[{i + 1}][{j + 1}] = {gm[i][j]} but h(M) there "
                        f"is {hm[i][j]}",
                        position=(i + 1, j + 1),
                        lhs=gm[i][j],
                        rhs=hm[i][j],
                    )
    serre = quotient = None
    if subset.size:
        serre = _corner(m, subset.zero_based())
        if _poly_rows(rel.g, serre.entries) != _poly_rows(rel.h, serre.entries):
            raise InternalFault("relation failed on the subset corner")
    if subset.size < subset.n:
        quotient = _corner(m.transpose(), subset.complement().zero_based())
        if _poly_rows(rel.g, quotient.entries) != _poly_rows(rel.h, quotient.entries):
            raise InternalFault("relation failed on the quotient corner")
    return DescentReport(True, serre, quotient)


# -- exact rational linear algebra for the Cartan checker --------------------

class _RationalSpan:
    """Growing basis of rational vectors kept in echelon form."""

    def __init__(self, length):
        self.length = length
        self.rows = []  # (pivot index, vector) sorted by pivot

    @property
    def dim(self):
        return len(self.rows)

    def residue(self, vec):
        vec = list(vec)
        for pivot, row in self.rows:
            c = vec[pivot]
            if c:
                for t in range(pivot, self.length):
                    vec[t] -= c * row[t]
        return vec

    def add(self, vec):
        """Insert vec if independent; True when the span grew."""
        vec = self.residue([Fraction(x) for x in vec])
        pivot = next((t for t, x in enumerate(vec) if x), None)
        if pivot is None:
            return False
        inv = 1 / vec[pivot]
        vec = [x * inv for x in vec]
        self.rows.append((pivot, vec))
        self.rows.sort(key=lambda pr: pr[0])
        return True


def _flatten(rows):
    return [x for row in rows for x in row]


def _mat_mul_frac(a, b):
    n = len(a)
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def _char_poly(rows):
    """Monic characteristic polynomial, descending integer coefficients."""
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    coeffs = [Fraction(1)]
    mk = [row[:] for row in a]
    for k in range(1, n + 1):
        ck = -sum(mk[i][i] for i in range(n)) / k
        coeffs.append(ck)
        if k < n:
            shifted = [row[:] for row in mk]
            for i in range(n):
                shifted[i][i] += ck
            mk = _mat_mul_frac(a, shifted)
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise InternalFault("characteristic polynomial came out non-integer")
        out.append(c.numerator)
    return out


def _divisors(x):
    x = abs(x)
    small, large = [], []
    d = 1
    while d * d <= x:
        if x % d == 0:
            small.append(d)
            if d != x // d:
                large.append(x // d)
        d += 1
    return small + large[::-1]


def _integer_roots(coeffs):
    cs = list(coeffs)
    roots = set()
    while len(cs) > 1 and cs[-1] == 0:
        cs.pop()
        roots.add(0)
    if len(cs) > 1:
        for d in _divisors(cs[-1]):
            for cand in (d, -d):
                acc = 0
                for c in cs:
                    acc = acc * cand + c
                if acc == 0:
                    roots.add(cand)
    return sorted(roots)


def _normalize_int_vector(vec):
    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _kernel_basis(rows):
    """Primitive integer basis of the rational kernel, deterministic order."""
    n = len(rows)
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        hit = next((i for i in range(r, n) if m[i][c]), None)
        if hit is None:
            continue
        m[r], m[hit] = m[hit], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for row_idx, c in enumerate(pivots):
            vec[c] = -m[row_idx][free]
        basis.append(_normalize_int_vector(vec))
    return basis


def _apply(rows, vec):
    return [sum(x * v for x, v in zip(row, vec)) for row in rows]


# -- the checker itself ------------------------------------------------------

@dataclass(frozen=True)
class CartanInstance:
    """Candidate Cartan matrix plus the symmetric family acting on it."""

    cartan: NatMatrix
    functors: tuple

    def __post_init__(self):
        functors = tuple(self.functors)
        if not functors:
            raise InvalidInput("the functor family must be nonempty")
        for idx, f in enumerate(functors):
            if f.n != self.cartan.n:
                raise DimensionMismatch(
                    f"functor {idx + 1} is {f.n}x{f.n} but the Cartan matrix "
                    f"is {self.cartan.n}x{self.cartan.n}"
                )
            if not f.is_symmetric():
                raise NotSymmetric(
                    f"functor {idx + 1} is not symmetric", index=idx + 1
                )
        object.__setattr__(self, "functors", functors)


@dataclass(frozen=True)
class CartanVerdict:
    """kind: pass | fail_commutation | reducible | inconsistent_input |
    inconclusive.

    pass carries the scalar; fail_commutation carries the offending functor,
    position, and both product values there; reducible carries a functor, an
    integer eigenvalue, and an integer basis of a proper invariant subspace.
    inconsistent_input would mean commutation plus a provably irreducible
    family with a non-scalar Cartan matrix, which no genuine module category
    produces; it is defensively distinct from pass.  inconclusive means the
    incomplete reducibility search found nothing either way.
    """

    kind: str
    scale: int = None
    functor: int = None
    position: tuple = None
    left: int = None
    right: int = None
    eigenvalue: int = None
    basis: tuple = None


def cartan_check(instance):
    c = instance.cartan
    n = c.n
    for idx, f in enumerate(instance.functors):
        fc = (f * c).entries
        cf = (c * f).entries
        for i in range(n):
            for j in range(n):
                if fc[i][j] != cf[i][j]:
                    return CartanVerdict(
                        "fail_commutation",
                        functor=idx + 1,
                        position=(i + 1, j + 1),
                        left=fc[i][j],
                        right=cf[i][j],
                    )
    # span of the algebra generated by the family (words in the generators,
    # with the empty word): a span of n^2 means no proper invariant subspace
    # can exist, over any field
    span = _RationalSpan(n * n)
    gens = [f.entries for f in instance.functors]
    queue = []
    for rows in [tuple(tuple(r) for r in NatMatrix.identity(n).entries)] + gens:
        if span.add(_flatten(rows)):
            queue.append(rows)
    while queue and span.dim < n * n:
        current = queue.pop(0)
        for g in gens:
            prod = tuple(
                tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*g))
                for row in current
            )
            if span.add(_flatten(prod)):
                queue.append(prod)
    if span.dim == n * n:
        scale = c.entries[0][0]
        for i in range(n):
            for j in range(n):
                want = scale if i == j else 0
                if c.entries[i][j] != want:
                    return CartanVerdict(
                        "inconsistent_input", position=(i + 1, j + 1)
                    )
        return CartanVerdict("pass", scale=scale)
    # fallback: hunt for a proper subspace invariant under the whole family,
    # grown from an integer eigenspace of one generator
    for idx, f in enumerate(instance.functors):
        for ev in _integer_roots(_char_poly(f.entries)):
            shifted = [
                [x - (ev if i == j else 0) for j, x in enumerate(row)]
                for i, row in enumerate(f.entries)
            ]
            kernel = _kernel_basis(shifted)
            if not kernel:
                continue
            sub = _RationalSpan(n)
            vec_queue = []
            for v in kernel:
                if sub.add(v):
                    vec_queue.append(v)
            while vec_queue and sub.dim < n:
                v = vec_queue.pop(0)
                for g in gens:
                    w = _apply(g, v)
                    if sub.add(w):
                        vec_queue.append(w)
            if sub.dim < n:
                basis = tuple(
                    _normalize_int_vector(row) for _, row in sub.rows
                )
                return CartanVerdict(
                    "reducible", functor=idx + 1, eigenvalue=ev, basis=basis
                )
    return CartanVerdict("inconclusive")

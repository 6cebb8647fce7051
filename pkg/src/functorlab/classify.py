"""Structure theory for symmetric solutions of one-variable matrix relations.

Symmetry (the matrix shadow of selfadjointness) makes these relations very
restrictive over the nonnegative integers:

* idempotents are diagonal 0/1 matrices, so a symmetric idempotent is the
  projection onto a subset of the indices;
* nilpotents are zero;
* M^k = M^m with k > m >= 1 forces either an idempotent (k - m odd) or a 0/1
  "partial involution": a symmetric permutation matrix on a subset of the
  indices, zero elsewhere (k - m even);
* M^e = I forces a permutation matrix, symmetric exactly when its order is
  at most 2.

The classifiers verify the claimed equation first (negative verdicts carry a
witness position), then read the forced shape off; a shape failure after a
verified equation is an internal fault, never a user error.

Note the partial-involution case reports the permutation on the support only;
distinct functors can share that shadow, so nothing finer is recovered here.
"""

from dataclasses import dataclass

from .errors import (
    InternalFault,
    InvalidInput,
    NotAPermutationMatrix,
    NotARoot,
    NotASolution,
    NotIdempotent,
    NotSymmetric,
    ShapeViolation,
)
from .zmatrix import NatMatrix, Permutation, _pow_rows


def _require_symmetric(m):
    e = m.entries
    for i in range(m.n):
        for j in range(i + 1, m.n):
            if e[i][j] != e[j][i]:
                raise NotSymmetric(
                    f"entry ({i + 1}, {j + 1}) is {e[i][j]} but "
                    f"({j + 1}, {i + 1}) is {e[j][i]}",
                    position=(i + 1, j + 1),
                )


def _first_mismatch(a, b):
    for i, (ra, rb) in enumerate(zip(a, b)):
        for j, (x, y) in enumerate(zip(ra, rb)):
            if x != y:
                return (i + 1, j + 1), x, y
    return None


def _diagonal_support(m):
    # 1-based indices carrying a diagonal 1; everything else must vanish
    e = m.entries
    support = []
    for i in range(m.n):
        if e[i][i] not in (0, 1):
            raise ShapeViolation(
                f"diagonal entry ({i + 1}, {i + 1}) = {e[i][i]} is not 0 or 1"
            )
        if e[i][i]:
            support.append(i + 1)
    for i in range(m.n):
        for j in range(m.n):
            if i != j and e[i][j]:
                raise ShapeViolation(
                    f"off-diagonal entry ({i + 1}, {j + 1}) = {e[i][j]} in a "
                    f"diagonal idempotent"
                )
    return tuple(support)


@dataclass(frozen=True)
class IdempotentClassification:
    """A symmetric idempotent: the diagonal projection onto `support`."""

    n: int
    support: tuple

    def matrix(self):
        rows = [[0] * self.n for _ in range(self.n)]
        for i in self.support:
            rows[i - 1][i - 1] = 1
        return NatMatrix(tuple(tuple(r) for r in rows))


def classify_idempotent(m):
    """Verify M symmetric with M^2 = M and return its support."""
    _require_symmetric(m)
    square = _pow_rows(m.entries, 2)
    bad = _first_mismatch(square, m.entries)
    if bad is not None:
        pos, got, want = bad
        raise NotIdempotent(
            f"(M^2)[{pos[0]}][{pos[1]}] = {got} but M there is {want}",
            position=pos,
            got=got,
            expected=want,
        )
    return IdempotentClassification(m.n, _diagonal_support(m))


@dataclass(frozen=True)
class CommutingIdempotents:
    """How two symmetric idempotents split the index set.

    both / a_only / b_only / neither partition {1..n} by which projection
    keeps the index.  Commutation is automatic for diagonal matrices; the
    product is the projection onto `both`.
    """

    n: int
    both: tuple
    a_only: tuple
    b_only: tuple
    neither: tuple
    product: NatMatrix


def check_commuting_idempotents(a, b):
    ca = classify_idempotent(a)
    cb = classify_idempotent(b)
    if a.n != b.n:
        raise InvalidInput(
            f"idempotents act on different index sets ({a.n} vs {b.n})"
        )
    ab = a * b
    if ab != b * a:
        raise InternalFault("diagonal idempotents that do not commute")
    sa, sb = set(ca.support), set(cb.support)
    both = tuple(sorted(sa & sb))
    report = CommutingIdempotents(
        n=a.n,
        both=both,
        a_only=tuple(sorted(sa - sb)),
        b_only=tuple(sorted(sb - sa)),
        neither=tuple(sorted(set(range(1, a.n + 1)) - sa - sb)),
        product=ab,
    )
    if ab != IdempotentClassification(a.n, both).matrix():
        raise InternalFault("product of diagonal idempotents is not the "
                            "projection onto the common support")
    return report


@dataclass(frozen=True)
class NilpotencyVerdict:
    """kind "zero" (the only symmetric nilpotent) or "not_nilpotent" with a
    witness entry of M^power that survived."""

    kind: str
    power: int = None
    position: tuple = None
    value: int = None


def check_nilpotent(m, k):
    """Decide M^k = 0 for symmetric M: zero matrix or a surviving witness."""
    if isinstance(k, bool) or not isinstance(k, int) or k < 1:
        raise InvalidInput(f"nilpotency degree must be a positive integer, got {k!r}")
    _require_symmetric(m)
    if m.is_zero():
        return NilpotencyVerdict("zero")
    power = _pow_rows(m.entries, k)
    for i in range(m.n):
        for j in range(m.n):
            if power[i][j]:
                return NilpotencyVerdict(
                    "not_nilpotent", power=k, position=(i + 1, j + 1),
                    value=power[i][j],
                )
    # symmetric and nonzero: the diagonal of M^2 sums squares, so no power dies
    raise InternalFault("nonzero symmetric matrix with a vanishing power")


@dataclass(frozen=True)
class CyclicClassification:
    """Shape of a symmetric solution of M^k = M^m (k > m >= 1).

    kind "idempotent": M^2 = M, diagonal projection onto support.
    kind "partial_involution": M is 0/1, zero off `support`, and permutes
    `support` by the involution whose images (1-based, aligned with the sorted
    support tuple) are in `pairing`.
    """

    kind: str
    n: int
    support: tuple
    pairing: tuple = None


def classify_cyclic(m, k, mm):
    """Classify symmetric M with M^k = M^m; parity of k - m decides the shape."""
    for name, v in (("k", k), ("m", mm)):
        if isinstance(v, bool) or not isinstance(v, int):
            raise InvalidInput(f"{name} must be an integer, got {v!r}")
    if not k > mm >= 1:
        raise InvalidInput(f"exponents must satisfy k > m >= 1, got k={k}, m={mm}")
    _require_symmetric(m)
    bad = _first_mismatch(_pow_rows(m.entries, k), _pow_rows(m.entries, mm))
    if bad is not None:
        pos, got, want = bad
        raise NotASolution(
            f"(M^{k})[{pos[0]}][{pos[1]}] = {got} but (M^{mm}) there is {want}",
            position=pos,
            got=got,
            expected=want,
        )
    if (k - mm) % 2 == 1:
        # odd gap collapses to an idempotent
        if _pow_rows(m.entries, 2) != m.entries:
            raise ShapeViolation(
                "symmetric solution with odd exponent gap is not idempotent"
            )
        return CyclicClassification("idempotent", m.n, _diagonal_support(m))
    e = m.entries
    support = [i for i in range(m.n) if any(e[i])]
    images = {}
    for i in support:
        hits = [j for j in range(m.n) if e[i][j]]
        if len(hits) != 1 or e[i][hits[0]] != 1:
            raise ShapeViolation(
                f"row {i + 1} of a partial involution is not a 0/1 permutation row"
            )
        images[i] = hits[0]
    if any(j not in images or images[images[i]] != i for i, j in images.items()):
        raise ShapeViolation("support rows do not pair up into an involution")
    return CyclicClassification(
        "partial_involution",
        m.n,
        tuple(i + 1 for i in support),
        tuple(images[i] + 1 for i in support),
    )


@dataclass(frozen=True)
class RootOfIdentity:
    """M with M^e = I: a permutation matrix of the stated order."""

    permutation: Permutation
    order: int
    selfadjoint: bool

    def matrix(self):
        return self.permutation.matrix()


def classify_root_of_identity(m, n_exp):
    """Verify M^e = I and read off the underlying permutation and its order.

    Selfadjointness (symmetry) holds exactly for orders 1 and 2; both the
    order test and the symmetry test are run and cross-checked.
    """
    if isinstance(n_exp, bool) or not isinstance(n_exp, int) or n_exp < 1:
        raise InvalidInput(f"exponent must be a positive integer, got {n_exp!r}")
    power = _pow_rows(m.entries, n_exp)
    bad = _first_mismatch(power, NatMatrix.identity(m.n).entries)
    if bad is not None:
        pos, got, want = bad
        raise NotARoot(
            f"(M^{n_exp})[{pos[0]}][{pos[1]}] = {got}, expected {want}",
            position=pos,
            got=got,
            expected=want,
            power=n_exp,
        )
    if not m.is_permutation_matrix():
        raise NotAPermutationMatrix(
            "root of the identity over nonnegative integers must be a "
            "permutation matrix; the verified equation rules this out"
        )
    sigma = m.permutation()
    order = sigma.order()
    if n_exp % order:
        raise InternalFault(f"permutation order {order} does not divide {n_exp}")
    selfadjoint = order <= 2
    if selfadjoint != m.is_symmetric():
        raise InternalFault("symmetry and order <= 2 disagree on a permutation matrix")
    return RootOfIdentity(sigma, order, selfadjoint)

import itertools
import random
from fractions import Fraction

import pytest

from functorlab import (
    CartanInstance,
    DimensionMismatch,
    DimensionTooLarge,
    EmptyComplement,
    EmptySubset,
    IndexSubset,
    InvalidInput,
    NatMatrix,
    NotInvariant,
    NotSymmetric,
    RelationNotSatisfied,
    RelationPoly,
    SearchConfig,
    cartan_check,
    invariant_subsets,
    is_invariant_subset,
    preserves_add,
    relation_descends,
    restrict_quotient,
    restrict_serre,
    solve,
)

SWAP = NatMatrix(((0, 1), (1, 0)))
BLOCK3 = NatMatrix(((1, 0, 0), (0, 0, 2), (0, 2, 0)))


def subset(n, *members):
    return IndexSubset(n, tuple(members))


def rand_matrix(rng, n, hi=3):
    return NatMatrix(
        tuple(tuple(rng.randint(0, hi) for _ in range(n)) for _ in range(n))
    )


def test_subset_basics():
    s = subset(4, 3, 1)
    assert s.members == (1, 3)
    assert s.size == 2
    assert s.complement().members == (2, 4)
    assert s.zero_based() == (0, 2)
    assert subset(2).members == ()
    with pytest.raises(InvalidInput):
        IndexSubset(0, ())
    with pytest.raises(InvalidInput):
        IndexSubset(2, (3,))
    with pytest.raises(InvalidInput):
        IndexSubset(2, (0,))
    with pytest.raises(InvalidInput):
        IndexSubset(3, (1, 1))
    with pytest.raises(InvalidInput):
        IndexSubset(3, (True,))


def test_is_invariant_examples():
    assert is_invariant_subset(BLOCK3, subset(3, 1))
    # entry (3,2) = 2 escapes the span of index 2
    assert not is_invariant_subset(BLOCK3, subset(3, 2))
    rng = random.Random(11)
    for _ in range(50):
        n = rng.randint(1, 5)
        m = rand_matrix(rng, n)
        assert is_invariant_subset(m, subset(n, *range(1, n + 1)))
        assert is_invariant_subset(m, subset(n))
    with pytest.raises(DimensionMismatch):
        is_invariant_subset(SWAP, subset(3, 1))


def test_invariant_subsets_examples():
    got = invariant_subsets(NatMatrix(((1, 0), (0, 2))))
    assert [s.members for s in got] == [(), (1,), (2,), (1, 2)]

    got = invariant_subsets(SWAP)
    assert [s.members for s in got] == [(), (1, 2)]

    got = invariant_subsets(NatMatrix(((1, 1), (0, 1))))
    assert [s.members for s in got] == [(), (1,), (1, 2)]


def test_invariant_subsets_sorted_and_capped():
    rng = random.Random(7)
    for _ in range(20):
        subs = invariant_subsets(rand_matrix(rng, rng.randint(1, 5), hi=1))
        keys = [(s.size, s.members) for s in subs]
        assert keys == sorted(keys)
        for s in subs:
            assert is_invariant_subset(rand_matrix(rng, 1), subset(1)) is not None
    with pytest.raises(DimensionTooLarge):
        invariant_subsets(NatMatrix.identity(21))


def test_restrict_serre():
    assert restrict_serre(BLOCK3, subset(3, 2, 3)).entries == ((0, 2), (2, 0))
    assert restrict_serre(NatMatrix(((5, 0), (0, 7))), subset(2, 1)).entries == ((5,),)
    with pytest.raises(NotInvariant) as err:
        restrict_serre(SWAP, subset(2, 1))
    assert err.value.details["position"] == (2, 1)
    with pytest.raises(EmptySubset):
        restrict_serre(SWAP, subset(2))


def test_restrict_quotient():
    assert restrict_quotient(BLOCK3, subset(3, 1)).entries == ((0, 2), (2, 0))
    assert restrict_quotient(NatMatrix(((1, 0), (0, 2))), subset(2, 2)).entries == (
        (1,),
    )
    with pytest.raises(EmptyComplement):
        restrict_quotient(SWAP, subset(2, 1, 2))
    with pytest.raises(NotInvariant):
        restrict_quotient(SWAP, subset(2, 2))
    # a non-symmetric check that the transpose corner really is transposed
    m = NatMatrix(((1, 2, 4), (0, 3, 0), (0, 6, 5)))
    assert is_invariant_subset(m, subset(3, 1))
    assert restrict_quotient(m, subset(3, 1)).entries == ((3, 6), (0, 5))


def test_restriction_of_symmetric_is_symmetric():
    rng = random.Random(13)
    found = 0
    while found < 200:
        n = rng.randint(2, 5)
        m = rand_matrix(rng, n, hi=1)
        m = m + m.transpose()
        for s in invariant_subsets(m):
            if 0 < s.size < n:
                assert restrict_serre(m, s).is_symmetric()
                assert restrict_quotient(m, s).is_symmetric()
                found += 1


def test_preserves_add_examples():
    assert preserves_add(SWAP, subset(2, 1, 2))
    # column 2 of the transpose is (0,1), supported inside {2}
    assert preserves_add(NatMatrix(((1, 1), (0, 1))), subset(2, 2))
    assert not preserves_add(NatMatrix(((1, 1), (0, 1))), subset(2, 1))


def test_preserves_add_duality_random():
    rng = random.Random(17)
    for _ in range(500):
        n = rng.randint(1, 5)
        m = rand_matrix(rng, n)
        members = tuple(i for i in range(1, n + 1) if rng.random() < 0.5)
        s = IndexSubset(n, members)
        assert preserves_add(m, s) == is_invariant_subset(m, s.complement())


def test_preserves_add_duality_exhaustive():
    for n in (1, 2, 3):
        cells = n * n
        masks = [
            IndexSubset(n, tuple(i + 1 for i in range(n) if mask >> i & 1))
            for mask in range(1 << n)
        ]
        for vals in itertools.product((0, 1, 2), repeat=cells):
            m = NatMatrix(
                tuple(vals[i * n : (i + 1) * n] for i in range(n))
            )
            mt = m.transpose()
            for s in masks:
                assert is_invariant_subset(mt, s) == is_invariant_subset(
                    m, s.complement()
                )
                assert preserves_add(m, s) == is_invariant_subset(mt, s)


X_SQ_EQ_4 = RelationPoly((0, 0, 1), (4,))


def test_relation_descends_examples():
    m = NatMatrix(((0, 2, 0), (2, 0, 0), (0, 0, 2)))
    rep = relation_descends(m, subset(3, 3), X_SQ_EQ_4)
    assert rep.ambient_satisfied
    assert rep.serre.entries == ((2,),)
    assert rep.quotient.entries == ((0, 2), (2, 0))

    rep = relation_descends(
        NatMatrix.identity(3), subset(3, 1, 2), RelationPoly((0, 0, 1), (1,))
    )
    assert rep.serre == NatMatrix.identity(2)
    assert rep.quotient == NatMatrix.identity(1)

    rep = relation_descends(
        NatMatrix(((1, 0), (0, 0))), subset(2, 2), RelationPoly((0, 0, 1), (0, 1))
    )
    assert rep.serre.entries == ((0,),)
    assert rep.quotient.entries == ((1,),)


def test_relation_descends_edge_subsets():
    rel = RelationPoly((0, 0, 1), (1,))
    rep = relation_descends(SWAP, subset(2), rel)
    assert rep.serre is None and rep.quotient == SWAP
    rep = relation_descends(SWAP, subset(2, 1, 2), rel)
    assert rep.serre == SWAP and rep.quotient is None


def test_relation_descends_errors():
    with pytest.raises(NotInvariant):
        relation_descends(SWAP, subset(2, 1), RelationPoly((0, 0, 1), (1,)))
    with pytest.raises(RelationNotSatisfied) as err:
        relation_descends(
            NatMatrix(((1, 0), (0, 2))), subset(2, 1), RelationPoly((0, 0, 1), (0, 1))
        )
    assert err.value.details["position"] == (2, 2)
    assert err.value.details["lhs"] == 4
    assert err.value.details["rhs"] == 2


def test_relation_descends_sweep():
    # every solver solution descends cleanly to every invariant subset
    rels = [
        RelationPoly((0, 0, 1), (1,)),
        RelationPoly((0, 0, 1), (0, 1)),
        RelationPoly((0, 0, 0, 1), (0, 1)),
        RelationPoly((0, 0, 1), (4,)),
    ]
    for rel in rels:
        for n in (1, 2, 3):
            res = solve(rel, SearchConfig(n=n, bound=2))
            for m in res.solutions:
                for s in invariant_subsets(m):
                    rep = relation_descends(m, s, rel)
                    assert rep.ambient_satisfied
                    if rep.serre is not None:
                        assert rel.satisfied_by(rep.serre)
                    if rep.quotient is not None:
                        assert rel.satisfied_by(rep.quotient)


# -- cartan checker -----------------------------------------------------------


def _rank(vectors):
    rows = [[Fraction(x) for x in v] for v in vectors]
    if not rows:
        return 0
    width = len(rows[0])
    rank = 0
    for c in range(width):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][c]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_cartan_pass():
    inst = CartanInstance(
        2 * NatMatrix.identity(2), (SWAP, NatMatrix(((1, 0), (0, 0))))
    )
    verdict = cartan_check(inst)
    assert verdict.kind == "pass"
    assert verdict.scale == 2
    assert inst.cartan == verdict.scale * NatMatrix.identity(2)
    assert cartan_check(inst) == verdict


def test_cartan_fail_commutation():
    inst = CartanInstance(NatMatrix(((2, 0), (0, 1))), (SWAP,))
    verdict = cartan_check(inst)
    assert verdict.kind == "fail_commutation"
    assert verdict.functor == 1
    assert verdict.position == (1, 2)
    assert verdict.left == 1
    assert verdict.right == 2


def test_cartan_reducible():
    inst = CartanInstance(2 * NatMatrix.identity(2), (SWAP,))
    verdict = cartan_check(inst)
    assert verdict.kind == "reducible"
    assert verdict.functor == 1
    basis = verdict.basis
    assert 0 < len(basis) < 2
    # witness really is invariant: applying each functor stays in the span
    for f in inst.functors:
        for v in basis:
            image = tuple(
                sum(f.entries[i][j] * v[j] for j in range(f.n)) for i in range(f.n)
            )
            assert _rank(basis) == _rank(list(basis) + [image])
    assert cartan_check(inst) == verdict


def test_cartan_reducible_witnesses_are_proper_invariant():
    rng = random.Random(23)
    seen = 0
    while seen < 30:
        n = rng.randint(2, 4)
        fams = []
        for _ in range(rng.randint(1, 2)):
            m = rand_matrix(rng, n, hi=1)
            fams.append(m + m.transpose())
        inst = CartanInstance(NatMatrix.identity(n), tuple(fams))
        verdict = cartan_check(inst)
        if verdict.kind != "reducible":
            continue
        seen += 1
        basis = verdict.basis
        assert 0 < len(basis) < n
        assert _rank(basis) == len(basis)
        for f in inst.functors:
            for v in basis:
                image = tuple(
                    sum(f.entries[i][j] * v[j] for j in range(n)) for i in range(n)
                )
                assert _rank(basis) == _rank(list(basis) + [image])


def test_cartan_pass_requires_scalar():
    # identity family commutes with anything; a non-scalar cartan matrix can
    # then never earn a pass
    inst = CartanInstance(NatMatrix(((2, 0), (0, 1))), (NatMatrix.identity(2),))
    verdict = cartan_check(inst)
    assert verdict.kind in ("reducible", "inconclusive")


def test_cartan_instance_validation():
    with pytest.raises(InvalidInput):
        CartanInstance(NatMatrix.identity(2), ())
    with pytest.raises(DimensionMismatch):
        CartanInstance(NatMatrix.identity(2), (NatMatrix.identity(3),))
    with pytest.raises(NotSymmetric):
        CartanInstance(NatMatrix.identity(2), (NatMatrix(((0, 1), (0, 0))),))

import itertools

import pytest

from bisets.coeq import coeq_category, compose_coeq, make_coeq_morphism
from bisets.errors import MorphismConstraintError, NotAMemberError, ObjectMismatchError
from bisets.grp import left_coset_index
from bisets.named import alternating, dihedral, symmetric
from bisets.perm import compose, from_cycles

S3 = symmetric(3)


def hom_sets(cat):
    """All morphisms, grouped by (source, target)."""
    out = {}
    for s, t in itertools.product(cat.objects, repeat=2):
        out[(s, t)] = sorted({make_coeq_morphism(cat, s, t, x) for x in cat.group.elements
                              if cat.is_valid(s, t, x)}, key=lambda f: f.element)
    return out


def coset_map(cat, f):
    G = cat.group
    src, _ = left_coset_index(G, cat.table.reps[f.source])
    _, index = left_coset_index(G, cat.table.reps[f.target])
    return tuple(index[compose(t, f.element)] for t in src)


def test_s3_examples():
    cat = coeq_category(S3)
    assert cat.size == 4
    # object 1 is the class of an order 2 subgroup; its automorphisms are trivial
    assert cat.table.reps[1].order == 2
    assert len(hom_sets(cat)[(1, 1)]) == 1
    # 0 -> 3 has exactly one morphism, 3 -> 0 none
    assert len(hom_sets(cat)[(0, 3)]) == 1
    assert hom_sets(cat)[(3, 0)] == []
    # free object: End(0) is the group
    assert len(hom_sets(cat)[(0, 0)]) == 6


def test_constraint_violation():
    cat = coeq_category(S3)
    with pytest.raises(MorphismConstraintError):
        make_coeq_morphism(cat, 3, 0, S3.identity)
    with pytest.raises(NotAMemberError):
        make_coeq_morphism(cat, 0, 0, (0, 1, 2, 3))
    with pytest.raises(ObjectMismatchError):
        compose_coeq(cat.identity(0), cat.identity(1))


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4), alternating(4)])
def test_hom_counts_are_marks(G):
    cat = coeq_category(G)
    homs = hom_sets(cat)
    for (s, t), fs in homs.items():
        assert len(fs) == cat.table.marks[t][s]


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4)])
def test_morphisms_are_distinct_equivariant_maps(G):
    cat = coeq_category(G)
    for (s, t), fs in hom_sets(cat).items():
        maps = [coset_map(cat, f) for f in fs]
        assert len(set(maps)) == len(maps)
        # composition of morphisms is composition of maps
        for u in cat.objects:
            for f in fs:
                for g in hom_sets(cat)[(t, u)]:
                    fg = f * g
                    assert coset_map(cat, fg) == tuple(coset_map(cat, g)[k] for k in coset_map(cat, f))


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4)])
def test_every_morphism_is_epi(G):
    cat = coeq_category(G)
    homs = hom_sets(cat)
    for (s, t), fs in homs.items():
        for u in cat.objects:
            gs = homs[(t, u)]
            for f in fs:
                composites = [f * g for g in gs]
                assert len(set(composites)) == len(gs)


def test_category_laws():
    cat = coeq_category(dihedral(4))
    homs = hom_sets(cat)
    for (s, t), fs in homs.items():
        for f in fs:
            assert cat.identity(s) * f == f == f * cat.identity(t)
            for u in cat.objects:
                for g in homs[(t, u)][:3]:
                    for v in cat.objects:
                        for h in homs[(u, v)][:3]:
                            assert (f * g) * h == f * (g * h)


def test_embedding_is_multiplicative_and_injective():
    cat = coeq_category(S3)
    images = {x: cat.embed(x) for x in S3.elements}
    assert len(set(images.values())) == 6
    for x, y in itertools.product(S3.elements, repeat=2):
        assert images[x] * images[y] == cat.embed(compose(x, y))


def test_canonical_representative():
    cat = coeq_category(S3)
    x = from_cycles(3, (1, 2))
    f = make_coeq_morphism(cat, 0, 1, x)
    U = cat.table.reps[1]
    assert f.element == min(compose(x, u) for u in U)

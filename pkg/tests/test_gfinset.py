import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bisets.coeq import coeq_category
from bisets.errors import MorphismConstraintError, NotCoequalizingError, ObjectMismatchError
from bisets.gfinset import (
    GObject,
    WreathAutomorphism,
    coequalizer_of_automorphisms,
    coequalizes,
    colift_along_coequalizer,
    compose_gmorphisms,
    coproduct,
    identity_gmorphism,
    make_gmorphism,
    product_object_via_marks,
    terminal_object,
    transitive_object,
    wreath_from_gmorphism,
)
from bisets.named import alternating, dihedral, symmetric
from bisets.oracle import ExplicitGSet, explicit_coequalizer, explicit_product
from bisets.perm import from_cycles
from randbisets import GROUPS, random_object, random_wreath

S3 = symmetric(3)
CAT = coeq_category(S3)
ONE = S3.identity
T01 = from_cycles(3, (0, 1))

seeds = st.integers(0, 2**32 - 1)


def obj(*m, cat=CAT):
    return GObject(cat, m)


def test_coproduct_and_injections():
    a, b = obj(1, 0, 0, 0), obj(1, 0, 0, 1)
    s, ia, ib = coproduct(a, b)
    assert s.multiplicities == (2, 0, 0, 1)
    assert ia.data[0] == ((0, 0, ONE),)
    assert ib.data[0] == ((0, 1, ONE),)
    assert ib.data[3] == ((3, 0, ONE),)
    assert s.cardinality() == 6 + 6 + 1


def test_make_gmorphism_validates():
    with pytest.raises(MorphismConstraintError):
        make_gmorphism(obj(0, 0, 0, 1), obj(1, 0, 0, 0), [[], [], [], [(0, 0, ONE)]])
    with pytest.raises(ObjectMismatchError):
        make_gmorphism(obj(1, 0, 0, 0), obj(0, 1, 0, 0), [[(1, 1, ONE)], [], [], []])
    # U_1 = <(1 2)>, so (1 2) is stored as the identity and (0 1) as itself
    f = make_gmorphism(obj(1, 0, 0, 0), obj(0, 1, 0, 0), [[(1, 0, from_cycles(3, (1, 2)))], [], [], []])
    assert f.data[0][0][2] == ONE
    g = make_gmorphism(obj(1, 0, 0, 0), obj(0, 1, 0, 0), [[(1, 0, T01)], [], [], []])
    assert g.data[0][0][2] == T01
    assert f.is_epi()


def test_identity_law():
    a = obj(2, 1, 0, 1)
    f = make_gmorphism(a, obj(0, 1, 1, 1), [[(1, 0, ONE), (3, 0, ONE)], [(1, 0, ONE)], [], [(3, 0, ONE)]])
    assert compose_gmorphisms(identity_gmorphism(a), f) == f
    assert compose_gmorphisms(f, identity_gmorphism(f.target)) == f


@settings(max_examples=40, deadline=None)
@given(seeds, st.sampled_from(["S3", "D8", "A4"]))
def test_wreath_product_matches_morphism_composition(seed, name):
    rng = random.Random(seed)
    o = random_object(rng, GROUPS[name])
    a, b, c = (random_wreath(rng, o) for _ in range(3))
    assert (a * b).to_gmorphism() == compose_gmorphisms(a.to_gmorphism(), b.to_gmorphism())
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity() and (a.inverse() * a).is_identity()
    assert wreath_from_gmorphism(a.to_gmorphism()) == a
    X = ExplicitGSet(o)
    assert X.is_equivariant(X.point_map(a.to_gmorphism(), X), X)


def test_wreath_rejects_non_normalizing():
    o = obj(0, 1, 0, 0)
    with pytest.raises(MorphismConstraintError):
        WreathAutomorphism(o, [((), ()), ((from_cycles(3, (0, 1, 2)),), (0,)), ((), ()), ((), ())])


def test_coequalizer_free_orbit_by_transposition():
    o = obj(1, 0, 0, 0)
    a = WreathAutomorphism(o, [((T01,), (0,)), ((), ()), ((), ()), ((), ())])
    q = coequalizer_of_automorphisms(o, [a])
    assert q.target.multiplicities == (0, 1, 0, 0)
    assert q.orbits[0].stabilizer.order == 2
    assert coequalizes(q.projection, [a])
    assert q.projection.is_epi()


def test_coequalizer_swapping_free_copies():
    o = obj(2, 0, 0, 0)
    a = WreathAutomorphism(o, [((ONE, ONE), (1, 0)), ((), ()), ((), ()), ((), ())])
    q = coequalizer_of_automorphisms(o, [a])
    assert q.target.multiplicities == (1, 0, 0, 0)
    assert [x for _, _, x in q.projection.data[0]] == [ONE, ONE]


def test_coequalizer_of_nothing_is_identity():
    o = obj(1, 2, 0, 1)
    q = coequalizer_of_automorphisms(o, [])
    assert q.target == o
    assert q.projection == identity_gmorphism(o)


def test_self_normalizing_class():
    # the order 2 subgroups of S3 are self-normalizing: any automorphism only permutes copies
    o = obj(0, 3, 0, 0)
    a = WreathAutomorphism(o, [((), ()), ((ONE, ONE, ONE), (1, 2, 0)), ((), ()), ((), ())])
    q = coequalizer_of_automorphisms(o, [a])
    assert q.target.multiplicities == (0, 1, 0, 0)
    rec, = q.orbits
    assert rec.stabilizer == CAT.table.reps[1]
    assert all(x == ONE for _, _, x in q.projection.data[1])


def test_colift_example():
    o = obj(1, 0, 0, 0)
    a = WreathAutomorphism(o, [((T01,), (0,)), ((), ()), ((), ()), ((), ())])
    q = coequalizer_of_automorphisms(o, [a])
    term = terminal_object(CAT)
    mu = make_gmorphism(o, term, [[(3, 0, ONE)], [], [], []])
    u = colift_along_coequalizer(q, mu)
    assert compose_gmorphisms(q.projection, u) == mu
    # the identity of the free orbit does not coequalize a
    with pytest.raises(NotCoequalizingError):
        colift_along_coequalizer(q, identity_gmorphism(o))


@settings(max_examples=60, deadline=None)
@given(seeds, st.sampled_from(["S3", "D8", "A4"]))
def test_coequalizer_matches_point_quotient(seed, name):
    rng = random.Random(seed)
    G = GROUPS[name]
    o = random_object(rng, G)
    autos = [random_wreath(rng, o) for _ in range(rng.randint(1, 3))]
    q = coequalizer_of_automorphisms(o, autos)
    assert q.target.multiplicities == explicit_coequalizer(o, autos)
    assert coequalizes(q.projection, autos)
    assert q.projection.is_epi()


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4), alternating(4)])
def test_products_of_transitive_objects(G):
    cat = coeq_category(G)
    for c in cat.objects:
        for d in cat.objects:
            a, b = transitive_object(cat, c), transitive_object(cat, d)
            assert product_object_via_marks(a, b).multiplicities == explicit_product(a, b)


def test_product_examples():
    free = obj(1, 0, 0, 0)
    assert product_object_via_marks(free, free).multiplicities == (6, 0, 0, 0)
    assert product_object_via_marks(obj(0, 1, 0, 0), obj(0, 0, 1, 0)).multiplicities == (1, 0, 0, 0)
    assert product_object_via_marks(obj(0, 0, 0, 1), obj(0, 1, 0, 0)).multiplicities == (0, 1, 0, 0)

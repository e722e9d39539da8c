import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bisets.biset import (
    ActionPair,
    Lift,
    biset_coproduct,
    bisets_isomorphic,
    decompose_transitive,
    deflation,
    elementary_biset,
    empty_biset,
    from_subgroup,
    goursat_bouc,
    goursat_data,
    goursat_reconstruct,
    compose_all,
    identity_biset,
    induction,
    inflation,
    isomorphism,
    kleisli_compose,
    lift_object,
    mackey_lhs,
    mackey_rhs,
    restriction,
    to_subgroup,
    transitive_classes,
)
from bisets.coeq import coeq_category
from bisets.errors import GroupMismatchError, NotAHomomorphismError, NotTransitiveError, ObjectMismatchError
from bisets.gfinset import compose_gmorphisms, identity_gmorphism
from bisets.grp import GroupHom, Subgroup, all_subgroup_classes, all_subgroups, are_conjugate, direct_product
from bisets.named import cyclic, dihedral, klein_four, symmetric
from bisets.oracle import explicit_from_pair, explicit_from_subgroup, explicit_isomorphic, naive_compose
from bisets.perm import from_cycles
from randbisets import COMPOSE_GROUPS, GROUPS, random_biset

S3 = symmetric(3)
C2 = cyclic(2)
T01 = from_cycles(3, (0, 1))
R012 = from_cycles(3, (0, 1, 2))
ONE = S3.identity
EMPTY = ((), ())

seeds = st.integers(0, 2**32 - 1)


def test_identity_biset_is_valid_free_orbit():
    X = identity_biset(S3)
    assert X.multiplicities == (1, 0, 0, 0)
    assert X.size() == 6
    assert X.is_transitive()


def test_validation_rejects_non_action():
    V = klein_four()
    # both generators of C2 x C2 sent to the same 3-cycle on three free copies: not of order 2
    obj = (3, 0, 0, 0)
    bad = [[((ONE,) * 3, (1, 2, 0)), EMPTY, EMPTY, EMPTY]] * 2
    with pytest.raises(NotAHomomorphismError):
        ActionPair(V, S3, obj, bad)


def test_validation_rejects_wrong_shapes():
    with pytest.raises(ObjectMismatchError):
        ActionPair(C2, S3, (1, 0, 0, 0), [])
    with pytest.raises(ObjectMismatchError):
        ActionPair(C2, S3, (1, 0, 0, 0), [[((ONE, ONE), (0, 1)), EMPTY, EMPTY, EMPTY]])


def test_from_subgroup_examples():
    P = direct_product(S3, S3)
    diagonal = P.subgroup((g, g) for g in S3.generators)
    assert bisets_isomorphic(from_subgroup(S3, S3, diagonal), identity_biset(S3))
    whole = Subgroup.whole(P.group)
    X = from_subgroup(S3, S3, whole)
    assert X.multiplicities == (0, 0, 0, 1)
    # the diagonal of a transposition: K1 is trivial, three free copies
    D = P.subgroup([(T01, T01)])
    X = from_subgroup(S3, S3, D)
    assert X.multiplicities == (3, 0, 0, 0)
    assert X.size() == 18
    assert explicit_isomorphic(explicit_from_pair(X), explicit_from_subgroup(S3, S3, D))


@pytest.mark.parametrize("H, G", [(S3, C2), (C2, S3), (dihedral(4), C2)])
def test_subgroup_roundtrip(H, G):
    P = direct_product(H, G)
    for D in all_subgroups(P.group):
        X = from_subgroup(H, G, D)
        assert X.is_transitive()
        assert X.size() == P.group.order // D.order
        assert are_conjugate(P.group, to_subgroup(X), D)


def test_to_subgroup_needs_transitive():
    X = biset_coproduct(identity_biset(S3), identity_biset(S3))
    with pytest.raises(NotTransitiveError):
        to_subgroup(X)


def test_decompose_and_sum():
    X = biset_coproduct(identity_biset(S3), identity_biset(S3))
    pieces = decompose_transitive(X)
    assert len(pieces) == 2
    assert all(bisets_isomorphic(p, identity_biset(S3)) for p in pieces)
    assert decompose_transitive(empty_biset(S3, S3)) == []


def test_lift_object_of_free_orbit_under_restriction():
    # lifting at the free object changes nothing; at the whole group everything collapses to one orbit
    U = Subgroup(S3, [T01])
    Y = restriction(S3, U)  # S3 -> U
    q = lift_object(Y, 0)
    assert q.target.multiplicities == Y.multiplicities
    q = lift_object(Y, all_subgroup_classes(S3).size - 1)
    assert sum(q.target.multiplicities) == 1


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_lift_is_functorial(seed):
    rng = random.Random(seed)
    H = GROUPS[rng.choice(["S3", "D8", "C2xC2"])]
    K = GROUPS[rng.choice(COMPOSE_GROUPS)]
    Y = random_biset(rng, H, K, max_size=3)
    lift = Lift(Y)
    cat = coeq_category(H)
    homs = [cat.morphism(s, t, x) for s in cat.objects for t in cat.objects for x in H.elements
            if cat.is_valid(s, t, x)]
    for c in cat.objects:
        assert lift.morphism(cat.identity(c)) == identity_gmorphism(lift.object(c).target)
    for _ in range(10):
        f = rng.choice(homs)
        g = rng.choice([h for h in homs if h.source == f.target])
        assert lift.morphism(f * g) == compose_gmorphisms(lift.morphism(f), lift.morphism(g))


def test_kleisli_examples():
    X = identity_biset(S3)
    assert bisets_isomorphic(kleisli_compose(X, X), X)
    E = empty_biset(S3, C2)
    assert kleisli_compose(identity_biset(S3), E).size() == 0
    with pytest.raises(GroupMismatchError):
        kleisli_compose(identity_biset(S3), identity_biset(C2))


def test_res_of_ind_is_double_cosets():
    U = Subgroup(S3, [T01])
    lhs = mackey_lhs(S3, U, U)
    assert len(decompose_transitive(lhs)) == 2
    assert lhs.size() == 6


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_kleisli_agrees_with_oracle(seed):
    rng = random.Random(seed)
    G, H, K = (GROUPS[rng.choice(COMPOSE_GROUPS)] for _ in range(3))
    X, Y = random_biset(rng, G, H), random_biset(rng, H, K)
    Z = kleisli_compose(X, Y)
    B = naive_compose(explicit_from_pair(Y), explicit_from_pair(X))
    assert explicit_isomorphic(explicit_from_pair(Z), B)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_composition_distributes_over_sums(seed):
    rng = random.Random(seed)
    G, H, K = (GROUPS[rng.choice(["C2", "S3", "C2xC2", "C4"])] for _ in range(3))
    X1, X2 = random_biset(rng, G, H, 2), random_biset(rng, G, H, 2)
    Y = random_biset(rng, H, K, 2)
    lhs = kleisli_compose(biset_coproduct(X1, X2), Y)
    rhs = biset_coproduct(kleisli_compose(X1, Y), kleisli_compose(X2, Y))
    assert bisets_isomorphic(lhs, rhs)


def test_elementary_sizes():
    U = Subgroup(S3, [T01])
    A3 = Subgroup(S3, [R012])
    assert induction(S3, U).size() == 6 and induction(S3, U).multiplicities == (1, 0, 0, 0)
    assert restriction(S3, U).size() == 6
    assert inflation(S3, A3).size() == 2
    assert deflation(S3, A3).size() == 2
    assert elementary_biset("res", S3, U).multiplicities == restriction(S3, U).multiplicities
    with pytest.raises(ValueError):
        elementary_biset("twist", S3)


def test_iso_of_automorphism():
    conj = GroupHom(S3, S3, [from_cycles(3, (1, 2)), R012])
    X = isomorphism(conj)
    assert X.size() == 6 and X.is_transitive()
    with pytest.raises(NotAHomomorphismError):
        isomorphism(GroupHom(S3, C2, [(1, 0), (0, 1)]))


def test_ind_res_inverse_on_trivial_subgroup():
    # Res^G_1 o Ind^G_1 has |G| summands
    triv = Subgroup.trivial(S3)
    Z = kleisli_compose(induction(S3, triv), restriction(S3, triv))
    assert len(decompose_transitive(Z)) == 6


def test_goursat_of_diagonal():
    P = direct_product(S3, S3)
    D = P.subgroup((g, g) for g in S3.generators)
    data, steps = goursat_bouc(S3, S3, D)
    assert data.P1.order == data.P2.order == 6
    assert data.K1.order == data.K2.order == 1
    assert goursat_reconstruct(data) == D
    assert bisets_isomorphic(compose_all(steps), identity_biset(S3))


def test_goursat_of_full_product():
    P = direct_product(S3, C2)
    data = goursat_data(S3, C2, Subgroup.whole(P.group))
    assert data.K1.order == 6 and data.K2.order == 2
    assert data.Q1.group.order == 1


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4)])
def test_mackey_all_pairs(G):
    reps = all_subgroup_classes(G).reps
    for U in reps:
        for V in reps:
            lhs = transitive_classes(mackey_lhs(G, U, V))
            rhs = sorted(k for X in mackey_rhs(G, U, V) for k in transitive_classes(X))
            assert lhs == rhs


def test_isomorphism_distinguishes():
    P = direct_product(S3, S3)
    a = from_subgroup(S3, S3, P.subgroup([(T01, T01)]))
    b = from_subgroup(S3, S3, P.subgroup([(T01, ONE)]))
    assert a.size() == b.size()
    assert not bisets_isomorphic(a, b)
    with pytest.raises(GroupMismatchError):
        bisets_isomorphic(a, identity_biset(C2))

"""
Bisets as action pairs.

An (H, G)-biset is stored as a left H-set ``obj`` (multiplicities over the
subgroup classes of H) together with one automorphism of ``obj`` per
generator of G, describing the right action of that generator.  Composition
lifts the second biset along H -> Coeq(H) -> H-FinSet with coequalizers of
automorphisms and applies the lift to the first.
"""
from __future__ import annotations

import operator
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Sequence

from .coeq import CoeqMorphism, coeq_category
from .errors import (
    GroupMismatchError,
    NotAHomomorphismError,
    NotASubgroupError,
    NotTransitiveError,
    ObjectMismatchError,
)
from .gfinset import (
    Coequalizer,
    GMorphism,
    GObject,
    WreathAutomorphism,
    coequalizer_of_automorphisms,
    colift_along_coequalizer,
    compose_gmorphisms,
)
from .grp import (
    GroupHom,
    QuotientGroup,
    Subgroup,
    _cayley_table,
    are_conjugate,
    as_subgroup,
    conjugacy_key,
    conjugate_set,
    direct_product,
    double_coset_reps,
    generating_set,
    left_coset_index,
    quotient_group,
)
from .perm import Perm, PermGroup, compose, evaluate_word, factor_element, inverse, is_identity, orbit_with_words


def _wreath_inverse(w: WreathAutomorphism) -> WreathAutomorphism:
    return w.inverse()


class ActionPair:
    """A biset ``G -> H``: an object of H-FinSet plus one automorphism per generator of G.

    ``autos[a]`` is the right action of ``source.generators[a]``.  Equality
    of action pairs is not structural; use :func:`bisets_isomorphic`.
    """

    def __init__(self, source: PermGroup, target: PermGroup, multiplicities: Sequence[int],
                 autos: Sequence, *, validate: bool = True):
        self.source = source
        self.target = target
        self.category = coeq_category(target)
        self.obj = GObject(self.category, tuple(multiplicities))
        if len(autos) != len(source.generators):
            raise ObjectMismatchError(
                f"{len(autos)} automorphisms given for {len(source.generators)} source generators"
            )
        out = []
        for a in autos:
            if isinstance(a, WreathAutomorphism):
                if a.obj != self.obj:
                    raise ObjectMismatchError("automorphism of a different object")
                out.append(a)
            else:
                out.append(WreathAutomorphism(self.obj, a))
        self.autos = tuple(out)
        if validate:
            self.validate()

    def __repr__(self):
        return (f"ActionPair(source_order={self.source.order}, target_order={self.target.order}, "
                f"multiplicities={self.obj.multiplicities})")

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return self.obj.multiplicities

    @cached_property
    def chi_table(self) -> dict:
        """Every element of the source mapped to its automorphism."""
        return _cayley_table(self.source, self.autos, operator.mul, WreathAutomorphism.identity(self.obj))

    def validate(self) -> "ActionPair":
        self.chi_table
        return self

    def chi(self, g: Perm) -> WreathAutomorphism:
        return self.chi_table[tuple(g)]

    def chi_by_word(self, g: Perm) -> WreathAutomorphism:
        """Automorphism of ``g`` from its factorization through the stabilizer chain."""
        return evaluate_word(factor_element(self.source, g), self.autos, mul=operator.mul,
                             inv=_wreath_inverse, one=WreathAutomorphism.identity(self.obj))

    def size(self) -> int:
        return self.obj.cardinality()

    def is_transitive(self) -> bool:
        return len(decompose_transitive(self)) == 1

    def with_autos(self, autos) -> "ActionPair":
        return ActionPair(self.source, self.target, self.multiplicities, autos)


def validate_action_pair(X: ActionPair) -> ActionPair:
    return X.validate()


def empty_biset(G: PermGroup, H: PermGroup) -> ActionPair:
    cat = coeq_category(H)
    obj = GObject(cat, (0,) * cat.size)
    return ActionPair(G, H, obj.multiplicities, [WreathAutomorphism.identity(obj)] * len(G.generators))


def identity_biset(G: PermGroup) -> ActionPair:
    """G acting on itself on both sides: one free orbit, generators act by right multiplication."""
    cat = coeq_category(G)
    m = [0] * cat.size
    m[0] = 1
    empty = ((), ())
    autos = [[((g,), (0,))] + [empty] * (cat.size - 1) for g in G.generators]
    return ActionPair(G, G, m, autos)


# -- subgroups of H x G ------------------------------------------------------------

def from_subgroup(H: PermGroup, G: PermGroup, D) -> ActionPair:
    """The transitive biset ``(H x G)/D`` as an action pair.

    ``D`` is a :class:`Subgroup` of ``direct_product(H, G).group`` or a list
    of generators in that group.
    """
    P = direct_product(H, G)
    D = as_subgroup(P.group, D)
    one_g = G.identity
    first_of: dict = {}
    K1 = []
    P2 = set()
    for d in D.sorted_elements:
        h, g = P.components(d)
        P2.add(g)
        first_of.setdefault(g, h)
        if g == one_g:
            K1.append(h)
    P2 = Subgroup.from_elements(G, P2, check=False)
    K1 = Subgroup.from_elements(H, K1, check=False)
    reps, index = left_coset_index(G, P2)
    table = coeq_category(H).table
    c, x = table.class_of(K1)
    h = inverse(x)  # h K1 h^-1 = U_c
    hi = x
    m = len(reps)
    autos = []
    for ga in G.generators:
        gai = inverse(ga)
        sigma = []
        nus = []
        for t in reps:
            y = compose(gai, t)
            j = index[y]
            sigma.append(j)
            g_ai = compose(inverse(reps[j]), y)
            h_ai = first_of[g_ai]
            nus.append(compose(compose(h, inverse(h_ai)), hi))
        parts = [((), ())] * table.size
        parts[c] = (nus, sigma)
        autos.append(parts)
    mult = [0] * table.size
    mult[c] = m
    return ActionPair(G, H, mult, autos)


def to_subgroup(X: ActionPair) -> Subgroup:
    """Stabilizer in ``H x G`` of the base coset of copy 0, for a transitive biset."""
    support = [c for c, m in enumerate(X.multiplicities) if m]
    if len(support) != 1:
        raise NotTransitiveError("biset is not transitive")
    c = support[0]
    m = X.multiplicities[c]
    sigmas = [a.parts[c][1] for a in X.autos]
    od = orbit_with_words(sigmas, 0, degree=m)
    if len(od.orbit) != m:
        raise NotTransitiveError("biset is not transitive")
    G, H = X.source, X.target
    P = direct_product(H, G)
    Uc = X.category.table.reps[c]
    gens = [P.embed_left(u) for u in Uc.generators]
    seen = set()
    for w in od.schreier:
        g = evaluate_word(w, G.generators)
        if is_identity(g) or g in seen:
            continue
        seen.add(g)
        phi = X.chi_by_word(g).parts[c][0][0]
        gens.append(P.pair(phi, g))
    return Subgroup(P.group, gens, check=False)


def decompose_transitive(X: ActionPair) -> list[ActionPair]:
    """Split by class, then by orbits of the copy permutations; copies relabelled in increasing order."""
    pieces = []
    size = X.category.size
    for c, m in enumerate(X.multiplicities):
        if m == 0:
            continue
        sigmas = [a.parts[c][1] for a in X.autos]
        seen: set[int] = set()
        for b in range(m):
            if b in seen:
                continue
            orbit = sorted(orbit_with_words(sigmas, b, degree=m).orbit)
            seen.update(orbit)
            relabel = {p: k for k, p in enumerate(orbit)}
            autos = []
            for a in X.autos:
                nus, sig = a.parts[c]
                parts = [((), ())] * size
                parts[c] = (tuple(nus[p] for p in orbit), tuple(relabel[sig[p]] for p in orbit))
                autos.append(parts)
            mult = [0] * size
            mult[c] = len(orbit)
            pieces.append(ActionPair(X.source, X.target, mult, autos, validate=False))
    return pieces


def _check_parallel(X: ActionPair, Y: ActionPair) -> None:
    if X.source != Y.source or X.target != Y.target:
        raise GroupMismatchError("bisets have different source or target groups")


def biset_coproduct(X: ActionPair, Y: ActionPair) -> ActionPair:
    _check_parallel(X, Y)
    mult = [a + b for a, b in zip(X.multiplicities, Y.multiplicities)]
    autos = []
    for ax, ay in zip(X.autos, Y.autos):
        parts = []
        for c, ((nx, sx), (ny, sy)) in enumerate(zip(ax.parts, ay.parts)):
            shift = X.multiplicities[c]
            parts.append((nx + ny, tuple(sx) + tuple(s + shift for s in sy)))
        autos.append(parts)
    return ActionPair(X.source, X.target, mult, autos, validate=False)


def biset_sum(pieces: Sequence[ActionPair]) -> ActionPair:
    return reduce(biset_coproduct, pieces)


# -- composition ---------------------------------------------------------------------

class Lift:
    """Extension of a biset ``Y: H -> K`` to Coeq(H) -> K-FinSet, cached per object and morphism."""

    def __init__(self, Y: ActionPair):
        self.Y = Y
        self._objects: dict[int, Coequalizer] = {}
        self._morphisms: dict = {}

    def object(self, c: int) -> Coequalizer:
        if c not in self._objects:
            self._objects[c] = lift_object(self.Y, c)
        return self._objects[c]

    def morphism(self, f: CoeqMorphism) -> GMorphism:
        key = (f.source, f.target, f.element)
        if key not in self._morphisms:
            src, tgt = self.object(f.source), self.object(f.target)
            mu = compose_gmorphisms(self.Y.chi(f.element).to_gmorphism(), tgt.projection)
            self._morphisms[key] = colift_along_coequalizer(src, mu)
        return self._morphisms[key]


def lift_object(Y: ActionPair, c: int) -> Coequalizer:
    """Coequalizer of ``Y(u)`` over generators ``u`` of the c-th class representative of H."""
    U = coeq_category(Y.source).table.reps[c]
    autos = [Y.chi_by_word(u) for u in U.generators]
    return coequalizer_of_automorphisms(Y.obj, autos)


def lift_morphism(Y: ActionPair, f: CoeqMorphism, lift: Lift | None = None) -> GMorphism:
    return (lift or Lift(Y)).morphism(f)


def kleisli_compose(X: ActionPair, Y: ActionPair) -> ActionPair:
    """The composite ``Y o X`` of ``X: G -> H`` and ``Y: H -> K`` as a biset ``G -> K``."""
    if X.target != Y.source:
        raise GroupMismatchError("the target of the first biset is not the source of the second")
    G, H, K = X.source, X.target, Y.target
    hcat = X.category
    kcat = Y.category
    lift = Lift(Y)
    # block (c, i) of the result is a copy of T_c = lift(c)
    offsets: dict = {}
    counts = [0] * kcat.size
    for c, m in enumerate(X.multiplicities):
        if m == 0:
            continue
        T = lift.object(c).target
        for i in range(m):
            offsets[(c, i)] = tuple(counts)
            counts = [a + b for a, b in zip(counts, T.multiplicities)]
    autos = []
    for a in X.autos:
        nus_out = [[None] * n for n in counts]
        sig_out = [[None] * n for n in counts]
        for c, (nus, sig) in enumerate(a.parts):
            for i in range(len(sig)):
                j = sig[i]
                L = lift.morphism(CoeqMorphism(c, c, nus[i], hcat))
                src_off, dst_off = offsets[(c, i)], offsets[(c, j)]
                for e, row in enumerate(L.data):
                    for k, (e2, k2, y) in enumerate(row):
                        if e2 != e:
                            raise ObjectMismatchError("lifted automorphism does not preserve classes")
                        sig_out[e][src_off[e] + k] = dst_off[e] + k2
                        nus_out[e][src_off[e] + k] = y
        autos.append([(tuple(n), tuple(s)) for n, s in zip(nus_out, sig_out)])
    return ActionPair(G, K, counts, autos)


# -- elementary bisets ------------------------------------------------------------------

def induction(G: PermGroup, U) -> ActionPair:
    """``Ind_U^G``: G as a (G, U)-biset."""
    U = as_subgroup(G, U)
    S = U.group
    P = direct_product(G, S)
    return from_subgroup(G, S, P.subgroup((u, u) for u in S.generators))


def restriction(G: PermGroup, U) -> ActionPair:
    """``Res_U^G``: G as a (U, G)-biset."""
    U = as_subgroup(G, U)
    S = U.group
    P = direct_product(S, G)
    return from_subgroup(S, G, P.subgroup((u, u) for u in S.generators))


def inflation(G: PermGroup, N) -> ActionPair:
    """``Inf_{G/N}^G``: G/N as a (G, G/N)-biset."""
    Q = quotient_group(G, N)
    P = direct_product(G, Q.group)
    return from_subgroup(G, Q.group, P.subgroup((g, Q.projection(g)) for g in G.generators))


def deflation(G: PermGroup, N) -> ActionPair:
    """``Def_{G/N}^G``: G/N as a (G/N, G)-biset."""
    Q = quotient_group(G, N)
    P = direct_product(Q.group, G)
    return from_subgroup(Q.group, G, P.subgroup((Q.projection(g), g) for g in G.generators))


def isomorphism(phi: GroupHom) -> ActionPair:
    """``Iso(phi)`` for an isomorphism ``phi: G' -> G``: G with G' acting on the right through phi."""
    if not phi.is_bijective():
        raise NotAHomomorphismError("Iso needs a bijective homomorphism")
    P = direct_product(phi.target, phi.source)
    return from_subgroup(phi.target, phi.source, P.subgroup((phi(g), g) for g in phi.source.generators))


_ELEMENTARY = {
    "ind": induction,
    "res": restriction,
    "inf": inflation,
    "def": deflation,
    "iso": isomorphism,
}


def elementary_biset(kind: str, *args) -> ActionPair:
    try:
        build = _ELEMENTARY[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown elementary biset {kind!r}; expected one of {sorted(_ELEMENTARY)}") from None
    return build(*args)


# -- Goursat-Bouc --------------------------------------------------------------------

@dataclass
class GoursatData:
    H: PermGroup
    G: PermGroup
    P1: Subgroup
    K1: Subgroup
    P2: Subgroup
    K2: Subgroup
    Q1: QuotientGroup  # P1/K1
    Q2: QuotientGroup  # P2/K2
    iso: GroupHom  # P2/K2 -> P1/K1

    def to_json(self) -> dict:
        def gens(U):
            return [list(g) for g in U.generators]

        return {
            "P1": gens(self.P1), "K1": gens(self.K1), "P2": gens(self.P2), "K2": gens(self.K2),
            "quotient_source": [list(g) for g in self.Q2.group.generators],
            "quotient_target": [list(g) for g in self.Q1.group.generators],
            "iso_images": [list(y) for y in self.iso.images],
        }


def goursat_data(H: PermGroup, G: PermGroup, D) -> GoursatData:
    P = direct_product(H, G)
    D = as_subgroup(P.group, D)
    pairs = [P.components(d) for d in D.sorted_elements]
    P1 = Subgroup.from_elements(H, {h for h, _ in pairs}, check=False)
    P2 = Subgroup.from_elements(G, {g for _, g in pairs}, check=False)
    K1 = Subgroup.from_elements(H, {h for h, g in pairs if is_identity(g)}, check=False)
    K2 = Subgroup.from_elements(G, {g for h, g in pairs if is_identity(h)}, check=False)
    P1g, P2g = P1.group, P2.group
    Q1 = quotient_group(P1g, K1.in_group(P1g))
    Q2 = quotient_group(P2g, K2.in_group(P2g))
    first_of = {}
    for h, g in pairs:
        first_of.setdefault(g, h)
    images = [Q1.projection(first_of[g]) for g in P2g.generators]
    iso = GroupHom(Q2.group, Q1.group, images)
    for h, g in pairs:
        if iso(Q2.projection(g)) != Q1.projection(h):
            raise NotASubgroupError("Goursat isomorphism is not well defined")
    if not iso.is_bijective():
        raise NotAHomomorphismError("Goursat map is not an isomorphism")
    return GoursatData(H, G, P1, K1, P2, K2, Q1, Q2, iso)


def goursat_reconstruct(data: GoursatData) -> Subgroup:
    """``{(h, g) in P1 x P2 : h K1 = iso(g K2)}`` as a subgroup of ``H x G``."""
    P = direct_product(data.H, data.G)
    elems = []
    for g in data.P2.sorted_elements:
        target = data.iso(data.Q2.projection(g))
        for h in data.P1.sorted_elements:
            if data.Q1.projection(h) == target:
                elems.append(P.pair(h, g))
    return Subgroup.from_elements(P.group, elems, check=False)


def goursat_bouc(H: PermGroup, G: PermGroup, D) -> tuple[GoursatData, list[ActionPair]]:
    """Goursat data of ``D`` and the five elementary bisets ``[Res, Def, Iso, Inf, Ind]`` in composition order."""
    data = goursat_data(H, G, D)
    P1g, P2g = data.P1.group, data.P2.group
    steps = [
        restriction(G, data.P2),
        deflation(P2g, data.K2.in_group(P2g)),
        isomorphism(data.iso),
        inflation(P1g, data.K1.in_group(P1g)),
        induction(H, data.P1),
    ]
    return data, steps


def compose_all(bisets: Sequence[ActionPair]) -> ActionPair:
    return reduce(kleisli_compose, bisets)


# -- Mackey ---------------------------------------------------------------------------------

def mackey_lhs(Gamma: PermGroup, U, V) -> ActionPair:
    """``Res^Gamma_V o Ind^Gamma_U`` as a (V, U)-biset."""
    U = as_subgroup(Gamma, U)
    V = as_subgroup(Gamma, V)
    return kleisli_compose(induction(Gamma, U), restriction(Gamma, V))


def mackey_rhs(Gamma: PermGroup, U, V) -> list[ActionPair]:
    """One summand ``Ind^V_{V & xU} o Iso(c_x) o Res^U_{V^x & U}`` per double coset ``VxU``."""
    U = as_subgroup(Gamma, U)
    V = as_subgroup(Gamma, V)
    Ug, Vg = U.group, V.group
    out = []
    for x in double_coset_reps(V, Gamma, U):
        xi = inverse(x)
        xU = conjugate_set(U.elements, xi)  # x U x^-1
        Vx = conjugate_set(V.elements, x)  # x^-1 V x
        A = Subgroup.from_elements(Ug, Vx & U.elements, check=False)
        B = Subgroup.from_elements(Vg, V.elements & xU, check=False)
        Ag, Bg = A.group, B.group
        gamma = GroupHom(Ag, Bg, [compose(compose(x, a), xi) for a in Ag.generators])
        out.append(compose_all([restriction(Ug, A), isomorphism(gamma), induction(Vg, B)]))
    return out


def transitive_classes(X: ActionPair) -> list[tuple]:
    """Sorted conjugacy keys (in ``H x G``) of the transitive pieces of ``X``."""
    P = direct_product(X.target, X.source)
    return sorted(conjugacy_key(P.group, to_subgroup(piece)) for piece in decompose_transitive(X))


# -- isomorphism --------------------------------------------------------------------------

def _match_conjugacy_multisets(P: PermGroup, left: list[Subgroup], right: list[Subgroup]) -> bool:
    if len(left) != len(right):
        return False
    buckets: dict = defaultdict(list)
    for D in right:
        buckets[D.order].append(D)
    for D in left:
        pool = buckets.get(D.order, [])
        for k, E in enumerate(pool):
            if are_conjugate(P, D, E):
                pool.pop(k)
                break
        else:
            return False
    return True


def bisets_isomorphic(X: ActionPair, Y: ActionPair) -> bool:
    _check_parallel(X, Y)
    if X.size() != Y.size():
        return False
    P = direct_product(X.target, X.source)
    left = [to_subgroup(p) for p in decompose_transitive(X)]
    right = [to_subgroup(p) for p in decompose_transitive(Y)]
    return _match_conjugacy_multisets(P.group, left, right)

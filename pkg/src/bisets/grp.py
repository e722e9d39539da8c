"""
Subgroup lattice machinery for small permutation groups.

Everything here is brute force over the elements of the parent group, which
is fine at the intended scale (a few hundred elements).  Group elements are
totally ordered lexicographically by image list; that order fixes transversals,
double coset representatives and canonical class representatives.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from .errors import (
    BoundExceededError,
    NotAHomomorphismError,
    NotAMemberError,
    NotASubgroupError,
    NotNormalError,
)
from .perm import Perm, PermGroup, compose, identity, inverse

DEFAULT_SUBGROUP_BOUND = 400


def closure(gens: Iterable[Perm], degree: int) -> frozenset:
    """Elements of the group generated by ``gens``."""
    gens = [g for g in gens]
    one = identity(degree)
    seen = {one}
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def generating_set(elements: Iterable[Perm], degree: int) -> tuple[Perm, ...]:
    """Greedy generating set: scan elements in sorted order, keep those not yet generated."""
    gens: list[Perm] = []
    current = frozenset([identity(degree)])
    for x in sorted(elements):
        if x not in current:
            gens.append(x)
            current = closure(gens, degree)
    return tuple(gens)


class Subgroup:
    """A subgroup of ``parent`` given by generators; equality is element-set equality."""

    def __init__(self, parent: PermGroup, generators: Iterable[Sequence[int]] = (), *, elements=None, check=True):
        self.parent = parent
        self.generators = tuple(tuple(g) for g in generators)
        if check:
            for g in self.generators:
                if len(g) != parent.degree or g not in parent.element_set:
                    raise NotASubgroupError(f"generator {list(g)} is not in the parent group")
        if elements is not None:
            self.__dict__["elements"] = frozenset(elements)

    @classmethod
    def from_elements(cls, parent: PermGroup, elements: Iterable[Perm], check=True) -> "Subgroup":
        elements = frozenset(elements)
        if check:
            if not elements <= parent.element_set:
                raise NotASubgroupError("elements outside the parent group")
            if not _is_closed(elements):
                raise NotASubgroupError("element set is not closed under multiplication")
        return cls(parent, generating_set(elements, parent.degree), elements=elements, check=False)

    @classmethod
    def whole(cls, G: PermGroup) -> "Subgroup":
        return cls(G, G.generators, elements=G.element_set, check=False)

    @classmethod
    def trivial(cls, G: PermGroup) -> "Subgroup":
        return cls(G, (), elements=[G.identity], check=False)

    @cached_property
    def elements(self) -> frozenset:
        return closure(self.generators, self.parent.degree)

    @cached_property
    def sorted_elements(self) -> tuple:
        return tuple(sorted(self.elements))

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __contains__(self, g) -> bool:
        return tuple(g) in self.elements

    def __iter__(self):
        return iter(self.sorted_elements)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent.degree == other.parent.degree and self.elements == other.elements

    def __hash__(self):
        return hash(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def __repr__(self):
        return f"Subgroup(order={self.order}, generators={[list(g) for g in self.generators]})"

    def conjugate(self, x: Perm) -> "Subgroup":
        """``x^-1 U x``."""
        xi = inverse(x)
        elems = frozenset(compose(compose(xi, u), x) for u in self.elements)
        return Subgroup(self.parent, [compose(compose(xi, g), x) for g in self.generators],
                        elements=elems, check=False)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup.from_elements(self.parent, self.elements & other.elements, check=False)

    def in_group(self, G: PermGroup) -> "Subgroup":
        """The same element set viewed as a subgroup of another parent ``G``."""
        return Subgroup(G, self.generators, elements=self.elements)

    @cached_property
    def group(self) -> PermGroup:
        """This subgroup as a permutation group in its own right."""
        return PermGroup(self.generators, degree=self.parent.degree)


def _is_closed(elements: frozenset) -> bool:
    return all(compose(a, b) in elements for a in elements for b in elements)


def as_subgroup(G: PermGroup, U) -> Subgroup:
    if isinstance(U, Subgroup):
        if not U.elements <= G.element_set:
            raise NotASubgroupError("not a subgroup of the given group")
        return U
    return Subgroup(G, U)


# -- basic relations ---------------------------------------------------------

def conjugate_set(elements: Iterable[Perm], x: Perm) -> frozenset:
    xi = inverse(x)
    return frozenset(compose(compose(xi, u), x) for u in elements)


def normalizer(G: PermGroup, U) -> Subgroup:
    U = as_subgroup(G, U)
    elems = [g for g in G.elements if all(compose(compose(inverse(g), u), g) in U.elements for u in U.generators)]
    return Subgroup.from_elements(G, elems, check=False)


def is_normal(G: PermGroup, N) -> bool:
    N = as_subgroup(G, N)
    return all(compose(compose(inverse(g), n), g) in N.elements for g in G.generators for n in N.generators)


def conjugator(G: PermGroup, U, V) -> Perm | None:
    """First ``x`` in element order with ``x^-1 U x == V``, or ``None``."""
    U = as_subgroup(G, U)
    V = as_subgroup(G, V)
    if U.order != V.order:
        return None
    for x in G.elements:
        xi = inverse(x)
        if all(compose(compose(xi, u), x) in V.elements for u in U.generators):
            return x
    return None


def left_transversal(G: PermGroup, U) -> tuple[Perm, ...]:
    """Minimal representative of each left coset ``gU``, in increasing order (identity first)."""
    U = as_subgroup(G, U)
    covered: set = set()
    reps = []
    for g in G.elements:
        if g in covered:
            continue
        reps.append(g)
        covered.update(compose(g, u) for u in U.elements)
    return tuple(reps)


def left_coset_index(G: PermGroup, U) -> tuple[tuple[Perm, ...], dict]:
    """Transversal plus a map from every element to the index of its left coset."""
    U = as_subgroup(G, U)
    reps = left_transversal(G, U)
    index = {}
    for k, t in enumerate(reps):
        for u in U.elements:
            index[compose(t, u)] = k
    return reps, index


def double_coset_reps(V, G: PermGroup, U) -> tuple[Perm, ...]:
    """Minimal representative of each double coset ``VxU``, in increasing order."""
    U = as_subgroup(G, U)
    V = as_subgroup(G, V)
    covered: set = set()
    reps = []
    for x in G.elements:
        if x in covered:
            continue
        reps.append(x)
        for v in V.elements:
            vx = compose(v, x)
            covered.update(compose(vx, u) for u in U.elements)
    return tuple(reps)


def double_coset(V, G: PermGroup, U, x: Perm) -> frozenset:
    U = as_subgroup(G, U)
    V = as_subgroup(G, V)
    return frozenset(compose(compose(v, x), u) for v in V.elements for u in U.elements)


# -- subgroup enumeration ------------------------------------------------------

def all_subgroups(G: PermGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> list[Subgroup]:
    """Every subgroup of ``G``, via joins of cyclic subgroups until fixpoint.

    Sorted by order, then by sorted element list.
    """
    if G.order > bound:
        raise BoundExceededError(f"|G| = {G.order} exceeds the subgroup enumeration bound {bound}")
    deg = G.degree
    cyclic: dict[frozenset, Perm] = {}
    for g in G.elements:
        cyc = closure([g], deg)
        if cyc not in cyclic:
            cyclic[cyc] = g
    found: dict[frozenset, tuple] = {frozenset([G.identity]): ()}
    for cyc, g in cyclic.items():
        found.setdefault(cyc, (g,))
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            gens_a = found[A]
            for C, g in cyclic.items():
                if C <= A:
                    continue
                J = closure(gens_a + (g,), deg)
                if J not in found:
                    found[J] = gens_a + (g,)
                    nxt.append(J)
        frontier = nxt
    subs = [Subgroup(G, gens, elements=elems, check=False) for elems, gens in found.items()]
    subs.sort(key=lambda S: (S.order, S.sorted_elements))
    return subs


@dataclass
class SubgroupClassTable:
    """Canonical representatives of the conjugacy classes of subgroups.

    ``reps[0]`` is trivial and ``reps[-1]`` is the whole group.  ``marks[c][d]``
    is the number of cosets in ``G/reps[c]`` fixed by ``reps[d]``.
    """

    group: PermGroup
    reps: list[Subgroup]
    normalizers: list[Subgroup]
    marks: list[list[int]]
    classes: list[list[Subgroup]]

    def __post_init__(self):
        self._class_index = {S.elements: c for c, cls in enumerate(self.classes) for S in cls}

    def __len__(self):
        return len(self.reps)

    @property
    def size(self) -> int:
        return len(self.reps)

    def class_index(self, U) -> int:
        U = as_subgroup(self.group, U)
        return self._class_index[U.elements]

    def class_of(self, U) -> tuple[int, Perm]:
        """``(c, x)`` with ``x^-1 U x == reps[c]``, ``x`` minimal in element order."""
        U = as_subgroup(self.group, U)
        c = self._class_index[U.elements]
        x = conjugator(self.group, U, self.reps[c])
        return c, x

    def automorphism_count(self, c: int) -> int:
        return self.marks[c][c]

    def is_self_normalizing(self, c: int) -> bool:
        return self.marks[c][c] == 1

    def mark_vector(self, multiplicities: Sequence[int]) -> list[int]:
        n = len(self.reps)
        return [sum(multiplicities[c] * self.marks[c][d] for c in range(n)) for d in range(n)]

    def solve_marks(self, vector: Sequence[int]) -> list[int]:
        """Integer back-substitution of a mark vector against the triangular marks matrix."""
        n = len(self.reps)
        m = [0] * n
        for d in range(n - 1, -1, -1):
            rest = vector[d] - sum(m[c] * self.marks[c][d] for c in range(d + 1, n))
            q, r = divmod(rest, self.marks[d][d])
            if r or q < 0:
                raise ArithmeticError(f"mark vector {list(vector)} is not the mark vector of a G-set")
            m[d] = q
        return m

    def to_json(self) -> dict:
        return {
            "reps": [[list(g) for g in U.generators] for U in self.reps],
            "orders": [U.order for U in self.reps],
            "normalizer_gens": [[list(g) for g in N.generators] for N in self.normalizers],
            "marks": self.marks,
        }


def _marks_row(G: PermGroup, U: Subgroup, reps: Sequence[Subgroup]) -> list[int]:
    transversal = left_transversal(G, U)
    row = []
    for V in reps:
        n = 0
        for t in transversal:
            ti = inverse(t)
            # V fixes tU iff t^-1 V t <= U
            if all(compose(compose(ti, v), t) in U.elements for v in V.generators):
                n += 1
        row.append(n)
    return row


def table_of_marks(G: PermGroup) -> list[list[int]]:
    return all_subgroup_classes(G).marks


@lru_cache(maxsize=None)
def _subgroup_classes(G: PermGroup, bound: int) -> SubgroupClassTable:
    subs = all_subgroups(G, bound)
    remaining = {S.elements: S for S in subs}
    classes = []
    for S in subs:
        if S.elements not in remaining:
            continue
        conj = {}
        for x in G.elements:
            C = conjugate_set(S.elements, x)
            if C not in conj:
                conj[C] = remaining.pop(C)
        members = sorted(conj.values(), key=lambda T: T.sorted_elements)
        classes.append(members)
    classes.sort(key=lambda cls: (cls[0].order, cls[0].sorted_elements))
    reps = [cls[0] for cls in classes]
    normalizers = [normalizer(G, U) for U in reps]
    marks = [_marks_row(G, U, reps) for U in reps]
    return SubgroupClassTable(G, reps, normalizers, marks, classes)


def all_subgroup_classes(G: PermGroup, bound: int = DEFAULT_SUBGROUP_BOUND) -> SubgroupClassTable:
    return _subgroup_classes(G, bound)


# -- homomorphisms --------------------------------------------------------------

class GroupHom:
    """A homomorphism given by images of the source generators.

    Verified on construction by a Cayley-graph BFS over the source: an
    element reached along two paths must receive the same image.
    """

    def __init__(self, source: PermGroup, target: PermGroup, images: Sequence[Sequence[int]], check=True):
        self.source = source
        self.target = target
        self.images = tuple(tuple(x) for x in images)
        if len(self.images) != len(source.generators):
            raise NotAHomomorphismError("one image per source generator is required")
        if check:
            for y in self.images:
                if y not in target.element_set:
                    raise NotAHomomorphismError(f"image {list(y)} is not in the target group")
        self.table = _cayley_table(source, self.images, compose, target.identity)

    def __call__(self, g: Perm) -> Perm:
        try:
            return self.table[tuple(g)]
        except KeyError:
            raise NotAMemberError(f"{list(g)} is not in the source group") from None

    @cached_property
    def kernel(self) -> Subgroup:
        one = self.target.identity
        return Subgroup.from_elements(self.source, [g for g, y in self.table.items() if y == one], check=False)

    @cached_property
    def image(self) -> Subgroup:
        return Subgroup.from_elements(self.target, set(self.table.values()), check=False)

    def is_injective(self) -> bool:
        return self.kernel.order == 1

    def is_bijective(self) -> bool:
        return self.is_injective() and self.image.order == self.target.order


def _cayley_table(G: PermGroup, images: Sequence, mul: Callable, one) -> dict:
    """Extend generator images along right multiplication; raise on inconsistency."""
    table = {G.identity: one}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            fx = table[x]
            for g, y in zip(G.generators, images):
                xg = compose(x, g)
                fxg = mul(fx, y)
                prev = table.get(xg)
                if prev is None:
                    table[xg] = fxg
                    nxt.append(xg)
                elif prev != fxg:
                    raise NotAHomomorphismError("generator images do not extend to a homomorphism")
        frontier = nxt
    return table


# -- quotients and products ----------------------------------------------------

@dataclass
class QuotientGroup:
    group: PermGroup
    projection: GroupHom
    cosets: tuple  # minimal representative of each coset, in order
    coset_index: dict

    def section(self, q: Perm) -> Perm:
        """Minimal preimage of a quotient element."""
        # q moves the identity coset (index 0) to the coset of its preimages
        return self.cosets[q[0]]


@lru_cache(maxsize=None)
def _quotient(G: PermGroup, N_elements: frozenset, N_gens: tuple) -> QuotientGroup:
    N = Subgroup(G, N_gens, elements=N_elements, check=False)
    reps, index = left_coset_index(G, N)
    # g acts on cosets by right multiplication xN -> xgN; for normal N this is well defined
    images = [tuple(index[compose(t, g)] for t in reps) for g in G.generators]
    Q = PermGroup(images, degree=len(reps))
    proj = GroupHom(G, Q, images, check=False)
    return QuotientGroup(Q, proj, reps, index)


def quotient_group(G: PermGroup, N) -> QuotientGroup:
    N = as_subgroup(G, N)
    if not is_normal(G, N):
        raise NotNormalError("subgroup is not normal")
    return _quotient(G, N.elements, N.generators)


@dataclass
class DirectProduct:
    """``H x G`` acting on ``deg H + deg G`` points, ``H`` on the first block."""

    left_factor: PermGroup
    right_factor: PermGroup
    group: PermGroup

    @property
    def split(self) -> int:
        return self.left_factor.degree

    def pair(self, h: Perm, g: Perm) -> Perm:
        s = self.split
        return tuple(h) + tuple(x + s for x in g)

    def embed_left(self, h: Perm) -> Perm:
        return self.pair(h, self.right_factor.identity)

    def embed_right(self, g: Perm) -> Perm:
        return self.pair(self.left_factor.identity, g)

    def left(self, p: Perm) -> Perm:
        return tuple(p[: self.split])

    def right(self, p: Perm) -> Perm:
        s = self.split
        return tuple(x - s for x in p[s:])

    def components(self, p: Perm) -> tuple[Perm, Perm]:
        return self.left(p), self.right(p)

    def subgroup(self, pairs: Iterable[tuple[Perm, Perm]]) -> Subgroup:
        """Subgroup generated by ``(h, g)`` pairs."""
        return Subgroup(self.group, [self.pair(h, g) for h, g in pairs])


@lru_cache(maxsize=None)
def direct_product(H: PermGroup, G: PermGroup) -> DirectProduct:
    s = H.degree
    gens = [tuple(h) + tuple(range(s, s + G.degree)) for h in H.generators]
    gens += [tuple(range(s)) + tuple(x + s for x in g) for g in G.generators]
    return DirectProduct(H, G, PermGroup(gens, degree=s + G.degree))


def are_conjugate(G: PermGroup, U, V) -> bool:
    return conjugator(G, U, V) is not None


def conjugacy_key(G: PermGroup, U) -> tuple:
    """Lexicographically minimal sorted element list over the conjugates of ``U``."""
    U = as_subgroup(G, U)
    return min(tuple(sorted(conjugate_set(U.elements, x))) for x in G.elements)

"""
The skeletal category of transitive left G-sets.

Object ``c`` stands for ``G/U_c`` with ``U_c`` the c-th canonical class
representative.  A morphism ``s -> t`` is an element ``x`` with
``x^-1 U_s x <= U_t``; it sends ``gU_s`` to ``gxU_t``.  Two morphisms are
equal iff their elements lie in the same left coset of ``U_t``, so every
morphism stores the minimal element of that coset.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import MorphismConstraintError, NotAMemberError, ObjectMismatchError
from .grp import SubgroupClassTable, all_subgroup_classes
from .perm import Perm, PermGroup, compose, inverse


class CoeqCategory:
    def __init__(self, table: SubgroupClassTable):
        self.table = table
        self.group = table.group

    def __eq__(self, other):
        if not isinstance(other, CoeqCategory):
            return NotImplemented
        return self.group == other.group

    def __hash__(self):
        return hash(self.group)

    def __repr__(self):
        return f"CoeqCategory({self.group!r}, objects={self.size})"

    @property
    def size(self) -> int:
        return len(self.table.reps)

    @property
    def objects(self) -> range:
        return range(self.size)

    @cached_property
    def _canonical(self) -> list[dict]:
        """Per object t: element -> minimal element of its left coset of U_t."""
        out = []
        for U in self.table.reps:
            canon = {}
            for g in self.group.elements:
                if g in canon:
                    continue
                coset = [compose(g, u) for u in U.elements]
                m = min(coset)
                for x in coset:
                    canon[x] = m
            out.append(canon)
        return out

    def canonical(self, t: int, x: Perm) -> Perm:
        try:
            return self._canonical[t][tuple(x)]
        except KeyError:
            raise NotAMemberError(f"{list(x)} is not an element of the group") from None

    def is_valid(self, s: int, t: int, x: Perm) -> bool:
        xi = inverse(x)
        Ut = self.table.reps[t].elements
        return all(compose(compose(xi, u), x) in Ut for u in self.table.reps[s].generators)

    def morphism(self, s: int, t: int, x: Perm) -> "CoeqMorphism":
        return make_coeq_morphism(self, s, t, x)

    def identity(self, c: int) -> "CoeqMorphism":
        return CoeqMorphism(c, c, self.group.identity, self)

    def embed(self, x: Perm) -> "CoeqMorphism":
        """The group element ``x`` as an automorphism of the free object 0."""
        return make_coeq_morphism(self, 0, 0, x)


@lru_cache(maxsize=None)
def coeq_category(G: PermGroup) -> CoeqCategory:
    return CoeqCategory(all_subgroup_classes(G))


@dataclass(frozen=True)
class CoeqMorphism:
    source: int
    target: int
    element: Perm
    category: CoeqCategory = field(compare=False, repr=False)

    def __mul__(self, other: "CoeqMorphism") -> "CoeqMorphism":
        return compose_coeq(self, other)

    def to_json(self) -> dict:
        return {"source": self.source, "target": self.target, "element": list(self.element)}


def make_coeq_morphism(cat: CoeqCategory, s: int, t: int, x: Perm) -> CoeqMorphism:
    x = tuple(x)
    if x not in cat.group.element_set:
        raise NotAMemberError(f"{list(x)} is not an element of the group")
    if not cat.is_valid(s, t, x):
        raise MorphismConstraintError(f"U_{s}^x is not contained in U_{t} for x = {list(x)}")
    return CoeqMorphism(s, t, cat.canonical(t, x), cat)


def compose_coeq(f: CoeqMorphism, g: CoeqMorphism) -> CoeqMorphism:
    """``f`` then ``g``."""
    if f.target != g.source:
        raise ObjectMismatchError(f"cannot compose {f.source}->{f.target} with {g.source}->{g.target}")
    cat = f.category
    return CoeqMorphism(f.source, g.target, cat.canonical(g.target, compose(f.element, g.element)), cat)

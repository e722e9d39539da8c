"""
Finite left G-sets as the skeletal coproduct completion of transitive ones.

An object is a tuple of multiplicities over the subgroup classes.  A
morphism sends each cofactor ``(c, i)`` (class ``c``, copy ``i``) to a
cofactor ``(d, j)`` of the target together with a Coeq morphism ``c -> d``.
Automorphisms are stored as wreath product elements: per class a tuple of
normalizer elements and a permutation of the copies, acting by
``(c, i, gU_c) -> (c, sigma[i], g nu_i U_c)``.

Composition convention: ``(nu, sigma) * (nu', sigma') = ((nu_i nu'_{sigma[i]})_i, sigma sigma')``,
i.e. the left factor is applied first.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .coeq import CoeqCategory, CoeqMorphism, make_coeq_morphism
from .errors import MorphismConstraintError, NotCoequalizingError, ObjectMismatchError
from .grp import Subgroup, closure
from .perm import Perm, compose, evaluate_word, identity, inverse, is_identity, orbit_with_words


@dataclass(frozen=True)
class GObject:
    category: CoeqCategory = field(repr=False)
    multiplicities: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.multiplicities)
        if len(m) != self.category.size:
            raise ObjectMismatchError(f"expected {self.category.size} multiplicities, got {len(m)}")
        if any(x < 0 for x in m):
            raise ValueError("multiplicities must be nonnegative")
        object.__setattr__(self, "multiplicities", m)

    def __getitem__(self, c: int) -> int:
        return self.multiplicities[c]

    def __len__(self):
        return len(self.multiplicities)

    def __add__(self, other: "GObject") -> "GObject":
        return coproduct(self, other)[0]

    @property
    def cofactors(self) -> list[tuple[int, int]]:
        return [(c, i) for c, m in enumerate(self.multiplicities) for i in range(m)]

    @property
    def is_empty(self) -> bool:
        return not any(self.multiplicities)

    def cardinality(self) -> int:
        """Number of points of the underlying G-set."""
        n = self.category.group.order
        return sum(m * (n // U.order) for m, U in zip(self.multiplicities, self.category.table.reps))

    def mark_vector(self) -> list[int]:
        return self.category.table.mark_vector(self.multiplicities)

    def to_json(self) -> dict:
        return {"multiplicities": list(self.multiplicities)}


def zero_object(cat: CoeqCategory) -> GObject:
    return GObject(cat, (0,) * cat.size)


def transitive_object(cat: CoeqCategory, c: int, copies: int = 1) -> GObject:
    m = [0] * cat.size
    m[c] = copies
    return GObject(cat, tuple(m))


def terminal_object(cat: CoeqCategory) -> GObject:
    return transitive_object(cat, cat.size - 1)


def _check_same_category(*objs: GObject) -> None:
    for o in objs[1:]:
        if o.category != objs[0].category:
            raise ObjectMismatchError("objects live over different groups")


@dataclass(frozen=True)
class GMorphism:
    """``data[c][i] == (d, j, element)``: cofactor (c, i) goes to (d, j) via ``element``."""

    source: GObject
    target: GObject
    data: tuple

    def component(self, c: int, i: int) -> tuple[int, int, CoeqMorphism]:
        d, j, x = self.data[c][i]
        return d, j, CoeqMorphism(c, d, x, self.source.category)

    def __mul__(self, other: "GMorphism") -> "GMorphism":
        return compose_gmorphisms(self, other)

    def is_epi(self) -> bool:
        hit = {(d, j) for row in self.data for d, j, _ in row}
        return hit == set(self.target.cofactors)

    def is_iso(self) -> bool:
        return self.is_epi() and len(self.source.cofactors) == len(self.target.cofactors) and all(
            d == c for c, row in enumerate(self.data) for d, _, _ in row
        )

    def to_json(self) -> list[dict]:
        return [
            {"class": c, "copy": i, "to_class": d, "to_copy": j, "element": list(x)}
            for c, row in enumerate(self.data)
            for i, (d, j, x) in enumerate(row)
        ]


def make_gmorphism(source: GObject, target: GObject, assignments) -> GMorphism:
    """Validate and canonicalize ``assignments[c][i] = (d, j, element)``."""
    _check_same_category(source, target)
    cat = source.category
    data = []
    for c, m in enumerate(source.multiplicities):
        row = assignments[c] if c < len(assignments) else ()
        if len(row) != m:
            raise ObjectMismatchError(f"class {c}: expected {m} assignments, got {len(row)}")
        out = []
        for d, j, x in row:
            if not 0 <= j < target.multiplicities[d]:
                raise ObjectMismatchError(f"target cofactor ({d}, {j}) out of range")
            out.append((d, j, make_coeq_morphism(cat, c, d, x).element))
        data.append(tuple(out))
    return GMorphism(source, target, tuple(data))


def identity_gmorphism(obj: GObject) -> GMorphism:
    one = obj.category.group.identity
    data = tuple(tuple((c, i, one) for i in range(m)) for c, m in enumerate(obj.multiplicities))
    return GMorphism(obj, obj, data)


def compose_gmorphisms(f: GMorphism, g: GMorphism) -> GMorphism:
    """``f`` then ``g``."""
    if f.target != g.source:
        raise ObjectMismatchError("target of the first morphism is not the source of the second")
    cat = f.source.category
    data = []
    for row in f.data:
        out = []
        for d, j, x in row:
            e, k, y = g.data[d][j]
            out.append((e, k, cat.canonical(e, compose(x, y))))
        data.append(tuple(out))
    return GMorphism(f.source, g.target, tuple(data))


def coproduct(a: GObject, b: GObject) -> tuple[GObject, GMorphism, GMorphism]:
    """Componentwise sum with the two injections (copies of ``b`` are shifted)."""
    _check_same_category(a, b)
    s = GObject(a.category, tuple(x + y for x, y in zip(a.multiplicities, b.multiplicities)))
    one = a.category.group.identity
    inj_a = GMorphism(a, s, tuple(tuple((c, i, one) for i in range(m)) for c, m in enumerate(a.multiplicities)))
    inj_b = GMorphism(b, s, tuple(
        tuple((c, a.multiplicities[c] + i, one) for i in range(m)) for c, m in enumerate(b.multiplicities)
    ))
    return s, inj_a, inj_b


def product_object_via_marks(a: GObject, b: GObject) -> GObject:
    """Cartesian product, computed from pointwise products of mark vectors."""
    _check_same_category(a, b)
    table = a.category.table
    va, vb = a.mark_vector(), b.mark_vector()
    m = table.solve_marks([x * y for x, y in zip(va, vb)])
    return GObject(a.category, tuple(m))


# -- automorphisms ---------------------------------------------------------------

def _class_ops(cat: CoeqCategory, c: int):
    """Multiplication and inversion of ``(nus, sigma)`` pairs for one class."""
    canon = cat._canonical[c]

    def mul(a, b):
        nus_a, sig_a = a
        nus_b, sig_b = b
        nus = tuple(canon[compose(nus_a[i], nus_b[sig_a[i]])] for i in range(len(sig_a)))
        return nus, compose(sig_a, sig_b)

    def inv(a):
        nus, sig = a
        m = len(sig)
        out = [None] * m
        for i in range(m):
            out[sig[i]] = canon[inverse(nus[i])]
        return tuple(out), inverse(sig)

    return mul, inv


class WreathAutomorphism:
    """Automorphism of a G-set given per class by ``(nus, sigma)``."""

    __slots__ = ("obj", "parts", "_hash")

    def __init__(self, obj: GObject, parts: Sequence, check: bool = True):
        cat = obj.category
        if len(parts) != cat.size:
            raise ObjectMismatchError(f"expected {cat.size} class components, got {len(parts)}")
        out = []
        for c, (nus, sigma) in enumerate(parts):
            m = obj.multiplicities[c]
            nus = tuple(tuple(x) for x in nus)
            sigma = tuple(sigma)
            if len(nus) != m or len(sigma) != m:
                raise ObjectMismatchError(f"class {c}: component sizes do not match multiplicity {m}")
            if check:
                if sorted(sigma) != list(range(m)):
                    raise ValueError(f"class {c}: sigma is not a permutation")
                for x in nus:
                    if x not in cat.group.element_set or not cat.is_valid(c, c, x):
                        raise MorphismConstraintError(f"class {c}: {list(x)} does not normalize U_{c}")
            out.append((tuple(cat.canonical(c, x) for x in nus), sigma))
        self.obj = obj
        self.parts = tuple(out)
        self._hash = None

    @classmethod
    def identity(cls, obj: GObject) -> "WreathAutomorphism":
        one = obj.category.group.identity
        parts = tuple(((one,) * m, identity(m)) for m in obj.multiplicities)
        return cls._raw(obj, parts)

    @classmethod
    def _raw(cls, obj: GObject, parts: tuple) -> "WreathAutomorphism":
        w = cls.__new__(cls)
        w.obj = obj
        w.parts = parts
        w._hash = None
        return w

    def __eq__(self, other):
        if not isinstance(other, WreathAutomorphism):
            return NotImplemented
        return self.obj == other.obj and self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.parts)
        return self._hash

    def __repr__(self):
        return f"WreathAutomorphism({self.obj.multiplicities}, {self.parts})"

    def __mul__(self, other: "WreathAutomorphism") -> "WreathAutomorphism":
        if self.obj != other.obj:
            raise ObjectMismatchError("automorphisms of different objects")
        cat = self.obj.category
        parts = []
        for c, (a, b) in enumerate(zip(self.parts, other.parts)):
            if not a[1]:
                parts.append(a)
                continue
            mul, _ = _class_ops(cat, c)
            parts.append(mul(a, b))
        return WreathAutomorphism._raw(self.obj, tuple(parts))

    def inverse(self) -> "WreathAutomorphism":
        cat = self.obj.category
        parts = []
        for c, a in enumerate(self.parts):
            if not a[1]:
                parts.append(a)
                continue
            _, inv = _class_ops(cat, c)
            parts.append(inv(a))
        return WreathAutomorphism._raw(self.obj, tuple(parts))

    def is_identity(self) -> bool:
        one = self.obj.category.group.identity
        return all(is_identity(sig) and all(x == one for x in nus) for nus, sig in self.parts)

    def to_gmorphism(self) -> GMorphism:
        data = tuple(
            tuple((c, sig[i], nus[i]) for i in range(len(sig))) for c, (nus, sig) in enumerate(self.parts)
        )
        return GMorphism(self.obj, self.obj, data)

    def to_json(self) -> list[dict]:
        return [{"nu": [list(x) for x in nus], "sigma": list(sig)} for nus, sig in self.parts]


def wreath_from_gmorphism(f: GMorphism) -> WreathAutomorphism:
    if f.source != f.target or not f.is_iso():
        raise ObjectMismatchError("not an automorphism")
    parts = []
    for row in f.data:
        parts.append((tuple(x for _, _, x in row), tuple(j for _, j, _ in row)))
    return WreathAutomorphism(f.source, parts, check=False)


# -- coequalizer of automorphisms -------------------------------------------------

@dataclass(frozen=True)
class OrbitRecord:
    cls: int
    base: int
    points: tuple[int, ...]
    target_cls: int
    target_copy: int
    conjugator: Perm  # gamma with V^gamma = U_target_cls
    stabilizer: Subgroup  # V


@dataclass(frozen=True)
class Coequalizer:
    source: GObject
    target: GObject
    projection: GMorphism
    autos: tuple
    orbits: tuple

    @property
    def object(self) -> GObject:
        return self.target


def coequalizer_of_automorphisms(obj: GObject, autos: Sequence[WreathAutomorphism]) -> Coequalizer:
    """Coequalizer of ``id`` and ``autos``, one Schreier-Sims orbit computation per copy orbit.

    For a class c and an orbit O of the copy permutations with base b = min O,
    transversal words give the accumulated normalizer element mu(i) carrying
    cofactor b to cofactor i; the Schreier words give generators of the
    subgroup V (with U_c <= V <= N(U_c)) such that the orbit collapses to G/V.
    """
    autos = tuple(autos)
    for a in autos:
        if not isinstance(a, WreathAutomorphism) or a.obj != obj:
            raise ObjectMismatchError("every input must be an automorphism of the given object")
    cat = obj.category
    table = cat.table
    G = cat.group
    one = G.identity

    records: list[OrbitRecord] = []
    target_counts = [0] * cat.size
    proj_data: list[list] = [[None] * m for m in obj.multiplicities]

    for c, m in enumerate(obj.multiplicities):
        if m == 0:
            continue
        Uc = table.reps[c]
        pairs = [a.parts[c] for a in autos]
        sigmas = [p[1] for p in pairs]
        mul, inv = _class_ops(cat, c)
        unit = ((one,) * m, identity(m))
        self_normalizing = table.is_self_normalizing(c)
        seen: set[int] = set()
        for b in range(m):
            if b in seen:
                continue
            od = orbit_with_words(sigmas, b, degree=m)
            seen.update(od.orbit)
            if self_normalizing:
                # N(U_c) = U_c: every accumulated element lies in U_c
                V = Uc
                mu = {i: one for i in od.orbit}
            else:
                mu = {}
                for i in od.orbit:
                    nus, _ = evaluate_word(od.transversal[i], pairs, mul=mul, inv=inv, one=unit)
                    mu[i] = nus[b]
                extra = []
                for w in od.schreier:
                    nus, sig = evaluate_word(w, pairs, mul=mul, inv=inv, one=unit)
                    x = nus[b]
                    if x != one:
                        extra.append(x)
                if extra:
                    elems = closure(list(Uc.generators) + extra, G.degree)
                    V = Subgroup(G, list(Uc.generators) + extra, elements=elems, check=False)
                else:
                    V = Uc
            d, gamma = table.class_of(V)
            j = target_counts[d]
            target_counts[d] += 1
            for i in od.orbit:
                x = compose(inverse(mu[i]), gamma)
                proj_data[c][i] = (d, j, cat.canonical(d, x))
            records.append(OrbitRecord(c, b, tuple(sorted(od.orbit)), d, j, gamma, V))

    target = GObject(cat, tuple(target_counts))
    projection = GMorphism(obj, target, tuple(tuple(row) for row in proj_data))
    return Coequalizer(obj, target, projection, autos, tuple(records))


def coequalizes(f: GMorphism, autos: Sequence[WreathAutomorphism]) -> bool:
    return all(compose_gmorphisms(a.to_gmorphism(), f) == f for a in autos)


def colift_along_coequalizer(coeq: Coequalizer, mu: GMorphism, check: bool = True) -> GMorphism:
    """The unique ``u`` with ``coeq.projection * u == mu``."""
    if mu.source != coeq.source:
        raise ObjectMismatchError("the morphism does not start at the coequalized object")
    if check and not coequalizes(mu, coeq.autos):
        raise NotCoequalizingError("the morphism does not coequalize the automorphisms")
    cat = coeq.source.category
    data: list[list] = [[None] * m for m in coeq.target.multiplicities]
    for rec in coeq.orbits:
        e, k, y = mu.data[rec.cls][rec.base]
        x = compose(inverse(rec.conjugator), y)
        data[rec.target_cls][rec.target_copy] = (e, k, make_coeq_morphism(cat, rec.target_cls, e, x).element)
    return GMorphism(coeq.target, mu.target, tuple(tuple(row) for row in data))

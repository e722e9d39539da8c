"""
Reference semantics: bisets as explicit finite sets with two commuting actions.

This is the trusted slow path.  Composition is the quotient of ``Y x X`` by
the diagonal action ``h(y, x) = (y h^-1, h x)``, computed with a disjoint-set
forest over generator moves.
"""
from __future__ import annotations

from functools import cached_property
from typing import Sequence

from scipy.cluster.hierarchy import DisjointSet

from .biset import ActionPair, _match_conjugacy_multisets
from .coeq import coeq_category
from .errors import GroupMismatchError, NotAHomomorphismError
from .grp import Subgroup, _cayley_table, direct_product, left_coset_index
from .perm import Perm, PermGroup, compose, identity, inverse


class ExplicitBiset:
    """``size`` points; ``left[a]`` is the action of ``H.generators[a]`` (``x -> h x``),
    ``right[b]`` the action of ``G.generators[b]`` (``x -> x g``)."""

    def __init__(self, H: PermGroup, G: PermGroup, size: int, left: Sequence, right: Sequence, *, check=True):
        self.H = H
        self.G = G
        self.size = size
        self.left = tuple(tuple(p) for p in left)
        self.right = tuple(tuple(p) for p in right)
        if len(self.left) != len(H.generators) or len(self.right) != len(G.generators):
            raise NotAHomomorphismError("one permutation per generator is required on each side")
        for p in self.left + self.right:
            if sorted(p) != list(range(size)):
                raise NotAHomomorphismError("generator action is not a permutation of the points")
        if check:
            for lp in self.left:
                for rp in self.right:
                    if any(rp[lp[x]] != lp[rp[x]] for x in range(size)):
                        raise NotAHomomorphismError("left and right actions do not commute")
            self.left_table
            self.right_table

    def __repr__(self):
        return f"ExplicitBiset(size={self.size}, H_order={self.H.order}, G_order={self.G.order})"

    @cached_property
    def left_table(self) -> dict:
        """``h -> (x -> h x)``; left action, so ``L(e h) = L(h)`` applied first."""
        return _cayley_table(self.H, self.left, lambda fe, fh: compose(fh, fe), identity(self.size))

    @cached_property
    def right_table(self) -> dict:
        return _cayley_table(self.G, self.right, compose, identity(self.size))

    def to_json(self) -> dict:
        return {"size": self.size, "left": [list(p) for p in self.left], "right": [list(p) for p in self.right]}


def explicit_from_subgroup(H: PermGroup, G: PermGroup, D) -> ExplicitBiset:
    """``(H x G)/D`` with ``h (a, b)D g = (h a, g^-1 b)D``."""
    P = direct_product(H, G)
    D = D if isinstance(D, Subgroup) else Subgroup(P.group, D)
    reps, index = left_coset_index(P.group, D)
    left = [tuple(index[compose(P.embed_left(h), t)] for t in reps) for h in H.generators]
    right = [tuple(index[compose(P.embed_right(inverse(g)), t)] for t in reps) for g in G.generators]
    return ExplicitBiset(H, G, len(reps), left, right)


def naive_compose(Y: ExplicitBiset, X: ExplicitBiset) -> ExplicitBiset:
    """``Y x_H X`` for a (K, H)-biset ``Y`` and an (H, G)-biset ``X``."""
    if Y.G != X.H:
        raise GroupMismatchError("middle groups differ")
    nx = X.size
    ds = DisjointSet(range(Y.size * nx))
    for yr, xl in zip(Y.right, X.left):
        yr_inv = inverse(yr)
        for y in range(Y.size):
            y2 = yr_inv[y]
            for x in range(nx):
                ds.merge(y * nx + x, y2 * nx + xl[x])
    classes = sorted(ds.subsets(), key=min)
    index = {}
    for k, cls in enumerate(classes):
        for p in cls:
            index[p] = k
    reps = [min(cls) for cls in classes]
    left = [tuple(index[kl[r // nx] * nx + r % nx] for r in reps) for kl in Y.left]
    right = [tuple(index[(r // nx) * nx + xr[r % nx]] for r in reps) for xr in X.right]
    return ExplicitBiset(Y.H, X.G, len(reps), left, right)


def explicit_from_pair(X: ActionPair) -> ExplicitBiset:
    """Points ``(c, i, coset of U_c)``; H acts on cosets, generators of G by ``(c, sigma[i], g nu_i U_c)``."""
    H = X.target
    table = X.category.table
    points = []
    coset_data = []
    offsets = {}
    for c, m in enumerate(X.multiplicities):
        if m == 0:
            coset_data.append(None)
            continue
        reps, index = left_coset_index(H, table.reps[c])
        coset_data.append((reps, index))
        for i in range(m):
            offsets[(c, i)] = len(points)
            points.extend((c, i, k) for k in range(len(reps)))
    left = []
    for h in H.generators:
        img = []
        for c, i, k in points:
            reps, index = coset_data[c]
            img.append(offsets[(c, i)] + index[compose(h, reps[k])])
        left.append(tuple(img))
    right = []
    for a in X.autos:
        img = []
        for c, i, k in points:
            reps, index = coset_data[c]
            nus, sig = a.parts[c]
            img.append(offsets[(c, sig[i])] + index[compose(reps[k], nus[i])])
        right.append(tuple(img))
    return ExplicitBiset(H, X.source, len(points), left, right)


def _left_orbits(B: ExplicitBiset) -> list[list[int]]:
    ds = DisjointSet(range(B.size))
    for p in B.left:
        for x in range(B.size):
            ds.merge(x, p[x])
    return sorted((sorted(s) for s in ds.subsets()), key=lambda s: s[0])


def pair_from_explicit(B: ExplicitBiset) -> ActionPair:
    """Decompose into H-orbits, match each point stabilizer to its class representative, read off the right action."""
    H = B.H
    cat = coeq_category(H)
    table = cat.table
    L = B.left_table
    records = []  # (class, base point, gamma)
    for orbit in _left_orbits(B):
        p = orbit[0]
        stab = Subgroup.from_elements(H, [h for h, f in L.items() if f[p] == p], check=False)
        c, gamma = table.class_of(stab)
        records.append((c, p, gamma))
    copies: dict[int, list] = {c: [] for c in range(table.size)}
    where = {}  # point -> (class, copy, h with point = h . base)
    for c, p, gamma in records:
        i = len(copies[c])
        copies[c].append((p, gamma))
        for h in H.elements:
            q = L[h][p]
            if q not in where:
                where[q] = (c, i, h)
    mult = [len(copies[c]) for c in range(table.size)]
    autos = []
    for rp in B.right:
        parts = []
        for c in range(table.size):
            nus, sig = [], []
            for p, gamma in copies[c]:
                # p g = k . p_j  gives  nu = gamma_i^-1 k gamma_j on the coset model
                c2, j, k = where[rp[p]]
                gamma_j = copies[c][j][1]
                sig.append(j)
                nus.append(compose(compose(inverse(gamma), k), gamma_j))
            parts.append((nus, sig))
        autos.append(parts)
    return ActionPair(B.G, H, mult, autos)


def explicit_stabilizers(B: ExplicitBiset) -> list[Subgroup]:
    """Stabilizer in ``H x G`` of one point per ``H x G``-orbit."""
    P = direct_product(B.H, B.G)
    ds = DisjointSet(range(B.size))
    for p in B.left + B.right:
        for x in range(B.size):
            ds.merge(x, p[x])
    L, R = B.left_table, B.right_table
    out = []
    for orbit in sorted(ds.subsets(), key=min):
        x = min(orbit)
        elems = [P.pair(h, g) for h, fh in L.items() for g, fg in R.items() if fh[x] == fg[x]]
        out.append(Subgroup.from_elements(P.group, elems, check=False))
    return out


def explicit_isomorphic(B: ExplicitBiset, C: ExplicitBiset) -> bool:
    if B.H != C.H or B.G != C.G:
        raise GroupMismatchError("bisets over different groups")
    if B.size != C.size:
        return False
    P = direct_product(B.H, B.G)
    return _match_conjugacy_multisets(P.group, explicit_stabilizers(B), explicit_stabilizers(C))


# -- explicit left G-sets ----------------------------------------------------------------

class ExplicitGSet:
    """Points ``(c, i, k)`` of a skeletal object: copy ``i`` of ``G/U_c``, coset ``t_k U_c``."""

    def __init__(self, obj):
        self.obj = obj
        cat = obj.category
        G = cat.group
        self.group = G
        self.points = []
        self.cosets = {}
        self.offsets = {}
        for c, m in enumerate(obj.multiplicities):
            if m == 0:
                continue
            self.cosets[c] = left_coset_index(G, cat.table.reps[c])
            for i in range(m):
                self.offsets[(c, i)] = len(self.points)
                self.points.extend((c, i, k) for k in range(len(self.cosets[c][0])))

    def __len__(self):
        return len(self.points)

    def act(self, g: Perm, p: int) -> int:
        c, i, k = self.points[p]
        reps, index = self.cosets[c]
        return self.offsets[(c, i)] + index[compose(g, reps[k])]

    def point_map(self, f, target: "ExplicitGSet") -> list[int]:
        """The map of points underlying a morphism ``f`` (``gU_c -> g x U_d``)."""
        out = []
        for c, i, k in self.points:
            d, j, x = f.data[c][i]
            reps, _ = self.cosets[c]
            _, index = target.cosets[d]
            out.append(target.offsets[(d, j)] + index[compose(reps[k], x)])
        return out

    def is_equivariant(self, mapping: Sequence[int], target: "ExplicitGSet") -> bool:
        return all(mapping[self.act(g, p)] == target.act(g, mapping[p])
                   for g in self.group.generators for p in range(len(self)))


def orbit_type(G: PermGroup, n: int, act, blocks=None) -> tuple[int, ...]:
    """Multiplicities of ``G/U_c`` in a G-set on ``range(n)`` (or on a partition ``blocks`` of it)."""
    table = coeq_category(G).table
    if blocks is None:
        blocks = [[p] for p in range(n)]
    block_of = {}
    for b, blk in enumerate(blocks):
        for p in blk:
            block_of[p] = b
    mult = [0] * table.size
    seen = set()
    for b, blk in enumerate(blocks):
        if b in seen:
            continue
        orbit = {block_of[act(g, blk[0])] for g in G.elements}
        seen |= orbit
        stab = [g for g in G.elements if block_of[act(g, blk[0])] == b]
        mult[table.class_index(Subgroup.from_elements(G, stab, check=False))] += 1
    return tuple(mult)


def explicit_coequalizer(obj, autos) -> tuple[int, ...]:
    """Multiplicities of the quotient of ``obj`` by ``x ~ alpha(x)``, computed on points."""
    X = ExplicitGSet(obj)
    ds = DisjointSet(range(len(X)))
    for a in autos:
        for p, q in enumerate(X.point_map(a.to_gmorphism(), X)):
            ds.merge(p, q)
    blocks = [sorted(s) for s in ds.subsets()]
    return orbit_type(X.group, len(X), X.act, blocks)


def explicit_product(a, b) -> tuple[int, ...]:
    """Multiplicities of the cartesian product with the diagonal action, computed on pairs of points."""
    A, B = ExplicitGSet(a), ExplicitGSet(b)
    nb = len(B)

    def act(g, p):
        return A.act(g, p // nb) * nb + B.act(g, p % nb)

    return orbit_type(A.group, len(A) * nb, act)

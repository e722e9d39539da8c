"""
Permutations, words, orbits and stabilizer chains.

Permutations are plain tuples of images on ``{0, ..., n-1}`` and act on the
right: ``i * p == p[i]``.  The product ``compose(p, q)`` applies ``p`` first
and then ``q``, so it is the group product ``p q`` in the right-action
convention.  All group theory in this package uses ``compose`` as the
group multiplication.

A word is a tuple of letters ``(generator_index, exponent)`` with exponent
``+1`` or ``-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence, TypeVar

from .errors import DegreeMismatchError, NotAMemberError

Perm = tuple
Letter = tuple  # (generator index, +1 | -1)
Word = tuple

T = TypeVar("T")


def perm(images: Iterable[int]) -> Perm:
    """Validate an image list and return it as a permutation."""
    p = tuple(int(x) for x in images)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"not a permutation: {list(p)}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(n))


def from_cycles(n: int, *cycles: Sequence[int]) -> Perm:
    """Build a permutation of degree ``n`` from disjoint cycles, e.g. ``from_cycles(3, (0, 1, 2))``."""
    images = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            images[a] = b
    return perm(images)


def compose(p: Perm, q: Perm) -> Perm:
    if len(p) != len(q):
        raise DegreeMismatchError(f"degree mismatch: {len(p)} vs {len(q)}")
    return tuple([q[i] for i in p])


def inverse(p: Perm) -> Perm:
    r = [0] * len(p)
    for i, j in enumerate(p):
        r[j] = i
    return tuple(r)


def is_identity(p: Perm) -> bool:
    return all(i == j for i, j in enumerate(p))


def conjugate(p: Perm, x: Perm) -> Perm:
    """Return ``x^-1 p x``."""
    return compose(compose(inverse(x), p), x)


def format_cycles(p: Perm) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def smallest_moved_point(p: Perm) -> int | None:
    for i, j in enumerate(p):
        if i != j:
            return i
    return None


# -- words -----------------------------------------------------------------

def word_inverse(w: Word) -> Word:
    return tuple((g, -e) for g, e in reversed(w))


def reduce_word(w: Iterable[Letter]) -> Word:
    """Free reduction: cancel adjacent ``x x^-1`` pairs."""
    out: list = []
    for letter in w:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def evaluate_word(
    word: Word,
    gens: Sequence[T],
    *,
    mul: Callable[[T, T], T] = compose,
    inv: Callable[[T], T] = inverse,
    one: T | None = None,
) -> T:
    """Left-to-right product of ``gens[i] ** e`` over the letters of ``word``.

    ``one`` is the identity of the target group; for permutations it is
    inferred from the generators when omitted.
    """
    if one is None:
        if not gens:
            raise ValueError("cannot infer identity from an empty generator list")
        one = identity(len(gens[0]))  # type: ignore[arg-type]
    result = one
    inverses: dict[int, T] = {}
    for idx, exp in word:
        if not 0 <= idx < len(gens):
            raise IndexError(f"generator index {idx} out of range for {len(gens)} generators")
        if exp == 1:
            g = gens[idx]
        elif exp == -1:
            if idx not in inverses:
                inverses[idx] = inv(gens[idx])
            g = inverses[idx]
        else:
            raise ValueError(f"exponent must be +1 or -1, got {exp}")
        result = mul(result, g)
    return result


# -- orbits ----------------------------------------------------------------

@dataclass(frozen=True)
class OrbitData:
    orbit: tuple[int, ...]
    transversal: dict[int, Word]
    schreier: tuple[Word, ...]


def orbit_with_words(gens: Sequence[Perm], base: int, degree: int | None = None) -> OrbitData:
    """Breadth-first orbit of ``base`` with transversal and Schreier words.

    Generators are tried in index order, so the output is deterministic.
    ``transversal[i]`` evaluates to an element moving ``base`` to ``i``.
    One Schreier word is emitted for every (orbit point, generator) pair,
    including those that are trivial on the BFS tree.
    """
    if degree is None:
        if not gens:
            raise ValueError("degree is required when there are no generators")
        degree = len(gens[0])
    if not 0 <= base < degree:
        raise IndexError(f"base point {base} out of range for degree {degree}")
    transversal: dict[int, Word] = {base: ()}
    orbit = [base]
    k = 0
    while k < len(orbit):
        p = orbit[k]
        k += 1
        for r, g in enumerate(gens):
            q = g[p]
            if q not in transversal:
                transversal[q] = transversal[p] + ((r, 1),)
                orbit.append(q)
    schreier = []
    for p in orbit:
        for r, g in enumerate(gens):
            w = transversal[p] + ((r, 1),) + word_inverse(transversal[g[p]])
            schreier.append(w)
    return OrbitData(tuple(orbit), transversal, tuple(schreier))


# -- stabilizer chains -----------------------------------------------------

@dataclass
class ChainLevel:
    base_point: int
    generators: list  # [(perm, word)]
    orbit: list
    transversal: dict  # point -> (perm, word)


@dataclass
class StabilizerChain:
    degree: int
    levels: list = field(default_factory=list)
    strong_generators: list = field(default_factory=list)  # [(perm, word)]

    @property
    def base(self) -> tuple[int, ...]:
        return tuple(lv.base_point for lv in self.levels)

    @property
    def order(self) -> int:
        n = 1
        for lv in self.levels:
            n *= len(lv.orbit)
        return n

    def sift(self, g: Perm, word: Word = (), start: int = 0):
        """Strip ``g`` through the levels from ``start``.

        Returns ``(residue, word, level)`` where ``level`` is the first level
        at which the image of the base point left the orbit, or
        ``len(levels)`` if sifting went through.  ``word`` tracks the
        residue: ``residue == word * (transversal words)`` in generator terms.
        """
        for lv_idx in range(start, len(self.levels)):
            lv = self.levels[lv_idx]
            p = g[lv.base_point]
            if p not in lv.transversal:
                return g, word, lv_idx
            u, uw = lv.transversal[p]
            g = compose(g, inverse(u))
            word = reduce_word(word + word_inverse(uw))
        return g, word, len(self.levels)

    def contains(self, g: Perm) -> bool:
        if len(g) != self.degree:
            return False
        residue, _, _ = self.sift(g)
        return is_identity(residue)

    def factor(self, g: Perm) -> Word:
        if len(g) != self.degree:
            raise DegreeMismatchError(f"degree mismatch: {len(g)} vs {self.degree}")
        words = []
        for lv in self.levels:
            p = g[lv.base_point]
            if p not in lv.transversal:
                raise NotAMemberError(f"{format_cycles(g)} is not a member of the group")
            u, uw = lv.transversal[p]
            words.append(uw)
            g = compose(g, inverse(u))
        if not is_identity(g):
            raise NotAMemberError("element is not a member of the group")
        out: tuple = ()
        for w in reversed(words):
            out = out + w
        return reduce_word(out)


def _fixes(g: Perm, points: Iterable[int]) -> bool:
    return all(g[b] == b for b in points)


def _compute_level(degree: int, base_point: int, gens: list) -> ChainLevel:
    transversal = {base_point: (identity(degree), ())}
    orbit = [base_point]
    k = 0
    while k < len(orbit):
        p = orbit[k]
        k += 1
        u, uw = transversal[p]
        for g, gw in gens:
            q = g[p]
            if q not in transversal:
                transversal[q] = (compose(u, g), reduce_word(uw + gw))
                orbit.append(q)
    return ChainLevel(base_point, list(gens), orbit, transversal)


def build_stabilizer_chain(degree: int, generators: Sequence[Perm]) -> StabilizerChain:
    """Deterministic Schreier-Sims.

    Strong generators carry words in ``generators``; a new base point is
    always the smallest point moved by the strong generator that forced it.
    """
    chain = StabilizerChain(degree)
    base: list[int] = []
    strong: list = []

    def add_strong(g: Perm, w: Word) -> None:
        strong.append((g, w))
        if _fixes(g, base):
            base.append(smallest_moved_point(g))

    for a, g in enumerate(generators):
        if not is_identity(g):
            add_strong(g, ((a, 1),))

    def rebuild(from_level: int) -> None:
        del chain.levels[from_level:]
        for i in range(from_level, len(base)):
            gens_i = [s for s in strong if _fixes(s[0], base[:i])]
            chain.levels.append(_compute_level(degree, base[i], gens_i))

    rebuild(0)
    i = len(base) - 1
    while i >= 0:
        lv = chain.levels[i]
        added_at = None
        for p in lv.orbit:
            u, uw = lv.transversal[p]
            for s, sw in lv.generators:
                v, vw = lv.transversal[s[p]]
                h = compose(compose(u, s), inverse(v))
                if is_identity(h):
                    continue
                hw = reduce_word(uw + sw + word_inverse(vw))
                residue, rw, j = chain.sift(h, hw, i + 1)
                if not is_identity(residue):
                    add_strong(residue, rw)
                    rebuild(i + 1)
                    added_at = j
                    break
            if added_at is not None:
                break
        if added_at is None:
            i -= 1
        else:
            i = added_at
    chain.strong_generators = strong
    return chain


class PermGroup:
    """A permutation group given by a nonempty sequence of generators.

    Two groups are equal iff degree and generator sequence coincide: the
    generator sequence is part of the identity because words and action
    pairs refer to generators by index.
    """

    def __init__(self, generators: Iterable[Sequence[int]], degree: int | None = None):
        gens = tuple(perm(g) for g in generators)
        if not gens:
            if degree is None:
                raise ValueError("a group needs at least one generator or an explicit degree")
            gens = (identity(degree),)
        if degree is None:
            degree = len(gens[0])
        for g in gens:
            if len(g) != degree:
                raise DegreeMismatchError(f"generator of degree {len(g)} in a group of degree {degree}")
        self.degree = degree
        self.generators = gens

    def __eq__(self, other):
        if not isinstance(other, PermGroup):
            return NotImplemented
        return self.degree == other.degree and self.generators == other.generators

    def __hash__(self):
        return hash((self.degree, self.generators))

    def __repr__(self):
        return f"PermGroup([{', '.join(format_cycles(g) for g in self.generators)}], degree={self.degree})"

    @property
    def identity(self) -> Perm:
        return identity(self.degree)

    @cached_property
    def chain(self) -> StabilizerChain:
        return build_stabilizer_chain(self.degree, self.generators)

    @property
    def order(self) -> int:
        return self.chain.order

    @cached_property
    def elements(self) -> tuple[Perm, ...]:
        """All elements, sorted lexicographically by image list."""
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = compose(x, g)
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(seen))

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __contains__(self, g) -> bool:
        return self.chain.contains(tuple(g))

    def __len__(self) -> int:
        return self.order

    def __iter__(self):
        return iter(self.elements)

    def factor(self, g: Perm) -> Word:
        return factor_element(self, g)


def stabilizer_chain(G: PermGroup) -> StabilizerChain:
    return G.chain


def factor_element(G: PermGroup, g: Perm) -> Word:
    """Word in ``G.generators`` evaluating to ``g``, obtained by sifting."""
    return G.chain.factor(tuple(g))


def trivial_group(degree: int = 1) -> PermGroup:
    return PermGroup([], degree=degree)

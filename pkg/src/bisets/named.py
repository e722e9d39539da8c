"""Small named groups used in tests, fixtures and the CLI."""
from __future__ import annotations

from .perm import PermGroup, from_cycles


def cyclic(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1)
    return PermGroup([from_cycles(n, tuple(range(n)))])


def symmetric(n: int) -> PermGroup:
    if n == 1:
        return PermGroup([], degree=1)
    if n == 2:
        return PermGroup([from_cycles(2, (0, 1))])
    return PermGroup([from_cycles(n, (0, 1)), from_cycles(n, tuple(range(n)))])


def alternating(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], degree=n)
    gens = [from_cycles(n, (0, 1, k)) for k in range(2, n)]
    return PermGroup(gens)


def dihedral(n: int) -> PermGroup:
    """Symmetries of a regular n-gon, order 2n."""
    rot = from_cycles(n, tuple(range(n)))
    refl = tuple((-i) % n for i in range(n))
    return PermGroup([rot, refl])


def klein_four() -> PermGroup:
    return PermGroup([from_cycles(4, (0, 1), (2, 3)), from_cycles(4, (0, 2), (1, 3))])


def quaternion() -> PermGroup:
    """Q8 in its right regular representation on {1, i, j, k, -1, -i, -j, -k}."""
    # unit quaternions encoded as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elems = [(s, a) for s in (1, -1) for a in range(4)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(x, y):
        s, a = table[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    gens = [tuple(index[mul(x, g)] for x in elems) for g in [(1, 1), (1, 2)]]
    return PermGroup(gens)


NAMED = {
    "C1": lambda: cyclic(1),
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C2xC2": klein_four,
    "S3": lambda: symmetric(3),
    "D8": lambda: dihedral(4),
    "Q8": quaternion,
    "A4": lambda: alternating(4),
    "S4": lambda: symmetric(4),
}


def named_group(name: str) -> PermGroup:
    try:
        return NAMED[name]()
    except KeyError:
        raise KeyError(f"unknown group name {name!r}; known: {sorted(NAMED)}") from None

"""Finite groups given by explicit multiplication tables."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Optional, Sequence


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    """Group on the indices ``0..order-1``; ``table[g][h]`` is the index of ``g*h``."""

    order: int
    table: tuple[tuple[int, ...], ...]
    generators: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(tuple(int(x) for x in row) for row in self.table))
        object.__setattr__(self, "generators", tuple(int(g) for g in self.generators))

    def mul(self, g: int, h: int) -> int:
        return self.table[g][h]

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(self.order)):
                return e
        raise GroupError("no identity element")

    def inverse(self, g: int) -> int:
        e = self.identity
        for h in range(self.order):
            if self.table[g][h] == e:
                return h
        raise GroupError(f"element {g} has no inverse")

    def element_order(self, g: int) -> int:
        e, x, k = self.identity, g, 1
        while x != e:
            x = self.table[x][g]
            k += 1
        return k

    def check(self) -> Optional[str]:
        """Brute-force check of the group axioms; returns a message on failure."""
        n = self.order
        if len(self.table) != n or any(len(row) != n for row in self.table):
            return "table is not order x order"
        if any(not 0 <= x < n for row in self.table for x in row):
            return "table entry out of range"
        try:
            e = self.identity
            for g in range(n):
                self.inverse(g)
        except GroupError as exc:
            return str(exc)
        for a, b, c in product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                return f"associativity fails at ({a}, {b}, {c})"
        if any(not 0 <= g < n for g in self.generators):
            return "generator out of range"
        if len(closure(self, self.generators)) != n:
            return "generators do not generate the group"
        del e
        return None

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table], "generators": list(self.generators)}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteGroup":
        group = cls(int(obj["order"]), obj["table"], obj.get("generators", []), obj.get("name", ""))
        msg = group.check()
        if msg:
            raise GroupError(f"invalid group: {msg}")
        return group


def closure(group: FiniteGroup, gens: Sequence[int]) -> set[int]:
    seen = {group.identity}
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = group.mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def group_from_elements(elements: Sequence[Hashable], mul: Callable, gens: Sequence[Hashable], name="") -> FiniteGroup:
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    return FiniteGroup(len(elements), table, [index[g] for g in gens], name)


def generated_group(gens: Sequence[Hashable], mul: Callable, identity: Hashable, name="") -> FiniteGroup:
    """Close ``gens`` under ``mul`` and tabulate the result (identity gets index 0)."""
    elements = [identity]
    seen = {identity}
    i = 0
    while i < len(elements):
        for g in gens:
            y = mul(elements[i], g)
            if y not in seen:
                seen.add(y)
                elements.append(y)
        i += 1
    return group_from_elements(elements, mul, gens, name)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(1, [[0]], [], "Z1")


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("order must be positive")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(n, table, [1] if n > 1 else [], f"Z{n}")


def direct_product(G: FiniteGroup, H: FiniteGroup, name="") -> FiniteGroup:
    elements = [(g, h) for g in range(G.order) for h in range(H.order)]
    gens = [(g, H.identity) for g in G.generators] + [(G.identity, h) for h in H.generators]
    return group_from_elements(
        elements, lambda a, b: (G.mul(a[0], b[0]), H.mul(a[1], b[1])), gens, name or f"{G.name}x{H.name}"
    )


def dihedral_group(n: int) -> FiniteGroup:
    """D_n of order 2n, acting on an n-gon (n >= 3), or the Klein group for n = 2."""
    def mul(a, b):
        (r1, f1), (r2, f2) = a, b
        return ((r1 - r2 if f1 else r1 + r2) % n, f1 ^ f2)
    elements = [(r, f) for f in (0, 1) for r in range(n)]
    return group_from_elements(elements, mul, [(1 % n, 0), (0, 1)], f"D{n}")


def quaternion_group() -> FiniteGroup:
    # Unit quaternions {±1, ±i, ±j, ±k} as (sign, basis) with basis in 1,i,j,k.
    rules = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }

    def mul(a, b):
        s, q = rules[(a[1], b[1])]
        return (a[0] * b[0] * s, q)

    elements = [(s, q) for s in (1, -1) for q in "1ijk"]
    return group_from_elements(elements, mul, [(1, "i"), (1, "j")], "Q8")


def symmetric_group(n: int) -> FiniteGroup:
    def mul(p, q):
        return tuple(p[q[i]] for i in range(n))
    ident = tuple(range(n))
    if n == 1:
        return trivial_group()
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return generated_group(gens, mul, ident, f"S{n}")


def named_group(name: str) -> FiniteGroup:
    """Parse names such as ``Z2``, ``Z2xZ4``, ``D5``, ``S3``, ``Q8``, ``V4``."""
    factors = [f.strip() for f in name.upper().replace("×", "X").split("X") if f.strip()]
    if not factors:
        raise GroupError(f"empty group name {name!r}")
    groups = []
    for f in factors:
        m = re.fullmatch(r"([ZCDS])(\d+)|Q8|V4", f)
        if not m:
            raise GroupError(f"unrecognised group {f!r}")
        if f == "Q8":
            groups.append(quaternion_group())
        elif f == "V4":
            groups.append(direct_product(cyclic_group(2), cyclic_group(2), "V4"))
        else:
            kind, k = m.group(1), int(m.group(2))
            if kind in "ZC":
                groups.append(cyclic_group(k))
            elif kind == "D":
                groups.append(dihedral_group(k))
            else:
                groups.append(symmetric_group(k))
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return FiniteGroup(out.order, out.table, out.generators, name)


def small_groups(max_order: int = 10) -> list[FiniteGroup]:
    """One representative of every isomorphism type of order <= ``max_order`` (max 10)."""
    if max_order > 10:
        raise GroupError("only orders up to 10 are tabulated")
    names = [
        "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7",
        "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8", "Z9", "Z3xZ3", "Z10", "D5",
    ]
    out = [named_group(nm) for nm in names]
    return [g for g in out if g.order <= max_order]


def extend_homomorphism(group: FiniteGroup, gen_images: Sequence, mul: Callable, identity) -> Optional[list]:
    """Extend generator images to a homomorphism, or return ``None`` if impossible."""
    images: list = [None] * group.order
    images[group.identity] = identity
    frontier = [group.identity]
    while frontier:
        x = frontier.pop()
        for g, img in zip(group.generators, gen_images):
            y = group.mul(x, g)
            val = mul(images[x], img)
            if images[y] is None:
                images[y] = val
                frontier.append(y)
            elif images[y] != val:
                return None
    if any(im is None for im in images):
        return None
    for a in range(group.order):
        for b in range(group.order):
            if images[group.mul(a, b)] != mul(images[a], images[b]):
                return None
    return images


def homomorphisms(group: FiniteGroup, targets: Sequence, mul: Callable, identity) -> list[list]:
    out = []
    for gen_images in product(targets, repeat=len(group.generators)):
        images = extend_homomorphism(group, gen_images, mul, identity)
        if images is not None and images not in out:
            out.append(images)
    return out

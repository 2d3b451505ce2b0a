"""Cycle graphs, dihedral symmetries and finite-group actions on cycles.

Vertices of an n-cycle are the integers ``0..n-1``; edge ``i`` joins
vertex ``i`` to vertex ``i+1 (mod n)``.  For ``n == 2`` the two edges
are distinct even though they have the same endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

from .groups import FiniteGroup, trivial_group


@dataclass(frozen=True)
class CycleGraph:
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"a cycle needs at least two vertices, got n={self.n}")

    @property
    def vertices(self):
        return range(self.n)

    @property
    def edges(self):
        """Edges as (index, (u, v), multiplicity tag)."""
        out = []
        for i in range(self.n):
            tag = i if self.n == 2 else 0
            out.append((i, (i, (i + 1) % self.n), tag))
        return out

    def edge_endpoints(self, i: int) -> tuple[int, int]:
        return i % self.n, (i + 1) % self.n

    def adjacency_count(self, u: int, v: int) -> int:
        """Number of edges joining ``u`` and ``v``."""
        u, v = u % self.n, v % self.n
        if u == v:
            return 0
        if self.n == 2:
            return 2
        return int((u - v) % self.n in (1, self.n - 1))


@dataclass(frozen=True, order=True)
class DihedralElement:
    """Symmetry of an n-cycle: ``v -> rot + v`` or, if ``refl``, ``v -> rot - v``."""

    rot: int
    refl: bool
    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be at least 2")
        object.__setattr__(self, "rot", self.rot % self.n)
        object.__setattr__(self, "refl", bool(self.refl))

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(0, False, n)

    def __call__(self, v: int) -> int:
        return (self.rot - v if self.refl else self.rot + v) % self.n

    def edge(self, i: int) -> int:
        """Image of edge ``i`` (the edge from ``i`` to ``i+1``)."""
        return (self.rot - i - 1 if self.refl else self.rot + i) % self.n

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return compose(self, other)

    def inverse(self) -> "DihedralElement":
        if self.refl:
            return self
        return DihedralElement(-self.rot, False, self.n)

    def is_identity(self) -> bool:
        return self.rot == 0 and not self.refl

    def key(self) -> tuple[int, int]:
        return (self.rot, int(self.refl))

    def to_json(self) -> dict:
        return {"rot": self.rot, "refl": self.refl}

    @classmethod
    def from_json(cls, obj: dict, n: int) -> "DihedralElement":
        return cls(int(obj["rot"]), bool(obj["refl"]), n)


def compose(g: DihedralElement, h: DihedralElement, n: Optional[int] = None) -> DihedralElement:
    """Return ``g o h`` (apply ``h`` first)."""
    if g.n != h.n or (n is not None and n != g.n):
        raise ValueError(f"cannot compose elements of D_{g.n} and D_{h.n}")
    return _compose(g, h)


@lru_cache(maxsize=None)
def _compose(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    rot = g.rot - h.rot if g.refl else g.rot + h.rot
    return DihedralElement(rot, g.refl != h.refl, g.n)


def all_elements(n: int) -> list[DihedralElement]:
    return list(_all_elements(n))


@lru_cache(maxsize=None)
def _all_elements(n: int) -> tuple[DihedralElement, ...]:
    return tuple(DihedralElement(r, f, n) for f in (False, True) for r in range(n))


@lru_cache(maxsize=None)
def conjugate(c: DihedralElement, g: DihedralElement) -> DihedralElement:
    """``c o g o c^-1``."""
    return compose(compose(c, g), c.inverse())


def sign_character(g: DihedralElement) -> int:
    return -1 if g.refl else 1


def dihedral_iso_from_pair(v0: int, v1: int, n: int) -> dict[str, DihedralElement]:
    """Images of the abstract generators under the identification fixed by ``(v0, v1)``.

    ``tau`` goes to the rotation taking ``v0`` to ``v1`` and ``sigma`` to the
    reflection fixing ``v0``.
    """
    v0, v1 = v0 % n, v1 % n
    step = (v1 - v0) % n
    if step not in (1, n - 1) or v0 == v1:
        raise ValueError(f"vertices {v0} and {v1} are not neighbours on a {n}-cycle")
    return {
        "tau": DihedralElement(step, False, n),
        "sigma": DihedralElement(2 * v0, True, n),
    }


def abstract_to_cycle(v0: int, v1: int, n: int) -> dict[DihedralElement, DihedralElement]:
    """The full isomorphism ``T_{v0,v1}`` as a lookup table.

    Abstract elements are encoded as ``DihedralElement(k, e, n)`` meaning
    ``tau^k sigma^e``; with ``(v0, v1) = (0, 1)`` the table is the identity.
    """
    gens = dihedral_iso_from_pair(v0, v1, n)
    tau, sigma = gens["tau"], gens["sigma"]
    table = {}
    for e in (False, True):
        for k in range(n):
            img = DihedralElement.identity(n)
            for _ in range(k):
                img = compose(img, tau)
            if e:
                img = compose(img, sigma)
            table[DihedralElement(k, e, n)] = img
    return table


def is_cycle_automorphism(perm: Sequence[int], n: int) -> bool:
    """Check that a vertex permutation preserves the cycle adjacency."""
    graph = CycleGraph(n)
    return all(
        graph.adjacency_count(perm[u], perm[v]) == graph.adjacency_count(u, v)
        for u in range(n)
        for v in range(n)
    )


def cycle_automorphisms_brute_force(n: int) -> list[tuple[int, ...]]:
    return [p for p in permutations(range(n)) if is_cycle_automorphism(p, n)]


def element_from_images(vertex0: int, edge0: int, n: int) -> DihedralElement:
    """Recover the symmetry sending vertex 0 to ``vertex0`` and edge 0 to ``edge0``."""
    if edge0 % n == vertex0 % n:
        return DihedralElement(vertex0, False, n)
    if edge0 % n == (vertex0 - 1) % n:
        return DihedralElement(vertex0, True, n)
    raise ValueError(f"vertex {vertex0} is not an endpoint of edge {edge0}")


@dataclass(frozen=True)
class CycleAction:
    """A finite group acting on an n-cycle through dihedral symmetries."""

    group: FiniteGroup
    n: int
    images: tuple[DihedralElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))

    @classmethod
    def trivial(cls, n: int, group: Optional[FiniteGroup] = None) -> "CycleAction":
        group = group or trivial_group()
        return cls(group, n, tuple(DihedralElement.identity(n) for _ in range(group.order)))

    def __call__(self, g: int) -> DihedralElement:
        return self.images[g]

    def is_trivial(self) -> bool:
        return all(img.is_identity() for img in self.images)

    def vertex_orbits(self) -> list[frozenset[int]]:
        return _orbits(self.n, lambda img, v: img(v), self.images)

    def edge_orbits(self) -> list[frozenset[int]]:
        return _orbits(self.n, lambda img, e: img.edge(e), self.images)

    def relabel(self, c: DihedralElement) -> "CycleAction":
        """Transport the action along the relabeling ``v -> c(v)``."""
        return CycleAction(self.group, self.n, tuple(conjugate(c, g) for g in self.images))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "group": self.group.to_json(),
            "images": [img.to_json() for img in self.images],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CycleAction":
        n = int(obj["n"])
        group = FiniteGroup.from_json(obj["group"])
        images = tuple(DihedralElement.from_json(im, n) for im in obj["images"])
        return cls(group, n, images)


def _orbits(n, act, images):
    seen, out = set(), []
    for start in range(n):
        if start in seen:
            continue
        orbit = {act(img, start) for img in images} | {start}
        seen |= orbit
        out.append(frozenset(orbit))
    return out


def action_violation(rho: CycleAction) -> Optional[str]:
    """First violated condition of ``rho`` as a message, or ``None`` if valid."""
    G = rho.group
    if len(rho.images) != G.order:
        return f"expected {G.order} images, got {len(rho.images)}"
    for g, img in enumerate(rho.images):
        if img.n != rho.n:
            return f"image of element {g} lives on a {img.n}-cycle, not a {rho.n}-cycle"
    if not rho.images[G.identity].is_identity():
        return f"identity element {G.identity} is not sent to the identity"
    for g in range(G.order):
        for h in range(G.order):
            lhs = rho.images[G.mul(g, h)]
            rhs = compose(rho.images[g], rho.images[h])
            if lhs != rhs:
                return f"rho({g}*{h}) = {lhs.key()} but rho({g}) o rho({h}) = {rhs.key()}"
    return None


def validate_action(rho: CycleAction) -> tuple[bool, Optional[str]]:
    msg = action_violation(rho)
    return msg is None, msg

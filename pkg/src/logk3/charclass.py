"""Characteristic classes in H^1(G, D5) for finite Galois data, and explicit models."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import sympy

from .dihedral import (
    CycleAction,
    DihedralElement,
    abstract_to_cycle,
    action_violation,
    all_elements,
    conjugate,
    sign_character,
)
from .groups import FiniteGroup, homomorphisms

N = 5


class ClassError(ValueError):
    pass


def _canonical_rep(rep: tuple[DihedralElement, ...]) -> tuple[DihedralElement, ...]:
    return min(
        (tuple(conjugate(c, g) for g in rep) for c in all_elements(N)),
        key=lambda t: tuple(g.key() for g in t),
    )


@dataclass(frozen=True)
class CocycleClass:
    """D5-conjugacy class of a homomorphism ``group -> D5``, stored in canonical form."""

    group: FiniteGroup
    rep: tuple[DihedralElement, ...]

    def __post_init__(self):
        object.__setattr__(self, "rep", _canonical_rep(tuple(self.rep)))

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.rep)

    def image(self) -> frozenset[DihedralElement]:
        return frozenset(self.rep)

    def orbit_size(self) -> int:
        """Number of distinct homomorphisms in this conjugacy class."""
        return len({tuple(conjugate(c, g) for g in self.rep) for c in all_elements(N)})

    def to_json(self) -> dict:
        return {"group": self.group.to_json(), "rep": [g.to_json() for g in self.rep]}

    @classmethod
    def from_json(cls, obj: dict) -> "CocycleClass":
        group = FiniteGroup.from_json(obj["group"])
        return cls(group, tuple(DihedralElement.from_json(g, N) for g in obj["rep"]))


def class_from_action(rho: CycleAction, v0: int = 0, v1: int = 1) -> CocycleClass:
    if rho.n != N:
        raise ClassError(f"characteristic classes live on the 5-cycle, got n={rho.n}")
    msg = action_violation(rho)
    if msg:
        raise ClassError(f"invalid action: {msg}")
    forward = abstract_to_cycle(v0, v1, N)
    backward = {img: abstract for abstract, img in forward.items()}
    return CocycleClass(rho.group, tuple(backward[g] for g in rho.images))


def h1_homomorphisms(G: FiniteGroup) -> list[tuple[DihedralElement, ...]]:
    msg = G.check()
    if msg:
        raise ClassError(f"invalid group: {msg}")
    homs = homomorphisms(G, all_elements(N), lambda a, b: a * b, DihedralElement.identity(N))
    return [tuple(h) for h in homs]


def h1_enumerate(G: FiniteGroup) -> list[CocycleClass]:
    """All classes in H^1(G, D5), trivial class first."""
    classes = {CocycleClass(G, h) for h in h1_homomorphisms(G)}
    return sorted(classes, key=lambda c: (len(c.image()), tuple(g.key() for g in c.rep)))


def sign_pushforward(c: CocycleClass) -> tuple[int, ...]:
    return tuple(sign_character(g) for g in c.rep)


def is_quadratic(c: CocycleClass) -> bool:
    return len(c.image()) <= 2


def image_order(c: CocycleClass) -> int:
    return len(c.image())


def is_squarefree(a: int) -> bool:
    if a == 0:
        return False
    return all(e == 1 for e in sympy.factorint(abs(a)).values())


@dataclass(frozen=True)
class ModelDescriptor:
    kind: str  # "trivial", "quadratic" or "non-explicit"
    a: Optional[int] = None
    note: str = field(default="", compare=False)

    @property
    def equation(self) -> Optional[dict]:
        if self.kind == "trivial":
            coeffs = dict(a=1, b=0, c=0, d=-1, e=1, f=-1)
            return {"family": "bilinear", "coeffs": coeffs, "text": "(xy - 1)t = x - 1"}
        if self.kind == "quadratic":
            coeffs = dict(a=self.a, b=0, c=1, d=-1)
            return {"family": "normform", "coeffs": coeffs, "text": f"(x^2 - {self.a}y^2)t = y - 1"}
        return None

    def surface_model(self):
        from .points import SurfaceModel

        eq = self.equation
        if eq is None:
            raise ClassError("no explicit equation is known for this class")
        return SurfaceModel(eq["family"], {k: Fraction(v) for k, v in eq["coeffs"].items()})

    def to_json(self) -> dict:
        out = {"kind": self.kind, "equation": self.equation}
        if self.a is not None:
            out["a"] = self.a
        if self.note:
            out["note"] = self.note
        return out


def model_from_class(c: CocycleClass, a: Optional[int] = None) -> ModelDescriptor:
    if c.is_trivial():
        return ModelDescriptor("trivial")
    if is_quadratic(c):
        if a is None:
            raise ClassError("a quadratic class needs the square-free integer a of its splitting field")
        if not is_squarefree(a):
            raise ClassError(f"a={a} is not square-free")
        if sympy.sqrt(a).is_Integer:
            raise ClassError(f"a={a} is a square, so it cannot split a nontrivial class")
        return ModelDescriptor("quadratic", a)
    return ModelDescriptor(
        "non-explicit",
        note=f"image of order {image_order(c)}: such surfaces exist but no explicit equation is known",
    )

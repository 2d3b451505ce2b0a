"""Self-intersection sequences on boundary cycles and the corner blow-up/blow-down calculus."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

import sympy

from .dihedral import (
    CycleAction,
    DihedralElement,
    action_violation,
    all_elements,
    element_from_images,
)
from .groups import FiniteGroup


class RewriteError(ValueError):
    """An illegal corner blow-up or blow-down."""


class ReductionError(ValueError):
    """The reduction to degree 5 cannot proceed."""


Seq = tuple[int, ...]


def relabel_seq(seq: Sequence[int], g: DihedralElement) -> Seq:
    """Move the entry at vertex ``i`` to vertex ``g(i)``."""
    out = [0] * len(seq)
    for i, a in enumerate(seq):
        out[g(i)] = a
    return tuple(out)


def canonical_seq(seq: Sequence[int]) -> Seq:
    """Lexicographically least sequence in the dihedral orbit of ``seq``."""
    return min(relabel_seq(seq, g) for g in all_elements(len(seq)))


def seq_equivalent(s1: Sequence[int], s2: Sequence[int]) -> bool:
    return len(s1) == len(s2) and canonical_seq(s1) == canonical_seq(s2)


@dataclass(frozen=True)
class LogK3Structure:
    degree: int
    seq: Seq
    action: CycleAction = None
    ample: bool = True

    def __post_init__(self):
        object.__setattr__(self, "seq", tuple(int(a) for a in self.seq))
        if len(self.seq) < 2:
            raise ValueError("a boundary cycle has at least two components")
        if self.action is None:
            object.__setattr__(self, "action", CycleAction.trivial(len(self.seq)))
        if self.action.n != len(self.seq):
            raise ValueError(f"action is on a {self.action.n}-cycle but the sequence has length {len(self.seq)}")

    @property
    def n(self) -> int:
        return len(self.seq)

    def relabel(self, g: DihedralElement) -> "LogK3Structure":
        return LogK3Structure(self.degree, relabel_seq(self.seq, g), self.action.relabel(g), self.ample)

    def to_json(self) -> dict:
        return {"degree": self.degree, "seq": list(self.seq), "action": self.action.to_json(), "ample": self.ample}

    @classmethod
    def from_json(cls, obj: dict) -> "LogK3Structure":
        seq = [int(a) for a in obj["seq"]]
        if obj.get("action") is None:
            action = CycleAction.trivial(len(seq))
        else:
            action = CycleAction.from_json(obj["action"])
        return cls(int(obj["degree"]), seq, action, bool(obj.get("ample", True)))


def structure_violation(s: LogK3Structure) -> Optional[str]:
    msg = action_violation(s.action)
    if msg:
        return msg
    for img in s.action.images:
        for i, a in enumerate(s.seq):
            if s.seq[img(i)] != a:
                return f"action moves vertex {i} (entry {a}) to vertex {img(i)} (entry {s.seq[img(i)]})"
    if s.ample:
        if not 1 <= s.degree <= 8:
            return f"ample structures have degree in [1, 8], got {s.degree}"
        if min(s.seq) < -1:
            return f"ample structures have entries >= -1, got {s.seq}"
    return None


def sum_invariant_check(s: LogK3Structure) -> bool:
    return len(s.seq) == 10 - s.degree and sum(s.seq) == 3 * s.degree - 20


def intersection_matrix(seq: Sequence[int]) -> list[list[int]]:
    n = len(seq)
    if n < 2:
        raise ValueError("intersection matrix needs n >= 2")
    m = [[0] * n for _ in range(n)]
    for i, a in enumerate(seq):
        m[i][i] = int(a)
        j = (i + 1) % n
        m[i][j] += 1
        m[j][i] += 1
    return m


def intersection_det(seq: Sequence[int]) -> int:
    return int(sympy.Matrix(intersection_matrix(seq)).det())


def unimodular_check(seq: Sequence[int]) -> bool:
    return abs(intersection_det(seq)) == 1


def _compositions(total: int, parts: int, low: int) -> Iterable[Seq]:
    if parts == 1:
        if total >= low:
            yield (total,)
        return
    for first in range(low, total - low * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, low):
            yield (first,) + rest


def candidate_sequences(d: int) -> set[Seq]:
    """All canonical sequences of length 10-d, entries >= -1, summing to 3d-20."""
    return {canonical_seq(s) for s in _compositions(3 * d - 20, 10 - d, -1)}


def enumerate_admissible(d: int) -> set[Seq]:
    return set(_admissible(d))


@lru_cache(maxsize=None)
def _admissible(d: int) -> frozenset[Seq]:
    if not 5 <= d <= 8:
        raise ValueError(f"degree must lie in [5, 8], got {d}")
    return frozenset(s for s in candidate_sequences(d) if unimodular_check(s))


def is_admissible(s: LogK3Structure) -> bool:
    return 5 <= s.degree <= 8 and len(s.seq) == 10 - s.degree and canonical_seq(s.seq) in _admissible(s.degree)


# ---------------------------------------------------------------------------
# Rewriting


def _transport_action(action: CycleAction, new_vertices, new_edges, vmap, emap) -> CycleAction:
    """Build the induced action on a new cycle described by vertex/edge labels.

    ``vmap(img, label)`` / ``emap(img, label)`` give the image label of a
    vertex / edge label under an old symmetry ``img``.
    """
    n = len(new_vertices)
    vpos = {lab: i for i, lab in enumerate(new_vertices)}
    epos = {lab: i for i, lab in enumerate(new_edges)}
    images = []
    for img in action.images:
        perm_v = [vpos[vmap(img, lab)] for lab in new_vertices]
        perm_e = [epos[emap(img, lab)] for lab in new_edges]
        g = element_from_images(perm_v[0], perm_e[0], n)
        if any(g(i) != perm_v[i] for i in range(n)) or any(g.edge(i) != perm_e[i] for i in range(n)):
            raise RewriteError("induced permutation is not a cycle symmetry")
        images.append(g)
    return CycleAction(action.group, n, tuple(images))


def _is_stable(action: CycleAction, items: frozenset, edges: bool) -> bool:
    for img in action.images:
        moved = {img.edge(i) if edges else img(i) for i in items}
        if moved != set(items):
            return False
    return True


def corner_blow_up(s: LogK3Structure, edge_orbit: Iterable[int], ample: Optional[bool] = None) -> LogK3Structure:
    """Blow up the boundary corners on the edges in ``edge_orbit``.

    Each blown edge gets a new (-1)-vertex and both its endpoints lose 1
    (a vertex on two blown edges loses 2).  The new cycle keeps old vertex 0
    at position 0.
    """
    ample = s.ample if ample is None else ample
    n = s.n
    orbit = frozenset(int(e) % n for e in edge_orbit)
    if not orbit:
        raise RewriteError("empty edge orbit")
    if not _is_stable(s.action, orbit, edges=True):
        raise RewriteError(f"edge set {sorted(orbit)} is not stable under the action")
    degree = s.degree - len(orbit)
    if degree < 1:
        raise RewriteError(f"degree would drop to {degree}")
    entries = list(s.seq)
    for e in orbit:
        u, v = e, (e + 1) % n
        entries[u] -= 1
        entries[v] -= 1
    if ample and min(entries) < -1:
        raise RewriteError(f"blow-up of {sorted(orbit)} leaves an entry below -1: {entries}")

    new_vertices, new_seq, new_edges = [], [], []
    for i in range(n):
        new_vertices.append(("v", i))
        new_seq.append(entries[i])
        if i in orbit:
            new_edges.append(("h", i, 0))
            new_vertices.append(("x", i))
            new_seq.append(-1)
            new_edges.append(("h", i, 1))
        else:
            new_edges.append(("e", i))

    def vmap(img, lab):
        return (lab[0], img(lab[1]) if lab[0] == "v" else img.edge(lab[1]))

    def emap(img, lab):
        if lab[0] == "e":
            return ("e", img.edge(lab[1]))
        side = 1 - lab[2] if img.refl else lab[2]
        return ("h", img.edge(lab[1]), side)

    action = _transport_action(s.action, new_vertices, new_edges, vmap, emap)
    return LogK3Structure(degree, tuple(new_seq), action, ample)


def corner_blow_down(s: LogK3Structure, vertex_orbit: Iterable[int], ample: Optional[bool] = None) -> LogK3Structure:
    """Contract the (-1)-vertices in ``vertex_orbit``; their neighbours gain 1 each."""
    ample = s.ample if ample is None else ample
    n = s.n
    orbit = frozenset(int(v) % n for v in vertex_orbit)
    if not orbit:
        raise RewriteError("empty vertex orbit")
    if n < 3:
        raise RewriteError("cannot blow down on a cycle with fewer than three components")
    if n - len(orbit) < 2:
        raise RewriteError(f"blowing down {len(orbit)} of {n} components leaves fewer than two")
    bad = [v for v in sorted(orbit) if s.seq[v] != -1]
    if bad:
        raise RewriteError(f"vertices {bad} are not (-1)-curves")
    for v in orbit:
        if (v + 1) % n in orbit:
            raise RewriteError(f"vertices {v} and {(v + 1) % n} in the orbit are adjacent")
    if not _is_stable(s.action, orbit, edges=False):
        raise RewriteError(f"vertex set {sorted(orbit)} is not stable under the action")

    entries = list(s.seq)
    for v in orbit:
        entries[(v - 1) % n] += 1
        entries[(v + 1) % n] += 1
    kept = [i for i in range(n) if i not in orbit]
    new_vertices = [("v", i) for i in kept]
    new_seq = tuple(entries[i] for i in kept)
    new_edges = []
    for i in kept:
        nxt = (i + 1) % n
        new_edges.append(("m", nxt) if nxt in orbit else ("e", i))

    def vmap(img, lab):
        return ("v", img(lab[1]))

    def emap(img, lab):
        return ("m", img(lab[1])) if lab[0] == "m" else ("e", img.edge(lab[1]))

    action = _transport_action(s.action, new_vertices, new_edges, vmap, emap)
    return LogK3Structure(s.degree + len(orbit), new_seq, action, ample)


@dataclass(frozen=True)
class Rewrite:
    op: str  # "blow_up" or "blow_down"
    orbit: tuple[int, ...]
    result: LogK3Structure = field(compare=False)

    def to_json(self) -> dict:
        return {"op": self.op, "orbit": list(self.orbit), "result_seq": list(self.result.seq)}


def apply_rewrite(s: LogK3Structure, op: str, orbit: Iterable[int]) -> Rewrite:
    orbit = tuple(sorted(set(orbit)))
    if op == "blow_up":
        return Rewrite(op, orbit, corner_blow_up(s, orbit))
    if op == "blow_down":
        return Rewrite(op, orbit, corner_blow_down(s, orbit))
    raise RewriteError(f"unknown rewrite {op!r}")


def _orbit_unions(orbits: list[frozenset]) -> Iterable[frozenset]:
    for k in range(1, len(orbits) + 1):
        for combo in combinations(orbits, k):
            yield frozenset().union(*combo)


def legal_rewrites(s: LogK3Structure, min_degree: int = 5, max_degree: int = 8) -> list[tuple[str, tuple[int, ...]]]:
    """Every ample-preserving rewrite of ``s`` keeping the degree in range."""
    moves = []
    for orbit in _orbit_unions(s.action.edge_orbits()):
        if s.degree - len(orbit) < min_degree:
            continue
        try:
            corner_blow_up(s, orbit, ample=True)
        except RewriteError:
            continue
        moves.append(("blow_up", tuple(sorted(orbit))))
    minus_one = [o for o in s.action.vertex_orbits() if all(s.seq[v] == -1 for v in o)]
    for orbit in _orbit_unions(minus_one):
        if s.degree + len(orbit) > max_degree:
            continue
        try:
            corner_blow_down(s, orbit, ample=True)
        except RewriteError:
            continue
        moves.append(("blow_down", tuple(sorted(orbit))))
    return moves


def _find(seq: Seq, pattern: Seq) -> Optional[DihedralElement]:
    """A symmetry ``g`` with ``relabel_seq(pattern, g) == seq``."""
    for g in all_elements(len(seq)):
        if relabel_seq(pattern, g) == seq:
            return g
    return None


def _next_step(s: LogK3Structure) -> tuple[str, tuple[int, ...]]:
    """The rewrite prescribed by the case analysis for ample structures of degree 6-8."""
    canon = canonical_seq(s.seq)
    if s.degree == 8 and canon == (1, 3):
        return "blow_up", (0, 1)
    if s.degree == 7 and canon == (0, 0, 1):
        g = _find(s.seq, (0, 0, 1))
        # the two edges at the 1-vertex: edge 1 (0-1) and edge 2 (1-0) in pattern labels
        return "blow_up", tuple(sorted(g.edge(e) for e in (1, 2)))
    if s.degree == 7 and canon == (-1, 0, 2):
        g = _find(s.seq, (-1, 0, 2))
        return "blow_up", (g.edge(1),)
    if s.degree == 6 and canon == (-1, -1, 0, 0):
        g = _find(s.seq, (-1, -1, 0, 0))
        return "blow_up", (g.edge(2),)
    if s.degree == 6 and canon == (-1, -1, -1, 1):
        g = _find(s.seq, (-1, -1, -1, 1))
        return "blow_down", (g(1),)
    raise ReductionError(f"degree {s.degree} sequence {s.seq} is not admissible")


def reduce_to_degree5(s: LogK3Structure) -> tuple[LogK3Structure, list[Rewrite]]:
    """Rewrite an admissible ample structure to the all-(-1) five-cycle."""
    msg = structure_violation(s)
    if msg:
        raise ReductionError(f"invalid structure: {msg}")
    if not s.ample or not is_admissible(s):
        raise ReductionError(f"degree {s.degree} sequence {s.seq} is not an admissible ample structure")
    trace: list[Rewrite] = []
    cur = s
    while cur.degree != 5:
        op, orbit = _next_step(cur)
        try:
            step = apply_rewrite(cur, op, orbit)
        except RewriteError as exc:
            raise ReductionError(
                f"the action obstructs the {op} of {list(orbit)} on {cur.seq}: {exc}"
            ) from exc
        trace.append(step)
        cur = step.result
        if len(trace) > 4:
            raise ReductionError("reduction did not terminate within four rewrites")
    return cur, trace


def reachable_degree5(s: LogK3Structure, max_steps: int = 4) -> list[tuple[LogK3Structure, list[Rewrite]]]:
    """All degree-5 structures reachable by legal rewrites within ``max_steps`` steps."""
    out = []

    def walk(cur, path):
        if cur.degree == 5:
            out.append((cur, list(path)))
        if len(path) == max_steps:
            return
        for op, orbit in legal_rewrites(cur):
            step = apply_rewrite(cur, op, orbit)
            path.append(step)
            walk(step.result, path)
            path.pop()

    walk(s, [])
    return out


def structure_key(s: LogK3Structure) -> tuple:
    """Invariant of ``s`` under dihedral relabeling (degree, sequence and action)."""
    best = None
    for g in all_elements(s.n):
        t = s.relabel(g)
        key = (t.seq, tuple(img.key() for img in t.action.images))
        if best is None or key < best:
            best = key
    return (s.degree,) + best


def compatible_actions(seq: Sequence[int], group: FiniteGroup) -> list[CycleAction]:
    """Every action of ``group`` on the cycle that preserves the entries of ``seq``."""
    from .groups import homomorphisms

    n = len(seq)
    preserving = [g for g in all_elements(n) if relabel_seq(seq, g) == tuple(seq)]
    homs = homomorphisms(group, preserving, lambda a, b: a * b, DihedralElement.identity(n))
    return [CycleAction(group, n, tuple(h)) for h in homs]


def admissible_structures() -> list[LogK3Structure]:
    """One representative structure (trivial action) per admissible sequence, degrees 5-8."""
    out = []
    for d in (8, 7, 6, 5):
        for seq in sorted(enumerate_admissible(d)):
            out.append(LogK3Structure(d, seq))
    return out

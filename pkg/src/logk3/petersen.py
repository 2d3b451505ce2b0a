"""The Petersen graph of (-1)-curves on a degree-5 del Pezzo surface.

Vertices are the 2-subsets of {1..5} (Kneser coordinates); two vertices are
adjacent when the subsets are disjoint.  Everything here is exhaustive.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional, Sequence

from .dihedral import DihedralElement, all_elements

Vertex = frozenset
Perm = dict  # vertex -> vertex


def vertices() -> list[Vertex]:
    return [frozenset(p) for p in combinations(range(1, 6), 2)]


def adjacent(u: Vertex, v: Vertex) -> bool:
    return not (u & v)


def edges() -> list[tuple[Vertex, Vertex]]:
    vs = vertices()
    return [(u, v) for u, v in combinations(vs, 2) if adjacent(u, v)]


def neighbours(v: Vertex) -> list[Vertex]:
    return [u for u in vertices() if adjacent(u, v)]


def label(v: Vertex) -> str:
    return "".join(str(i) for i in sorted(v))


def parse_vertex(text: str) -> Vertex:
    v = frozenset(int(ch) for ch in text)
    if len(v) != 2 or not v <= set(range(1, 6)):
        raise ValueError(f"{text!r} is not a 2-subset of 1..5")
    return v


def girth() -> int:
    """Length of the shortest cycle, by breadth-first search from every vertex."""
    best = None
    vs = vertices()
    for root in vs:
        dist, parent = {root: 0}, {root: None}
        queue = [root]
        while queue:
            x = queue.pop(0)
            for y in neighbours(x):
                if y not in dist:
                    dist[y], parent[y] = dist[x] + 1, x
                    queue.append(y)
                elif parent[x] != y:
                    length = dist[x] + dist[y] + 1
                    best = length if best is None else min(best, length)
    return best


def _cycle_key(cycle: Sequence[Vertex]) -> tuple:
    return tuple(tuple(sorted(v)) for v in cycle)


def canonical_cycle(cycle: Sequence[Vertex]) -> tuple[Vertex, ...]:
    """Least rotation/reflection of the vertex list (vertices compared as sorted pairs)."""
    n = len(cycle)
    variants = []
    for g in all_elements(n):
        variants.append(tuple(cycle[g(i)] for i in range(n)))
    return min(variants, key=_cycle_key)


def is_five_cycle(cycle: Sequence[Vertex]) -> bool:
    if len(cycle) != 5 or len(set(cycle)) != 5:
        return False
    for i in range(5):
        for j in range(i + 1, 5):
            consecutive = (j - i) % 5 in (1, 4)
            if adjacent(cycle[i], cycle[j]) != consecutive:
                return False
    return True


@lru_cache(maxsize=None)
def enumerate_five_cycles() -> tuple[tuple[Vertex, ...], ...]:
    found = set()
    vs = vertices()
    for combo in combinations(vs, 5):
        first, rest = combo[0], combo[1:]
        for order in permutations(rest):
            cyc = (first,) + order
            if is_five_cycle(cyc):
                found.add(canonical_cycle(cyc))
    return tuple(sorted(found, key=_cycle_key))


def external_pentagon() -> tuple[Vertex, ...]:
    return tuple(parse_vertex(s) for s in ("12", "34", "15", "23", "45"))


def is_automorphism(perm: Perm) -> bool:
    vs = vertices()
    if sorted(map(_cycle_key_v, perm.values())) != sorted(map(_cycle_key_v, vs)):
        return False
    return all(adjacent(perm[u], perm[v]) == adjacent(u, v) for u, v in combinations(vs, 2))


def _cycle_key_v(v):
    return tuple(sorted(v))


def _freeze(perm: Perm) -> tuple:
    return tuple(label(perm[v]) for v in vertices())


def s5_action(sigma: Sequence[int]) -> Perm:
    """The permutation of 2-subsets induced by ``i -> sigma[i-1]``."""
    return {v: frozenset(sigma[i - 1] for i in v) for v in vertices()}


@lru_cache(maxsize=None)
def _automorphisms() -> tuple[tuple, ...]:
    """Brute force over vertex bijections, pruned by adjacency as they are built."""
    vs = vertices()
    out = []

    def extend(assign, used):
        k = len(assign)
        if k == len(vs):
            out.append(tuple(assign))
            return
        v = vs[k]
        for cand in vs:
            if cand in used:
                continue
            if all(adjacent(cand, assign[j]) == adjacent(v, vs[j]) for j in range(k)):
                assign.append(cand)
                used.add(cand)
                extend(assign, used)
                used.discard(cand)
                assign.pop()

    extend([], set())
    return tuple(out)


def automorphism_group() -> list[Perm]:
    vs = vertices()
    return [dict(zip(vs, images)) for images in _automorphisms()]


def cycle_stabilizer(cycle: Sequence[Vertex]) -> list[Perm]:
    if not is_five_cycle(cycle):
        raise ValueError("not a five-cycle of the Petersen graph")
    target = set(cycle)
    return [p for p in automorphism_group() if {p[v] for v in cycle} == target]


def restriction_to_cycle(perm: Perm, cycle: Sequence[Vertex]) -> DihedralElement:
    """The dihedral symmetry of index positions induced by ``perm`` on a stabilized cycle."""
    pos = {v: i for i, v in enumerate(cycle)}
    images = [pos[perm[v]] for v in cycle]
    for g in all_elements(5):
        if all(g(i) == images[i] for i in range(5)):
            return g
    raise ValueError("permutation does not stabilize the cycle")


def _outer_neighbour(v: Vertex, cycle: Sequence[Vertex]) -> Vertex:
    outside = [u for u in neighbours(v) if u not in cycle]
    if len(outside) != 1:
        raise ValueError("vertex does not have exactly one neighbour off the cycle")
    return outside[0]


def complement_cycle(cycle: Sequence[Vertex]) -> tuple[tuple[Vertex, ...], list[list[int]]]:
    """The five remaining vertices, ordered so that ``cycle[i]`` meets ``comp[j]`` iff ``j = 2i mod 5``.

    Returns the ordered complement and its 5x5 incidence matrix against ``cycle``.
    """
    cycle = tuple(cycle)
    if not is_five_cycle(cycle):
        raise ValueError("not a five-cycle of the Petersen graph")
    comp: list[Optional[Vertex]] = [None] * 5
    for i, v in enumerate(cycle):
        comp[(2 * i) % 5] = _outer_neighbour(v, cycle)
    comp_t = tuple(comp)
    if not is_five_cycle(comp_t):
        raise AssertionError("complement ordering is not a cycle")
    incidence = [[int(adjacent(cycle[i], comp_t[j])) for j in range(5)] for i in range(5)]
    return comp_t, incidence


def incidence_law_holds(cycle: Sequence[Vertex]) -> bool:
    _, inc = complement_cycle(cycle)
    return all(inc[i][j] == int(j == (2 * i) % 5) for i in range(5) for j in range(5))


def extend_cycle_iso_to_graph(c1: Sequence[Vertex], c2: Sequence[Vertex], phi: DihedralElement) -> Perm:
    """The automorphism sending ``c1[i]`` to ``c2[phi(i)]`` for every i.

    Complement vertices follow the ``j = 2i`` rule: the outer neighbour of
    ``c1[i]`` goes to the outer neighbour of ``c2[phi(i)]``.
    """
    if phi.n != 5:
        raise ValueError("phi must be a symmetry of the 5-cycle")
    c1, c2 = tuple(c1), tuple(c2)
    perm: Perm = {}
    for i in range(5):
        perm[c1[i]] = c2[phi(i)]
        perm[_outer_neighbour(c1[i], c1)] = _outer_neighbour(c2[phi(i)], c2)
    if len(perm) != 10 or not is_automorphism(perm):
        raise AssertionError("no automorphism extends the cycle identification")
    return perm


def report(full: bool = False) -> dict:
    cycles = enumerate_five_cycles()
    aut = automorphism_group()
    stab = cycle_stabilizer(external_pentagon())
    out = {
        "five_cycles": len(cycles),
        "aut_order": len(aut),
        "stabilizer_order": len(stab),
        "incidence_rule": "j=2i mod 5",
        "incidence_rule_holds": all(incidence_law_holds(c) for c in cycles),
    }
    if full:
        out["cycles"] = [[label(v) for v in c] for c in cycles]
        out["complements"] = [[label(v) for v in complement_cycle(c)[0]] for c in cycles]
    return out

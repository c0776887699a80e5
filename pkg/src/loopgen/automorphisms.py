"""Automorphism group of a loop and its orbits on the subloop lattice."""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .errors import SearchBudgetExceeded
from .loop import LoopTable
from .subloops import Subloop, SubloopLattice

DEFAULT_NODE_BUDGET = 50_000_000


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.perm[x]

    def image(self, members) -> tuple[int, ...]:
        return tuple(sorted(self.perm[x] for x in members))

    def apply(self, lattice: SubloopLattice, A: Subloop) -> Subloop:
        return lattice.find(self.image(A.members))


@dataclass(frozen=True)
class AutomorphismGroup:
    elements: np.ndarray  # (order, n) in search order
    generators: tuple[Automorphism, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return (Automorphism(tuple(row.tolist())) for row in self.elements)


def element_orders(lattice: SubloopLattice) -> np.ndarray:
    return lattice.sizes[lattice.ext[lattice.bottom]]


def find_generating_tuple(loop: LoopTable, lattice: SubloopLattice) -> tuple[int, ...]:
    """Greedy: keep adding the element that enlarges the generated subloop most."""
    gens = []
    cur = lattice.bottom
    while cur != lattice.top:
        row = lattice.ext[cur]
        x = int(np.argmax(lattice.sizes[row]))  # first maximum, so ties go to the smallest index
        gens.append(x)
        cur = row[x]
    return tuple(gens)


def _straight_line_program(loop: LoopTable, gens):
    """For each prefix ``gens[:j+1]`` list the new elements of the generated subloop,
    each as ``(x, y, z)`` with ``x = y*z`` and ``y, z`` already expressed."""
    t = loop.table
    known = [loop.neutral]
    seen = {loop.neutral}
    levels = []
    for g in gens:
        steps = []
        if g not in seen:
            seen.add(g)
            known.append(g)
        i = 0
        while i < len(known):
            y = known[i]
            for z in known[: i + 1]:
                for a, b in ((y, z), (z, y)):
                    p = int(t[a, b])
                    if p not in seen:
                        seen.add(p)
                        known.append(p)
                        steps.append((p, a, b))
            i += 1
        levels.append((g, steps, np.array(sorted(seen))))
    return levels


def _multiplicative(t: np.ndarray, R: np.ndarray, members: np.ndarray, chunk: int = 512) -> np.ndarray:
    """Mask of columns of ``R`` that preserve every product inside ``members``."""
    n = t.shape[0]
    flat = t.ravel()
    sub = t[np.ix_(members, members)]
    ok = np.empty(R.shape[1], dtype=bool)
    for s in range(0, R.shape[1], chunk):
        C = R[:, s : s + chunk]
        img = C[members]
        lhs = C[sub]  # phi(a*b)
        rhs = flat[img[:, None, :] * n + img[None, :, :]]  # phi(a)*phi(b)
        ok[s : s + chunk] = (lhs == rhs).all(axis=(0, 1))
    return ok


def _search(loop: LoopTable, lattice: SubloopLattice, gens, node_budget: int, rng) -> np.ndarray:
    t = loop.table
    n = loop.n
    orders = element_orders(lattice)
    # one column per partial map, so that per-element updates touch contiguous rows
    cols = np.full((n, 1), -1, dtype=np.int32)
    cols[loop.neutral] = loop.neutral
    nodes = 0
    for g, steps, members in _straight_line_program(loop, gens):
        cand = np.flatnonzero(orders == orders[g])
        if rng is not None:
            cand = rng.permutation(cand)
        width = cols.shape[1]
        nodes += width * len(cand)
        if nodes > node_budget:
            raise SearchBudgetExceeded(f"automorphism search exceeded {node_budget} nodes")
        R = np.repeat(cols, len(cand), axis=1)
        R[g] = np.tile(cand, width)
        for x, y, z in steps:
            R[x] = t[R[y], R[z]]
        srt = np.sort(R[members], axis=0)
        R = R[:, (srt[1:] != srt[:-1]).all(axis=0)]
        R = R[:, _multiplicative(t, R, members)]
        cols = R
    return np.ascontiguousarray(cols.T)


def _group_closure(gens: list[np.ndarray]) -> set[bytes]:
    ident = np.arange(len(gens[0]), dtype=gens[0].dtype)
    seen = {ident.tobytes()}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = g[p]
                key = q.tobytes()
                if key not in seen:
                    seen.add(key)
                    nxt.append(q)
        frontier = nxt
    return seen


def generating_subset(elements: np.ndarray) -> list[int]:
    """Indices of a subset of ``elements`` generating the same group, chosen greedily
    in the given order."""
    chosen: list[int] = []
    group: set[bytes] = {np.arange(elements.shape[1], dtype=elements.dtype).tobytes()}
    for i, perm in enumerate(elements):
        if len(group) == len(elements):
            break
        if perm.tobytes() not in group:
            chosen.append(i)
            group = _group_closure([elements[j] for j in chosen])
    return chosen


def automorphism_group(
    loop: LoopTable,
    lattice: SubloopLattice,
    node_budget: int = DEFAULT_NODE_BUDGET,
    shuffle_seed: int | None = None,
) -> AutomorphismGroup:
    """All automorphisms, by backtracking over images of a generating tuple.

    Images must keep element orders; each partial map is extended along a straight
    line program and checked for injectivity and multiplicativity on the subloop
    generated so far. ``shuffle_seed`` permutes the candidate order.
    """
    gens = find_generating_tuple(loop, lattice)
    rng = None if shuffle_seed is None else np.random.default_rng(shuffle_seed)
    elements = _search(loop, lattice, gens, node_budget, rng)
    elements.setflags(write=False)
    chosen = generating_subset(elements) if loop.n > 1 else []
    generators = tuple(Automorphism(tuple(elements[i].tolist())) for i in chosen)
    return AutomorphismGroup(elements, generators)


def automorphism_generators(loop, lattice, **kwargs) -> list[Automorphism]:
    return list(automorphism_group(loop, lattice, **kwargs).generators)


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        x, y = self.find(x), self.find(y)
        if x == y:
            return False
        # keep the smaller id as root so roots are orbit minima
        if y < x:
            x, y = y, x
        self.parent[y] = x
        return True


@dataclass(frozen=True)
class OrbitPartition:
    orbit_of: tuple[int, ...]  # subloop id -> orbit id
    reps: tuple[int, ...]  # orbit id -> smallest subloop id in the orbit
    members: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]

    def __len__(self):
        return len(self.reps)

    def size(self, orbit: int) -> int:
        return len(self.members[orbit])

    def by_label(self, label: str) -> int:
        return self.labels.index(label)

    def rep(self, lattice: SubloopLattice, orbit: int) -> Subloop:
        return lattice[self.reps[orbit]]


def orbit_partition(lattice: SubloopLattice, gens) -> OrbitPartition:
    uf = UnionFind(len(lattice))
    for g in gens:
        for A in lattice:
            uf.union(A.id, g.apply(lattice, A).id)
    roots = sorted({uf.find(i) for i in range(len(lattice))})
    orbit_id = {r: k for k, r in enumerate(roots)}
    orbit_of = tuple(orbit_id[uf.find(i)] for i in range(len(lattice)))
    members = [[] for _ in roots]
    for sid, o in enumerate(orbit_of):
        members[o].append(sid)
    partial = OrbitPartition(orbit_of, tuple(roots), tuple(map(tuple, members)), ())
    labels = label_orbits(lattice, partial)
    return OrbitPartition(orbit_of, tuple(roots), partial.members, labels)


# -- display labels -----------------------------------------------------------

def _is_associative(t: np.ndarray, idx: np.ndarray) -> bool:
    ab = t[np.ix_(idx, idx)]
    return bool(np.array_equal(t[ab[:, :, None], idx[None, None, :]], t[idx[:, None, None], ab[None, :, :]]))


def _base_label(lattice: SubloopLattice, A: Subloop, cache: dict) -> str:
    if A.id in cache:
        return cache[A.id]
    t = lattice.loop.table
    idx = np.array(A.members)
    k = A.size
    prof = Counter(int(o) for o in element_orders(lattice)[idx])
    assoc = _is_associative(t, idx)
    comm = bool(np.array_equal(t[np.ix_(idx, idx)], t[np.ix_(idx, idx)].T))
    if k == 1:
        label = "1"
    elif assoc and comm:
        if prof.get(k):
            label = f"C{k}"
        elif set(prof) <= {1, 2}:
            label = f"E{k}"
        else:
            label = f"Ab{k}"
    elif assoc:
        label = {
            (6, ((1, 1), (2, 3), (3, 2))): "S3",
            (8, ((1, 1), (2, 5), (4, 2))): "D4",
            (8, ((1, 1), (2, 1), (4, 6))): "Q8",
            (12, ((1, 1), (2, 3), (3, 8))): "A4",
            (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
        }.get((k, tuple(sorted(prof.items()))), f"G{k}")
    else:
        # Chein-type double: a nonassociative loop with an index-2 subgroup G is M(G)
        halves = sorted(
            _base_label(lattice, B, cache)
            for B in lattice
            if 2 * B.size == k and B <= A and _is_associative(t, np.array(B.members))
        )
        label = f"M({halves[0]})" if halves else f"L{k}"
    cache[A.id] = label
    return label


def label_orbits(lattice: SubloopLattice, orbits: OrbitPartition) -> tuple[str, ...]:
    """Human-readable tags such as ``C2``, ``E4+``, ``A4``, ``M(A4)``; display only.

    When exactly two orbits share an isomorphism tag they are told apart by ``+``
    (representative lies in more subloops) and ``-``; larger ties get ``#1``, ``#2``...
    The whole loop is tagged ``C`` unless it has a specific name.
    """
    cache: dict = {}
    base = []
    for o, r in enumerate(orbits.reps):
        label = _base_label(lattice, lattice[r], cache)
        if r == lattice.top and re.fullmatch(r"(L|G|Ab)\d+", label):
            label = "C"
        base.append(label)
    groups: dict[str, list[int]] = {}
    for o, label in enumerate(base):
        groups.setdefault(label, []).append(o)
    labels = list(base)
    for label, os_ in groups.items():
        if len(os_) == 1:
            continue
        above = {o: len(lattice.supersets(lattice[orbits.reps[o]])) for o in os_}
        if len(os_) == 2 and above[os_[0]] != above[os_[1]]:
            hi, lo = sorted(os_, key=lambda o: -above[o])
            labels[hi], labels[lo] = label + "+", label + "-"
        else:
            for k, o in enumerate(os_, 1):
                labels[o] = f"{label}#{k}"
    return tuple(labels)

"""Jump constants between Aut-orbits of subloops.

``nu_i(A, B)`` counts the elements ``x`` of order ``i`` with ``<A, x>`` in the orbit of
``B``; ``nu(A, B)`` drops the order condition. Both depend only on the orbit of ``A``,
which :func:`representative_violations` checks rather than assumes.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .automorphisms import OrbitPartition
from .loop import LoopTable, OrderProfile
from .subloops import Subloop, SubloopLattice


@dataclass(frozen=True)
class JumpTable:
    nu_i: dict[tuple[int, int, int], int]  # (source orbit, order, target orbit) -> count
    nu: dict[tuple[int, int], int]
    orders: tuple[int, ...]  # realized element orders
    labels: tuple[str, ...]
    bottom: int
    top: int
    n: int
    rep_sizes: tuple[int, ...] = field(repr=False)

    @property
    def num_orbits(self) -> int:
        return len(self.labels)

    def get(self, src, dst, order: int | None = None) -> int:
        """Look up a constant by orbit id or label."""
        s, d = self._orbit(src), self._orbit(dst)
        if order is None:
            return self.nu.get((s, d), 0)
        return self.nu_i.get((s, order, d), 0)

    def _orbit(self, key) -> int:
        return self.labels.index(key) if isinstance(key, str) else int(key)

    def successors(self, src: int) -> list[int]:
        return sorted(d for (s, d), v in self.nu.items() if s == src and v)

    def rows(self):
        """``(source, order, target, count)`` for every nonzero typed constant."""
        return [(s, i, d, v) for (s, i, d), v in sorted(self.nu_i.items()) if v]


def jump_row(lattice: SubloopLattice, orbits: OrbitPartition, profile: OrderProfile, A: Subloop) -> dict[tuple[int, int], int]:
    """Counts ``(order, target orbit) -> #x`` for a single subloop ``A``."""
    targets = np.asarray(orbits.orbit_of)[lattice.ext[A.id]]
    orders = np.asarray(profile.orders)
    keys, counts = np.unique(np.stack([orders, targets]), axis=1, return_counts=True)
    return {(int(i), int(o)): int(c) for (i, o), c in zip(keys.T, counts)}


def compute_jump_table(
    loop: LoopTable,
    lattice: SubloopLattice,
    orbits: OrbitPartition,
    profile: OrderProfile,
    workers: int = 1,
) -> JumpTable:
    reps = [lattice[r] for r in orbits.reps]

    def one(A):
        return jump_row(lattice, orbits, profile, A)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            rows = list(pool.map(one, reps))
    else:
        rows = [one(A) for A in reps]
    nu_i: dict[tuple[int, int, int], int] = {}
    nu: dict[tuple[int, int], int] = {}
    for src, row in enumerate(rows):
        for (i, dst), c in sorted(row.items()):
            nu_i[src, i, dst] = c
            nu[src, dst] = nu.get((src, dst), 0) + c
    return JumpTable(
        nu_i=nu_i,
        nu=nu,
        orders=profile.realized,
        labels=orbits.labels,
        bottom=orbits.orbit_of[lattice.bottom],
        top=orbits.orbit_of[lattice.top],
        n=loop.n,
        rep_sizes=tuple(A.size for A in reps),
    )


def orbit_index(lattice: SubloopLattice, orbits: OrbitPartition, A: Subloop, target_orbit: int) -> int:
    """Number of subloops in ``target_orbit`` that contain ``A``."""
    return sum(1 for b in orbits.members[target_orbit] if A <= lattice[b])


@dataclass
class HasseReport:
    checked: int
    violations: list[dict]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_hasse_relation(
    loop: LoopTable,
    lattice: SubloopLattice,
    orbits: OrbitPartition,
    profile: OrderProfile,
    jt: JumpTable,
) -> HasseReport:
    """Check ``nu_i(A, B) = orbit_index(A, orbit(B)) * |D_i & (B - A)|`` for every
    covering pair ``A < B`` and every realized order ``i``."""
    violations = []
    checked = 0
    index_cache: dict[tuple[int, int], int] = {}
    for a, b in lattice.covers:
        A, B = lattice[a], lattice[b]
        src, dst = orbits.orbit_of[a], orbits.orbit_of[b]
        key = (a, dst)
        if key not in index_cache:
            index_cache[key] = orbit_index(lattice, orbits, A, dst)
        idx = index_cache[key]
        for i in jt.orders:
            fresh = sum(1 for x in B.members if x not in A and profile.orders[x] == i)
            expected = idx * fresh
            got = jt.nu_i.get((src, i, dst), 0)
            checked += 1
            if got != expected:
                violations.append(
                    dict(A=a, B=b, order=i, nu=got, orbit_index=idx, fresh=fresh)
                )
    return HasseReport(checked, violations)


def representative_violations(
    lattice: SubloopLattice,
    orbits: OrbitPartition,
    profile: OrderProfile,
    jt: JumpTable,
    subloop_ids=None,
) -> list[int]:
    """Subloop ids whose own jump counts differ from their orbit's stored row."""
    bad = []
    ids = range(len(lattice)) if subloop_ids is None else subloop_ids
    for sid in ids:
        src = orbits.orbit_of[sid]
        row = jump_row(lattice, orbits, profile, lattice[sid])
        stored = {(i, d): v for (s, i, d), v in jt.nu_i.items() if s == src}
        if row != stored:
            bad.append(sid)
    return bad

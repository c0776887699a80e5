"""Closures and the full subloop lattice of a finite loop.

In a finite loop a non-empty subset closed under multiplication is automatically
closed under both divisions, so every closure here is purely multiplicative.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ResourceLimit
from .loop import LoopTable

DEFAULT_MAX_SUBLOOPS = 100_000


@dataclass(frozen=True)
class Subloop:
    id: int
    members: tuple[int, ...]
    mask: int = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, x) -> bool:
        return bool(self.mask >> x & 1)

    def __le__(self, other: Subloop) -> bool:
        return self.mask & ~other.mask == 0

    def __lt__(self, other: Subloop) -> bool:
        return self <= other and self.mask != other.mask


def _bits(members) -> int:
    m = 0
    for x in members:
        m |= 1 << int(x)
    return m


def _close_mask(table: np.ndarray, mask: np.ndarray) -> np.ndarray:
    count = int(mask.sum())
    while True:
        idx = np.flatnonzero(mask)
        mask[table[np.ix_(idx, idx)].ravel()] = True
        new = int(mask.sum())
        if new == count:
            return mask
        count = new


def closure(loop: LoopTable, seed=()) -> tuple[int, ...]:
    """Smallest subloop containing ``seed``, as a sorted member tuple.

    ``closure(loop, ())`` is the trivial subloop ``(neutral,)``.
    """
    mask = np.zeros(loop.n, dtype=bool)
    mask[loop.neutral] = True
    for x in seed:
        mask[int(x)] = True
    return tuple(np.flatnonzero(_close_mask(loop.table, mask)).tolist())


class SubloopLattice:
    """Registry of every subloop of a loop plus the memoized extension table.

    ``ext[A.id, x]`` is the id of ``<A, x>``. The table is filled completely during
    enumeration and is read-only afterwards, so lookups are safe to share.
    """

    def __init__(self, loop: LoopTable, member_sets, ext: np.ndarray):
        self.loop = loop
        self.subloops = tuple(
            Subloop(i, tuple(m), _bits(m)) for i, m in enumerate(member_sets)
        )
        self._index = {s.members: s.id for s in self.subloops}
        ext.setflags(write=False)
        self.ext = ext
        self.sizes = np.array([s.size for s in self.subloops])
        self.bottom = 0
        self.top = len(self.subloops) - 1
        self.covers = self._compute_covers()

    def __len__(self):
        return len(self.subloops)

    def __iter__(self):
        return iter(self.subloops)

    def __getitem__(self, i: int) -> Subloop:
        return self.subloops[i]

    def find(self, members) -> Subloop:
        return self.subloops[self._index[tuple(sorted(int(x) for x in members))]]

    def extend(self, A: Subloop, x: int) -> Subloop:
        return self.subloops[self.ext[A.id, x]]

    def generated(self, elements) -> Subloop:
        """Subloop generated by ``elements``, by folding :meth:`extend`."""
        cur = self.bottom
        for x in elements:
            cur = self.ext[cur, x]
        return self.subloops[cur]

    def supersets(self, A: Subloop) -> list[Subloop]:
        return [B for B in self.subloops if A <= B]

    def _compute_covers(self) -> tuple[tuple[int, int], ...]:
        # B covers A iff B is inclusion-minimal among the one-step extensions <A, x>.
        pairs = []
        for A in self.subloops:
            cands = sorted({int(b) for b in self.ext[A.id]} - {A.id})
            for b in cands:
                B = self.subloops[b]
                if not any(c != b and self.subloops[c] < B for c in cands):
                    pairs.append((A.id, b))
        return tuple(sorted(pairs))

    def covers_of(self, A: Subloop) -> list[Subloop]:
        return [self.subloops[b] for a, b in self.covers if a == A.id]


def extend(lattice: SubloopLattice, A: Subloop, x: int) -> Subloop:
    return lattice.extend(A, x)


def enumerate_lattice(loop: LoopTable, max_subloops: int = DEFAULT_MAX_SUBLOOPS) -> SubloopLattice:
    """Find every subloop by breadth-first extension from the trivial subloop.

    Each subloop is reached as ``<A, x>`` from one of its maximal subloops ``A``, so
    extending every registered subloop by every element discovers all of them.
    ``<A, x> = <A, a*x> = <A, x*a>`` for ``a`` in ``A`` (division recovers ``x``),
    which lets one closure fill a whole row segment of the extension table.
    """
    n = loop.n
    table = loop.table
    index: dict[tuple[int, ...], int] = {}
    masks: list[np.ndarray] = []
    rows: list[np.ndarray] = []

    def register(mask: np.ndarray) -> int:
        key = tuple(np.flatnonzero(mask).tolist())
        sid = index.get(key)
        if sid is None:
            if len(masks) >= max_subloops:
                raise ResourceLimit(f"more than {max_subloops} subloops")
            sid = index[key] = len(masks)
            masks.append(mask)
        return sid

    bottom = np.zeros(n, dtype=bool)
    bottom[loop.neutral] = True
    register(bottom)
    i = 0
    while i < len(masks):
        A = masks[i]
        a_idx = np.flatnonzero(A)
        row = np.full(n, -1, dtype=np.int64)
        row[A] = i
        for x in range(n):
            if row[x] >= 0:
                continue
            mask = A.copy()
            mask[x] = True
            j = register(_close_mask(table, mask))
            row[x] = j
            stack = [x]
            while stack:
                y = stack.pop()
                for z in np.concatenate((table[a_idx, y], table[y, a_idx])).tolist():
                    if row[z] < 0:
                        row[z] = j
                        stack.append(z)
        rows.append(row)
        i += 1

    keys = sorted(index, key=lambda k: (len(k), k))
    renumber = np.empty(len(keys), dtype=np.int64)
    for new, k in enumerate(keys):
        renumber[index[k]] = new
    ext = np.empty((len(keys), n), dtype=np.int32)
    for old, row in enumerate(rows):
        ext[renumber[old]] = renumber[row]
    return SubloopLattice(loop, keys, ext)

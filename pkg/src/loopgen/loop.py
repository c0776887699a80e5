"""Finite loops given by Cayley tables.

Elements are always the indices ``0..n-1``; ``table[a, b]`` is the product ``a*b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import numpy as np

from .errors import MalformedTable, NoIdentity, NotLatinSquare, NotPowerAssociative


@dataclass(frozen=True, eq=False)
class LoopTable:
    table: np.ndarray
    neutral: int

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.n

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def __eq__(self, other):
        if not isinstance(other, LoopTable):
            return NotImplemented
        return self.neutral == other.neutral and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.neutral, self.table.tobytes()))

    @cached_property
    def is_associative(self) -> bool:
        return find_nonassociative_triple(self) is None

    @cached_property
    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))


@dataclass(frozen=True)
class OrderProfile:
    orders: tuple[int, ...]
    by_order: dict[int, frozenset[int]]

    def count(self, i: int) -> int:
        return len(self.by_order.get(i, ()))

    @property
    def realized(self) -> tuple[int, ...]:
        return tuple(sorted(self.by_order))


def validate_loop(grid) -> LoopTable:
    """Check that ``grid`` is the Cayley table of a loop and wrap it.

    The neutral element is detected, it need not be index 0.
    """
    try:
        arr = np.array(grid, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"not an integer grid: {exc}") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise MalformedTable(f"expected a non-empty square grid, got shape {arr.shape}")
    n = arr.shape[0]
    if arr.min() < 0 or arr.max() >= n:
        raise MalformedTable(f"entries must lie in 0..{n - 1}")
    expected = np.arange(n)
    for r in range(n):
        if not np.array_equal(np.sort(arr[r]), expected):
            raise NotLatinSquare(f"row {r} repeats an entry")
        if not np.array_equal(np.sort(arr[:, r]), expected):
            raise NotLatinSquare(f"column {r} repeats an entry")
    for e in range(n):
        if np.array_equal(arr[e], expected) and np.array_equal(arr[:, e], expected):
            break
    else:
        raise NoIdentity("no two-sided neutral element")
    arr.setflags(write=False)
    return LoopTable(arr, e)


def element_closure(loop: LoopTable, x: int) -> list[int]:
    """Multiplicative closure of ``{x}``, in discovery order."""
    members = [x]
    seen = {x}
    i = 0
    while i < len(members):
        a = members[i]
        for b in members[: i + 1]:
            for p in (loop.mul(a, b), loop.mul(b, a)):
                if p not in seen:
                    seen.add(p)
                    members.append(p)
        i += 1
    return members


def _is_associative_on(loop: LoopTable, members) -> bool:
    idx = np.asarray(sorted(members))
    t = loop.table
    ab = t[np.ix_(idx, idx)]
    # (a*b)*c == a*(b*c) for all a, b, c in members
    lhs = t[ab[:, :, None], idx[None, None, :]]
    rhs = t[idx[:, None, None], ab[None, :, :]]
    return bool(np.array_equal(lhs, rhs))


def check_power_associative(loop: LoopTable) -> tuple[bool, int | None]:
    """Return ``(True, None)`` if every element generates a group, else ``(False, x)``.

    In a finite loop the closure of ``{x}`` is a subloop, so it is a group (and then
    cyclic, being generated by ``x``) exactly when the operation is associative on it.
    """
    for x in range(loop.n):
        if not _is_associative_on(loop, element_closure(loop, x)):
            return False, x
    return True, None


def order_profile(loop: LoopTable) -> OrderProfile:
    ok, witness = check_power_associative(loop)
    if not ok:
        raise NotPowerAssociative(witness)
    orders = tuple(len(element_closure(loop, x)) for x in range(loop.n))
    by_order: dict[int, set[int]] = {}
    for x, k in enumerate(orders):
        by_order.setdefault(k, set()).add(x)
    return OrderProfile(orders, {k: frozenset(v) for k, v in sorted(by_order.items())})


def find_nonassociative_triple(loop: LoopTable) -> tuple[int, int, int] | None:
    t = loop.table
    for a in range(loop.n):
        # lhs[b, c] = (a*b)*c, rhs[b, c] = a*(b*c)
        lhs = t[t[a]]
        rhs = t[a][t]
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            return a, int(b), int(c)
    return None


def satisfies_moufang(loop: LoopTable) -> bool:
    """Check ((x*y)*x)*z == x*(y*(x*z)) on all triples."""
    t = loop.table
    for x in range(loop.n):
        lhs = t[t[t[x], x]]  # [y, z] -> ((x*y)*x)*z
        rhs = t[x][t[:, t[x]]]  # [y, z] -> x*(y*(x*z))
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_automorphism(loop: LoopTable, perm) -> bool:
    p = np.asarray(perm)
    if not np.array_equal(np.sort(p), np.arange(loop.n)):
        return False
    t = loop.table
    return bool(np.array_equal(p[t], t[p[:, None], p[None, :]]))


def relabel(loop: LoopTable, perm) -> LoopTable:
    """Isomorphic copy in which element ``x`` is renamed ``perm[x]``."""
    p = np.asarray(perm)
    inv = np.argsort(p)
    new = p[loop.table[inv[:, None], inv[None, :]]]
    return validate_loop(new)


def restrict(loop: LoopTable, members) -> LoopTable:
    """The subloop on ``members`` as a loop in its own right, renumbered in
    increasing order of the original indices."""
    idx = np.array(sorted(int(x) for x in members))
    pos = np.full(loop.n, -1)
    pos[idx] = np.arange(len(idx))
    sub = pos[loop.table[np.ix_(idx, idx)]]
    if (sub < 0).any():
        raise MalformedTable("member set is not closed under multiplication")
    return validate_loop(sub)


# -- text format -------------------------------------------------------------

def parse_table(text: str) -> LoopTable:
    """Parse the Cayley text format: ``n`` on the first line, then ``n`` rows.

    Lines starting with ``#`` and blank lines are ignored.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedTable("empty table file")
    try:
        n = int(lines[0])
        rows = [[int(tok) for tok in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedTable(str(exc)) from None
    if n < 1 or len(rows) != n or any(len(r) != n for r in rows):
        raise MalformedTable(f"expected {n} rows of {n} integers")
    return validate_loop(rows)


def format_table(loop: LoopTable, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {ln}" for ln in comment.splitlines())
    out.append(str(loop.n))
    out.extend(" ".join(str(int(v)) for v in row) for row in loop.table)
    return "\n".join(out) + "\n"


def load_table(path) -> LoopTable:
    with open(path) as fh:
        return parse_table(fh.read())


def brute_is_latin(loop: LoopTable) -> bool:
    n = loop.n
    rows = all(len({loop.mul(a, b) for b in range(n)}) == n for a in range(n))
    cols = all(len({loop.mul(a, b) for a in range(n)}) == n for b in range(n))
    return rows and cols and all(
        loop.mul(loop.neutral, x) == x == loop.mul(x, loop.neutral) for x in range(n)
    )


__all__ = [
    "LoopTable", "OrderProfile", "validate_loop", "check_power_associative",
    "order_profile", "element_closure", "find_nonassociative_triple",
    "satisfies_moufang", "is_automorphism", "relabel", "restrict", "parse_table",
    "format_table", "load_table", "brute_is_latin",
]

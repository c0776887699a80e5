"""Exact generation counts and probabilities from a jump table.

A chain class is a sequence of orbits ``o_0 -> o_1 -> ... -> o_m`` from the trivial
subloop's orbit to the whole loop; its size is the product of the jump constants
along it. Summing class sizes gives the number of generating ``m``-tuples.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import prod

from .jumps import JumpTable


@dataclass(frozen=True)
class ChainClass:
    orbit_seq: tuple[int, ...]
    size: int

    def labels(self, jt: JumpTable) -> tuple[str, ...]:
        return tuple(jt.labels[o] for o in self.orbit_seq)


def order_type(orders) -> tuple[int, ...]:
    """Canonical (sorted) form of an order type; equal for tuples of the same type."""
    r = tuple(sorted(int(i) for i in orders))
    if any(i < 1 for i in r):
        raise ValueError(f"orders must be positive: {orders}")
    return r


@dataclass(frozen=True)
class GenerationReport:
    m: int
    n: int
    gen_count: int
    classes: tuple[ChainClass, ...]
    type: tuple[int, ...] | None = None
    dp_count: int | None = field(default=None, compare=False)

    @property
    def probability(self) -> Fraction:
        return Fraction(self.gen_count, self.n**self.m)

    def decimal(self, places: int = 3) -> str:
        return f"{float(round(self.probability, places)):.{places}f}"

    def to_dict(self, jt: JumpTable | None = None) -> dict:
        p = self.probability
        return {
            "m": self.m,
            "type": list(self.type) if self.type is not None else None,
            "genCount": self.gen_count,
            "numerator": p.numerator,
            "denominator": p.denominator,
            "decimal": self.decimal(),
            "classes": [
                {
                    "orbits": list(c.labels(jt)) if jt else list(c.orbit_seq),
                    "size": c.size,
                }
                for c in self.classes
            ],
        }


def chain_classes(jt: JumpTable, m: int) -> list[tuple[int, ...]]:
    """All orbit sequences of length ``m + 1`` from bottom to top with nonzero
    jump constants at every step (repeats allowed: ``nu(A, A) = |A|``)."""
    out = []

    def walk(seq):
        if len(seq) == m + 1:
            if seq[-1] == jt.top:
                out.append(tuple(seq))
            return
        for nxt in jt.successors(seq[-1]):
            walk(seq + [nxt])

    walk([jt.bottom])
    return out


def _path_total(jt: JumpTable, m: int) -> int:
    vec = {jt.bottom: 1}
    for _ in range(m):
        nxt: dict[int, int] = {}
        for s, w in vec.items():
            for d in jt.successors(s):
                nxt[d] = nxt.get(d, 0) + w * jt.nu[s, d]
        vec = nxt
    return vec.get(jt.top, 0)


def gen_count(jt: JumpTable, m: int) -> GenerationReport:
    if m < 0:
        raise ValueError("m must be non-negative")
    classes = []
    for seq in chain_classes(jt, m):
        size = prod(jt.nu[a, b] for a, b in zip(seq, seq[1:]))
        classes.append(ChainClass(seq, size))
    total = sum(c.size for c in classes)
    dp = _path_total(jt, m)
    assert dp == total, f"class sum {total} != path count {dp}"
    return GenerationReport(m, jt.n, total, tuple(classes), dp_count=dp)


def typed_class_size(jt: JumpTable, seq, r) -> int:
    """Sum over all distinct orderings ``s`` of ``r`` of ``prod nu_{s_k}(o_k, o_{k+1})``."""
    return sum(
        prod(jt.nu_i.get((a, i, b), 0) for (a, b), i in zip(zip(seq, seq[1:]), s))
        for s in set(permutations(r))
    )


def _typed_dp(jt: JumpTable, r: tuple[int, ...]) -> int:
    # state: (orbit, remaining orders as a sorted tuple)
    @lru_cache(maxsize=None)
    def ways(orbit: int, remaining: tuple[int, ...]) -> int:
        if not remaining:
            return 1 if orbit == jt.top else 0
        total = 0
        for k, i in enumerate(remaining):
            if k and remaining[k - 1] == i:
                continue
            rest = remaining[:k] + remaining[k + 1 :]
            for d in jt.successors(orbit):
                w = jt.nu_i.get((orbit, i, d), 0)
                if w:
                    total += w * ways(d, rest)
        return total

    return ways(jt.bottom, r)


def gen_count_typed(jt: JumpTable, r) -> GenerationReport:
    r = order_type(r)
    if not r:
        raise ValueError("order type must be non-empty")
    m = len(r)
    classes = []
    for seq in chain_classes(jt, m):
        size = typed_class_size(jt, seq, r)
        if size:
            classes.append(ChainClass(seq, size))
    total = sum(c.size for c in classes)
    dp = _typed_dp(jt, r)
    assert dp == total, f"typed class sum {total} != DP count {dp}"
    return GenerationReport(m, jt.n, total, tuple(classes), type=r, dp_count=dp)


def order_types(jt: JumpTable, m: int, include_trivial: bool = False) -> list[tuple[int, ...]]:
    """Every order type of length ``m`` over the realized orders."""
    orders = [i for i in jt.orders if include_trivial or i != 1]
    out: list[tuple[int, ...]] = []

    def rec(start, acc):
        if len(acc) == m:
            out.append(tuple(acc))
            return
        for k in range(start, len(orders)):
            rec(k, acc + [orders[k]])

    rec(0, [])
    return out


def all_typed(jt: JumpTable, m: int, nonzero_only: bool = True) -> list[GenerationReport]:
    reports = [gen_count_typed(jt, r) for r in order_types(jt, m, include_trivial=True)]
    return [rep for rep in reports if rep.gen_count or not nonzero_only]


def type_multiset(r) -> Counter:
    return Counter(order_type(r))

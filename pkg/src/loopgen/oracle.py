"""Brute-force counting of generating tuples straight from the Cayley table.

Nothing here looks at automorphisms, orbits or jump constants: a tuple is counted
when folding ``<A, x>`` over its entries ends at the whole loop. Sampling uses
numpy's ``default_rng`` (PCG64), so a seed fixes every draw.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import BudgetExceeded
from .loop import LoopTable
from .probability import order_type
from .subloops import SubloopLattice, closure

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class OracleResult:
    m: int
    type: tuple[int, ...] | None
    gen_count: int | None = None  # exhaustive mode
    hits: int | None = None  # Monte Carlo mode
    samples: int | None = None
    seed: int | None = None
    elapsed: float = 0.0

    @property
    def rate(self) -> float:
        return self.hits / self.samples


def _type_codes(orders: np.ndarray, m: int):
    """Encode each element's order as ``(m+1)**k`` so that summing over a tuple
    gives a code that identifies its order multiset."""
    distinct = sorted(set(orders.tolist()))
    weight = {o: (m + 1) ** k for k, o in enumerate(distinct)}
    return np.array([weight[o] for o in orders.tolist()], dtype=np.int64), weight


def _closure_steps(n: int, m: int) -> int:
    return sum(n**k for k in range(1, m + 1))


def exhaustive_count(
    loop: LoopTable,
    lattice: SubloopLattice,
    m: int,
    type_filter=None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> OracleResult:
    """Count every ``m``-tuple whose generated subloop is the whole loop.

    The fold runs over the lattice's extension table; work is split by the first
    tuple entry and partial counts are summed in a fixed order.
    """
    n = loop.n
    if m < 0:
        raise ValueError("m must be non-negative")
    if _closure_steps(n, m) > budget:
        raise BudgetExceeded(f"{n}^{m} tuples exceed the budget of {budget} closure steps")
    start = time.perf_counter()
    ext = lattice.ext
    orders = lattice.sizes[ext[lattice.bottom]]
    want = None
    if type_filter is not None:
        r = order_type(type_filter)
        if len(r) != m:
            raise ValueError(f"type {r} does not have length {m}")
        codes, weight = _type_codes(orders, m)
        want = sum(weight.get(i, -(10**18)) for i in r)
    if m == 0:
        count = int(lattice.bottom == lattice.top)
        return OracleResult(m, None, gen_count=count, elapsed=time.perf_counter() - start)

    elements = np.arange(n)

    def count_from(first: int) -> int:
        state = np.array([ext[lattice.bottom, first]])
        code = np.array([codes[first]]) if want is not None else None
        for _ in range(m - 1):
            state = ext[state[:, None], elements[None, :]].ravel()
            if code is not None:
                code = (code[:, None] + codes[None, :]).ravel()
        hit = state == lattice.top
        if code is not None:
            hit &= code == want
        return int(hit.sum())

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(count_from, range(n)))
    else:
        parts = [count_from(x) for x in range(n)]
    r = order_type(type_filter) if type_filter is not None else None
    return OracleResult(m, r, gen_count=sum(parts), elapsed=time.perf_counter() - start)


def naive_count(loop: LoopTable, m: int, type_filter=None) -> int:
    """Reference count with a fresh closure per tuple; only for tiny loops."""
    from .loop import element_closure

    whole = tuple(range(loop.n))
    orders = [len(element_closure(loop, x)) for x in range(loop.n)]
    want = order_type(type_filter) if type_filter is not None else None
    count = 0
    for tup in product(range(loop.n), repeat=m):
        if want is not None and order_type(orders[x] for x in tup) != want:
            continue
        if closure(loop, tup) == whole:
            count += 1
    return count


def monte_carlo(
    loop: LoopTable,
    lattice: SubloopLattice,
    m: int,
    samples: int,
    seed: int,
    type_filter=None,
    chunk: int = 1_000_000,
) -> OracleResult:
    if samples < 1:
        raise ValueError("samples must be positive")
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    ext = lattice.ext
    orders = lattice.sizes[ext[lattice.bottom]]
    r = order_type(type_filter) if type_filter is not None else None
    if r is not None:
        codes, weight = _type_codes(orders, m)
        want = sum(weight.get(i, -(10**18)) for i in r)
    hits = 0
    done = 0
    while done < samples:
        k = min(chunk, samples - done)
        draws = rng.integers(0, loop.n, size=(k, m))
        state = np.full(k, lattice.bottom)
        for j in range(m):
            state = ext[state, draws[:, j]]
        ok = state == lattice.top
        if r is not None:
            ok &= codes[draws].sum(axis=1) == want
        hits += int(ok.sum())
        done += k
    return OracleResult(m, r, hits=hits, samples=samples, seed=seed, elapsed=time.perf_counter() - start)

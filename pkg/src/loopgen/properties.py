"""Property checks that can be run against any loaded loop."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .automorphisms import find_generating_tuple
from .jumps import jump_row, verify_hasse_relation
from .loop import brute_is_latin, is_automorphism
from .pipeline import Analysis
from .probability import gen_count, gen_count_typed, order_types
from .subloops import closure


@dataclass(frozen=True)
class PropertyResult:
    name: str
    ok: bool
    detail: str = ""


def check_latin(an: Analysis) -> PropertyResult:
    return PropertyResult("latin-square", brute_is_latin(an.loop))


def check_order_partition(an: Analysis) -> PropertyResult:
    prof = an.profile
    total = sum(len(d) for d in prof.by_order.values())
    ok = total == an.loop.n and prof.by_order.get(1) == frozenset({an.loop.neutral})
    return PropertyResult("order-partition", ok, f"sum |D_i| = {total}")


def check_automorphisms(an: Analysis) -> PropertyResult:
    gens = an.automorphisms.generators
    ok = all(is_automorphism(an.loop, g.perm) and g(an.loop.neutral) == an.loop.neutral for g in gens)
    return PropertyResult("automorphisms", ok, f"|Aut| = {an.automorphisms.order}, {len(gens)} generators")


def check_row_sums(an: Analysis) -> PropertyResult:
    jt, prof = an.jumps, an.profile
    bad = []
    for o in range(jt.num_orbits):
        if sum(v for (s, d), v in jt.nu.items() if s == o) != jt.n:
            bad.append((jt.labels[o], None))
        for i in jt.orders:
            got = sum(v for (s, k, d), v in jt.nu_i.items() if s == o and k == i)
            if got != prof.count(i):
                bad.append((jt.labels[o], i))
        for (s, d), v in jt.nu.items():
            if s == o and v != sum(jt.nu_i.get((s, i, d), 0) for i in jt.orders):
                bad.append((jt.labels[o], d))
    return PropertyResult("nu-row-sums", not bad, f"bad rows: {bad}" if bad else "")


def check_orbit_invariants(an: Analysis) -> PropertyResult:
    lat, orbits = an.lattice, an.orbits
    orders = np.asarray(an.profile.orders)
    bad = []
    for o, members in enumerate(orbits.members):
        sig = {(lat[s].size, tuple(np.bincount(orders[list(lat[s].members)]))) for s in members}
        if len(sig) != 1:
            bad.append(orbits.labels[o])
    return PropertyResult("orbit-invariants", not bad, ", ".join(bad))


def check_representatives(an: Analysis, per_orbit: int = 8, seed: int = 0) -> PropertyResult:
    """For sampled members ``B = phi(A)`` of each orbit, with ``phi`` an explicit
    automorphism, check ``<B, phi(x)> = phi(<A, x>)`` and equal jump counts."""
    lat, orbits, jt = an.lattice, an.orbits, an.jumps
    elems = an.automorphisms.elements
    rng = np.random.default_rng(seed)
    bad = []
    checked = 0
    for o, members in enumerate(orbits.members):
        A = lat[orbits.reps[o]]
        pick = members if len(members) <= per_orbit else rng.choice(members, per_orbit, replace=False)
        images = np.sort(elems[:, list(A.members)], axis=1)
        stored = {(i, d): v for (s, i, d), v in jt.nu_i.items() if s == o}
        for b in pick:
            B = lat[int(b)]
            hit = np.flatnonzero((images == np.array(B.members)).all(axis=1))
            if not len(hit):
                bad.append((jt.labels[o], B.id, "no automorphism"))
                continue
            phi = elems[hit[0]]
            for x in range(an.loop.n):
                img = lat.find(phi[list(lat.extend(A, x).members)])
                if lat.extend(B, int(phi[x])).id != img.id:
                    bad.append((jt.labels[o], B.id, x))
                    break
            if jump_row(lat, orbits, an.profile, B) != stored:
                bad.append((jt.labels[o], B.id, "row"))
            checked += 1
    return PropertyResult("representative-independence", not bad, f"{checked} subloops" + (f", bad: {bad}" if bad else ""))


def check_hasse(an: Analysis) -> PropertyResult:
    rep = verify_hasse_relation(an.loop, an.lattice, an.orbits, an.profile, an.jumps)
    return PropertyResult("hasse-relation", rep.ok, f"{rep.checked} checks, {len(rep.violations)} violations")


def check_type_partition(an: Analysis, ms=None) -> PropertyResult:
    jt = an.jumps
    if ms is None:
        k = len(find_generating_tuple(an.loop, an.lattice))
        ms = (max(k, 1), max(k, 1) + 1)
    bad = []
    for m in ms:
        total = gen_count(jt, m).gen_count
        typed = sum(gen_count_typed(jt, r).gen_count for r in order_types(jt, m, include_trivial=True))
        if typed != total:
            bad.append((m, typed, total))
    return PropertyResult("type-partition", not bad, f"m in {tuple(ms)}" + (f", bad: {bad}" if bad else ""))


def check_tuple_order(an: Analysis, m: int = 3, samples: int = 200, seed: int = 0) -> PropertyResult:
    lat = an.lattice
    rng = np.random.default_rng(seed)
    bad = []
    for tup in rng.integers(0, an.loop.n, size=(samples, m)).tolist():
        direct = closure(an.loop, tup)
        if any(lat.generated(p).members != direct for p in permutations(tup)):
            bad.append(tuple(tup))
    return PropertyResult("tuple-order", not bad, f"{samples} tuples" + (f", bad: {bad[:3]}" if bad else ""))


ALL_CHECKS = (
    check_latin,
    check_order_partition,
    check_automorphisms,
    check_row_sums,
    check_orbit_invariants,
    check_representatives,
    check_hasse,
    check_type_partition,
    check_tuple_order,
)


def run_all(an: Analysis) -> list[PropertyResult]:
    return [check(an) for check in ALL_CHECKS]

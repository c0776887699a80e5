from itertools import permutations

import pytest

from loopgen import Analysis, exhaustive_count, gen_count, make_cyclic, make_paige_2, make_s3
from loopgen.errors import MalformedTable
from loopgen.loop import find_nonassociative_triple, relabel, restrict, satisfies_moufang, validate_loop
from loopgen.properties import run_all


def _perm_group(gens):
    elems = {tuple(range(len(gens[0])))}
    frontier = list(elems)
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(len(g)))
                if q not in elems:
                    elems.add(q)
                    new.append(q)
        frontier = new
    elems = sorted(elems)
    index = {p: i for i, p in enumerate(elems)}
    return validate_loop([[index[tuple(p[q[i]] for i in range(len(q)))] for q in elems] for p in elems])


def _quaternion():
    # units +-1, +-i, +-j, +-k encoded as (sign, axis)
    basis = ["1", "i", "j", "k"]
    rule = {
        ("1", b): (1, b) for b in basis
    } | {(a, "1"): (1, a) for a in basis} | {
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    elems = [(s, b) for s in (1, -1) for b in basis]
    index = {e: i for i, e in enumerate(elems)}
    grid = []
    for s1, a in elems:
        row = []
        for s2, b in elems:
            s, c = rule[a, b]
            row.append(index[(s * s1 * s2, c)])
        grid.append(row)
    return validate_loop(grid)


def _paige_sub(size, associative):
    paige = Analysis(make_paige_2())
    for A in paige.lattice:
        if A.size == size:
            sub = restrict(paige.loop, A.members)
            if (find_nonassociative_triple(sub) is None) == associative:
                return sub
    raise AssertionError


LOOPS = {
    "C1": lambda: make_cyclic(1),
    "C6": lambda: make_cyclic(6),
    "S3-relabeled": lambda: relabel(make_s3(), [2, 0, 4, 5, 1, 3]),
    "D4": lambda: _perm_group([(1, 2, 3, 0), (0, 3, 2, 1)]),
    "Q8": _quaternion,
    "A4": lambda: _perm_group([(1, 2, 0, 3), (1, 0, 3, 2)]),
    "M(S3)": lambda: _paige_sub(12, associative=False),
    "M(A4)": lambda: _paige_sub(24, associative=False),
}


@pytest.fixture(scope="module", params=sorted(LOOPS))
def analysis(request):
    return Analysis(LOOPS[request.param]())


def test_property_suite(analysis):
    results = run_all(analysis)
    assert [r.name for r in results if not r.ok] == []


def test_formula_matches_oracle(analysis):
    for m in range(4):
        if analysis.loop.n ** m > 2 * 10**6:
            break
        oracle = exhaustive_count(analysis.loop, analysis.lattice, m).gen_count
        assert gen_count(analysis.jumps, m).gen_count == oracle


def test_extracted_chein_loops_are_moufang():
    for size in (12, 24):
        sub = _paige_sub(size, associative=False)
        assert satisfies_moufang(sub) and find_nonassociative_triple(sub) is not None


def test_known_automorphism_counts():
    assert Analysis(_perm_group([(1, 2, 3, 0), (0, 3, 2, 1)])).automorphisms.order == 8  # Aut(D4) = D4
    assert Analysis(_quaternion()).automorphisms.order == 24  # Aut(Q8) = S4
    assert Analysis(_perm_group([(1, 2, 0, 3), (1, 0, 3, 2)])).automorphisms.order == 24  # Aut(A4) = S4


def test_restrict_rejects_non_subloop():
    with pytest.raises(MalformedTable):
        restrict(make_s3(), [0, 1, 2])


def test_relabeling_preserves_counts():
    base = Analysis(make_s3())
    for perm in list(permutations(range(6)))[::97]:
        an = Analysis(relabel(make_s3(), perm))
        assert [gen_count(an.jumps, m).gen_count for m in range(4)] == [gen_count(base.jumps, m).gen_count for m in range(4)]

import pytest

from loopgen import orbit_index, verify_hasse_relation
from loopgen.jumps import jump_row, representative_violations

from conftest import rep


def test_s3_constants(s3):
    jt = s3.jumps
    assert jt.get("1", "C2") == 3
    assert jt.get("1", "C3") == 2
    assert jt.get("C2", "S3") == 4
    assert jt.get("C3", "S3") == 3


# (source, target, order) -> published value
PAIGE_NU = {
    ("S3", "C", 2): 18, ("S3", "C", 3): 36,
    ("C2", "A4", 2): 0, ("C2", "A4", 3): 24,
    ("A4", "C", 2): 48, ("A4", "C", 3): 48,
    ("E8", "C", 2): 32, ("E8", "C", 3): 32,
    ("E4-", "M(A4)", 3): 24, ("E4-", "C", 3): 24, ("E4-", "M(A4)", 2): 24, ("E4-", "C", 2): 8,
    ("E4+", "M(A4)", 3): 48, ("E4+", "M(A4)", 2): 48, ("E4+", "C", 3): 0, ("E4+", "C", 2): 0,
    ("E8", "M(A4)", 2): 24,
}


@pytest.mark.parametrize("key", PAIGE_NU)
def test_paige_constants(paige, key):
    src, dst, i = key
    assert paige.jumps.get(src, dst, i) == PAIGE_NU[key]


def test_paige_chain_splits(paige):
    # splits of the two-way sums 54+27 and 32+32, computed by enumeration
    jt = paige.jumps
    assert (jt.get("C3", "A4", 2), jt.get("C3", "A4", 3)) == (27, 54)
    assert (jt.get("C2", "S3", 2), jt.get("C2", "S3", 3)) == (32, 32)


def test_e4_orbit_signs_match_structure(paige):
    """E4+ lies in a single A4; E4- lies in a unique E8 and in three M(A4)."""
    lat, orbits = paige.lattice, paige.orbits
    plus, minus = rep(paige, "E4+"), rep(paige, "E4-")
    idx = lambda A, label: orbit_index(lat, orbits, A, orbits.by_label(label))  # noqa: E731
    assert (idx(plus, "A4"), idx(plus, "M(A4)"), idx(plus, "E8")) == (1, 7, 3)
    assert (idx(minus, "A4"), idx(minus, "M(A4)"), idx(minus, "E8")) == (0, 3, 1)


def test_orbit_index(paige):
    lat, orbits = paige.lattice, paige.orbits
    assert orbit_index(lat, orbits, rep(paige, "E8"), orbits.by_label("M(A4)")) == 3
    for o in range(len(orbits)):
        assert orbit_index(lat, orbits, lat[orbits.reps[o]], o) == 1


def test_hasse_worked_instance(paige):
    lat, orbits, prof = paige.lattice, paige.orbits, paige.profile
    e8 = rep(paige, "E8")
    big = next(lat[b] for b in orbits.members[orbits.by_label("M(A4)")] if e8 <= lat[b])
    fresh = sum(1 for x in big.members if x not in e8 and prof.orders[x] == 2)
    assert fresh == 8
    assert orbit_index(lat, orbits, e8, orbits.by_label("M(A4)")) * fresh == paige.jumps.get("E8", "M(A4)", 2) == 24


@pytest.mark.parametrize("name", ["s3", "c4", "paige"])
def test_hasse_relation_has_no_violations(request, name):
    an = request.getfixturevalue(name)
    report = verify_hasse_relation(an.loop, an.lattice, an.orbits, an.profile, an.jumps)
    assert report.ok and report.checked >= len(an.lattice.covers)


def test_c4_hasse_trivial(c4):
    assert c4.jumps.get("1", "C2", 2) == 1


def test_stay_in_own_orbit(paige, s3):
    for an in (paige, s3):
        for o in range(an.jumps.num_orbits):
            assert an.jumps.get(o, o) == an.jumps.rep_sizes[o]


def test_row_sums(paige):
    jt, prof = paige.jumps, paige.profile
    for o in range(jt.num_orbits):
        assert sum(jt.get(o, d) for d in range(jt.num_orbits)) == 120
        for i in jt.orders:
            assert sum(jt.get(o, d, i) for d in range(jt.num_orbits)) == prof.count(i)


def test_structural_zeros(paige):
    lat, orbits, jt = paige.lattice, paige.orbits, paige.jumps
    for (s, d), v in jt.nu.items():
        if v:
            A = lat[orbits.reps[s]]
            assert any(A <= lat[b] for b in orbits.members[d])


def test_representative_independence_s3_exhaustive(s3):
    assert representative_violations(s3.lattice, s3.orbits, s3.profile, s3.jumps) == []


def test_representative_independence_paige_all_members(paige):
    # every one of the 1045 subloops, not a sample
    assert representative_violations(paige.lattice, paige.orbits, paige.profile, paige.jumps) == []


def test_jump_row_for_rep_is_stored_row(s3):
    lat, orbits = s3.lattice, s3.orbits
    o = orbits.by_label("C2")
    row = jump_row(lat, orbits, s3.profile, lat[orbits.reps[o]])
    assert row == {(i, d): v for (s, i, d), v in s3.jumps.nu_i.items() if s == o}


def test_threaded_table_identical(paige):
    from loopgen import compute_jump_table

    jt = compute_jump_table(paige.loop, paige.lattice, paige.orbits, paige.profile, workers=4)
    assert jt == paige.jumps

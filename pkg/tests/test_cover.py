import pytest

from zdense.certify import default_cover
from zdense.cover import check_subgroup_relators, restrict
from zdense.groups import omega_rep, orbifold_from_triangle, triangle_rep
from zdense.linalg import Matrix


@pytest.fixture(scope="module")
def cover():
    return default_cover()


def test_cover_invariants(cover):
    assert cover.index == 3
    # Nielsen-Schreier: 3 * (4 - 1) + 1
    assert len(cover.schreier_generators) == 10
    assert cover.abelianization == [0, 0, 0, 0]
    assert cover.genus == 2
    assert cover.euler_characteristic == -2
    assert cover.torsion_free["passed"]
    assert cover.coset_table[0]["g1"] == 1 and cover.coset_table[1]["g1"] == 2 and cover.coset_table[2]["g1"] == 0


def test_schreier_generators_lie_in_kernel(cover):
    from zdense.cover import CHARACTER
    for w in cover.schreier_generators.values():
        assert sum(CHARACTER[g] * e for g, e in w.syllables) % 3 == 0


def test_restricted_relators_hold(cover):
    rep = orbifold_from_triangle(omega_rep(triangle_rep(), 3))
    assert check_subgroup_relators(rep, cover).passed
    surf = restrict(rep, cover)
    for r in cover.relators:
        assert surf.evaluate(r) == Matrix.identity(3)


def _cyclic(w):
    syl = list(w.syllables)
    while len(syl) > 1 and syl[0][0] == syl[-1][0]:
        a, b = syl.pop(0), syl.pop()
        if a[1] + b[1]:
            syl.insert(0, (a[0], a[1] + b[1]))
    return syl


def _rotations(syl):
    return [tuple(syl[i:] + syl[:i]) for i in range(len(syl))]


def test_relators_rewrite_to_conjugates(cover):
    # substituting Schreier words back gives a conjugate of an ambient relator
    from zdense.groups import GroupWord, ORBIFOLD_3333
    ambient = set()
    for r in ORBIFOLD_3333.relators:
        for w in (r, r.inverse()):
            ambient.update(_rotations(list(w.syllables)))
    assert len(cover.relators) == 15
    for r in cover.relators:
        w = GroupWord()
        for s, e in r.syllables:
            w = w * cover.schreier_generators[s] ** e
        assert tuple(_cyclic(w)) in ambient

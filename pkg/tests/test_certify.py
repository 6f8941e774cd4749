import copy
import json
from fractions import Fraction

import pytest

from zdense.bending import bend
from zdense.certify import (
    DENSE,
    FUCHSIAN,
    certify_path_point,
    certify_psl2_base,
    default_cover,
    is_success,
    verdict_from_record,
)
from zdense.errors import NotHyperbolic
from zdense.groups import ORBIFOLD_3333, Representation
from zdense.linalg import Matrix


def test_fuchsian_point_integral_base(integral_base):
    cert = certify_path_point(integral_base[3], 0)
    assert cert["verdict"] == FUCHSIAN
    assert cert["invariant_form"]["dimension"] == 1
    assert cert["invariant_form"]["signature"] == [1, 2]
    assert cert["rationality"]["integral_at_t0"] is True


def test_dense_point_n3(rational_base):
    cert = certify_path_point(rational_base[3], 1)
    assert cert["verdict"] == DENSE
    assert cert["invariant_form"]["dimension"] == 0
    assert cert["invariant_form"]["system_rank"] == 6
    assert cert["rationality"]["all_rational"]


def test_dense_point_n5(rational_base):
    base = certify_path_point(rational_base[5], 0)
    cert = certify_path_point(rational_base[5], Fraction(1, 2))
    assert base["invariant_form"]["signature"] == [2, 3]
    assert cert["verdict"] == DENSE
    assert cert["commutant"] == {"left": 1, "right": 1, "full": 1}


def test_left_half_shared_across_t(rational_base):
    a = certify_path_point(rational_base[3], 1)
    b = certify_path_point(rational_base[3], Fraction(3, 7))
    assert bend(rational_base[3], 1).rep.matrices(("g1", "g2")) == bend(rational_base[3], Fraction(3, 7)).rep.matrices(("g1", "g2"))
    assert a["left_half_unchanged"] and b["left_half_unchanged"]


def test_verdict_recomputed_from_json(rational_base):
    cert = json.loads(json.dumps(certify_path_point(rational_base[3], 1)))
    assert verdict_from_record(cert) == cert["verdict"] == DENSE
    tampered = [
        ("relations", "passed", False, "FAILED:relations"),
        ("commutant", "right", 2, "FAILED:irreducibility"),
        ("invariant_form", "dimension", 1, "FAILED:invariant_form"),
        ("surface", "torsion_free", False, "FAILED:surface"),
        ("loxodromy", "passed", False, "FAILED:loxodromy"),
    ]
    for section, key, value, verdict in tampered:
        c = copy.deepcopy(cert)
        c[section][key] = value
        assert verdict_from_record(c) == verdict


def test_theorem_dependencies_are_not_computed(rational_base):
    cert = certify_path_point(rational_base[3], 1)
    claims = {d["claim"] for d in cert["theorem_dependencies"]}
    assert {"hitchin_membership", "discrete_faithful_strongly_irreducible"} <= claims
    assert all(d["status"] == "theorem-dependency" for d in cert["theorem_dependencies"])


def test_psl2_base_certificate():
    out = certify_psl2_base()
    assert out["passed"] and out["left"]["rank"] == 3 and out["right"]["rank"] == 3
    with pytest.raises(NotHyperbolic):
        certify_psl2_base({"bad": (Matrix.identity(2), Matrix.identity(2))})


@pytest.mark.parametrize("t", [Fraction(0), Fraction(1)])
def test_every_single_entry_perturbation_is_caught(t, rational_base):
    base = rational_base[3]
    cover = default_cover()
    for g in ORBIFOLD_3333.generators:
        for i in range(3):
            for j in range(3):
                rows = [list(r) for r in base[g].rows]
                rows[i][j] += 1
                images = dict(base.images)
                images[g] = Matrix(rows)
                cert = certify_path_point(Representation(ORBIFOLD_3333, images), t, cover, 3)
                assert not is_success(cert["verdict"]), (g, i, j)

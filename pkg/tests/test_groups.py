import json

import pytest
from hypothesis import given, strategies as st

from zdense.exact import QSqrt2
from zdense.groups import (
    ORBIFOLD_3333,
    GroupWord,
    Representation,
    W,
    check_relations,
    omega_rep,
    orbifold_from_triangle,
    sigma,
    theta_generators,
    triangle_generators,
    triangle_rep,
)
from zdense.linalg import Matrix

s2 = QSqrt2(0, 1)
I2 = Matrix.identity(2)

letters = st.lists(
    st.tuples(st.sampled_from(["g1", "g2", "g3", "g4"]), st.integers(-3, 3)), max_size=8
).map(GroupWord)


def test_triangle_generator_entries():
    x, y = triangle_generators()
    assert x == Matrix([[0, -1], [1, 1]])
    assert y == Matrix([[0, -1 - s2], [-1 + s2, s2]])
    assert x.trace() == 1 and y.trace() == s2 and (x @ y).trace() == -s2
    assert x**3 == -I2 and y**4 == -I2 and (x @ y) ** 4 == -I2


def test_theta_generators():
    x, y = triangle_generators()
    th = theta_generators()
    assert th[0] == x
    assert th[1] == y @ x @ y.inv()
    prod = th[0] @ th[1] @ th[2] @ th[3]
    assert prod in (I2, -I2)


def test_sigma_projective_relations():
    rep = check_relations(triangle_rep(), projective=True)
    assert rep.passed
    assert [r["center"] for r in rep.results] == ["-I", "-I", "-I"]
    assert not check_relations(triangle_rep()).passed
    assert check_relations(sigma(), projective=True).passed


@pytest.mark.parametrize("n", [3, 5, 7])
def test_omega_sigma_exact_relations(n):
    rep = orbifold_from_triangle(omega_rep(triangle_rep(), n))
    assert check_relations(rep).passed
    assert rep.evaluate(W("g1*g2*g3*g4")) == Matrix.identity(n)
    assert rep.evaluate(GroupWord()) == Matrix.identity(n)


def test_corrupted_generator_names_violated_relator():
    rep = orbifold_from_triangle(omega_rep(triangle_rep(), 3))
    images = dict(rep.images)
    images["g3"] = images["g3"] + Matrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    report = check_relations(Representation(ORBIFOLD_3333, images))
    assert not report.passed
    assert "g3^3" in report.violated and "g1*g2*g3*g4" in report.violated


def test_word_parsing():
    w = W("g1*g2^-1*g2*g3^2")
    assert str(w) == "g1*g3^2"
    assert W("1") == GroupWord()
    assert str(W("g1") ** 3) == "g1^3"
    with pytest.raises(ValueError):
        W("g1**g2")


@given(letters, letters)
def test_evaluate_is_homomorphism(u, v):
    rep = sigma()
    assert rep.evaluate(u * v) == rep.evaluate(u) @ rep.evaluate(v)
    assert rep.evaluate(u.inverse()) == rep.evaluate(u).inv()
    assert GroupWord.parse(str(u)) == u


def test_representation_json_round_trip():
    rep = orbifold_from_triangle(omega_rep(triangle_rep(), 3))
    text = json.dumps(rep.to_json())
    back = Representation.from_json(json.loads(text))
    assert back.images == rep.images
    x, y = triangle_generators()
    obj = json.loads(json.dumps(triangle_rep().to_json()))
    assert Matrix.from_json(obj["images"]["x"]) == x and Matrix.from_json(obj["images"]["y"]) == y

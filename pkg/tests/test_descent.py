from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from zdense.descent import integralize, rationalize, solve_norm_equation, trace_screen
from zdense.errors import NormSearchExhausted, SaturationDiverged
from zdense.groups import TRIANGLE_344, Representation, check_relations, omega_rep, triangle_rep
from zdense.linalg import Matrix


@pytest.fixture(scope="module")
def tri3():
    return omega_rep(triangle_rep(), 3)


def test_rational_input_is_unchanged():
    rep = Representation(TRIANGLE_344, {"x": Matrix([[0, -1], [1, 1]]), "y": Matrix([[1, 1], [0, 1]])})
    out, w = rationalize(rep)
    assert out is rep and w.change_of_basis.is_identity()


def test_trace_screen_rational(tri3):
    screen = trace_screen(tri3)
    assert screen["all_rational"]
    assert {"x", "y", "x*y", "y*x*y^-1*x"} <= set(screen["traces"])
    assert screen["traces"]["y"] == "1"  # 2cos(pi/2) + 1


@pytest.mark.parametrize("n", [3, 5, 7])
def test_descent_and_saturation(n):
    tri = omega_rep(triangle_rep(), n)
    q, witness = rationalize(tri)
    assert q.is_rational()
    assert check_relations(q, projective=False).passed
    assert (witness.intertwiner.conj() @ witness.intertwiner).is_scalar()
    z, lattice = integralize(q)
    assert z.is_integral()
    assert all(m.det() == 1 for m in z.matrices())
    for w in ("x", "y", "x*y", "x*y^-1", "x^2*y"):
        assert tri.evaluate(w).trace() == q.evaluate(w).trace() == z.evaluate(w).trace()


def test_integral_input_identity_basis():
    rep = Representation(TRIANGLE_344, {"x": Matrix([[0, -1], [1, 1]]), "y": Matrix([[1, 1], [0, 1]])})
    out, lattice = integralize(rep)
    assert out is rep and lattice.iterations == 0 and lattice.basis.is_identity()


def test_saturation_diverges():
    d = Matrix.diag([Fraction(2, 3), Fraction(3, 2)])
    rep = Representation(TRIANGLE_344, {"x": d, "y": Matrix.identity(2)})
    with pytest.raises(SaturationDiverged):
        integralize(rep, sat_bound=10**6)


@given(st.integers(-40, 40), st.integers(0, 40), st.integers(1, 12))
def test_norm_equation_solvable_norms(a, b, q):
    c = Fraction(a * a - 2 * b * b, q * q)
    if c == 0:
        return
    s = solve_norm_equation(c)
    assert s.norm() == c


def test_norm_equation_no_solution():
    # 3 is inert in Q(sqrt2), so no element has norm 3
    with pytest.raises(NormSearchExhausted):
        solve_norm_equation(3, bound=1000)

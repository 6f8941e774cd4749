from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from zdense.errors import InvalidDegree, NotHyperbolic
from zdense.exact import QSqrt2, canonical, sqrt
from zdense.groups import omega_rep, orbifold_from_triangle, theta_generators, triangle_generators, triangle_rep
from zdense.linalg import Matrix
from zdense.sympower import (
    ALTERNATING,
    commutant_dimension,
    eigen_2x2,
    invariant_forms,
    omega_n,
    psl2_density_witness,
    signature,
)

small = st.fractions(min_value=-6, max_value=6, max_denominator=4)
sl2 = st.tuples(small, small, small).filter(lambda t: t[0] != 0).map(
    lambda t: Matrix([[t[0], t[1]], [t[2], (1 + t[1] * t[2]) / t[0]]])
)


def omega_oracle(a, n):
    X, Y = sympy.symbols("X Y")
    (p, q), (r, s) = [[sympy.nsimplify(str(v)) if not isinstance(v, QSqrt2) else v.a + v.b * sympy.sqrt(2)
                       for v in row] for row in a.rows]
    cols = []
    for i in range(n):
        poly = sympy.Poly(sympy.expand((p * X + r * Y) ** (n - 1 - i) * (q * X + s * Y) ** i), X, Y)
        cols.append([poly.coeff_monomial(X ** (n - 1 - j) * Y ** j) for j in range(n)])
    return sympy.Matrix(cols).T


def as_sympy(m):
    def conv(v):
        v = QSqrt2(0) + v
        return sympy.Rational(v.a.numerator, v.a.denominator) + sympy.Rational(v.b.numerator, v.b.denominator) * sympy.sqrt(2)
    return sympy.Matrix([[conv(v) for v in r] for r in m.rows])


@pytest.mark.parametrize("n", [3, 5])
def test_omega_matches_expansion(n):
    x, y = triangle_generators()
    for a in (x, y, x @ y):
        assert sympy.simplify(as_sympy(omega_n(a, n)) - omega_oracle(a, n)) == sympy.zeros(n)


def test_omega_examples():
    lam = Fraction(3)
    assert omega_n(Matrix.diag([lam, 1 / lam]), 3) == Matrix.diag([lam**2, 1, lam**-2])
    assert omega_n(Matrix.identity(2), 5) == Matrix.identity(5)
    x, _ = triangle_generators()
    assert omega_n(x, 3) == Matrix([[0, 0, 1], [0, -1, -2], [1, 1, 1]])
    assert omega_n(-Matrix.identity(2), 7) == Matrix.identity(7)


@pytest.mark.parametrize("n", [1, 2, 4, 0, -3])
def test_omega_rejects_bad_degree(n):
    with pytest.raises(InvalidDegree):
        omega_n(Matrix.identity(2), n)


@given(sl2, sl2)
def test_omega_is_homomorphism(a, b):
    assert omega_n(a @ b, 5) == omega_n(a, 5) @ omega_n(b, 5)


@given(sl2)
def test_omega_det_and_trace(a):
    # eigenvalues lam^(n-1-2j): trace of omega_3 is tau^2 - 1
    m = omega_n(a, 3)
    assert m.det() == 1
    assert m.trace() == a.trace() ** 2 - 1


def test_forms_trivial_examples():
    assert invariant_forms([Matrix.identity(3)]).dimension == 6
    assert invariant_forms([Matrix.identity(3)], ALTERNATING).dimension == 3
    assert commutant_dimension([Matrix.identity(3)]) == 9
    assert commutant_dimension([Matrix.diag([1, 2, 3])]) == 3


@pytest.mark.parametrize("n", [3, 5])
def test_forms_on_fuchsian_base(n):
    rep = orbifold_from_triangle(omega_rep(triangle_rep(), n))
    sol = invariant_forms(rep.matrices())
    k = (n - 1) // 2
    assert sol.dimension == 1
    assert sol.signature == (k, k + 1)
    j = sol.basis[0]
    assert j == j.T
    assert all(g.T @ j @ g == j for g in rep.matrices())
    assert invariant_forms(rep.matrices(), ALTERNATING).dimension == 0


def test_half_commutant_n5():
    rep = orbifold_from_triangle(omega_rep(triangle_rep(), 5))
    assert commutant_dimension(rep.matrices(("g1", "g2"))) == 1
    assert commutant_dimension(rep.matrices(("g3", "g4"))) == 1


def test_signature_matches_sympy_eigenvalues():
    j = Matrix([[2, 1, 0], [1, -3, 4], [0, 4, 1]])
    eig = [complex(sympy.N(e)).real for e in sympy.Matrix(j.rows).eigenvals(multiple=True)]
    pos = sum(1 for e in eig if e > 0)
    neg = sum(1 for e in eig if e < 0)
    assert signature(j) == (pos, neg, 0)
    assert signature(Matrix([[0, 1], [1, 0]])) == (1, 1, 0)


def test_density_witness_both_halves():
    th = theta_generators()
    for a, b in ((th[0], th[1]), (th[2], th[3])):
        w = psl2_density_witness(a, b)
        assert w.rank == 3 and w.accepted
        tau = (b @ a).trace()
        disc = canonical(tau * tau - 4)
        assert set(w.diagonal) == {(tau + sqrt(disc)) / 2, (tau - sqrt(disc)) / 2}


def test_density_witness_degenerate():
    with pytest.raises(NotHyperbolic):
        psl2_density_witness(Matrix.identity(2), Matrix.identity(2))
    lam1, lam2, _ = eigen_2x2(Matrix.diag([Fraction(2), Fraction(1, 2)]))
    assert {lam1, lam2} == {2, Fraction(1, 2)}

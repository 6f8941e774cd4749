"""Galois descent Q(sqrt2) -> Q and lattice saturation Q -> Z for representations.

Descent: for an absolutely irreducible rep with rational character, the
Galois twist is isomorphic to the rep, via an intertwiner T. Once T is scaled so
that conj(T) T = I, the fixed vectors of w -> conj(T) conj(w) span a rational
form of the module, and the matrix Q of those vectors conjugates the rep into
GL(n, Q).

Saturation: the Z-span of the orbit of Z^n under the group is a lattice
whenever the group is conjugate into GL(n, Z); expressing the generators in a
basis of that lattice gives integer matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NonRationalTrace,
    NormSearchExhausted,
    NotIrreducible,
    SaturationDiverged,
)
from .exact import QSqrt2, canonical, is_rational, to_rational
from .groups import Representation, W
from .intlattice import rational_lattice_basis
from .linalg import ONE, ZERO, Matrix, kernel_basis, rank, restricted_kernel
from .sympower import commutant_dimension, matrix_units

DEFAULT_NORM_BOUND = 10**6
DEFAULT_SAT_BOUND = 10**12
MAX_SATURATION_ROUNDS = 200


@dataclass
class DescentWitness:
    intertwiner: Matrix
    norm_scalar: Fraction
    scaling: QSqrt2
    change_of_basis: Matrix

    def to_json(self) -> dict:
        return {
            "intertwiner": self.intertwiner.to_json(),
            "norm_scalar": str(self.norm_scalar),
            "scaling": {"a": str(self.scaling.a), "b": str(self.scaling.b)},
            "change_of_basis": self.change_of_basis.to_json(),
        }


@dataclass
class LatticeBasis:
    basis: Matrix  # columns span the invariant lattice
    denominator: int
    iterations: int

    def to_json(self) -> dict:
        return {
            "basis_columns": self.basis.to_json(),
            "denominator_bound": self.denominator,
            "iterations": self.iterations,
        }


def trace_sample_words(rep: Representation) -> list:
    gens = rep.presentation.generators
    words = [W(g) for g in gens]
    words += [W(f"{a}*{b}") for i, a in enumerate(gens) for b in gens[i + 1:]]
    words += [W(f"{a}*{b}^-1") for i, a in enumerate(gens) for b in gens[i + 1:]]
    words += [W(f"{a}^2*{b}") for i, a in enumerate(gens) for b in gens if a != b]
    if gens == ("x", "y"):
        words.append(W("y*x*y^-1*x"))  # theta_2 theta_1
    return words


def trace_screen(rep: Representation) -> dict:
    traces = {str(w): rep.evaluate(w).trace() for w in trace_sample_words(rep)}
    return {"traces": {k: str(v) for k, v in traces.items()},
            "all_rational": all(is_rational(v) for v in traces.values())}


def solve_norm_equation(c, bound: int = DEFAULT_NORM_BOUND) -> QSqrt2:
    """Find s in Q(sqrt2) with s * conj(s) = c.

    Writes c = p/q, looks for integers a, b with a^2 - 2 b^2 = p q by scanning
    b = 0, 1, 2, ... (at most ``bound`` steps), then returns (a + b sqrt2)/q.
    Square factors of p q are stripped first so the scan stays short.
    """
    c = Fraction(c)
    if c == 0:
        raise ValueError("norm equation with c = 0")
    m = c.numerator * c.denominator
    sq, core = _split_square(m)
    for b in range(bound + 1):
        a2 = core + 2 * b * b
        if a2 >= 0:
            a = math.isqrt(a2)
            if a * a == a2:
                return QSqrt2(Fraction(a * sq, c.denominator), Fraction(b * sq, c.denominator))
    raise NormSearchExhausted(f"no solution of a^2 - 2b^2 = {core} with b <= {bound}", bound)


def _split_square(m: int) -> tuple[int, int]:
    """m = s^2 * core with small-prime square factors moved into s."""
    s = 1
    sgn = -1 if m < 0 else 1
    m = abs(m)
    p = 2
    while p * p <= m and p < 10**5:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1
    return s, sgn * m


def _conj_rep_matrices(rep: Representation):
    return [(m.conj(), m) for m in rep.images.values()]


def rationalize(rep: Representation, norm_bound: int = DEFAULT_NORM_BOUND):
    """Conjugate a Q(sqrt2) representation into GL(n, Q).

    Returns ``(rational_rep, witness)``. Raises NotIrreducible when the
    commutant is not one-dimensional and NonRationalTrace when a sampled trace
    has a sqrt2 component.
    """
    n = rep.n
    if rep.is_rational():
        ident = Matrix.identity(n)
        return rep, DescentWitness(ident, ONE, QSqrt2(1), ident)
    if commutant_dimension(rep.matrices()) != 1:
        raise NotIrreducible("descent needs an absolutely irreducible representation")
    screen = trace_screen(rep)
    if not screen["all_rational"]:
        raise NonRationalTrace(f"irrational traces: {screen['traces']}")

    # conj(rho(g)) T = T rho(g)
    conditions = [(lambda t, gc=gc, g=g: gc @ t - t @ g) for gc, g in _conj_rep_matrices(rep)]
    sols = restricted_kernel(matrix_units(n), conditions)
    if len(sols) != 1:
        raise NotIrreducible(f"intertwiner space has dimension {len(sols)}")
    t = sols[0]
    pivot = next(x for x in t.entries() if x)
    t = t * (ONE / pivot)

    tt = t.conj() @ t
    if not tt.is_scalar() or not is_rational(tt[0, 0]):
        raise ArithmeticError("conj(T) T is not a rational scalar")
    c = to_rational(tt[0, 0])

    s = _norm_root(t, c, n, norm_bound)
    t_unit = t * (ONE / s)
    if not (t_unit.conj() @ t_unit).is_identity():
        raise ArithmeticError("normalised intertwiner is not a cocycle")

    q = _fixed_basis(t_unit.conj(), n)
    out = rep.conjugate(q)
    if not out.is_rational():
        raise ArithmeticError("descended representation is not rational")
    return out, DescentWitness(t, c, s, q)


def _norm_root(t: Matrix, c: Fraction, n: int, norm_bound: int) -> QSqrt2:
    # Odd n: N(det T) = c^n, hence N(det T / c^((n-1)/2)) = c.
    if n % 2 == 1:
        det = t.det()
        s = QSqrt2(0) + det / (c ** ((n - 1) // 2))
        if s.norm() == c:
            return s
    return solve_norm_equation(c, norm_bound)


def _fixed_basis(a_mat: Matrix, n: int) -> Matrix:
    """Q-basis of {w : a_mat conj(w) = w}, as the columns of a matrix.

    Writing a_mat = A + sqrt2 B and w = u + sqrt2 v with rational A, B, u, v,
    the condition is the rational system (A - I) u - 2 B v = 0, B u - (A + I) v = 0.
    """
    def parts(x):
        x = QSqrt2(0) + x
        return x.a, x.b

    a = [[parts(a_mat[i, j])[0] for j in range(n)] for i in range(n)]
    b = [[parts(a_mat[i, j])[1] for j in range(n)] for i in range(n)]
    rows = []
    for i in range(n):
        rows.append([a[i][j] - (ONE if i == j else ZERO) for j in range(n)] + [-2 * b[i][j] for j in range(n)])
    for i in range(n):
        rows.append([b[i][j] for j in range(n)] + [-a[i][j] - (ONE if i == j else ZERO) for j in range(n)])
    ker = kernel_basis(Matrix(rows))
    if len(ker) != n:
        raise ArithmeticError(f"fixed space has rational dimension {len(ker)}, expected {n}")
    cols = [[QSqrt2(vec[i], vec[n + i]) for i in range(n)] for vec in ker]
    q = Matrix.from_columns(cols)
    if rank(q) != n:
        raise ArithmeticError("fixed vectors are dependent over Q(sqrt2)")
    return q


def integralize(rep: Representation, sat_bound: int = DEFAULT_SAT_BOUND):
    """Conjugate a rational representation into GL(n, Z) by lattice saturation.

    Starts from Z^n and adjoins images under each generator and inverse (in
    presentation order, g before g^-1) until the Hermite basis is stable.
    Raises SaturationDiverged once the common denominator exceeds
    ``sat_bound`` or the round limit is hit.
    """
    n = rep.n
    if not rep.is_rational():
        raise ValueError("integralize needs a rational representation")
    if rep.is_integral():
        return rep, LatticeBasis(Matrix.identity(n), 1, 0)
    ops = []
    for g in rep.presentation.generators:
        ops.append(rep[g])
        ops.append(rep.inverse_image(g))
    basis = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    den = 1
    for it in range(1, MAX_SATURATION_ROUNDS + 1):
        vectors = list(basis)
        for op in ops:
            cols = op.rows
            for v in basis:
                vectors.append([canonical(sum((a * x for a, x in zip(r, v)), ZERO)) for r in cols])
        new_basis, den = rational_lattice_basis(vectors, n)
        if den > sat_bound:
            raise SaturationDiverged(
                f"lattice denominator {den} exceeds bound after {it} rounds", sat_bound
            )
        if new_basis == basis:
            p = Matrix.from_columns(basis)
            out = rep.conjugate(p)
            if not out.is_integral():
                raise ArithmeticError("saturated lattice is not invariant")
            return out, LatticeBasis(p, den, it)
        basis = new_basis
    raise SaturationDiverged(
        f"no stable lattice within {MAX_SATURATION_ROUNDS} rounds", sat_bound
    )


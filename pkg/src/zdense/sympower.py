"""Symmetric-power representation SL(2) -> SL(n) and the linear solvers behind
the irreducibility and invariant-form checks.

The polynomial basis is X^(n-1), X^(n-2) Y, ..., Y^(n-1). A 2x2 matrix
[[a, b], [c, d]] sends X -> aX + cY and Y -> bX + dY; column i of the result
holds the coefficients of the image of X^(n-1-i) Y^i.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidDegree, NotHyperbolic
from .exact import canonical, sign, sqrt
from .linalg import (
    ONE,
    ZERO,
    Matrix,
    flatten,
    rank,
    restricted_kernel,
)

SYMMETRIC = "symmetric"
ALTERNATING = "alternating"


def _poly_mul(p, q):
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return out


def _poly_pow(p, k):
    out = [ONE]
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def omega_n(a: Matrix, n: int) -> Matrix:
    """Image of a 2x2 matrix under the (n-1)-th symmetric power, n odd > 1."""
    if not isinstance(n, int) or n <= 1 or n % 2 == 0:
        raise InvalidDegree(f"n must be an odd integer > 1, got {n}")
    if a.shape != (2, 2):
        raise ValueError("omega_n expects a 2x2 matrix")
    (p, q), (r, s) = a.rows
    # coefficient lists indexed by the power of Y
    x_img = [p, r]
    y_img = [q, s]
    cols = []
    for i in range(n):
        cols.append(_poly_mul(_poly_pow(x_img, n - 1 - i), _poly_pow(y_img, i)))
    return Matrix.from_columns(cols)


def symmetric_basis(n: int) -> list[Matrix]:
    basis = []
    for i in range(n):
        for j in range(i, n):
            e = [[ZERO] * n for _ in range(n)]
            e[i][j] = ONE
            e[j][i] = ONE
            basis.append(Matrix(e))
    return basis


def alternating_basis(n: int) -> list[Matrix]:
    basis = []
    for i in range(n):
        for j in range(i + 1, n):
            e = [[ZERO] * n for _ in range(n)]
            e[i][j] = ONE
            e[j][i] = -ONE
            basis.append(Matrix(e))
    return basis


def matrix_units(n: int) -> list[Matrix]:
    basis = []
    for i in range(n):
        for j in range(n):
            e = [[ZERO] * n for _ in range(n)]
            e[i][j] = ONE
            basis.append(Matrix(e))
    return basis


@dataclass(frozen=True)
class FormSolution:
    dimension: int
    basis: list
    symmetry: str
    signature: tuple | None = None

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "symmetry": self.symmetry,
            "signature": list(self.signature) if self.signature else None,
            "basis": [b.to_json() for b in self.basis],
        }


def invariant_forms(gens, symmetry: str = SYMMETRIC) -> FormSolution:
    """All bilinear forms B of the given symmetry with g^T B g = B for every g.

    When exactly one symmetric form exists its signature (p, q) is reported,
    with the basis form scaled by -1 if needed so that p < q (forms are only
    defined up to scaling).
    """
    gens = list(gens)
    n = gens[0].n
    if symmetry == SYMMETRIC:
        start = symmetric_basis(n)
    elif symmetry == ALTERNATING:
        start = alternating_basis(n)
    else:
        raise ValueError(f"unknown symmetry {symmetry!r}")
    conditions = [(lambda b, g=g, gt=g.T: gt @ b @ g - b) for g in gens]
    basis = restricted_kernel(start, conditions)
    basis = [_normalize(b) for b in basis]
    sig = None
    if symmetry == SYMMETRIC and len(basis) == 1:
        p, q, _ = signature(basis[0])
        if p > q:
            basis = [-basis[0]]
            p, q = q, p
        sig = (p, q)
    return FormSolution(len(basis), basis, symmetry, sig)


def invariant_form_system_rank(gens) -> int:
    """Rank of the stacked linear system g^T J g - J = 0 over symmetric J."""
    gens = list(gens)
    n = gens[0].n
    cols = [
        tuple(x for g in gens for x in flatten(g.T @ b @ g - b)) for b in symmetric_basis(n)
    ]
    return rank(Matrix.from_columns(cols))


def commutant(gens) -> list[Matrix]:
    """Basis of {M : M g = g M for all g}."""
    gens = list(gens)
    n = gens[0].n
    conditions = [(lambda m, g=g: m @ g - g @ m) for g in gens]
    return [_normalize(b) for b in restricted_kernel(matrix_units(n), conditions)]


def commutant_dimension(gens) -> int:
    return len(commutant(gens))


def _normalize(m: Matrix) -> Matrix:
    """Scale so the first nonzero entry (row-major) is 1."""
    for x in m.entries():
        if x:
            return m * (ONE / x) if x != ONE else m
    return m


def signature(sym: Matrix) -> tuple[int, int, int]:
    """Inertia (positive, negative, zero) of a symmetric matrix.

    Exact congruence diagonalisation; a zero diagonal with a nonzero
    off-diagonal entry is fixed by adding the partner row and column first.
    """
    n = sym.n
    a = [list(r) for r in sym.rows]
    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    continue
                # row_k += row_j, col_k += col_j: new pivot 2*a[k][j]
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] = row[k] + row[j]
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            if f:
                f = canonical(f / piv)
                a[i] = [canonical(x - f * y) for x, y in zip(a[i], a[k])]
                for row in a:
                    row[i] = canonical(row[i] - f * row[k])
        s = sign(piv)
        pos += s > 0
        neg += s < 0
    return pos, neg, n - pos - neg


def eigen_2x2(m: Matrix):
    """Eigenvalues (tau + r)/2, (tau - r)/2 of a 2x2 matrix with r = sqrt(tau^2 - 4 det)."""
    tau = m.trace()
    disc = canonical(tau * tau - 4 * m.det())
    if sign(disc) <= 0:
        raise NotHyperbolic(f"trace^2 - 4 = {disc} is not positive")
    r = sqrt(disc)
    return (tau + r) / 2, (tau - r) / 2, disc


def _eigvec(m: Matrix, lam):
    (a, b), (c, d) = m.rows
    if b != 0:
        return (b, lam - a)
    return (lam - d, c)


def _sl2_coords(x: Matrix):
    return (x[0, 0], x[0, 1], x[1, 0])


@dataclass
class DensityWitness:
    tau: object
    discriminant: object
    diagonal: tuple
    conjugator: Matrix
    vectors: list
    rank: int
    words: tuple = field(default=())

    @property
    def accepted(self) -> bool:
        return self.rank == 3

    def to_json(self) -> dict:
        return {
            "words": list(self.words),
            "trace": str(self.tau),
            "discriminant": str(self.discriminant),
            "diagonal": [str(x) for x in self.diagonal],
            "vectors": [[str(x) for x in v] for v in self.vectors],
            "rank": self.rank,
            "accepted": self.accepted,
        }


def psl2_density_witness(theta_a: Matrix, theta_b: Matrix, word: str = "ba") -> DensityWitness:
    """Three independent vectors in the Lie algebra of the Zariski closure of
    <theta_a, theta_b> in PSL(2).

    The hyperbolic element h = theta_b theta_a (``word="ab"`` uses
    theta_a theta_b, same trace) is diagonalised as P^-1 h P = D over a tower
    field. X1 = diag(1, -1) spans the Lie algebra of the closure of <D>; its
    conjugates by P^-1 theta_a theta_b P and P^-1 theta_a^2 theta_b P also lie in
    that Lie algebra. Rank 3 means the closure is all of PSL(2).
    """
    if word == "ba":
        h = theta_b @ theta_a
    elif word == "ab":
        h = theta_a @ theta_b
    else:
        raise ValueError("word must be 'ab' or 'ba'")
    lam1, lam2, disc = eigen_2x2(h)
    v1, v2 = _eigvec(h, lam1), _eigvec(h, lam2)
    p = Matrix([[v1[0], v2[0]], [v1[1], v2[1]]])
    p_inv = p.inv()
    d = p_inv @ h @ p
    if d != Matrix.diag([lam1, lam2]):
        raise ArithmeticError("diagonalisation check failed")
    x1 = Matrix.diag([ONE, -ONE])
    vectors = [_sl2_coords(x1)]
    for g in (theta_a @ theta_b, theta_a @ theta_a @ theta_b):
        c = p_inv @ g @ p
        vectors.append(_sl2_coords(c @ x1 @ c.inv()))
    r = rank(Matrix(vectors))
    return DensityWitness(h.trace(), disc, (lam1, lam2), p, vectors, r)

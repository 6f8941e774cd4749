"""Dense exact matrices over Q, Q(sqrt2) or a tower field.

Elimination is fraction-free (Bareiss): over the integers every division is
exact, and over the fields used here it keeps coefficient growth polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldError, SingularMatrix
from .exact import (
    FIELD_Q,
    canonical,
    conj,
    decode_scalar,
    encode_scalar,
    field_of,
    is_integer,
    is_rational,
    join_fields,
    to_rational,
)

ZERO = Fraction(0)
ONE = Fraction(1)


class Matrix:
    """Immutable m x n matrix of exact scalars.

    The field tag is the smallest of Q, Q(sqrt2), tower containing every entry.
    """

    __slots__ = ("rows", "_field", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(canonical(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_field", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int | None = None) -> "Matrix":
        return cls([[ZERO] * (m if n is None else n) for _ in range(m)])

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence]) -> "Matrix":
        return cls(zip(*cols))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    @property
    def n(self) -> int:
        m, k = self.shape
        if m != k:
            raise ValueError(f"matrix is not square: {m}x{k}")
        return m

    def is_square(self) -> bool:
        m, k = self.shape
        return m == k

    @property
    def field(self) -> str:
        if self._field is None:
            object.__setattr__(
                self, "_field", join_fields(*(field_of(x) for r in self.rows for x in r))
            )
        return self._field

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def entries(self):
        return [x for r in self.rows for x in r]

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in r) for r in self.rows)
        return f"Matrix[{body}]"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.rows))
        return self._hash

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return Matrix([[a * other for a in r] for r in self.rows])

    def __rmul__(self, scalar):
        return Matrix([[scalar * a for a in r] for r in self.rows])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return mat_mul(self, other)

    def __pow__(self, k: int) -> "Matrix":
        base = self if k >= 0 else mat_inv(self)
        result = Matrix.identity(self.n)
        k = abs(k)
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def trace(self):
        return canonical(sum((self.rows[i][i] for i in range(self.n)), ZERO))

    def det(self):
        return mat_det(self)

    def inv(self) -> "Matrix":
        return mat_inv(self)

    def conj(self) -> "Matrix":
        """Entrywise Galois conjugate sqrt2 -> -sqrt2."""
        return Matrix([[conj(a) for a in r] for r in self.rows])

    def map(self, f) -> "Matrix":
        return Matrix([[f(a) for a in r] for r in self.rows])

    def is_identity(self) -> bool:
        return self.is_square() and self == Matrix.identity(self.n)

    def is_scalar(self) -> bool:
        if not self.is_square():
            return False
        c = self.rows[0][0]
        return self == Matrix.diag([c] * self.n)

    def is_rational(self) -> bool:
        return all(is_rational(x) for r in self.rows for x in r)

    def is_integral(self) -> bool:
        return all(is_integer(x) for r in self.rows for x in r)

    def max_denominator(self) -> int:
        return max(to_rational(x).denominator for r in self.rows for x in r)

    def to_json(self, field: str | None = None) -> dict:
        field = field or self.field
        return {
            "field": field,
            "rows": [[encode_scalar(x, field) for x in r] for r in self.rows],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Matrix":
        if not isinstance(obj, dict) or "field" not in obj or "rows" not in obj:
            raise FieldError("matrix JSON needs 'field' and 'rows'")
        field = obj["field"]
        rows = obj["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise FieldError("matrix rows must be nested arrays")
        m = cls([[decode_scalar(x, field) for x in r] for r in rows])
        if field == FIELD_Q and m.field != FIELD_Q:
            raise FieldError("field tag does not match entries")
        return m


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    cols = list(zip(*b.rows))
    return Matrix(
        [[sum((x * y for x, y in zip(r, c)), ZERO) for c in cols] for r in a.rows]
    )


def _bareiss(rows: list[list], pivot_cols: int) -> tuple[list[int], int]:
    """In-place fraction-free forward elimination.

    Pivots are searched in the first ``pivot_cols`` columns; the remaining
    columns (an augmented block) are carried along. Returns the pivot columns
    and the number of row swaps.
    """
    m = len(rows)
    width = len(rows[0]) if rows else 0
    prev = ONE
    r = 0
    pivots = []
    swaps = 0
    for c in range(pivot_cols):
        if r == m:
            break
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            rows[p], rows[r] = rows[r], rows[p]
            swaps += 1
        pivot_row = rows[r]
        piv = pivot_row[c]
        for i in range(r + 1, m):
            row = rows[i]
            a_ic = row[c]
            if a_ic == 0:
                if prev != ONE or piv != ONE:
                    for j in range(c + 1, width):
                        row[j] = canonical(piv * row[j] / prev)
                continue
            for j in range(c + 1, width):
                row[j] = canonical((piv * row[j] - a_ic * pivot_row[j]) / prev)
            row[c] = ZERO
        prev = piv
        pivots.append(c)
        r += 1
    return pivots, swaps


def mat_det(m: Matrix):
    n = m.n
    rows = [list(r) for r in m.rows]
    pivots, swaps = _bareiss(rows, n)
    if len(pivots) < n:
        return ZERO
    d = rows[n - 1][n - 1]
    return canonical(-d if swaps % 2 else d)


def mat_inv(m: Matrix) -> Matrix:
    n = m.n
    rows = [list(r) + [ONE if i == j else ZERO for j in range(n)] for i, r in enumerate(m.rows)]
    pivots, _ = _bareiss(rows, n)
    if len(pivots) < n:
        raise SingularMatrix("matrix is singular")
    inv_cols = []
    for k in range(n):
        x = [ZERO] * n
        for r in range(n - 1, -1, -1):
            acc = rows[r][n + k]
            for j in range(r + 1, n):
                if x[j]:
                    acc = acc - rows[r][j] * x[j]
            x[r] = canonical(acc / rows[r][r])
        inv_cols.append(x)
    return Matrix.from_columns(inv_cols)


def row_echelon(m: Matrix) -> tuple[Matrix, list[int]]:
    rows = [list(r) for r in m.rows]
    pivots, _ = _bareiss(rows, m.shape[1])
    return Matrix(rows), pivots


def rank(m: Matrix) -> int:
    return len(row_echelon(m)[1])


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the right null space {v : m v = 0}, exact.

    Each basis vector has a 1 in one free column and 0 in the other free
    columns, so the basis is in reduced form.
    """
    ncols = m.shape[1]
    rows = [list(r) for r in m.rows]
    pivots, _ = _bareiss(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        x = [ZERO] * ncols
        x[f] = ONE
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = rows[r]
            acc = ZERO
            for j in range(c + 1, ncols):
                if x[j]:
                    acc = acc + row[j] * x[j]
            x[c] = canonical(-acc / row[c])
        basis.append(tuple(x))
    return basis


def mat_vec(m: Matrix, v: Sequence) -> tuple:
    return tuple(canonical(sum((a * b for a, b in zip(r, v)), ZERO)) for r in m.rows)


def charpoly(m: Matrix) -> list:
    """Characteristic polynomial det(tI - m), coefficients highest degree first.

    Faddeev-LeVerrier recursion; exact in characteristic zero.
    """
    n = m.n
    coeffs = [ONE]
    aux = Matrix.zeros(n)
    ident = Matrix.identity(n)
    for k in range(1, n + 1):
        aux = m @ aux + coeffs[-1] * ident
        coeffs.append(canonical(-(m @ aux).trace() / k))
    return coeffs


def poly_eval(coeffs: Sequence, x):
    acc = ZERO
    for c in coeffs:
        acc = acc * x + c
    return acc


def poly_from_roots(roots: Sequence) -> list:
    """Coefficients (highest first) of prod (t - r)."""
    coeffs = [ONE]
    for r in roots:
        shifted = coeffs + [ZERO]
        for i in range(1, len(shifted)):
            shifted[i] = shifted[i] - r * coeffs[i - 1]
        coeffs = shifted
    return [canonical(c) for c in coeffs]


def stack_columns(vectors: Sequence[Sequence]) -> Matrix:
    return Matrix.from_columns(vectors)


def flatten(m: Matrix) -> tuple:
    return tuple(x for r in m.rows for x in r)


def unflatten(v: Sequence, n: int) -> Matrix:
    return Matrix([v[i * n:(i + 1) * n] for i in range(n)])


def linear_combination(coeffs: Sequence, mats: Sequence[Matrix]) -> Matrix:
    m, k = mats[0].shape
    acc = [[ZERO] * k for _ in range(m)]
    for c, mat in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(mat.rows):
            row = acc[i]
            for j, x in enumerate(r):
                if x:
                    row[j] = row[j] + c * x
    return Matrix(acc)


def restricted_kernel(basis: Sequence[Matrix], conditions) -> list[Matrix]:
    """Subspace of span(basis) on which every linear condition vanishes.

    ``conditions`` are linear maps Matrix -> Matrix; each is imposed in turn on
    the current subspace, so the systems solved stay small.
    """
    current = list(basis)
    for cond in conditions:
        if not current:
            break
        images = [flatten(cond(b)) for b in current]
        coeff_basis = kernel_basis(stack_columns(images))
        current = [linear_combination(c, current) for c in coeff_basis]
    return current

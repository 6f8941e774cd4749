"""Hermite and Smith normal forms of integer matrices, with unimodular transforms.

Integer matrices are plain lists of lists of ``int``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm


def _as_int_rows(a) -> list[list[int]]:
    rows = a.rows if hasattr(a, "rows") else a
    out = []
    for r in rows:
        row = []
        for x in r:
            x = Fraction(x) if not isinstance(x, int) else x
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integer entry {x}")
                x = x.numerator
            row.append(int(x))
        out.append(row)
    return out


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def hnf(a) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U A = H``. ``H`` is upper
    echelon, pivots are positive, entries above a pivot lie in [0, pivot), and
    zero rows come last.
    """
    h = _as_int_rows(a)
    m = len(h)
    ncols = len(h[0]) if m else 0
    u = _identity(m)
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(h[i][c]))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


def snf(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form ``(D, U, V)`` with ``U A V = D``.

    ``D`` is diagonal with non-negative entries d_1 | d_2 | ..., zeros last.
    """
    d = _as_int_rows(a)
    m = len(d)
    n = len(d[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        d[dst] = [x + q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
            if not nz:
                break
            _, pi, pj = min(nz)
            swap_rows(t, pi)
            swap_cols(t, pj)
            piv = d[t][t]
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // piv))
                    clean = clean and d[i][t] == 0
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // piv))
                    clean = clean and d[t][j] == 0
            if not clean:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % piv),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if t < m and t < n and d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return d, u, v


def invariant_factors(a) -> list[int]:
    """Diagonal of the Smith form, padded with zeros to the column count."""
    d, _, _ = snf(a)
    n = len(d[0]) if d else 0
    return [d[i][i] if i < len(d) else 0 for i in range(n)]


def abelian_invariants(relation_matrix, ngens: int) -> list[int]:
    """Abelian group Z^ngens / rows: the non-unit invariant factors (0 = free Z)."""
    if not relation_matrix:
        return [0] * ngens
    return [f for f in invariant_factors(relation_matrix) if f != 1]


def rational_lattice_basis(vectors, dim: int) -> tuple[list[list[Fraction]], int]:
    """Hermite basis of the Z-span of rational vectors.

    Returns the nonzero HNF rows (scaled back to rationals) and the common
    denominator used.
    """
    den = 1
    for vec in vectors:
        for x in vec:
            den = lcm(den, Fraction(x).denominator)
    scaled = [[int(Fraction(x) * den) for x in vec] for vec in vectors]
    h, _ = hnf(scaled)
    basis = [[Fraction(x, den) for x in row] for row in h if any(row)]
    return basis, den

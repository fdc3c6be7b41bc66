"""Exact linear algebra over the integers and rationals.

Everything here is small and dense (matrices of rank at most ten or so), so
plain row reduction with Fraction entries and a textbook Smith normal form
are fast enough and keep every result exact.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

Matrix = tuple[tuple[Fraction, ...], ...]


def identity(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if inner else 0
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols))
        for i in range(rows)
    )


def mat_vec(a, v):
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in a)


def transpose(a):
    return tuple(zip(*a)) if a else ()


def mat_neg(a):
    return tuple(tuple(-x for x in row) for row in a)


def det(a) -> Fraction:
    """Determinant by fraction-free forward elimination (exact)."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [[Fraction(x) for x in row] for row in a]
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col] != 0:
                factor = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= factor * m[col][c]
    return sign * result


def invert(a) -> Matrix:
    """Inverse of a square matrix over the rationals (Gauss-Jordan)."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        m[col], m[pivot] = m[pivot], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def solve(a, b) -> tuple[Fraction, ...]:
    """Solve a x = b for square nonsingular a."""
    return mat_vec(invert(a), b)


def kernel_basis(a) -> list[tuple[Fraction, ...]]:
    """Basis of the right kernel of a (rows may be fewer than columns)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [[Fraction(x) for x in row] for row in a]
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(tuple(v))
    return basis


def primitive_kernel_vector(a) -> tuple[int, ...]:
    """The primitive integer vector spanning a one-dimensional kernel.

    Raises if the kernel is not one-dimensional.  The sign is normalized so
    that all entries are positive (the affine Cartan kernels we need are
    strictly positive once oriented).
    """
    basis = kernel_basis(a)
    if len(basis) != 1:
        raise ValueError(f"kernel has dimension {len(basis)}, expected 1")
    v = basis[0]
    denom = 1
    for x in v:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if any(x < 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ValueError("kernel vector is not strictly positive")
    return tuple(ints)


def smith_normal_form(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form of an integer matrix.

    Returns (d, u, v) with u a v = d, u and v unimodular, and d diagonal with
    d[i][i] dividing d[i+1][i+1].
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    d = [[int(x) for x in row] for row in a]
    u = [list(row) for row in identity(rows)]
    v = [list(row) for row in identity(cols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        d[dst] = [x + k * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    t = 0
    while t < min(rows, cols):
        # Find a nonzero pivot in the remaining block.
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # Clear the pivot column.
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    add_row(t, i, -q)
                    if d[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            # Clear the pivot row.
            for j in range(t + 1, cols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    add_col(t, j, -q)
                    if d[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                break
        # Enforce the divisibility chain: d[t][t] must divide everything below.
        fixed = True
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i][j] % d[t][t] != 0:
                    add_row(i, t, 1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if d[t][t] < 0:
                d[t] = [-x for x in d[t]]
                u[t] = [-x for x in u[t]]
            t += 1
    return d, u, v


def invariant_factors(a) -> list[int]:
    """Diagonal of the Smith normal form, zeros dropped."""
    d, _, _ = smith_normal_form(a)
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    return [x for x in diag if x != 0]


def lattice_index(gens, n: int) -> int | None:
    """Index in Z^n of the lattice spanned by the given integer row vectors.

    Returns None when the span has rank below n (infinite index).
    """
    if not gens:
        return None
    factors = invariant_factors(list(gens))
    if len(factors) < n:
        return None
    index = 1
    for f in factors:
        index *= abs(f)
    return index


def in_row_lattice(basis, v) -> bool:
    """Whether integer vector v lies in the lattice spanned by basis rows.

    basis must be square and nonsingular.
    """
    coords = solve(transpose(basis), v)
    return all(c.denominator == 1 for c in coords)

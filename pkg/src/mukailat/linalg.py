"""Exact integer / rational linear algebra kernels.

Matrices are tuples of row tuples, vectors are flat tuples.  Entries are
Python ints (or ``fractions.Fraction`` where a function says so).  There is
no floating point anywhere in this package; every result below is exact.

The workhorses are the Smith normal form with unimodular transforms (used
for discriminant groups, saturated kernels and membership tests) and exact
congruence diagonalization (used for signatures).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple
Mat = tuple


def freeze(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Mat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zero_vec(n: int) -> Vec:
    return (0,) * n


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: Mat, b: Mat) -> Mat:
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in m)


def mat_neg(m: Mat) -> Mat:
    return tuple(tuple(-x for x in row) for row in m)


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(x + y for x, y in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(x - y for x, y in zip(u, v))


def vec_scale(c, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def vec_neg(v: Vec) -> Vec:
    return tuple(-x for x in v)


def vec_content(v: Vec) -> int:
    """gcd of the entries (0 for the zero vector)."""
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def is_zero_vec(v: Vec) -> bool:
    return all(x == 0 for x in v)


def det(m: Mat) -> int:
    """Determinant of an integer matrix by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def det_q(m) -> Fraction:
    """Determinant of a small rational matrix by Gaussian elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in row] for row in m]
    result = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            result = -result
        result *= a[k][k]
        inv = 1 / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                factor = a[i][k] * inv
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return result


def mat_inv_q(m) -> Mat:
    """Inverse of a matrix, over Fraction.  Raises ZeroDivisionError if singular."""
    n = len(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if a[i][k] != 0), None)
        if pivot_row is None:
            raise ZeroDivisionError("matrix is singular")
        a[k], a[pivot_row] = a[pivot_row], a[k]
        inv = 1 / a[k][k]
        a[k] = [x * inv for x in a[k]]
        for i in range(n):
            if i != k and a[i][k]:
                factor = a[i][k]
                a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
    return tuple(tuple(row[n:]) for row in a)


def mat_inv_int(m: Mat) -> Mat:
    """Inverse of a unimodular integer matrix, returned with int entries."""
    inv = mat_inv_q(m)
    out = []
    for row in inv:
        out_row = []
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular over Z")
            out_row.append(int(x))
        out.append(tuple(out_row))
    return tuple(out)


def xgcd(a: int, b: int):
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def xgcd_vector(coeffs) -> tuple[int, Vec]:
    """(g, x) with sum(c_i * x_i) = g = gcd(coeffs) >= 0."""
    g = 0
    combo = [0] * len(coeffs)
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        if g == 0:
            g = abs(c)
            combo[i] = 1 if c > 0 else -1
            continue
        g2, p, q = xgcd(g, c)
        combo = [p * x for x in combo]
        combo[i] += q
        g = g2
    return g, tuple(combo)


def smith_normal_form(mat: Mat):
    """Smith normal form with transforms.

    Returns (d, s, t) with s @ mat @ t == d, s and t unimodular, d diagonal
    with non-negative entries d_1 | d_2 | ... .
    """
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    d = [list(row) for row in mat]
    s = [list(row) for row in identity(nrows)]
    t = [list(row) for row in identity(ncols)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        s[i], s[j] = s[j], s[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in t:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        d[dst] = [a + c * b for a, b in zip(d[dst], d[src])]
        s[dst] = [a + c * b for a, b in zip(s[dst], s[src])]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in t:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        s[i] = [-a for a in s[i]]

    def clear_position(k):
        # Euclid on row k / column k until the pivot divides everything there.
        while True:
            # pivot: smallest nonzero entry in the remaining block's row/col k
            piv = None
            best = None
            for i in range(k, nrows):
                for j in range(k, ncols):
                    a = d[i][j]
                    if a and (best is None or abs(a) < best):
                        best = abs(a)
                        piv = (i, j)
            if piv is None:
                return False
            swap_rows(k, piv[0])
            swap_cols(k, piv[1])
            dirty = False
            for i in range(k + 1, nrows):
                if d[i][k]:
                    q = d[i][k] // d[k][k]
                    add_row(k, i, -q)
                    if d[i][k]:
                        dirty = True
            for j in range(k + 1, ncols):
                if d[k][j]:
                    q = d[k][j] // d[k][k]
                    add_col(k, j, -q)
                    if d[k][j]:
                        dirty = True
            if not dirty:
                return True

    def diagonalize() -> int:
        rank = 0
        for k in range(min(nrows, ncols)):
            if clear_position(k):
                rank += 1
            else:
                break
        for i in range(rank):
            if d[i][i] < 0:
                negate_row(i)
        return rank

    rank = diagonalize()
    # enforce the divisibility chain d_i | d_{i+1}: pulling the offending
    # d_{i+1} into row i makes the Euclid pass replace d_i by the gcd
    while True:
        bad = next(
            (i for i in range(rank - 1) if d[i + 1][i + 1] % d[i][i]), None
        )
        if bad is None:
            break
        add_row(bad + 1, bad, 1)
        rank = diagonalize()
    return freeze(d), freeze(s), freeze(t)


def elementary_divisors(mat: Mat) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(mat)
    n = min(len(d), len(d[0]) if d else 0)
    return tuple(d[i][i] for i in range(n) if d[i][i] != 0)


def kernel_basis(mat: Mat) -> tuple[Vec, ...]:
    """Basis of the saturated integer kernel {x : mat @ x = 0}, as columns of
    the SNF column transform; the span is automatically primitive in Z^n."""
    nrows = len(mat)
    ncols = len(mat[0]) if nrows else 0
    if ncols == 0:
        return ()
    if nrows == 0:
        return tuple(identity(ncols))
    d, _, t = smith_normal_form(mat)
    rank = sum(1 for i in range(min(nrows, ncols)) if d[i][i] != 0)
    cols = transpose(t)
    return tuple(cols[rank:])


def in_span(vec: Vec, basis: tuple[Vec, ...]) -> bool:
    """Is vec an *integer* combination of the given (independent) vectors?"""
    if not basis:
        return is_zero_vec(vec)
    a = transpose(freeze(basis))  # columns = basis vectors
    d, s, _ = smith_normal_form(a)
    y = mat_vec(s, vec)
    rank = sum(1 for i in range(min(len(d), len(d[0]))) if d[i][i] != 0)
    for i, yi in enumerate(y):
        if i < rank:
            if yi % d[i][i]:
                return False
        elif yi != 0:
            return False
    return True


def solve_int(a: Mat, b: Vec):
    """One integer solution x of a @ x = b, or None."""
    d, s, t = smith_normal_form(a)
    c = mat_vec(s, b)
    ncols = len(a[0]) if a else 0
    rank = sum(1 for i in range(min(len(d), ncols)) if d[i][i] != 0)
    y = [0] * ncols
    for i, ci in enumerate(c):
        if i < rank:
            if ci % d[i][i]:
                return None
            y[i] = ci // d[i][i]
        elif ci != 0:
            return None
    return mat_vec(t, tuple(y))


def signature(gram: Mat) -> tuple[int, int, int]:
    """(n_plus, n_minus, n_zero) of a symmetric matrix, by exact rational
    congruence diagonalization."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]

    def sym_add(i, j, c):
        # basis change e_i <- e_i + c e_j
        for k in range(n):
            a[i][k] += c * a[j][k]
        for k in range(n):
            a[k][i] += c * a[k][j]

    def sym_swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    pos = neg = zero = 0
    for k in range(n):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if pivot is not None:
                sym_swap(k, pivot)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    zero += 1
                    continue
                sym_add(k, j, 1)  # diagonal becomes 2*a[k][j]
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                sym_add(i, k, -a[i][k] / p)
    return pos, neg, zero


def is_positive_definite(gram) -> bool:
    n = len(gram)
    p, m, z = signature(gram)
    return p == n and m == 0 and z == 0

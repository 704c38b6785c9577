"""Exact dense linear algebra over the rationals and prime fields.

Matrices are lists of row lists.  Everything is small (desk scale), so plain
Gaussian elimination with exact arithmetic is the right tool.  The same
elimination code serves Fraction entries and GF(p) entries through a tiny
field adapter.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = List[List]


class QQ:
    """Field adapter for exact rationals."""

    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(x):
        return Fraction(x)

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def div(a, b):
        return a / b

    @staticmethod
    def is_zero(a):
        return a == 0


class GF:
    """Field adapter for integers modulo a prime."""

    def __init__(self, p: int):
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def of(self, x) -> int:
        if isinstance(x, Fraction):
            num = x.numerator % self.p
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        return a * pow(b, -1, self.p) % self.p

    def is_zero(self, a):
        return a % self.p == 0


def zeros(rows: int, cols: int, field=QQ) -> Matrix:
    return [[field.zero] * cols for _ in range(rows)]


def identity(n: int, field=QQ) -> Matrix:
    mat = zeros(n, n, field)
    for i in range(n):
        mat[i][i] = field.one
    return mat


def mat_mul(a: Matrix, b: Matrix, field=QQ) -> Matrix:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = zeros(rows, cols, field)
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            c = ai[k]
            if field.is_zero(c):
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] = field.add(oi[j], field.mul(c, bk[j]))
    return out


def mat_add(a: Matrix, b: Matrix, field=QQ) -> Matrix:
    return [[field.add(x, y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c, field=QQ) -> Matrix:
    return [[field.mul(c, x) for x in row] for row in a]


def mat_pow(a: Matrix, n: int, field=QQ) -> Matrix:
    result = identity(len(a), field)
    base = [row[:] for row in a]
    while n:
        if n & 1:
            result = mat_mul(result, base, field)
        base = mat_mul(base, base, field)
        n >>= 1
    return result


def transpose(a: Matrix) -> Matrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def rref(mat: Matrix, field=QQ) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and the pivot column list."""
    m = [row[:] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if not field.is_zero(m[i][c]):
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        inv = field.div(field.one, m[r][c])
        m[r] = [field.mul(inv, x) for x in m[r]]
        for i in range(rows):
            if i != r and not field.is_zero(m[i][c]):
                factor = m[i][c]
                m[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(mat: Matrix, field=QQ) -> int:
    if not mat or not mat[0]:
        return 0
    return len(rref(mat, field)[1])


def kernel_basis(mat: Matrix, cols: int, field=QQ) -> List[List]:
    """Basis (as column vectors, returned as lists) of the right kernel."""
    if not mat:
        return [unit_vector(cols, i, field) for i in range(cols)]
    red, pivots = rref(mat, field)
    pivot_set = set(pivots)
    free_cols = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        vec = [field.zero] * cols
        vec[fc] = field.one
        for r, pc in enumerate(pivots):
            vec[pc] = field.sub(field.zero, red[r][fc])
        basis.append(vec)
    return basis


def column_space_basis(mat: Matrix, field=QQ) -> List[List]:
    """Basis of the column space, as columns of the original matrix."""
    if not mat or not mat[0]:
        return []
    red, pivots = rref(mat, field)
    cols = transpose(mat)
    return [cols[c][:] for c in pivots]


def unit_vector(n: int, i: int, field=QQ) -> List:
    v = [field.zero] * n
    v[i] = field.one
    return v


def solve(mat: Matrix, target: Sequence, field=QQ):
    """One solution x of mat·x = target, or None when inconsistent."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    aug = [list(mat[i]) + [target[i]] for i in range(rows)]
    red, pivots = rref(aug, field)
    for r in range(len(pivots)):
        if pivots[r] == cols:
            return None
    # rows after the last pivot row are all zero by construction
    x = [field.zero] * cols
    for r, pc in enumerate(pivots):
        if pc < cols:
            x[pc] = red[r][cols]
    return x


def in_span(columns: List[List], vector: Sequence, field=QQ) -> bool:
    if not columns:
        return all(field.is_zero(v) for v in vector)
    mat = transpose(columns)
    return solve(mat, vector, field) is not None


def coords_in_basis(columns: List[List], vector: Sequence, field=QQ):
    """Coordinates of ``vector`` in the given (independent) column list."""
    if not columns:
        if all(field.is_zero(v) for v in vector):
            return []
        return None
    return solve(transpose(columns), vector, field)


def nilpotent_block_counts(mat: Matrix, field=QQ) -> List[int]:
    """Jordan block counts of a nilpotent operator: entry l-1 counts size-l blocks."""
    n = len(mat)
    if n == 0:
        return []
    ranks = [n]
    power = identity(n, field)
    while True:
        power = mat_mul(power, mat, field)
        r = rank(power, field)
        ranks.append(r)
        if r == 0:
            break
        if len(ranks) > n + 1:
            raise ValueError("operator is not nilpotent")
    # blocks of size exactly l: r_{l-1} - 2 r_l + r_{l+1}
    ranks.append(0)
    counts = []
    for l in range(1, len(ranks) - 1):
        counts.append(ranks[l - 1] - 2 * ranks[l] + ranks[l + 1])
    while counts and counts[-1] == 0:
        counts.pop()
    return counts


def restrict_operator(op: Matrix, basis: List[List], field=QQ) -> Matrix:
    """Matrix of an operator restricted to an invariant subspace basis."""
    if not basis:
        return []
    cols = []
    mat = transpose(basis)
    for b in basis:
        image = [sum_prod(row, b, field) for row in op]
        coords = solve(mat, image, field)
        if coords is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(coords)
    return transpose(cols)


def sum_prod(row: Sequence, vec: Sequence, field=QQ):
    total = field.zero
    for a, b in zip(row, vec):
        total = field.add(total, field.mul(a, b))
    return total


def apply_matrix(mat: Matrix, vec: Sequence, field=QQ) -> List:
    return [sum_prod(row, vec, field) for row in mat]


def hstack(blocks: List[Matrix], rows: int, field=QQ) -> Matrix:
    """Concatenate matrices with the same row count side by side."""
    out = [[] for _ in range(rows)]
    for block in blocks:
        width = len(block[0]) if block else 0
        for i in range(rows):
            out[i].extend(block[i] if block else [field.zero] * width)
    return out

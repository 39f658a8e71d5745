"""Exact linear algebra over the rationals.

Row reduction, kernels and inverses on lists of ``Fraction`` rows. Matrix
products are generic so entries may also be ``Poly`` values.
"""

from fractions import Fraction
from typing import Sequence


Vector = tuple[Fraction, ...]


def to_fractions(row: Sequence) -> list[Fraction]:
    return [Fraction(x) for x in row]


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[Vector], list[int]]:
    """Reduced row-echelon form.

    Args:
        rows: Input rows, each of length ``ncols``.
        ncols: Number of columns.

    Returns:
        (nonzero rows of the RREF, pivot column of each row). Pivots are 1
        and every pivot column is zero outside its own row.
    """
    m = [to_fractions(r) for r in rows]
    for r in m:
        if len(r) != ncols:
            raise ValueError(f"Row of length {len(r)} in a matrix with {ncols} columns")
    pivots: list[int] = []
    piv_r = 0
    for piv_c in range(ncols):
        found = None
        for i in range(piv_r, len(m)):
            if m[i][piv_c] != 0:
                found = i
                break
        if found is None:
            continue
        m[piv_r], m[found] = m[found], m[piv_r]
        fp = m[piv_r][piv_c]
        if fp != 1:
            m[piv_r] = [x / fp for x in m[piv_r]]
        for i in range(len(m)):
            if i != piv_r and m[i][piv_c] != 0:
                factor = m[i][piv_c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[piv_r])]
        pivots.append(piv_c)
        piv_r += 1
        if piv_r == len(m):
            break
    return [tuple(r) for r in m[:piv_r]], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[0])


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    reduced, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[free]
        basis.append(tuple(vec))
    return basis


def express_in_rref(reduced: Sequence[Vector], pivots: Sequence[int], v: Sequence) -> list[Fraction] | None:
    """Coefficients of ``v`` in the RREF rows, or None when ``v`` is outside their span."""
    coeffs = [Fraction(v[p]) for p in pivots]
    residual = to_fractions(v)
    for c, row in zip(coeffs, reduced):
        if c:
            residual = [a - c * b for a, b in zip(residual, row)]
    if any(residual):
        return None
    return coeffs


def identity(n: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination.

    Raises:
        ValueError: If the matrix is singular.
    """
    n = len(matrix)
    augmented = [to_fractions(row) + identity(n)[i] for i, row in enumerate(matrix)]
    reduced, pivots = rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise ValueError("Matrix is singular")
    return [list(row[n:]) for row in reduced[:n]]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    """Matrix product with exact entries (Fraction or Poly)."""
    if a and len(a[0]) != len(b):
        raise ValueError(f"Cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0]) if b else 0}")
    cols = len(b[0]) if b else 0
    result = []
    for row in a:
        out = []
        for j in range(cols):
            acc = 0
            for k, x in enumerate(row):
                y = b[k][j]
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        result.append(out)
    return result

"""Exact determinants of matrices over a ring context.

Three engines: Gaussian elimination over fields, fraction-free Bareiss
elimination over integral domains with exact division, and memoized
cofactor expansion as a last resort for small matrices.
"""

from __future__ import annotations


def det_gauss(field, mat):
    """Determinant over a field by elimination with row pivoting."""
    n = len(mat)
    if n == 0:
        return field.one
    m = [row[:] for row in mat]
    sign = 1
    det = field.one
    for k in range(n):
        pivot = next((r for r in range(k, n) if not field.is_zero(m[r][k])), None)
        if pivot is None:
            return field.zero
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pk = m[k][k]
        det = field.mul(det, pk)
        inv_pk = field.inv(pk)
        for i in range(k + 1, n):
            if field.is_zero(m[i][k]):
                continue
            f = field.mul(m[i][k], inv_pk)
            for j in range(k + 1, n):
                m[i][j] = field.sub(m[i][j], field.mul(f, m[k][j]))
            m[i][k] = field.zero
    return det if sign == 1 else field.neg(det)


def det_bareiss(ring, mat):
    """Determinant by Bareiss fraction-free elimination.

    Every division is exact (a classical fact about Bareiss minors), so the
    engine works over any integral domain exposing `exact_div` -- Z and
    polynomial rings in particular.
    """
    n = len(mat)
    if n == 0:
        return ring.one
    m = [row[:] for row in mat]
    sign = 1
    prev = ring.one
    for k in range(n - 1):
        pivot = next((r for r in range(k, n) if not ring.is_zero(m[r][k])), None)
        if pivot is None:
            return ring.zero
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        pk = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = ring.sub(ring.mul(pk, m[i][j]), ring.mul(m[i][k], m[k][j]))
                m[i][j] = ring.exact_div(num, prev)
            m[i][k] = ring.zero
        prev = pk
    det = m[n - 1][n - 1]
    return det if sign == 1 else ring.neg(det)


def det_cofactor(ring, mat):
    """Determinant by expansion along the first remaining row, memoized on
    the surviving column set.

    Exponential on dense matrices (keep those to n <= 10 or so), but on
    banded matrices -- Sylvester matrices in particular -- each row only
    reaches a narrow column window, so few distinct column subsets occur
    and the expansion stays polynomial in practice.  For polynomial
    entries this avoids the intermediate-expression swell of Bareiss."""
    n = len(mat)
    if n == 0:
        return ring.one
    full = (1 << n) - 1
    memo = {}

    def minor(row, cols):
        if cols == 0:
            return ring.one
        key = cols
        cached = memo.get(key)
        if cached is not None:
            return cached
        total = ring.zero
        sign_pos = True
        for j in range(n):
            if not cols & (1 << j):
                continue
            a = mat[row][j]
            if not ring.is_zero(a):
                sub = minor(row + 1, cols & ~(1 << j))
                term = ring.mul(a, sub)
                total = ring.add(total, term) if sign_pos else ring.sub(total, term)
            sign_pos = not sign_pos
        memo[key] = total
        return total

    return minor(0, full)


def determinant(ring, mat):
    """Pick the best available engine for the ring."""
    if getattr(ring, "is_field", False):
        return det_gauss(ring, mat)
    if hasattr(ring, "exact_div"):
        return det_bareiss(ring, mat)
    return det_cofactor(ring, mat)

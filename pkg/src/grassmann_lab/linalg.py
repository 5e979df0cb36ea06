"""Dense exact linear algebra over a GF instance.

Matrices are tuples of row tuples of int-encoded field elements; all
functions are pure and return new tuples.  Reduced row echelon form is
the canonical representative used for subspace identity throughout the
package, so :func:`rref` must stay deterministic.
"""

from __future__ import annotations

from .errors import ValidationError
from .fields import GF

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def zeros(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def vec_add(F: GF, x: Vector, y: Vector) -> Vector:
    return tuple(F.add(a, b) for a, b in zip(x, y))


def vec_scale(F: GF, c: int, x: Vector) -> Vector:
    return tuple(F.mul(c, a) for a in x)


def dot(F: GF, x: Vector, y: Vector) -> int:
    acc = 0
    for a, b in zip(x, y):
        acc = F.add(acc, F.mul(a, b))
    return acc


def matvec(F: GF, a: Matrix, x: Vector) -> Vector:
    return tuple(dot(F, row, x) for row in a)


def vecmat(F: GF, x: Vector, a: Matrix) -> Vector:
    """Row vector times matrix."""
    cols = len(a[0]) if a else 0
    out = [0] * cols
    for xi, row in zip(x, a):
        if xi:
            for j, rj in enumerate(row):
                if rj:
                    out[j] = F.add(out[j], F.mul(xi, rj))
    return tuple(out)


def matmul(F: GF, a: Matrix, b: Matrix) -> Matrix:
    if a and b and len(a[0]) != len(b):
        raise ValidationError(f"shape mismatch {len(a[0])} vs {len(b)}")
    return tuple(vecmat(F, row, b) for row in a)


def rref(F: GF, a: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
    """Reduced row echelon form.

    Returns (R, rank, pivot_columns).  R has the same shape as the input
    with zero rows collected at the bottom, and is the unique RREF of the
    row space, so rref(rref(a)) == rref(a).
    """
    rows = [list(r) for r in a]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = F.inv(rows[r][c])
        if inv != 1:
            rows[r] = [F.mul(inv, x) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [F.sub(x, F.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), r, tuple(pivots)


def _rank_gf2(a: Matrix) -> int:
    # Bit-packed elimination; rows become ints with column 0 as the high bit.
    ncols = len(a[0])
    packed = []
    for row in a:
        acc = 0
        for x in row:
            acc = (acc << 1) | x
        if acc:
            packed.append(acc)
    rank = 0
    for c in range(ncols - 1, -1, -1):
        bit = 1 << c
        pivot = None
        for i in range(rank, len(packed)):
            if packed[i] & bit:
                pivot = i
                break
        if pivot is None:
            continue
        packed[rank], packed[pivot] = packed[pivot], packed[rank]
        prow = packed[rank]
        for i in range(rank + 1, len(packed)):
            if packed[i] & bit:
                packed[i] ^= prow
        rank += 1
        if rank == len(packed):
            break
    return rank


def rank(F: GF, a: Matrix) -> int:
    if not a:
        return 0
    if F.q == 2:
        return _rank_gf2(a)
    rows = [list(r) for r in a]
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        factor = F.inv(rows[r][c])
        prow = rows[r]
        for i in range(r + 1, nrows):
            if rows[i][c]:
                scale = F.mul(rows[i][c], factor)
                rows[i] = [F.sub(x, F.mul(scale, y)) for x, y in zip(rows[i], prow)]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(F: GF, a: Matrix, ncols: int) -> Matrix:
    """RREF basis of the right kernel {x : a @ x == 0}."""
    if not a:
        return identity(ncols)
    reduced, rk, pivots = rref(F, a)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = F.neg(reduced[i][fc])
        basis.append(tuple(vec))
    if not basis:
        return ()
    canon, rk2, _ = rref(F, tuple(basis))
    return canon[:rk2]


def inverse(F: GF, a: Matrix) -> Matrix:
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValidationError("inverse requires a square matrix")
    aug = tuple(tuple(a[i]) + tuple(1 if j == i else 0 for j in range(n)) for i in range(n))
    reduced, rk, _ = rref(F, aug)
    if rk < n or any(reduced[i][i] != 1 for i in range(n)):
        raise ValidationError("matrix is singular")
    return tuple(row[n:] for row in reduced[:n])


def is_invertible(F: GF, a: Matrix) -> bool:
    n = len(a)
    return n == 0 or (len(a[0]) == n and rank(F, a) == n)


def frobenius_vec(F: GF, x: Vector, t: int) -> Vector:
    if t % F.e == 0:
        return tuple(x)
    return tuple(F.frobenius(c, t) for c in x)

"""Canonical subspaces of F_q^n and semilinear maps acting on them.

A :class:`Subspace` stores its reduced-row-echelon basis, so two values
compare equal exactly when they are the same set of vectors, and hashing
respects that.  The dual space is coordinatized by the standard dual
basis, which turns the annihilator into a null-space computation and
makes the double annihilator literally the identity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field

from . import linalg
from .errors import ValidationError
from .fields import GF
from .linalg import Matrix, Vector


@dataclass(frozen=True)
class Subspace:
    field: GF
    ambient_dim: int
    rows: Matrix  # RREF, no zero rows, pivots strictly increasing
    _hash: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash",
            hash((self.field.p, self.field.e, self.ambient_dim, self.rows)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return (self is other) or (
            isinstance(other, Subspace)
            and self._hash == other._hash
            and self.rows == other.rows
            and self.ambient_dim == other.ambient_dim
            and self.field == other.field)

    def __repr__(self):
        return f"Subspace({self.field}, n={self.ambient_dim}, rows={self.rows})"

    # construction ----------------------------------------------------

    @staticmethod
    def from_rows(field: GF, ambient_dim: int, rows) -> "Subspace":
        """Canonicalize arbitrary spanning rows (zero rows allowed)."""
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        for r in rows:
            if len(r) != ambient_dim:
                raise ValidationError(f"row length {len(r)} != ambient dim {ambient_dim}")
            if any(not (0 <= x < field.q) for x in r):
                raise ValidationError("entry outside field range")
        if not rows:
            return Subspace(field, ambient_dim, ())
        reduced, rank, _ = linalg.rref(field, rows)
        return Subspace(field, ambient_dim, reduced[:rank])

    @staticmethod
    def zero(field: GF, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, ())

    @staticmethod
    def full(field: GF, ambient_dim: int) -> "Subspace":
        return Subspace(field, ambient_dim, linalg.identity(ambient_dim))

    @staticmethod
    def line(field: GF, vector) -> "Subspace":
        return Subspace.from_rows(field, len(vector), (tuple(vector),))

    # queries -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains_vector(self, v: Vector) -> bool:
        residual = _reduce_against(self.field, v, self.rows)
        return not any(residual)

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(r) for r in other.rows)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def vectors(self):
        """All q^dim vectors, for exhaustive checks at tiny sizes."""
        F, n = self.field, self.ambient_dim
        for coeffs in itertools.product(F.elements(), repeat=self.dim):
            v = (0,) * n
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = linalg.vec_add(F, v, linalg.vec_scale(F, c, row))
            yield v

    def _check_compatible(self, other: "Subspace"):
        if self.field != other.field:
            raise ValidationError(f"field mismatch: {self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise ValidationError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}")


def _reduce_against(F: GF, v: Vector, rref_rows: Matrix) -> Vector:
    """Reduce v modulo a subspace given by RREF rows."""
    v = list(v)
    for row in rref_rows:
        pivot = next(i for i, x in enumerate(row) if x)
        c = v[pivot]
        if c:
            for i, x in enumerate(row):
                if x:
                    v[i] = F.sub(v[i], F.mul(c, x))
    return tuple(v)


def sum_subspaces(s: Subspace, u: Subspace) -> Subspace:
    s._check_compatible(u)
    return Subspace.from_rows(s.field, s.ambient_dim, s.rows + u.rows)


def sum_many(field: GF, ambient_dim: int, spaces) -> Subspace:
    rows = tuple(itertools.chain.from_iterable(sp.rows for sp in spaces))
    return Subspace.from_rows(field, ambient_dim, rows)


def annihilator(s: Subspace) -> Subspace:
    """All dual vectors vanishing on s, in standard dual coordinates.

    An involution: annihilator(annihilator(s)) == s.
    """
    rows = linalg.nullspace(s.field, s.rows, s.ambient_dim)
    return Subspace(s.field, s.ambient_dim, rows)


def intersect_subspaces(s: Subspace, u: Subspace) -> Subspace:
    s._check_compatible(u)
    if s is u or s == u:
        return s
    return annihilator(sum_subspaces(annihilator(s), annihilator(u)))


def intersect_many(field: GF, ambient_dim: int, spaces) -> Subspace:
    rows = tuple(itertools.chain.from_iterable(annihilator(sp).rows for sp in spaces))
    joint = Subspace.from_rows(field, ambient_dim, rows)
    return annihilator(joint)


# quotient and section coordinates -------------------------------------


def complement_columns(m: Subspace) -> tuple[int, ...]:
    """Non-pivot columns of m; the standard basis vectors there complete
    m's basis to a basis of the ambient space."""
    pivots = {next(i for i, x in enumerate(row) if x) for row in m.rows}
    return tuple(c for c in range(m.ambient_dim) if c not in pivots)


def quotient_coords(m: Subspace, t: Subspace) -> Matrix:
    """Coordinates of t/m in the complement-column chart; requires m <= t."""
    if not t.contains(m):
        raise ValidationError("quotient_coords requires m <= t")
    free = complement_columns(m)
    rows = []
    for row in t.rows:
        reduced = _reduce_against(t.field, row, m.rows)
        if any(reduced):
            rows.append(tuple(reduced[c] for c in free))
    reduced, rank, _ = linalg.rref(t.field, tuple(rows)) if rows else ((), 0, ())
    if rank != t.dim - m.dim:
        raise ValidationError("inconsistent quotient dimensions")
    return reduced[:rank]


def lift_from_quotient(m: Subspace, rows_q: Matrix) -> Subspace:
    """Inverse of quotient_coords: the subspace of V spanned by m and the
    lifted quotient rows."""
    free = complement_columns(m)
    n = m.ambient_dim
    lifted = []
    for row in rows_q:
        v = [0] * n
        for c, x in zip(free, row):
            v[c] = x
        lifted.append(tuple(v))
    return Subspace.from_rows(m.field, n, m.rows + tuple(lifted))


def lift_vector(m: Subspace, row_q: Vector) -> Vector:
    free = complement_columns(m)
    v = [0] * m.ambient_dim
    for c, x in zip(free, row_q):
        v[c] = x
    return tuple(v)


def coords_in(n_space: Subspace, s: Subspace) -> Matrix:
    """Coordinates of s <= n_space relative to n_space's RREF basis.

    Because the basis is RREF, the coordinates of a vector are just its
    entries at the pivot columns.
    """
    if not n_space.contains(s):
        raise ValidationError("coords_in requires s <= n_space")
    pivots = tuple(next(i for i, x in enumerate(row) if x) for row in n_space.rows)
    return tuple(tuple(r[p] for p in pivots) for r in s.rows)


def from_coords_in(n_space: Subspace, rows: Matrix) -> Subspace:
    """Inverse of coords_in: rows of coefficients against n_space's basis."""
    F = n_space.field
    lifted = tuple(linalg.vecmat(F, r, n_space.rows) for r in rows)
    return Subspace.from_rows(F, n_space.ambient_dim, lifted)


# semilinear maps -------------------------------------------------------


@dataclass(frozen=True)
class SemilinearMap:
    """x -> sigma(x) @ matrix with sigma the Frobenius power a -> a^(p^t).

    ``codomain_is_dual`` marks maps used as dualities V -> V*; the action
    on coordinates is identical, only the interpretation differs.
    """

    field: GF
    matrix: Matrix
    sigma: int = 0
    codomain_is_dual: bool = False

    def __post_init__(self):
        if not linalg.is_invertible(self.field, self.matrix):
            raise ValidationError("semilinear map requires an invertible matrix")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply_vector(self, x: Vector) -> Vector:
        return linalg.vecmat(self.field, linalg.frobenius_vec(self.field, x, self.sigma),
                             self.matrix)

    def apply(self, s: Subspace) -> Subspace:
        if s.ambient_dim != self.dim:
            raise ValidationError("dimension mismatch applying semilinear map")
        return Subspace.from_rows(
            s.field, s.ambient_dim, tuple(self.apply_vector(r) for r in s.rows))

    def inverse(self) -> "SemilinearMap":
        # (sigma, A)^-1 = (sigma^-1, sigma^-1(A^-1)) since
        # x = sigma(y) A  <=>  y = sigma^-1(x A^-1).
        F = self.field
        t_inv = (-self.sigma) % F.e
        inv_m = linalg.inverse(F, self.matrix)
        twisted = tuple(linalg.frobenius_vec(F, row, t_inv) for row in inv_m)
        return SemilinearMap(F, twisted, t_inv, self.codomain_is_dual)


def identity_map(field: GF, n: int) -> SemilinearMap:
    return SemilinearMap(field, linalg.identity(n), 0)


def contragredient(u: SemilinearMap) -> SemilinearMap:
    """The map on dual coordinates with contragredient(u)(S^0) == u(S)^0.

    In coordinates this is the inverse transpose with the same Frobenius
    twist; applying it twice returns the original map.
    """
    inv_t = linalg.transpose(linalg.inverse(u.field, u.matrix))
    return SemilinearMap(u.field, inv_t, u.sigma, u.codomain_is_dual)

"""The Grassmann graph on k-dimensional subspaces of F_q^n.

Vertices are adjacent when their intersection has dimension k-1, and the
graph distance is k - dim(S meet U).  Besides enumeration and distance,
this module materializes the two kinds of maximal cliques (stars over a
(k-1)-space, tops under a (k+1)-space), general parabolic intervals, and
apartments spanned by frames.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .config import caps
from .errors import CapExceededError, InternalInvariantError, ValidationError
from .fields import GF
from .subspaces import (Subspace, from_coords_in, intersect_many,
                        lift_from_quotient, quotient_coords, sum_many)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def iter_rref_bases(field: GF, n: int, k: int):
    """Yield the RREF basis rows of every k-subspace of F_q^n.

    Streams tuples without materializing anything, so callers can count
    large Grassmannians without building an index.
    """
    if k < 0 or k > n:
        return
    if k == 0:
        yield ()
        return
    for pivots in itertools.combinations(range(n), k):
        pivot_set = set(pivots)
        free = [(i, c) for i in range(k) for c in range(pivots[i] + 1, n)
                if c not in pivot_set]
        template = [[0] * n for _ in range(k)]
        for i, p in enumerate(pivots):
            template[i][p] = 1
        if not free:
            yield tuple(tuple(row) for row in template)
            continue
        for values in itertools.product(field.elements(), repeat=len(free)):
            rows = [row[:] for row in template]
            for (i, c), v in zip(free, values):
                rows[i][c] = v
            yield tuple(tuple(row) for row in rows)


def pg_points(field: GF, dim: int) -> list[Subspace]:
    """All points of the projective space of F_q^dim, via normalized
    representatives (first nonzero coordinate 1)."""
    points = []
    for lead in range(dim):
        tail = dim - lead - 1
        for rest in itertools.product(field.elements(), repeat=tail):
            vec = (0,) * lead + (1,) + rest
            points.append(Subspace(field, dim, (vec,)))
    return points


class GrassmannianSpec:
    """An enumerated Grassmannian with a dense, deterministic vertex index.

    Subspaces are ordered lexicographically by their RREF rows; the
    bidirectional index maps them to ids in that order.  Instances are
    immutable after build and safe to share across threads.
    """

    def __init__(self, field: GF, n: int, k: int):
        if n > caps().n_max:
            raise CapExceededError(f"ambient dimension {n} exceeds cap {caps().n_max}")
        if not 0 <= k <= n:
            raise ValidationError(f"need 0 <= k <= n, got k={k}, n={n}")
        expected = gaussian_binomial(n, k, field.q)
        if expected > caps().graph_vertex_max:
            raise CapExceededError(
                f"Grassmannian with {expected} vertices exceeds cap {caps().graph_vertex_max}")
        self.field = field
        self.n = n
        self.k = k
        bases = sorted(iter_rref_bases(field, n, k))
        self.subspaces: tuple[Subspace, ...] = tuple(
            Subspace(field, n, rows) for rows in bases)
        if len(self.subspaces) != expected:
            raise InternalInvariantError(
                f"enumerated {len(self.subspaces)} subspaces, expected {expected}")
        self.index: dict[Subspace, int] = {s: i for i, s in enumerate(self.subspaces)}
        self._dist: list[bytes] | None = None
        self._dist_sets: list[tuple[frozenset[int], ...]] | None = None

    def __len__(self):
        return len(self.subspaces)

    def id_of(self, s: Subspace) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise ValidationError("subspace is not a vertex of this Grassmannian") from None

    def by_id(self, i: int) -> Subspace:
        return self.subspaces[i]

    def distance_matrix(self) -> list[bytes]:
        """Row i is a bytes object with the distance from vertex i to every
        vertex; computed once, algebraically."""
        if self._dist is None:
            F, k = self.field, self.k
            rows_of = [s.rows for s in self.subspaces]
            count = len(self.subspaces)
            mat: list[bytes] = []
            for i in range(count):
                ri = rows_of[i]
                row = bytearray(count)
                for j in range(count):
                    if j < i:
                        row[j] = mat[j][i]
                    elif j > i:
                        row[j] = linalg.rank(F, ri + rows_of[j]) - k
                mat.append(bytes(row))
            self._dist = mat
        return self._dist

    def distance_by_id(self, i: int, j: int) -> int:
        return self.distance_matrix()[i][j]

    def distance_sets(self) -> list[tuple[frozenset[int], ...]]:
        """distance_sets()[i][d] is the frozenset of vertex ids at distance
        d from vertex i; the oracle prunes with these."""
        if self._dist_sets is None:
            dmat = self.distance_matrix()
            diam = min(self.k, self.n - self.k)
            out = []
            for i in range(len(self.subspaces)):
                buckets: list[set[int]] = [set() for _ in range(diam + 1)]
                row = dmat[i]
                for j, d in enumerate(row):
                    buckets[d].add(j)
                out.append(tuple(frozenset(b) for b in buckets))
            self._dist_sets = out
        return self._dist_sets


def distance(s: Subspace, u: Subspace) -> int:
    s._check_compatible(u)
    if s.dim != u.dim:
        raise ValidationError(f"dimension mismatch: {s.dim} vs {u.dim}")
    return linalg.rank(s.field, s.rows + u.rows) - s.dim


def adjacent(s: Subspace, u: Subspace) -> bool:
    return distance(s, u) == 1


def star(m: Subspace) -> frozenset[Subspace]:
    """All (dim m + 1)-subspaces over m; a maximal clique of the graph on
    that level when the level is strictly between 1 and n-1."""
    return frozenset(
        lift_from_quotient(m, pt.rows)
        for pt in pg_points(m.field, m.ambient_dim - m.dim))


def top(n_space: Subspace) -> frozenset[Subspace]:
    """All hyperplanes of n_space, i.e. the top clique under it."""
    F, d = n_space.field, n_space.dim
    out = []
    for pt in pg_points(F, d):
        hyper_rows = linalg.nullspace(F, pt.rows, d)
        out.append(from_coords_in(n_space, hyper_rows))
    return frozenset(out)


def parabolic_interval(m: Subspace, n_space: Subspace, k: int) -> frozenset[Subspace]:
    """All k-subspaces s with m < s < n_space; in natural bijection with the
    Grassmannian of (k - dim m)-subspaces of n_space/m."""
    m._check_compatible(n_space)
    if not n_space.contains(m):
        raise ValidationError("parabolic interval requires m <= n_space")
    if not m.dim < k < n_space.dim:
        raise ValidationError(
            f"need dim m < k < dim n ({m.dim} < {k} < {n_space.dim} fails)")
    F = m.field
    chart = quotient_coords(m, n_space)  # rows spanning n_space/m
    d_quot = n_space.dim - m.dim
    out = []
    for coeff_rows in iter_rref_bases(F, d_quot, k - m.dim):
        rows_q = tuple(linalg.vecmat(F, r, chart) for r in coeff_rows)
        out.append(lift_from_quotient(m, rows_q))
    return frozenset(out)


def apartment_from_frame(points, k: int) -> frozenset[Subspace]:
    """The subspaces spanned by k-subsets of an independent point frame.

    The restriction of the Grassmann graph to the result is a Johnson
    graph on len(points) symbols.
    """
    points = list(points)
    if not points:
        raise ValidationError("empty frame")
    F = points[0].field
    n = points[0].ambient_dim
    if len(points) != n:
        raise ValidationError(f"frame needs {n} points, got {len(points)}")
    for p in points:
        if p.dim != 1:
            raise ValidationError("frame members must be one-dimensional")
    stacked = tuple(p.rows[0] for p in points)
    if linalg.rank(F, stacked) != n:
        raise ValidationError("frame points are linearly dependent")
    if not 1 <= k <= n:
        raise ValidationError(f"bad k={k} for a frame of size {n}")
    return frozenset(
        Subspace.from_rows(F, n, tuple(points[i].rows[0] for i in combo))
        for combo in itertools.combinations(range(n), k))


@dataclass(frozen=True)
class CliqueKind:
    """A maximal clique of the Grassmann graph: a star over its (k-1)-dim
    center, or a top under its (k+1)-dim cover."""

    kind: str  # "star" | "top"
    subspace: Subspace

    def members(self) -> frozenset[Subspace]:
        return star(self.subspace) if self.kind == "star" else top(self.subspace)


def classify_max_cliques_containing(clique) -> list[CliqueKind]:
    """Every maximal clique of the Grassmann graph containing the given
    mutually adjacent subspaces.

    For three or more members not inside a single line the answer is a
    single star or a single top; members of a common line belong to both.
    """
    members = list(clique)
    if len(members) < 2:
        raise ValidationError("need at least two subspaces")
    F = members[0].field
    n = members[0].ambient_dim
    k = members[0].dim
    if not 1 < k < n - 1:
        raise ValidationError("maximal-clique structure requires 1 < k < n-1")
    for a, b in itertools.combinations(members, 2):
        if distance(a, b) != 1:
            raise ValidationError("input subspaces are not pairwise adjacent")
    meet = intersect_many(F, n, members)
    join = sum_many(F, n, members)
    out = []
    if meet.dim == k - 1:
        out.append(CliqueKind("star", meet))
    if join.dim == k + 1:
        out.append(CliqueKind("top", join))
    if not out:
        raise InternalInvariantError("adjacent family contained in no maximal clique")
    return out

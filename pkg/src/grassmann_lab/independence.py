"""m-independent point sets and simplices in small projective spaces.

A point set lives in a coordinate model of its projective space: the
primal space of F_q^d, or the dual space (coordinates in the dual basis).
Quotient geometries used by the embedding constructors are handled by
translating into such a coordinate model first.

A set is m-independent when every m of its points span an m-dimensional
subspace.  An s-simplex is an s-independent set of s+1 points that is
not independent; its canonical form is s basis points together with
their sum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import linalg
from .errors import ValidationError
from .fields import GF
from .grassmannian import pg_points
from .subspaces import Subspace


@dataclass(frozen=True)
class Ambient:
    kind: str  # "primal" | "dual"
    field: GF
    dim: int

    def __post_init__(self):
        if self.kind not in ("primal", "dual"):
            raise ValidationError(f"unknown ambient kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class PointSet:
    """An ordered tuple of distinct projective points.

    Order matters to the embedding constructors (it fixes the ground-set
    labeling), but two point sets compare equal as configurations: same
    ambient, same set of points, any order.
    """

    ambient: Ambient
    points: tuple[Subspace, ...]

    def __post_init__(self):
        seen = set()
        for p in self.points:
            if p.dim != 1 or p.ambient_dim != self.ambient.dim:
                raise ValidationError("points must be lines of the ambient coordinate space")
            if p in seen:
                raise ValidationError("points must be pairwise distinct")
            seen.add(p)

    def __eq__(self, other):
        return (isinstance(other, PointSet) and self.ambient == other.ambient
                and frozenset(self.points) == frozenset(other.points))

    def __hash__(self):
        return hash((self.ambient, frozenset(self.points)))

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def representatives(self) -> linalg.Matrix:
        return tuple(p.rows[0] for p in self.points)


def point_set(field: GF, vectors, kind: str = "primal") -> PointSet:
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise ValidationError("empty point set")
    dim = len(vectors[0])
    return PointSet(Ambient(kind, field, dim),
                    tuple(Subspace.from_rows(field, dim, (v,)) for v in vectors))


def _subset_rank(F: GF, reps: linalg.Matrix, subset) -> int:
    return linalg.rank(F, tuple(reps[i] for i in subset))


def m_dependency_witness(ps: PointSet, m: int) -> tuple[int, ...] | None:
    """Indices of some m-subset spanning fewer than m dimensions, or None
    if the set is m-independent."""
    if m > len(ps):
        raise ValidationError(f"m={m} exceeds point count {len(ps)}")
    F = ps.ambient.field
    reps = ps.representatives()
    for subset in itertools.combinations(range(len(ps)), m):
        if _subset_rank(F, reps, subset) < m:
            return subset
    return None


def is_m_independent(ps: PointSet, m: int) -> bool:
    return m_dependency_witness(ps, m) is None


def is_independent(ps: PointSet) -> bool:
    """Fully independent: the points span len(ps) dimensions."""
    F = ps.ambient.field
    return linalg.rank(F, ps.representatives()) == len(ps)


def simplex_rank(ps: PointSet) -> tuple[bool, int | None]:
    """(True, s) when the set is an s-simplex: s+1 points, s-independent,
    not independent.  Otherwise (False, None)."""
    s = len(ps) - 1
    if s < 1:
        return False, None
    if is_independent(ps):
        return False, None
    if m_dependency_witness(ps, min(s, len(ps))) is not None:
        return False, None
    return True, s


def canonical_simplex(field: GF, dim: int, s: int) -> PointSet:
    """The s-simplex on the first s basis points plus their sum."""
    if s > dim:
        raise ValidationError(f"no {s}-simplex fits in dimension {dim}")
    if s < 2:
        raise ValidationError("a simplex needs s >= 2")
    vectors = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(s)]
    vectors.append(tuple(1 if j < s else 0 for j in range(dim)))
    return point_set(field, vectors)


@dataclass(frozen=True)
class SearchResult:
    status: str  # "found" | "infeasible" | "unknown"
    points: PointSet | None
    nodes: int

    @property
    def found(self) -> bool:
        return self.status == "found"


def search_m_independent(ambient: Ambient, m: int, target_size: int,
                         budget: int = 1_000_000) -> SearchResult:
    """Backtracking search for an m-independent set of the target size.

    Extends greedily by the next projective point avoiding every span of
    m-1 already-chosen points, backtracking when stuck.  The forbidden
    point set is maintained incrementally per depth, so each candidate
    test is a set lookup.  Exhausting the whole tree certifies
    infeasibility; exhausting the node budget does not, and is reported
    as "unknown".
    """
    if target_size < 1:
        raise ValidationError("target size must be positive")
    if m < 1:
        raise ValidationError("m must be positive")
    F, d = ambient.field, ambient.dim
    universe = pg_points(F, d)
    reps = [p.rows[0] for p in universe]
    index_of = {rep: i for i, rep in enumerate(reps)}

    def point_index(v) -> int:
        lead = next(x for x in v if x)
        if lead != 1:
            inv = F.inv(lead)
            v = tuple(F.mul(inv, x) for x in v)
        return index_of[tuple(v)]

    span_cache: dict[tuple[int, ...], frozenset[int]] = {}

    def span_points(indices: tuple[int, ...]) -> frozenset[int]:
        # memoized: the same index subsets recur all over the search tree
        cached = span_cache.get(indices)
        if cached is not None:
            return cached
        out = set()
        rows = [reps[i] for i in indices]
        for coeffs in itertools.product(F.elements(), repeat=len(rows)):
            if not any(coeffs):
                continue
            v = [0] * d
            for c, row in zip(coeffs, rows):
                if c:
                    for j, x in enumerate(row):
                        if x:
                            v[j] = F.add(v[j], F.mul(c, x))
            out.add(point_index(v))
        result = frozenset(out)
        span_cache[indices] = result
        return result

    def forbidden_after(chosen: list[int], forbidden: set[int], cand: int) -> set[int]:
        """Points unusable once cand joins chosen."""
        size = len(chosen) + 1
        if m == 1:
            return forbidden | {cand}
        if size <= m - 2:
            return set(span_points(tuple(sorted(chosen + [cand]))))
        extra: set[int] = set(forbidden)
        for subset in itertools.combinations(chosen, m - 2):
            extra |= span_points(tuple(sorted(subset + (cand,))))
        return extra

    nodes = 0
    chosen: list[int] = []
    forbidden_stack: list[set[int]] = [set()]
    frontier = [0]
    while True:
        if len(chosen) == target_size:
            points = tuple(universe[i] for i in chosen)
            return SearchResult("found", PointSet(ambient, points), nodes)
        start = frontier[-1]
        forbidden = forbidden_stack[-1]
        advanced = False
        for cand in range(start, len(universe)):
            nodes += 1
            if nodes > budget:
                return SearchResult("unknown", None, nodes)
            if cand not in forbidden:
                frontier[-1] = cand + 1
                forbidden_stack.append(forbidden_after(chosen, forbidden, cand))
                chosen.append(cand)
                frontier.append(cand + 1)
                advanced = True
                break
        if advanced:
            continue
        if not chosen:
            return SearchResult("infeasible", None, nodes)
        chosen.pop()
        frontier.pop()
        forbidden_stack.pop()

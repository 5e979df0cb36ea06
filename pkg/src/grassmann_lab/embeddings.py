"""Johnson-graph images in Grassmann graphs: construction, verification,
and classification.

Two constructions generate every image: sums of m-element subsets of a
2m-independent family of (k-m+1)-spaces over a fixed (k-m)-space, and the
annihilator-dual intersections of (k+m-1)-spaces under a fixed
(k+m)-space.  The classifier inverts either construction by descending
through the star cliques of the image, recovers the generating family,
and certifies the answer by rebuilding the image through the public
constructor and comparing sets exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import linalg
from .errors import (ClassificationError, InternalInvariantError, NotIsometricError,
                     ValidationError)
from .fields import GF
from .grassmannian import CliqueKind, classify_max_cliques_containing, distance
from .independence import Ambient, PointSet, m_dependency_witness
from .johnson import johnson_distance, johnson_vertices, vertex_from_indices
from .subspaces import (Subspace, annihilator, intersect_many, quotient_coords,
                        sum_many)


class EmbeddingInstance:
    """A total map from the vertices of J(l, m) into k-subspaces of F_q^n.

    Vertices are bitmasks over the ground set {0..l-1}.  Instances are
    immutable by convention; all verification is pairwise-exhaustive.
    """

    def __init__(self, l: int, m: int, assignment: dict[int, Subspace]):
        if not 0 < m < l:
            raise ValidationError(f"need 0 < m < l, got l={l}, m={m}")
        vertices = johnson_vertices(l, m)
        missing = [v for v in vertices if v not in assignment]
        if missing:
            raise ValidationError(f"assignment misses vertex {missing[0]:#x}")
        some = assignment[vertices[0]]
        self.field: GF = some.field
        self.n: int = some.ambient_dim
        self.k: int = some.dim
        for v in vertices:
            s = assignment[v]
            if s.field != self.field or s.ambient_dim != self.n:
                raise ValidationError("mixed ambients in assignment")
            if s.dim != self.k:
                raise ValidationError(f"vertex {v:#x} maps to dimension {s.dim}, not {self.k}")
        self.l = l
        self.m = m
        self.assignment = {v: assignment[v] for v in vertices}
        self.image: frozenset[Subspace] = frozenset(self.assignment.values())
        if len(self.image) != len(vertices):
            raise ValidationError("assignment is not injective")

    @property
    def m_prime(self) -> int:
        return min(self.m, self.l - self.m)

    def vertices(self) -> list[int]:
        return list(self.assignment)

    def normalized(self) -> "EmbeddingInstance":
        """Re-index through complementation so that m <= l - m."""
        if self.m <= self.l - self.m:
            return self
        full = (1 << self.l) - 1
        flipped = {full ^ v: s for v, s in self.assignment.items()}
        return EmbeddingInstance(self.l, self.l - self.m, flipped)


@dataclass(frozen=True)
class IsometryDefect:
    vertex_a: int
    vertex_b: int
    expected: int
    actual: int


def verify_assignment(m: int, assignment: dict[int, Subspace]) -> IsometryDefect | None:
    """Pairwise isometry check on a raw vertex-to-subspace mapping; accepts
    non-injective maps (a collapse shows up as a distance defect)."""
    vs = list(assignment)
    for i, a in enumerate(vs):
        sa = assignment[a]
        for b in vs[i + 1:]:
            expected = johnson_distance(a, b, m)
            actual = distance(sa, assignment[b])
            if expected != actual:
                return IsometryDefect(a, b, expected, actual)
    return None


def verify_isometric(inst: EmbeddingInstance) -> IsometryDefect | None:
    """Check every vertex pair; None means the map is isometric."""
    return verify_assignment(inst.m, inst.assignment)


def _quotient_point_set(m_space: Subspace, generators) -> PointSet:
    F = m_space.field
    dim = m_space.ambient_dim - m_space.dim
    points = []
    for g in generators:
        rows = quotient_coords(m_space, g)
        if len(rows) != 1:
            raise ValidationError("generator is not one-dimensional over the base space")
        points.append(Subspace(F, dim, rows))
    return PointSet(Ambient("primal", F, dim), tuple(points))


def build_sum_construction(m_space: Subspace, generators, k: int) -> EmbeddingInstance:
    """Map each m-subset {i1..im} to generators[i1] + ... + generators[im].

    generators must be (k-m+1)-spaces over m_space whose images in the
    quotient are 2m-independent, with m = k - dim(m_space) > 1 and
    m + k <= n.  The result is isometry-verified before it is returned.
    """
    F = m_space.field
    n = m_space.ambient_dim
    m = k - m_space.dim
    generators = tuple(generators)
    l = len(generators)
    if m < 2:
        raise ValidationError(f"sum construction needs k - dim(base) >= 2, got {m}")
    if m + k > n:
        raise ValidationError(f"sum construction needs m + k <= n ({m}+{k} > {n})")
    if l <= m:
        raise ValidationError(f"need more than m={m} generators, got {l}")
    for g in generators:
        if g.dim != m_space.dim + 1 or not g.contains(m_space):
            raise ValidationError(
                "generators must be one-dimensional extensions of the base space")
    points = _quotient_point_set(m_space, generators)
    need = min(2 * m, l)
    witness = m_dependency_witness(points, need)
    if witness is not None:
        raise ValidationError(
            f"generators are not {need}-independent over the base; "
            f"dependent subset at indices {witness}")
    assignment = {}
    for combo in itertools.combinations(range(l), m):
        rows = tuple(itertools.chain.from_iterable(generators[i].rows for i in combo))
        assignment[vertex_from_indices(combo)] = Subspace.from_rows(F, n, rows)
    inst = EmbeddingInstance(l, m, assignment)
    defect = verify_isometric(inst)
    if defect is not None:
        raise NotIsometricError(defect)
    return inst


def build_dual_construction(n_space: Subspace, generators, k: int) -> EmbeddingInstance:
    """Map each m-subset {i1..im} to generators[i1] & ... & generators[im].

    generators must be hyperplanes of n_space (dimension k+m-1) forming a
    2m-independent family of the dual space of n_space, with
    m = dim(n_space) - k satisfying 1 < m <= k.  Computed by annihilator
    transport of the sum construction, then isometry-verified.
    """
    F = n_space.field
    n = n_space.ambient_dim
    m = n_space.dim - k
    generators = tuple(generators)
    if m < 2:
        raise ValidationError(f"dual construction needs dim(cover) - k >= 2, got {m}")
    if m > k:
        raise ValidationError(f"dual construction needs m <= k ({m} > {k})")
    for g in generators:
        if g.dim != n_space.dim - 1 or not n_space.contains(g):
            raise ValidationError("generators must be hyperplanes of the cover space")
    dual_base = annihilator(n_space)
    dual_generators = tuple(annihilator(g) for g in generators)
    primal = build_sum_construction(dual_base, dual_generators, n - k)
    assignment = {v: annihilator(s) for v, s in primal.assignment.items()}
    inst = EmbeddingInstance(primal.l, m, assignment)
    defect = verify_isometric(inst)
    if defect is not None:
        raise NotIsometricError(defect)
    return inst


# clique typing and descent ---------------------------------------------


def _type_clique(members) -> CliqueKind:
    kinds = classify_max_cliques_containing(members)
    if len(kinds) != 1:
        raise ClassificationError(
            "a maximal clique of the image lies in a line of the Grassmann graph; "
            "the input cannot be an isometric Johnson image")
    return kinds[0]


def clique_types(inst: EmbeddingInstance) -> tuple[dict[frozenset[Subspace], CliqueKind], str]:
    """Type every maximal clique of the image graph and report the global
    parity: case "A" when Johnson stars land in Grassmann stars, case "B"
    when they land in tops.

    The instance is verified and complement-normalized first; requires
    1 < m < l-1 so that both clique families have at least three members.
    """
    defect = verify_isometric(inst)
    if defect is not None:
        raise NotIsometricError(defect)
    inst = inst.normalized()
    l, m = inst.l, inst.m
    if not 1 < m < l - 1:
        raise ValidationError(f"clique typing needs 1 < m < l-1, got l={l}, m={m}")
    assignment: dict[frozenset[Subspace], CliqueKind] = {}
    star_kinds = set()
    top_kinds = set()
    for core in itertools.combinations(range(l), m - 1):
        rest = [i for i in range(l) if i not in core]
        members = frozenset(
            inst.assignment[vertex_from_indices(core + (i,))] for i in rest)
        kind = _type_clique(members)
        assignment[members] = kind
        star_kinds.add(kind.kind)
    for cover in itertools.combinations(range(l), m + 1):
        members = frozenset(
            inst.assignment[vertex_from_indices(tuple(c for c in cover if c != i))]
            for i in cover)
        kind = _type_clique(members)
        assignment[members] = kind
        top_kinds.add(kind.kind)
    if len(star_kinds) != 1 or len(top_kinds) != 1 or star_kinds == top_kinds:
        raise ClassificationError("inconsistent clique typing across the image")
    return assignment, ("A" if star_kinds == {"star"} else "B")


def descend(inst: EmbeddingInstance) -> EmbeddingInstance:
    """One descent step: send each (m-1)-subset to the common intersection
    of its star's images, yielding an isometric embedding of J(l, m-1)
    one Grassmann level down.  Requires case A at the current level."""
    l, m, k = inst.l, inst.m, inst.k
    if m < 2:
        raise ValidationError("cannot descend below m = 1")
    assignment = {}
    for core in itertools.combinations(range(l), m - 1):
        rest = [i for i in range(l) if i not in core]
        members = [inst.assignment[vertex_from_indices(core + (i,))] for i in rest]
        meet = intersect_many(inst.field, inst.n, members)
        if meet.dim != k - 1:
            raise ClassificationError(
                f"star over {core} does not share a (k-1)-space; "
                "descent requires case A and an isometric input")
        assignment[vertex_from_indices(core)] = meet
    out = EmbeddingInstance(l, m - 1, assignment)
    defect = verify_isometric(out)
    if defect is not None:
        raise NotIsometricError(defect)
    return out


# classification ---------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """The recovered description of a Johnson image.

    case "star": generated by star_points, (k-m+1)-spaces over m_space.
    case "top": generated by top_points, (k+m-1)-spaces under n_space.
    case "parabolic-apartment" (exactly when l == 2m): both descriptions
    hold and the image is an apartment of the interval [m_space, n_space].

    m_space and n_space are always the meet and join of the whole image.
    descent_trace[i] collects the recovered level sets, ending at the
    image itself.
    """

    case: str
    l: int
    m: int
    k: int
    n: int
    field: GF
    m_space: Subspace
    n_space: Subspace
    star_points: tuple[Subspace, ...] | None
    top_points: tuple[Subspace, ...] | None
    is_full_apartment: bool
    descent_trace: tuple[frozenset[Subspace], ...]
    image: frozenset[Subspace]

    def star_point_set(self) -> PointSet:
        if self.star_points is None:
            raise ValidationError("no primal generators on a top-type classification")
        return _quotient_point_set(self.m_space, self.star_points)

    def top_point_set(self) -> PointSet:
        """The dual generators as points over the annihilator of n_space."""
        if self.top_points is None:
            raise ValidationError("no dual generators on a star-type classification")
        base = annihilator(self.n_space)
        points = _quotient_point_set(base, tuple(annihilator(y) for y in self.top_points))
        return PointSet(Ambient("dual", points.ambient.field, points.ambient.dim),
                        points.points)


def rebuild(cls: Classification) -> frozenset[Subspace]:
    """Reconstruct the image from the recovered generators."""
    if cls.star_points is not None:
        return frozenset(
            sum_many(cls.field, cls.n, (cls.star_points[i] for i in combo))
            for combo in itertools.combinations(range(cls.l), cls.m))
    return frozenset(
        intersect_many(cls.field, cls.n, (cls.top_points[i] for i in combo))
        for combo in itertools.combinations(range(cls.l), cls.m))


def _check_classification_params(l: int, m: int, k: int, n: int):
    if n < 4 or l < 4:
        raise ValidationError(f"classification needs n >= 4 and l >= 4, got n={n}, l={l}")
    if not 1 < k < n - 1:
        raise ValidationError(f"classification needs 1 < k < n-1, got k={k}, n={n}")
    if not 1 < m < l - 1:
        raise ValidationError(f"classification needs 1 < m < l-1, got l={l}, m={m}")
    if min(m, l - m) > min(k, n - k):
        raise ValidationError(
            f"diameter obstruction: min(m, l-m)={min(m, l-m)} exceeds "
            f"min(k, n-k)={min(k, n - k)}")


def classify(obj) -> Classification:
    """Classify an embedding instance or a bare image set.

    Labeled instances are isometry-verified and complement-normalized
    first.  Bare sets get their Johnson parameters inferred from the
    maximal-clique structure of the induced graph.  Either way the
    returned description is certified by an exact rebuild of the image.
    """
    if isinstance(obj, EmbeddingInstance):
        defect = verify_isometric(obj)
        if defect is not None:
            raise NotIsometricError(defect)
        norm = obj.normalized()
        _check_classification_params(norm.l, norm.m, norm.k, norm.n)
        _, case = clique_types(norm)
        if case == "A":
            ordered = _labeled_generators_primal(norm)
            return _assemble_primal(norm.image, ordered, norm.l, norm.m, norm.k)
        dual = EmbeddingInstance(
            norm.l, norm.m, {v: annihilator(s) for v, s in norm.assignment.items()})
        ordered = _labeled_generators_primal(dual)
        dual_cls = _assemble_primal(dual.image, ordered, dual.l, dual.m, dual.k)
        return _transport_to_top(dual_cls)

    image = frozenset(obj)
    if not image:
        raise ValidationError("empty image")
    some = next(iter(image))
    field, n, k = some.field, some.ambient_dim, some.dim
    for s in image:
        if s.field != field or s.ambient_dim != n or s.dim != k:
            raise ValidationError("image members live in different Grassmannians")
    return _classify_bare(image, field, n, k)


# -- labeled path --------------------------------------------------------


def _labeled_generators_primal(inst: EmbeddingInstance) -> tuple[Subspace, ...]:
    """Ground-indexed generators: T_j is the meet of every image through j."""
    out = []
    for j in range(inst.l):
        members = [s for v, s in inst.assignment.items() if v >> j & 1]
        meet = intersect_many(inst.field, inst.n, members)
        if meet.dim != inst.k - inst.m + 1:
            raise ClassificationError(
                f"generator recovery failed at ground index {j} "
                f"(dimension {meet.dim}, expected {inst.k - inst.m + 1})")
        out.append(meet)
    return tuple(out)


# -- bare path -----------------------------------------------------------


def _maximal_cliques(items: list, adjacent_fn) -> list[frozenset]:
    """Bron-Kerbosch with pivoting over an explicit adjacency predicate."""
    n = len(items)
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if adjacent_fn(items[i], items[j]):
                adj[i].add(j)
                adj[j].add(i)
    cliques: list[frozenset] = []

    def bk(r: set[int], p: set[int], x: set[int]):
        if not p and not x:
            cliques.append(frozenset(items[i] for i in r))
            return
        pivot = max(p | x, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            bk(r | {v}, p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    bk(set(), set(range(n)), set())
    return cliques


def _infer_parameters(image: frozenset[Subspace], cliques: list[frozenset]) -> tuple[int, int]:
    sizes = sorted({len(c) for c in cliques})
    if len(sizes) == 1:
        if sizes[0] == len(image):
            raise ClassificationError(
                "induced graph is complete; Johnson parameters with 1 < m < l-1 "
                "cannot produce it")
        m = sizes[0] - 1
        l = 2 * m
    elif len(sizes) == 2:
        m = sizes[0] - 1
        l = sizes[0] + sizes[1] - 2
    else:
        raise ClassificationError(f"unexpected clique sizes {sizes} in the induced graph")
    if not 1 < m < l - 1:
        raise ClassificationError(f"inferred parameters l={l}, m={m} are out of range")
    if math.comb(l, m) != len(image):
        raise ClassificationError(
            f"image has {len(image)} members but J({l},{m}) needs {math.comb(l, m)}")
    return l, m


def _classify_bare(image: frozenset[Subspace], field: GF, n: int, k: int) -> Classification:
    cliques = _maximal_cliques(sorted(image, key=lambda s: s.rows),
                               lambda a, b: distance(a, b) == 1)
    l, m = _infer_parameters(image, cliques)
    _check_classification_params(l, m, k, n)
    typed = [(members, _type_clique(members)) for members in cliques]
    big = max(len(c) for c, _ in typed)
    big_kinds = {kind.kind for c, kind in typed if len(c) == big}
    small_kinds = {kind.kind for c, kind in typed if len(c) < big}
    if l != 2 * m:
        if len(big_kinds) != 1 or len(small_kinds) > 1 or small_kinds == big_kinds:
            raise ClassificationError("inconsistent clique typing across the image")
        case = "A" if big_kinds == {"star"} else "B"
    else:
        if big_kinds != {"star", "top"}:
            raise ClassificationError("an apartment-like image must carry both clique kinds")
        case = "A"
    if case == "B":
        dual_image = frozenset(annihilator(s) for s in image)
        dual_cls = _classify_bare(dual_image, field, n, n - k)
        if dual_cls.case == "top":
            raise InternalInvariantError("dual image classified as top-type")
        return _transport_to_top(dual_cls)

    generators = _descend_bare(image, field, n, k, l, m, typed)
    return _assemble_primal(image, generators, l, m, k)


def _descend_bare(image, field, n, k, l, m, typed_cliques) -> tuple[Subspace, ...]:
    """Walk star cliques down to the generator level, label-free."""
    current = image
    cur_k = k
    level = m
    typed = typed_cliques
    while level > 1:
        star_meets = {kind.subspace for _, kind in typed if kind.kind == "star"}
        if len(star_meets) != math.comb(l, level - 1):
            raise ClassificationError(
                f"level {level} has {len(star_meets)} star cliques, "
                f"expected {math.comb(l, level - 1)}")
        current = frozenset(star_meets)
        cur_k -= 1
        level -= 1
        if level > 1:
            cliques = _maximal_cliques(sorted(current, key=lambda s: s.rows),
                                       lambda a, b: distance(a, b) == 1)
            typed = [(members, _type_clique(members)) for members in cliques]
    if len(current) != l:
        raise ClassificationError(f"recovered {len(current)} generators, expected {l}")
    return tuple(sorted(current, key=lambda s: s.rows))


# -- shared tail ---------------------------------------------------------


def _assemble_primal(image, generators: tuple[Subspace, ...], l: int, m: int,
                     k: int) -> Classification:
    field = generators[0].field
    n = generators[0].ambient_dim
    m_space = intersect_many(field, n, generators)
    if m_space.dim != k - m:
        raise ClassificationError(
            f"generators share a {m_space.dim}-space, expected {k - m}")
    n_space = sum_many(field, n, generators)
    if not k + m <= n_space.dim <= k - m + l:
        raise ClassificationError(
            f"span of generators has dimension {n_space.dim}, "
            f"outside [{k + m}, {k - m + l}]")
    verified = build_sum_construction(m_space, generators, k)
    if verified.image != frozenset(image):
        raise ClassificationError("rebuilt image differs from the input image")
    trace = tuple(
        frozenset(sum_many(field, n, (generators[i] for i in combo))
                  for combo in itertools.combinations(range(l), level))
        for level in range(1, m + 1))
    if l == 2 * m:
        if n_space.dim != k + m:
            raise InternalInvariantError("apartment span has the wrong dimension")
        top_points = tuple(
            sum_many(field, n, (generators[i] for i in range(l) if i != j))
            for j in range(l))
        case = "parabolic-apartment"
    else:
        top_points = None
        case = "star"
    full = (l == n and m_space.dim == 0 and n_space.dim == n)
    return Classification(case, l, m, k, n, field, m_space, n_space,
                          generators, top_points, full, trace, frozenset(image))


def _transport_to_top(dual_cls: Classification) -> Classification:
    """Carry a star-type description of the annihilated image back to the
    primal side, where it becomes a top-type description."""
    field, n = dual_cls.field, dual_cls.n
    k = n - dual_cls.k
    l, m = dual_cls.l, dual_cls.m
    n_space = annihilator(dual_cls.m_space)
    m_space = annihilator(dual_cls.n_space)
    top_points = tuple(annihilator(t) for t in dual_cls.star_points)
    verified = build_dual_construction(n_space, top_points, k)
    image = frozenset(annihilator(s) for s in dual_cls.image)
    if verified.image != image:
        raise ClassificationError("rebuilt dual image differs from the input image")
    star_points = (tuple(annihilator(t) for t in dual_cls.top_points)
                   if dual_cls.top_points is not None else None)
    trace = tuple(frozenset(annihilator(s) for s in level)
                  for level in dual_cls.descent_trace)
    case = "parabolic-apartment" if l == 2 * m else "top"
    full = (l == n and m_space.dim == 0 and n_space.dim == n)
    return Classification(case, l, m, k, n, field, m_space, n_space,
                          star_points, top_points, full, trace, image)


# additional predicates --------------------------------------------------


def clique_independence(image) -> bool:
    """Whether every maximal clique of the induced graph is an independent
    family: star members must be independent points of the quotient over
    the clique's center, top members independent hyperplanes of its cover."""
    members_list = sorted(frozenset(image), key=lambda s: s.rows)
    if not members_list:
        raise ValidationError("empty image")
    field = members_list[0].field
    n = members_list[0].ambient_dim
    cliques = _maximal_cliques(members_list, lambda a, b: distance(a, b) == 1)
    for clique in cliques:
        if len(clique) < 2:
            return False
        kinds = classify_max_cliques_containing(clique)
        ok = False
        for kind in kinds:
            if kind.kind == "star":
                pts = tuple(quotient_coords(kind.subspace, s)[0] for s in clique)
                ok = linalg.rank(field, pts) == len(clique)
            else:
                meet = intersect_many(field, n, clique)
                ok = meet.dim == kind.subspace.dim - len(clique)
            if ok:
                break
        if not ok:
            return False
    return True

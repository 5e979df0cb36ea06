import itertools

import networkx as nx
import pytest

from grassmann_lab.errors import CapExceededError, ValidationError
from grassmann_lab.fields import GF
from grassmann_lab.grassmannian import (GrassmannianSpec, adjacent, apartment_from_frame,
                                        classify_max_cliques_containing, distance,
                                        iter_rref_bases, parabolic_interval, pg_points,
                                        star, top)
from grassmann_lab.johnson import johnson_distance, johnson_vertices
from grassmann_lab.subspaces import (Subspace, annihilator, intersect_subspaces,
                                     sum_subspaces)

F2 = GF.get(2)
F3 = GF.get(3)


def unit(i, n):
    return tuple(1 if j == i else 0 for j in range(n))


def q_binomial(n, k, q):
    """Independent closed-form oracle for the subspace count."""
    if not 0 <= k <= n:
        return 0
    value = 1
    for i in range(k):
        value = value * (q ** (n - i) - 1) // (q ** (i + 1) - 1)
    return value


def to_graph(spec):
    g = nx.Graph()
    g.add_nodes_from(range(len(spec)))
    dmat = spec.distance_matrix()
    for i in range(len(spec)):
        for j in range(i + 1, len(spec)):
            if dmat[i][j] == 1:
                g.add_edge(i, j)
    return g


def test_enumeration_counts():
    assert len(GrassmannianSpec(F2, 4, 2)) == 35
    assert len(GrassmannianSpec(F3, 3, 1)) == 13
    assert len(GrassmannianSpec(F2, 4, 4)) == 1
    assert len(GrassmannianSpec(F2, 4, 0)) == 1
    # one-liner oracle: (2^4-1)(2^4-2)/((2^2-1)(2^2-2))
    assert (2 ** 4 - 1) * (2 ** 4 - 2) // ((2 ** 2 - 1) * (2 ** 2 - 2)) == 35
    assert (3 ** 3 - 1) // (3 - 1) == 13


@pytest.mark.parametrize("n,k,q", [(4, 2, 2), (5, 2, 2), (4, 2, 3), (5, 3, 2), (4, 1, 4)])
def test_enumeration_matches_oracle_and_is_duplicate_free(n, k, q):
    p, e = (2, 2) if q == 4 else (q, 1)
    field = GF.get(p, e)
    bases = list(iter_rref_bases(field, n, k))
    assert len(bases) == len(set(bases)) == q_binomial(n, k, q)
    spec = GrassmannianSpec(field, n, k)
    assert len(spec) == q_binomial(n, k, q)
    assert [spec.id_of(s) for s in spec.subspaces] == list(range(len(spec)))
    # deterministic order: sorted by canonical rows
    assert list(spec.subspaces) == sorted(spec.subspaces, key=lambda s: s.rows)


def test_distance_and_adjacency_basic():
    s = Subspace.from_rows(F2, 4, (unit(0, 4), unit(1, 4)))
    u = Subspace.from_rows(F2, 4, (unit(2, 4), unit(3, 4)))
    w = Subspace.from_rows(F2, 4, (unit(1, 4), unit(2, 4)))
    assert distance(s, s) == 0 and not adjacent(s, s)
    assert distance(s, u) == 2 and not adjacent(s, u)
    assert distance(s, w) == 1 and adjacent(s, w)
    with pytest.raises(ValidationError):
        distance(s, Subspace.line(F2, unit(0, 4)))


@pytest.mark.parametrize("n,k,q", [(4, 2, 2), (5, 2, 2), (4, 2, 3)])
def test_distance_formula_equals_bfs(n, k, q):
    spec = GrassmannianSpec(GF.get(q), n, k)
    g = to_graph(spec)
    dmat = spec.distance_matrix()
    for src, lengths in nx.all_pairs_shortest_path_length(g):
        for dst in range(len(spec)):
            assert lengths[dst] == dmat[src][dst]


def test_star_and_top_sizes():
    m = Subspace.line(F2, unit(0, 4))
    st = star(m)
    assert len(st) == (2 ** 3 - 1) // (2 - 1) == 7
    assert all(s.dim == 2 and s.contains(m) for s in st)
    n_space = Subspace.from_rows(F2, 4, (unit(0, 4), unit(1, 4), unit(2, 4)))
    tp = top(n_space)
    assert len(tp) == (2 ** 3 - 1) // (2 - 1) == 7
    assert all(s.dim == 2 and n_space.contains(s) for s in tp)
    # a star and a top through m < n_space meet in a line of q+1 elements
    line = st & tp
    assert len(line) == 3
    assert line == parabolic_interval(m, n_space, 2)


def test_parabolic_interval():
    zero = Subspace.zero(F2, 4)
    full = Subspace.full(F2, 4)
    everything = parabolic_interval(zero, full, 2)
    assert len(everything) == 35
    m = Subspace.line(F2, unit(0, 5))
    n_space = Subspace.from_rows(F2, 5, (unit(0, 5), unit(1, 5), unit(2, 5), unit(3, 5)))
    interval = parabolic_interval(m, n_space, 2)
    assert len(interval) == q_binomial(3, 1, 2) == 7
    assert all(s.contains(m) and n_space.contains(s) for s in interval)
    with pytest.raises(ValidationError):
        parabolic_interval(m, n_space, 1)


def test_apartment_from_frame():
    frame = [Subspace.line(F2, unit(i, 4)) for i in range(4)]
    apt = apartment_from_frame(frame, 2)
    assert len(apt) == 6
    points = apartment_from_frame(frame, 1)
    assert points == frozenset(frame)
    with pytest.raises(ValidationError):
        apartment_from_frame(frame[:3] + [Subspace.line(F2, (1, 1, 0, 0))], 2)


def test_apartment_distances_match_johnson():
    frame = [Subspace.line(F2, unit(i, 4)) for i in range(4)]
    by_mask = {}
    for combo in itertools.combinations(range(4), 2):
        rows = tuple(unit(i, 4) for i in combo)
        mask = sum(1 << i for i in combo)
        by_mask[mask] = Subspace.from_rows(F2, 4, rows)
    masks = list(by_mask)
    assert len(masks) == 6
    for a, b in itertools.combinations(masks, 2):
        assert distance(by_mask[a], by_mask[b]) == johnson_distance(a, b, 2)


def test_classify_max_cliques():
    m = Subspace.line(F2, unit(0, 4))
    through_m = sorted(star(m), key=lambda s: s.rows)
    # three members of the star spanning more than k+1 dimensions
    triple = [through_m[0], through_m[1], through_m[4]]
    assert sum_subspaces(sum_subspaces(triple[0], triple[1]), triple[2]).dim > 3
    kinds = classify_max_cliques_containing(triple)
    assert len(kinds) == 1 and kinds[0].kind == "star" and kinds[0].subspace == m
    # three members of a top with pairwise distinct intersections
    n_space = Subspace.from_rows(F2, 4, (unit(0, 4), unit(1, 4), unit(2, 4)))
    in_top = sorted(top(n_space), key=lambda s: s.rows)
    for triple in itertools.combinations(in_top, 3):
        meet = intersect_subspaces(intersect_subspaces(triple[0], triple[1]), triple[2])
        if meet.dim < 1:
            kinds = classify_max_cliques_containing(triple)
            assert len(kinds) == 1 and kinds[0].kind == "top"
            assert kinds[0].subspace == n_space
            break
    else:
        pytest.fail("no generic triple found in the top")
    # a line yields both the star and the top
    line = sorted(parabolic_interval(m, n_space, 2), key=lambda s: s.rows)
    kinds = classify_max_cliques_containing(line)
    assert {k.kind for k in kinds} == {"star", "top"}
    assert {k.subspace for k in kinds} == {m, n_space}
    with pytest.raises(ValidationError):
        classify_max_cliques_containing([through_m[0],
                                         annihilator(annihilator(through_m[0]))])
    far = Subspace.from_rows(F2, 4, (unit(2, 4), unit(3, 4)))
    with pytest.raises(ValidationError):
        classify_max_cliques_containing([Subspace.from_rows(F2, 4, (unit(0, 4), unit(1, 4))),
                                         far, through_m[0]])


def test_maximal_cliques_are_exactly_stars_and_tops():
    spec = GrassmannianSpec(F2, 4, 2)
    g = to_graph(spec)
    found = {frozenset(c) for c in nx.find_cliques(g)}
    named = set()
    for m_rows in iter_rref_bases(F2, 4, 1):
        members = star(Subspace(F2, 4, m_rows))
        named.add(frozenset(spec.id_of(s) for s in members))
    for n_rows in iter_rref_bases(F2, 4, 3):
        members = top(Subspace(F2, 4, n_rows))
        named.add(frozenset(spec.id_of(s) for s in members))
    assert found == named
    assert len(named) == 15 + 15


def test_annihilator_is_graph_isomorphism_swapping_clique_kinds():
    spec = GrassmannianSpec(F2, 4, 2)
    subs = spec.subspaces
    # bijective on the 35 vertices, adjacency preserved on all 595 pairs
    images = {annihilator(s) for s in subs}
    assert len(images) == 35 and all(s.dim == 2 for s in images)
    for s, u in itertools.combinations(subs, 2):
        assert adjacent(s, u) == adjacent(annihilator(s), annihilator(u))
    for m_rows in iter_rref_bases(F2, 4, 1):
        m = Subspace(F2, 4, m_rows)
        assert {annihilator(s) for s in star(m)} == top(annihilator(m))
    for n_rows in iter_rref_bases(F2, 4, 3):
        n_space = Subspace(F2, 4, n_rows)
        assert {annihilator(s) for s in top(n_space)} == star(annihilator(n_space))


def test_apartment_graph_is_johnson():
    frame = [Subspace.line(F2, unit(i, 5)) for i in range(5)]
    apt = sorted(apartment_from_frame(frame, 2), key=lambda s: s.rows)
    g = nx.Graph()
    g.add_nodes_from(range(len(apt)))
    for i, j in itertools.combinations(range(len(apt)), 2):
        if adjacent(apt[i], apt[j]):
            g.add_edge(i, j)
    vertices = johnson_vertices(5, 2)
    jg = nx.Graph()
    jg.add_nodes_from(vertices)
    for a, b in itertools.combinations(vertices, 2):
        if johnson_distance(a, b, 2) == 1:
            jg.add_edge(a, b)
    assert nx.is_isomorphic(g, jg)


def test_vertex_cap_enforced():
    with pytest.raises(CapExceededError):
        GrassmannianSpec(GF.get(2, 2), 8, 4)


def test_pg_points_count():
    assert len(pg_points(F2, 4)) == 15
    assert len(pg_points(F3, 3)) == 13
    assert len({p for p in pg_points(GF.get(2, 2), 2)}) == 5

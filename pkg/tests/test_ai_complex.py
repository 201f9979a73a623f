from itertools import product

from maghom import complete_graph, cycle_graph, mh_ab, path_graph
from maghom.ai_complex import (
    build_pair,
    enumerate_paths,
    is_closed_under_faces,
    reduced_homology,
    relative_homology,
    simplex_to_sequence,
    subsequence_length,
    verify_correspondence,
)


def brute_force_paths(g, a, b, length):
    """Path oracle: filter the full product space."""
    out = []
    for mid in product(g.vertices, repeat=length - 1):
        seq = (a,) + mid + (b,)
        if all(g.d(seq[i], seq[i + 1]) == 1 for i in range(length)):
            out.append(seq)
    return sorted(out)


def test_enumerate_paths_k2():
    assert enumerate_paths(complete_graph(2), 1, 2, 1) == ((1, 2),)


def test_enumerate_paths_c4_closed(c4):
    paths = enumerate_paths(c4, 1, 1, 4)
    assert len(paths) == 8  # one per maximal face of the octahedron


def test_enumerate_paths_match_brute_force(g1, g2):
    for g, a, b, ell in ((g1, 1, 1, 3), (g1, 2, 4, 3), (g2, 1, 2, 4)):
        assert list(enumerate_paths(g, a, b, ell)) == brute_force_paths(g, a, b, ell)


def test_c4_pair_worked_example(c4):
    pair = build_pair(c4, 1, 1, 4)
    assert pair.f_vector() == (6, 12, 8)
    expected_sub = {
        ((2, 1),), ((1, 2),), ((2, 3),), ((4, 3),), ((4, 1),),
        ((1, 2), (2, 3)),
        ((2, 1), (2, 3)),
        ((2, 1), (1, 2)),
        ((1, 2), (4, 3)),
        ((4, 1), (1, 2)),
        ((4, 1), (4, 3)),
    }
    assert pair.subcomplex == expected_sub


def test_pairs_closed_under_faces(g1, c4):
    for g, a, b, ell in ((c4, 1, 1, 4), (g1, 1, 4, 3), (g1, 2, 2, 4)):
        pair = build_pair(g, a, b, ell)
        assert is_closed_under_faces(pair.complex)
        assert is_closed_under_faces(pair.subcomplex)
        assert pair.subcomplex <= pair.complex


def test_complete_graph_maximal_boundaries_inside_subcomplex():
    for n in (4, 5):
        g = complete_graph(n)
        for a in (1,):
            for b in (1, 2):
                pair = build_pair(g, a, b, 3)
                top = [s for s in pair.complex if len(s) == 2]
                assert top, "expected maximal faces"
                for s in top:
                    for i in range(2):
                        assert (s[:i] + s[i + 1 :]) in pair.subcomplex


def test_membership_against_subset_oracle():
    g = path_graph(3)
    a, b, ell = 1, 2, 3
    paths = brute_force_paths(g, a, b, ell)
    universe = [(v, pos) for pos in range(1, ell) for v in g.vertices]
    oracle = set()
    for mask_size in range(1, ell):
        def subsets(pool, size, start=0):
            if size == 0:
                yield ()
                return
            for i in range(start, len(pool)):
                for rest in subsets(pool, size - 1, i + 1):
                    yield (pool[i],) + rest
        for cand in subsets(universe, mask_size):
            positions = [p for _, p in cand]
            if len(set(positions)) != len(positions):
                continue
            cand = tuple(sorted(cand, key=lambda vp: vp[1]))
            if any(all(path[p] == v for v, p in cand) for path in paths):
                oracle.add(cand)
    pair = build_pair(g, a, b, ell)
    assert pair.complex == oracle


def test_positions_are_cumulative_outside_subcomplex(g1, c4):
    for g, a, b, ell in ((c4, 1, 1, 4), (g1, 1, 1, 3), (g1, 2, 5, 4)):
        pair = build_pair(g, a, b, ell)
        for s in pair.complex - pair.subcomplex:
            seq = simplex_to_sequence(a, b, s)
            assert subsequence_length(g, a, b, s) == ell
            pos = 0
            for t in range(1, len(seq) - 1):
                pos += g.d(seq[t - 1], seq[t])
                assert s[t - 1] == (seq[t], pos)


def test_lower_length_complex_sits_inside_subcomplex(g1):
    # needs every edge on a triangle, which holds in this fixture
    for a, b in ((1, 1), (1, 4), (2, 5)):
        shorter = build_pair(g1, a, b, 3)
        pair = build_pair(g1, a, b, 4)
        assert shorter.complex <= pair.subcomplex
        assert shorter.complex < pair.subcomplex  # strict on this fixture


def test_relative_homology_c4(c4):
    pair = build_pair(c4, 1, 1, 4)
    assert relative_homology(pair) == [(0, ()), (0, ()), (3, ())]


def test_relative_homology_empty_pair(c4):
    # bipartite parity: no odd-to-even paths, so K is empty
    pair = build_pair(c4, 1, 2, 4)
    assert not pair.complex
    assert relative_homology(pair) == [(0, ()), (0, ()), (0, ())]


def test_relative_boundary_squares_to_zero(g1):
    from maghom.ai_complex import _complex_boundaries
    from maghom.snf import sparse_matmul

    pair = build_pair(g1, 1, 1, 4)
    by_dim = {}
    for s in pair.quotient_cells():
        by_dim.setdefault(len(s) - 1, []).append(s)
    dims, boundaries = _complex_boundaries(by_dim, pair.subcomplex)
    for d in range(2, len(dims)):
        assert sparse_matmul(boundaries[d - 1], boundaries[d]).is_zero()


def test_euler_characteristic_of_quotient(g1):
    pair = build_pair(g1, 2, 4, 4)
    cells = pair.quotient_cells()
    chi = sum((-1) ** (len(s) - 1) for s in cells)
    rel = relative_homology(pair)
    assert chi == sum((-1) ** d * rank for d, (rank, _) in enumerate(rel))


def test_reduced_homology_basics():
    assert reduced_homology([]) == []
    point = [((1, 1),)]
    assert reduced_homology(point) == [(0, ())]
    two_points = [((1, 1),), ((2, 2),)]
    assert reduced_homology(two_points) == [(1, ())]


def test_reduced_homology_octahedron(c4):
    pair = build_pair(c4, 1, 1, 4)
    assert reduced_homology(pair.complex) == [(0, ()), (0, ()), (1, ())]


def test_correspondence_c4(c4):
    report = verify_correspondence(c4, 1, 1, 4)
    assert report.ok
    assert report.per_degree[4] == (True, (3, ()), (3, ()))


def test_correspondence_g1_all_pairs_length3(g1):
    for a in g1.vertices:
        for b in g1.vertices:
            assert verify_correspondence(g1, a, b, 3).ok


def test_correspondence_vacuous_when_no_paths(c4):
    report = verify_correspondence(c4, 1, 2, 4)
    assert report.ok
    assert all(entry == (True, (0, ()), (0, ())) for entry in report.per_degree.values())


def test_correspondence_reduced_branch_contractible():
    g = path_graph(5)
    report = verify_correspondence(g, 1, 4, 3)  # d(a, b) = l, one geodesic
    assert report.ok
    assert report.per_degree[2] == (True, (0, ()), (0, ()))


def test_correspondence_reduced_branch_disconnected():
    g = cycle_graph(6)
    report = verify_correspondence(g, 1, 4, 3)  # two geodesics, d(a, b) = l
    assert report.ok
    assert report.per_degree[2] == (True, (1, ()), (1, ()))


def test_g2_total_relative_rank_is_diagonal_rank(g2):
    total = 0
    for a in g2.vertices:
        for b in g2.vertices:
            rel = relative_homology(build_pair(g2, a, b, 3))
            total += rel[1][0]
            assert rel[0] == (0, ())
    assert total == 38


def test_correspondence_agreement_uses_both_sides(g2):
    # spot check that the two sides are computed by different pipelines
    lhs = mh_ab(g2, 1, 3, 3, 3)
    rhs = relative_homology(build_pair(g2, 1, 3, 3))[1]
    assert lhs == rhs

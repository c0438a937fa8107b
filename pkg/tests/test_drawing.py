from fractions import Fraction

import networkx as nx
import pytest

from crossnum.drawing import (
    CombinatorialDrawing,
    WeightedClustering,
    canonical_key,
    cl_value,
    cluster_crossings,
    clusters,
    crossing_count,
    drawing_from_text,
    drawing_to_text,
    equivalent,
    noncluster_count,
    planarize,
    structural_key,
    validate_good,
    zee,
)
from crossnum.geometry import drawing_from_points
from crossnum.graphs import Graph, complete_bipartite, complete_graph
from crossnum.oracle import oracle_drawings

F = Fraction


def one_crossing_k5():
    """K5 with vertex 4 in a face of a planar K4; edge (2,4) escapes once."""
    g = complete_graph(5)
    pos = {
        0: (0, 0),
        1: (4, 0),
        2: (2, 3),
        3: (2, 1),
        4: (F(9, 5), F(9, 20)),
    }
    return drawing_from_points(g, pos)


def test_zee_values():
    assert zee(7) == 9
    assert zee(2) == 0
    assert zee(5) == 4
    assert zee(0) == 0


def test_validate_planar_k4():
    d = drawing_from_points(
        complete_graph(4), {0: (0, 0), 1: (4, 0), 2: (2, 3), 3: (2, 1)}
    )
    assert validate_good(d).ok


def test_validate_adjacent_crossing():
    g = Graph((0, 1, 2), ((0, 1), (0, 2)))
    d = CombinatorialDrawing.make(
        g, {(0, 1): (0,), (0, 2): (0,)}, {}, None, None
    )
    rep = validate_good(d)
    assert not rep.ok and rep.violation == "adjacent crossing"


def test_validate_double_crossing():
    g = Graph((0, 1, 2, 3), ((0, 1), (2, 3)))
    d = CombinatorialDrawing.make(
        g, {(0, 1): (0, 1), (2, 3): (0, 1)}, {}, None, None
    )
    rep = validate_good(d)
    assert not rep.ok and rep.violation == "double crossing"


def test_validate_one_crossing_k5_realizable():
    d = one_crossing_k5()
    assert crossing_count(d) == 1
    assert validate_good(d).ok
    # independent check: the planarization graph is planar (left-right test)
    ng = nx.Graph()
    pairs = d.crossing_pairs
    for e, seq in d.sequences:
        chain = [e[0]] + [("x", c) for c in seq] + [e[1]]
        ng.add_edges_from(zip(chain, chain[1:]))
    assert nx.check_planarity(ng)[0]


def test_validate_unrealizable():
    # K4 with rotations from a planar drawing but one ring reversed has no
    # crossing-free sphere embedding
    d = drawing_from_points(
        complete_graph(4), {0: (0, 0), 1: (4, 0), 2: (2, 3), 3: (2, 1)}
    )
    rots = d.rot_map
    rots[3] = tuple(reversed(rots[3]))
    bad = CombinatorialDrawing.make(d.graph, d.seq_map, rots, None, None)
    rep = validate_good(bad)
    assert not rep.ok and "unrealizable" in rep.violation


def test_crossing_count_weighted():
    g = Graph((0, 1, 2, 3), ((0, 1), (2, 3)))
    d = drawing_from_points(
        g, {0: (0, 0), 1: (2, 2), 2: (0, 2), 3: (2, 0)},
        weights={(0, 1): 3, (2, 3): 2},
    )
    assert crossing_count(d) == 6
    unweighted = drawing_from_points(
        g, {0: (0, 0), 1: (2, 2), 2: (0, 2), 3: (2, 0)}
    )
    assert crossing_count(unweighted) == 1


def test_crossing_count_mixed():
    # two unit crossings plus one 4x5 crossing -> 22
    g = Graph(
        (0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11),
        ((0, 1), (2, 3), (4, 5), (6, 7), (8, 9), (10, 11)),
    )
    pos = {
        0: (0, 0), 1: (2, 2), 2: (0, 2), 3: (2, 0),
        4: (10, 0), 5: (12, 2), 6: (10, 2), 7: (12, 0),
        8: (20, 0), 9: (22, 2), 10: (20, 2), 11: (22, 0),
    }
    d = drawing_from_points(g, pos, weights={(8, 9): 4, (10, 11): 5})
    assert crossing_count(d) == 1 + 1 + 20


def test_planarize_crossing_free_identity():
    d = drawing_from_points(
        Graph((0, 1, 2), ((0, 1), (1, 2), (0, 2))),
        {0: (0, 0), 1: (4, 0), 2: (2, 3)},
    )
    p = planarize(d)
    assert p.vertex_count == 3 and p.edge_count == 3 and p.face_count == 2
    assert p.euler_holds()


def test_planarize_one_crossing_k5():
    p = planarize(one_crossing_k5())
    assert (p.vertex_count, p.edge_count, p.face_count) == (6, 12, 8)
    assert p.euler_holds()


def test_planarize_bowtie():
    g = Graph((0, 1, 2, 3), ((0, 1), (1, 2), (2, 3), (0, 3)))
    d = drawing_from_points(g, {0: (0, 0), 1: (4, 0), 2: (0, 2), 3: (4, 2)})
    p = planarize(d)
    assert (p.vertex_count, p.edge_count, p.face_count) == (5, 6, 3)
    assert p.components == 1
    assert p.euler_holds()


def test_equivalent_reflexive_and_rotation_sensitive():
    d = one_crossing_k5()
    assert equivalent(d, d)
    embeddings = oracle_drawings(complete_bipartite(2, 3), 0)
    assert len(embeddings) == 2
    assert not equivalent(embeddings[0], embeddings[1])


def test_equivalent_crossing_order_sensitive():
    # same crossing pairs, different order along the shared edge
    g = Graph((0, 1, 2, 3, 4, 5), ((0, 1), (2, 3), (4, 5)))
    base = {0: (0, 0), 1: (10, 0), 2: (2, -1), 3: (3, 2), 4: (6, -1), 5: (7, 2)}
    swapped = dict(base)
    swapped[2], swapped[3] = (6, -1), (7, 2)
    swapped[4], swapped[5] = (2, -1), (3, 2)
    d1 = drawing_from_points(g, base)
    d2 = drawing_from_points(g, swapped)
    assert crossing_count(d1) == crossing_count(d2) == 2
    assert not equivalent(d1, d2)


def fig1_drawing():
    """Four cover vertices, five blue and four red outer vertices."""
    cover = [0, 1, 2, 3]  # m1, m2, m3, m4
    blues = [4, 5, 6, 7, 8]
    reds = [9, 10, 11, 12]
    edges = [(0, 2), (2, 3), (1, 3), (0, 1)]
    for w in blues + reds:
        edges += [(m, w) for m in cover]
    g = Graph(tuple(range(13)), tuple(sorted(edges)))
    pos = {0: (0, 0), 1: (0, 3), 2: (F(1, 2), F(4, 5)), 3: (F(1, 2), F(11, 5))}
    for i, b in enumerate(blues):
        pos[b] = (-5 + i, F(3, 2))
    for i, r in enumerate(reds):
        pos[r] = (5 - i, F(3, 2))
    return drawing_from_points(g, pos), frozenset(cover)


def test_clusters_fig1():
    d, cover = fig1_drawing()
    part = clusters(d, cover)
    sizes = sorted(c.size for c in part.clusters)
    assert sizes == [4, 5]
    a, b = part.clusters
    assert a.neighborhood == b.neighborhood
    assert a.rotation != b.rotation


def fig2_drawing():
    edges = [(0, 1), (0, 2), (1, 2)]
    blues, reds, yellows = [3, 4, 5], [6, 7], [8, 9, 10]
    for w in blues + reds:
        edges += [(0, w), (1, w), (2, w)]
    for w in yellows:
        edges += [(0, w), (2, w)]
    g = Graph(tuple(range(11)), tuple(sorted(edges)))
    pos = {
        0: (0, 0), 1: (F(3, 2), 3), 2: (3, 0),
        3: (F(3, 2), F(3, 2)), 4: (-1, F(5, 2)), 5: (4, F(5, 2)),
        6: (-1, F(-3, 5)), 7: (4, F(-3, 5)),
        8: (F(3, 2), F(-7, 10)), 9: (-1, 1), 10: (4, 1),
    }
    return drawing_from_points(g, pos), frozenset({0, 1, 2})


def test_clusters_fig2():
    d, cover = fig2_drawing()
    part = clusters(d, cover)
    assert sorted(c.size for c in part.clusters) == [2, 3, 3]
    by_members = {c.members: c for c in part.clusters}
    assert (3, 4, 5) in by_members  # blues share a rotation
    assert (6, 7) in by_members
    assert (8, 9, 10) in by_members  # degree-2: unique cyclic order


def test_clusters_low_degree_single_cluster():
    g = complete_bipartite(2, 4)
    ds = oracle_drawings(g, 0)
    for d in ds:
        part = clusters(d, frozenset({0, 1}))
        assert len(part.clusters) == 1 and part.clusters[0].size == 4


def test_cl_value_examples():
    # weights (3,2,3) with degrees (3,3,2)
    d, cover = fig2_drawing()
    wc = WeightedClustering.make(
        d.graph and d, cover, {3: 3, 6: 2, 8: 3}
    ) if False else None
    # use a clustering-shaped drawing: one rep per cluster
    g = Graph(
        (0, 1, 2, 3, 4, 5),
        ((0, 1), (0, 2), (1, 2),
         (0, 3), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (0, 5), (2, 5)),
    )
    dd = drawing_from_points(
        g,
        {0: (0, 0), 1: (F(3, 2), 3), 2: (3, 0), 3: (F(3, 2), F(3, 2)),
         4: (-1, F(-3, 5)), 5: (F(3, 2), F(-7, 10))},
    )
    wc = WeightedClustering.make(dd, frozenset({0, 1, 2}), {3: 3, 4: 2, 5: 3})
    wc.check()
    assert cl_value(wc) == 3 * 1 + 1 * 1 + 3 * 0

    unit = WeightedClustering.make(dd, frozenset({0, 1, 2}), {3: 1, 4: 1, 5: 1})
    assert cl_value(unit) == 0

    g2 = Graph((0, 1, 2, 3), ((0, 3), (1, 3), (2, 3)))
    star = drawing_from_points(
        g2, {0: (0, 0), 1: (2, 0), 2: (1, 2), 3: (1, F(1, 2))}
    )
    n = 10**6
    big = WeightedClustering.make(star, frozenset({0, 1, 2}), {3: n})
    assert cl_value(big) == n * (n - 1) // 2


def test_noncluster_count():
    # crossing between two cover-cover edges is always non-cluster
    g = Graph((0, 1, 2, 3, 4), ((0, 1), (2, 3), (2, 4)))
    d = drawing_from_points(
        g, {0: (0, 0), 1: (2, 2), 2: (0, 2), 3: (2, 0), 4: (3, 3)}
    )
    cover = frozenset({0, 1, 2, 3})
    assert crossing_count(d) == 1
    assert noncluster_count(d, cover) == 1

    # crossing involving two edges of one cluster is a cluster crossing
    g2 = complete_bipartite(2, 2)
    d2 = drawing_from_points(
        g2, {0: (0, 0), 1: (2, 0), 2: (1, 1), 3: (1, -1)}
    )
    assert crossing_count(d2) == 0
    assert noncluster_count(d2, frozenset({0, 1})) == 0
    crossing = drawing_from_points(
        g2, {0: (0, 0), 1: (2, 0), 2: (3, 2), 3: (1, 2)}
    )
    assert crossing_count(crossing) == 1
    assert noncluster_count(crossing, frozenset({0, 1})) == 0


def test_cluster_lower_bound_small_oracle_sample():
    # every cluster of size c and degree m carries >= C(c,2) * Z(m)
    from math import comb

    for g, cover, cap in (
        (complete_bipartite(2, 3), frozenset({0, 1}), 2),
        (complete_graph(4), frozenset({0, 1, 2}), 1),
        (complete_bipartite(3, 3), frozenset({0, 1, 2}), 2),
    ):
        for d in oracle_drawings(g, cap):
            for cl in clusters(d, cover).clusters:
                bound = comb(cl.size, 2) * zee(cl.degree)
                assert cluster_crossings(d, cl) >= bound


def test_k2m_equal_rotation_bound_small():
    for m in (3, 4):
        ds = oracle_drawings(
            complete_bipartite(2, m), zee(m), equal_rotations=((0, 1),)
        )
        assert min(crossing_count(d) for d in ds) == zee(m)


def test_equivalence_relation_spot_checks():
    ds = oracle_drawings(complete_bipartite(2, 3), 1)
    keys = [canonical_key(d) for d in ds]
    for i, d in enumerate(ds):
        assert equivalent(d, d)
        for j in range(i + 1, len(ds)):
            same = keys[i] == keys[j]
            assert equivalent(ds[i], ds[j]) == same
            assert (structural_key(ds[i]) == structural_key(ds[j])) == same


def test_crossing_count_equals_id_count_unweighted():
    for d in oracle_drawings(complete_bipartite(2, 3), 1):
        assert crossing_count(d) == len(d.crossing_pairs)


def test_drawing_text_round_trip():
    d = one_crossing_k5()
    text = drawing_to_text(d)
    back = drawing_from_text(text)
    assert drawing_to_text(back) == text
    assert equivalent(d, back)

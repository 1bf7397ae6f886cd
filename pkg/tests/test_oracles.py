"""정확한 오라클과 서로소 경로 오라클 테스트"""

import itertools
import random

import pytest

from src.models.proof import ConnectivityMode
from src.oracles.exact import (
    ExactGraph,
    OracleError,
    components,
    exact_support,
    min_cut,
    min_cut_partition,
    minimum_vertex_cut,
    vertex_connectivity,
)
from src.oracles.flow import count_disjoint_paths, disjoint_paths, paths_to_targets
from src.services.graph_families import complete, cycle, hypercube, path, star, two_triangles
from src.utils.union_find import UnionFind

VERTEX = ConnectivityMode.VERTEX
EDGE = ConnectivityMode.EDGE


def graph(n, edges):
    return ExactGraph.from_edges(n, edges)


def brute_force_min_cut(g: ExactGraph) -> int:
    best = None
    for size in range(1, g.n):
        for side in itertools.combinations(range(g.n), size):
            if 0 not in side:
                continue
            inside = set(side)
            crossing = sum(1 for u, v in g.edges() if (u in inside) != (v in inside))
            best = crossing if best is None else min(best, crossing)
    return best


def connected_without(g, removed):
    """removed를 지운 나머지가 연결되어 있는지 (UnionFind로 따로 계산)"""
    rest = [v for v in range(g.n) if v not in removed]
    uf = UnionFind(g.n)
    for u, v in g.edges():
        if u not in removed and v not in removed:
            uf.union(u, v)
    return len({uf.find(v) for v in rest}) <= 1


def brute_force_vertex_connectivity(g: ExactGraph) -> int:
    """지워서 그래프를 끊는 가장 작은 정점 부분집합의 크기 (없으면 n−1)"""
    for size in range(g.n - 1):
        for removed in itertools.combinations(range(g.n), size):
            if not connected_without(g, set(removed)):
                return size
    return max(g.n - 1, 0)


def random_graphs(seed, count, sizes=(5, 6, 7, 8, 9)):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.choice(sizes)
        density = rng.choice((0.2, 0.4, 0.6, 0.8))
        yield graph(n, [e for e in complete(n) if rng.random() < density])


def assert_vertex_disjoint(paths, s, t):
    inner = [v for p in paths for v in p[1:-1]]
    assert len(inner) == len(set(inner))
    assert all(p[0] == s and p[-1] == t for p in paths)


def assert_walks_in(g, paths):
    for p in paths:
        assert all(g.has_edge(a, b) for a, b in zip(p, p[1:]))


# ── exact_support ─────────────────────────────────────────────────


class TestExactSupport:
    def test_element_stream(self, make_elem_stream):
        stream = make_elem_stream(5, 10, [(1, 3), (2, 4), (1, -3), (4, -1)])
        assert exact_support(stream) == {2: 4, 4: -1}

    def test_graph_stream_drops_cancelled_edges(self, make_graph_stream):
        stream = make_graph_stream(6, [(0, 1), (2, 5)], alpha=3, seed=2, noise=4)
        assert exact_support(stream).edges() == [(0, 1), (2, 5)]

    def test_exact_graph_drops_zero_frequencies(self):
        assert ExactGraph(3, {(0, 1): 0, (1, 2): 4}).edges() == [(1, 2)]


# ── components / min_cut / vertex_connectivity ────────────────────


class TestComponents:
    def test_path_is_one_component(self):
        assert components(graph(5, path(5))) == [[0, 1, 2, 3, 4]]

    def test_two_triangles_and_isolated_vertex(self):
        assert components(graph(7, two_triangles())) == [[0, 1, 2], [3, 4, 5], [6]]

    def test_matches_union_find(self):
        for g in random_graphs(31, 60):
            uf = UnionFind(g.n)
            for u, v in g.edges():
                uf.union(u, v)
            assert components(g) == sorted(uf.groups().values())


class TestMinCut:
    def test_known_values(self):
        assert min_cut(graph(8, cycle(8))) == 2
        assert min_cut(graph(6, complete(6))) == 5
        assert min_cut(graph(8, hypercube(3))) == 3

    def test_disconnected(self):
        value, side = min_cut_partition(graph(6, two_triangles()))
        assert value == 0
        assert side == [0, 1, 2]

    def test_needs_two_vertices(self):
        with pytest.raises(OracleError):
            min_cut(graph(1, []))

    def test_matches_brute_force(self):
        rng = random.Random(6)
        for _ in range(25):
            edges = [e for e in complete(6) if rng.random() < 0.5]
            g = graph(6, edges)
            assert min_cut(g) == brute_force_min_cut(g)

    def test_partition_side_realizes_value(self):
        g = graph(8, cycle(8))
        value, side = min_cut_partition(g)
        inside = set(side)
        assert sum(1 for u, v in g.edges() if (u in inside) != (v in inside)) == value


class TestVertexConnectivity:
    def test_known_values(self):
        assert vertex_connectivity(graph(6, complete(6))) == 5
        assert vertex_connectivity(graph(5, star(4))) == 1
        assert vertex_connectivity(graph(8, cycle(8))) == 2
        assert vertex_connectivity(graph(1, [])) == 0

    def test_matches_brute_force(self):
        for g in random_graphs(32, 40):
            assert vertex_connectivity(g) == brute_force_vertex_connectivity(g)

    def test_brute_force_on_known_families(self):
        for g in (graph(6, complete(6)), graph(8, cycle(8)), graph(8, hypercube(3)), graph(6, two_triangles())):
            assert vertex_connectivity(g) == brute_force_vertex_connectivity(g)

    def test_minimum_vertex_cut_of_star(self):
        cut, side = minimum_vertex_cut(graph(5, star(4)))
        assert cut == [0]
        assert side == [1]

    def test_minimum_vertex_cut_separates(self):
        g = graph(8, cycle(8))
        cut, side = minimum_vertex_cut(g)
        assert len(cut) == 2
        blocked = set(cut) | set(side)
        for u, v in g.edges():
            assert not ((u in side and v not in blocked) or (v in side and u not in blocked))

    def test_disconnected_graph_has_empty_cut(self):
        assert minimum_vertex_cut(graph(6, two_triangles())) == ([], [0, 1, 2])

    def test_complete_graph_has_no_cut(self):
        with pytest.raises(OracleError):
            minimum_vertex_cut(graph(5, complete(5)))


# ── 서로소 경로 ───────────────────────────────────────────────────


class TestDisjointPaths:
    def test_complete_four_vertex_mode(self):
        g = graph(4, complete(4))
        paths = disjoint_paths(g, 0, 3, 3, VERTEX)
        assert len(paths) == 3
        assert [0, 3] in paths
        assert_vertex_disjoint(paths, 0, 3)
        assert_walks_in(g, paths)

    def test_path_has_only_one(self):
        assert disjoint_paths(graph(4, path(4)), 0, 3, 2, VERTEX) is None
        assert disjoint_paths(graph(4, path(4)), 0, 3, 1, VERTEX) == [[0, 1, 2, 3]]

    def test_cycle_edge_mode_gives_both_arcs(self):
        paths = disjoint_paths(graph(6, cycle(6)), 0, 3, 2, EDGE)
        assert sorted(paths) == [[0, 1, 2, 3], [0, 5, 4, 3]]

    def test_edge_mode_allows_shared_vertices(self):
        # 두 삼각형이 정점 2를 공유하는 나비 모양
        g = graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
        assert disjoint_paths(g, 0, 4, 2, VERTEX) is None
        paths = disjoint_paths(g, 0, 4, 2, EDGE)
        used = [tuple(sorted(e)) for p in paths for e in zip(p, p[1:])]
        assert len(used) == len(set(used))

    def test_deterministic(self):
        g = graph(8, hypercube(3))
        assert disjoint_paths(g, 0, 7, 3, VERTEX) == disjoint_paths(g, 0, 7, 3, VERTEX)

    def test_same_endpoints(self):
        with pytest.raises(OracleError):
            disjoint_paths(graph(3, path(3)), 1, 1, 1, EDGE)

    def test_zero_paths(self):
        assert disjoint_paths(graph(3, []), 0, 2, 0, EDGE) == []


class TestPathsToTargets:
    def test_fan_in_vertex_mode_ends_at_distinct_targets(self):
        g = graph(8, hypercube(3))
        paths = paths_to_targets(g, 0, [3, 5, 6, 7], 3, VERTEX)
        assert len(paths) == 3
        assert len({p[-1] for p in paths}) == 3
        for p in paths:
            assert p[-1] in {3, 5, 6, 7}
            assert not set(p[:-1]) & {3, 5, 6, 7}
        assert_walks_in(g, paths)

    def test_direct_edges(self):
        paths = paths_to_targets(graph(4, complete(4)), 0, [1, 2, 3], 3, VERTEX)
        assert sorted(paths) == [[0, 1], [0, 2], [0, 3]]

    def test_no_targets(self):
        assert paths_to_targets(graph(3, path(3)), 1, [1], 1, EDGE) is None

    def test_edge_mode_may_reuse_target(self):
        paths = paths_to_targets(graph(3, [(0, 1), (0, 2), (1, 2)]), 0, [2], 2, EDGE)
        assert sorted(paths) == [[0, 1, 2], [0, 2]]


class TestCountDisjointPaths:
    def test_counts(self):
        assert count_disjoint_paths(graph(6, cycle(6)), 0, 3, EDGE) == 2
        assert count_disjoint_paths(graph(5, complete(5)), 0, 4, VERTEX) == 4
        assert count_disjoint_paths(graph(5, star(4)), 1, 2, VERTEX) == 1
        assert count_disjoint_paths(graph(6, two_triangles()), 0, 3, EDGE) == 0

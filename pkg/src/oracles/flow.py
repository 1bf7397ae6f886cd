"""
서로소 경로 오라클 (Menger)

단위 용량 네트워크에서 Edmonds–Karp로 최대 흐름을 구하고 흐름을 경로로 분해한다.
BFS는 정렬된 이웃 순서로 진행하고 분해는 가장 작은 다음 노드를 따라가므로
같은 입력에 대해 항상 같은 경로를 낸다.

네트워크 구성:
    간선 모드  노드 = 정점 0..n−1, 싱크 = n
    정점 모드  정점 v를 in = 2v, out = 2v+1로 나누고 in→out 용량 1, 싱크 = 2n
    목표 정점은 흡수 노드다. 싱크로 가는 호만 있고 목표를 통과하는 경로는 없다.
    출발점으로 들어오는 호는 두지 않는다.
"""

from collections import defaultdict, deque
from typing import Iterable, Optional

from ..models.proof import ConnectivityMode
from .exact import ExactGraph, OracleError

Path = list[int]


class FlowNetwork:
    """반대칭 흐름을 쓰는 용량 네트워크"""

    def __init__(self, size: int):
        self.size = size
        self.capacity: dict[int, dict[int, int]] = defaultdict(dict)
        self.flow: dict[int, dict[int, int]] = defaultdict(lambda: defaultdict(int))
        self.neighbors: dict[int, set[int]] = defaultdict(set)

    def add_arc(self, u: int, v: int, capacity: int) -> None:
        self.capacity[u][v] = self.capacity[u].get(v, 0) + capacity
        self.neighbors[u].add(v)
        self.neighbors[v].add(u)

    def residual(self, u: int, v: int) -> int:
        return self.capacity[u].get(v, 0) - self.flow[u][v]

    def _augmenting_path(self, source: int, sink: int) -> Optional[list[int]]:
        parent = {source: source}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in sorted(self.neighbors[u]):
                if v not in parent and self.residual(u, v) > 0:
                    parent[v] = u
                    if v == sink:
                        path = [sink]
                        while path[-1] != source:
                            path.append(parent[path[-1]])
                        return path[::-1]
                    queue.append(v)
        return None

    def max_flow(self, source: int, sink: int, limit: Optional[int] = None) -> int:
        """source→sink 최대 흐름 (limit에 닿으면 멈춤)"""
        value = 0
        while limit is None or value < limit:
            path = self._augmenting_path(source, sink)
            if path is None:
                break
            bottleneck = min(self.residual(a, b) for a, b in zip(path, path[1:]))
            if limit is not None:
                bottleneck = min(bottleneck, limit - value)
            for a, b in zip(path, path[1:]):
                self.flow[a][b] += bottleneck
                self.flow[b][a] -= bottleneck
            value += bottleneck
        return value

    def decompose(self, source: int, sink: int, count: int) -> list[list[int]]:
        """흐름을 count개의 source→sink 경로로 분해 (순환은 잘라낸다)"""
        paths = []
        for _ in range(count):
            walk = [source]
            position = {source: 0}
            while walk[-1] != sink:
                u = walk[-1]
                v = min(w for w, f in self.flow[u].items() if f > 0)
                self.flow[u][v] -= 1
                self.flow[v][u] += 1
                if v in position:
                    cut = position[v]
                    for w in walk[cut + 1:]:
                        del position[w]
                    del walk[cut + 1:]
                else:
                    position[v] = len(walk)
                    walk.append(v)
            paths.append(walk)
        return paths


def _build(
    graph: ExactGraph,
    source: int,
    targets: dict[int, int],
    mode: ConnectivityMode,
) -> tuple[FlowNetwork, int, int]:
    """네트워크, 시작 노드, 싱크 노드. targets는 목표 정점 → 싱크 용량"""
    n = graph.n
    if mode is ConnectivityMode.EDGE:
        sink = n
        net = FlowNetwork(n + 1)
        for u, v in graph.edges():
            for a, b in ((u, v), (v, u)):
                if a in targets or b == source:
                    continue
                net.add_arc(a, b, 1)
        for t, cap in targets.items():
            net.add_arc(t, sink, cap)
        return net, source, sink

    sink = 2 * n
    net = FlowNetwork(2 * n + 1)
    for v in range(n):
        if v != source and v not in targets:
            net.add_arc(2 * v, 2 * v + 1, 1)
    for u, v in graph.edges():
        for a, b in ((u, v), (v, u)):
            if a in targets or b == source:
                continue
            net.add_arc(2 * a + 1, 2 * b, 1)
    for t, cap in targets.items():
        net.add_arc(2 * t, sink, cap)
    return net, 2 * source + 1, sink


def _to_vertices(walk: list[int], sink: int, mode: ConnectivityMode) -> Path:
    nodes = walk[:-1] if walk and walk[-1] == sink else walk
    if mode is ConnectivityMode.EDGE:
        return list(nodes)
    path: Path = []
    for node in nodes:
        v = node // 2
        if not path or path[-1] != v:
            path.append(v)
    return path


def _solve(
    graph: ExactGraph,
    source: int,
    targets: dict[int, int],
    k: int,
    mode: ConnectivityMode,
) -> Optional[list[Path]]:
    if not 0 <= source < graph.n:
        raise OracleError(f"정점 범위 초과: {source}")
    net, start, sink = _build(graph, source, targets, mode)
    if net.max_flow(start, sink, limit=k) < k:
        return None
    return [_to_vertices(w, sink, mode) for w in net.decompose(start, sink, k)]


def disjoint_paths(
    graph: ExactGraph, s: int, t: int, k: int, mode: ConnectivityMode
) -> Optional[list[Path]]:
    """
    s에서 t로 가는 서로소 경로 k개

    정점 모드에서 경로는 s, t만 공유하고, 간선 모드에서는 간선을 공유하지 않는다.

    Returns:
        경로 k개 (각각 정점 순서열), Menger 값이 k 미만이면 None
    """
    if s == t:
        raise OracleError("s와 t는 달라야 합니다")
    if k <= 0:
        return []
    return _solve(graph, s, {t: k}, k, mode)


def paths_to_targets(
    graph: ExactGraph,
    v: int,
    targets: Iterable[int],
    k: int,
    mode: ConnectivityMode,
) -> Optional[list[Path]]:
    """
    v에서 목표 집합으로 가는 서로소 경로 k개 (부채꼴)

    각 경로는 처음 만나는 목표에서 끝나고 내부는 목표를 지나지 않는다.
    정점 모드에서는 목표마다 경로가 하나씩만 끝난다.
    """
    targets = set(targets) - {v}
    if k <= 0:
        return []
    if not targets:
        return None
    cap = 1 if mode is ConnectivityMode.VERTEX else k
    return _solve(graph, v, {t: cap for t in sorted(targets)}, k, mode)


def count_disjoint_paths(graph: ExactGraph, s: int, t: int, mode: ConnectivityMode) -> int:
    """s–t 서로소 경로의 최대 개수"""
    if s == t:
        raise OracleError("s와 t는 달라야 합니다")
    net, start, sink = _build(graph, s, {t: graph.n * graph.n + 1}, mode)
    return net.max_flow(start, sink)

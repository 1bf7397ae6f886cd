"""
정확한 기준 구현 (오라클)

임의 정밀도 정수로 빈도를 합산하고, 지지 그래프에 대한 연결성 질의는 networkx로 계산한다.
모든 질의는 가중치 없는 지지 그래프 위에서 이루어진다.
"""

from dataclasses import dataclass, field
from typing import Iterable, Union

import networkx as nx

from ..core.exceptions import SketchToolkitError
from ..models.stream import Stream, TokenKind

Edge = tuple[int, int]


class OracleError(SketchToolkitError):
    """오라클 전제 조건 위반"""
    pass


@dataclass
class ExactGraph:
    """정점 수 n과 0이 아닌 간선 빈도"""
    n: int
    frequencies: dict[Edge, int] = field(default_factory=dict)

    def __post_init__(self):
        self.frequencies = {e: f for e, f in self.frequencies.items() if f != 0}

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "ExactGraph":
        return cls(n, {(min(u, v), max(u, v)): 1 for u, v in edges})

    def edges(self) -> list[Edge]:
        return sorted(self.frequencies)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.frequencies

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.frequencies)
        return graph


def exact_support(stream: Stream) -> Union[ExactGraph, dict[int, int]]:
    """
    스트림의 정확한 최종 빈도

    Returns:
        SGT 스트림이면 ExactGraph, ELEM 스트림이면 원소 → 0이 아닌 빈도
    """
    totals: dict = {}
    for token in stream:
        key = token.endpoints if token.kind is TokenKind.EDGE else token.element
        totals[key] = totals.get(key, 0) + token.delta
    support = {key: value for key, value in totals.items() if value != 0}
    if stream.header.is_graph:
        return ExactGraph(stream.header.universe, support)
    return support


def components(graph: ExactGraph) -> list[list[int]]:
    """정렬된 연결 구성요소 목록"""
    return sorted(sorted(c) for c in nx.connected_components(graph.to_networkx()))


def min_cut_partition(graph: ExactGraph) -> tuple[int, list[int]]:
    """전역 최소 간선 절단 값과 그 한쪽 면 (정렬)"""
    if graph.n < 2:
        raise OracleError(f"최소 절단에는 정점이 2개 이상 필요합니다: n={graph.n}")
    g = graph.to_networkx()
    if not nx.is_connected(g):
        return 0, sorted(nx.node_connected_component(g, 0))
    value, (side, _) = nx.stoer_wagner(g)
    return int(value), sorted(side)


def min_cut(graph: ExactGraph) -> int:
    return min_cut_partition(graph)[0]


def vertex_connectivity(graph: ExactGraph) -> int:
    if graph.n <= 1:
        return 0
    return int(nx.node_connectivity(graph.to_networkx()))


def minimum_vertex_cut(graph: ExactGraph) -> tuple[list[int], list[int]]:
    """
    최소 정점 절단 X와 G − X의 한 구성요소 S

    S는 X에 속하지 않는 가장 작은 정점의 구성요소다. 그래프가 끊겨 있으면 X는 비어 있다.

    Raises:
        OracleError: 완전 그래프처럼 정점을 갈라놓는 절단이 없는 경우
    """
    g = graph.to_networkx()
    if graph.n <= 1:
        raise OracleError("정점이 하나 이하인 그래프에는 절단이 없습니다")
    if not nx.is_connected(g):
        return [], sorted(nx.node_connected_component(g, 0))
    if vertex_connectivity(graph) >= graph.n - 1:
        raise OracleError("완전 그래프에는 정점을 갈라놓는 절단이 없습니다")
    blocked = nx.minimum_node_cut(g)
    rest = g.subgraph(v for v in g if v not in blocked)
    return sorted(blocked), sorted(nx.node_connected_component(rest, min(rest)))

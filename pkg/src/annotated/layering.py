"""
계층화 증명

층 i의 표본 집합 T_i는 각 정점을 확률 k·2^i/n으로 독립적으로 담는다 (시드 PRF).
정점 v의 층은 v ∈ T_i인 첫 i이고, 층 0의 정점은 단말로, 층 i의 정점은 T_{i−1}로
서로소 경로 k개를 보인다. 경로는 처음 만나는 목표에서 끝난다.
"""

import logging
from typing import Iterator, Optional

from ..core.config import get_settings
from ..core.exceptions import SketchToolkitError
from ..models.proof import ConnectivityMode, LayeredProof, VertexProof
from ..models.stream import edge_slot
from ..oracles.exact import ExactGraph
from ..oracles.flow import disjoint_paths, paths_to_targets
from ..utils.prf import below_rate, derive_key, prf64

logger = logging.getLogger(__name__)


class LayeringError(SketchToolkitError):
    """계층 증명을 만들 수 없음 (연결성 부족 또는 재시도 소진)"""
    pass


def layer_count(n: int, k: int) -> int:
    """k·2^ℓ ≥ n을 만족하는 가장 작은 ℓ ≥ 0"""
    layers = 0
    while k << layers < n:
        layers += 1
    return layers


def size_bound(n: int, k: int, mode: ConnectivityMode, factor: Optional[int] = None) -> int:
    """허용하는 경로 길이 합의 상한"""
    factor = factor if factor is not None else get_settings().layering_size_factor
    layers = max(1, layer_count(n, k))
    per_vertex = k if mode is ConnectivityMode.VERTEX else k * k
    return factor * per_vertex * n * layers


class Layering:
    """시드로 정해지는 층 집합 T_0..T_ℓ (정점 0..n−1 위)"""

    def __init__(self, n: int, k: int, seed: int):
        self.n = n
        self.k = k
        self.seed = seed
        self.layers = layer_count(n, k)
        self._keys = [derive_key(seed, "layer", i) for i in range(self.layers + 1)]

    def in_set(self, i: int, v: int) -> bool:
        return below_rate(prf64(self._keys[i], v), self.k << i, self.n)

    def layer_of(self, v: int) -> int:
        for i in range(self.layers + 1):
            if self.in_set(i, v):
                return i
        return self.layers

    def members(self, i: int) -> list[int]:
        return [v for v in range(self.n) if self.in_set(i, v)]

    def order(self, terminal: int) -> list[tuple[int, int]]:
        """증명할 정점을 (층, 정점) 순으로 (단말 제외)"""
        return sorted((self.layer_of(v), v) for v in range(self.n) if v != terminal)

    def next_after(self, current: Optional[tuple[int, int]], terminal: int) -> Optional[tuple[int, int]]:
        """current 다음의 (층, 정점). 상수 공간 훑기"""
        best = None
        for v in range(self.n):
            if v == terminal:
                continue
            key = (self.layer_of(v), v)
            if current is not None and key <= current:
                continue
            if best is None or key < best:
                best = key
        return best

    def iter_order(self, terminal: int) -> Iterator[tuple[int, int]]:
        current = self.next_after(None, terminal)
        while current is not None:
            yield current
            current = self.next_after(current, terminal)


def disjointness_items(
    entry: VertexProof,
    mode: ConnectivityMode,
    terminal: int,
    slot_n: int,
) -> list[int]:
    """
    한 정점의 경로 내용 목록 (정렬)

    정점 모드는 v와 층 0의 단말을 뺀 경로 정점, 간선 모드는 경로 간선의 슬롯.
    """
    if mode is ConnectivityMode.EDGE:
        return sorted(edge_slot(a, b, slot_n) for p in entry.paths for a, b in zip(p, p[1:]))
    return sorted(
        x for p in entry.paths for x in p[1:] if not (entry.layer == 0 and x == terminal)
    )


def layering_prove(
    graph: ExactGraph,
    terminal: int,
    k: int,
    mode: ConnectivityMode,
    seed: int,
    real_n: Optional[int] = None,
) -> LayeredProof:
    """
    단말 terminal에 대한 계층 증명을 만든다.

    크기 상한을 넘거나 어떤 층 집합으로 경로를 낼 수 없으면 다른 층 시드로 다시 시도한다.

    Args:
        graph: 지지 그래프 (가상 정점을 붙인 경우 그 정점이 terminal)
        terminal: 단말 정점
        k: 정점당 경로 수
        mode: 정점/간선 모드
        seed: 증명자 시드
        real_n: 층 표본을 뽑을 실제 정점 수 (기본 graph.n)

    Raises:
        LayeringError: 단말까지 서로소 경로 k개가 없는 정점이 있거나 재시도를 모두 쓴 경우
    """
    settings = get_settings()
    real_n = real_n if real_n is not None else graph.n
    bound = size_bound(real_n, k, mode)

    for attempt in range(settings.layering_max_retries):
        layering_seed = derive_key(seed, "layering", attempt)
        layering = Layering(real_n, k, layering_seed)
        proof = LayeredProof(mode, terminal, k, layering_seed, layering.layers)
        target_sets: dict[int, list[int]] = {}
        feasible = True

        for layer, v in layering.order(terminal):
            if layer == 0:
                paths = disjoint_paths(graph, v, terminal, k, mode)
                if paths is None:
                    raise LayeringError(f"정점 {v}에서 단말 {terminal}까지 서로소 경로 {k}개가 없습니다")
            else:
                if layer - 1 not in target_sets:
                    target_sets[layer - 1] = layering.members(layer - 1)
                paths = paths_to_targets(graph, v, target_sets[layer - 1], k, mode)
                if paths is None:
                    feasible = False
                    break
            proof.entries.append(VertexProof(v, layer, paths))

        if feasible and proof.total_length() <= bound:
            if attempt:
                logger.debug(f"계층 증명: 시도 {attempt + 1}회 만에 성공")
            return proof
        logger.debug(f"계층 증명 재시도 {attempt + 1}: feasible={feasible}")

    raise LayeringError(f"층 시드 {settings.layering_max_retries}개를 모두 시도했지만 증명을 만들지 못했습니다")

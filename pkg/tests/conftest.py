"""공용 픽스처: 정확한 카운터, mod-α 카운터, 그래프 스트림 생성기"""

from dataclasses import dataclass

import pytest

from src.models.stream import Stream, StreamHeader, StreamModel, StreamToken
from src.services.graph_families import graph_stream


@dataclass
class ExactCounter:
    """임의 정밀도 정수 합 (거짓 0이 없는 기준 카운터)"""
    value: int = 0

    def ingest(self, delta: int) -> None:
        self.value += delta

    def is_zero(self) -> bool:
        return self.value == 0


@dataclass
class ModAlphaCounter:
    """작은 법 m으로 누적하는 결정적 카운터 (m의 배수인 합을 0으로 잘못 본다)"""
    modulus: int
    value: int = 0

    def ingest(self, delta: int) -> None:
        self.value = (self.value + delta) % self.modulus

    def is_zero(self) -> bool:
        return self.value == 0


@pytest.fixture
def exact_counter_factory():
    return ExactCounter


@pytest.fixture
def mod_alpha_counter_factory():
    def make(modulus: int = 7):
        return lambda: ModAlphaCounter(modulus)
    return make


@pytest.fixture
def make_graph_stream():
    """간선 목록 → SGT 스트림 (seed를 주면 무작위 부호/빈도와 유령 간선)"""
    def make(n, edges, alpha=1, seed=None, noise=0):
        return graph_stream(n, edges, alpha=alpha, seed=seed, noise=noise)
    return make


@pytest.fixture
def make_elem_stream():
    def make(universe, alpha, pairs):
        header = StreamHeader(model=StreamModel.ELEM, universe=universe, alpha=alpha)
        return Stream(header, [StreamToken.of_element(e, d) for e, d in pairs])
    return make

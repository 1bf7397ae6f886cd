"""
k-간선 연결성 인증서

간선 슬롯을 1/k 비율로 독립적으로 걸러낸 r = ⌈C·k·ln n⌉개의 부분 그래프마다
정점 스케치 뱅크를 두고, 각 부분 그래프의 신장 숲을 합집합하여 인증서 H를 만든다.
숲끼리는 서로 간선을 빼지 않는다.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..core.config import get_settings
from ..models.stream import Stream, StreamToken, TokenKind, edge_slot
from ..oracles.exact import ExactGraph, min_cut
from ..utils.prf import MASK64, derive_key, key_stream, prf64_array
from .graph_sketch import VertexSketchBank, spanning_forest
from .l0_sketch import SketchShapeError

logger = logging.getLogger(__name__)


def bank_count(n: int, k: int, constant: float) -> int:
    """부분 뱅크 수 r = max(1, ⌈C·k·ln n⌉)"""
    return max(1, math.ceil(constant * k * math.log(max(n, 1))))


@dataclass
class Certificate:
    n: int
    k: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def to_graph(self) -> ExactGraph:
        return ExactGraph.from_edges(self.n, self.edges)


class CertificateState:
    """부분 뱅크 r개와 슬롯 필터 키"""

    def __init__(self, n: int, alpha: int, k: int, seed: int, constant: Optional[float] = None):
        if k < 1:
            raise SketchShapeError(f"k는 1 이상이어야 합니다: {k}")
        self.n = n
        self.alpha = alpha
        self.k = k
        self.seed = seed
        self.constant = constant if constant is not None else get_settings().cert_constant
        self.r = bank_count(n, k, self.constant)
        self.filter_keys = key_stream(derive_key(seed, "cert-filter"), self.r)
        # 64비트 PRF 값이 2^64/k 미만이면 통과 (k=1이면 전부 통과)
        self._limit = None if k == 1 else np.uint64(((MASK64 + 1) // k))
        self.banks = [
            VertexSketchBank(n, alpha, derive_key(seed, "cert-bank", i)) for i in range(self.r)
        ]

    def admitted(self, slot: int) -> np.ndarray:
        """슬롯을 받아들이는 부분 뱅크 번호"""
        if self._limit is None:
            return np.arange(self.r)
        return np.flatnonzero(prf64_array(self.filter_keys, slot) < self._limit)

    def ingest(self, token: StreamToken) -> None:
        if token.kind is not TokenKind.EDGE:
            raise SketchShapeError("인증서는 간선 토큰만 받습니다")
        u, v = token.endpoints
        if v >= self.n:
            raise SketchShapeError(f"정점 범위 초과: ({u}, {v}), n={self.n}")
        for i in self.admitted(edge_slot(u, v, self.n)):
            self.banks[int(i)].ingest(token)

    def merge(self, other: "CertificateState") -> "CertificateState":
        if (self.n, self.k, self.seed, self.r) != (other.n, other.k, other.seed, other.r):
            raise SketchShapeError("시드/형태가 다른 인증서 상태는 병합할 수 없습니다")
        merged = CertificateState.__new__(CertificateState)
        merged.__dict__.update(self.__dict__)
        merged.banks = [a.merge(b) for a, b in zip(self.banks, other.banks)]
        return merged

    def edge_budget(self) -> int:
        return self.r * (self.n - 1)


def cert_ingest(state: CertificateState, token: StreamToken) -> None:
    state.ingest(token)


def cert_extract(state: CertificateState) -> Certificate:
    """부분 뱅크마다 신장 숲을 구해 간선 합집합을 낸다"""
    edges: set[tuple[int, int]] = set()
    for bank in state.banks:
        edges.update(spanning_forest(bank).edges)
    logger.debug(f"인증서 추출: r={state.r}, |H|={len(edges)}")
    return Certificate(state.n, state.k, sorted(edges))


def build_certificate(
    stream: Stream, k: int, seed: int, constant: Optional[float] = None
) -> Certificate:
    header = stream.header
    state = CertificateState(header.vertex_count, header.alpha, k, seed, constant)
    for token in stream:
        state.ingest(token)
    return cert_extract(state)


def k_edge_connected(
    stream: Stream, k: int, seed: int, constant: Optional[float] = None
) -> bool:
    """인증서 H의 최소 절단이 k 이상인지"""
    certificate = build_certificate(stream, k, seed, constant)
    if certificate.n < 2:
        return True
    return min_cut(certificate.to_graph()) >= k

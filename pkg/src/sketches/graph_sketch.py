"""
정점 접속 스케치 뱅크와 Borůvka 신장 숲

정점 v의 라운드 t 스케치는 v에 닿은 간선 슬롯의 부호 있는 빈도를 담는다.
작은 끝점은 +delta, 큰 끝점은 −delta를 받으므로 정점 집합 S의 스케치를 합치면
S 내부 간선은 상쇄되고 S를 가로지르는 간선만 남는다.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..core.config import get_settings
from ..models.stream import Stream, StreamToken, TokenKind, edge_slot, slot_count, slot_edge
from ..utils.prf import derive_key
from ..utils.union_find import UnionFind
from .l0_sketch import L0Sketch, SketchShape, SketchShapeError

logger = logging.getLogger(__name__)


def round_count(n: int) -> int:
    """Borůvka 라운드 수 ⌈log₂n⌉ + 1"""
    return (max(n, 1) - 1).bit_length() + 1


class VertexSketchBank:
    """
    정점별·라운드별 ℓ0 스케치 모음

    라운드마다 독립 시드의 샘플러 템플릿을 두고, 모든 정점의 나머지를
    (라운드, 정점, 수준, 반복, 열) 배열 하나에 담는다.
    """

    def __init__(
        self,
        n: int,
        alpha: int,
        seed: int,
        sign_convention: int = 1,
        shape: Optional[SketchShape] = None,
    ):
        if n < 1:
            raise SketchShapeError("정점 수는 1 이상이어야 합니다")
        if sign_convention not in (1, -1):
            raise SketchShapeError("sign_convention은 +1 또는 −1이어야 합니다")
        settings = get_settings()
        self.n = n
        self.alpha = alpha
        self.seed = seed
        self.sign_convention = sign_convention
        self.universe = max(1, slot_count(n))
        self.shape = shape or SketchShape.for_universe(
            self.universe,
            alpha,
            repetitions=settings.graph_sampler_repetitions,
            detector_repetitions=settings.graph_detector_repetitions,
        )
        self.rounds = round_count(n)
        self.templates = [
            L0Sketch(self.shape, derive_key(seed, "round", t)) for t in range(self.rounds)
        ]
        self.residues = np.zeros((self.rounds, n, *self.shape.array_shape), dtype=np.int64)

    def ingest(self, token: StreamToken) -> None:
        if token.kind is not TokenKind.EDGE:
            raise SketchShapeError("정점 스케치 뱅크는 간선 토큰만 받습니다")
        u, v = token.endpoints
        if v >= self.n:
            raise SketchShapeError(f"정점 범위 초과: ({u}, {v}), n={self.n}")
        slot = edge_slot(u, v, self.n)
        signed = self.sign_convention * token.delta
        for t, template in enumerate(self.templates):
            p = template.prime
            index = template.touch(slot)
            low, high = self.residues[t, u], self.residues[t, v]
            low[index] = (low[index] + signed % p) % p
            high[index] = (high[index] + (-signed) % p) % p

    def vertex_sketch(self, t: int, v: int) -> L0Sketch:
        return self.templates[t].with_residues(self.residues[t, v].copy())

    def component_sketch(self, t: int, members: list[int]) -> L0Sketch:
        """구성원 스케치의 합 (mod p)"""
        p = self.templates[t].prime
        acc = np.zeros(self.shape.array_shape, dtype=np.int64)
        for v in members:
            acc = (acc + self.residues[t, v]) % p
        return self.templates[t].with_residues(acc)

    def merge(self, other: "VertexSketchBank") -> "VertexSketchBank":
        if (
            self.n != other.n
            or self.seed != other.seed
            or self.shape != other.shape
            or self.sign_convention != other.sign_convention
        ):
            raise SketchShapeError("시드/형태가 다른 뱅크는 병합할 수 없습니다")
        merged = VertexSketchBank.__new__(VertexSketchBank)
        merged.__dict__.update(self.__dict__)
        primes = np.array([t.prime for t in self.templates], dtype=np.int64)
        primes = primes.reshape(self.rounds, *([1] * (self.residues.ndim - 1)))
        merged.residues = (self.residues + other.residues) % primes
        return merged


@dataclass
class Forest:
    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    parent: list[int] = field(default_factory=list)

    def components(self) -> list[list[int]]:
        """정렬된 구성요소 목록 (각 구성요소도 정렬)"""
        groups: dict[int, list[int]] = {}
        for v, root in enumerate(self.parent):
            groups.setdefault(root, []).append(v)
        return sorted(groups.values())


def bank_ingest(bank: VertexSketchBank, token: StreamToken) -> None:
    bank.ingest(token)


def build_bank(stream: Stream, seed: int, sign_convention: int = 1) -> VertexSketchBank:
    """SGT 스트림 전체를 새 뱅크에 넣는다"""
    header = stream.header
    bank = VertexSketchBank(header.vertex_count, header.alpha, seed, sign_convention)
    for token in stream:
        bank.ingest(token)
    return bank


def spanning_forest(bank: VertexSketchBank) -> Forest:
    """
    Borůvka 방식 신장 숲

    라운드 t마다 각 구성요소(대표 = 최소 정점, 오름차순)의 라운드 t 스케치를 합쳐
    바깥으로 나가는 간선 슬롯 하나를 뽑는다. 끝점 중 정확히 하나가 구성요소 안에
    있는 간선만 받아들이고, 모든 표본을 뽑은 뒤 한꺼번에 합친다.
    """
    uf = UnionFind(bank.n)
    edges: list[tuple[int, int]] = []
    for t in range(bank.rounds):
        if uf.count == 1:
            break
        proposals = []
        for rep, members in sorted(uf.groups().items()):
            slot = bank.component_sketch(t, members).sample()
            if slot is None or slot >= slot_count(bank.n):
                continue
            u, v = slot_edge(slot, bank.n)
            if (uf.find(u) == rep) == (uf.find(v) == rep):
                continue
            proposals.append((u, v))
        for u, v in proposals:
            if uf.union(u, v):
                edges.append((u, v))
        logger.debug(f"Borůvka 라운드 {t}: 제안 {len(proposals)}개, 구성요소 {uf.count}개")
    return Forest(bank.n, sorted(edges), uf.roots())


def is_connected(bank: VertexSketchBank) -> bool:
    if bank.n == 1:
        return True
    return len(spanning_forest(bank).edges) == bank.n - 1

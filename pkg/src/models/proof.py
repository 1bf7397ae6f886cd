"""
주석 스트리밍 증명 모델

연결성 모드, 증명자 행동, 판정, 절단 증명, 계층 증명, 증명 기록(transcript)을 정의한다.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

from pydantic import BaseModel


class ConnectivityMode(str, Enum):
    """연결성 모드 열거형"""
    VERTEX = "vertex"  # 정점 서로소 경로 / 정점 절단
    EDGE = "edge"  # 간선 서로소 경로 / 간선 절단


class SchemeId(str, Enum):
    """증명 방식 식별자"""
    KVCONN = "kvconn"
    KECONN = "keconn"
    GAP = "gap"
    AM = "am"
    SGT = "sgt"


class ProverBehavior(str, Enum):
    """증명자 행동 (정직 + 변조 유형)"""
    HONEST = "honest"
    EDGE_NOT_IN_INPUT = "edge-not-in-input"
    MULTIPLICITY_LIE = "multiplicity-lie"
    SIGN_LIE = "sign-lie"
    NON_DISJOINT_PATHS = "non-disjoint-paths"
    BROKEN_PATH = "broken-path"
    UNDERSIZED_CUT = "undersized-cut"
    TERMINAL_DUPLICATION = "terminal-duplication"


class CheckId(str, Enum):
    """검증자 검사 식별자 (REJECT 사유)"""
    FRAME_FORMAT = "frame-format"
    FRAME_ORDER = "frame-order"
    CLAIM = "claim"
    DISCLOSURE_ORDER = "disclosure-order"
    DISCLOSURE_EQUALITY = "disclosure-equality"
    USAGE_ORDER = "usage-order"
    USAGE_COUNT = "usage-count"
    LEDGER = "ledger"
    RESIDUAL = "residual"
    TERMINALS = "terminals"
    LAYERING_HEADER = "layering-header"
    COVERAGE = "coverage"
    PATH_SHAPE = "path-shape"
    PATH_TARGET = "path-target"
    VIRTUAL_EDGE = "virtual-edge"
    SIGN = "sign"
    DISJOINTNESS_ORDER = "disjointness-order"
    DISJOINTNESS = "disjointness"
    CUT_SHAPE = "cut-shape"
    CUT_CROSSING = "cut-crossing"

    @property
    def code(self) -> int:
        return list(CheckId).index(self)

    @classmethod
    def from_code(cls, code: int) -> "CheckId":
        return list(cls)[code]


class VerdictKind(str, Enum):
    OUTPUT = "OUTPUT"
    ACCEPT = "ACCEPT"
    REJECT = "REJECT"


@dataclass(frozen=True)
class Verdict:
    kind: VerdictKind
    value: Optional[bool] = None
    check: Optional[CheckId] = None

    @classmethod
    def output(cls, value: bool) -> "Verdict":
        return cls(VerdictKind.OUTPUT, value=value)

    @classmethod
    def accept(cls) -> "Verdict":
        return cls(VerdictKind.ACCEPT)

    @classmethod
    def reject(cls, check: CheckId) -> "Verdict":
        return cls(VerdictKind.REJECT, check=check)

    @property
    def rejected(self) -> bool:
        return self.kind is VerdictKind.REJECT

    @property
    def positive(self) -> bool:
        """ACCEPT 또는 OUTPUT(true)"""
        return self.kind is VerdictKind.ACCEPT or (
            self.kind is VerdictKind.OUTPUT and self.value is True
        )

    def __str__(self) -> str:
        if self.kind is VerdictKind.OUTPUT:
            return f"OUTPUT({'true' if self.value else 'false'})"
        if self.kind is VerdictKind.REJECT:
            return f"REJECT({self.check.value})"
        return "ACCEPT"


@dataclass
class CutProof:
    """
    연결성이 k 미만이라는 증거

    정점 모드는 절단 X, 간선 모드는 k−1개 이하의 간선, 그리고 절단의 한쪽 S.
    """
    mode: ConnectivityMode
    cut_vertices: List[int] = field(default_factory=list)
    cut_edges: List[tuple[int, int]] = field(default_factory=list)
    side: List[int] = field(default_factory=list)


@dataclass
class VertexProof:
    """정점 하나의 계층 증명: k개의 경로"""
    vertex: int
    layer: int
    paths: List[List[int]]


@dataclass
class LayeredProof:
    mode: ConnectivityMode
    terminal: int
    k: int
    layering_seed: int
    layer_count: int
    entries: List[VertexProof] = field(default_factory=list)

    def total_length(self) -> int:
        """모든 경로의 간선 수 합"""
        return sum(len(p) - 1 for entry in self.entries for p in entry.paths)


class CostReport(BaseModel):
    """--costs 출력: 키는 scheme, k, n, hcost_bits, vcost_bits, verdict 로 고정"""
    scheme: str
    k: int
    n: int
    hcost_bits: int
    vcost_bits: int
    verdict: str

    def to_line(self) -> str:
        return json.dumps(self.model_dump(), separators=(", ", ": "))


@dataclass
class ProofTranscript:
    """증명자 → 검증자 프레임 순서열과 측정 비용, 판정"""
    scheme: SchemeId
    k: int
    n: int
    frames: bytes
    hcost_bits: int
    vcost_bits: int
    verdict: Verdict

    def costs(self) -> CostReport:
        return CostReport(
            scheme=self.scheme.value,
            k=self.k,
            n=self.n,
            hcost_bits=self.hcost_bits,
            vcost_bits=self.vcost_bits,
            verdict=str(self.verdict),
        )

"""
스트림 도메인 모델

원소/간선 토큰, 스트림 헤더, Equals-Index 인스턴스를 정의한다.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from ..core.exceptions import SketchToolkitError


class StreamFormatError(SketchToolkitError):
    """스트림 형식/불변식 위반 예외"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"{line_number}행: {message}"
        super().__init__(message)


class StreamModel(str, Enum):
    """스트림 모델 열거형"""
    ELEM = "ELEM"  # 원소 턴스타일
    SGT = "SGT"  # 지지 그래프 턴스타일


class TokenKind(str, Enum):
    ELEMENT = "element"
    EDGE = "edge"


def slot_count(n: int) -> int:
    """n개 정점의 간선 슬롯 수 n(n-1)/2"""
    return n * (n - 1) // 2


def edge_slot(u: int, v: int, n: int) -> int:
    """정규화된 간선 (u < v)의 슬롯 번호 (사전순 쌍 번호)"""
    if u > v:
        u, v = v, u
    return u * n - u * (u + 1) // 2 + (v - u - 1)


def slot_edge(slot: int, n: int) -> tuple[int, int]:
    """edge_slot의 역함수"""
    if not 0 <= slot < slot_count(n):
        raise ValueError(f"슬롯 범위 초과: {slot}")
    u = 0
    row = n - 1
    while slot >= row:
        slot -= row
        u += 1
        row -= 1
    return u, u + 1 + slot


@dataclass(frozen=True, slots=True)
class StreamToken:
    """부호 있는 갱신 하나 (원소 또는 간선)"""
    kind: TokenKind
    delta: int
    element: Optional[int] = None
    u: Optional[int] = None
    v: Optional[int] = None

    def __post_init__(self):
        if self.delta == 0:
            raise StreamFormatError("delta는 0이 될 수 없습니다")
        if self.kind is TokenKind.ELEMENT:
            if self.element is None or self.element < 0:
                raise StreamFormatError(f"잘못된 원소 번호: {self.element}")
        else:
            if self.u is None or self.v is None or self.u < 0 or self.v < 0:
                raise StreamFormatError(f"잘못된 간선 끝점: ({self.u}, {self.v})")
            if self.u == self.v:
                raise StreamFormatError(f"자기 루프는 허용되지 않습니다: ({self.u}, {self.v})")
            if self.u > self.v:
                raise StreamFormatError("간선 끝점은 정규화되어야 합니다 (작은 정점 먼저)")

    @classmethod
    def of_element(cls, element: int, delta: int) -> "StreamToken":
        return cls(TokenKind.ELEMENT, delta, element=element)

    @classmethod
    def of_edge(cls, u: int, v: int, delta: int) -> "StreamToken":
        """끝점을 정규화하여 간선 토큰 생성"""
        if u > v:
            u, v = v, u
        return cls(TokenKind.EDGE, delta, u=u, v=v)

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.u, self.v)

    def negated(self) -> "StreamToken":
        if self.kind is TokenKind.ELEMENT:
            return StreamToken.of_element(self.element, -self.delta)
        return StreamToken.of_edge(self.u, self.v, -self.delta)


class StreamHeader(BaseModel):
    """스트림 헤더 (모델, 우주 크기, 빈도 상한 α)"""

    model_config = ConfigDict(frozen=True)

    model: StreamModel
    universe: int
    alpha: int

    @field_validator("universe")
    @classmethod
    def _check_universe(cls, value: int) -> int:
        if value < 1:
            raise ValueError("universe는 1 이상이어야 합니다")
        return value

    @field_validator("alpha")
    @classmethod
    def _check_alpha(cls, value: int) -> int:
        if value < 1:
            raise ValueError("alpha는 1 이상이어야 합니다")
        return value

    @property
    def is_graph(self) -> bool:
        return self.model is StreamModel.SGT

    @property
    def vertex_count(self) -> int:
        if not self.is_graph:
            raise StreamFormatError("ELEM 스트림에는 정점이 없습니다")
        return self.universe

    @property
    def sketch_universe(self) -> int:
        """스케치가 다루는 좌표 수: 원소 수 또는 간선 슬롯 수"""
        if self.is_graph:
            return max(1, slot_count(self.universe))
        return self.universe

    def coordinate(self, token: StreamToken) -> int:
        """토큰의 스케치 좌표 (원소 번호 또는 간선 슬롯)"""
        if token.kind is TokenKind.EDGE:
            return edge_slot(token.u, token.v, self.universe)
        return token.element

    def check_token(self, token: StreamToken, line_number: Optional[int] = None) -> None:
        """토큰이 헤더의 우주 안에 있는지 검사"""
        if self.is_graph:
            if token.kind is not TokenKind.EDGE:
                raise StreamFormatError("SGT 스트림에는 간선 토큰만 올 수 있습니다", line_number)
            if token.v >= self.universe:
                raise StreamFormatError(
                    f"정점 범위 초과: ({token.u}, {token.v}), n={self.universe}", line_number
                )
        else:
            if token.kind is not TokenKind.ELEMENT:
                raise StreamFormatError("ELEM 스트림에는 원소 토큰만 올 수 있습니다", line_number)
            if token.element >= self.universe:
                raise StreamFormatError(
                    f"원소 범위 초과: {token.element}, N={self.universe}", line_number
                )


@dataclass
class Stream:
    """헤더와 토큰 순서열"""
    header: StreamHeader
    tokens: List[StreamToken] = field(default_factory=list)

    def __iter__(self) -> Iterator[StreamToken]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def append(self, token: StreamToken) -> None:
        self.header.check_token(token)
        self.tokens.append(token)

    def negated(self) -> "Stream":
        return Stream(self.header, [t.negated() for t in self.tokens])

    def concat(self, other: "Stream") -> "Stream":
        if other.header != self.header:
            raise StreamFormatError("헤더가 다른 스트림은 이어 붙일 수 없습니다")
        return Stream(self.header, self.tokens + other.tokens)


class EqIdxInstance(BaseModel):
    """Equals-Index 인스턴스: 블록 x_1..x_p, 질의 y, 색인 j (1부터)"""

    model_config = ConfigDict(frozen=True)

    blocks: tuple[str, ...]
    query: str
    index: int

    @model_validator(mode="after")
    def _check_shape(self) -> "EqIdxInstance":
        if not self.blocks:
            raise ValueError("블록이 하나 이상 필요합니다")
        q = len(self.query)
        if q < 1:
            raise ValueError("블록 길이 q는 1 이상이어야 합니다")
        for bits in (*self.blocks, self.query):
            if len(bits) != q:
                raise ValueError("모든 블록과 질의의 길이는 q로 같아야 합니다")
            if set(bits) - {"0", "1"}:
                raise ValueError(f"비트 문자열이 아닙니다: {bits!r}")
        if not 1 <= self.index <= len(self.blocks):
            raise ValueError(f"색인 j는 1..{len(self.blocks)} 범위여야 합니다")
        return self

    @property
    def p(self) -> int:
        return len(self.blocks)

    @property
    def q(self) -> int:
        return len(self.query)

    @property
    def answer(self) -> bool:
        """x_j == y"""
        return self.blocks[self.index - 1] == self.query

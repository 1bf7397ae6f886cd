"""
방식별 계획

증명자와 검증자가 똑같이 계산하는 값들: 연결성 모드, 단말 구성 방식,
공개 난수로 뽑는 단말, 가상 정점 사용 여부, 장부 배율.
"""

import random
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..core.config import get_settings
from ..core.exceptions import SketchToolkitError
from ..models.proof import ConnectivityMode, SchemeId
from ..utils.prf import derive_key


class ProtocolError(SketchToolkitError):
    """방식/모드/스트림 조합 오류"""
    pass


class TerminalStyle(str, Enum):
    LIST = "list"  # 서로 다른 단말 k개, 오름차순
    SINGLE = "single"  # 단말 하나
    SETS = "sets"  # 서로소 단말 집합 T_L, T_R (각 2k개), 가상 정점
    PUBLIC = "public"  # 공개 난수로 뽑은 단말
    FIXED = "fixed"  # 호출자가 정한 단말 하나 (계층 증명 단독 검증)


_DEFAULT_MODE = {
    SchemeId.KVCONN: ConnectivityMode.VERTEX,
    SchemeId.KECONN: ConnectivityMode.EDGE,
    SchemeId.GAP: ConnectivityMode.VERTEX,
    SchemeId.AM: ConnectivityMode.VERTEX,
    SchemeId.SGT: ConnectivityMode.VERTEX,
}


def ceil_log2(n: int) -> int:
    return (max(n, 1) - 1).bit_length()


def am_terminals(n: int, shared_seed: int) -> tuple[int, ...]:
    """공개 시드로 뽑은 단말 min(n, c·⌈log₂n⌉)개 (정렬)"""
    count = min(n, max(1, get_settings().am_terminal_factor * ceil_log2(n)))
    rng = random.Random(derive_key(shared_seed, "am-terminals"))
    return tuple(sorted(rng.sample(range(n), count)))


@dataclass(frozen=True)
class ProtocolSeeds:
    """
    실행 시드 하나에서 갈라지는 세 시드

    증명자는 public과 prover만 받는다. verifier는 실행 시드에서 단방향으로
    유도되므로 증명자가 가진 값으로는 다시 만들 수 없다.
    """

    public: int
    prover: int
    verifier: int

    @classmethod
    def from_run(cls, seed: int, verifier_seed: Optional[int] = None) -> "ProtocolSeeds":
        """verifier_seed를 주면 검증자 시드로 그대로 쓴다"""
        return cls(
            public=derive_key(seed, "public-coins"),
            prover=derive_key(seed, "prover-coins"),
            verifier=derive_key(seed, "verifier-coins") if verifier_seed is None else verifier_seed,
        )


@dataclass(frozen=True)
class SchemePlan:
    scheme: SchemeId
    mode: ConnectivityMode
    style: TerminalStyle
    n: int
    k: int
    public_terminals: tuple[int, ...] = ()
    fixed_terminal: Optional[int] = None

    @classmethod
    def build(
        cls,
        scheme: SchemeId,
        n: int,
        k: int,
        mode: Optional[ConnectivityMode] = None,
        shared_seed: int = 0,
    ) -> "SchemePlan":
        if k < 1:
            raise ProtocolError(f"k는 1 이상이어야 합니다: {k}")
        default = _DEFAULT_MODE[scheme]
        if mode is None:
            mode = default
        elif scheme is not SchemeId.SGT and mode is not default:
            raise ProtocolError(f"{scheme.value} 방식은 {default.value} 모드만 지원합니다")

        if scheme is SchemeId.KECONN or (scheme is SchemeId.SGT and mode is ConnectivityMode.EDGE):
            style = TerminalStyle.SINGLE
        elif scheme is SchemeId.GAP and n >= 4 * k:
            style = TerminalStyle.SETS
        elif scheme is SchemeId.AM:
            return cls(scheme, mode, TerminalStyle.PUBLIC, n, k, am_terminals(n, shared_seed))
        else:
            # 4k 미만의 정점에서는 서로소 2k-집합 두 개를 만들 수 없어 k-단말 증명으로 대신한다
            style = TerminalStyle.LIST
        return cls(scheme, mode, style, n, k)

    @classmethod
    def for_layering(cls, n: int, k: int, mode: ConnectivityMode, terminal: int) -> "SchemePlan":
        scheme = SchemeId.KVCONN if mode is ConnectivityMode.VERTEX else SchemeId.KECONN
        return cls(scheme, mode, TerminalStyle.FIXED, n, k, fixed_terminal=terminal)

    @property
    def signed(self) -> bool:
        """부호 정렬 공개와 부호 있는 장부를 쓰는지 (SGT 방식)"""
        return self.scheme is SchemeId.SGT

    @property
    def virtual(self) -> bool:
        return self.style is TerminalStyle.SETS

    @property
    def working_n(self) -> int:
        """가상 정점을 포함한 정점 수"""
        return self.n + 1 if self.virtual else self.n

    @property
    def proof_count(self) -> int:
        if self.style is TerminalStyle.LIST:
            return self.k
        if self.style is TerminalStyle.SETS:
            return 2
        if self.style is TerminalStyle.PUBLIC:
            return len(self.public_terminals)
        return 1

    @property
    def ledger_scale(self) -> int:
        """공개 빈도에 곱하는 배율 M (간선 사용 횟수보다 항상 크다)"""
        return self.n * self.n * max(1, self.proof_count)

    def honest_terminals(self) -> list[int]:
        if self.style is TerminalStyle.LIST:
            return list(range(self.k))
        if self.style is TerminalStyle.PUBLIC:
            return list(self.public_terminals)
        if self.style is TerminalStyle.FIXED:
            return [self.fixed_terminal]
        if self.style is TerminalStyle.SETS:
            return [self.n, self.n]
        return [0]

    def honest_sets(self) -> tuple[list[int], list[int]]:
        return list(range(2 * self.k)), list(range(2 * self.k, 4 * self.k))

"""
결정 카운터

무작위 소수 p에 대한 나머지로 순빈도를 누적하고 "순빈도가 0인가"에 답한다.
순빈도가 0이면 항상 0으로 보고하고, 0이 아니면 p가 그 값을 나눌 때만 0으로 잘못 보고한다.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core.config import get_settings
from ..core.exceptions import SketchToolkitError
from ..models.stream import Stream, TokenKind
from ..utils.prf import derive_key
from ..utils.primes import random_prime

logger = logging.getLogger(__name__)


class CounterMismatchError(SketchToolkitError):
    """소수가 다른 카운터끼리 병합하려 할 때"""
    pass


class CounterParams(BaseModel):
    """오차 예산용 문맥 크기 n과 빈도 상한 α"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=1)
    alpha: int = Field(ge=1)


def counter_prime(seed: int) -> int:
    """시드에서 유도되는 카운터 소수 (설정의 비트 수, 밀러-라빈 라운드)"""
    settings = get_settings()
    return random_prime(
        settings.counter_prime_bits,
        derive_key("counter-prime", seed),
        settings.counter_mr_rounds,
    )


@dataclass
class DecisionCounter:
    prime: int
    seed: int
    accumulator: int = 0

    @classmethod
    def fresh(cls, seed: int, prime: Optional[int] = None) -> "DecisionCounter":
        return cls(prime=prime if prime is not None else counter_prime(seed), seed=seed)

    def ingest(self, delta: int) -> None:
        # 임의 정밀도 delta는 먼저 p로 줄인다
        self.accumulator = (self.accumulator + delta % self.prime) % self.prime

    def is_zero(self) -> bool:
        return self.accumulator == 0

    def merge(self, other: "DecisionCounter") -> "DecisionCounter":
        if self.prime != other.prime:
            raise CounterMismatchError(
                f"소수가 다른 카운터는 병합할 수 없습니다: {self.prime} != {other.prime}"
            )
        return DecisionCounter(self.prime, self.seed, (self.accumulator + other.accumulator) % self.prime)

    def negated(self) -> "DecisionCounter":
        return DecisionCounter(self.prime, self.seed, (-self.accumulator) % self.prime)


def counter_ingest(params: CounterParams, seed: int, deltas: Iterable[int]) -> DecisionCounter:
    """
    delta 순서열을 새 카운터에 누적합니다.

    부분합이 [−α, α] 안에 있다는 것은 호출자의 약속이며 검사하지 않는다.

    Args:
        params: 문맥 크기/빈도 상한
        seed: 카운터 시드 (소수를 결정)
        deltas: 부호 있는 정수 순서열

    Returns:
        DecisionCounter: accumulator ≡ Σdeltas (mod p)
    """
    counter = DecisionCounter.fresh(seed)
    for delta in deltas:
        counter.ingest(delta)
    return counter


def counter_is_zero(counter: DecisionCounter) -> bool:
    return counter.is_zero()


def counter_merge(a: DecisionCounter, b: DecisionCounter) -> DecisionCounter:
    return a.merge(b)


def count_distinct(stream: Stream, params: CounterParams, seed: int) -> int:
    """
    원소별 비영 검출기로 서로 다른 원소 수를 센다.

    한 번의 실행은 소수 하나를 공유하고, 검출기는 원소가 처음 나타날 때 만든다.

    Raises:
        SketchToolkitError: SGT 스트림이 들어온 경우
    """
    if stream.header.is_graph:
        raise SketchToolkitError("count_distinct는 원소 모델(ELEM) 스트림만 받습니다")

    prime = counter_prime(seed)
    detectors: dict[int, DecisionCounter] = {}
    for token in stream:
        if token.kind is not TokenKind.ELEMENT:
            raise SketchToolkitError("원소 토큰이 아닌 토큰이 있습니다")
        detector = detectors.get(token.element)
        if detector is None:
            detector = detectors[token.element] = DecisionCounter(prime, seed)
        detector.ingest(token.delta)

    count = sum(1 for detector in detectors.values() if not detector.is_zero())
    logger.debug(f"서로 다른 원소 수: {count} (검출기 {len(detectors)}개, N={params.n})")
    return count

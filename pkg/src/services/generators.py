"""
스트림 생성기

무작위 SGT 스트림과 Equals-Index 인스턴스에서 유도한 적대적 스트림을 만든다.
모든 생성기는 (매개변수, 시드)의 순수 함수다.
"""

import itertools
import logging
import random
from typing import Iterator, Optional

from ..core.exceptions import SketchToolkitError
from ..models.stream import (
    EqIdxInstance,
    Stream,
    StreamHeader,
    StreamModel,
    StreamToken,
    slot_count,
    slot_edge,
)

logger = logging.getLogger(__name__)


class GeneratorError(SketchToolkitError):
    """생성기 매개변수 오류"""
    pass


def _signed_magnitude(rng: random.Random, alpha: int) -> int:
    value = rng.randint(1, alpha)
    return value if rng.random() < 0.5 else -value


def gen_random_sgt(
    n: int,
    alpha: int,
    density: float,
    cancel_fraction: float,
    seed: int,
) -> Stream:
    """
    무작위 SGT 스트림 생성

    밀도 density로 건드린 슬롯 중 cancel_fraction 비율은 합이 정확히 0이 되도록
    두 번 갱신한다. 나머지 슬롯은 최종 빈도 f ∈ ±[1, α]를 한 번 또는 두 번의 갱신으로
    만든다. 모든 중간 빈도는 [−α, α] 안에 머문다.

    Args:
        n: 정점 수 (2 이상)
        alpha: 빈도 상한 α
        density: 슬롯을 건드릴 확률
        cancel_fraction: 건드린 슬롯 중 상쇄할 비율
        seed: 난수 시드

    Returns:
        Stream: 생성된 스트림
    """
    if n < 2:
        raise GeneratorError(f"정점 수는 2 이상이어야 합니다: n={n}")
    if alpha < 1:
        raise GeneratorError(f"alpha는 1 이상이어야 합니다: {alpha}")
    if not 0.0 <= density <= 1.0 or not 0.0 <= cancel_fraction <= 1.0:
        raise GeneratorError("density와 cancel_fraction은 [0, 1] 범위여야 합니다")

    rng = random.Random(seed)
    touched = [slot for slot in range(slot_count(n)) if rng.random() < density]
    cancelled = set(rng.sample(touched, round(cancel_fraction * len(touched))))

    first: list[StreamToken] = []
    second: list[StreamToken] = []
    for slot in touched:
        u, v = slot_edge(slot, n)
        if slot in cancelled:
            a = _signed_magnitude(rng, alpha)
            first.append(StreamToken.of_edge(u, v, a))
            second.append(StreamToken.of_edge(u, v, -a))
            continue
        final = _signed_magnitude(rng, alpha)
        a = rng.randint(-alpha, alpha)
        if a in (0, final):
            first.append(StreamToken.of_edge(u, v, final))
        else:
            first.append(StreamToken.of_edge(u, v, a))
            second.append(StreamToken.of_edge(u, v, final - a))

    rng.shuffle(first)
    rng.shuffle(second)
    header = StreamHeader(model=StreamModel.SGT, universe=n, alpha=alpha)
    logger.debug(
        f"무작위 SGT 생성: n={n}, 건드린 슬롯 {len(touched)}개, 상쇄 {len(cancelled)}개"
    )
    return Stream(header, first + second)


def _check_alpha(q: int, alpha: Optional[int]) -> int:
    if alpha is None:
        return 1 << q
    if q > alpha.bit_length():
        raise GeneratorError(f"블록 길이 q={q}가 alpha의 비트 길이 {alpha.bit_length()}를 넘습니다")
    return alpha


def gen_eqidx_distinct_items(instance: EqIdxInstance, alpha: Optional[int] = None) -> Stream:
    """
    서로 다른 원소 수 문제로의 환원

    원소 i에 x_i+1을 삽입하고, 원소 j에서 y+1을 삭제한다.
    x_j = y이면 서로 다른 원소 수가 N−1, 아니면 N이다.
    """
    alpha = _check_alpha(instance.q, alpha)
    header = StreamHeader(model=StreamModel.ELEM, universe=instance.p, alpha=alpha)
    tokens = [
        StreamToken.of_element(i, int(bits, 2) + 1)
        for i, bits in enumerate(instance.blocks)
    ]
    tokens.append(StreamToken.of_element(instance.index - 1, -(int(instance.query, 2) + 1)))
    return Stream(header, tokens)


def _sub_blocks(bits: str, parts: int) -> list[int]:
    width = len(bits) // parts
    return [int(bits[c * width:(c + 1) * width], 2) for c in range(parts)]


def gen_eqidx_sgt_connectivity(instance: EqIdxInstance) -> Stream:
    """
    SGT 연결성 문제로의 환원

    왼쪽 정점 0..n−1, 오른쪽 정점 n..2n−1. 블록 x_i를 n개의 부분 블록으로 나눠
    간선 (i, n+c)에 x_{i,c}+1을 삽입하고, Bob은 (j, n+c)에서 y_c+1을 삭제한다.
    x_j = y이면 왼쪽 정점 j가 고립된다.
    """
    n = instance.p
    if instance.q % n:
        raise GeneratorError(f"블록 길이 q={instance.q}는 n={n}의 배수여야 합니다")
    width = instance.q // n
    header = StreamHeader(model=StreamModel.SGT, universe=2 * n, alpha=1 << width)

    tokens = []
    for i, bits in enumerate(instance.blocks):
        for c, value in enumerate(_sub_blocks(bits, n)):
            tokens.append(StreamToken.of_edge(i, n + c, value + 1))
    for c, value in enumerate(_sub_blocks(instance.query, n)):
        tokens.append(StreamToken.of_edge(instance.index - 1, n + c, -(value + 1)))
    return Stream(header, tokens)


def kconn_pair(ell: int, n: int, k: int) -> tuple[int, int]:
    """k-연결성 환원의 ℓ번째 정점 쌍 (왼쪽 ℓ//k, 오른쪽 n + ℓ%k)"""
    return ell // k, n + ell % k


def gen_eqidx_sgt_kconn(instance: EqIdxInstance, k: int, alpha: Optional[int] = None) -> Stream:
    """
    SGT k-연결성 문제로의 환원

    왼쪽 n개, 오른쪽 k개 정점의 완전 이분 그래프 K_{n,k}에서 p = k·n개의 쌍을
    정규 순서로 나열하고, ℓ번째 쌍에 x_ℓ+1을 삽입한 뒤 j번째 쌍에서 y+1을 삭제한다.
    지지 그래프는 K_{n,k}에서 많아야 j번째 간선이 빠진 그래프이고,
    x_j ≠ y일 때만 k-간선/k-정점 연결이다.
    """
    if k < 1:
        raise GeneratorError(f"k는 1 이상이어야 합니다: {k}")
    if instance.p % k:
        raise GeneratorError(f"블록 수 p={instance.p}는 k={k}의 배수여야 합니다")
    n = instance.p // k
    if k >= n:
        raise GeneratorError(f"k={k}는 왼쪽 정점 수 n={n}보다 작아야 합니다")
    alpha = _check_alpha(instance.q, alpha)
    header = StreamHeader(model=StreamModel.SGT, universe=n + k, alpha=alpha)

    tokens = []
    for ell, bits in enumerate(instance.blocks):
        u, v = kconn_pair(ell, n, k)
        tokens.append(StreamToken.of_edge(u, v, int(bits, 2) + 1))
    u, v = kconn_pair(instance.index - 1, n, k)
    tokens.append(StreamToken.of_edge(u, v, -(int(instance.query, 2) + 1)))
    return Stream(header, tokens)


def random_eqidx(p: int, q: int, seed: int, equal: Optional[bool] = None) -> EqIdxInstance:
    """시드로 결정되는 무작위 Equals-Index 인스턴스 (equal로 답을 고정 가능)"""
    rng = random.Random(seed)
    blocks = tuple(format(rng.getrandbits(q), f"0{q}b") for _ in range(p))
    index = rng.randint(1, p)
    if equal is None:
        equal = rng.random() < 0.5
    if equal:
        query = blocks[index - 1]
    else:
        value = rng.getrandbits(q)
        if value == int(blocks[index - 1], 2):
            value ^= 1
        query = format(value, f"0{q}b")
    return EqIdxInstance(blocks=blocks, query=query, index=index)


def all_eqidx(p: int, q: int) -> Iterator[EqIdxInstance]:
    """크기 (p, q)의 모든 Equals-Index 인스턴스를 나열"""
    words = [format(value, f"0{q}b") for value in range(1 << q)]
    for blocks in itertools.product(words, repeat=p):
        for query in words:
            for index in range(1, p + 1):
                yield EqIdxInstance(blocks=blocks, query=query, index=index)

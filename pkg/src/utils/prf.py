"""
시드 기반 의사난수 함수 (PRF)

키는 blake2b로 유도하고, 원소별 해시는 splitmix64 최종화 함수로 계산한다.
스칼라 버전과 numpy 벡터 버전은 비트 단위로 같은 값을 낸다.
"""

import hashlib

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U_GOLDEN = np.uint64(GOLDEN)
_U_MIX1 = np.uint64(_MIX1)
_U_MIX2 = np.uint64(_MIX2)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)


def derive_key(*parts: object) -> int:
    """여러 구성요소로부터 64비트 키를 유도"""
    h = hashlib.blake2b(digest_size=8, person=b"sgt-sketch")
    for part in parts:
        h.update(repr(part).encode("utf-8"))
        h.update(b"\x1f")
    return int.from_bytes(h.digest(), "big")


def mix64(x: int) -> int:
    """splitmix64 최종화 (스칼라)"""
    x &= MASK64
    x = ((x ^ (x >> 30)) * _MIX1) & MASK64
    x = ((x ^ (x >> 27)) * _MIX2) & MASK64
    return x ^ (x >> 31)


def mix64_array(x: np.ndarray) -> np.ndarray:
    """splitmix64 최종화 (uint64 배열, 곱셈은 2^64에서 순환)"""
    x = np.asarray(x, dtype=np.uint64)
    x = np.multiply(x ^ (x >> _S30), _U_MIX1)
    x = np.multiply(x ^ (x >> _S27), _U_MIX2)
    return x ^ (x >> _S31)


def element_digest(element: int) -> int:
    """원소 번호를 섞어 키와 결합할 64비트 값으로 만든다"""
    return mix64(element + GOLDEN)


def prf64(key: int, element: int) -> int:
    """키와 원소에 대한 64비트 PRF 출력 (스칼라)"""
    return mix64(key ^ element_digest(element))


def prf64_array(keys: np.ndarray, element: int) -> np.ndarray:
    """키 배열 각각에 대한 PRF 출력; prf64와 같은 값"""
    digest = np.uint64(element_digest(element))
    return mix64_array(np.asarray(keys, dtype=np.uint64) ^ digest)


def key_stream(base_key: int, count: int) -> np.ndarray:
    """기준 키에서 count개의 독립 키를 펼친다 (splitmix64 수열)"""
    steps = np.arange(1, count + 1, dtype=np.uint64)
    return mix64_array(np.uint64(base_key & MASK64) + np.multiply(steps, _U_GOLDEN))


def below_rate(value: int, numerator: int, denominator: int) -> bool:
    """64비트 균등값이 numerator/denominator 확률 사건에 속하는지"""
    if numerator >= denominator:
        return True
    return value * denominator < numerator << 64

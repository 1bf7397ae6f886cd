"""
소수 판정 및 무작위 소수 생성

밀러-라빈 판정으로 인증한 고정 비트 길이의 무작위 소수를 만든다.
"""

import random
from functools import lru_cache

_SMALL_PRIMES = (
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151,
)


def miller_rabin(n: int, rounds: int, rng: random.Random) -> bool:
    """
    밀러-라빈 확률적 소수 판정

    Args:
        n: 판정할 정수
        rounds: 무작위 증인 개수
        rng: 증인을 뽑는 난수 생성기

    Returns:
        bool: 소수일 가능성이 있으면 True, 합성수가 확실하면 False
    """
    if n < 2:
        return False
    if n in (2, 3):
        return True
    if not n & 1:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False

    r, s = 0, n - 1
    while s % 2 == 0:
        r += 1
        s //= 2

    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, s, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = pow(x, 2, n)
            if x == n - 1:
                break
        else:
            return False
    return True


@lru_cache(maxsize=4096)
def random_prime(bits: int, seed: int, rounds: int = 30) -> int:
    """
    시드로 결정되는 bits 비트 무작위 소수 (기각 샘플링)

    최상위 비트를 세워 정확히 bits 비트가 되도록 한다.
    """
    if bits < 3:
        raise ValueError("소수 비트 수는 3 이상이어야 합니다")
    rng = random.Random(seed)
    while True:
        candidate = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if miller_rabin(candidate, rounds, rng):
            return candidate

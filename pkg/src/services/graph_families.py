"""
테스트/벤치용 그래프 계열

각 함수는 간선 목록을 만들고, graph_stream()이 이를 SGT 스트림으로 바꾼다.
"""

import itertools
import random
from typing import Iterable, Optional

from ..models.stream import Stream, StreamHeader, StreamModel, StreamToken

Edge = tuple[int, int]


def complete(n: int) -> list[Edge]:
    return list(itertools.combinations(range(n), 2))


def cycle(n: int) -> list[Edge]:
    return [(min(i, (i + 1) % n), max(i, (i + 1) % n)) for i in range(n)]


def path(n: int) -> list[Edge]:
    return [(i, i + 1) for i in range(n - 1)]


def star(leaves: int) -> list[Edge]:
    """중심 0, 잎 1..leaves"""
    return [(0, i) for i in range(1, leaves + 1)]


def hypercube(dim: int) -> list[Edge]:
    n = 1 << dim
    return [(v, v ^ (1 << b)) for v in range(n) for b in range(dim) if v < v ^ (1 << b)]


def complete_bipartite(a: int, b: int) -> list[Edge]:
    """왼쪽 0..a−1, 오른쪽 a..a+b−1"""
    return [(u, a + w) for u in range(a) for w in range(b)]


def minus_matching(n: int, size: int) -> list[Edge]:
    """K_n에서 (0,1), (2,3), … 의 size개 짝을 뺀 그래프"""
    removed = {(2 * i, 2 * i + 1) for i in range(size)}
    return [e for e in complete(n) if e not in removed]


def two_triangles() -> list[Edge]:
    return [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]


def graph_stream(
    n: int,
    edges: Iterable[Edge],
    alpha: int = 1,
    seed: Optional[int] = None,
    noise: int = 0,
) -> Stream:
    """
    간선 목록을 SGT 스트림으로 변환

    seed가 주어지면 각 간선에 무작위 빈도 ±[1, α]를 주고 토큰 순서를 섞는다.
    noise개의 추가 슬롯은 삽입 후 같은 크기로 삭제되어 지지 그래프에 남지 않는다.
    """
    header = StreamHeader(model=StreamModel.SGT, universe=n, alpha=alpha)
    edges = sorted({(min(u, v), max(u, v)) for u, v in edges})
    if seed is None:
        return Stream(header, [StreamToken.of_edge(u, v, 1) for u, v in edges])

    rng = random.Random(seed)
    tokens = []
    for u, v in edges:
        value = rng.randint(1, alpha)
        tokens.append(StreamToken.of_edge(u, v, value if rng.random() < 0.5 else -value))
    present = set(edges)
    absent = [e for e in itertools.combinations(range(n), 2) if e not in present]
    ghosts = []
    for u, v in rng.sample(absent, min(noise, len(absent))):
        value = rng.randint(1, alpha)
        tokens.append(StreamToken.of_edge(u, v, value))
        ghosts.append(StreamToken.of_edge(u, v, -value))
    rng.shuffle(tokens)
    return Stream(header, tokens + ghosts)

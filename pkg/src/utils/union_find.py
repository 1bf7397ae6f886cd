class UnionFind:
    """정수 원소 0..n-1 위의 서로소 집합 (대표 = 최소 원소)"""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]  # 경로 절반 압축
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        """두 집합을 합친다. 이미 같은 집합이면 False"""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.count -= 1
        return True

    def groups(self) -> dict[int, list[int]]:
        """대표 → 정렬된 구성원 목록"""
        out: dict[int, list[int]] = {}
        for v in range(len(self.parent)):
            out.setdefault(self.find(v), []).append(v)
        return out

    def roots(self) -> list[int]:
        return [self.find(v) for v in range(len(self.parent))]

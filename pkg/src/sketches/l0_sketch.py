"""
강한 ℓ0 샘플러

- SupportOneSketch: 지지 크기가 1일 때 비트 마스크 내적으로 색인을 복원
- SupportOneDetector: 4-분할 반복으로 지지 크기가 정확히 1인지 검출
- L0Sketch: 수준 i에서 2^-i 비율로 걸러낸 부분 우주마다 위 두 스케치를 둔 샘플러
- EqualitySketch: 한쪽은 삽입, 다른 쪽은 삭제하여 다중집합 동등성을 판정

L0Sketch는 모든 (수준, 반복) 카운터를 numpy int64 나머지 배열 하나에 담는다.
마지막 축의 배치는 [마스크 카운터 bits개, 합계 1개, 검출기 카운터 4·dr개]이다.
"""

import copy
import logging
import math
import struct
from dataclasses import dataclass
from typing import Callable, Optional, Protocol, Sequence

import numpy as np

from ..core.config import get_settings
from ..core.exceptions import SketchToolkitError
from ..utils.prf import derive_key, key_stream, prf64, prf64_array
from .counters import DecisionCounter, counter_prime

logger = logging.getLogger(__name__)

_MAGIC = b"L0SK"
_VERSION = 1
_HEADER = struct.Struct(">4sBQQIIIIQ")


class SketchShapeError(SketchToolkitError):
    """스케치 형태/시드/소수 불일치 또는 우주 밖 좌표"""
    pass


class CounterLike(Protocol):
    def ingest(self, delta: int) -> None: ...

    def is_zero(self) -> bool: ...


CounterFactory = Callable[[], CounterLike]


def index_bits(universe: int) -> int:
    """색인을 표현하는 비트 수 ⌈log₂N⌉ (최소 1)"""
    return max(1, (universe - 1).bit_length())


def decode_masks(mask_is_zero: Sequence[bool]) -> int:
    """마스크 i의 내적이 0이면 색인의 비트 i가 1"""
    return sum(1 << i for i, zero in enumerate(mask_is_zero) if zero)


def exactly_one_nonzero(parts: Sequence[bool]) -> bool:
    """한 반복의 4개 카운터 중 0이 아닌 것이 정확히 하나인지"""
    return sum(1 for nonzero in parts if nonzero) == 1


def _default_factory(seed: int) -> CounterFactory:
    prime = counter_prime(seed)
    return lambda: DecisionCounter(prime, seed)


class SupportOneSketch:
    """지지 크기 1 복원 스케치 (카운터 객체 기반)"""

    def __init__(self, universe: int, seed: int, counter_factory: Optional[CounterFactory] = None):
        if universe < 1:
            raise SketchShapeError("universe는 1 이상이어야 합니다")
        factory = counter_factory or _default_factory(seed)
        self.universe = universe
        self.seed = seed
        self.bits = index_bits(universe)
        self.masks = [factory() for _ in range(self.bits)]
        self.total = factory()

    def ingest(self, element: int, delta: int) -> None:
        if not 0 <= element < self.universe:
            raise SketchShapeError(f"원소 범위 초과: {element}")
        for i, counter in enumerate(self.masks):
            if not (element >> i) & 1:
                counter.ingest(delta)
        self.total.ingest(delta)

    def recover(self) -> int:
        return decode_masks([counter.is_zero() for counter in self.masks])


class SupportOneDetector:
    """지지 크기 1 검출기: 반복마다 원소를 4개 부분으로 나누고 부분별 카운터를 둔다"""

    def __init__(
        self,
        universe: int,
        repetitions: int,
        seed: int,
        counter_factory: Optional[CounterFactory] = None,
    ):
        if repetitions < 1:
            raise SketchShapeError("반복 수는 1 이상이어야 합니다")
        factory = counter_factory or _default_factory(seed)
        self.universe = universe
        self.seed = seed
        self.keys = [int(k) for k in key_stream(derive_key(seed, "detector"), repetitions)]
        self.counters = [[factory() for _ in range(4)] for _ in range(repetitions)]

    def part(self, repetition: int, element: int) -> int:
        return prf64(self.keys[repetition], element) >> 62

    def ingest(self, element: int, delta: int) -> None:
        if not 0 <= element < self.universe:
            raise SketchShapeError(f"원소 범위 초과: {element}")
        for rep, parts in enumerate(self.counters):
            parts[self.part(rep, element)].ingest(delta)

    def detect(self) -> bool:
        return all(
            exactly_one_nonzero([not c.is_zero() for c in parts]) for parts in self.counters
        )


def support_one_recover(sketch: SupportOneSketch) -> int:
    """지지 크기가 1이라는 약속 아래 그 색인을 복원 (약속이 깨지면 임의 값)"""
    return sketch.recover()


def support_one_detect(detector: SupportOneDetector) -> bool:
    return detector.detect()


@dataclass(frozen=True)
class SketchShape:
    universe: int
    levels: int
    repetitions: int
    detector_repetitions: int
    bits: int

    @classmethod
    def for_universe(
        cls,
        universe: int,
        alpha: int = 2,
        repetitions: Optional[int] = None,
        detector_repetitions: Optional[int] = None,
        factor: Optional[float] = None,
    ) -> "SketchShape":
        """
        우주 크기와 α로 기본 형태를 정한다.

        반복 수 기본값은 ⌈factor·(log₂N + log₂log₂α)⌉ 이고, 검출기 반복 수는
        지정하지 않으면 반복 수와 같다.
        """
        if universe < 1:
            raise SketchShapeError("universe는 1 이상이어야 합니다")
        bits = index_bits(universe)
        if repetitions is None:
            factor = factor if factor is not None else get_settings().l0_repetition_factor
            budget = math.log2(universe) + math.log2(max(1, max(alpha, 1).bit_length()))
            repetitions = max(1, math.ceil(factor * budget))
        if detector_repetitions is None:
            detector_repetitions = repetitions
        if repetitions < 1 or detector_repetitions < 1:
            raise SketchShapeError("반복 수는 1 이상이어야 합니다")
        return cls(universe, bits + 1, repetitions, detector_repetitions, bits)

    @property
    def width(self) -> int:
        return self.bits + 1 + 4 * self.detector_repetitions

    @property
    def array_shape(self) -> tuple[int, int, int]:
        return (self.levels, self.repetitions, self.width)


class L0Sketch:
    """
    강한 ℓ0 샘플러

    수준 l, 반복 r 쌍마다 시드 PRF로 원소를 2^-l 비율로 걸러내고,
    걸러진 원소에 대해 지지-1 복원 카운터와 검출기 카운터를 갱신한다.
    모든 카운터는 같은 소수를 공유한다.
    """

    def __init__(self, shape: SketchShape, seed: int, prime: Optional[int] = None):
        self.shape = shape
        self.seed = seed
        self.prime = prime if prime is not None else counter_prime(derive_key(seed, "l0-prime"))
        L, R, _ = shape.array_shape
        self.filter_keys = key_stream(derive_key(seed, "filter"), L * R).reshape(L, R)
        self.part_keys = key_stream(
            derive_key(seed, "part"), L * R * shape.detector_repetitions
        ).reshape(L, R, shape.detector_repetitions)
        # 수준 l은 PRF 상위 bits 비트 값이 2^(bits-l) 미만일 때 원소를 받는다
        self._shift = np.uint64(64 - shape.bits)
        self._thresholds = (
            np.uint64(1) << np.arange(shape.bits, -1, -1, dtype=np.uint64)
        ).reshape(L, 1)
        self._det_base = shape.bits + 1 + 4 * np.arange(shape.detector_repetitions)
        self.residues = np.zeros(shape.array_shape, dtype=np.int64)

    @classmethod
    def for_universe(cls, universe: int, alpha: int, seed: int, **shape_kwargs) -> "L0Sketch":
        return cls(SketchShape.for_universe(universe, alpha, **shape_kwargs), seed)

    def touch(self, element: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        원소 하나가 갱신하는 카운터 좌표 (수준, 반복, 열) 배열

        좌표는 서로 겹치지 않으므로 팬시 색인 대입으로 한 번에 더할 수 있다.
        """
        self._check_element(element)
        h = prf64_array(self.filter_keys, element)
        admitted = (h >> self._shift) < self._thresholds
        lv, rp = np.nonzero(admitted)

        base = [i for i in range(self.shape.bits) if not (element >> i) & 1]
        base.append(self.shape.bits)
        base_cols = np.broadcast_to(np.asarray(base, dtype=np.int64), (lv.size, len(base)))
        parts = (prf64_array(self.part_keys[lv, rp], element) >> np.uint64(62)).astype(np.int64)
        det_cols = self._det_base + parts
        cols = np.concatenate([base_cols, det_cols], axis=1)

        per_row = cols.shape[1]
        return np.repeat(lv, per_row), np.repeat(rp, per_row), cols.reshape(-1)

    def pattern(self, element: int) -> np.ndarray:
        """원소 하나의 갱신 패턴 (L, R, W) 0/1 배열"""
        out = np.zeros(self.shape.array_shape, dtype=bool)
        out[self.touch(element)] = True
        return out

    def _check_element(self, element: int) -> None:
        if not 0 <= element < self.shape.universe:
            raise SketchShapeError(f"원소 범위 초과: {element} (N={self.shape.universe})")

    def ingest(self, element: int, delta: int) -> None:
        self._check_element(element)
        if delta == 0:
            return
        index = self.touch(element)
        d = delta % self.prime
        self.residues[index] = (self.residues[index] + d) % self.prime

    def is_zero(self) -> bool:
        return not self.residues.any()

    def firing_pairs(self) -> np.ndarray:
        """모든 검출기 반복에서 비영 부분이 정확히 하나인 (수준, 반복) 쌍, 수준 우선 순서"""
        L, R, _ = self.shape.array_shape
        det = self.residues[:, :, self.shape.bits + 1:].reshape(
            L, R, self.shape.detector_repetitions, 4
        )
        fire = (np.count_nonzero(det, axis=3) == 1).all(axis=2)
        return np.argwhere(fire)

    def recover_pair(self, level: int, repetition: int) -> Optional[int]:
        """
        발화한 쌍에서 색인을 복원하고 일관성을 확인

        복원한 색인의 갱신 패턴에 합계를 곱한 값이 그 쌍의 나머지와 같아야 한다.
        """
        row = self.residues[level, repetition]
        index = decode_masks(row[: self.shape.bits] == 0)
        if index >= self.shape.universe:
            return None
        total = row[self.shape.bits]
        expected = np.where(self.pattern(index)[level, repetition], total, 0)
        if not np.array_equal(row, expected):
            logger.debug(f"일관성 검사 실패: 수준 {level}, 반복 {repetition}, 색인 {index}")
            return None
        return index

    def sample(self) -> Optional[int]:
        """지지 원소 하나, 또는 실패 시 None"""
        for level, repetition in self.firing_pairs():
            index = self.recover_pair(int(level), int(repetition))
            if index is not None:
                return index
        return None

    def _check_compatible(self, other: "L0Sketch") -> None:
        if self.shape != other.shape or self.seed != other.seed or self.prime != other.prime:
            raise SketchShapeError("시드/형태/소수가 다른 스케치는 병합할 수 없습니다")

    def with_residues(self, residues: np.ndarray) -> "L0Sketch":
        """같은 시드와 키를 공유하고 나머지만 다른 스케치"""
        if residues.shape != self.shape.array_shape:
            raise SketchShapeError(f"나머지 배열 형태 불일치: {residues.shape}")
        clone = copy.copy(self)
        clone.residues = residues
        return clone

    def merge(self, other: "L0Sketch") -> "L0Sketch":
        self._check_compatible(other)
        return self.with_residues((self.residues + other.residues) % self.prime)

    def to_bytes(self) -> bytes:
        """버전 있는 이진 프레임 (시드, 형태, 소수, 빅엔디언 나머지)"""
        s = self.shape
        header = _HEADER.pack(
            _MAGIC, _VERSION, self.seed, s.universe, s.levels,
            s.repetitions, s.detector_repetitions, s.bits, self.prime,
        )
        return header + self.residues.astype(">i8").tobytes()

    @classmethod
    def from_bytes(cls, data: bytes) -> "L0Sketch":
        if len(data) < _HEADER.size:
            raise SketchShapeError("스케치 프레임이 너무 짧습니다")
        magic, version, seed, universe, levels, reps, det_reps, bits, prime = _HEADER.unpack_from(data)
        if magic != _MAGIC or version != _VERSION:
            raise SketchShapeError(f"알 수 없는 스케치 프레임: {magic!r} v{version}")
        shape = SketchShape(universe, levels, reps, det_reps, bits)
        sketch = cls(shape, seed, prime)
        body = np.frombuffer(data, dtype=">i8", offset=_HEADER.size)
        if body.size != int(np.prod(shape.array_shape)):
            raise SketchShapeError("스케치 프레임 길이가 형태와 맞지 않습니다")
        sketch.residues = body.astype(np.int64).reshape(shape.array_shape)
        return sketch


class EqualitySketch:
    """다중집합 동등성 판정: A쪽은 +1, B쪽은 −1로 같은 샘플러에 넣는다"""

    def __init__(self, sketch: L0Sketch):
        self.sketch = sketch

    @classmethod
    def for_universe(cls, universe: int, seed: int, **shape_kwargs) -> "EqualitySketch":
        return cls(L0Sketch(SketchShape.for_universe(universe, **shape_kwargs), seed))

    def insert(self, element: int, count: int = 1) -> None:
        self.sketch.ingest(element, count)

    def delete(self, element: int, count: int = 1) -> None:
        self.sketch.ingest(element, -count)


def sketch_ingest(sketch: L0Sketch, element: int, delta: int) -> None:
    sketch.ingest(element, delta)


def l0_sample(sketch: L0Sketch) -> Optional[int]:
    return sketch.sample()


def sketch_merge(a: L0Sketch, b: L0Sketch) -> L0Sketch:
    return a.merge(b)


def multiset_equal(equality: EqualitySketch) -> bool:
    """샘플러가 실패하고 모든 카운터가 0이면 두 다중집합이 같다"""
    return equality.sketch.sample() is None and equality.sketch.is_zero()

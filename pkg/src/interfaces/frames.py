"""
증명 프레임 코덱

프레임 = 헤더 `>BI` (종류 1바이트, 본문 길이 4바이트) + 본문.
본문은 지그재그 varint로 부호화한 정수 나열이다.
"""

import io
import logging
import struct
from dataclasses import dataclass
from enum import IntEnum
from typing import BinaryIO, Iterator, Sequence

from ..core.config import get_settings
from ..core.exceptions import SketchToolkitError

logger = logging.getLogger(__name__)

HEADER = struct.Struct(">BI")
HEADER_SIZE = HEADER.size


class FrameError(SketchToolkitError):
    """프레임 형식 오류 (잘림, 과대, 알 수 없는 종류, 잘못된 varint)"""
    pass


class FrameKind(IntEnum):
    CLAIM = 1
    DISCLOSE = 2
    USAGE = 3
    CUT = 4
    TERMINALS = 5
    LAYERED = 6
    VERTEX = 7
    PATH = 8
    RESIDUAL = 9
    END = 10
    VERDICT = 11


@dataclass(frozen=True)
class Frame:
    kind: FrameKind
    values: tuple[int, ...]

    @property
    def size_bytes(self) -> int:
        return HEADER_SIZE + len(encode_values(self.values))


def _zigzag(value: int) -> int:
    return value << 1 if value >= 0 else ((-value) << 1) - 1


def _unzigzag(value: int) -> int:
    return value >> 1 if not value & 1 else -((value + 1) >> 1)


def encode_values(values: Sequence[int]) -> bytes:
    out = bytearray()
    for value in values:
        z = _zigzag(int(value))
        while True:
            byte = z & 0x7F
            z >>= 7
            if z:
                out.append(byte | 0x80)
            else:
                out.append(byte)
                break
    return bytes(out)


def decode_values(payload: bytes) -> tuple[int, ...]:
    values = []
    z = shift = 0
    pending = False
    for byte in payload:
        z |= (byte & 0x7F) << shift
        shift += 7
        pending = True
        if not byte & 0x80:
            values.append(_unzigzag(z))
            z = shift = 0
            pending = False
    if pending:
        raise FrameError("varint가 중간에 끊겼습니다")
    return tuple(values)


def encode_frame(kind: FrameKind, values: Sequence[int] = ()) -> bytes:
    payload = encode_values(values)
    return HEADER.pack(int(kind), len(payload)) + payload


def read_frames(source: BinaryIO, max_frame_bytes: int | None = None) -> Iterator[Frame]:
    """
    바이트 스트림에서 프레임을 하나씩 읽는다.

    한 번에 한 프레임만 메모리에 둔다.

    Raises:
        FrameError: 잘린 헤더/본문, max_frame_bytes 초과, 알 수 없는 종류
    """
    limit = max_frame_bytes if max_frame_bytes is not None else get_settings().max_frame_bytes
    while True:
        header = source.read(HEADER_SIZE)
        if not header:
            return
        if len(header) < HEADER_SIZE:
            raise FrameError("프레임 헤더가 잘렸습니다")
        kind, length = HEADER.unpack(header)
        if length > limit:
            raise FrameError(f"프레임이 너무 큽니다: {length} > {limit}")
        try:
            frame_kind = FrameKind(kind)
        except ValueError:
            raise FrameError(f"알 수 없는 프레임 종류: {kind}")
        payload = source.read(length)
        if len(payload) < length:
            raise FrameError("프레임 본문이 잘렸습니다")
        yield Frame(frame_kind, decode_values(payload))


def iter_frames(data: bytes, max_frame_bytes: int | None = None) -> Iterator[Frame]:
    return read_frames(io.BytesIO(data), max_frame_bytes)


class FrameWriter:
    """프레임을 모아 바이트로 만들고 hcost를 센다"""

    def __init__(self):
        self._buffer = bytearray()
        self.count = 0

    def write(self, kind: FrameKind, values: Sequence[int] = ()) -> None:
        self._buffer += encode_frame(kind, values)
        self.count += 1

    @property
    def size_bytes(self) -> int:
        return len(self._buffer)

    def getvalue(self) -> bytes:
        return bytes(self._buffer)

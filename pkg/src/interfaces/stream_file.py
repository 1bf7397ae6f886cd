"""
스트림 파일 입출력

형식:
    첫 줄   `ELEM <N> <alpha>` 또는 `SGT <n> <alpha>`
    이후    `<i> <±delta>` 또는 `<u> <v> <±delta>`
    `#` 이후는 주석, UTF-8, 줄바꿈 종료
"""

import logging
from pathlib import Path
from typing import Union

from pydantic import ValidationError

from ..models.stream import (
    Stream,
    StreamFormatError,
    StreamHeader,
    StreamModel,
    StreamToken,
)

logger = logging.getLogger(__name__)


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0].strip()


def _parse_int(text: str, what: str, line_number: int) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise StreamFormatError(f"{what}이(가) 정수가 아닙니다: {text!r}", line_number)


def _parse_header(fields: list[str], line_number: int) -> StreamHeader:
    if len(fields) != 3:
        raise StreamFormatError("헤더는 `<모델> <우주> <alpha>` 형식이어야 합니다", line_number)
    try:
        model = StreamModel(fields[0])
    except ValueError:
        raise StreamFormatError(f"알 수 없는 스트림 모델: {fields[0]!r}", line_number)
    universe = _parse_int(fields[1], "우주 크기", line_number)
    alpha = _parse_int(fields[2], "alpha", line_number)
    try:
        return StreamHeader(model=model, universe=universe, alpha=alpha)
    except ValidationError as e:
        raise StreamFormatError(f"잘못된 헤더: {e.errors()[0]['msg']}", line_number)


def _parse_token(header: StreamHeader, fields: list[str], line_number: int) -> StreamToken:
    if header.is_graph:
        if len(fields) != 3:
            raise StreamFormatError("간선 줄은 `<u> <v> <±delta>` 형식이어야 합니다", line_number)
        u = _parse_int(fields[0], "정점", line_number)
        v = _parse_int(fields[1], "정점", line_number)
        delta = _parse_int(fields[2], "delta", line_number)
        try:
            token = StreamToken.of_edge(u, v, delta)
        except StreamFormatError as e:
            raise StreamFormatError(str(e), line_number)
    else:
        if len(fields) != 2:
            raise StreamFormatError("원소 줄은 `<i> <±delta>` 형식이어야 합니다", line_number)
        element = _parse_int(fields[0], "원소", line_number)
        delta = _parse_int(fields[1], "delta", line_number)
        try:
            token = StreamToken.of_element(element, delta)
        except StreamFormatError as e:
            raise StreamFormatError(str(e), line_number)
    header.check_token(token, line_number)
    return token


def parse_stream(text: str) -> tuple[StreamHeader, Stream]:
    """
    스트림 텍스트를 파싱합니다.

    Args:
        text: 스트림 파일 내용

    Returns:
        (헤더, 스트림)

    Raises:
        StreamFormatError: 형식 오류 (행 번호 포함), 우주 밖 토큰, 자기 루프
    """
    header = None
    tokens: list[StreamToken] = []
    for line_number, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw)
        if not content:
            continue
        fields = content.split()
        if header is None:
            header = _parse_header(fields, line_number)
            continue
        tokens.append(_parse_token(header, fields, line_number))

    if header is None:
        raise StreamFormatError("헤더 줄이 없습니다", 1)
    return header, Stream(header, tokens)


def emit_token(token: StreamToken) -> str:
    if token.element is not None:
        return f"{token.element} {token.delta:+d}"
    return f"{token.u} {token.v} {token.delta:+d}"


def emit_stream(header: StreamHeader, stream: Stream, comment: str = "") -> str:
    """
    스트림을 텍스트로 직렬화합니다. 간선은 작은 정점이 먼저 온다.

    Args:
        header: 스트림 헤더
        stream: 토큰 순서열
        comment: 헤더 다음 줄에 넣을 주석 (선택)
    """
    lines = [f"{header.model.value} {header.universe} {header.alpha}"]
    if comment:
        lines.append(f"# {comment}")
    lines.extend(emit_token(token) for token in stream.tokens)
    return "\n".join(lines) + "\n"


def read_stream(path: Union[str, Path]) -> tuple[StreamHeader, Stream]:
    """파일에서 스트림을 읽는다"""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"스트림 파일을 찾을 수 없습니다: {path}")
    header, stream = parse_stream(path.read_text(encoding="utf-8"))
    logger.debug(f"스트림 로드: {path.name} ({header.model.value}, 토큰 {len(stream)}개)")
    return header, stream


def write_stream(path: Union[str, Path], stream: Stream, comment: str = "") -> None:
    Path(path).write_text(emit_stream(stream.header, stream, comment), encoding="utf-8")

"""
스트리밍 검증자

입력 스트림을 먼저 스케치 A에 넣고, 증명 프레임을 한 번에 하나씩 처리한다.

- A: 입력 빈도 − 공개 빈도 (공개가 입력과 같은지)
- B: 장부. 공개 간선마다 M·|f|를 넣고 사용 횟수와 잔여량을 뺀다 (SGT는 부호별 B+, B−)
- C: 동적 방식의 사용 횟수 선언 − 실제 경로 사용
- D: 정점별 서로소 목록 − 경로 내용 (정점마다 검사 후 비운다)

검증자는 처리 중인 프레임과 미리 본 프레임 하나만 들고 있으며,
그 크기와 스케치, 레지스터, 저장한 집합을 합한 최대값을 vcost로 잰다.
"""

import logging
from typing import Iterable, Iterator, Optional

from ..core.config import get_settings
from ..interfaces.frames import Frame, FrameError, FrameKind
from ..models.proof import CheckId, ConnectivityMode, Verdict
from ..models.stream import StreamHeader, StreamToken, TokenKind, edge_slot, slot_count
from ..sketches.l0_sketch import L0Sketch, SketchShape
from ..utils.prf import derive_key
from .layering import Layering
from .plan import ProtocolError, SchemePlan, TerminalStyle

logger = logging.getLogger(__name__)

REGISTERS = 32


class ProofRejected(Exception):
    """프레임 처리 중 검사 실패 (판정 REJECT로 바뀐다)"""

    def __init__(self, check: CheckId, detail: str = ""):
        self.check = check
        super().__init__(f"{check.value}: {detail}" if detail else check.value)


def _is_zero(sketch: L0Sketch) -> bool:
    return sketch.sample() is None and sketch.is_zero()


class _Lookahead:
    """프레임 한 개 미리보기"""

    def __init__(self, frames: Iterable[Frame]):
        self._it: Iterator[Frame] = iter(frames)
        self._peeked: Optional[Frame] = None
        self._done = False

    def peek(self) -> Optional[Frame]:
        if self._peeked is None and not self._done:
            try:
                self._peeked = next(self._it)
            except StopIteration:
                self._done = True
        return self._peeked

    def next(self) -> Optional[Frame]:
        frame = self.peek()
        self._peeked = None
        return frame

    @property
    def buffered_bytes(self) -> int:
        return self._peeked.size_bytes if self._peeked is not None else 0


class Verifier:
    """
    방식 하나에 대한 검증자

    Args:
        header: 입력 스트림 헤더 (SGT)
        plan: 방식 계획 (증명자와 같은 것)
        seed: 검증자 시드
        accept_only: 계층 증명 단독 검증이면 True (판정이 ACCEPT)
    """

    def __init__(self, header: StreamHeader, plan: SchemePlan, seed: int, accept_only: bool = False):
        if not header.is_graph:
            raise ProtocolError("검증자는 SGT 스트림만 받습니다")
        settings = get_settings()
        self.header = header
        self.plan = plan
        self.n = plan.n
        self.k = plan.k
        self.mode = plan.mode
        self.accept_only = accept_only
        self.slot_n = plan.working_n
        self.counter_bits = settings.counter_prime_bits

        vseed = derive_key(seed, "verifier")
        shape = SketchShape.for_universe(
            max(1, slot_count(self.slot_n)),
            header.alpha,
            repetitions=settings.verifier_sampler_repetitions,
            detector_repetitions=settings.verifier_detector_repetitions,
        )
        self.input_sketch = L0Sketch(shape, derive_key(vseed, "input"))
        if plan.signed:
            self.ledgers = {
                1: L0Sketch(shape, derive_key(vseed, "ledger", 1)),
                -1: L0Sketch(shape, derive_key(vseed, "ledger", -1)),
            }
            self.usage_sketch = None
        else:
            self.ledgers = {1: L0Sketch(shape, derive_key(vseed, "ledger", 1))}
            self.usage_sketch = L0Sketch(shape, derive_key(vseed, "usage"))
        d_universe = self.slot_n if self.mode is ConnectivityMode.VERTEX else max(1, slot_count(self.slot_n))
        self.disjoint_sketch = L0Sketch(
            SketchShape.for_universe(
                d_universe,
                repetitions=settings.verifier_sampler_repetitions,
                detector_repetitions=settings.verifier_detector_repetitions,
            ),
            derive_key(vseed, "disjoint"),
        )

        self.stored_words = 0
        self.peak_bits = 0
        self._frames: Optional[_Lookahead] = None
        self._current_bytes = 0
        self._account()

    # ------------------------------------------------------------------
    # 비용

    def _sketches(self) -> list[L0Sketch]:
        out = [self.input_sketch, *self.ledgers.values(), self.disjoint_sketch]
        if self.usage_sketch is not None:
            out.append(self.usage_sketch)
        return out

    def _account(self) -> None:
        counters = sum(s.residues.size for s in self._sketches())
        buffered = self._current_bytes + (self._frames.buffered_bytes if self._frames else 0)
        bits = (
            counters * self.counter_bits
            + REGISTERS * 64
            + self.stored_words * 64
            + buffered * 8
        )
        self.peak_bits = max(self.peak_bits, bits)

    # ------------------------------------------------------------------
    # 입력 스트림

    def ingest(self, token: StreamToken) -> None:
        if token.kind is not TokenKind.EDGE or token.v >= self.n:
            raise ProtocolError(f"검증자 입력 범위 초과: {token}")
        self.input_sketch.ingest(edge_slot(token.u, token.v, self.slot_n), token.delta)

    # ------------------------------------------------------------------
    # 프레임 처리

    def _next(self, kind: FrameKind) -> Frame:
        frame = self._frames.next()
        if frame is None or frame.kind is not kind:
            got = frame.kind.name if frame is not None else "끝"
            raise ProofRejected(CheckId.FRAME_ORDER, f"{kind.name} 대신 {got}")
        self._current_bytes = frame.size_bytes
        self._account()
        return frame

    def _peek_kind(self) -> Optional[FrameKind]:
        frame = self._frames.peek()
        self._account()
        return frame.kind if frame is not None else None

    def _real_edge(self, u: int, v: int, check: CheckId) -> int:
        if not 0 <= u < v < self.n:
            raise ProofRejected(check, f"잘못된 간선 ({u}, {v})")
        return edge_slot(u, v, self.slot_n)

    def verify(self, frames: Iterable[Frame]) -> Verdict:
        """프레임을 끝까지 처리하고 판정을 낸다"""
        self._frames = _Lookahead(frames)
        try:
            verdict = self._run()
        except ProofRejected as e:
            logger.info(f"검증 거부: {e}")
            return Verdict.reject(e.check)
        except FrameError as e:
            logger.info(f"프레임 오류로 거부: {e}")
            return Verdict.reject(CheckId.FRAME_FORMAT)
        return verdict

    def _run(self) -> Verdict:
        claim = self._next(FrameKind.CLAIM).values
        if claim not in ((0,), (1,)):
            raise ProofRejected(CheckId.CLAIM, f"주장 값 {claim}")

        if claim == (0,):
            if self.accept_only:
                raise ProofRejected(CheckId.CLAIM, "계층 증명 검증에는 연결 주장이 필요합니다")
            cut = self._read_cut()
            self._read_disclosure(cut)
            self._finish()
            return Verdict.output(False)

        self._read_disclosure(None)
        if not self.plan.signed:
            self._read_usage()
        for terminal, virtual_set in self._read_terminals():
            self._read_layered(terminal, virtual_set)
        self._read_residuals()
        self._finish()

        for sign, ledger in self.ledgers.items():
            if not _is_zero(ledger):
                raise ProofRejected(CheckId.LEDGER, f"장부 {sign:+d}")
        if self.usage_sketch is not None and not _is_zero(self.usage_sketch):
            raise ProofRejected(CheckId.USAGE_COUNT, "사용 횟수 선언과 실제 사용이 다릅니다")
        return Verdict.accept() if self.accept_only else Verdict.output(True)

    def _finish(self) -> None:
        self._next(FrameKind.END)
        if self._frames.peek() is not None:
            raise ProofRejected(CheckId.FRAME_ORDER, "END 뒤에 프레임이 있습니다")

    # ------------------------------------------------------------------
    # 공개 / 사용 횟수 / 잔여량

    def _read_disclosure(self, cut: Optional[dict]) -> None:
        previous = None
        scale = self.plan.ledger_scale
        while self._peek_kind() is FrameKind.DISCLOSE:
            values = self._next(FrameKind.DISCLOSE).values
            if len(values) != 3 or values[2] == 0:
                raise ProofRejected(CheckId.FRAME_FORMAT, "DISCLOSE는 [u, v, f≠0]")
            u, v, f = values
            slot = self._real_edge(u, v, CheckId.DISCLOSURE_ORDER)
            key = ((0 if f > 0 else 1), slot) if self.plan.signed else (0, slot)
            if previous is not None and key <= previous:
                raise ProofRejected(CheckId.DISCLOSURE_ORDER, f"({u}, {v}) 순서 위반")
            previous = key
            self.input_sketch.ingest(slot, -f)
            if cut is not None:
                self._check_allowed(cut, u, v)
            else:
                sign = 1 if (f > 0 or not self.plan.signed) else -1
                self.ledgers[sign].ingest(slot, scale * abs(f))
        if not _is_zero(self.input_sketch):
            raise ProofRejected(CheckId.DISCLOSURE_EQUALITY, "공개된 간선이 입력과 다릅니다")

    def _read_usage(self) -> None:
        previous = -1
        while self._peek_kind() is FrameKind.USAGE:
            values = self._next(FrameKind.USAGE).values
            if len(values) != 3:
                raise ProofRejected(CheckId.FRAME_FORMAT, "USAGE는 [u, v, c]")
            u, v, c = values
            slot = self._real_edge(u, v, CheckId.USAGE_ORDER)
            if slot <= previous:
                raise ProofRejected(CheckId.USAGE_ORDER, f"({u}, {v}) 순서 위반")
            if c < 1:
                raise ProofRejected(CheckId.USAGE_COUNT, f"사용 횟수 {c}")
            previous = slot
            self.ledgers[1].ingest(slot, -c)
            self.usage_sketch.ingest(slot, c)

    def _read_residuals(self) -> None:
        while self._peek_kind() is FrameKind.RESIDUAL:
            values = self._next(FrameKind.RESIDUAL).values
            if len(values) != 4:
                raise ProofRejected(CheckId.FRAME_FORMAT, "RESIDUAL은 [u, v, sign, r]")
            u, v, sign, r = values
            slot = self._real_edge(u, v, CheckId.RESIDUAL)
            if sign not in self.ledgers or r < 1:
                raise ProofRejected(CheckId.RESIDUAL, f"부호 {sign}, 잔여량 {r}")
            self.ledgers[sign].ingest(slot, -r)

    # ------------------------------------------------------------------
    # 절단

    def _read_cut(self) -> dict:
        values = list(self._next(FrameKind.CUT).values)
        try:
            mode_code = values.pop(0)
            cut_vertices = [values.pop(0) for _ in range(values.pop(0))]
            cut_edges = []
            for _ in range(values.pop(0)):
                cut_edges.append((values.pop(0), values.pop(0)))
            side = [values.pop(0) for _ in range(values.pop(0))]
        except IndexError:
            raise ProofRejected(CheckId.FRAME_FORMAT, "CUT 본문이 짧습니다")
        if values:
            raise ProofRejected(CheckId.FRAME_FORMAT, "CUT 본문이 깁니다")

        expected = 0 if self.mode is ConnectivityMode.VERTEX else 1
        if mode_code != expected:
            raise ProofRejected(CheckId.CUT_SHAPE, "모드가 다릅니다")
        self.stored_words += len(cut_vertices) + len(side) + 2 * len(cut_edges)
        self._account()

        if self.mode is ConnectivityMode.VERTEX and self.n <= self.k:
            # 정점이 k개 이하인 그래프는 k-정점 연결일 수 없다
            return {"trivial": True}

        x, s = set(cut_vertices), set(side)
        in_range = all(0 <= v < self.n for v in (*x, *s))
        if (
            not in_range
            or len(x) != len(cut_vertices)
            or len(s) != len(side)
            or not s
            or x & s
            or len(x) + len(s) >= self.n
        ):
            raise ProofRejected(CheckId.CUT_SHAPE, "S/X 형태 위반")
        if self.mode is ConnectivityMode.VERTEX:
            if len(x) > self.k - 1 or cut_edges:
                raise ProofRejected(CheckId.CUT_SHAPE, f"|X| = {len(x)}")
        else:
            edges = {(min(a, b), max(a, b)) for a, b in cut_edges}
            if x or len(edges) != len(cut_edges) or len(edges) > self.k - 1:
                raise ProofRejected(CheckId.CUT_SHAPE, f"절단 간선 {len(cut_edges)}개")
            return {"trivial": False, "x": x, "s": s, "edges": edges}
        return {"trivial": False, "x": x, "s": s, "edges": set()}

    def _check_allowed(self, cut: dict, u: int, v: int) -> None:
        if cut["trivial"]:
            return
        x, s = cut["x"], cut["s"]
        if self.mode is ConnectivityMode.VERTEX:
            if u in x or v in x:
                return
            if (u in s) != (v in s):
                raise ProofRejected(CheckId.CUT_CROSSING, f"({u}, {v})가 S와 T를 잇습니다")
        elif (u in s) != (v in s) and (u, v) not in cut["edges"]:
            raise ProofRejected(CheckId.CUT_CROSSING, f"({u}, {v})가 선언되지 않은 절단 간선입니다")

    # ------------------------------------------------------------------
    # 단말과 계층 증명

    def _strictly_increasing(self, values: list[int]) -> bool:
        return all(a < b for a, b in zip(values, values[1:]))

    def _read_terminals(self) -> list[tuple[int, Optional[set[int]]]]:
        values = list(self._next(FrameKind.TERMINALS).values)
        plan = self.plan
        self.stored_words += len(values)
        self._account()

        if plan.style is TerminalStyle.SETS:
            size = 2 * self.k
            if len(values) != 2 * size + 2 or values[0] != size or values[size + 1] != size:
                raise ProofRejected(CheckId.TERMINALS, "단말 집합 크기 위반")
            left, right = values[1:size + 1], values[size + 2:]
            for group in (left, right):
                if not self._strictly_increasing(group) or not all(0 <= t < self.n for t in group):
                    raise ProofRejected(CheckId.TERMINALS, "단말 집합 형태 위반")
            if set(left) & set(right):
                raise ProofRejected(CheckId.TERMINALS, "T_L과 T_R이 겹칩니다")
            return [(self.n, set(left)), (self.n, set(right))]

        if not values or values[0] != len(values) - 1:
            raise ProofRejected(CheckId.TERMINALS, "단말 개수 필드 불일치")
        terminals = values[1:]
        if not all(0 <= t < self.n for t in terminals) or not self._strictly_increasing(terminals):
            raise ProofRejected(CheckId.TERMINALS, "단말은 서로 다르고 오름차순이어야 합니다")
        if plan.style is TerminalStyle.LIST and len(terminals) != self.k:
            raise ProofRejected(CheckId.TERMINALS, f"단말 {len(terminals)}개, 필요 {self.k}개")
        if plan.style is TerminalStyle.SINGLE and len(terminals) != 1:
            raise ProofRejected(CheckId.TERMINALS, "단말은 하나여야 합니다")
        if plan.style is TerminalStyle.PUBLIC and tuple(terminals) != plan.public_terminals:
            raise ProofRejected(CheckId.TERMINALS, "공개 난수로 뽑은 단말과 다릅니다")
        if plan.style is TerminalStyle.FIXED and terminals != [plan.fixed_terminal]:
            raise ProofRejected(CheckId.TERMINALS, "지정한 단말과 다릅니다")
        return [(t, None) for t in terminals]

    def _read_layered(self, terminal: int, virtual_set: Optional[set[int]]) -> None:
        values = self._next(FrameKind.LAYERED).values
        if len(values) != 4:
            raise ProofRejected(CheckId.FRAME_FORMAT, "LAYERED는 [terminal, seed, count, k]")
        announced, layering_seed, count, k_paths = values
        if announced != terminal or k_paths != self.k or not 0 <= layering_seed < 1 << 64:
            raise ProofRejected(CheckId.LAYERING_HEADER, "단말/시드/k 불일치")
        expected_count = self.n - (1 if terminal < self.n else 0)
        if count != expected_count:
            raise ProofRejected(CheckId.LAYERING_HEADER, f"정점 수 {count}, 필요 {expected_count}")

        layering = Layering(self.n, self.k, layering_seed)
        self.stored_words += layering.layers + 1
        self._account()
        current = None
        for _ in range(count):
            current = layering.next_after(current, terminal)
            self._read_vertex(current, terminal, layering, virtual_set)
        self.stored_words -= layering.layers + 1

    def _read_vertex(
        self,
        expected: tuple[int, int],
        terminal: int,
        layering: Layering,
        virtual_set: Optional[set[int]],
    ) -> None:
        values = self._next(FrameKind.VERTEX).values
        if len(values) < 3 or len(values) != 3 + values[2]:
            raise ProofRejected(CheckId.FRAME_FORMAT, "VERTEX는 [v, layer, m, items×m]")
        vertex, layer = values[0], values[1]
        if (layer, vertex) != expected:
            raise ProofRejected(CheckId.COVERAGE, f"({layer}, {vertex}) 대신 {expected}")
        items = list(values[3:])
        if not self._strictly_increasing(items):
            raise ProofRejected(CheckId.DISJOINTNESS_ORDER, f"정점 {vertex}의 목록")
        d_universe = self.disjoint_sketch.shape.universe
        for item in items:
            if not 0 <= item < d_universe:
                raise ProofRejected(CheckId.DISJOINTNESS_ORDER, f"목록 항목 {item}")
            self.disjoint_sketch.ingest(item, 1)

        direct = 0
        for _ in range(self.k):
            path = self._read_path(vertex, layer, terminal, layering, virtual_set)
            if len(path) == 2 and layer == 0:
                direct += 1
        # 단말로 바로 가는 간선은 D에 흔적을 남기지 않으므로 따로 센다
        if self.mode is ConnectivityMode.VERTEX and direct > 1:
            raise ProofRejected(CheckId.DISJOINTNESS, f"정점 {vertex}의 직접 경로가 {direct}개입니다")

        if not _is_zero(self.disjoint_sketch):
            raise ProofRejected(CheckId.DISJOINTNESS, f"정점 {vertex}의 경로가 서로소가 아닙니다")
        self.disjoint_sketch.residues[...] = 0

    def _is_target(self, x: int, layer: int, terminal: int, layering: Layering) -> bool:
        if layer == 0:
            return x == terminal
        return x < self.n and layering.in_set(layer - 1, x)

    def _read_path(
        self,
        vertex: int,
        layer: int,
        terminal: int,
        layering: Layering,
        virtual_set: Optional[set[int]],
    ) -> list[int]:
        values = self._next(FrameKind.PATH).values
        if not values:
            raise ProofRejected(CheckId.PATH_SHAPE, "빈 PATH")
        length = values[0]
        expected_len = 1 + length + (length - 1 if self.plan.signed else 0)
        if length < 2 or len(values) != expected_len:
            raise ProofRejected(CheckId.PATH_SHAPE, f"경로 길이 {length}")
        path = list(values[1:1 + length])
        signs = list(values[1 + length:])

        if path[0] != vertex or vertex in path[1:]:
            raise ProofRejected(CheckId.PATH_SHAPE, f"경로가 정점 {vertex}에서 시작하지 않습니다")
        if not all(0 <= x < self.slot_n for x in path) or any(a == b for a, b in zip(path, path[1:])):
            raise ProofRejected(CheckId.PATH_SHAPE, "경로 정점 범위/반복 위반")
        if not self._is_target(path[-1], layer, terminal, layering):
            raise ProofRejected(CheckId.PATH_TARGET, f"끝점 {path[-1]}이 목표가 아닙니다")
        if any(self._is_target(x, layer, terminal, layering) for x in path[1:-1]):
            raise ProofRejected(CheckId.PATH_TARGET, "경로 내부가 목표를 지납니다")

        if self.mode is ConnectivityMode.VERTEX:
            for x in path[1:]:
                if not (layer == 0 and x == terminal):
                    self.disjoint_sketch.ingest(x, -1)

        for i, (a, b) in enumerate(zip(path, path[1:])):
            if virtual_set is not None and self.n in (a, b):
                other = a if b == self.n else b
                if other not in virtual_set:
                    raise ProofRejected(CheckId.VIRTUAL_EDGE, f"가상 정점과 {other}를 잇는 간선")
                slot = edge_slot(a, b, self.slot_n)
            else:
                if max(a, b) >= self.n:
                    raise ProofRejected(CheckId.PATH_SHAPE, f"({a}, {b})는 입력 정점이 아닙니다")
                slot = edge_slot(a, b, self.slot_n)
                if self.plan.signed:
                    sign = signs[i]
                    if sign not in (1, -1):
                        raise ProofRejected(CheckId.SIGN, f"부호 {sign}")
                    self.ledgers[sign].ingest(slot, -1)
                else:
                    self.usage_sketch.ingest(slot, -1)
            if self.mode is ConnectivityMode.EDGE:
                self.disjoint_sketch.ingest(slot, -1)
        return path

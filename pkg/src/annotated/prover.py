"""
증명자

지지 그래프를 정확히 계산해 연결성 여부를 먼저 정한 뒤, 연결이면 계층 증명들을,
아니면 절단 증명을 프레임으로 만든다. behavior가 정직이 아니면 정해진 한 곳을 변조한다.

연결 주장 프레임 순서:
    CLAIM[1], DISCLOSE*, USAGE* (동적 방식), TERMINALS,
    (LAYERED, (VERTEX, PATH×k)*)*, RESIDUAL*, END
비연결 주장 프레임 순서:
    CLAIM[0], CUT, DISCLOSE*, END
"""

import copy
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from ..core.exceptions import SketchToolkitError
from ..interfaces.frames import FrameKind, FrameWriter
from ..models.proof import (
    ConnectivityMode,
    CutProof,
    LayeredProof,
    ProverBehavior,
    SchemeId,
)
from ..models.stream import Stream, edge_slot
from ..oracles.exact import ExactGraph, exact_support, min_cut, min_cut_partition, minimum_vertex_cut, vertex_connectivity
from ..services.graph_families import complete
from ..utils.prf import derive_key
from .layering import disjointness_items, layering_prove
from .plan import ProtocolError, SchemePlan, TerminalStyle

logger = logging.getLogger(__name__)

Disclosure = list[tuple[int, int, int]]


class NoSuchCutError(SketchToolkitError):
    """그래프가 실제로 k-연결이라 절단 증명이 없음"""

    code = "NO_SUCH_CUT"


def is_k_connected(graph: ExactGraph, k: int, mode: ConnectivityMode) -> bool:
    """정점 모드는 n > k이고 정점 연결도 ≥ k, 간선 모드는 최소 절단 ≥ k"""
    if mode is ConnectivityMode.VERTEX:
        return graph.n > k and vertex_connectivity(graph) >= k
    return graph.n < 2 or min_cut(graph) >= k


def prove_not_k_connected(stream: Stream, k: int, mode: ConnectivityMode) -> CutProof:
    """
    오라클이 찾은 최소 절단으로 절단 증명을 만든다.

    Raises:
        NoSuchCutError: 그래프가 해당 모드에서 k-연결인 경우
    """
    graph = exact_support(stream)
    return cut_proof(graph, k, mode)


def cut_proof(graph: ExactGraph, k: int, mode: ConnectivityMode) -> CutProof:
    if is_k_connected(graph, k, mode):
        raise NoSuchCutError(f"그래프가 {mode.value} 모드에서 {k}-연결이므로 절단이 없습니다")
    if mode is ConnectivityMode.VERTEX:
        if graph.n <= k:
            return CutProof(mode)
        cut, side = minimum_vertex_cut(graph)
        return CutProof(mode, cut_vertices=cut, side=side)
    _, side = min_cut_partition(graph)
    inside = set(side)
    crossing = [(u, v) for u, v in graph.edges() if (u in inside) != (v in inside)]
    return CutProof(mode, cut_edges=crossing, side=side)


def disclosure_of(graph: ExactGraph, signed: bool) -> Disclosure:
    """지지 간선과 정확한 빈도. 부호 정렬이면 양수 블록 다음 음수 블록, 각 블록은 슬롯 오름차순"""
    entries = [(u, v, f) for (u, v), f in sorted(graph.frequencies.items())]
    if signed:
        entries.sort(key=lambda e: (0 if e[2] > 0 else 1, e[0], e[1]))
    return entries


def cut_values(cut: CutProof) -> list[int]:
    values = [0 if cut.mode is ConnectivityMode.VERTEX else 1, len(cut.cut_vertices), *cut.cut_vertices]
    values.append(len(cut.cut_edges))
    for u, v in cut.cut_edges:
        values.extend((u, v))
    values.append(len(cut.side))
    values.extend(cut.side)
    return values


def write_cut_branch(writer: FrameWriter, cut: CutProof, disclosure: Disclosure) -> None:
    writer.write(FrameKind.CLAIM, [0])
    writer.write(FrameKind.CUT, cut_values(cut))
    for entry in disclosure:
        writer.write(FrameKind.DISCLOSE, entry)
    writer.write(FrameKind.END)


@dataclass
class TerminalProof:
    terminal: int
    proof: LayeredProof
    virtual_set: Optional[list[int]] = None


def _sign(value: int) -> int:
    return 1 if value > 0 else -1


def write_connected_branch(
    writer: FrameWriter,
    plan: SchemePlan,
    disclosure: Disclosure,
    terminals_values: list[int],
    proofs: list[TerminalProof],
    behavior: ProverBehavior = ProverBehavior.HONEST,
) -> None:
    """
    연결 주장 프레임을 쓴다.

    사용 횟수와 잔여량은 실제로 보내는 경로(변조 포함)에서 계산한다.
    """
    slot_n = plan.working_n
    signs = {(u, v): _sign(f) for u, v, f in disclosure}
    path_signs: dict[int, list[list[int]]] = {}
    uses: Counter = Counter()
    lie_pending = behavior is ProverBehavior.SIGN_LIE

    for item in proofs:
        for entry in item.proof.entries:
            entry_signs = []
            for path in entry.paths:
                row = []
                for a, b in zip(path, path[1:]):
                    if plan.virtual and plan.n in (a, b):
                        row.append(1)
                        continue
                    edge = (min(a, b), max(a, b))
                    sign = signs.get(edge, 1)
                    if lie_pending:
                        sign, lie_pending = -sign, False
                    row.append(sign)
                    uses[(edge, sign)] += 1
                entry_signs.append(row)
            path_signs[id(entry)] = entry_signs

    scale = plan.ledger_scale
    writer.write(FrameKind.CLAIM, [1])
    for entry in disclosure:
        writer.write(FrameKind.DISCLOSE, entry)

    claimed: Counter = Counter()
    if not plan.signed:
        merged: Counter = Counter()
        for (edge, _), c in uses.items():
            merged[edge] += c
        usage = sorted(merged.items())
        for i, ((u, v), c) in enumerate(usage):
            if behavior is ProverBehavior.MULTIPLICITY_LIE and i == 0:
                c += 1
            claimed[(u, v)] = c
            writer.write(FrameKind.USAGE, [u, v, c])

    writer.write(FrameKind.TERMINALS, terminals_values)

    for item in proofs:
        proof = item.proof
        writer.write(
            FrameKind.LAYERED,
            [item.terminal, proof.layering_seed, len(proof.entries), proof.k],
        )
        for entry in proof.entries:
            items = disjointness_items(entry, proof.mode, item.terminal, slot_n)
            writer.write(FrameKind.VERTEX, [entry.vertex, entry.layer, len(items), *items])
            for path, row in zip(entry.paths, path_signs[id(entry)]):
                values = [len(path), *path]
                if plan.signed:
                    values.extend(row)
                writer.write(FrameKind.PATH, values)

    for u, v, f in disclosure:
        if plan.signed:
            sign = _sign(f)
            r = scale * abs(f) - uses[((u, v), sign)]
        else:
            sign = 1
            r = scale * abs(f) - claimed[(u, v)]
        if r >= 1:
            writer.write(FrameKind.RESIDUAL, [u, v, sign, r])
    writer.write(FrameKind.END)


def _with_virtual(graph: ExactGraph, targets: list[int]) -> ExactGraph:
    frequencies = dict(graph.frequencies)
    for x in targets:
        frequencies[(x, graph.n)] = 1
    return ExactGraph(graph.n + 1, frequencies)


class Prover:
    """방식 하나에 대한 증명 프레임 생성기"""

    def __init__(
        self,
        stream: Stream,
        plan: SchemePlan,
        seed: int,
        behavior: ProverBehavior = ProverBehavior.HONEST,
    ):
        if not stream.header.is_graph:
            raise ProtocolError("증명 방식은 SGT 스트림만 받습니다")
        if behavior is ProverBehavior.SIGN_LIE and not plan.signed:
            raise ValueError("sign-lie 변조는 SGT 방식에서만 쓸 수 있습니다")
        self.stream = stream
        self.plan = plan
        self.seed = derive_key(seed, "prover")
        self.behavior = behavior
        self.graph = exact_support(stream)

    def compose(self) -> bytes:
        writer = FrameWriter()
        disclosure = disclosure_of(self.graph, self.plan.signed)

        if self.behavior is ProverBehavior.UNDERSIZED_CUT:
            cut = self._fake_cut()
            crossing = self._crossing(cut)
            honest = [e for e in disclosure if (e[0], e[1]) not in crossing]
            write_cut_branch(writer, cut, honest)
            return writer.getvalue()

        proof_graph = self.graph
        claim = is_k_connected(self.graph, self.plan.k, self.plan.mode)
        if self.behavior is ProverBehavior.EDGE_NOT_IN_INPUT:
            proof_graph = ExactGraph.from_edges(self.graph.n, complete(self.graph.n))
            claim = True

        disclosure = self._tamper_disclosure(disclosure, claim)
        if not claim:
            write_cut_branch(writer, cut_proof(self.graph, self.plan.k, self.plan.mode), disclosure)
            logger.debug(f"비연결 주장: 프레임 {writer.count}개")
            return writer.getvalue()

        terminals_values, proofs = self._layered_proofs(proof_graph)
        proofs = self._tamper_proofs(proofs)
        if self.behavior is ProverBehavior.TERMINAL_DUPLICATION:
            terminals_values = self._duplicate_terminal(terminals_values)
        write_connected_branch(writer, self.plan, disclosure, terminals_values, proofs, self.behavior)
        logger.debug(f"연결 주장: 단말 증명 {len(proofs)}개, 프레임 {writer.count}개")
        return writer.getvalue()

    def _layered_proofs(self, graph: ExactGraph) -> tuple[list[int], list[TerminalProof]]:
        plan = self.plan
        if plan.style is TerminalStyle.SETS:
            t_left, t_right = plan.honest_sets()
            proofs = []
            for index, targets in enumerate((t_left, t_right)):
                extended = _with_virtual(graph, targets)
                proof = layering_prove(
                    extended, plan.n, plan.k, plan.mode,
                    derive_key(self.seed, "terminal-set", index), real_n=plan.n,
                )
                proofs.append(TerminalProof(plan.n, proof, targets))
            values = [len(t_left), *t_left, len(t_right), *t_right]
            return values, proofs

        terminals = plan.honest_terminals()
        proofs = [
            TerminalProof(t, layering_prove(graph, t, plan.k, plan.mode, derive_key(self.seed, "terminal", i)))
            for i, t in enumerate(terminals)
        ]
        return [len(terminals), *terminals], proofs

    def _tamper_disclosure(self, disclosure: Disclosure, claim: bool) -> Disclosure:
        if not disclosure:
            return disclosure
        u, v, f = disclosure[0]
        lie_on_disclosure = (
            self.behavior is ProverBehavior.MULTIPLICITY_LIE and (self.plan.signed or not claim)
        ) or (self.behavior is ProverBehavior.SIGN_LIE and not claim)
        if not lie_on_disclosure:
            return disclosure
        if self.behavior is ProverBehavior.SIGN_LIE:
            f = -f
        else:
            f += _sign(f)
        return [(u, v, f), *disclosure[1:]]

    def _tamper_proofs(self, proofs: list[TerminalProof]) -> list[TerminalProof]:
        behavior = self.behavior
        if behavior is ProverBehavior.TERMINAL_DUPLICATION:
            if self.plan.style is TerminalStyle.SETS:
                left = proofs[0]
                return [left, TerminalProof(left.terminal, left.proof, left.virtual_set)]
            return [proofs[0], *proofs]
        if behavior not in (ProverBehavior.NON_DISJOINT_PATHS, ProverBehavior.BROKEN_PATH):
            return proofs
        for index, item in enumerate(proofs):
            if not item.proof.entries:
                continue
            proof = copy.deepcopy(item.proof)
            paths = proof.entries[0].paths
            if behavior is ProverBehavior.NON_DISJOINT_PATHS:
                if len(paths) >= 2:
                    paths[1] = list(paths[0])
                else:
                    paths.append(list(paths[0]))
            else:
                paths[0] = paths[0][:-1]
            proofs = list(proofs)
            proofs[index] = TerminalProof(item.terminal, proof, item.virtual_set)
            break
        return proofs

    def _duplicate_terminal(self, values: list[int]) -> list[int]:
        if self.plan.style is TerminalStyle.SETS:
            size = values[0]
            left = values[1:1 + size]
            return [size, *left, size, *left]
        terminals = values[1:]
        if not terminals:
            return values
        return [len(terminals) + 1, terminals[0], *terminals]

    def _fake_cut(self) -> CutProof:
        """k−1개 이하로 줄인 거짓 절단"""
        n, k = self.graph.n, self.plan.k
        if self.plan.mode is ConnectivityMode.VERTEX:
            cut = list(range(min(k - 1, max(n - 2, 0))))
            side = [len(cut)] if len(cut) < n else []
            return CutProof(self.plan.mode, cut_vertices=cut, side=side)
        incident = [e for e in self.graph.edges() if 0 in e][: k - 1]
        return CutProof(self.plan.mode, cut_edges=incident, side=[0])

    def _crossing(self, cut: CutProof) -> set[tuple[int, int]]:
        side = set(cut.side)
        blocked = set(cut.cut_vertices)
        out = set()
        for u, v in self.graph.edges():
            if cut.mode is ConnectivityMode.VERTEX:
                if u in blocked or v in blocked:
                    continue
            if (u in side) != (v in side):
                out.add((u, v))
        if cut.mode is ConnectivityMode.EDGE:
            out -= set(cut.cut_edges)
        return out


def layered_proof_frames(
    stream: Stream,
    proof: LayeredProof,
    signed: bool = False,
) -> bytes:
    """단독 계층 증명 하나를 연결 주장 프레임으로 감싼다"""
    graph = exact_support(stream)
    plan = SchemePlan.for_layering(graph.n, proof.k, proof.mode, proof.terminal)
    writer = FrameWriter()
    write_connected_branch(
        writer,
        plan,
        disclosure_of(graph, signed),
        [1, proof.terminal],
        [TerminalProof(proof.terminal, proof)],
    )
    return writer.getvalue()


def cut_frames(
    stream: Stream,
    cut: CutProof,
    disclosure: Optional[Disclosure] = None,
    signed: bool = False,
) -> bytes:
    graph = exact_support(stream)
    writer = FrameWriter()
    write_cut_branch(writer, cut, disclosure if disclosure is not None else disclosure_of(graph, signed))
    return writer.getvalue()

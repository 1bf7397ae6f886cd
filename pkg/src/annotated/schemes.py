"""
주석 스트리밍 방식 실행

방식마다 같은 계획을 증명자와 검증자에 건네고, 검증자가 입력 스트림을 먼저 읽은 뒤
증명 프레임을 처리한다. 기록에는 증명 프레임과 VERDICT 프레임, 측정 비용이 담긴다.
"""

import logging
from typing import Optional

from ..interfaces.frames import FrameKind, encode_frame, iter_frames
from ..models.proof import (
    ConnectivityMode,
    CutProof,
    LayeredProof,
    ProofTranscript,
    ProverBehavior,
    SchemeId,
    Verdict,
)
from ..models.stream import Stream
from .layering import layering_prove
from .plan import ProtocolError, ProtocolSeeds, SchemePlan
from .prover import Disclosure, Prover, cut_frames, layered_proof_frames, prove_not_k_connected
from .verifier import Verifier

logger = logging.getLogger(__name__)

__all__ = [
    "run_protocol",
    "scheme_kvconn",
    "scheme_keconn",
    "scheme_gap_vconn",
    "scheme_am_vconn",
    "scheme_sgt",
    "verify_not_k_connected",
    "verify_proof",
    "layering_prove",
    "layering_verify",
    "prove_not_k_connected",
    "ProtocolSeeds",
    "verdict_frame",
]


def verdict_frame(verdict: Verdict) -> bytes:
    """VERDICT [종류, 값, 검사] (값 −1은 없음, 검사 −1은 없음)"""
    kinds = {"OUTPUT": 0, "ACCEPT": 1, "REJECT": 2}
    value = -1 if verdict.value is None else int(verdict.value)
    check = -1 if verdict.check is None else verdict.check.code
    return encode_frame(FrameKind.VERDICT, [kinds[verdict.kind.value], value, check])


def _feed(verifier: Verifier, stream: Stream) -> None:
    for token in stream:
        verifier.ingest(token)


def verify_proof(stream: Stream, plan: SchemePlan, proof: bytes, seed: int, accept_only: bool = False) -> tuple[Verdict, int]:
    """
    이미 만든 증명 바이트를 검증한다.

    Returns:
        (판정, vcost 비트)
    """
    verifier = Verifier(stream.header, plan, seed, accept_only=accept_only)
    _feed(verifier, stream)
    verdict = verifier.verify(iter_frames(proof))
    return verdict, verifier.peak_bits


def run_protocol(
    stream: Stream,
    scheme: SchemeId,
    behavior: ProverBehavior = ProverBehavior.HONEST,
    seed: int = 0,
    k: int = 1,
    mode: Optional[ConnectivityMode] = None,
    verifier_seed: Optional[int] = None,
) -> ProofTranscript:
    """
    증명자와 검증자를 한 번 실행한다.

    seed는 실행 시드이고, 증명자에게는 여기서 유도한 공개/증명자 시드만 건넨다.
    verifier_seed를 주면 검증자의 비공개 시드로 쓴다.
    """
    if not stream.header.is_graph:
        raise ProtocolError("증명 방식은 SGT 스트림만 받습니다")
    n = stream.header.universe
    seeds = ProtocolSeeds.from_run(seed, verifier_seed)
    plan = SchemePlan.build(scheme, n, k, mode, shared_seed=seeds.public)

    proof = Prover(stream, plan, seeds.prover, behavior).compose()
    verdict, vcost = verify_proof(stream, plan, proof, seeds.verifier)
    logger.info(f"{scheme.value} k={k} n={n} 행동={behavior.value}: {verdict}")
    return ProofTranscript(
        scheme=scheme,
        k=k,
        n=n,
        frames=proof + verdict_frame(verdict),
        hcost_bits=len(proof) * 8,
        vcost_bits=vcost,
        verdict=verdict,
    )


def scheme_kvconn(
    stream: Stream, k: int, seed: int, prover_behavior: ProverBehavior = ProverBehavior.HONEST
) -> ProofTranscript:
    return run_protocol(stream, SchemeId.KVCONN, prover_behavior, seed, k)


def scheme_keconn(
    stream: Stream, k: int, seed: int, prover_behavior: ProverBehavior = ProverBehavior.HONEST
) -> ProofTranscript:
    return run_protocol(stream, SchemeId.KECONN, prover_behavior, seed, k)


def scheme_gap_vconn(
    stream: Stream, k: int, seed: int, prover_behavior: ProverBehavior = ProverBehavior.HONEST
) -> ProofTranscript:
    return run_protocol(stream, SchemeId.GAP, prover_behavior, seed, k)


def scheme_am_vconn(
    stream: Stream, k: int, shared_seed: int, prover_behavior: ProverBehavior = ProverBehavior.HONEST
) -> ProofTranscript:
    """shared_seed에서 유도한 공개 난수로 단말을 뽑는다 (증명자도 단말을 본다)"""
    return run_protocol(stream, SchemeId.AM, prover_behavior, shared_seed, k)


def scheme_sgt(
    stream: Stream,
    k: int,
    mode: ConnectivityMode,
    seed: int,
    prover_behavior: ProverBehavior = ProverBehavior.HONEST,
) -> ProofTranscript:
    return run_protocol(stream, SchemeId.SGT, prover_behavior, seed, k, mode)


def verify_not_k_connected(
    stream: Stream,
    cut: CutProof,
    k: int,
    seed: int,
    disclosure: Optional[Disclosure] = None,
) -> Verdict:
    """절단 증명 하나만 검증한다 (OUTPUT(false) 또는 REJECT)"""
    scheme = SchemeId.KVCONN if cut.mode is ConnectivityMode.VERTEX else SchemeId.KECONN
    plan = SchemePlan.build(scheme, stream.header.universe, k)
    verdict, _ = verify_proof(stream, plan, cut_frames(stream, cut, disclosure), seed)
    return verdict


def layering_verify(stream: Stream, proof: LayeredProof, seed: int) -> Verdict:
    """계층 증명 하나만 검증한다 (ACCEPT 또는 REJECT)"""
    plan = SchemePlan.for_layering(stream.header.universe, proof.k, proof.mode, proof.terminal)
    verdict, _ = verify_proof(stream, plan, layered_proof_frames(stream, proof), seed, accept_only=True)
    return verdict

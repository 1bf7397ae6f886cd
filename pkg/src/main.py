"""
sgt-sketch 명령행 진입점

    sgt-sketch gen random|eqidx-distinct|eqidx-conn|eqidx-kconn [...]
    sgt-sketch sketch <stream> [--out PATH]
    sgt-sketch forest <stream>
    sgt-sketch cert --k K [--cert-constant C] <stream>
    sgt-sketch prove --scheme S --k K [--mode M] [--behavior B] [--out PATH] <stream>
    sgt-sketch verify --scheme S --k K [--mode M] [--costs] [--verifier-seed V] <stream> <proof>
    sgt-sketch oracle components|min-cut|vertex-connectivity <stream>
    sgt-sketch bench [--job NAME ...]

모든 명령은 --seed를 받는다 (우선순위: 플래그 > SKETCH_SEED > 0).
prove/verify의 --seed는 실행 시드이며 증명자는 여기서 유도한 공개/증명자 시드만 쓴다.
텍스트 출력은 `# seed=<s>` 줄로 시작하고, 스트림 출력은 헤더 다음 줄에 같은 주석을 둔다.
종료 코드: 0 성공/참/ACCEPT, 1 거짓/REJECT, 2 사용법 또는 입력 오류.
"""

import argparse
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional

from .annotated.plan import ProtocolSeeds, SchemePlan
from .annotated.prover import Prover
from .annotated.schemes import verify_proof
from .core.config import Settings
from .core.exceptions import SketchToolkitError
from .core.logging import get_logger
from .interfaces.stream_file import emit_stream, read_stream
from .models.proof import ConnectivityMode, ProofTranscript, ProverBehavior, SchemeId
from .models.stream import Stream
from .oracles.exact import components, exact_support, min_cut, vertex_connectivity
from .services.generators import (
    gen_eqidx_distinct_items,
    gen_eqidx_sgt_connectivity,
    gen_eqidx_sgt_kconn,
    gen_random_sgt,
    random_eqidx,
)
from .sketches.counters import CounterParams, count_distinct
from .sketches.graph_sketch import build_bank, spanning_forest
from .sketches.kconn_cert import build_certificate
from .sketches.l0_sketch import L0Sketch
from .tasks.bench import BENCH_JOBS, run_bench
from .utils.prf import derive_key

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2


class CommandError(SketchToolkitError):
    """명령 인자 조합 오류"""
    pass


def _seed_value(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError(f"시드는 0 이상 2^64 미만이어야 합니다: {text}")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"1 이상의 정수가 필요합니다: {text}")
    return value


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    common.add_argument("--seed", type=_seed_value, default=None, help="64비트 시드")

    parser = argparse.ArgumentParser(
        prog="sgt-sketch",
        description="SGT/동적 그래프 스트림 스케치와 주석 스트리밍 증명 도구",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"{settings.app_name} {settings.app_version}")
    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen", help="스트림 생성", allow_abbrev=False)
    gen_kinds = gen.add_subparsers(dest="kind", required=True)
    random_parser = gen_kinds.add_parser("random", parents=[common], allow_abbrev=False)
    random_parser.add_argument("--n", type=_positive, required=True)
    random_parser.add_argument("--alpha", type=_positive, default=1 << 16)
    random_parser.add_argument("--density", type=float, default=0.2)
    random_parser.add_argument("--cancel-fraction", type=float, default=0.3)
    for kind in ("eqidx-distinct", "eqidx-conn", "eqidx-kconn"):
        sub = gen_kinds.add_parser(kind, parents=[common], allow_abbrev=False)
        sub.add_argument("--p", type=_positive, required=True)
        sub.add_argument("--q", type=_positive, required=True)
        answer = sub.add_mutually_exclusive_group()
        answer.add_argument("--equal", dest="equal", action="store_const", const=True, default=None)
        answer.add_argument("--unequal", dest="equal", action="store_const", const=False)
        if kind == "eqidx-kconn":
            sub.add_argument("--k", type=_positive, required=True)

    sketch = commands.add_parser("sketch", parents=[common], help="ℓ0 스케치 직렬화", allow_abbrev=False)
    sketch.add_argument("stream")
    sketch.add_argument("--out", default=None, help="스케치 이진 파일 경로")

    forest = commands.add_parser("forest", parents=[common], help="신장 숲", allow_abbrev=False)
    forest.add_argument("stream")

    cert = commands.add_parser("cert", parents=[common], help="k-간선 연결성 인증서", allow_abbrev=False)
    cert.add_argument("--k", type=_positive, required=True)
    cert.add_argument("--cert-constant", type=float, default=None)
    cert.add_argument("stream")

    schemes = [s.value for s in SchemeId]
    modes = [m.value for m in ConnectivityMode]
    prove = commands.add_parser("prove", parents=[common], help="증명 생성", allow_abbrev=False)
    prove.add_argument("--scheme", choices=schemes, required=True)
    prove.add_argument("--k", type=_positive, required=True)
    prove.add_argument("--mode", choices=modes, default=None)
    prove.add_argument("--behavior", choices=[b.value for b in ProverBehavior], default=ProverBehavior.HONEST.value)
    prove.add_argument("--out", default=None, help="증명 파일 경로 (기본 stdout)")
    prove.add_argument("stream")

    verify = commands.add_parser("verify", parents=[common], help="증명 검증", allow_abbrev=False)
    verify.add_argument("--scheme", choices=schemes, required=True)
    verify.add_argument("--k", type=_positive, required=True)
    verify.add_argument("--mode", choices=modes, default=None)
    verify.add_argument("--costs", action="store_true", help="hcost/vcost/판정을 JSON 한 줄로 출력")
    verify.add_argument(
        "--verifier-seed", type=_seed_value, default=None,
        help="검증자 비공개 시드 (기본은 --seed에서 유도, 증명자에게 건네지 않는다)",
    )
    verify.add_argument("stream")
    verify.add_argument("proof")

    oracle = commands.add_parser("oracle", parents=[common], help="정확한 질의", allow_abbrev=False)
    oracle.add_argument("predicate", choices=["components", "min-cut", "vertex-connectivity"])
    oracle.add_argument("stream")

    bench = commands.add_parser("bench", parents=[common], help="벤치 작업", allow_abbrev=False)
    bench.add_argument("--job", action="append", choices=list(BENCH_JOBS), default=None)
    return parser


def _load(path: str) -> Stream:
    _, stream = read_stream(path)
    return stream


def _graph_stream(path: str) -> Stream:
    stream = _load(path)
    if not stream.header.is_graph:
        raise CommandError(f"SGT 스트림이 필요합니다: {path}")
    return stream


def _emit(lines: List[str]) -> None:
    sys.stdout.write("".join(f"{line}\n" for line in lines))


def _cmd_gen(args: argparse.Namespace, seed: int) -> int:
    if args.kind == "random":
        stream = gen_random_sgt(args.n, args.alpha, args.density, args.cancel_fraction, seed)
    else:
        instance = random_eqidx(args.p, args.q, seed, equal=args.equal)
        if args.kind == "eqidx-distinct":
            stream = gen_eqidx_distinct_items(instance)
        elif args.kind == "eqidx-conn":
            stream = gen_eqidx_sgt_connectivity(instance)
        else:
            stream = gen_eqidx_sgt_kconn(instance, args.k)
    sys.stdout.write(emit_stream(stream.header, stream, comment=f"seed={seed}"))
    return EXIT_OK


def _cmd_sketch(args: argparse.Namespace, seed: int) -> int:
    stream = _load(args.stream)
    header = stream.header
    sketch = L0Sketch.for_universe(header.sketch_universe, header.alpha, seed)
    for token in stream:
        sketch.ingest(header.coordinate(token), token.delta)
    sample = sketch.sample()
    lines = [f"# seed={seed}", f"sample {'FAIL' if sample is None else sample}"]
    if not header.is_graph:
        distinct = count_distinct(stream, CounterParams(n=header.universe, alpha=header.alpha), derive_key(seed, "distinct"))
        lines.append(f"distinct {distinct}")
    if args.out:
        Path(args.out).write_bytes(sketch.to_bytes())
    _emit(lines)
    return EXIT_OK


def _cmd_forest(args: argparse.Namespace, seed: int) -> int:
    forest = spanning_forest(build_bank(_graph_stream(args.stream), seed))
    _emit([f"# seed={seed}", *(f"{u} {v}" for u, v in forest.edges)])
    return EXIT_OK


def _cmd_cert(args: argparse.Namespace, seed: int) -> int:
    stream = _graph_stream(args.stream)
    certificate = build_certificate(stream, args.k, seed, args.cert_constant)
    graph = certificate.to_graph()
    verdict = graph.n < 2 or min_cut(graph) >= args.k
    _emit([
        f"# seed={seed}",
        *(f"{u} {v}" for u, v in certificate.edges),
        f"verdict {'true' if verdict else 'false'}",
    ])
    return EXIT_OK if verdict else EXIT_FALSE


def _plan(args: argparse.Namespace, stream: Stream, seeds: ProtocolSeeds) -> SchemePlan:
    mode = ConnectivityMode(args.mode) if args.mode else None
    return SchemePlan.build(SchemeId(args.scheme), stream.header.universe, args.k, mode, shared_seed=seeds.public)


def _cmd_prove(args: argparse.Namespace, seed: int) -> int:
    stream = _graph_stream(args.stream)
    seeds = ProtocolSeeds.from_run(seed)
    plan = _plan(args, stream, seeds)
    proof = Prover(stream, plan, seeds.prover, ProverBehavior(args.behavior)).compose()
    if args.out:
        Path(args.out).write_bytes(proof)
    else:
        sys.stdout.buffer.write(proof)
        sys.stdout.flush()
    sys.stderr.write(f"# seed={seed}\n")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, seed: int) -> int:
    stream = _graph_stream(args.stream)
    seeds = ProtocolSeeds.from_run(seed, args.verifier_seed)
    plan = _plan(args, stream, seeds)
    proof = Path(args.proof).read_bytes()
    verdict, vcost = verify_proof(stream, plan, proof, seeds.verifier)
    lines = [f"# seed={seed}", str(verdict)]
    if args.costs:
        transcript = ProofTranscript(
            scheme=plan.scheme,
            k=plan.k,
            n=plan.n,
            frames=proof,
            hcost_bits=len(proof) * 8,
            vcost_bits=vcost,
            verdict=verdict,
        )
        lines.append(transcript.costs().to_line())
    _emit(lines)
    return EXIT_OK if verdict.positive else EXIT_FALSE


def _cmd_oracle(args: argparse.Namespace, seed: int) -> int:
    graph = exact_support(_graph_stream(args.stream))
    lines = [f"# seed={seed}"]
    if args.predicate == "components":
        lines.extend(" ".join(map(str, c)) for c in components(graph))
    elif args.predicate == "min-cut":
        lines.append(str(min_cut(graph) if graph.n >= 2 else 0))
    else:
        lines.append(str(vertex_connectivity(graph)))
    _emit(lines)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace, seed: int) -> int:
    _emit([f"# seed={seed}", *run_bench(seed, args.job)])
    return EXIT_OK


COMMANDS: Dict[str, Callable[[argparse.Namespace, int], int]] = {
    "gen": _cmd_gen,
    "sketch": _cmd_sketch,
    "forest": _cmd_forest,
    "cert": _cmd_cert,
    "prove": _cmd_prove,
    "verify": _cmd_verify,
    "oracle": _cmd_oracle,
    "bench": _cmd_bench,
}


def dispatch(argv: Optional[List[str]] = None) -> int:
    """명령 하나를 실행하고 종료 코드를 반환한다"""
    settings = Settings()
    log_level = "DEBUG" if settings.debug else settings.log_level
    logger = get_logger("src", log_level, settings.log_to_file, settings.log_dir)

    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    seed = args.seed if args.seed is not None else settings.sketch_seed
    try:
        return COMMANDS[args.command](args, seed)
    except (SketchToolkitError, OSError, ValueError) as e:
        logger.error(f"{args.command} 실패: {e}")
        return EXIT_USAGE


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()

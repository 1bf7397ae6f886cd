"""
벤치 작업

작은 시드 고정 작업으로 샘플러/숲/인증서 정확도와 방식별 비용을 잰다.
결과는 작업마다 JSON 한 줄이며, 같은 시드면 바이트 단위로 같다.
실행 시간은 stdout이 아니라 로그로만 남긴다.
"""

import json
import logging
import random
import time
from typing import Any, Callable, Dict, List, Optional

from ..models.proof import ConnectivityMode, SchemeId
from ..oracles.exact import ExactGraph, components, exact_support, min_cut
from ..services.generators import gen_random_sgt
from ..services.graph_families import complete, cycle, graph_stream, hypercube
from ..sketches.graph_sketch import build_bank, spanning_forest
from ..sketches.kconn_cert import build_certificate
from ..sketches.l0_sketch import L0Sketch
from ..utils.prf import derive_key
from ..annotated.schemes import run_protocol

# 로거 설정
logger = logging.getLogger(__name__)

BenchJob = Callable[[int], Dict[str, Any]]


def sampler_accuracy_job(seed: int, trials: int = 40) -> Dict[str, Any]:
    """N=64, α=2^32 무작위 벡터에서 ℓ0 표본이 지지 안에 있는 비율"""
    universe, alpha = 64, 1 << 32
    rng = random.Random(derive_key(seed, "bench-sampler"))
    hits = fails = 0
    for trial in range(trials):
        support = rng.sample(range(universe), rng.randint(1, 16))
        sketch = L0Sketch.for_universe(universe, alpha, derive_key(seed, "bench-sampler", trial))
        for element in support:
            value = rng.randint(1, alpha)
            sketch.ingest(element, value if rng.random() < 0.5 else -value)
        sample = sketch.sample()
        if sample is None:
            fails += 1
        elif sample in support:
            hits += 1
    return {"trials": trials, "hits": hits, "fails": fails}


def forest_accuracy_job(seed: int, trials: int = 6) -> Dict[str, Any]:
    """무작위 SGT 스트림의 숲 구성요소가 오라클과 같은 비율"""
    matches = 0
    for trial in range(trials):
        stream = gen_random_sgt(24, 1 << 16, 0.08, (0.0, 0.3, 1.0)[trial % 3], derive_key(seed, "bench-forest", trial))
        forest = spanning_forest(build_bank(stream, derive_key(seed, "bench-bank", trial)))
        if forest.components() == components(exact_support(stream)):
            matches += 1
    return {"trials": trials, "matches": matches}


def certificate_agreement_job(seed: int) -> Dict[str, Any]:
    """고정 그래프에서 인증서의 k-간선 연결성 답이 원래 그래프와 같은지"""
    fixtures = {
        "complete-6": (6, complete(6), 3),
        "cycle-8": (8, cycle(8), 3),
        "hypercube-3": (8, hypercube(3), 3),
    }
    agree = 0
    for name, (n, edges, k) in sorted(fixtures.items()):
        stream = graph_stream(n, edges)
        certificate = build_certificate(stream, k, derive_key(seed, "bench-cert", name))
        expected = min_cut(ExactGraph.from_edges(n, edges)) >= k
        if (min_cut(certificate.to_graph()) >= k) == expected:
            agree += 1
    return {"fixtures": len(fixtures), "agree": agree}


def scheme_costs_job(seed: int) -> Dict[str, Any]:
    """3차원 하이퍼큐브 (3-연결, n=8)에서 k=2 방식별 hcost/vcost/판정"""
    stream = graph_stream(8, hypercube(3), alpha=4, seed=derive_key(seed, "bench-scheme"))
    runs = [
        (SchemeId.KVCONN, None),
        (SchemeId.KECONN, None),
        (SchemeId.GAP, None),
        (SchemeId.AM, None),
        (SchemeId.SGT, ConnectivityMode.VERTEX),
        (SchemeId.SGT, ConnectivityMode.EDGE),
    ]
    costs = []
    for scheme, mode in runs:
        transcript = run_protocol(stream, scheme, seed=seed, k=2, mode=mode)
        report = transcript.costs().model_dump()
        if mode is not None:
            report["mode"] = mode.value
        costs.append(report)
    return {"runs": costs}


BENCH_JOBS: Dict[str, BenchJob] = {
    "sampler-accuracy": sampler_accuracy_job,
    "forest-accuracy": forest_accuracy_job,
    "certificate-agreement": certificate_agreement_job,
    "scheme-costs": scheme_costs_job,
}


def run_bench(seed: int, names: Optional[List[str]] = None) -> List[str]:
    """
    벤치 작업을 실행하고 JSON 줄 목록을 반환한다.

    Args:
        seed: 모든 작업에 쓰는 시드
        names: 실행할 작업 이름 (기본은 전부, 등록 순서)

    Raises:
        KeyError: 알 수 없는 작업 이름
    """
    lines = []
    for name in names or list(BENCH_JOBS):
        job = BENCH_JOBS[name]
        started = time.perf_counter()
        try:
            result = job(seed)
        except Exception:
            logger.exception(f"벤치 작업 실패: {name}")
            raise
        elapsed = time.perf_counter() - started
        logger.info(f"벤치 작업 {name}: {elapsed:.2f}초")
        lines.append(json.dumps({"job": name, "seed": seed, **result}, sort_keys=True))
    return lines

"""주석 스트리밍 증명: 계층화, 절단 증명, 방식별 정직/변조 실행 테스트"""

import pytest

from src.annotated.layering import Layering, LayeringError, layer_count, size_bound
from src.annotated.plan import ProtocolError, ProtocolSeeds, SchemePlan, TerminalStyle, am_terminals
from src.annotated.prover import NoSuchCutError
from src.annotated.schemes import (
    layering_prove,
    layering_verify,
    prove_not_k_connected,
    run_protocol,
    scheme_am_vconn,
    scheme_gap_vconn,
    scheme_keconn,
    scheme_kvconn,
    scheme_sgt,
    verify_not_k_connected,
    verify_proof,
)
from src.annotated.verifier import Verifier
from src.interfaces.frames import FrameKind, encode_frame, iter_frames
from src.models.proof import (
    CheckId,
    ConnectivityMode,
    CostReport,
    CutProof,
    ProverBehavior,
    SchemeId,
    Verdict,
    VerdictKind,
)
from src.oracles.exact import ExactGraph, exact_support
from src.services.generators import gen_eqidx_sgt_kconn, random_eqidx
from src.services.graph_families import complete, cycle, graph_stream, hypercube, minus_matching, path, star
from src.sketches.l0_sketch import L0Sketch
from src.utils.prf import derive_key

VERTEX = ConnectivityMode.VERTEX
EDGE = ConnectivityMode.EDGE
B = ProverBehavior

VCOST_LIMIT_BITS = 64 * 1024 * 8


@pytest.fixture
def q3(make_graph_stream):
    return make_graph_stream(8, hypercube(3))


@pytest.fixture
def star4(make_graph_stream):
    return make_graph_stream(5, star(4))


def output(value):
    return Verdict.output(value)


# ── 계층화 ────────────────────────────────────────────────────────


class TestLayering:
    def test_layer_count(self):
        assert layer_count(8, 2) == 2
        assert layer_count(3, 3) == 0
        assert layer_count(9, 4) == 2

    def test_size_bound(self):
        assert size_bound(8, 2, VERTEX, factor=16) == 16 * 2 * 8 * 2
        assert size_bound(8, 2, EDGE, factor=16) == 16 * 4 * 8 * 2
        # 층이 0개여도 상한은 0이 아니다
        assert size_bound(3, 3, VERTEX, factor=1) == 9

    def test_last_layer_holds_everything(self):
        layering = Layering(8, 2, seed=5)
        assert layering.members(layering.layers) == list(range(8))

    def test_order_excludes_terminal_and_matches_scan(self):
        layering = Layering(10, 2, seed=3)
        order = layering.order(4)
        assert all(v != 4 for _, v in order)
        assert len(order) == 9
        assert list(layering.iter_order(4)) == order


class TestLayeringProve:
    def test_complete_graph_on_k_plus_one(self):
        graph = ExactGraph.from_edges(4, complete(4))
        proof = layering_prove(graph, 0, 3, VERTEX, seed=1)
        assert len(proof.entries) == 3
        assert all(len(entry.paths) == 3 for entry in proof.entries)
        assert proof.total_length() <= size_bound(4, 3, VERTEX)

    def test_cycle_edge_mode(self):
        proof = layering_prove(ExactGraph.from_edges(8, cycle(8)), 0, 2, EDGE, seed=2)
        assert sorted(entry.vertex for entry in proof.entries) == list(range(1, 8))
        for entry in proof.entries:
            used = [tuple(sorted(e)) for p in entry.paths for e in zip(p, p[1:])]
            assert len(used) == len(set(used))

    def test_entries_follow_layer_order(self, q3):
        proof = layering_prove(exact_support(q3), 3, 2, VERTEX, seed=7)
        order = Layering(8, 2, proof.layering_seed).order(3)
        assert [(e.layer, e.vertex) for e in proof.entries] == order

    def test_path_graph_is_not_two_connected(self, make_graph_stream):
        with pytest.raises(LayeringError):
            layering_prove(exact_support(make_graph_stream(4, path(4))), 0, 2, VERTEX, seed=0)

    def test_layering_verify_accepts_honest_proof(self, q3):
        proof = layering_prove(exact_support(q3), 0, 3, VERTEX, seed=4)
        assert layering_verify(q3, proof, seed=9) == Verdict.accept()

    def test_layering_verify_rejects_swapped_layers(self, q3):
        proof = layering_prove(exact_support(q3), 0, 2, VERTEX, seed=4)
        proof.entries.reverse()
        verdict = layering_verify(q3, proof, seed=9)
        assert verdict.rejected and verdict.check is CheckId.COVERAGE


# ── 절단 증명 ─────────────────────────────────────────────────────


class TestProveNotKConnected:
    def test_star(self, star4):
        cut = prove_not_k_connected(star4, 2, VERTEX)
        assert cut.cut_vertices == [0]
        assert cut.side == [1]

    def test_cycle_edge_cut(self, make_graph_stream):
        cut = prove_not_k_connected(make_graph_stream(8, cycle(8)), 3, EDGE)
        assert len(cut.cut_edges) == 2
        inside = set(cut.side)
        assert all((u in inside) != (v in inside) for u, v in cut.cut_edges)

    def test_connected_graph_has_no_cut(self, make_graph_stream):
        with pytest.raises(NoSuchCutError):
            prove_not_k_connected(make_graph_stream(4, complete(4)), 3, VERTEX)

    def test_small_graph_gets_empty_cut(self, make_graph_stream):
        cut = prove_not_k_connected(make_graph_stream(3, complete(3)), 3, VERTEX)
        assert cut.cut_vertices == [] and cut.side == []


class TestVerifyNotKConnected:
    def test_honest_star_cut(self, star4):
        cut = prove_not_k_connected(star4, 2, VERTEX)
        assert verify_not_k_connected(star4, cut, 2, seed=1) == output(False)

    def test_honest_edge_cut(self, make_graph_stream):
        stream = make_graph_stream(8, cycle(8), alpha=3, seed=2)
        cut = prove_not_k_connected(stream, 3, EDGE)
        assert verify_not_k_connected(stream, cut, 3, seed=2) == output(False)

    def test_trivial_cut_when_graph_is_small(self, make_graph_stream):
        stream = make_graph_stream(3, complete(3))
        cut = prove_not_k_connected(stream, 3, VERTEX)
        assert verify_not_k_connected(stream, cut, 3, seed=0) == output(False)

    def test_undeclared_crossing_edge(self, make_graph_stream):
        stream = make_graph_stream(8, cycle(8))
        cut = prove_not_k_connected(stream, 3, EDGE)
        cut.cut_edges = cut.cut_edges[:1]
        verdict = verify_not_k_connected(stream, cut, 3, seed=0)
        assert verdict == Verdict.reject(CheckId.CUT_CROSSING)

    def test_cut_of_size_k(self, star4):
        cut = CutProof(VERTEX, cut_vertices=[0, 2], side=[1])
        assert verify_not_k_connected(star4, cut, 2, seed=0) == Verdict.reject(CheckId.CUT_SHAPE)

    def test_separating_nothing(self, make_graph_stream):
        stream = make_graph_stream(5, complete(5))
        cut = CutProof(VERTEX, cut_vertices=[0, 1], side=[2])
        assert verify_not_k_connected(stream, cut, 3, seed=0) == Verdict.reject(CheckId.CUT_CROSSING)

    def test_disclosure_missing_an_edge(self, star4):
        cut = prove_not_k_connected(star4, 2, VERTEX)
        disclosure = [(0, 1, 1), (0, 2, 1), (0, 3, 1)]
        verdict = verify_not_k_connected(star4, cut, 2, seed=0, disclosure=disclosure)
        assert verdict == Verdict.reject(CheckId.DISCLOSURE_EQUALITY)


# ── 방식 계획 ─────────────────────────────────────────────────────


class TestSchemePlan:
    def test_gap_uses_terminal_sets_only_when_large(self):
        assert SchemePlan.build(SchemeId.GAP, 8, 2).style is TerminalStyle.SETS
        assert SchemePlan.build(SchemeId.GAP, 9, 4).style is TerminalStyle.LIST

    def test_styles(self):
        assert SchemePlan.build(SchemeId.KVCONN, 8, 2).style is TerminalStyle.LIST
        assert SchemePlan.build(SchemeId.KECONN, 8, 2).style is TerminalStyle.SINGLE
        assert SchemePlan.build(SchemeId.SGT, 8, 2, EDGE).style is TerminalStyle.SINGLE
        assert SchemePlan.build(SchemeId.AM, 8, 2, shared_seed=3).style is TerminalStyle.PUBLIC

    def test_ledger_scale(self):
        assert SchemePlan.build(SchemeId.KVCONN, 8, 2).ledger_scale == 64 * 2
        assert SchemePlan.build(SchemeId.KECONN, 8, 3).ledger_scale == 64

    def test_mode_must_match_scheme(self):
        with pytest.raises(ProtocolError):
            SchemePlan.build(SchemeId.KVCONN, 8, 2, EDGE)
        with pytest.raises(ProtocolError):
            SchemePlan.build(SchemeId.KECONN, 8, 0)

    def test_am_terminals_are_public(self):
        assert am_terminals(6, 1) == (0, 1, 2, 3, 4, 5)
        assert am_terminals(64, 5) == am_terminals(64, 5)
        assert len(am_terminals(64, 5)) == 12


# ── 정직한 실행 ───────────────────────────────────────────────────


class TestHonestRuns:
    def test_kvconn_complete_graph(self, make_graph_stream):
        transcript = scheme_kvconn(make_graph_stream(5, complete(5)), 3, seed=1)
        assert transcript.verdict == output(True)

    def test_kvconn_below_threshold(self, make_graph_stream):
        stream = make_graph_stream(5, minus_matching(5, 2))
        assert scheme_kvconn(stream, 4, seed=2).verdict == output(False)

    def test_kvconn_hypercube(self, q3):
        transcript = scheme_kvconn(q3, 2, seed=3)
        assert transcript.verdict == output(True)
        assert transcript.vcost_bits < VCOST_LIMIT_BITS

    def test_keconn_cycle(self, make_graph_stream):
        stream = make_graph_stream(8, cycle(8), alpha=5, seed=4)
        assert scheme_keconn(stream, 2, seed=4).verdict == output(True)
        assert scheme_keconn(stream, 3, seed=4).verdict == output(False)

    def test_gap_with_terminal_sets(self, q3):
        assert scheme_gap_vconn(q3, 2, seed=5).verdict == output(True)

    def test_gap_falls_back_to_terminal_list(self, make_graph_stream):
        assert scheme_gap_vconn(make_graph_stream(9, complete(9)), 4, seed=6).verdict == output(True)

    def test_gap_on_star(self, star4):
        assert scheme_gap_vconn(star4, 2, seed=7).verdict == output(False)

    def test_am_complete_graph(self, make_graph_stream):
        transcript = scheme_am_vconn(make_graph_stream(6, complete(6)), 3, shared_seed=8)
        assert transcript.verdict == output(True)

    @pytest.mark.parametrize("mode", [VERTEX, EDGE])
    def test_sgt_eqidx(self, mode):
        unequal = gen_eqidx_sgt_kconn(random_eqidx(6, 2, 3, equal=False), 2)
        equal = gen_eqidx_sgt_kconn(random_eqidx(6, 2, 3, equal=True), 2)
        assert scheme_sgt(unequal, 2, mode, seed=9).verdict == output(True)
        assert scheme_sgt(equal, 2, mode, seed=9).verdict == output(False)

    def test_sgt_with_negative_frequencies(self, make_graph_stream):
        stream = make_graph_stream(8, hypercube(3), alpha=6, seed=10, noise=5)
        assert scheme_sgt(stream, 3, VERTEX, seed=10).verdict == output(True)

    def test_transcript_costs(self, q3):
        transcript = scheme_keconn(q3, 3, seed=11)
        report = transcript.costs()
        assert isinstance(report, CostReport)
        assert list(report.model_dump()) == ["scheme", "k", "n", "hcost_bits", "vcost_bits", "verdict"]
        assert report.verdict == "OUTPUT(true)"
        assert transcript.hcost_bits > 0
        assert transcript.hcost_bits % 8 == 0

    def test_transcript_ends_with_verdict_frame(self, q3):
        transcript = scheme_kvconn(q3, 2, seed=12)
        last = list(iter_frames(transcript.frames))[-1]
        assert last.kind is FrameKind.VERDICT
        assert last.values == (0, 1, -1)
        assert transcript.hcost_bits == (len(transcript.frames) - len(encode_frame(FrameKind.VERDICT, [0, 1, -1]))) * 8

    def test_elem_stream_is_rejected(self, make_elem_stream):
        with pytest.raises(ProtocolError):
            run_protocol(make_elem_stream(4, 1, [(1, 1)]), SchemeId.KVCONN)


# ── 변조된 증명자 ─────────────────────────────────────────────────


def assert_rejected(transcript, *checks):
    assert transcript.verdict.kind is VerdictKind.REJECT
    assert transcript.verdict.check in checks


class TestTamperedProvers:
    # 별에서는 잎 정점의 서로소 경로 두 개 중 하나가 반드시 입력에 없는 간선을 쓴다
    def test_edge_not_in_input(self, star4):
        assert_rejected(scheme_kvconn(star4, 2, 0, B.EDGE_NOT_IN_INPUT), CheckId.LEDGER)
        assert_rejected(scheme_keconn(star4, 2, 0, B.EDGE_NOT_IN_INPUT), CheckId.LEDGER)
        assert_rejected(scheme_sgt(star4, 2, VERTEX, 0, B.EDGE_NOT_IN_INPUT), CheckId.LEDGER)

    def test_multiplicity_lie_dynamic(self, q3):
        assert_rejected(scheme_kvconn(q3, 2, 1, B.MULTIPLICITY_LIE), CheckId.USAGE_COUNT)
        assert_rejected(scheme_keconn(q3, 2, 1, B.MULTIPLICITY_LIE), CheckId.USAGE_COUNT)

    def test_multiplicity_lie_on_disclosure(self, q3, star4):
        assert_rejected(scheme_sgt(q3, 2, VERTEX, 2, B.MULTIPLICITY_LIE), CheckId.DISCLOSURE_EQUALITY)
        assert_rejected(scheme_kvconn(star4, 2, 2, B.MULTIPLICITY_LIE), CheckId.DISCLOSURE_EQUALITY)

    def test_sign_lie(self, make_graph_stream):
        stream = make_graph_stream(8, hypercube(3), alpha=4, seed=3)
        assert_rejected(scheme_sgt(stream, 2, VERTEX, 3, B.SIGN_LIE), CheckId.LEDGER)
        assert_rejected(scheme_sgt(stream, 2, EDGE, 3, B.SIGN_LIE), CheckId.LEDGER)

    def test_sign_lie_needs_signed_scheme(self, q3):
        with pytest.raises(ValueError):
            scheme_kvconn(q3, 2, 0, B.SIGN_LIE)

    @pytest.mark.parametrize("run", [
        lambda s: scheme_kvconn(s, 2, 4, B.NON_DISJOINT_PATHS),
        lambda s: scheme_keconn(s, 2, 4, B.NON_DISJOINT_PATHS),
        lambda s: scheme_gap_vconn(s, 2, 4, B.NON_DISJOINT_PATHS),
        lambda s: scheme_sgt(s, 3, EDGE, 4, B.NON_DISJOINT_PATHS),
    ])
    def test_non_disjoint_paths(self, q3, run):
        assert_rejected(run(q3), CheckId.DISJOINTNESS, CheckId.DISJOINTNESS_ORDER)

    @pytest.mark.parametrize("run", [
        lambda s: scheme_kvconn(s, 2, 5, B.BROKEN_PATH),
        lambda s: scheme_keconn(s, 3, 5, B.BROKEN_PATH),
        lambda s: scheme_am_vconn(s, 2, 5, B.BROKEN_PATH),
        lambda s: scheme_sgt(s, 2, VERTEX, 5, B.BROKEN_PATH),
    ])
    def test_broken_path(self, q3, run):
        assert_rejected(run(q3), CheckId.PATH_SHAPE, CheckId.PATH_TARGET)

    def test_undersized_cut(self, make_graph_stream, q3):
        assert_rejected(
            scheme_kvconn(make_graph_stream(5, complete(5)), 3, 6, B.UNDERSIZED_CUT),
            CheckId.DISCLOSURE_EQUALITY,
        )
        assert_rejected(scheme_keconn(q3, 3, 6, B.UNDERSIZED_CUT), CheckId.DISCLOSURE_EQUALITY)

    @pytest.mark.parametrize("scheme", [SchemeId.KVCONN, SchemeId.KECONN, SchemeId.GAP, SchemeId.AM])
    def test_terminal_duplication(self, q3, scheme):
        transcript = run_protocol(q3, scheme, B.TERMINAL_DUPLICATION, seed=7, k=2)
        assert_rejected(transcript, CheckId.TERMINALS)

    def test_rejected_transcript_still_reports_costs(self, q3):
        transcript = scheme_kvconn(q3, 2, 8, B.BROKEN_PATH)
        last = list(iter_frames(transcript.frames))[-1]
        assert last.values[0] == 2
        assert CheckId.from_code(last.values[2]) is transcript.verdict.check
        assert transcript.costs().verdict.startswith("REJECT(")


# ── 시드 분리 ─────────────────────────────────────────────────────


class TestSeedSeparation:
    def plan_and_seeds(self, run_seed):
        seeds = ProtocolSeeds.from_run(run_seed)
        return SchemePlan.build(SchemeId.KVCONN, 8, 2, shared_seed=seeds.public), seeds

    def test_seeds_are_distinct(self):
        seeds = ProtocolSeeds.from_run(5)
        assert len({5, seeds.public, seeds.prover, seeds.verifier}) == 4
        assert ProtocolSeeds.from_run(5, verifier_seed=77).verifier == 77
        assert ProtocolSeeds.from_run(5, verifier_seed=77).prover == seeds.prover

    def test_prover_cannot_rebuild_verifier_sketches(self, q3):
        plan, seeds = self.plan_and_seeds(5)
        real = Verifier(q3.header, plan, seeds.verifier).input_sketch
        for known in (5, seeds.public, seeds.prover):
            guess = Verifier(q3.header, plan, known).input_sketch
            assert guess.seed != real.seed
            assert guess.prime != real.prime

    def test_collision_built_from_prover_seed_does_not_fool_verifier(self, q3):
        plan, seeds = self.plan_and_seeds(5)
        real = Verifier(q3.header, plan, seeds.verifier).input_sketch
        guess = Verifier(q3.header, plan, seeds.prover).input_sketch

        # 추측한 소수의 배수만큼 다중도를 속이면 추측한 스케치에서는 흔적이 없다
        forged = L0Sketch(guess.shape, guess.seed)
        forged.ingest(3, guess.prime)
        assert forged.is_zero()

        actual = L0Sketch(real.shape, real.seed)
        actual.ingest(3, guess.prime)
        assert not actual.is_zero()

    @pytest.mark.parametrize("verifier_seed", [1, 2, 3])
    def test_explicit_verifier_seed(self, star4, q3, verifier_seed):
        tampered = run_protocol(star4, SchemeId.KVCONN, B.EDGE_NOT_IN_INPUT, seed=0, k=2, verifier_seed=verifier_seed)
        assert_rejected(tampered, CheckId.LEDGER)
        honest = run_protocol(q3, SchemeId.KVCONN, seed=0, k=2, verifier_seed=verifier_seed)
        assert honest.verdict == output(True)


# ── 손상된 프레임 ─────────────────────────────────────────────────


class TestMalformedProofs:
    def test_empty_proof(self, q3):
        plan = SchemePlan.build(SchemeId.KVCONN, 8, 2)
        verdict, _ = verify_proof(q3, plan, b"", seed=0)
        assert verdict == Verdict.reject(CheckId.FRAME_ORDER)

    def test_garbage_bytes(self, q3):
        plan = SchemePlan.build(SchemeId.KVCONN, 8, 2)
        verdict, _ = verify_proof(q3, plan, b"\x01\x00", seed=0)
        assert verdict == Verdict.reject(CheckId.FRAME_FORMAT)

    def test_bad_claim(self, q3):
        plan = SchemePlan.build(SchemeId.KVCONN, 8, 2)
        verdict, _ = verify_proof(q3, plan, encode_frame(FrameKind.CLAIM, [7]), seed=0)
        assert verdict == Verdict.reject(CheckId.CLAIM)

    def test_trailing_frame_after_end(self, q3):
        transcript = scheme_kvconn(q3, 2, seed=1)
        proof = transcript.frames[: -len(encode_frame(FrameKind.VERDICT, [0, 1, -1]))]
        plan = SchemePlan.build(SchemeId.KVCONN, 8, 2)
        verdict, _ = verify_proof(q3, plan, proof + encode_frame(FrameKind.END), seed=1)
        assert verdict == Verdict.reject(CheckId.FRAME_ORDER)

    def test_verifier_seed_does_not_change_honest_verdict(self, q3):
        transcript = scheme_kvconn(q3, 2, seed=1)
        proof = transcript.frames[: -len(encode_frame(FrameKind.VERDICT, [0, 1, -1]))]
        plan = SchemePlan.build(SchemeId.KVCONN, 8, 2)
        for seed in range(3):
            assert verify_proof(q3, plan, proof, seed=100 + seed)[0] == output(True)


# ── 통계 검증 (시드 50개) ─────────────────────────────────────────


def _hypercube(dim, **kwargs):
    return graph_stream(1 << dim, hypercube(dim), **kwargs)


def _eqidx_unequal(seed):
    return gen_eqidx_sgt_kconn(random_eqidx(6, 2, seed, equal=False), 2)


HONEST_FIXTURES = [
    ("kvconn-q3", lambda seed: scheme_kvconn(_hypercube(3), 2, seed), True),
    ("kvconn-minus-matching", lambda seed: scheme_kvconn(graph_stream(5, minus_matching(5, 2)), 4, seed), False),
    ("keconn-cycle", lambda seed: scheme_keconn(graph_stream(8, cycle(8), alpha=5, seed=seed), 2, seed), True),
    ("keconn-cycle-k3", lambda seed: scheme_keconn(graph_stream(8, cycle(8), alpha=5, seed=seed), 3, seed), False),
    ("gap-q3", lambda seed: scheme_gap_vconn(_hypercube(3), 2, seed), True),
    ("gap-star", lambda seed: scheme_gap_vconn(graph_stream(5, star(4)), 2, seed), False),
    ("am-complete", lambda seed: scheme_am_vconn(graph_stream(6, complete(6)), 3, seed), True),
    ("sgt-vertex", lambda seed: scheme_sgt(_eqidx_unequal(seed), 2, VERTEX, seed), True),
    ("sgt-edge", lambda seed: scheme_sgt(_eqidx_unequal(seed), 2, EDGE, seed), True),
    ("sgt-noisy", lambda seed: scheme_sgt(_hypercube(3, alpha=6, seed=seed, noise=5), 3, VERTEX, seed), True),
]

TAMPER_CLASSES = [
    ("edge-not-in-input", lambda seed: scheme_kvconn(graph_stream(5, star(4)), 2, seed, B.EDGE_NOT_IN_INPUT)),
    ("multiplicity-lie", lambda seed: scheme_kvconn(_hypercube(3), 2, seed, B.MULTIPLICITY_LIE)),
    ("sign-lie", lambda seed: scheme_sgt(_hypercube(3, alpha=4, seed=seed), 2, VERTEX, seed, B.SIGN_LIE)),
    ("non-disjoint-paths", lambda seed: scheme_kvconn(_hypercube(3), 2, seed, B.NON_DISJOINT_PATHS)),
    ("broken-path", lambda seed: scheme_kvconn(_hypercube(3), 2, seed, B.BROKEN_PATH)),
    ("undersized-cut", lambda seed: scheme_kvconn(graph_stream(5, complete(5)), 3, seed, B.UNDERSIZED_CUT)),
    ("terminal-duplication", lambda seed: run_protocol(_hypercube(3), SchemeId.KVCONN, B.TERMINAL_DUPLICATION, seed, 2)),
]


@pytest.mark.slow
@pytest.mark.parametrize("name,run,expected", HONEST_FIXTURES, ids=[f[0] for f in HONEST_FIXTURES])
def test_completeness_over_fifty_seeds(name, run, expected):
    correct = sum(run(seed).verdict == output(expected) for seed in range(50))
    assert correct >= 45, name


@pytest.mark.slow
@pytest.mark.parametrize("name,run", TAMPER_CLASSES, ids=[t[0] for t in TAMPER_CLASSES])
def test_soundness_over_fifty_seeds(name, run):
    rejected = sum(run(seed).verdict.kind is VerdictKind.REJECT for seed in range(50))
    assert rejected >= 45, name


@pytest.mark.slow
@pytest.mark.parametrize("run", [
    lambda s, seed: scheme_kvconn(s, 2, seed),
    lambda s, seed: scheme_keconn(s, 2, seed),
    lambda s, seed: scheme_gap_vconn(s, 2, seed),
    lambda s, seed: scheme_am_vconn(s, 2, seed),
    lambda s, seed: scheme_sgt(s, 2, VERTEX, seed),
], ids=["kvconn", "keconn", "gap", "am", "sgt"])
def test_vcost_on_sixty_four_vertices(run):
    for seed in range(3):
        transcript = run(_hypercube(6, alpha=4, seed=seed), seed)
        assert transcript.verdict == output(True)
        assert transcript.vcost_bits <= VCOST_LIMIT_BITS
        assert transcript.hcost_bits > 0


RETRY_SEEDS = 64


def assert_layering_within_bounds(graph, terminal, k, mode, seed):
    proof = layering_prove(graph, terminal, k, mode, seed=seed)
    assert proof.total_length() <= size_bound(graph.n, k, mode)
    retries = [derive_key(seed, "layering", attempt) for attempt in range(RETRY_SEEDS)]
    assert proof.layering_seed in retries


class TestLayeringBounds:
    def test_hypercube(self, q3):
        graph = exact_support(q3)
        for seed in range(10):
            assert_layering_within_bounds(graph, seed % 8, 3, VERTEX, seed)
            assert_layering_within_bounds(graph, seed % 8, 2, EDGE, seed)

    @pytest.mark.slow
    @pytest.mark.parametrize("edges,n,k,mode", [
        (hypercube(3), 8, 3, VERTEX),
        (cycle(16), 16, 2, EDGE),
        (complete(8), 8, 5, VERTEX),
        (complete(8), 8, 4, EDGE),
        (hypercube(6), 64, 2, VERTEX),
        (hypercube(6), 64, 3, EDGE),
    ], ids=["q3-v", "c16-e", "k8-v", "k8-e", "q6-v", "q6-e"])
    def test_fixtures_over_fifty_seeds(self, edges, n, k, mode):
        graph = ExactGraph.from_edges(n, edges)
        for seed in range(50):
            assert_layering_within_bounds(graph, seed % n, k, mode, seed)

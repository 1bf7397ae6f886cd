"""명령행 진입점 테스트 (dispatch를 직접 호출)"""

import json

import pytest

from src.interfaces.stream_file import write_stream
from src.main import EXIT_FALSE, EXIT_OK, EXIT_USAGE, dispatch
from src.services.graph_families import complete, hypercube, path
from src.tasks import bench
from src.tasks.bench import run_bench


@pytest.fixture
def stream_file(tmp_path, make_graph_stream):
    def make(name, n, edges, **kwargs):
        target = tmp_path / name
        write_stream(target, make_graph_stream(n, edges, **kwargs))
        return str(target)
    return make


def body(text):
    return [line for line in text.splitlines() if not line.startswith("#")]


class TestOracleCommand:
    def test_components_of_path(self, stream_file, capsys):
        code = dispatch(["oracle", "components", stream_file("p.txt", 4, path(4))])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert out.startswith("# seed=0\n")
        assert body(out) == ["0 1 2 3"]

    def test_numeric_predicates(self, stream_file, capsys):
        target = stream_file("k5.txt", 5, complete(5))
        assert dispatch(["oracle", "min-cut", target]) == EXIT_OK
        assert dispatch(["oracle", "vertex-connectivity", target]) == EXIT_OK
        assert body(capsys.readouterr().out) == ["4", "4"]


class TestCertCommand:
    def test_complete_graph_is_three_connected(self, stream_file, capsys):
        code = dispatch(["cert", "--k", "3", "--cert-constant", "8", "--seed", "1", stream_file("k6.txt", 6, complete(6))])
        lines = body(capsys.readouterr().out)
        assert code == EXIT_OK
        assert lines[-1] == "verdict true"

    def test_path_is_not_two_connected(self, stream_file, capsys):
        code = dispatch(["cert", "--k", "2", "--cert-constant", "4", stream_file("p.txt", 5, path(5))])
        assert code == EXIT_FALSE
        assert body(capsys.readouterr().out)[-1] == "verdict false"


class TestProveAndVerify:
    def run_pair(self, tmp_path, stream, *extra, behavior="honest"):
        proof = str(tmp_path / "proof.bin")
        args = ["--scheme", "kvconn", "--k", "2", "--seed", "3"]
        assert dispatch(["prove", *args, "--behavior", behavior, "--out", proof, stream]) == EXIT_OK
        return dispatch(["verify", *args, *extra, stream, proof])

    def test_honest(self, tmp_path, stream_file, capsys):
        stream = stream_file("q3.txt", 8, hypercube(3))
        assert self.run_pair(tmp_path, stream, "--costs") == EXIT_OK
        lines = body(capsys.readouterr().out)
        assert lines[0] == "OUTPUT(true)"
        costs = json.loads(lines[1])
        assert list(costs) == ["scheme", "k", "n", "hcost_bits", "vcost_bits", "verdict"]
        assert costs["scheme"] == "kvconn" and costs["n"] == 8

    def test_tampered(self, tmp_path, stream_file, capsys):
        stream = stream_file("q3.txt", 8, hypercube(3))
        assert self.run_pair(tmp_path, stream, behavior="broken-path") == EXIT_FALSE
        assert body(capsys.readouterr().out)[0].startswith("REJECT(path-")

    def test_private_verifier_seed(self, tmp_path, stream_file, capsys):
        stream = stream_file("q3.txt", 8, hypercube(3))
        assert self.run_pair(tmp_path, stream, "--verifier-seed", "987654321") == EXIT_OK
        assert body(capsys.readouterr().out) == ["OUTPUT(true)"]

    def test_honest_false_claim(self, tmp_path, stream_file, capsys):
        stream = stream_file("p.txt", 5, path(5))
        assert self.run_pair(tmp_path, stream) == EXIT_FALSE
        assert body(capsys.readouterr().out) == ["OUTPUT(false)"]


class TestGenCommand:
    def test_deterministic(self, capsys):
        dispatch(["gen", "random", "--n", "6", "--seed", "5"])
        first = capsys.readouterr().out
        dispatch(["gen", "random", "--n", "6", "--seed", "5"])
        assert capsys.readouterr().out == first
        assert first.startswith("SGT 6 65536\n# seed=5\n")

    def test_seed_from_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("SKETCH_SEED", "42")
        assert dispatch(["gen", "eqidx-conn", "--p", "2", "--q", "4", "--equal"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[1] == "# seed=42"

    def test_flag_overrides_environment(self, monkeypatch, capsys):
        monkeypatch.setenv("SKETCH_SEED", "42")
        dispatch(["gen", "random", "--n", "3", "--seed", "7"])
        assert capsys.readouterr().out.splitlines()[1] == "# seed=7"


class TestSketchCommand:
    def test_element_stream(self, tmp_path, capsys):
        target = tmp_path / "e.txt"
        assert dispatch(["gen", "eqidx-distinct", "--p", "4", "--q", "2", "--equal", "--seed", "2"]) == EXIT_OK
        target.write_text(capsys.readouterr().out, encoding="utf-8")
        sketch_path = tmp_path / "e.sketch"
        assert dispatch(["sketch", str(target), "--out", str(sketch_path), "--seed", "2"]) == EXIT_OK
        lines = body(capsys.readouterr().out)
        assert lines[0].startswith("sample ")
        assert lines[1] == "distinct 3"
        assert sketch_path.read_bytes()[:4] == b"L0SK"

    def test_forest(self, stream_file, capsys):
        assert dispatch(["forest", stream_file("p.txt", 4, path(4)), "--seed", "1"]) == EXIT_OK
        edges = {tuple(map(int, line.split())) for line in body(capsys.readouterr().out)}
        assert edges <= set(path(4))


class TestUsageErrors:
    @pytest.mark.parametrize("argv", [
        [],
        ["prove"],
        ["verify", "--scheme", "nope", "--k", "2", "a", "b"],
        ["cert", "--k", "0", "x.txt"],
        ["gen", "random", "--n", "4", "--seed", "-1"],
        ["oracle", "components"],
    ])
    def test_bad_arguments(self, argv):
        assert dispatch(argv) == EXIT_USAGE

    def test_missing_file(self, tmp_path):
        assert dispatch(["oracle", "components", str(tmp_path / "none.txt")]) == EXIT_USAGE

    def test_malformed_stream(self, tmp_path):
        target = tmp_path / "bad.txt"
        target.write_text("SGT 3 1\n1 1 +1\n", encoding="utf-8")
        assert dispatch(["forest", str(target)]) == EXIT_USAGE

    def test_element_stream_where_graph_is_needed(self, tmp_path):
        target = tmp_path / "e.txt"
        target.write_text("ELEM 4 1\n1 +1\n", encoding="utf-8")
        assert dispatch(["forest", str(target)]) == EXIT_USAGE

    def test_mode_not_supported_by_scheme(self, stream_file):
        target = stream_file("q3.txt", 8, hypercube(3))
        assert dispatch(["prove", "--scheme", "kvconn", "--k", "2", "--mode", "edge", target]) == EXIT_USAGE

    def test_help(self):
        assert dispatch(["--help"]) == EXIT_OK

    def test_version(self, capsys):
        assert dispatch(["--version"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "SGT Sketch Toolkit 0.1.0"


class TestBench:
    def test_lines_are_reproducible(self):
        first = run_bench(4, ["sampler-accuracy"])
        assert run_bench(4, ["sampler-accuracy"]) == first
        result = json.loads(first[0])
        assert result["job"] == "sampler-accuracy" and result["seed"] == 4
        assert result["hits"] + result["fails"] <= result["trials"]

    def test_failing_job_is_logged_and_raised(self, monkeypatch, caplog):
        def broken(seed):
            raise RuntimeError("boom")

        monkeypatch.setitem(bench.BENCH_JOBS, "broken", broken)
        with pytest.raises(RuntimeError):
            run_bench(1, ["sampler-accuracy", "broken"])
        assert "broken" in caplog.text

    @pytest.mark.slow
    def test_all_jobs(self, capsys):
        assert dispatch(["bench", "--seed", "1"]) == EXIT_OK
        assert len(body(capsys.readouterr().out)) == 4

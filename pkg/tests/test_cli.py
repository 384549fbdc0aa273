import json

import pytest

from subarch import load_architecture, load_library
from subarch.cli import main
from dotcheck import check_dot

RING5 = {"name": "ring5", "num_qubits": 5,
         "edges": [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]]}
FIG_CIRCUIT_TEXT = "qubits 4\ncx 2 3\ncx 2 1\ncx 1 0\ncx 3 0\n"


@pytest.fixture()
def ring_path(tmp_path):
    path = tmp_path / "ring5.json"
    path.write_text(json.dumps(RING5), encoding="utf-8")
    return str(path)


@pytest.fixture()
def circuit_path(tmp_path):
    path = tmp_path / "fig.qgates"
    path.write_text(FIG_CIRCUIT_TEXT, encoding="utf-8")
    return str(path)


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExitCodes:
    def test_success(self, capsys, ring_path):
        code, out, _ = run(capsys, "census", ring_path, "--json")
        assert code == 0
        assert json.loads(out)["connected"] == 21

    def test_usage_error_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1

    def test_usage_error_missing_argument(self, capsys):
        code, _, _ = run(capsys, "enumerate", "ibmq_guadalupe")
        assert code == 1

    def test_validation_error_bad_file(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"name": "x", "num_qubits": 2, "edges": [[0, 0]]}')
        code, _, err = run(capsys, "census", str(bad))
        assert code == 2
        assert "self-loop" in err

    def test_validation_error_missing_arch(self, capsys):
        code, _, err = run(capsys, "census", "no-such-device")
        assert code == 2

    def test_resource_error_time_limit(self, capsys):
        code, _, err = run(
            capsys, "cover", "ibmq_guadalupe", "--size", "9", "--max", "1",
            "--time-limit", "0",
        )
        assert code == 3

    def test_resource_error_oracle_too_big(self, capsys, circuit_path):
        code, _, err = run(
            capsys, "oracle", "ibmq_guadalupe", "--circuit", circuit_path
        )
        assert code == 3


class TestCommands:
    def test_devices(self, capsys):
        code, out, _ = run(capsys, "devices")
        assert code == 0 and "sycamore_23" in out

    def test_enumerate_subsets(self, capsys, ring_path):
        code, out, _ = run(capsys, "enumerate", ring_path, "--size", "4")
        assert code == 0
        assert out.splitlines() == ["0,1,2,3", "0,1,2,4", "0,1,3,4", "0,2,3,4", "1,2,3,4"]

    def test_enumerate_classes(self, capsys, ring_path):
        code, out, _ = run(capsys, "enumerate", ring_path, "--size", "4", "--classes")
        assert code == 0
        assert out.strip() == "[0, 1, 2, 3] x5"

    def test_candidates_json(self, capsys, ring_path):
        code, out, _ = run(capsys, "candidates", ring_path, "--size", "4", "--json")
        body = json.loads(out)
        assert [m["size"] for m in body["members"]] == [5]

    def test_oracle(self, capsys, ring_path, circuit_path):
        code, out, _ = run(
            capsys, "oracle", ring_path, "--circuit", circuit_path, "--json"
        )
        assert code == 0
        assert json.loads(out)["swap_count"] == 1

    def test_oracle_budget_verdict(self, capsys, circuit_path, tmp_path):
        path4 = tmp_path / "p4.json"
        path4.write_text(json.dumps({"name": "p4", "num_qubits": 4,
                                     "edges": [[0, 1], [1, 2], [2, 3]]}))
        code, out, _ = run(
            capsys, "oracle", str(path4), "--circuit", circuit_path,
            "--budget", "1", "--json",
        )
        body = json.loads(out)
        assert code == 0 and not body["exact"] and body["swap_count"] == 1

    def test_witness(self, capsys, tmp_path):
        chair = tmp_path / "chair.json"
        chair.write_text(json.dumps({"name": "chair", "num_qubits": 5,
                                     "edges": [[0, 1], [1, 2], [2, 3], [1, 4]]}))
        code, out, _ = run(
            capsys, "witness", str(chair), "--sub1", "0,1,2,3",
            "--sub2", "0,1,2,4", "--reps", "4", "--json",
        )
        body = json.loads(out)
        assert code == 0 and body["strict"]

    def test_compare(self, capsys, ring_path, tmp_path):
        path4 = tmp_path / "p4.json"
        path4.write_text(json.dumps({"name": "p4", "num_qubits": 4,
                                     "edges": [[0, 1], [1, 2], [2, 3]]}))
        code, out, _ = run(
            capsys, "compare", str(path4), ring_path, "--size", "4",
            "--budget", "4", "--json",
        )
        body = json.loads(out)
        assert code == 0 and body["verdict"] == "second strictly covers first"

    def test_precompute_round_trips(self, capsys, ring_path, tmp_path, monkeypatch):
        monkeypatch.setenv("SOURCE_DATE_EPOCH", "1700000000")
        out_path = tmp_path / "ring5.lib.json"
        code, out, _ = run(
            capsys, "precompute", ring_path, "--sizes", "3..4",
            "--cover", "1", "--out", str(out_path), "--json",
        )
        assert code == 0
        arch = load_architecture(ring_path)
        lib = load_library(out_path, arch)
        assert [n for n, _ in lib.entries] == [3, 4]

    def test_dot_output(self, capsys, ring_path, tmp_path):
        dot_path = tmp_path / "cand.dot"
        code, _, _ = run(
            capsys, "candidates", ring_path, "--size", "4", "--dot", str(dot_path)
        )
        assert code == 0
        assert check_dot(dot_path.read_text()) == 1  # one graph per member

    def test_cover_dot_output(self, capsys, tmp_path):
        dot_path = tmp_path / "cover.dot"
        code, _, _ = run(
            capsys, "cover", "ibmq_guadalupe", "--size", "9", "--max", "2",
            "--dot", str(dot_path),
        )
        assert code == 0
        assert check_dot(dot_path.read_text()) == 2

    def test_cover_k2_member_sizes_include_11(self, capsys):
        code, out, _ = run(
            capsys, "cover", "ibmq_guadalupe", "--size", "9", "--max", "2", "--json"
        )
        assert code == 0
        assert 11 in json.loads(out)["member_sizes"]


class TestDeterminism:
    def test_repeated_census_identical(self, capsys):
        _, out1, _ = run(capsys, "census", "rigetti_16", "--json")
        _, out2, _ = run(capsys, "census", "rigetti_16", "--json")
        assert out1 == out2

    def test_jobs_do_not_change_output(self, capsys):
        _, out1, _ = run(capsys, "census", "rigetti_16", "--json", "--jobs", "1")
        _, out8, _ = run(capsys, "census", "rigetti_16", "--json", "--jobs", "8")
        assert out1 == out8

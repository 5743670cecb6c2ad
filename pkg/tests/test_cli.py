"""End-to-end command line behavior: exit codes, JSON determinism,
file round trips.  Everything runs in process through main(argv);
two subprocess smoke tests cover the installed entry points."""

import json
import subprocess
import sys

import pytest

from trilie.bundleio import dumps_bundle, load_bundle
from trilie.cli import main
from trilie.corpus import d4_bundle
from trilie.exactq import MatrixQ


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def corpus_file(tmp_path, capsys, name, *extra):
    path = tmp_path / f"{name}.json"
    code, _, err = run(capsys, "corpus", name, "-o", str(path), *extra)
    assert code == 0, err
    return str(path)


# -- corpus ----------------------------------------------------------------


def test_corpus_stdout_matches_library_serialization(capsys):
    code, out, _ = run(capsys, "corpus", "d4")
    assert code == 0
    assert out == dumps_bundle(d4_bundle())
    code2, out2, _ = run(capsys, "corpus", "d4")
    assert (code2, out2) == (0, out)


def test_corpus_writes_loadable_file(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "toy-split", "--window", "2")
    B = load_bundle(path)
    assert B.name == "toy-split" and B.L.n == 10


def test_corpus_rejects_unknown_name(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["corpus", "heisenberg"])
    assert exc.value.code == 2


def test_corpus_rejects_out_of_range_window(capsys):
    code, _, err = run(capsys, "corpus", "toy-split", "--window", "9")
    assert code == 2
    assert "window" in err


# -- check -----------------------------------------------------------------


def test_check_passing_bundle_exits_zero(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "toy-split", "--window", "2")
    code, out, _ = run(capsys, "check", path, "--report", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True and obj["failures"] == []
    names = [s["suite"] for s in obj["sections"]]
    assert names[0] == "core" and "thm1" in names and "class-ideals" in names
    # "all" must not run the split gate twice
    assert names.count("decomposition") == 1


def test_check_failing_bundle_exits_one(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "jacobian-weak")
    code, out, _ = run(capsys, "check", path, "--suite", "rinehart",
                       "--report", "json")
    assert code == 1
    obj = json.loads(out)
    assert obj["passed"] is False
    assert any("full-rinehart" in f for f in obj["failures"])


def test_check_json_is_deterministic_and_untimed(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "tprime-split", "--window", "2")
    code1, out1, _ = run(capsys, "check", path, "--suite", "core",
                         "--report", "json")
    code2, out2, _ = run(capsys, "check", path, "--suite", "core",
                         "--report", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    assert "elapsed" not in out1
    code3, out3, _ = run(capsys, "check", path, "--suite", "core")
    assert code3 == 0 and "elapsed:" in out3


def test_failed_hypothesis_does_not_flip_exit_code(tmp_path, capsys):
    # tprime: both direct-sum hypotheses fail, every assertion holds
    path = corpus_file(tmp_path, capsys, "tprime-split", "--window", "2")
    code, out, _ = run(capsys, "check", path, "--suite", "classes",
                       "--report", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    ds = next(s for s in obj["sections"] if s["suite"] == "direct-sum")
    status = {c["name"]: c["status"] for c in ds["checks"]}
    assert status["center-trivial"] == "fail"
    assert status["H-generated"] == "fail"
    assert status["ideal-direct-sum"] == "blocked"


def test_check_missing_file_exits_two(capsys):
    code, _, err = run(capsys, "check", "/no/such/bundle.json")
    assert code == 2 and "error:" in err


# -- decompose and connect ---------------------------------------------------


def test_decompose_tprime_report(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "tprime-split", "--window", "3")
    code, out, _ = run(capsys, "decompose", path, "--report", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["passed"] is True
    assert len(obj["roots"]) == 6 and len(obj["weights"]) == 6
    assert obj["root_classes"] == [[0, 1, 2, 3, 4, 5]]
    assert obj["A0"] == [["1"] + ["0"] * 6]
    assert obj["ideals"][0]["dim"] == 14
    assert [r["dim"] for r in obj["roots"]] == [2] * 6


def test_decompose_reports_split_failure(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "tb-rinehart", "--window", "3")
    B = load_bundle(path)
    hfile = tmp_path / "H.json"
    rows = [[[B.L_labels.index("x"), "1"]], [[B.L_labels.index("y"), "1"]]]
    hfile.write_text(json.dumps(rows))
    code, out, _ = run(capsys, "decompose", path, "--H", str(hfile),
                       "--report", "json")
    assert code == 1
    obj = json.loads(out)
    assert obj["passed"] is False
    assert obj["split_error"] == "not split over Q"


def test_connect_classes_and_query(tmp_path, capsys):
    path = corpus_file(tmp_path, capsys, "tprime-split", "--window", "3")
    code, out, _ = run(capsys, "connect", path, "--report", "json")
    assert code == 0
    assert json.loads(out)["classes"] == [[0, 1, 2, 3, 4, 5]]

    # roots sort by matrix key: index 2 is gamma_1, index 1 is gamma_2
    code, out, _ = run(capsys, "connect", path, "--src", "2", "--dst", "1",
                       "--report", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["connected"] is True and obj["chain_valid"] is True
    assert len(obj["chain"]) == 3

    code, _, err = run(capsys, "connect", path, "--src", "0")
    assert code == 2 and "--src and --dst" in err
    code, _, err = run(capsys, "connect", path, "--src", "0", "--dst", "99")
    assert code == 2 and "out of range" in err


# -- construct ---------------------------------------------------------------


def test_construct_twist_seed_output_is_verified(tmp_path, capsys):
    out_path = tmp_path / "twisted.json"
    code, _, err = run(capsys, "construct", "twist", "--seed", "3",
                       "-o", str(out_path))
    assert code == 0, err
    B = load_bundle(str(out_path))  # load re-verifies the flag claims
    assert B.meta["flags"]["full_rinehart"] is True
    assert B.meta["construction"] == "twist"


def test_construct_tensor_seed_output_checks_clean(tmp_path, capsys):
    out_path = tmp_path / "tensor.json"
    code, _, err = run(capsys, "construct", "tensor", "--seed", "0",
                       "-o", str(out_path))
    assert code == 0, err
    code, out, _ = run(capsys, "check", str(out_path), "--suite", "core",
                       "--report", "json")
    assert code == 0 and json.loads(out)["passed"] is True


def test_construct_twist_from_maps_file(tmp_path, capsys):
    base = corpus_file(tmp_path, capsys, "d4")
    maps = tmp_path / "maps.json"
    maps.write_text(json.dumps({
        "alpha": [[i, i, "-1"] for i in range(4)],
        "phi": [[i, i, "1"] for i in range(3)],
    }))
    out_path = tmp_path / "d4t.json"
    code, _, err = run(capsys, "construct", "twist", base,
                       "--maps", str(maps), "-o", str(out_path))
    assert code == 0, err
    B = load_bundle(str(out_path))
    assert B.name == "d4-twisted"
    assert B.L.alpha == MatrixQ.diagonal((-1, -1, -1, -1))


def test_construct_twist_requires_maps_or_seed(tmp_path, capsys):
    base = corpus_file(tmp_path, capsys, "d4")
    code, _, err = run(capsys, "construct", "twist", base)
    assert code == 2 and "--maps" in err
    code, _, err = run(capsys, "construct", "twist")
    assert code == 2 and "--seed" in err


# -- entry points ------------------------------------------------------------


def test_module_entry_point_runs():
    proc = subprocess.run([sys.executable, "-m", "trilie", "corpus", "d4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["name"] == "d4"


def test_console_script_runs():
    proc = subprocess.run(["trilie", "corpus", "d4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["name"] == "d4"

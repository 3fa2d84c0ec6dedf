import csv
import io
import json

import pytest

from shnirelman import __version__
from shnirelman.cli import run


def invoke(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = invoke(capsys, *argv)
    return code, json.loads(out)


def test_density_odds(capsys):
    code, rep = report(capsys, "density", "--n", "1", "--N", "100", "--set", "odds")
    assert code == 0
    assert rep["value"] == "1/2"
    assert rep["value_approx"] == 0.5
    assert rep["tool"] == {"name": "shnirelman", "version": __version__}
    assert rep["config"]["set"] == "odds" and rep["config"]["box"] == [100]


def test_verify_shnirelman_random_instance(capsys):
    code, rep = report(capsys, "verify", "shnirelman", "--n", "2", "--m", "3,3",
                       "--setA", "random:p=1/2,atoms=yes",
                       "--setB", "random:p=1/2,atoms=yes", "--seed", "7")
    assert code == 0 and rep["verdict"] == "holds"
    assert rep["hypotheses"]["atoms_in_B"] is True
    assert "/" in rep["alpha"] and "/" in rep["min_margin"]


def test_verify_mann_nd_reports_without_asserting(capsys):
    code, rep = report(capsys, "verify", "mann", "--n", "2", "--m", "4,4",
                       "--setA", "random:p=0.7,atoms=yes", "--setB", "random:p=0.6,atoms=yes")
    assert rep["asserted"] is False
    assert rep["theorem"] == "mann-explorer"
    assert code == (3 if rep["observation"] == "candidate-observation" else 0)


def test_reproducible_modulo_timestamp(capsys):
    argv = ["verify", "shnirelman", "--m", "2,2", "--setA", "random:p=0.5",
            "--setB", "random:p=0.5,atoms=yes", "--seed", "3", "--margins"]
    _, a, _ = invoke(capsys, *argv)
    _, b, _ = invoke(capsys, *argv)
    a, b = json.loads(a), json.loads(b)
    a.pop("timestamp"), b.pop("timestamp")
    assert json.dumps(a) == json.dumps(b)


def test_same_spec_gives_independent_sets():
    from shnirelman.cli import _build
    from shnirelman.order_core import Box

    box = Box((5, 5))
    A, B = (_build("random:p=0.5", box, 1, k) for k in (0, 1))
    assert A != B
    assert A == _build("random:p=0.5", box, 1, 0)


def test_exit_codes(capsys):
    assert invoke(capsys, "basis", "--N", "50", "--set", "evens")[0] == 2
    assert invoke(capsys, "basis", "--N", "50", "--set", "odds")[0] == 0
    assert invoke(capsys, "verify", "cover", "--N", "30", "--setA", "evens",
                  "--setB", "evens")[0] == 2
    assert invoke(capsys, "verify", "pigeonhole", "--N", "30", "--setA", "odds",
                  "--setB", "odds")[0] == 0


@pytest.mark.parametrize("argv", [
    ["density", "--N", "10", "--set", "bogus"],
    ["density", "--set", "odds"],
    ["density", "--m", "2,x", "--set", "full"],
    ["density", "--n", "3", "--m", "2,2", "--set", "full"],
    ["density", "--m", "9,9,9", "--set", "full"],
    ["verify"],
    ["nosuch"],
    ["verify", "product", "--N", "10", "--setA", "odds"],
    ["verify", "pigeonhole", "--m", "2,2", "--setA", "full", "--setB", "full", "--x", "5,5"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, out, err = invoke(capsys, *argv)
    assert code == 1
    assert out == ""


def test_cap_error_is_verbatim(capsys):
    code, _, err = invoke(capsys, "density", "--m", "4,4", "--set", "full", "--cap", "10")
    assert code == 1 and "cap of 10" in err


def test_csv_margins(capsys):
    code, out, _ = invoke(capsys, "verify", "shnirelman", "--N", "6", "--setA", "odds",
                          "--setB", "list:1,2", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["ideal", "margin"]
    assert len(rows) == 7
    assert json.loads(rows[1][0]) == [[1]]


def test_csv_and_text_flatten(capsys):
    _, out, _ = invoke(capsys, "density", "--N", "9", "--set", "odds", "--format", "csv")
    rows = dict(list(csv.reader(io.StringIO(out)))[1:])
    assert rows["value"] == "1/2" and rows["config.seed"] == "0"
    _, out, _ = invoke(capsys, "density", "--N", "9", "--set", "odds", "--format", "text")
    assert "value: 1/2" in out


def test_output_file(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = invoke(capsys, "sumset", "--N", "10", "--setA", "list:1,2",
                          "--setB", "list:1", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["sumset"] == [1, 2, 3]


def test_partition_worked_example(capsys):
    code, rep = report(capsys, "partition", "--N", "5", "--ideal", "list:5",
                       "--setB", "list:1,3")
    parts = rep["certificate"]["parts"]
    assert code == 0
    assert [p["J_l"] for p in parts] == [[[2]], [[4], [5]]]
    assert all(rep["certificate"]["invariants"].values())


def test_partition_empty_j_star(capsys):
    code, rep = report(capsys, "partition", "--N", "3", "--ideal", "list:2",
                       "--setB", "full")
    assert code == 2 and rep["verdict"] == "hypothesis-not-met"


def test_verify_product_and_pigeonhole_nd(capsys):
    code, rep = report(capsys, "verify", "product", "--m", "2,2",
                       "--sets", "random:p=0.6,atoms=yes", "random:p=0.5,atoms=yes", "full")
    assert code == 0 and len(rep["alphas"]) == 3
    code, rep = report(capsys, "verify", "pigeonhole", "--m", "2,2", "--setA", "full",
                       "--setB", "full", "--x", "2,1")
    assert code == 0 and rep["witnesses"][0]["x"] == [2, 1]


def test_suite_parallel(capsys):
    code, rep = report(capsys, "suite", "--preset", "paper-acceptance", "--jobs", "4")
    assert code == 0
    assert [c["number"] for c in rep["criteria"]] == list(range(1, 9))
    assert invoke(capsys, "suite", "--preset", "nope")[0] == 1

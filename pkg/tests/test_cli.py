import json

import pytest

from treechild import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_count_commands(capsys):
    assert run(capsys, "count", "otc", "--d", "3", "--n", "3", "--k", "2") == (0, "60\n")
    assert run(capsys, "count", "tcmax", "--d", "2", "--n", "8") == (
        0, "8485564550400\n",
    )
    assert run(capsys, "count", "c", "--d", "2", "--n", "3") == (0, "106\n")
    assert run(capsys, "count", "b", "--d", "2", "--n", "2", "--k", "2") == (0, "4\n")
    assert run(capsys, "count", "otc", "--d", "2", "--n", "2") == (0, "3\n")


def test_enumerate_words(capsys):
    code, out = run(capsys, "enumerate", "words", "--d", "2", "--n", "2")
    assert code == 0
    assert out.splitlines() == [
        "111222", "112122", "112212", "121122", "121212", "211122", "211212",
    ]
    code, out = run(capsys, "enumerate", "words", "--d", "3", "--n", "2",
                    "--format", "count")
    assert (code, out) == (0, "25\n")


def test_enumerate_networks(capsys):
    code, out = run(capsys, "enumerate", "networks", "--d", "2", "--n", "3",
                    "--k", "2", "--format", "count")
    assert (code, out) == (0, "42\n")
    code, out = run(capsys, "enumerate", "networks", "--d", "5", "--n", "2",
                    "--k", "1", "--format", "count")
    assert (code, out) == (0, "2\n")
    code, out = run(capsys, "enumerate", "networks", "--d", "2", "--n", "2",
                    "--k", "1", "--format", "json")
    payload = json.loads(out)
    assert payload["command"] == "enumerate"
    assert payload["result"]["count"] == 2
    assert payload["version"]
    code, out = run(capsys, "enumerate", "networks", "--d", "2", "--n", "2",
                    "--k", "1", "--format", "dot")
    assert code == 0 and out.count("digraph") == 2


def test_enumerate_one_component(capsys):
    code, out = run(capsys, "enumerate", "networks", "--d", "3", "--n", "3",
                    "--k", "2", "--one-component", "--format", "count")
    assert (code, out) == (0, "60\n")


def test_verify_suites(capsys):
    code, out = run(capsys, "verify", "--suite", "sandwich")
    assert code == 0
    assert json.loads(out)["result"]["pass"] is True
    code, out = run(capsys, "verify", "--suite", "words", "--d", "4")
    assert code == 0
    code, out = run(capsys, "verify", "--suite", "props", "--d", "2", "--q", "25")
    assert code == 0
    report = json.loads(out)["result"]
    assert report["subsolution"]["n_threshold"] is not None
    # the garbled printed coefficient fails the super-solution sweep: exit 1
    code, out = run(capsys, "verify", "--suite", "props", "--d", "2", "--q", "13")
    assert code == 1
    assert json.loads(out)["result"]["supersolution"]["n_threshold"] is None


def test_dist_commands(capsys):
    code, out = run(capsys, "dist", "--d", "3", "--n", "500", "--limit", "bessel")
    assert code == 0
    assert json.loads(out)["result"]["tv"] < 0.01
    code, out = run(capsys, "dist", "--d", "4", "--n", "100", "--limit",
                    "degenerate")
    assert code == 0
    assert json.loads(out)["result"]["p_max"] >= 0.99
    code, out = run(capsys, "dist", "--d", "2", "--n", "8", "--exploratory",
                    "poisson")
    assert code == 0
    assert "poisson_half" in out
    code, out = run(capsys, "dist", "--d", "2", "--n", "4", "--exploratory",
                    "words")
    assert code == 0
    rows = json.loads(out)["result"]["comparison"]
    assert rows[3]["predicted_tc"] == 2544
    code, out = run(capsys, "dist", "--d", "2", "--n", "6", "--format", "csv")
    assert code == 0 and out.startswith("k,log_prob")


def test_asym_commands(capsys):
    code, out = run(capsys, "asym", "root")
    assert code == 0
    assert abs(json.loads(out)["result"]["a1"] + 2.33810741) < 1e-6
    code, out = run(capsys, "asym", "residual", "--d", "2", "--window",
                    "300", "700")
    assert code == 0
    assert json.loads(out)["result"]["oscillation"] < 0.5


def test_exit_codes():
    assert cli.main(["count", "otc", "--d", "1", "--n", "3", "--k", "1"]) == 2
    assert cli.main(["count", "nosuch", "--d", "2", "--n", "3"]) == 2
    assert cli.main(["enumerate", "words", "--d", "2", "--n", "6",
                     "--budget", "10"]) == 3
    assert cli.main(["count", "b", "--d", "2", "--n", "3"]) == 2


def test_byte_determinism(capsys):
    first = run(capsys, "enumerate", "networks", "--d", "2", "--n", "3",
                "--k", "1", "--format", "json")
    second = run(capsys, "enumerate", "networks", "--d", "2", "--n", "3",
                 "--k", "1", "--format", "json")
    assert first == second
    first = run(capsys, "verify", "--suite", "sandwich")
    second = run(capsys, "verify", "--suite", "sandwich")
    assert first == second


def test_big_integers_become_strings():
    assert cli._jint(2**53 - 1) == 2**53 - 1
    assert cli._jint(2**53) == str(2**53)
    assert cli._jint(8485564550400) == 8485564550400
    assert json.dumps(cli._jint(10**20)) == '"100000000000000000000"'

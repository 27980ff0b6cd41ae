import csv
import io
import json

import pytest

from urnlab.cli import echo_to_argv, main


def call(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def envelope(capsys, *argv):
    code, out = call(capsys, *argv)
    assert code == 0, out
    return json.loads(out)


def test_analyze_two_thirds(capsys):
    env = envelope(capsys, "analyze", "--rule", "3:1,2")
    assert env["command"] == "analyze"
    assert env["inputs"] == {"rule": "3:1,2"}
    assert isinstance(env["timing_ms"], int)
    res = env["results"]
    assert res["rational"] == "2/3"
    assert res["alpha_approx"] == pytest.approx(2 / 3, abs=1e-15)
    assert res["b_at_half_sign"] == 1
    assert len(res["roots"]) == 2


def test_analyze_empty_rule_syntax(capsys):
    res = envelope(capsys, "analyze", "--rule", "1:")["results"]
    assert res["rational"] == "0/1"


def test_verify_small(capsys):
    res = envelope(capsys, "verify", "--k-max", "6", "--q-max", "20")["results"]
    assert res["violations"] == []
    assert res["rational_computed_numbers"] == ["0/1", "1/3", "1/2", "2/3", "1/1"]


def test_simulate_zero_steps(capsys):
    res = envelope(capsys, "simulate", "--rule", "1:0", "--n", "4", "--steps", "0",
                   "--initial", "m=2")["results"]
    assert res["trajectories"][0]["endpoint"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--rule", "3:1,9"],
        ["simulate", "--rule", "5:1", "--n", "3", "--steps", "4"],
        ["simulate", "--rule", "1:0", "--n", "4", "--steps", "1", "--initial", "m=9"],
        ["stationary", "--rule", "1:1", "--n", "4"],
        ["synthesize", "--target", "3/5", "--epsilon", "1/1000", "--k-max", "10"],
        ["exclusion", "--value", "3/2"],
    ],
)
def test_domain_errors_exit_one(capsys, argv):
    code, out = call(capsys, *argv)
    assert code == 1
    assert "error" in json.loads(out)


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--rule", "three:1"],
        ["analyze"],
        ["synthesize", "--target", "0.6.1", "--epsilon", "1/20"],
        ["simulate", "--rule", "1:0", "--n", "4", "--steps", "1", "--initial", "half"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_two(argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_stationary_error_lists_classes(capsys):
    # (3, {1, 2, 3}) never leaves 0 or n: two absorbing states
    code, out = call(capsys, "stationary", "--rule", "3:1,2,3", "--n", "6")
    assert code == 1
    assert json.loads(out)["error"]["recurrent_classes"] == [[0], [6]]


def test_stationary_ehrenfest(capsys):
    res = envelope(capsys, "stationary", "--rule", "1:0", "--n", "4", "--distribution")["results"]
    assert res["mean"] == "1/2"
    assert res["distribution"] == ["1/16", "1/4", "3/8", "1/4", "1/16"]


def test_synthesize_three_fifths(capsys):
    res = envelope(capsys, "synthesize", "--target", "3/5", "--epsilon", "1/20")["results"]
    assert res["rule"]["k"] % 5 == 0


def test_exclusion(capsys):
    assert envelope(capsys, "exclusion", "--value", "2/7")["results"]["verdict"] == "ProvablyNotComputable"
    res = envelope(capsys, "exclusion", "--value", "1/3")["results"]
    assert res["verdict"] == "KnownComputable"
    assert res["rule"] == {"k": 3, "E": [0, 3]}


@pytest.mark.parametrize(
    "argv",
    [
        ["analyze", "--rule", "8:0,4,5,8"],
        ["simulate", "--rule", "3:1,2", "--n", "50", "--steps", "300", "--seed", "11",
         "--runs", "3", "--epsilon", "1/20"],
        ["stationary", "--rule", "2:0,1", "--n", "8", "--distribution"],
        ["ode", "--rule", "3:1,2", "--t-end", "5", "--samples", "16", "--epsilon", "1/50"],
        ["flow", "--rule", "2:1", "--points", "11"],
        ["synthesize", "--target", "2/5", "--epsilon", "1/10"],
        ["verify", "--k-max", "4", "--q-max", "12"],
    ],
)
def test_round_trip(capsys, argv):
    first = envelope(capsys, *argv)
    again = envelope(capsys, *echo_to_argv(first["command"], first["inputs"]))
    assert json.dumps(again["results"]) == json.dumps(first["results"])
    assert again["inputs"] == first["inputs"]
    assert "seed" in first["inputs"] or argv[0] != "simulate"


def test_csv_matches_json(capsys):
    base = ["simulate", "--rule", "2:1", "--n", "40", "--steps", "200", "--seed", "5",
            "--record-stride", "7"]
    res = envelope(capsys, *base)["results"]
    code, text = call(capsys, *base, "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [[int(r["step"]), int(r["count"])] for r in rows] == res["trajectories"][0]["samples"]
    assert rows[-1]["step"] == "200"


def test_csv_multiple_runs_has_run_column(capsys):
    code, text = call(capsys, "simulate", "--rule", "2:1", "--n", "10", "--steps", "5",
                      "--runs", "2", "--format", "csv")
    assert code == 0
    assert text.splitlines()[0] == "run,step,count,proportion"


def test_ode_csv_matches_json(capsys):
    base = ["ode", "--rule", "3:1,2", "--t-end", "3", "--samples", "8"]
    res = envelope(capsys, *base)["results"]
    _, text = call(capsys, *base, "--format", "csv")
    rows = list(csv.reader(io.StringIO(text)))[1:]
    assert [[float(t), float(x)] for t, x in rows] == res["samples"]
    assert len(rows) == 9


def test_search_writes_catalog(capsys, tmp_path):
    path = tmp_path / "catalog.json"
    res = envelope(capsys, "search", "--k-max", "3", "--out", str(path))["results"]
    catalog = json.loads(path.read_text())
    assert len(catalog) == res["distinct_numbers"]
    assert {"rule", "alpha_interval", "alpha_approx", "rational"} <= set(catalog[0])
    rationals = {e["rational"] for e in catalog if e["rational"]}
    assert rationals == {"0/1", "1/3", "1/2", "2/3", "1/1"}


def test_out_file(capsys, tmp_path):
    path = tmp_path / "flow.csv"
    code, out = call(capsys, "flow", "--rule", "1:0", "--points", "3", "--format", "csv",
                     "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().splitlines() == ["x,b", "0,1", "0.5,0", "1,-1"]

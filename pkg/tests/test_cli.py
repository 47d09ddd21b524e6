import json

import pytest

from flowvol.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_kpf_path(capsys):
    code, out, _ = run_cli(capsys, "kpf", "--graph", "3:1-2,2-3", "--flow", "1,-1,0")
    assert (code, out) == (0, "1\n")


def test_kpf_implied_sink_entry(capsys):
    code, out, _ = run_cli(capsys, "kpf", "--graph", "3:1-2,1-3,2-3", "--flow", "1,1")
    assert (code, out) == (0, "2\n")


def test_kpf_rejects_disconnected_graph(capsys):
    code, out, err = run_cli(capsys, "kpf", "--graph", "3:1-2", "--flow", "1,-1,0")
    assert code == 2
    assert out == ""
    assert "error" in err


def test_kpf_rejects_bad_flow(capsys):
    code, _, err = run_cli(capsys, "kpf", "--graph", "3:1-2,2-3", "--flow", "1,1,1")
    assert code == 2
    assert "sum" in err


def test_volume_car4(capsys):
    code, out, _ = run_cli(capsys, "volume", "--graph", "car:4", "--flow", "1,1,5")
    assert (code, out) == (0, "3\n")


def test_ehrhart_ps(capsys):
    code, out, _ = run_cli(capsys, "ehrhart", "--family", "ps", "--n", "3", "--k", "2")
    assert (code, out) == (0, "7\n")


def test_ehrhart_car_all_methods(capsys):
    code, out, _ = run_cli(
        capsys, "ehrhart", "--family", "car", "--n", "3", "--k", "1", "--method", "all"
    )
    assert code == 0
    assert out == "kpf=2\nct=2\nenum=2\nclosed=2\nAGREE\n"


def test_ehrhart_explicit_graph(capsys):
    code, out, _ = run_cli(capsys, "ehrhart", "--graph", "car:4", "--k", "1")
    assert (code, out) == (0, "2\n")


def test_ehrhart_explicit_graph_rejects_family_methods(capsys):
    code, _, err = run_cli(
        capsys, "ehrhart", "--graph", "car:4", "--k", "1", "--method", "ct"
    )
    assert code == 2
    assert "family" in err


def test_enumerate_ld_list(capsys):
    code, out, _ = run_cli(
        capsys, "enumerate", "ld", "--n", "2", "--k", "1", "--zeros", "0", "--list"
    )
    assert (code, out) == (0, "UD1UD1\nUUD1D1\n")


def test_enumerate_dld_count(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "dld", "--n", "2", "--k", "1", "--count")
    assert (code, out) == (0, "7\n")


def test_enumerate_prefix_count(capsys):
    code, out, _ = run_cli(
        capsys,
        "enumerate", "prefix", "--n", "2", "--i", "1", "--k", "1", "--comp", "1,0",
        "--count",
    )
    assert (code, out) == (0, "2\n")


def test_enumerate_prefix_list(capsys):
    code, out, _ = run_cli(
        capsys,
        "enumerate", "prefix", "--n", "2", "--i", "1", "--k", "1", "--comp", "1,0",
        "--list",
    )
    assert (code, out) == (0, "UD0U\nUUD0\n")


def test_enumerate_ew_count(capsys):
    code, out, _ = run_cli(capsys, "enumerate", "ew", "--n", "2", "--k", "1", "--count")
    assert (code, out) == (0, "21\n")


def test_enumerate_rejects_stray_filters(capsys):
    code, _, err = run_cli(
        capsys, "enumerate", "dld", "--n", "2", "--k", "1", "--zeros", "0", "--count"
    )
    assert code == 2
    assert "filters" in err


def test_ct_evaluate(capsys):
    code, out, _ = run_cli(capsys, "ct", "--expr", "m:-1,0; p:1^1,2^1; d:1-2")
    assert (code, out) == (0, "2\n")


def test_ct_all_methods(capsys):
    code, out, _ = run_cli(
        capsys, "ct", "--expr", "m:0,0; p:1^2,2^2; d:1-2", "--method", "all"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("cp=") and lines[1].startswith("series=")
    assert lines[2] == "AGREE"


def test_ct_rejects_malformed(capsys):
    code, _, err = run_cli(capsys, "ct", "--expr", "p:1^1")
    assert code == 2
    assert "monomial" in err


def test_verify_small_suite_text(capsys):
    code, out, _ = run_cli(
        capsys, "verify", "--suite", "ps-ehrhart", "--max-n", "2", "--max-k", "1"
    )
    assert code == 0
    assert out.startswith("suite ps-ehrhart\n")
    assert "summary pass=3 fail=0 reported=0" in out


def test_verify_byte_identical_runs(capsys):
    args = ("verify", "--suite", "cyclic", "--max-n", "2", "--max-k", "1")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_verify_json_format(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify", "--suite", "ps-ehrhart", "--max-n", "2", "--max-k", "1",
        "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"] == {"pass": 3, "fail": 0, "reported": 0}


def test_verify_csv_format(capsys):
    code, out, _ = run_cli(
        capsys,
        "verify", "--suite", "ps-ehrhart", "--max-n", "2", "--max-k", "1",
        "--format", "csv",
    )
    assert code == 0
    assert out.splitlines()[0] == "id,params,expected,actual,status"


def test_verify_out_file(tmp_path, capsys):
    target = tmp_path / "report.csv"
    code, out, _ = run_cli(
        capsys,
        "verify", "--suite", "ps-ehrhart", "--max-n", "2", "--max-k", "1",
        "--format", "csv", "--out", str(target),
    )
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("id,params")


def test_verify_reported_discrepancies_keep_exit_zero(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "volumes", "--max-n", "3")
    assert code == 0
    assert "REPORTED-DISCREPANCY" in out


def test_verify_json_differs_only_in_duration(capsys):
    args = (
        "verify", "--suite", "ps-ehrhart", "--max-n", "2", "--max-k", "1",
        "--format", "json",
    )
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    a, b = json.loads(first), json.loads(second)
    a.pop("duration_ms"), b.pop("duration_ms")
    assert a == b


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--suite", "bogus"])
    assert exc.value.code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["kpf", "--graph", "nonsense", "--flow", "1"],
        ["kpf", "--graph", "3:1-2,2-3", "--flow", "1,x,0"],
        ["kpf", "--graph", "0:1-2", "--flow", "0"],
        ["volume", "--graph", "ps:2", "--flow", "1"],
        ["enumerate", "ld", "--n", "2", "--k", "1", "--comp", "9,9", "--count"],
        ["ehrhart", "--family", "ps", "--k", "1"],
        ["ct", "--expr", "m:1,2; d:2-1"],
    ],
)
def test_malformed_inputs_exit_2(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    assert code == 2
    assert captured.err.startswith("error:")

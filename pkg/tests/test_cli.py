import json

import pytest

from unital_lab import cli


def run_cli(args, capsys):
    code = cli.main(args)
    out = capsys.readouterr().out
    return code, out


def run_json(args, capsys):
    code, out = run_cli(args, capsys)
    return code, json.loads(out)


def test_verify_single_tuple(capsys):
    code, report = run_json(
        ["verify", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0"], capsys
    )
    assert code == 0
    assert report["tool"]["name"] == "unital-lab"
    (rec,) = report["records"]
    assert rec["status"] == "pass"
    assert rec["unital_size"] == 28 and rec["discriminant"] == 2
    assert all(rec["checks"].values())
    assert rec["tool_version"] == report["tool"]["version"]
    assert (rec["p"], rec["n"], rec["w"]) == (3, 1, 2)


def test_verify_sweep_reports_skipped_invalids(capsys):
    code, report = run_json(["verify", "--p", "3", "--n", "1"], capsys)
    assert code == 0
    assert len(report["records"]) == 81
    skipped = [r for r in report["records"] if str(r["status"]).startswith("skipped")]
    passed = [r for r in report["records"] if r["status"] == "pass"]
    assert report["summary"] == {"pass": 18, "fail": 0, "skipped": 63}
    assert len(skipped) == 63 and len(passed) == 18
    assert all("discriminant" in r for r in skipped)
    assert all(not r.get("checks", {}).get("fail") for r in passed)
    # classical control rows are flagged
    assert any(r["status"] == "pass" and r["classical"] for r in report["records"])


def test_verify_exit_2_when_a_check_fails(capsys, monkeypatch):
    real = cli._verify_chunk

    def sabotaged(pairs):
        out = real(pairs)
        for _, rec in out:
            if rec.get("status") == "pass":
                rec["checks"]["blocking"] = False
                rec["status"] = "fail"
        return out

    monkeypatch.setattr(cli, "_verify_chunk", sabotaged)
    code, report = run_json(
        ["verify", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0"], capsys
    )
    assert code == 2
    assert report["summary"]["fail"] == 1


def test_pedal_lambda_route(capsys):
    code, report = run_json(
        ["pedal", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--lambda", "1"],
        capsys,
    )
    assert code == 0
    (rec,) = report["records"]
    assert len(rec["feet"]) == 4
    assert rec["collinear"] is False
    assert rec["census"]["histogram"] == {"0": "57", "1": "28", "2": "6"} or rec["census"][
        "histogram"
    ] == {"0": 57, "1": 28, "2": 6}
    assert rec["arc_report"]["parts"] == [4, 0]
    assert rec["arc_report"]["single_arc"] is True
    assert "trace_classes" in rec and "foot_params" in rec


def test_pedal_point_route_matches_lambda(capsys):
    code1, rep1 = run_json(
        ["pedal", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--lambda", "w"],
        capsys,
    )
    code2, rep2 = run_json(
        ["pedal", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--point", "0,e*2,1"],
        capsys,
    )
    assert code1 == code2 == 0
    assert rep1["records"][0]["feet"] == rep2["records"][0]["feet"]


def test_pedal_point_on_infinity_line(capsys):
    code, report = run_json(
        ["pedal", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--point", "1,0,0"],
        capsys,
    )
    assert code == 0
    (rec,) = report["records"]
    assert rec["collinear"] is True
    assert "census" not in rec  # census is defined off the infinity line


def test_pedal_point_on_unital_is_domain_error(capsys):
    code, out = run_cli(
        ["pedal", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--point", "0,0,1"],
        capsys,
    )
    assert code == 1 and out == ""


def test_census_schema(capsys):
    code, report = run_json(
        ["census", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--lambda", "1"],
        capsys,
    )
    assert code == 0
    (rec,) = report["records"]
    assert set(rec) >= {"base_point", "histogram", "witnesses"}
    assert sum(int(v) for v in rec["histogram"].values()) == 91
    for line, pts in rec["witnesses"]:
        assert isinstance(line, str) and isinstance(pts, list)


def test_orbit_schema(capsys):
    code, report = run_json(
        ["orbit", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--lambda", "w"],
        capsys,
    )
    assert code == 0
    (rec,) = report["records"]
    assert rec["lambda"] == "w"
    assert len(rec["pedals"]) == 3
    assert {p["t"] for p in rec["pedals"]} == {0, 1, 2}
    assert all(len(p["feet"]) == 4 for p in rec["pedals"])
    assert len(rec["partition_lines"]) == 3
    assert sum(int(v) for v in rec["census_histogram"].values()) == 91


@pytest.mark.parametrize(
    "problem", ["four-lines", "conics", "orbit-census", "secant-partition", "incidence-structure"]
)
def test_scan_problems_q3(problem, capsys):
    code, report = run_json(["scan", "--p", "3", "--n", "1", "--problem", problem], capsys)
    assert code == 0
    assert report["summary"]["tuples"] == 12
    records = report["records"]
    assert records
    if problem == "four-lines":
        assert all(rec["beta_real"] for rec in records)
        assert not any(rec["size4_lines_exist"] for rec in records)
        assert all(rec["lambda_censuses_equal"] for rec in records)
    if problem == "conics":
        assert all(rec["parts"][1] == 0 for rec in records)
        assert all(rec["arc_checks"] for rec in records)
    if problem == "secant-partition":
        assert all(rec["all_partitioned"] for rec in records)
        assert all(rec["secants_checked"] == 63 for rec in records)
        assert all(rec["witness"]["pairs"] for rec in records)
    if problem == "orbit-census":
        assert all(sum(int(v) for v in rec["census_histogram"].values()) == 91 for rec in records)
    if problem == "incidence-structure":
        assert all(rec["points"] == 12 for rec in records)


def test_scan_four_lines_q5_has_positive_row(capsys):
    code, report = run_json(
        ["scan", "--p", "5", "--n", "1", "--problem", "four-lines", "--beta", "e"], capsys
    )
    assert code == 0
    rows = [r for r in report["records"] if r["alpha"] == "1"]
    assert rows and not rows[0]["beta_real"] and rows[0]["size4_lines_exist"]


def test_scan_requires_problem(capsys):
    code, out = run_cli(["scan", "--p", "3", "--n", "1"], capsys)
    assert code == 1


def test_missing_required_args(capsys):
    assert run_cli(["pedal", "--p", "3"], capsys)[0] == 1
    assert run_cli(["verify"], capsys)[0] == 1
    assert run_cli(["bogus"], capsys)[0] == 1
    assert run_cli(["orbit", "--p", "3", "--alpha", "1+e", "--beta", "0"], capsys)[0] == 1


def test_invalid_parameters_exit_1(capsys):
    # square discriminant on a single-tuple command is a usage-level error
    code, out = run_cli(
        ["pedal", "--p", "3", "--n", "1", "--alpha", "1", "--beta", "0", "--lambda", "1"],
        capsys,
    )
    assert code == 1 and out == ""


def test_w_override(capsys):
    code, report = run_json(
        ["verify", "--p", "5", "--n", "1", "--w", "3", "--alpha", "1", "--beta", "e"], capsys
    )
    assert code == 0
    assert report["config"]["w"] == 3
    bad_code, _ = run_cli(
        ["verify", "--p", "5", "--n", "1", "--w", "4", "--alpha", "1", "--beta", "e"], capsys
    )
    assert bad_code == 1  # 4 is a square


def test_env_variable_defaults(capsys, monkeypatch):
    monkeypatch.setenv("UNITAL_LAB_FORMAT", "csv")
    monkeypatch.setenv("UNITAL_LAB_P", "3")
    code, out = run_cli(["verify", "--alpha", "1+e", "--beta", "0"], capsys)
    assert code == 0
    header = out.splitlines()[0]
    assert header.startswith("alpha,") and "checks.blocking" in header
    # explicit flag beats the environment
    monkeypatch.setenv("UNITAL_LAB_FORMAT", "csv")
    code2, out2 = run_cli(
        ["verify", "--p", "3", "--alpha", "1+e", "--beta", "0", "--format", "json"], capsys
    )
    assert code2 == 0 and out2.lstrip().startswith("{")


def test_csv_projection_rows(capsys):
    code, out = run_cli(["verify", "--p", "3", "--n", "1", "--format", "csv"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 1 + 81  # header + one row per record


def test_output_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out = run_cli(
        ["verify", "--p", "3", "--n", "1", "--alpha", "1+e", "--beta", "0", "--out", str(target)],
        capsys,
    )
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["summary"]["pass"] == 1


def test_reports_byte_identical_across_jobs(tmp_path, capsys):
    pairs = {}
    for jobs in ("1", "8"):
        for cmd in (
            ["verify", "--p", "3", "--n", "1"],
            ["scan", "--p", "3", "--n", "1", "--problem", "conics"],
        ):
            target = tmp_path / f"{cmd[0]}-{jobs}.json"
            code, _ = run_cli([*cmd, "--jobs", jobs, "--out", str(target)], capsys)
            assert code == 0
            pairs.setdefault(cmd[0], {})[jobs] = target.read_bytes()
    for cmd, by_jobs in pairs.items():
        assert by_jobs["1"] == by_jobs["8"], f"{cmd} report differs across worker counts"

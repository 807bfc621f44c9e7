"""Tests de CheckReport, la comparación de reportes y el volcado de grilla."""

import csv
import math

import pytest
from pydantic import ValidationError

from conftest import pp
from fitzkit.convexfn.representations import HullFunc
from fitzkit.core.pair_space import Box
from fitzkit.dto.report_out_dto import CheckReportOutDto
from fitzkit.reports.check_report import CheckReport, load_report, to_jsonable, witness
from fitzkit.reports.grid_dump import dump_grid, grid_header
from fitzkit.reports.report_diff import report_diff
from fitzkit.utils.errors import InputError


def sample_report(**overrides) -> CheckReport:
    data = dict(
        check="polar-decide",
        operator="two_point",
        status="fail",
        window=Box.cube(2, 0.0, 1.0, 2),
        tolerances={"membership": 0.0},
        witnesses=[witness("polar_certificate", p=pp(0.0, 1.0), q=pp(1.0, 0.0), product=-1.0)],
        statistics={"evaluations": 4, "lp_calls": 0, "wall_time": 0.01},
        details={"verdict": "NotMonotone"},
    )
    data.update(overrides)
    return CheckReport(**data)


class TestCheckReport:
    def test_fail_requires_witness(self):
        with pytest.raises(InputError):
            sample_report(witnesses=[])

    def test_unknown_status(self):
        with pytest.raises(InputError):
            sample_report(status="maybe")

    def test_passed(self):
        assert sample_report(status="bounded-pass", witnesses=[]).passed
        assert not sample_report().passed

    def test_infinity_is_encoded(self):
        assert to_jsonable({"gap": math.inf}) == {"gap": "+inf"}
        assert to_jsonable(pp(1.0, 2.0)) == {"x": [1.0], "xs": [2.0]}

    def test_write_and_load(self, tmp_path):
        path = sample_report().write_json(tmp_path / "out" / "polar-decide.json")
        loaded = load_report(path)
        assert loaded.status == "fail"
        assert loaded.witnesses[0]["p"] == {"x": [0.0], "xs": [1.0]}
        assert loaded.window["resolution"] == [2, 2]
        assert [p.name for p in path.parent.iterdir()] == ["polar-decide.json"]

    def test_load_rejects_invalid(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"check": "x"}', encoding="utf-8")
        with pytest.raises(InputError):
            load_report(path)

    def test_dto_rejects_fail_without_witness(self):
        with pytest.raises(ValidationError):
            CheckReportOutDto(check="t0", operator="a", status="fail", version="0.1.0")


class TestReportDiff:
    def test_identical(self, tmp_path):
        a = sample_report().write_json(tmp_path / "a.json")
        b = sample_report().write_json(tmp_path / "b.json")
        diff = report_diff(a, b)
        assert diff.equivalent
        assert diff.exit_code == 0
        assert diff.render() == "reportes equivalentes"

    def test_wall_time_is_ignored(self, tmp_path):
        a = sample_report().write_json(tmp_path / "a.json")
        b = sample_report(statistics={"evaluations": 4, "lp_calls": 0, "wall_time": 9.0}).write_json(tmp_path / "b.json")
        assert report_diff(a, b).equivalent

    def test_status_difference(self, tmp_path):
        a = sample_report().write_json(tmp_path / "a.json")
        b = sample_report(status="bounded-pass", witnesses=[]).write_json(tmp_path / "b.json")
        diff = report_diff(a, b)
        assert diff.exit_code == 1
        assert any(d.startswith("status:") for d in diff.differences)

    def test_verdict_only(self, tmp_path):
        a = sample_report().write_json(tmp_path / "a.json")
        b = sample_report(details={"verdict": "otro"}).write_json(tmp_path / "b.json")
        assert not report_diff(a, b).equivalent
        assert report_diff(a, b, verdict_only=True).equivalent

    def test_different_checks_rejected(self, tmp_path):
        a = sample_report().write_json(tmp_path / "a.json")
        b = sample_report(check="premax").write_json(tmp_path / "b.json")
        with pytest.raises(InputError):
            report_diff(a, b)

    def test_directories(self, tmp_path):
        sample_report().write_json(tmp_path / "a" / "two_point" / "polar-decide.json")
        sample_report().write_json(tmp_path / "b" / "two_point" / "polar-decide.json")
        assert report_diff(tmp_path / "a", tmp_path / "b").equivalent
        sample_report(check="premax").write_json(tmp_path / "a" / "two_point" / "premax.json")
        diff = report_diff(tmp_path / "a", tmp_path / "b")
        assert diff.differences == ["two_point/premax.json: presente solo en a"]

    def test_file_against_directory(self, tmp_path):
        a = sample_report().write_json(tmp_path / "a.json")
        with pytest.raises(InputError):
            report_diff(a, tmp_path)


class TestGridDump:
    def test_header(self):
        assert grid_header(2) == ["x0", "x1", "xs0", "xs1", "value"]

    def test_rows_and_infinities(self, tmp_path):
        s = HullFunc([[0.0, 0.0], [1.0, 1.0]], [0.0, 1.0])
        path = dump_grid(s, Box.cube(2, 0.0, 1.0, 2), tmp_path / "s.csv")
        with path.open(encoding="utf-8") as f:
            rows = list(csv.reader(f))
        assert rows[0] == ["x0", "xs0", "value"]
        assert len(rows) == 5
        assert rows[2] == ["0.0", "1.0", "+inf"]
        assert float(rows[4][2]) == pytest.approx(1.0)

    def test_odd_window_rejected(self, tmp_path):
        s = HullFunc([[0.0]], [0.0])
        with pytest.raises(InputError):
            dump_grid(s, Box([0.0], [1.0], (2,)), tmp_path / "s.csv")

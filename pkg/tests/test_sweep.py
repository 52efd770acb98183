import json
import math

import numpy as np
import pytest

from vacprobe import sweep as sw
from vacprobe.errors import InvalidInputError
from vacprobe.sweep import (CSV_HEADER, SweepSpec, config_hash, crossings, csv_text, emit_csv, manifest_path,
                            run_sweep, write_manifest)


def small_fig1(steps=5):
    return SweepSpec("figure1", {"omega": [8.0, 11.0, steps]}, {"L": 1.0, "T": 1.0})


class TestSpec:
    def test_defaults(self):
        s = SweepSpec.default("figure1")
        assert s.size == 141
        assert s.grid["omega"][0] == 2.0 and s.grid["omega"][-1] == 16.0
        assert SweepSpec.default("werner").size == 101

    @pytest.mark.parametrize("grid", [{"omega": [1, 2, 1]}, {"omega": [2, 1, 5]}, {"omega": [1, 1, 5]}, {}])
    def test_invalid_grid(self, grid):
        with pytest.raises(InvalidInputError):
            SweepSpec("figure1", grid, {"L": 1.0})

    def test_disjoint(self):
        with pytest.raises(InvalidInputError):
            SweepSpec("figure1", {"omega": [1, 2, 3]}, {"omega": 1.0})

    def test_unknown_param(self):
        with pytest.raises(InvalidInputError):
            SweepSpec("figure1", {"omega": [1, 2, 3]}, {"mass": 1.0})

    def test_unknown_scenario(self):
        with pytest.raises(InvalidInputError):
            SweepSpec("figure3", {"omega": [1, 2, 3]}, {})

    def test_row_major(self):
        s = SweepSpec("custom", {"omega": [1, 2, 2], "L": {"values": [3.0, 4.0, 5.0]}}, {})
        pts = [(p["omega"], p["L"]) for p in s.points()]
        assert pts == [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]

    def test_from_dict_merges_defaults(self):
        s = SweepSpec.from_dict({"scenario": "figure2", "grid": {"L": [0.8, 1.2, 3]}})
        assert s.fixed == {"omega": 9.5, "T": 1.0}
        assert s.size == 3

    def test_from_dict_rejects_keys(self):
        with pytest.raises(InvalidInputError):
            SweepSpec.from_dict({"scenario": "werner", "colour": "red"})

    def test_hash_stable(self):
        assert config_hash(small_fig1()) == config_hash(small_fig1())
        assert config_hash(small_fig1(5)) != config_hash(small_fig1(6))


class TestRun:
    def test_rows_and_manifest(self):
        rows, man = run_sweep(small_fig1())
        assert len(rows) == 5
        assert [r.omega for r in rows] == list(np.linspace(8, 11, 5))
        for r in rows:
            assert r.entangled == int(r.ppt_min_eig < -1e-10)
            assert math.isfinite(r.ratio12) and r.ratio12 >= 0
            assert math.isfinite(r.ratio13) and r.ratio13 >= 0
            assert r.emission_A == r.emission_B
        assert man["failures"] == []
        q = man["numeric"]["quad"]
        for key in ("epsrel", "epsabs", "limit", "tail_rtol", "omega_max", "gl_nodes"):
            assert key in q
        assert man["numeric"]["tol_eig"] == 1e-10
        assert "timestamp" not in json.dumps(man)

    def test_overrides_reach_manifest(self):
        s = small_fig1(2)
        s.numeric.update({"tol": 1e-8, "eps_ladder": [4e-2, 2e-2, 1e-2]})
        _, man = run_sweep(s)
        assert man["numeric"]["quad"]["epsrel"] == 1e-8
        assert man["numeric"]["eps_ladder"] == [4e-2, 2e-2, 1e-2]

    def test_time_route(self):
        grid, fixed = {"omega": [9.0, 10.0, 2]}, {"L": 1.0, "T": 1.0}
        fd, _ = run_sweep(SweepSpec("figure1", grid, fixed))
        td, man = run_sweep(SweepSpec("figure1", grid, fixed, numeric={"method": "time"}))
        assert man["numeric"]["method"] == "time"
        for a, b in zip(fd, td):
            assert b.exchange_abs == pytest.approx(a.exchange_abs, rel=1e-3)
            assert b.emission_A == pytest.approx(a.emission_A, rel=1e-3)

    def test_failures_recorded(self, monkeypatch):
        real = sw.compute_row

        def flaky(scenario, p, ns):
            if p["omega"] == 8.75:
                from vacprobe.errors import NumericError
                raise NumericError("boom")
            return real(scenario, p, ns)

        monkeypatch.setattr(sw, "compute_row", flaky)
        spec = SweepSpec("figure1", {"omega": [8.0, 11.0, 13]}, {"L": 1.0, "T": 1.0})
        rows, man = run_sweep(spec)
        assert len(rows) == 13
        assert [f["index"] for f in man["failures"]] == [3]
        assert math.isnan(rows[3].ratio12) and rows[3].entangled == 0

    def test_too_many_failures(self, monkeypatch):
        from vacprobe.errors import NumericError

        def broken(scenario, p, ns):
            raise NumericError("boom")

        monkeypatch.setattr(sw, "compute_row", broken)
        with pytest.raises(sw.SweepFailed) as info:
            run_sweep(small_fig1())
        assert len(info.value.rows) == 5

    def test_threads_do_not_change_output(self, monkeypatch):
        spec = small_fig1(6)
        serial = csv_text(run_sweep(spec)[0])
        monkeypatch.setenv("VACPROBE_THREADS", "3")
        assert csv_text(run_sweep(spec)[0]) == serial

    def test_werner(self):
        rows, _ = run_sweep(SweepSpec.default("werner"))
        flip = [r.x for r in rows if r.entangled]
        assert min(flip) == pytest.approx(0.34)
        assert all(r.entangled == (r.x > 1 / 3) for r in rows)
        assert all((r.chsh_max > 2) == (r.x > 1 / math.sqrt(2)) for r in rows)

    def test_accelerated_rows(self):
        spec = SweepSpec("accelerated", {"omega": {"values": [1.0]}, "L": {"values": [0.5, 1.0]}}, {})
        rows, man = run_sweep(spec)
        assert man["numeric"]["method"] == "time"
        for r in rows:
            assert math.sqrt(r.ratio12) == pytest.approx(math.exp(math.pi * r.omega * r.L / 2), rel=1e-6)
            assert r.T == 2 * max(6 / r.omega, 3 * r.L)

    def test_custom_gaussian(self):
        spec = SweepSpec("custom", {"omega": [9.0, 10.0, 2]}, {"L": 1.0, "window": "gaussian", "sigma": 0.1})
        rows, _ = run_sweep(spec)
        assert all(r.entangled in (0, 1) for r in rows)


class TestCSV:
    def test_header_and_single_row(self, tmp_path):
        rows, _ = run_sweep(SweepSpec("figure1", {"omega": [9.0, 9.5, 2]}, {"L": 1.0, "T": 1.0}))
        path = tmp_path / "one.csv"
        emit_csv(rows[:1], path)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == CSV_HEADER
        assert len(lines) == 2

    def test_round_trip_digits(self, tmp_path):
        rows, _ = run_sweep(small_fig1(3))
        text = csv_text(rows).splitlines()
        names = text[0].split(",")
        for line, row in zip(text[1:], rows):
            vals = dict(zip(names, line.split(",")))
            assert float(vals["exchange_abs"]) == row.exchange_abs
            assert float(vals["ratio12"]) == row.ratio12
            assert vals["entangled"] in ("0", "1")

    def test_deterministic_bytes(self, tmp_path):
        spec = small_fig1(4)
        h1 = emit_csv(run_sweep(spec)[0], tmp_path / "a.csv")
        h2 = emit_csv(run_sweep(spec)[0], tmp_path / "b.csv")
        assert h1 == h2
        assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()

    def test_manifest_deterministic(self, tmp_path):
        spec = small_fig1(3)
        for name in ("a", "b"):
            write_manifest(run_sweep(spec)[1], tmp_path / f"{name}.json")
        assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()

    def test_empty(self):
        with pytest.raises(InvalidInputError):
            csv_text([])

    def test_manifest_path(self):
        assert manifest_path("out/fig1.csv") == "out/fig1.manifest.json"


def test_crossings():
    xs = [0.0, 1.0, 2.0, 3.0]
    ys = [0.5, 1.5, 1.2, 0.2]
    c = crossings(xs, ys)
    assert c[0] == (pytest.approx(0.5), 1)
    assert c[1] == (pytest.approx(2.2), -1)

"""CLI behavior: subcommands, exit codes, determinism, output formats."""
import io
import json
import xml.etree.ElementTree as ET

import pytest

from asap.cli import EXIT_CONFIG, EXIT_INPUT, EXIT_OK, main
from asap.generators import noisy_sine
from asap.io import read_series, write_series


@pytest.fixture(scope="module")
def sine_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "sine.csv"
    series = noisy_sine(6000, period=200, noise=0.35, seed=10)
    with open(path, "w", encoding="utf-8") as fh:
        write_series(series, fh)
    return str(path)


def run_cli(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def read_meta(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def test_smooth_emits_csv_and_meta(sine_csv, tmp_path, capsys):
    meta_path = str(tmp_path / "meta.json")
    code, out, err = run_cli(
        ["smooth", "--input", sine_csv, "--resolution", "1200", "--meta", meta_path], capsys
    )
    assert code == EXIT_OK

    smoothed = read_series(io.StringIO(out))
    meta = read_meta(meta_path)
    assert set(meta) == {
        "window", "raw_len", "aggregated_len", "ratio", "roughness",
        "kurtosis_before", "kurtosis_after", "candidates_evaluated",
        "elapsed_seconds", "strategy",
    }
    assert meta["strategy"] == "asap"
    assert meta["raw_len"] == 6000
    assert meta["ratio"] == 5
    assert meta["aggregated_len"] == 1200
    assert len(smoothed) == meta["aggregated_len"] - meta["window"] + 1
    assert err == ""  # diagnostics went to the file, not stderr


def test_smooth_meta_on_stderr_by_default(sine_csv, capsys):
    code, out, err = run_cli(["smooth", "--input", sine_csv], capsys)
    assert code == EXIT_OK
    meta = json.loads(err)
    assert meta["window"] >= 1


def test_smooth_asap_matches_exhaustive(sine_csv, tmp_path, capsys):
    windows = {}
    for strategy in ("asap", "exhaustive"):
        meta_path = str(tmp_path / f"{strategy}.json")
        code, _, _ = run_cli(
            ["smooth", "--input", sine_csv, "--resolution", "1200",
             "--strategy", strategy, "--meta", meta_path], capsys,
        )
        assert code == EXIT_OK
        windows[strategy] = read_meta(meta_path)["window"]
    assert windows["asap"] == windows["exhaustive"]


def test_smooth_output_is_deterministic(sine_csv, tmp_path, capsys):
    runs = []
    for i in range(2):
        meta_path = str(tmp_path / f"meta{i}.json")
        code, out, _ = run_cli(
            ["smooth", "--input", sine_csv, "--meta", meta_path], capsys
        )
        assert code == EXIT_OK
        runs.append(out)
    assert runs[0] == runs[1]


def test_smooth_zscore_does_not_change_the_window(sine_csv, tmp_path, capsys):
    plain = str(tmp_path / "plain.json")
    scaled = str(tmp_path / "scaled.json")
    run_cli(["smooth", "--input", sine_csv, "--meta", plain], capsys)
    run_cli(["smooth", "--input", sine_csv, "--zscore", "--meta", scaled], capsys)
    assert read_meta(plain)["window"] == read_meta(scaled)["window"]


def test_smooth_single_column_and_iso_inputs(tmp_path, capsys):
    single = tmp_path / "single.csv"
    single.write_text("".join(f"{v}\n" for v in (1.0, 2.0, 1.0, 2.0, 1.5, 0.5)))
    code, out, _ = run_cli(["smooth", "--input", str(single)], capsys)
    assert code == EXIT_OK

    iso = tmp_path / "iso.csv"
    iso.write_text(
        "2021-01-01T00:00:00Z,1.0\n2021-01-01T00:00:01Z,2.0\n"
        "2021-01-01T00:00:02Z,1.5\n2021-01-01T00:00:03Z,0.5\n"
    )
    code, out, _ = run_cli(["smooth", "--input", str(iso)], capsys)
    assert code == EXIT_OK
    first = out.splitlines()[1]
    assert first.split(",")[0] == "1609459200000"


def test_smooth_survives_a_closed_stdout_pipe(sine_csv, monkeypatch, capsys):
    class ClosedPipe(io.StringIO):
        def write(self, text):
            raise BrokenPipeError

    monkeypatch.setattr("sys.stdout", ClosedPipe())
    assert main(["smooth", "--input", sine_csv]) == EXIT_OK
    capsys.readouterr()


def test_smooth_missing_file_is_input_error(capsys):
    code, _, err = run_cli(["smooth", "--input", "/nonexistent/series.csv"], capsys)
    assert code == EXIT_INPUT
    assert "error" in err


def test_smooth_bad_row_is_input_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("1,1.0\n2,2.0\n3,oops\n4,4.0\n")
    code, _, err = run_cli(["smooth", "--input", str(bad)], capsys)
    assert code == EXIT_INPUT
    assert "line 3" in err


def test_smooth_too_few_rows_is_input_error(tmp_path, capsys):
    tiny = tmp_path / "tiny.csv"
    tiny.write_text("1,1.0\n2,2.0\n3,3.0\n")
    code, _, err = run_cli(["smooth", "--input", str(tiny)], capsys)
    assert code == EXIT_INPUT
    assert "4 data rows" in err


def test_bad_resolution_is_config_error(sine_csv, capsys):
    code, _, err = run_cli(["smooth", "--input", sine_csv, "--resolution", "1"], capsys)
    assert code == EXIT_CONFIG
    assert "resolution" in err


def test_unknown_strategy_is_rejected_by_the_parser(sine_csv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["smooth", "--input", sine_csv, "--strategy", "magic"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_stream_replays_file_and_matches_batch(sine_csv, tmp_path, capsys):
    code, out, err = run_cli(
        ["stream", "--input", sine_csv, "--refresh", "300", "--resolution", "1200"], capsys
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 4  # 1200 panes, one refresh every 300

    records = [json.loads(line) for line in lines]
    assert [r["refresh_index"] for r in records] == [1, 2, 3, 4]
    assert records[-1]["points_consumed"] == 6000
    for r in records:
        assert set(r) == {"refresh_index", "window", "roughness", "kurtosis", "points_consumed"}
    assert "throughput:" in err

    meta_path = str(tmp_path / "batch.json")
    run_cli(["smooth", "--input", sine_csv, "--resolution", "1200", "--meta", meta_path], capsys)
    assert records[-1]["window"] == read_meta(meta_path)["window"]


def test_stream_from_stdin(monkeypatch, capsys):
    rows = "".join(f"{1.0 if i % 2 else 0.0}\n" for i in range(12))
    monkeypatch.setattr("sys.stdin", io.StringIO(rows))
    code, out, err = run_cli(["stream", "--stdin", "--refresh", "1", "--resolution", "8"], capsys)
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert len(lines) == 9  # refreshes start at the fourth pane
    assert json.loads(lines[0])["points_consumed"] == 4


def test_stream_empty_stdin(monkeypatch, capsys):
    monkeypatch.setattr("sys.stdin", io.StringIO(""))
    code, out, err = run_cli(["stream", "--stdin", "--refresh", "1"], capsys)
    assert code == EXIT_OK
    assert out == ""
    assert "0 points" in err


def test_stream_out_of_order_strict_aborts(tmp_path, capsys):
    path = tmp_path / "ooo.csv"
    path.write_text("0,1.0\n1,2.0\n5,1.5\n4,2.5\n6,0.5\n")
    code, _, err = run_cli(
        ["stream", "--input", str(path), "--refresh", "1", "--strict"], capsys
    )
    assert code == EXIT_INPUT
    assert "line 4" in err and "out-of-order" in err


def test_stream_out_of_order_default_drops_and_continues(tmp_path, capsys):
    path = tmp_path / "ooo.csv"
    path.write_text("0,1.0\n1,2.0\n5,1.5\n4,2.5\n6,0.5\n")
    code, out, err = run_cli(["stream", "--input", str(path), "--refresh", "1"], capsys)
    assert code == EXIT_OK
    assert "warning" in err and "line 4" in err
    assert "(4 points, 1 refreshes)" in err


def test_bench_table_lists_every_strategy(capsys):
    code, out, _ = run_cli(
        ["bench", "--gen", "sine", "--gen-points", "4000", "--resolution", "400"], capsys
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0].split() == ["strategy", "window", "roughness", "vs_exhaustive", "candidates", "ms"]
    body = {line.split()[0]: line.split() for line in lines[1:]}
    assert set(body) == {"asap", "exhaustive", "grid2", "grid10", "binary"}
    assert float(body["exhaustive"][3]) == pytest.approx(1.0)
    # The pruned search inspects strictly fewer candidates than the full scan.
    assert int(body["asap"][4]) < int(body["exhaustive"][4])


def test_bench_rejects_unknown_generator(capsys):
    with pytest.raises(SystemExit):
        main(["bench", "--gen", "nosuch"])
    capsys.readouterr()


def test_plot_writes_svg_overlay(sine_csv, tmp_path, capsys):
    out_path = tmp_path / "plot.svg"
    code, _, _ = run_cli(
        ["plot", "--input", sine_csv, "--out", str(out_path), "--resolution", "600"], capsys
    )
    assert code == EXIT_OK
    root = ET.parse(out_path).getroot()
    assert root.tag.endswith("svg")
    assert root.get("width") == "600"
    polylines = [el for el in root.iter() if el.tag.endswith("polyline")]
    assert len(polylines) == 2


def test_plot_constant_input_still_renders(tmp_path, capsys):
    path = tmp_path / "flat.csv"
    path.write_text("".join(f"{i},5.0\n" for i in range(16)))
    out_path = tmp_path / "flat.svg"
    code, _, _ = run_cli(["plot", "--input", str(path), "--out", str(out_path)], capsys)
    assert code == EXIT_OK
    assert out_path.exists()

import json

import pytest

from mcgraph.cli import main
from mcgraph.datasets import star_of_cliques
from mcgraph.graph import build_graph, write_edge_list
from mcgraph.io import load_table


@pytest.fixture
def star_file(tmp_path):
    path = tmp_path / "star.txt"
    write_edge_list(star_of_cliques(5, 4), path)
    return path


def _read(path):
    fmt = "json" if path.suffix == ".json" else "csv"
    return load_table(path.read_text(), fmt)


def test_features_default_config_has_56_columns(star_file, tmp_path):
    out = tmp_path / "out"
    assert main(["features", "--input", str(star_file), "--out", str(out)]) == 0
    header, rows = _read(out / "star.features.csv")
    assert header[0] == "node"
    assert len(header) - 1 == 56
    assert len(rows) == 21


def test_features_minimal_config(star_file, tmp_path):
    out = tmp_path / "out"
    argv = ["features", "--input", str(star_file), "--out", str(out),
            "--max-hops", "1", "--centralities", "degree", "--refs", "0"]
    assert main(argv) == 0
    header, _ = _read(out / "star.features.csv")
    assert header[1:] == ["walk_count_1", "walk_weight_1", "degree"]


def test_missing_input_exits_2_and_names_path(tmp_path, capsys):
    missing = tmp_path / "nope.txt"
    assert main(["features", "--input", str(missing), "--out", str(tmp_path)]) == 2
    assert str(missing) in capsys.readouterr().err


def test_bad_flag_exits_2(star_file):
    assert main(["features", "--input", str(star_file), "--format", "xml"]) == 2
    assert main(["gpca", "--input", str(star_file), "--q", "0"]) == 2


def test_q_exceeding_p_exits_2_without_output(star_file, tmp_path, capsys):
    out = tmp_path / "out"
    argv = ["gpca", "--input", str(star_file), "--out", str(out), "--max-hops", "1",
            "--centralities", "none", "--refs", "0", "--q", "3"]
    assert main(argv) == 2
    assert "DimensionError" in capsys.readouterr().err
    assert not out.exists()


def test_gpca_is_byte_identical_across_runs(star_file, tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    base = ["gpca", "--input", str(star_file), "--max-hops", "5", "--refs", "3"]
    assert main(base + ["--out", str(a)]) == 0
    assert main(base + ["--out", str(b)]) == 0
    for name in ("star.gpca.csv", "summary.csv"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_gpca_identical_singletons_score_zero(tmp_path):
    path = tmp_path / "iso.txt"
    path.write_text("# isolated nodes\n0 1\n2 3\n4 5\n")
    out = tmp_path / "out"
    argv = ["gpca", "--input", str(path), "--out", str(out), "--max-hops", "3",
            "--centralities", "degree", "--refs", "0"]
    assert main(argv) == 0
    header, rows = _read(out / "iso.gpca.csv")
    assert all(float(r[-1]) == 0.0 for r in rows)
    _, summary = _read(out / "summary.csv")
    assert float(summary[0][3]) == 0.0


def test_gpca_json_mirrors_csv(star_file, tmp_path):
    base = ["gpca", "--input", str(star_file), "--max-hops", "4", "--refs", "2", "--out", str(tmp_path)]
    assert main(base) == 0
    assert main(base + ["--format", "json"]) == 0
    for stem in ("star.gpca", "summary"):
        h_csv, r_csv = _read(tmp_path / f"{stem}.csv")
        data = json.loads((tmp_path / f"{stem}.json").read_text())
        assert data["columns"] == h_csv
        for rc, rj in zip(r_csv, data["rows"]):
            assert [str(v) if isinstance(v, str) else repr(v) if isinstance(v, float) else str(v)
                    for v in rj] == rc


def test_gpca_writes_one_file_per_graph_in_order(tmp_path):
    d = tmp_path / "graphs"
    d.mkdir()
    for name in ("b", "a", "c"):
        write_edge_list(star_of_cliques(3, 3), d / f"{name}.txt")
    out = tmp_path / "out"
    assert main(["gpca", "--input-dir", str(d), "--out", str(out), "--max-hops", "3", "--refs", "1"]) == 0
    _, summary = _read(out / "summary.csv")
    assert [r[0] for r in summary] == ["a", "b", "c"]


def test_gdl_identical_graphs(tmp_path):
    d = tmp_path / "graphs"
    d.mkdir()
    for i in range(4):
        write_edge_list(star_of_cliques(3, 3), d / f"g{i}.txt")
    out = tmp_path / "out"
    argv = ["gdl", "--input-dir", str(d), "--out", str(out), "--max-hops", "3",
            "--refs", "1", "--z", "5", "--centering", "none"]
    assert main(argv) == 0
    model = json.loads((out / "model.json").read_text())
    assert model["training_log"][0] == pytest.approx(0.0, abs=1e-12)
    header, rows = _read(out / "labels.csv")
    assert header[:2] == ["graph", "label"]
    assert len({r[1] for r in rows}) == 1
    assert (out / "training_log.csv").exists()


def test_gdl_unparsable_file_exits_2_and_names_it(tmp_path, capsys):
    d = tmp_path / "graphs"
    d.mkdir()
    write_edge_list(star_of_cliques(3, 3), d / "a.txt")
    write_edge_list(star_of_cliques(3, 3), d / "b.txt")
    (d / "c.txt").write_text("0 1 2 3 4 5\n")
    out = tmp_path / "out"
    assert main(["gdl", "--input-dir", str(d), "--out", str(out)]) == 2
    assert "c.txt" in capsys.readouterr().err
    assert not out.exists()


def test_gdl_requires_input_dir(star_file):
    assert main(["gdl", "--input", str(star_file)]) == 2


def test_data_error_exit_3(tmp_path, monkeypatch):
    from mcgraph import cli
    from mcgraph.exceptions import NonFiniteFeature, NoConvergence

    path = tmp_path / "g.txt"
    write_edge_list(build_graph([(0, 1, 1.0), (1, 2, 1.0)]), path)

    def boom(*a, **k):
        raise NonFiniteFeature("bad column")

    monkeypatch.setattr(cli, "assemble", boom)
    assert main(["features", "--input", str(path), "--refs", "0", "--out", str(tmp_path)]) == 3

    def stall(*a, **k):
        raise NoConvergence("stalled")

    monkeypatch.setattr(cli, "assemble", stall)
    assert main(["features", "--input", str(path), "--refs", "0", "--out", str(tmp_path)]) == 4


def test_demo_command(capsys):
    assert main(["demo"]) == 0
    text = capsys.readouterr().out
    assert "share coordinates without references: True" in text

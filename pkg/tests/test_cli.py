"""Command-line behavior: exit codes and canonical files."""

import json
from pathlib import Path

from click.testing import CliRunner

from gencluster import io as gio
from gencluster.cli import main
from gencluster.gca import Seed
from gencluster.pathalg import QP
from gencluster.quiver import LoopedQuiver


def _write_seed(path: Path, d=(2, 1)):
    seed = Seed.initial([[0, 1], [-1, 0]], d)
    path.write_text(gio.dumps_canonical(gio.seed_to_dict(seed)))


def test_mutate_seed_file(tmp_path):
    runner = CliRunner()
    src = tmp_path / "seed.json"
    dst = tmp_path / "out.json"
    _write_seed(src)
    result = runner.invoke(main, ["mutate", str(src), str(dst), "--path", "1"])
    assert result.exit_code == 0, result.output
    data = json.loads(dst.read_text())
    assert data["x"][0] == "1*x1^-1 + 1*x1^-1*x2*z1_1 + 1*x1^-1*x2^2"


def test_mutate_empty_path_is_identity(tmp_path):
    runner = CliRunner()
    src = tmp_path / "seed.json"
    dst = tmp_path / "out.json"
    _write_seed(src)
    result = runner.invoke(main, ["mutate", str(src), str(dst), "--path", ""])
    assert result.exit_code == 0
    assert src.read_text() == dst.read_text()


def test_mutate_malformed_input_exits_2(tmp_path):
    runner = CliRunner()
    src = tmp_path / "bad.json"
    src.write_text("not json at all")
    result = runner.invoke(main, ["mutate", str(src), str(tmp_path / "o.json")])
    assert result.exit_code == 2


def test_mutate_math_precondition_exits_3(tmp_path):
    runner = CliRunner()
    src = tmp_path / "qp.json"
    quiver = LoopedQuiver.from_pairs(2, (1, 1), [(1, 2), (2, 1)])
    src.write_text(gio.dumps_canonical(gio.qp_to_dict(QP.make(quiver, {}))))
    result = runner.invoke(main, ["mutate", str(src), str(tmp_path / "o.json"),
                                  "--path", "1"])
    assert result.exit_code == 3


def test_verify_unknown_suite_exits_2():
    runner = CliRunner()
    result = runner.invoke(main, ["verify", "nonsense"])
    assert result.exit_code == 2


def test_verify_known_suite_reports():
    runner = CliRunner()
    result = runner.invoke(main, ["verify", "agreement"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.output)
    assert report["passed"] is True
    assert report["checks"]


def test_graph_command(tmp_path):
    runner = CliRunner()
    src = tmp_path / "seed.json"
    dst = tmp_path / "graph.json"
    seed = Seed.initial([[0, 1], [-1, 0]], (1, 1))
    src.write_text(gio.dumps_canonical(gio.seed_to_dict(seed)))
    result = runner.invoke(main, ["graph", str(src), str(dst), "--depth", "8",
                                  "--mode", "unlabeled"])
    assert result.exit_code == 0, result.output
    data = json.loads(dst.read_text())
    assert len(data["nodes"]) == 5
    dot_dst = tmp_path / "graph.dot"
    result = runner.invoke(main, ["graph", str(src), str(dot_dst),
                                  "--format", "dot"])
    assert result.exit_code == 0
    assert dot_dst.read_text().startswith("graph exchange")

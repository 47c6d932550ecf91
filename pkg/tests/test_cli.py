import json

from plane_layers.cli import main
from plane_layers.geometry import PointSet


def run(*argv):
    return main(list(argv))


def test_gen_deterministic(tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert run("gen", "--kind", "uniform", "--n", "50", "--seed", "7", "--out", str(a)) == 0
    assert run("gen", "--kind", "uniform", "--n", "50", "--seed", "7", "--out", str(b)) == 0
    assert a.read_bytes() == b.read_bytes()
    ps = PointSet.from_text(a.read_text())
    assert len(ps) == 50


def test_gen_line_and_clusters(tmp_path):
    line = tmp_path / "line.txt"
    assert run("gen", "--kind", "line", "--n", "5", "--eps", "0.001", "--out", str(line)) == 0
    ps = PointSet.from_text(line.read_text())
    assert [ps.x(i) for i in ps.ids] == [0, 1, 2, 3, 4]
    blobs = tmp_path / "blobs.txt"
    assert run("gen", "--kind", "clusters", "--n", "60", "--clusters", "3",
               "--seed", "3", "--out", str(blobs)) == 0
    assert len(PointSet.from_text(blobs.read_text())) == 60


def test_build_two_tree_square(tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0 0\n1 1 0\n2 1 1\n3 0 1\n")
    out = tmp_path / "tt.json"
    assert run("build", str(pts), "--mode", "two-tree", "--out", str(out)) == 0
    data = json.loads(out.read_text())
    assert data["kind"] == "two-tree"
    assert data["shared"] is None
    assert max(data["ratios"]["red"], data["ratios"]["blue"]) <= 3 + 1e-9
    assert run("verify", str(pts), str(out)) == 0


def test_build_distributed_and_verify(tmp_path):
    pts = tmp_path / "p.txt"
    assert run("gen", "--kind", "uniform", "--n", "100", "--seed", "11", "--out", str(pts)) == 0
    out = tmp_path / "layers.json"
    assert run("build", str(pts), "--mode", "distributed", "--k", "2", "--out", str(out)) == 0
    data = json.loads(out.read_text())
    assert data["kind"] == "distributed" and data["k"] == 2
    assert len(data["layers"]) == 2
    report = tmp_path / "report.json"
    assert run("verify", str(pts), str(out), "--out", str(report)) == 0
    rep = json.loads(report.read_text())
    assert rep["pairwiseDisjoint"] is True


def test_build_distributed_beta_override(tmp_path):
    pts = tmp_path / "p.txt"
    assert run("gen", "--kind", "uniform", "--n", "80", "--seed", "13", "--out", str(pts)) == 0
    out = tmp_path / "layers.json"
    # generous beta: fine; beta below the MST bottleneck: precondition error
    assert run("build", str(pts), "--mode", "distributed", "--k", "1",
               "--beta", "400", "--out", str(out)) == 0
    data = json.loads(out.read_text())
    assert data["betaSq"] == "160000/1"
    assert run("build", str(pts), "--mode", "distributed", "--k", "1",
               "--beta", "0.001", "--out", str(out)) == 3


def test_build_distributed_k_too_large(tmp_path):
    pts = tmp_path / "p.txt"
    assert run("gen", "--kind", "uniform", "--n", "20", "--seed", "5", "--out", str(pts)) == 0
    out = tmp_path / "layers.json"
    assert run("build", str(pts), "--mode", "distributed", "--k", "9", "--out", str(out)) == 3


def test_build_collinear_needs_perturbation(tmp_path):
    pts = tmp_path / "line.txt"
    pts.write_text("".join(f"{i} {i} 0\n" for i in range(6)))
    out = tmp_path / "tt.json"
    assert run("build", str(pts), "--mode", "two-tree", "--out", str(out)) == 3
    assert run("build", str(pts), "--mode", "two-tree", "--perturb", "--out", str(out)) == 0


def test_verify_catches_bad_layers(tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0 0\n1 1 0\n2 1 1\n3 0 1\n")
    out = tmp_path / "tt.json"
    assert run("build", str(pts), "--mode", "two-tree", "--out", str(out)) == 0
    data = json.loads(out.read_text())
    data["red"][0] = data["red"][1]  # duplicate edge disconnects the red tree
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    assert run("verify", str(pts), str(bad)) == 4


def test_render_two_tree_and_grid(tmp_path):
    pts = tmp_path / "p.txt"
    assert run("gen", "--kind", "uniform", "--n", "40", "--seed", "2", "--out", str(pts)) == 0
    tt = tmp_path / "tt.json"
    assert run("build", str(pts), "--mode", "two-tree", "--out", str(tt)) == 0
    svg1 = tmp_path / "a.svg"
    assert run("render", str(pts), str(tt), "--out", str(svg1)) == 0
    body = svg1.read_text()
    assert body.startswith("<svg") and "#d62728" in body and "#1f77b4" in body

    dist = tmp_path / "dist.json"
    assert run("build", str(pts), "--mode", "distributed", "--k", "3", "--out", str(dist)) == 0
    svg2 = tmp_path / "b.svg"
    assert run("render", str(pts), str(dist), "--grid", "--out", str(svg2)) == 0
    assert "#cccccc" in svg2.read_text()  # grid lines present


def test_render_empty_layers(tmp_path):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0 0\n1 1 0\n")
    empty = tmp_path / "empty.json"
    empty.write_text(json.dumps({"kind": "distributed", "k": 0, "layers": []}))
    svg = tmp_path / "c.svg"
    assert run("render", str(pts), str(empty), "--out", str(svg)) == 0
    assert "circle" in svg.read_text()


def test_stats_runs(tmp_path, capsys):
    pts = tmp_path / "p.txt"
    pts.write_text("0 0 0\n1 1 0\n2 1 1\n3 0 1\n")
    out = tmp_path / "tt.json"
    assert run("build", str(pts), "--mode", "two-tree", "--out", str(out)) == 0
    capsys.readouterr()
    assert run("stats", str(pts), str(out)) == 0
    got = json.loads(capsys.readouterr().out)
    assert got["n"] == 4 and got["k"] == 2


def test_usage_error_exit_code(tmp_path):
    assert run("gen", "--kind", "uniform", "--n", "0", "--seed", "1",
               "--out", str(tmp_path / "x.txt")) == 2
    assert run("nonsense") == 2


def test_build_outputs_byte_identical(tmp_path):
    pts = tmp_path / "p.txt"
    assert run("gen", "--kind", "uniform", "--n", "64", "--seed", "9", "--out", str(pts)) == 0
    outs = []
    for name in ("one.json", "two.json"):
        out = tmp_path / name
        assert run("build", str(pts), "--mode", "distributed", "--k", "2",
                   "--out", str(out)) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

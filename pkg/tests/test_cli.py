import csv
import io
import json
import math

import numpy as np
import pytest

from equidist.cli import main
from equidist.scene import dumps, load_scene, scene_from_doc, SceneError

from conftest import GOLDEN, SCENES


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def scene(name):
    return str(SCENES / name)


def write_scene(tmp_path, doc, name="scene.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


class TestConstruct:
    def test_square(self, capsys):
        code, out, _ = run(capsys, "construct", "--scene", scene("square.json"))
        assert code == 0
        doc = json.loads(out)
        assert doc["focal_pair"]["o"] == [0, 0]
        assert np.allclose(doc["focal_pair"]["b"], [(2, 0), (0, 2), (-2, 0), (0, -2)], atol=1e-12)
        assert np.max(doc["vertex_residuals"]) < 1e-10
        assert len(doc["voronoi_cells"]) == 4
        assert all(len(c["halfplanes"]) == 3 for c in doc["voronoi_cells"])
        assert doc["passed"] and all(doc["checks"].values())

    def test_o_on_edge(self, capsys):
        code, _, err = run(capsys, "construct", "--scene", scene("triangle_o_on_edge.json"))
        assert code == 2
        assert "PointNotInterior" in err

    def test_dodecagon(self, capsys):
        code, out, _ = run(capsys, "construct", "--scene", scene("dodecagon.json"))
        assert code == 0
        doc = json.loads(out)
        assert len(doc["polygon"]) == 12
        assert np.max(doc["vertex_residuals"]) < 1e-10

    def test_default_o_is_centroid(self, capsys, tmp_path):
        path = write_scene(tmp_path, {"version": 1, "polygon": [[0, 0], [4, 0], [4, 2], [0, 2]]})
        code, out, _ = run(capsys, "construct", "--scene", path)
        assert code == 0
        assert json.loads(out)["focal_pair"]["o"] == [2, 1]

    def test_nonconvex_names_vertex(self, capsys, tmp_path):
        path = write_scene(tmp_path, {"version": 1, "polygon": [[0, 0], [2, 0], [1, 0.5], [2, 2], [0, 2]]})
        code, _, err = run(capsys, "construct", "--scene", path)
        assert code == 2
        assert "NotConvex" in err and "vertex index 2" in err

    def test_schema_violation(self, capsys, tmp_path):
        path = write_scene(tmp_path, {"version": 2, "polygon": [[0, 0], [1, 0], [0, 1]]})
        code, _, err = run(capsys, "construct", "--scene", path)
        assert code == 2 and "schema" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "construct", "--scene", str(tmp_path / "nope.json"))
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "c.json"
        code, out, _ = run(capsys, "construct", "--scene", scene("triangle_345.json"), "--out", str(target))
        assert code == 0 and out == ""
        assert json.loads(target.read_text())["passed"]


class TestVerify:
    @pytest.mark.parametrize("mode", ["points", "arcs"])
    def test_square(self, capsys, mode):
        code, out, _ = run(capsys, "verify", "--scene", scene("square.json"), "--mode", mode,
                           "--samples", "200", "--eps", "1e-8")
        assert code == 0
        assert f"mode={mode}" in out and out.strip().endswith("PASS")

    def test_perturbed(self, capsys):
        code, out, _ = run(capsys, "verify", "--scene", scene("square_perturbed.json"), "--mode", "points")
        assert code == 1
        gap = float(out.split("max_gap=")[1].split()[0])
        assert gap >= 0.01
        assert "worst_point=" in out and out.strip().endswith("FAIL")

    def test_o_on_edge(self, capsys):
        code, _, _ = run(capsys, "verify", "--scene", scene("triangle_o_on_edge.json"))
        assert code == 2

    def test_bad_samples(self, capsys):
        code, _, _ = run(capsys, "verify", "--scene", scene("square.json"), "--samples", "1")
        assert code == 2

    def test_report_file(self, capsys, tmp_path):
        target = tmp_path / "v.json"
        code, _, _ = run(capsys, "verify", "--scene", scene("triangle_345.json"), "--out", str(target))
        assert code == 0
        doc = json.loads(target.read_text())
        assert doc["passed"] and doc["max_gap"] < 1e-8


class TestMidset:
    def test_two_points(self, capsys):
        code, out, _ = run(capsys, "midset", "--scene", scene("two_points.json"), "--pitch", "0.05")
        assert code == 0
        doc = json.loads(out)
        assert doc["deviation"] < 0.05
        xy = np.vstack([np.array(pl) for pl in doc["polylines"]])
        assert np.abs(xy[:, 0]).max() < 1e-6

    def test_square(self, capsys):
        code, out, _ = run(capsys, "midset", "--scene", scene("square.json"), "--pitch", "0.02")
        assert code == 0
        assert json.loads(out)["deviation"] < 0.04

    def test_square_arcs(self, capsys):
        code, out, _ = run(capsys, "midset", "--scene", scene("square.json"), "--mode", "arcs")
        assert code == 0
        assert json.loads(out)["deviation"] < 0.04

    def test_overlapping(self, capsys):
        code, out, err = run(capsys, "midset", "--scene", scene("overlapping.json"))
        assert code == 1
        assert "DegenerateField" in err
        assert json.loads(out)["degenerate"] is True

    def test_exceeding_reference_fails(self, capsys, tmp_path):
        doc = json.loads((SCENES / "two_points.json").read_text())
        doc["reference"] = {"segments": [[[0.5, -2], [0.5, 2]]]}
        code, out, _ = run(capsys, "midset", "--scene", write_scene(tmp_path, doc))
        assert code == 1
        assert json.loads(out)["deviation"] == pytest.approx(0.5, abs=0.03)


class TestConverge:
    def test_circle(self, capsys):
        code, out, _ = run(capsys, "converge", "--scene", scene("circle_convergence.json"))
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["n"]) for r in rows] == [4, 8, 16, 32, 64]
        for r in rows:
            n = int(r["n"])
            assert float(r["dh_polygon"]) == pytest.approx(1 - math.cos(math.pi / n), abs=0.01)
            assert abs(float(r["dh_midset"]) - float(r["dh_polygon"])) < 0.02

    def test_flags_override(self, capsys):
        code, out, _ = run(capsys, "converge", "--curve", "circle:1", "--n-list", "4,8",
                           "--radius", "2", "--pitch", "0.02")
        rows = list(csv.DictReader(io.StringIO(out)))
        assert [int(r["n"]) for r in rows] == [4, 8]
        # final deviation 1 - cos(pi/8) ~ 0.076 is above the default threshold 0.02
        assert code == 1

    def test_n_too_small(self, capsys):
        code, _, _ = run(capsys, "converge", "--curve", "circle:1", "--n-list", "2")
        assert code == 2

    def test_bad_curve(self, capsys):
        code, _, err = run(capsys, "converge", "--curve", "parabola:1")
        assert code == 2 and "curve" in err

    def test_missing_curve(self, capsys):
        assert run(capsys, "converge")[0] == 2


class TestRender:
    @pytest.mark.parametrize("layers, golden", [
        ("polygon,focal,voronoi", "square_voronoi.svg"),
        ("polygon,arcs", "square_arcs.svg"),
    ])
    def test_golden(self, capsys, layers, golden):
        code, out, _ = run(capsys, "render", "--scene", scene("square.json"), "--layers", layers)
        assert code == 0
        assert out == (GOLDEN / golden).read_text()

    def test_figure_contents(self, capsys):
        _, out, _ = run(capsys, "render", "--scene", scene("square.json"), "--layers", "polygon,focal,voronoi")
        assert out.count("<text") == 9  # A1..A4, B1..B4, O
        assert out.count('stroke-dasharray="4 3"') == 4
        assert 'transform="matrix(' in out

    def test_all_layers(self, capsys):
        code, out, _ = run(capsys, "render", "--scene", scene("triangle_345.json"),
                           "--layers", "polygon,focal,voronoi,midset,arcs,contour", "--pitch", "0.05")
        assert code == 0
        assert out.count("<path") == 3 and "<polyline" in out

    def test_empty_layers(self, capsys):
        code, _, err = run(capsys, "render", "--scene", scene("square.json"), "--layers", "")
        assert code == 2 and "no layers" in err

    def test_unknown_layer(self, capsys):
        code, _, err = run(capsys, "render", "--scene", scene("square.json"), "--layers", "polygon,heatmap")
        assert code == 2 and "heatmap" in err


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["--help"]) == 0
    capsys.readouterr()


COMMANDS = [
    ["construct", "--scene", scene("dodecagon.json")],
    ["verify", "--scene", scene("square.json"), "--mode", "arcs"],
    ["midset", "--scene", scene("triangle_345.json"), "--pitch", "0.05"],
    ["converge", "--curve", "circle:1", "--n-list", "4,8", "--pitch", "0.05"],
    ["render", "--scene", scene("triangle_345.json"), "--layers", "polygon,focal,voronoi,arcs,contour"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=[c[0] for c in COMMANDS])
def test_byte_identical_reruns(capsys, tmp_path, argv):
    outputs = []
    for k in range(2):
        target = tmp_path / f"out{k}"
        main(argv + ["--out", str(target)])
        outputs.append((target.read_bytes(), capsys.readouterr().out))
    assert outputs[0] == outputs[1]
    assert outputs[0][0]


@pytest.mark.parametrize("argv", [c for c in COMMANDS if c[0] in ("construct", "midset")])
def test_output_round_trip(capsys, argv):
    main(argv)
    text = capsys.readouterr().out
    doc = json.loads(text)
    assert dumps(doc) == text
    assert json.loads(dumps(doc)) == doc


def test_construct_output_reloads_as_scene(capsys, tmp_path):
    main(["construct", "--scene", scene("dodecagon.json")])
    doc = json.loads(capsys.readouterr().out)
    sc = scene_from_doc({"version": 1, "polygon": doc["polygon"], "o": doc["focal_pair"]["o"]})
    original = load_scene(SCENES / "dodecagon.json")
    assert np.allclose(sc.polygon.array(), original.polygon.array())
    with pytest.raises(SceneError):
        scene_from_doc(doc)  # result documents carry keys a scene may not

import json
import subprocess
import sys

import pytest

from twohol import cli
from twohol import ribbon as rb
from twohol.group_core import builtin
from twohol.holonomy import count_fake_flat


def run(capsys, *argv):
    status = cli.main(list(argv))
    return status, capsys.readouterr().out


def test_validate(capsys):
    status, out = run(capsys, "--task", "validate", "--cm", "cm_s3")
    assert status == 0
    assert json.loads(out) == {"violations": [], "interchange": True}


def test_enumerate_triangle(capsys):
    status, out = run(capsys, "--task", "enumerate", "--cm", "cm_02", "--geometry", "triangle")
    assert status == 0 and json.loads(out)["count"] == 8


def test_gallery_listing():
    listing = cli.builtin_gallery()
    names = [g["name"] for g in listing]
    assert names == sorted(names)
    entry = {g["name"]: g for g in listing}
    assert entry["gamma_plus"]["faces"] == 4
    assert entry["b_times"]["signature"] == "2->2"
    assert listing == cli.builtin_gallery()
    for name in ("gamma_plus", "triple_point", "coordinate_planes_s3", "torus_partition", "b_plus", "b_times",
                 "cup", "cap", "house", "saddle", "cusp", "fold_crossing", "reidemeister_i", "reidemeister_ii",
                 "reidemeister_iii"):
        assert name in entry


def test_error_record(capsys):
    status, out = run(capsys, "--task", "enumerate", "--cm", "cm_nope", "--geometry", "triangle")
    record = json.loads(out)
    assert status == 2
    assert record["module"] == "cli" and record["precondition"] == "references resolve"


def test_task_errors_carry_their_module(capsys):
    status, out = run(capsys, "--task", "partition", "--cm", "cm_02", "--geometry", "square")
    record = json.loads(out)
    assert status == 2 and record["module"] == "wilson" and record["precondition"] == "closed polyhedron"


def test_schema_error_from_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"order": [2, 2], "mul": [[[0, 1]], [[0]]], "t": [0, 0], "act": []}))
    status, out = run(capsys, "--task", "validate", "--cm", str(path))
    assert status == 2 and json.loads(out)["precondition"] == "schema"


def test_crossed_module_file(tmp_path, capsys):
    path = tmp_path / "cm.json"
    path.write_text(json.dumps(builtin("cm_s3").to_dict()))
    status, out = run(capsys, "--task", "enumerate", "--cm", str(path), "--geometry", "triangle")
    assert status == 0 and json.loads(out)["count"] == 108


def test_gallery_dir_overrides_builders(tmp_path, monkeypatch, capsys):
    (tmp_path / "triangle.json").write_text(json.dumps(cli.COMPLEX_BUILDERS["square"]().to_dict()))
    monkeypatch.setenv("TWOHOL_GALLERY_DIR", str(tmp_path))
    status, out = run(capsys, "--task", "enumerate", "--cm", "cm_02", "--geometry", "triangle")
    assert status == 0 and json.loads(out)["count"] == 32


def test_ribbon_file(tmp_path, capsys):
    path = tmp_path / "r.json"
    path.write_text(json.dumps(rb.cusp().to_dict()))
    _, a = run(capsys, "--task", "evaluate", "--cm", "cm_02", "--geometry", str(path), "--workers", "1")
    _, b = run(capsys, "--task", "evaluate", "--cm", "cm_02", "--geometry", "cusp", "--workers", "1")
    assert a == b


def test_output_is_independent_of_workers(capsys):
    _, one = run(capsys, "--task", "evaluate", "--cm", "cm_02", "--geometry", "saddle", "--workers", "1")
    _, two = run(capsys, "--task", "evaluate", "--cm", "cm_02", "--geometry", "saddle", "--workers", "2")
    assert one == two


def test_fix_boundary(tmp_path, capsys):
    path = tmp_path / "fix.json"
    path.write_text(json.dumps({"0": 1, "1": 1, "2": 0}))
    status, out = run(capsys, "--task", "enumerate", "--cm", "cm_02", "--geometry", "triangle",
                      "--fix-boundary", str(path))
    assert status == 0 and json.loads(out)["count"] == 2


def test_table_format(tmp_path, capsys):
    out = tmp_path / "t.txt"
    status, _ = run(capsys, "--task", "evaluate", "--cm", "cm_02", "--geometry", "triangle",
                    "--format", "table", "--out", str(out), "--workers", "1")
    lines = out.read_text().splitlines()
    assert status == 0 and lines[0].split() == ["beta0", "beta1", "value"]
    assert len(lines[1:lines.index("")]) == 4


def test_partition(capsys):
    status, out = run(capsys, "--task", "partition", "--cm", "cm_02", "--geometry", "lens_spine")
    assert status == 0 and json.loads(out)["partition"] == [2, 1]


def test_orbits(capsys):
    status, out = run(capsys, "--task", "orbits", "--cm", "cm_02", "--geometry", "square")
    result = json.loads(out)
    assert status == 0
    cm, c = builtin("cm_02"), cli.COMPLEX_BUILDERS["square"]().body
    assert sum(result["sizes"]) == count_fake_flat(cm, c)
    assert [result["orbits"], 1] == result["burnside"]


def test_compose(capsys):
    status, out = run(capsys, "--task", "compose", "--cm", "cm_02", "--geometry", "triangle_ribbon",
                      "--r", "house")
    assert status == 2 and json.loads(out)["error"] in ("StackingError", "SpaceMismatch")
    status, out = run(capsys, "--task", "compose", "--cm", "cm_02", "--geometry", "b_times",
                      "--r", "crossing_change")
    assert status == 2
    status, out = run(capsys, "--task", "compose", "--cm", "cm_02", "--geometry", "crossing_change",
                      "--r", "b_times")
    assert status == 0 and json.loads(out)["matches_stack"] is True


def test_sum_and_pair(capsys):
    status, out = run(capsys, "--task", "sum", "--cm", "cm_02", "--geometry", "cup", "--r", "cap",
                      "--pairs", "[[1, 1]]")
    assert status == 0 and json.loads(out)["matches_collar"] is True
    status, out = run(capsys, "--task", "pair", "--cm", "cm_02", "--geometry", "cup")
    assert status == 0 and json.loads(out)["pairing"][0] > 0


def test_holonomy_histogram(capsys):
    status, out = run(capsys, "--task", "holonomy", "--cm", "cm_s3", "--geometry", "triangle")
    hist = json.loads(out)["holonomy"]
    assert status == 0 and sum(x["count"] for x in hist) == 108


def test_move(capsys):
    status, out = run(capsys, "--task", "move", "--cm", "cm_02", "--geometry", "coordinate_planes_s3",
                      "--move", "02", "--site", "[0, [0, 1], 0, 1]")
    result = json.loads(out)
    assert status == 0 and result["equal"] is True and result["cells_after"][2] > result["cells_before"][2]
    status, out = run(capsys, "--task", "move", "--cm", "cm_s3", "--geometry", "square",
                      "--move", "flip", "--site", "1")
    assert status == 0 and json.loads(out)["equal"] is True


def test_manifest(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"task": "enumerate", "cm": "cm_02", "geometry": "triangle"}))
    status, out = run(capsys, "--manifest", str(path))
    assert status == 0 and json.loads(out)["count"] == 8


def test_module_entry_point_selftest():
    proc = subprocess.run([sys.executable, "-m", "twohol", "--task", "selftest", "--format", "table"],
                          capture_output=True, text=True, timeout=600)
    assert proc.returncode == 0
    assert proc.stdout.count("[PASS]") == 12

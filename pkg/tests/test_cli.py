import json

from grassmann_lab.cli import main


def run(args):
    return main([str(a) for a in args])


def test_build_classify_rigidity_pipeline(tmp_path, capsys):
    emb = tmp_path / "apartment.json"
    assert run(["build", "apartment", "--n", 4, "--k", 2, "--p", 2,
                "--output", emb]) == 0
    assert run(["classify", "--input", emb]) == 0
    cls = json.loads(capsys.readouterr().out)
    assert cls["case"] == "parabolic-apartment"
    assert cls["is_full_apartment"] is True
    assert run(["rigidity", "--input", emb]) == 0
    rig = json.loads(capsys.readouterr().out)
    assert rig["is_rigid"] is True
    assert any(e["witness"]["kind"] == "duality" for e in rig["per_automorphism"])


def test_build_output_feeds_every_consumer_unchanged(tmp_path):
    emb = tmp_path / "sf.json"
    cls_path = tmp_path / "sf.cls.json"
    rig_path = tmp_path / "sf.rig.json"
    assert run(["build", "simplex-faces", "--n", 4, "--k", 2, "--p", 2,
                "--output", emb]) == 0
    assert run(["classify", "--input", emb, "--output", cls_path]) == 0
    assert run(["rigidity", "--input", emb, "--output", rig_path]) == 0
    cls = json.loads(cls_path.read_text())
    rig = json.loads(rig_path.read_text())
    assert cls["case"] == "star"
    assert rig["unique_pgl_extension"] is True
    # a classification document is itself valid rigidity input
    assert run(["rigidity", "--input", cls_path, "--output", rig_path]) == 0
    assert json.loads(rig_path.read_text())["is_rigid"] is True


def test_build_dual_and_sum(tmp_path):
    dual = tmp_path / "dual.json"
    assert run(["build", "dual", "--n", 4, "--k", 2, "--p", 2, "--output", dual]) == 0
    params = json.loads(dual.read_text())["params"]
    assert params["l"] == 5 and params["m"] == 2
    summed = tmp_path / "sum.json"
    assert run(["build", "sum", "--n", 5, "--k", 2, "--p", 2, "--l", 5,
                "--output", summed]) == 0
    assert json.loads(summed.read_text())["params"]["l"] == 5


def test_build_with_pointset_input(tmp_path):
    points = {"schema_version": 1,
              "ambient": {"kind": "primal", "dim": 4, "p": 2, "e": 1},
              "points": [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
                         [1, 1, 1, 1]]}
    ps_path = tmp_path / "points.json"
    ps_path.write_text(json.dumps(points))
    emb = tmp_path / "emb.json"
    assert run(["build", "sum", "--n", 4, "--k", 2, "--p", 2,
                "--points", ps_path, "--output", emb]) == 0
    assert json.loads(emb.read_text())["params"]["l"] == 5


def test_exit_code_2_on_infeasible_search(tmp_path, capsys):
    # PG(3,2) has no 7-point set in general position
    code = run(["build", "sum", "--n", 4, "--k", 2, "--p", 2, "--l", 7])
    capsys.readouterr()
    assert code == 2


def test_exit_code_3_on_unknown_search(tmp_path, capsys):
    code = run(["build", "sum", "--n", 4, "--k", 2, "--p", 2, "--l", 5,
                "--budget", 2])
    capsys.readouterr()
    assert code == 3


def test_exit_code_2_on_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"schema_version": 1, "params": {}}))
    code = run(["classify", "--input", bad])
    capsys.readouterr()
    assert code == 2
    code = run(["build", "sum", "--n", 4, "--k", 2, "--p", 2])  # no --l
    capsys.readouterr()
    assert code == 2


def test_oracle_summary_and_jsonl(tmp_path, capsys):
    summary_path = tmp_path / "summary.json"
    jsonl_path = tmp_path / "images.jsonl"
    assert run(["oracle", "--l", 4, "--m", 2, "--n", 4, "--k", 2, "--p", 2,
                "--output", summary_path, "--jsonl", jsonl_path]) == 0
    capsys.readouterr()
    summary = json.loads(summary_path.read_text())
    assert summary["image_count"] == 840
    assert summary["ok"] is True
    assert summary["tag_histogram"] == {"parabolic-apartment": 840}
    lines = jsonl_path.read_text().splitlines()
    assert len(lines) == 840
    first = json.loads(lines[0])
    assert len(first["ids"]) == 6 and len(first["rows"]) == 6


def test_oracle_budget_exit_code(tmp_path, capsys):
    code = run(["oracle", "--l", 4, "--m", 2, "--n", 4, "--k", 2, "--p", 2,
                "--budget", 50])
    capsys.readouterr()
    assert code == 3


def test_export_johnson_and_grassmann_stable(capsys):
    assert run(["export", "--graph", "johnson", "--l", 4, "--m", 2]) == 0
    first = capsys.readouterr().out
    assert run(["export", "--graph", "johnson", "--l", 4, "--m", 2]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.startswith("graph johnson_4_2 {")
    assert first.count("--") == 12  # octahedron edges
    assert run(["export", "--graph", "grassmann", "--n", 4, "--k", 2, "--p", 2]) == 0
    gout = capsys.readouterr().out
    assert 'tooltip="[' in gout


def test_export_induced_from_embedding(tmp_path, capsys):
    emb = tmp_path / "apartment.json"
    run(["build", "apartment", "--n", 4, "--k", 2, "--p", 2, "--output", emb])
    dot_path = tmp_path / "induced.dot"
    assert run(["export", "--input", emb, "--dot", dot_path]) == 0
    capsys.readouterr()
    text = dot_path.read_text()
    assert text.count("--") == 12
    assert run(["export", "--input", emb, "--dot", dot_path]) == 0
    assert dot_path.read_text() == text


def test_export_index_table_json(capsys):
    assert run(["export", "--graph", "grassmann", "--n", 4, "--k", 2, "--p", 2,
                "--format", "json"]) == 0
    table = json.loads(capsys.readouterr().out)
    assert table["count"] == 35
    assert len(table["subspaces"]) == 35
    assert table["params"] == {"n": 4, "k": 2, "p": 2, "e": 1}
    # json export applies to index tables only
    code = run(["export", "--graph", "johnson", "--l", 4, "--m", 2,
                "--format", "json"])
    capsys.readouterr()
    assert code == 2


def test_caps_override_flag(capsys):
    # without the override a big field is refused; with it, accepted
    code = run(["export", "--graph", "grassmann", "--n", 3, "--k", 1, "--p", 17])
    capsys.readouterr()
    assert code == 2
    from grassmann_lab.config import set_caps
    try:
        code = run(["--q-cap", "17", "export", "--graph", "grassmann",
                    "--n", 3, "--k", 1, "--p", 17])
        capsys.readouterr()
        assert code == 0
    finally:
        set_caps(q_max=16)


def test_caps_env_variable(tmp_path, capsys, monkeypatch):
    from grassmann_lab.config import set_caps
    monkeypatch.setenv("GRASSMANN_LAB_CAPS", "q=19")
    try:
        code = run(["export", "--graph", "grassmann", "--n", 3, "--k", 1, "--p", 19])
        capsys.readouterr()
        assert code == 0
    finally:
        set_caps(q_max=16)

import json

import pytest

import nbhd


def test_builtins_validate_and_round_trip():
    assert set(nbhd.builtin_names()) == {"line_in_p2", "hyperplane_p2_in_p3", "diagonal_p1xp1", "affine_split"}
    for name in nbhd.builtin_names():
        text = nbhd.generate(name, twist=-1, perturb=3)
        assert nbhd.canonicalize(text) == text
        assert all(entry["ok"] for entry in nbhd.validate(text))


def test_diagonal_solved_at_both_orders():
    report = nbhd.obstruct(nbhd.generate("diagonal_p1xp1", twist=1))
    assert [o["status"] for o in report["orders"]] == ["Solved", "Solved"]
    assert report["orders"][0]["solve"]["torsor_dim"] == report["orders"][0]["cohomology"]["H1"]


def test_report_is_deterministic_across_workers():
    text = nbhd.generate("hyperplane_p2_in_p3", perturb=2)
    assert nbhd.obstruct(text, workers=1) == nbhd.obstruct(text, workers=4)


def test_cohomology_counts():
    assert nbhd.cohomology_dim(1, [-2]) == [0, 1]
    assert nbhd.cohomology_dim(2, [-5]) == [0, 0, 6]


def test_errors_surface_as_engine_errors():
    with pytest.raises(nbhd.EngineError, match="UnknownScenario"):
        nbhd.generate("torus")
    doc = json.loads(nbhd.generate("line_in_p2"))
    doc["schema_version"] = 7
    with pytest.raises(nbhd.EngineError, match="SchemaVersionError"):
        nbhd.validate(json.dumps(doc))
    with pytest.raises(nbhd.EngineError, match="UnsupportedOrder"):
        nbhd.obstruct(nbhd.generate("line_in_p2", order=3), order=3)


def test_property_suites_pass():
    for rows in (nbhd.mc_lab(2), nbhd.formal_lab(2), nbhd.geometry_lab(2, 40)):
        assert rows and all(r["passed"] for r in rows), rows

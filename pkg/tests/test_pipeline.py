import json

import pytest

from src.models.exceptions import BudgetError, ConfigError, DiagramError, ScalarError
from src.pipeline.knot_algebra_pipeline import SCHEMA_VERSION, KnotAlgebraPipeline
from src.pipeline.run_config import RunConfig
from tests.conftest import TREFOIL_PD


def run(command, **mapping):
    return KnotAlgebraPipeline(RunConfig.from_mapping(mapping)).run(command)


def test_config_needs_exactly_one_input():
    with pytest.raises(ConfigError, match="exactly one input"):
        RunConfig.from_mapping({})
    with pytest.raises(ConfigError, match="pd, builtin"):
        RunConfig.from_mapping({"pd": TREFOIL_PD, "builtin": "3_1"})


def test_config_budgets():
    config = RunConfig.from_mapping({"builtin": "3_1", "rep_degree_max": "4", "search_depth": 3, "max_states": 10})
    assert config.budgets.max_degree == 4
    assert config.budgets.max_relators == 3
    assert config.budgets.max_conjugator == 12
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"builtin": "3_1", "conjugator_max": "many"})
    with pytest.raises(BudgetError):
        RunConfig.from_mapping({"builtin": "3_1", "rep_degree_max": 0})


def test_config_rejects_unknown_choices():
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"builtin": "3_1", "variant": "other"})
    with pytest.raises(ConfigError):
        RunConfig.from_mapping({"builtin": "3_1", "format": "yaml"})


def test_config_flags_must_be_booleans():
    assert RunConfig.from_mapping({"builtin": "3_1"}).strict is False
    assert RunConfig.from_mapping({"builtin": "3_1", "strict": True, "progress": False}).strict is True
    for value in ("false", "true", 0, 1):
        with pytest.raises(ConfigError, match="strict must be true or false"):
            RunConfig.from_mapping({"builtin": "3_1", "strict": value})
    with pytest.raises(ConfigError, match="progress"):
        RunConfig.from_mapping({"builtin": "3_1", "progress": "no"})


def test_parse_report():
    report = run("parse", pd=TREFOIL_PD)
    assert report["schema"] == SCHEMA_VERSION
    assert report["command"] == "parse"
    assert (report["c"], report["n_D"], report["writhe"], report["genus"]) == (3, 6, -3, 0)
    assert report["diagram_json"]["arcs"][2]["segments"] == [6, 1]


def test_reading_a_diagram_file(tmp_path):
    path = tmp_path / "trefoil.txt"
    path.write_text("O1-U2-O3-U1-O2-U3-\n")
    report = run("parse", file=str(path))
    assert report["diagram"] == "trefoil"
    assert report["writhe"] == -3
    with pytest.raises(ConfigError):
        run("parse", file=str(tmp_path / "missing.txt"))


def test_quiver_report():
    report = run("quiver", builtin="3_1")
    assert len(report["quiver"]["arrows"]) == 6
    assert report["fundamental_cycles"][0] == {"vertex": 0, "alpha": [5, 6, 1], "beta": [2, 3, 4]}


def test_algebra_report():
    report = run("algebra", builtin="unknot_1", field="rational", q="2")
    assert report["dimension"] == 4
    assert report["radical_series"] == [4, 3, 1, 0]
    assert report["tau"] == {"mode": "alpha-length", "values": {"0": "2"}}
    assert report["relations"]["type_two"][0]["vertex"] == 0
    json.dumps(report)


def test_algebra_errors():
    with pytest.raises(ConfigError, match="--q"):
        run("algebra", builtin="3_1", field="rational")
    with pytest.raises(ScalarError):
        run("algebra", builtin="3_1", field="fp:6", q="2")
    with pytest.raises(DiagramError):
        run("algebra", pd="X(1,2,3,4)")


@pytest.mark.parametrize("variant, skipped", [("lambda", []), ("monomial", ["frobenius"])])
def test_check_report(variant, skipped):
    report = run("check", builtin="3_1", field="fp:5", q="2", variant=variant)
    assert report["passed"]
    assert report["skipped"] == skipped
    names = [check["name"] for check in report["checks"]]
    assert names[:6] == ["admissible", "basic", "special_biserial", "unit", "associativity", "oracle"]
    assert ("frobenius" in names) == (variant == "lambda")
    json.dumps(report)


def test_grading_report():
    report = run("grading", builtin="3_1", rep_degree_max=4)
    assert report["abelianization_rank"] == 1
    assert report["homogeneity"]["verdict"] == "homogeneous"
    assert report["connected"]["verdict"] == "not-connected"
    assert report["inconclusive"] is False
    assert report["basis_degrees"]["e0"] == "1"
    assert report["budgets"]["max_degree"] == 4
    json.dumps(report)


def test_table_report():
    report = KnotAlgebraPipeline.table_report()
    assert report["command"] == "table"
    assert len(report["diagrams"]) == 9


def test_unknown_command():
    with pytest.raises(ConfigError):
        run("draw", builtin="3_1")

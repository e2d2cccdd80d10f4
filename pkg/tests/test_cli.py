# tests/test_cli.py
import asyncio
import json
from fractions import Fraction as F

import pytest

from cli.config import CliConfig
from cli.figures import emit_figures
from cli.oracle import OracleRunner
from cli.regression import regression_matrix, run_concurrently, run_regression
from cli.rr_check import RRCase, RRReport, check_case_table, rr_check
from cli.spec_parser import SpecParser
from main import main
from tests.bundles import circle_bundle, hexagonal_bundle, standard_bundle
from theta.generators import GeneratorBasis
from theta.sections import ThetaSection
from utils.errors import InternalConsistencyError, InvalidSpec, NonSquare, TooHighDimensional, UnsupportedDimension

HEXAGONAL = {
    "lattice": [["4/3", "-2/3"], ["-2/3", "4/3"]],
    "Q": [["2", "1"], ["1", "2"]],
    "alpha": ["0", "0"],
}
CIRCLE = {"lattice": [["1"]], "Q": [["3"]], "alpha": ["0"]}
PLANE = {
    "lattice": [["1", "0"], ["0", "1"]],
    "Q": [["1", "0"], ["0", "1"]],
    "alpha": ["0", "0"],
    "options": {
        "polynomials": [
            {"terms": [{"exponent": [1, 0], "coefficient": "0"}, {"exponent": [0, 1], "coefficient": "0"},
                       {"exponent": [0, 0], "coefficient": "0"}]},
            {"terms": [{"exponent": [2, 0], "coefficient": "0"}, {"exponent": [0, 1], "coefficient": "1"},
                       {"exponent": [1, 1], "coefficient": "-1"}, {"exponent": [0, 0], "coefficient": "0"}]},
        ]
    },
}


def write_spec(tmp_path, name, payload):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def run_main(argv):
    return asyncio.run(main(argv))


def test_config_defaults(monkeypatch):
    for key in ("TROPICAL_SVG_OUT", "TROPICAL_SLICE_COORDINATE", "TROPICAL_ORACLE", "TROPICAL_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)
    config = CliConfig.from_env()
    assert config == CliConfig()


def test_config_from_env(monkeypatch):
    monkeypatch.setenv("TROPICAL_SVG_OUT", "out")
    monkeypatch.setenv("TROPICAL_SLICE_COORDINATE", "2")
    monkeypatch.setenv("TROPICAL_ORACLE", "true")
    monkeypatch.setenv("TROPICAL_LOG_LEVEL", "debug")
    config = CliConfig.from_env()
    assert config == CliConfig(svg_out="out", slice_coordinate=2, oracle=True, log_level="DEBUG")

    monkeypatch.setenv("TROPICAL_SLICE_COORDINATE", "-1")
    with pytest.raises(ValueError):
        CliConfig.from_env()


def test_parse_document():
    document = SpecParser.parse(json.dumps({**HEXAGONAL, "options": {"points": [["1/2", "0"]], "max_box": 10}}))
    assert document.bundle == hexagonal_bundle()
    assert document.options.points == ((F(1, 2), F(0)),)
    assert document.options.max_box == 10
    assert document.options.section == "xi"


def test_parse_rejects_malformed_documents():
    with pytest.raises(InvalidSpec):
        SpecParser.parse("{not json")
    with pytest.raises(InvalidSpec):
        SpecParser.parse(json.dumps({"lattice": [["1"]], "Q": [["1"]]}))
    with pytest.raises(NonSquare):
        SpecParser.parse(json.dumps({"lattice": [["1", "0"]], "Q": [["1"]], "alpha": ["0"]}))
    with pytest.raises(InvalidSpec):
        SpecParser.parse(json.dumps({**CIRCLE, "options": {"colour": "red"}}))
    with pytest.raises(InvalidSpec):
        SpecParser.parse(json.dumps({**CIRCLE, "alpha": ["1/0"]}))


def test_section_descriptions():
    basis = GeneratorBasis(circle_bundle(3))
    assert SpecParser.section(basis, "xi") == ThetaSection.xi(basis)
    assert SpecParser.section(basis, {"generator": 1, "shift": "1/2"}) == ThetaSection.generator(basis, 1, F(1, 2))
    section = SpecParser.section(basis, {"coefficients": ["0", "-inf", "1/3"]})
    assert section.support == [0, 2]
    with pytest.raises(InvalidSpec):
        SpecParser.section(basis, {"generator": 3})
    with pytest.raises(InvalidSpec):
        SpecParser.section(basis, {"coefficients": ["0"]})


def test_rr_check_definite():
    report = rr_check(hexagonal_bundle())
    assert report.case == RRCase.DEFINITE
    assert (report.h0_D, report.h0_negD, report.half_D2) == (4, 0, 4)
    assert report.inequality_holds and not report.strict
    assert report.det_standard == 3


def test_rr_check_semidefinite_cases():
    zero = rr_check(standard_bundle([[0, 0], [0, 0]]))
    assert zero.case == RRCase.ZERO_FORM
    assert (zero.h0_D, zero.h0_negD, zero.half_D2, zero.strict) == (1, 1, 0, True)

    sectionless = rr_check(standard_bundle([[0, 0], [0, 0]], ("1/2", 0)))
    assert sectionless.case == RRCase.SECTIONLESS
    assert (sectionless.h0_D + sectionless.h0_negD, sectionless.half_D2, sectionless.strict) == (0, 0, False)

    kernel_fractional = rr_check(standard_bundle([[2, 0], [0, 0]], (0, "1/2")))
    assert kernel_fractional.case == RRCase.SECTIONLESS
    assert (kernel_fractional.h0_D, kernel_fractional.h0_negD, kernel_fractional.half_D2) == (0, 0, 0)

    rank_one = rr_check(standard_bundle([[2, 0], [0, 0]]))
    assert rank_one.case == RRCase.SEMIDEFINITE
    assert (rank_one.h0_D, rank_one.h0_negD, rank_one.half_D2) == (2, 0, 0)


def test_rr_check_semidefinite_total_is_torsion_order():
    positive = rr_check(standard_bundle([[3, 0], [0, 0]], (0, 2)))
    assert positive.case == RRCase.SEMIDEFINITE
    assert (positive.h0_D, positive.h0_negD) == (3, 0)

    negative = rr_check(standard_bundle([[0, 0], [0, -2]]))
    assert negative.case == RRCase.SEMIDEFINITE
    assert (negative.h0_D, negative.h0_negD) == (0, 2)

    report = RRReport.from_values(RRCase.SEMIDEFINITE, 2, 0, F(0), F(0), F(0))
    check_case_table(report, 2)
    with pytest.raises(InternalConsistencyError):
        check_case_table(report, 3)


def test_rr_check_indefinite():
    report = rr_check(standard_bundle([[1, 0], [0, -1]]))
    assert report.case == RRCase.INDEFINITE
    assert (report.h0_D, report.h0_negD, report.half_D2) == (0, 0, -1)
    assert report.strict
    assert report.to_json()["half_D2"] == "-1"


def test_rr_check_requires_surface():
    with pytest.raises(UnsupportedDimension):
        rr_check(circle_bundle(3))


def test_rr_report_flags_are_recomputed():
    with pytest.raises(InternalConsistencyError):
        RRReport(RRCase.DEFINITE, 1, 0, F(4), True, False, F(4), F(3))


def test_regression_matrix_runs_in_order():
    rows = asyncio.run(run_regression())
    assert len(rows) == 7
    assert "semidefinite_fractional_kernel_alpha" in [row["name"] for row in rows]
    assert [row["name"] for row in rows] == [case.name for case in regression_matrix()]
    assert [row["case"] for row in rows] == [case.expected.value for case in regression_matrix()]
    assert all(row["inequality_holds"] for row in rows)


def test_run_concurrently_keeps_order():
    jobs = [lambda k=k: k * k for k in range(7)]
    assert asyncio.run(run_concurrently(jobs, 2)) == [k * k for k in range(7)]


def test_oracle_checks_pass():
    basis = GeneratorBasis(hexagonal_bundle())
    report = OracleRunner(basis).run(ThetaSection.xi(basis))
    assert report.checks == {"trop_det": "ok", "cosets": "ok", "phi": "ok"}


def test_figures_are_deterministic(tmp_path):
    first = emit_figures(circle_bundle(3), ["divisor", "slice"], str(tmp_path / "a"))
    second = emit_figures(circle_bundle(3), ["divisor", "slice"], str(tmp_path / "b"))
    assert set(first) == {"divisor", "slice"}
    for kind in first:
        with open(first[kind], "rb") as a, open(second[kind], "rb") as b:
            assert a.read() == b.read()


def test_grid_figures(tmp_path):
    paths = emit_figures(standard_bundle([[1, 0], [0, 1]]), ["divisor", "intersection"], str(tmp_path))
    assert open(paths["intersection"], encoding="utf-8").read().lstrip().startswith("<?xml")


def test_slice_figure_needs_few_generators(tmp_path):
    with pytest.raises(TooHighDimensional):
        emit_figures(circle_bundle(5), ["slice"], str(tmp_path))


def test_main_h0(tmp_path, capsys):
    assert run_main(["h0", write_spec(tmp_path, "circle", CIRCLE)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["h0"] == 3
    assert payload["by_polyhedron"] == 3


def test_main_polyhedron_slice_flag(tmp_path, capsys):
    path = write_spec(tmp_path, "circle", CIRCLE)
    assert run_main(["polyhedron", path, "--slice-coordinate", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["slice_coordinate"] == 2
    assert payload["dimension"] == 3


def test_main_plane_intersection(tmp_path, capsys):
    assert run_main(["intersect", write_spec(tmp_path, "plane", PLANE)]) == 0
    assert json.loads(capsys.readouterr().out)["total"] == 2


def test_main_divisor_with_oracle(tmp_path, capsys):
    assert run_main(["divisor", write_spec(tmp_path, "circle", CIRCLE), "--oracle"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["balancing"]["balanced"] is True
    assert len(payload["divisor"]["cells"]) == 3
    assert payload["oracle"]["phi"] == "ok"


def test_main_exit_codes(tmp_path, capsys):
    broken = tmp_path / "broken.json"
    broken.write_text("[]", encoding="utf-8")
    assert run_main(["h0", str(broken)]) == 2
    assert json.loads(capsys.readouterr().err.strip().splitlines()[-1])["error"] == "InvalidSpec"

    assert run_main(["rr-check", write_spec(tmp_path, "circle", CIRCLE)]) == 3
    assert json.loads(capsys.readouterr().err.strip().splitlines()[-1])["error"] == "UnsupportedDimension"


def test_main_rr_check_several_files(tmp_path, capsys):
    paths = [write_spec(tmp_path, "hexagonal", HEXAGONAL), write_spec(tmp_path, "zero", {
        "lattice": [["1", "0"], ["0", "1"]], "Q": [["0", "0"], ["0", "0"]], "alpha": ["0", "0"],
    })]
    assert run_main(["rr-check", *paths]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert [row["case"] for row in rows] == ["case_1_definite", "case_2_zero_form"]
    assert rows[0]["spec"] == paths[0]

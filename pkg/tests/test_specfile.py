import json

import pytest

from lpsoliton.fixtures import change_frame, example_manifold, warped_frame
from lpsoliton.specfile import SpecError, dump_spec, dumps, emit_example, load_spec, parse_spec


def _doc(**changes):
    doc = json.loads(emit_example())
    doc.update(changes)
    return doc


def test_builtin_loads():
    M, P = load_spec("builtin")
    assert (M, P) == example_manifold()


def test_emitted_example_content():
    doc = json.loads(emit_example())
    assert doc["dim"] == 4
    assert doc["metric"][3][3] == "-1" and doc["metric"][0][0] == "1"
    assert {"i": 1, "j": 4, "k": 1, "value": "-1"} in doc["brackets"]
    assert len(doc["brackets"]) == 3
    assert [row[3] for row in doc["phi"]] == ["0", "0", "0", "0"]  # phi(e4) = 0
    assert doc["xi"] == ["0", "0", "0", "1"]
    assert "brackets" in doc["notes"]


def test_round_trip(tmp_path):
    path = tmp_path / "ex.json"
    path.write_text(emit_example(), encoding="utf-8")
    assert load_spec(path) == example_manifold()
    M, P = change_frame(*warped_frame((1, -1, 1)), [[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0],
                                                   [0, 0, 1, 1]])
    doc = json.loads(dumps(dump_spec(M, P)))
    assert parse_spec(doc) == (M, P)


def test_eta_defaults_to_lowered_xi():
    doc = _doc()
    del doc["eta"]
    _, P = parse_spec(doc)
    assert P.eta.data == (0, 0, 0, -1)


def test_antisymmetry_error():
    doc = _doc(dim=2, metric=[["1", "0"], ["0", "1"]], phi=[["0", "0"], ["0", "0"]],
               xi=["0", "1"], eta=None,
               brackets=[{"i": 1, "j": 2, "k": 1, "value": "1"},
                         {"i": 2, "j": 1, "k": 1, "value": "1"}])
    with pytest.raises(SpecError) as exc:
        parse_spec(doc)
    assert exc.value.invariant == "brackets_antisymmetric"
    assert exc.value.witness == (1, 2, 1)


def test_singular_metric():
    doc = _doc(metric=[["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"],
                       ["0", "0", "0", "0"]])
    with pytest.raises(SpecError) as exc:
        parse_spec(doc)
    assert exc.value.invariant == "metric_invertible"


def test_jacobi_violation():
    doc = _doc(dim=3, metric=[["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
               phi=[["0"] * 3] * 3, xi=["0", "0", "1"], eta=None,
               brackets=[{"i": 1, "j": 2, "k": 3, "value": "1"},
                         {"i": 1, "j": 3, "k": 1, "value": "1"}])
    with pytest.raises(SpecError) as exc:
        parse_spec(doc)
    assert exc.value.invariant == "jacobi"


@pytest.mark.parametrize("changes,field", [
    ({"metric": [[1.0, 0, 0, 0]] * 4}, "metric[0][0]"),
    ({"xi": ["0", "0", "1"]}, "xi"),
    ({"dim": "4"}, "dim"),
    ({"extra": 1}, "extra"),
    ({"brackets": [{"i": 1, "j": 5, "k": 1, "value": "1"}]}, "brackets[0].j"),
    ({"brackets": [{"i": 1, "j": 4, "k": 1, "value": "-1"}] * 2}, "brackets[1]"),
    ({"phi": [["a"] * 4] * 4}, "phi[0][0]"),
])
def test_located_errors(changes, field):
    with pytest.raises(SpecError) as exc:
        parse_spec(_doc(**changes))
    assert exc.value.field == field


def test_json_syntax_error_has_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "dim": 4,\n  "metric": [\n}\n', encoding="utf-8")
    with pytest.raises(SpecError) as exc:
        load_spec(path)
    assert exc.value.line == 4


def test_missing_file(tmp_path):
    with pytest.raises(SpecError):
        load_spec(tmp_path / "nope.json")

"""Model file round trips and format errors."""

import json

import pytest

from jumploci import (
    ModelFormatError,
    builtin,
    dumps_model,
    load_locus,
    load_model,
    model_from_dict,
    model_to_dict,
    save_model,
    DEFAULT_INSTANCES,
)


@pytest.mark.parametrize("name,params", DEFAULT_INSTANCES)
def test_round_trip_equality(name, params):
    model = builtin(name, **params).model
    assert model_from_dict(model_to_dict(model)) == model


def test_file_round_trip(tmp_path):
    model = builtin("blowup_abelian4_curve", genus=2).model
    path = tmp_path / "blowup.json"
    save_model(model, path)
    assert load_model(path) == model


def test_dumps_deterministic():
    model = builtin("fibered_over_curve", genus=2).model
    assert dumps_model(model) == dumps_model(model)


def test_rationals_survive_as_strings():
    model = builtin("cartwright_steger_like").model
    blob = dumps_model(model)
    assert '"0"' in blob  # origin coordinates serialized exactly
    parsed = json.loads(blob)
    assert parsed["schema_version"] == 1


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d.update(schema_version=99), "schema_version"),
    (lambda d: d.pop("n"), "must be present"),
    (lambda d: d["hodge"].append({"p": 9, "q": 0, "generic": 1}), "outside"),
    (lambda d: d["hodge"][0]["strata"].append({"A": [[1]], "b": ["1/2"]}), "value"),
])
def test_malformed_models(mutate, message):
    base = model_to_dict(builtin("blowup_abelian4_curve", genus=2).model)
    blob = json.loads(json.dumps(base))
    mutate(blob)
    with pytest.raises(ModelFormatError, match=message):
        model_from_dict(blob)


def test_float_rationals_rejected():
    blob = model_to_dict(builtin("abelian", g=1).model)
    blob["hodge"][0]["strata"][0]["b"] = [0.5, 0.0]
    with pytest.raises(ModelFormatError):
        model_from_dict(blob)


def test_load_locus(tmp_path):
    path = tmp_path / "locus.json"
    path.write_text(json.dumps({
        "ambient_dim": 2,
        "components": [{"A": [[1, 0]], "b": ["1/2"]}, {"A": [], "b": []}],
    }), encoding="utf-8")
    comps = load_locus(path)
    assert len(comps) == 2
    assert comps[0].normalize().dim == 1
    assert comps[1].normalize().dim == 2


def test_missing_file():
    with pytest.raises(ModelFormatError):
        load_model("/nonexistent/model.json")

"""Model file format: versioned UTF-8 JSON with exact rationals.

Rationals are serialized as "num/den" strings (plain integers allowed on
input) so that nothing is lost to floating point.  Rank-grid entries that
are identically zero are omitted on export and filled back in on import,
making export/import a round trip up to equality of models.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .errors import ModelFormatError
from .model import PluriData, RankFunction, Stratum, VarietyModel
from .torus import CongruenceCoset, TorusPoint

SCHEMA_VERSION = 1


def _fraction_to_str(x: Fraction) -> str:
    return str(Fraction(x))


def _fraction_from_str(s: Any) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise ModelFormatError(f"rationals must be strings or integers, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ModelFormatError(f"bad rational {s!r}: {exc}") from None


def _coset_to_dict(coset: CongruenceCoset) -> dict:
    return {
        "A": [list(row) for row in coset.rows],
        "b": [_fraction_to_str(b) for b in coset.rhs],
    }


def _coset_from_dict(obj: Any, ambient_dim: int) -> CongruenceCoset:
    if not isinstance(obj, dict) or "A" not in obj or "b" not in obj:
        raise ModelFormatError("a coset needs 'A' (integer rows) and 'b' (rationals)")
    rows = obj["A"]
    rhs = obj["b"]
    if not isinstance(rows, list) or not isinstance(rhs, list):
        raise ModelFormatError("'A' must be a list of rows and 'b' a list of rationals")
    try:
        return CongruenceCoset.of(
            ambient_dim,
            [[int(a) for a in row] for row in rows],
            [_fraction_from_str(b) for b in rhs])
    except Exception as exc:
        raise ModelFormatError(f"bad coset: {exc}") from None


def _rank_to_dict(rf: RankFunction) -> dict:
    return {
        "generic": rf.generic_value,
        "strata": [dict(_coset_to_dict(c), value=v) for c, v in rf.strata],
    }


def _rank_from_dict(obj: Any, ambient_dim: int) -> RankFunction:
    generic = obj.get("generic", 0)
    if not isinstance(generic, int):
        raise ModelFormatError("'generic' must be an integer")
    strata = []
    for s in obj.get("strata", []):
        if "value" not in s:
            raise ModelFormatError("a stratum needs a 'value'")
        strata.append(Stratum(_coset_from_dict(s, ambient_dim), int(s["value"])))
    return RankFunction(ambient_dim, generic, tuple(strata))


def _point_from_list(obj: Any, ambient_dim: int) -> TorusPoint:
    if not isinstance(obj, list) or len(obj) != ambient_dim:
        raise ModelFormatError(f"a torus point must be a list of {ambient_dim} rationals")
    return TorusPoint.of([_fraction_from_str(c) for c in obj])


def model_to_dict(model: VarietyModel) -> dict:
    torus = model.torus_dim
    hodge = []
    for p in range(model.n + 1):
        for q in range(model.n + 1):
            rf = model.hodge[p][q]
            if rf.generic_value == 0 and not rf.strata:
                continue
            hodge.append(dict({"p": p, "q": q}, **_rank_to_dict(rf)))
    out: dict = {
        "schema_version": SCHEMA_VERSION,
        "name": model.name,
        "n": model.n,
        "g": model.g,
        "hodge": hodge,
        "defect_strata": [list(s) for s in model.defect_strata],
        "flags": {"semismall": model.semismall, "serre_check": model.serre_check},
    }
    if model.pluri is not None:
        out["pluri"] = {
            "q_base": model.pluri.q_base,
            "translates": [[_fraction_to_str(c) for c in t.coords] for t in model.pluri.translates],
            "values": {str(m): int(v) for m, v in sorted(model.pluri.values.items())},
            "generic_values": {str(m): int(v) for m, v in sorted(model.pluri.generic_values.items())},
        }
    if model.sheaves:
        out["sheaves"] = {
            name: [_rank_to_dict(rf) for rf in rfs]
            for name, rfs in sorted(model.sheaves.items())
        }
    return out


def model_from_dict(obj: Any) -> VarietyModel:
    if not isinstance(obj, dict):
        raise ModelFormatError("a model file must contain a JSON object")
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ModelFormatError(f"unsupported schema_version {version!r}; this build reads {SCHEMA_VERSION}")
    try:
        n = int(obj["n"])
        g = int(obj["g"])
    except (KeyError, TypeError, ValueError):
        raise ModelFormatError("'n' and 'g' must be present integers") from None
    if n < 0 or g < 0:
        raise ModelFormatError("'n' and 'g' must be nonnegative")
    torus = 2 * g

    grid = [[RankFunction(torus, 0, ()) for _ in range(n + 1)] for _ in range(n + 1)]
    for entry in obj.get("hodge", []):
        try:
            p, q = int(entry["p"]), int(entry["q"])
        except (KeyError, TypeError, ValueError):
            raise ModelFormatError("every hodge entry needs integer 'p' and 'q'") from None
        if not (0 <= p <= n and 0 <= q <= n):
            raise ModelFormatError(f"hodge entry ({p},{q}) outside the (n+1)x(n+1) grid")
        grid[p][q] = _rank_from_dict(entry, torus)

    defect = obj.get("defect_strata", [])
    if not isinstance(defect, list):
        raise ModelFormatError("'defect_strata' must be a list of [l, dim] pairs")
    strata = []
    for pair in defect:
        if not (isinstance(pair, list) and len(pair) == 2):
            raise ModelFormatError("'defect_strata' entries are [l, dim] pairs")
        strata.append((int(pair[0]), int(pair[1])))

    pluri = None
    if obj.get("pluri") is not None:
        pd = obj["pluri"]
        try:
            pluri = PluriData(
                q_base=int(pd["q_base"]),
                translates=tuple(_point_from_list(t, torus) for t in pd["translates"]),
                values={int(m): int(v) for m, v in pd.get("values", {}).items()},
                generic_values={int(m): int(v) for m, v in pd.get("generic_values", {}).items()},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ModelFormatError(f"bad pluri block: {exc}") from None

    sheaves = {}
    for name, rfs in obj.get("sheaves", {}).items():
        if not isinstance(rfs, list):
            raise ModelFormatError(f"sheaf slot {name!r} must be a list of rank functions")
        sheaves[name] = tuple(_rank_from_dict(rf, torus) for rf in rfs)

    flags = obj.get("flags", {})
    return VarietyModel(
        n=n,
        g=g,
        hodge=tuple(tuple(row) for row in grid),
        defect_strata=tuple(strata),
        pluri=pluri,
        sheaves=sheaves,
        semismall=bool(flags.get("semismall", False)),
        serre_check=bool(flags.get("serre_check", True)),
        name=str(obj.get("name", "")),
    )


def dumps_model(model: VarietyModel) -> str:
    return json.dumps(model_to_dict(model), indent=2, sort_keys=True) + "\n"


def save_model(model: VarietyModel, path: str | Path) -> None:
    Path(path).write_text(dumps_model(model), encoding="utf-8")


def load_model(path: str | Path) -> VarietyModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path} is not valid JSON: {exc}") from None
    return model_from_dict(obj)


def load_locus(path: str | Path) -> list[CongruenceCoset]:
    """Read a standalone locus file: an ambient dimension plus components."""
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ModelFormatError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(obj, dict) or "ambient_dim" not in obj:
        raise ModelFormatError("a locus file needs 'ambient_dim' and 'components'")
    ambient = int(obj["ambient_dim"])
    return [_coset_from_dict(c, ambient) for c in obj.get("components", [])]

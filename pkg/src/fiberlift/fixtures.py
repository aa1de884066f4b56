"""Reading and writing the JSON fixture documents.

Polynomials are lists of ``[exponent-vector, coefficient]`` pairs.  A
record document is written with one top-level key per line and compact
values, so canonical text round-trips byte for byte.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, List, Optional, Union

from .alexander import FiberedClass, GroupPresentation, ManifoldRecord
from .lpoly import LaurentPoly
from .surfcover import FreeAutomorphism, PermCover
from .words import format_word

RECORD_KEYS = ("name", "b1", "closed", "delta_pi", "delta_factors", "fibered_classes", "presentation")


class FixtureError(ValueError):
    pass


def _compact(value: Any) -> str:
    return json.dumps(value, separators=(", ", ": "))


def dump_document(doc: dict, keys=None) -> str:
    keys = keys or list(doc)
    lines = [f"  {json.dumps(k)}: {_compact(doc[k])}" for k in keys if k in doc]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def read_json(path: Union[str, Path]) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FixtureError(f"{path}: {exc}") from exc


def poly_from_json(data: Any, num_vars: Optional[int] = None) -> LaurentPoly:
    try:
        return LaurentPoly.from_pairs(data, num_vars)
    except (TypeError, ValueError) as exc:
        raise FixtureError(f"bad polynomial encoding: {exc}") from exc


def poly_to_json(p: LaurentPoly) -> list:
    return p.to_pairs()


# -- manifold records ----------------------------------------------------


def record_from_dict(doc: dict) -> ManifoldRecord:
    try:
        b1 = int(doc["b1"])
        delta = poly_from_json(doc["delta_pi"], b1) if doc.get("delta_pi") is not None else None
        factors = (
            [poly_from_json(f, b1) for f in doc["delta_factors"]]
            if doc.get("delta_factors") is not None
            else None
        )
        fcs = [
            FiberedClass(fc["a"], fc["monodromy"], fc.get("fiber_genus_data"))
            for fc in doc.get("fibered_classes", [])
        ]
        pres = None
        if doc.get("presentation") is not None:
            p = doc["presentation"]
            pres = GroupPresentation(p["generators"], p["relators"], p["psi"])
        return ManifoldRecord(
            name=str(doc["name"]),
            b1=b1,
            closed=bool(doc.get("closed", False)),
            delta_pi=delta,
            presentation=pres,
            fibered_classes=fcs,
            delta_factors=factors,
        )
    except KeyError as exc:
        raise FixtureError(f"record is missing field {exc}") from exc


def record_to_dict(rec: ManifoldRecord) -> dict:
    doc: dict = {"name": rec.name, "b1": rec.b1, "closed": rec.closed}
    if rec.delta_pi is not None:
        doc["delta_pi"] = poly_to_json(rec.delta_pi)
    if rec.delta_factors is not None:
        doc["delta_factors"] = [poly_to_json(f) for f in rec.delta_factors]
    fcs = []
    for fc in rec.fibered_classes:
        item = {"a": list(fc.a), "monodromy": [list(r) for r in fc.monodromy]}
        if fc.fiber_genus_data is not None:
            item["fiber_genus_data"] = fc.fiber_genus_data
        fcs.append(item)
    doc["fibered_classes"] = fcs
    if rec.presentation is not None:
        p = rec.presentation
        doc["presentation"] = {
            "generators": p.generators,
            "relators": [format_word(w) for w in p.relators],
            "psi": [list(r) for r in p.psi.matrix],
        }
    return doc


def dump_record(rec: ManifoldRecord) -> str:
    return dump_document(record_to_dict(rec), RECORD_KEYS)


def load_record(path: Union[str, Path]) -> ManifoldRecord:
    return record_from_dict(read_json(path))


def loads_record(text: str) -> ManifoldRecord:
    return record_from_dict(json.loads(text))


# -- polynomial documents ------------------------------------------------


def load_polynomial(path: Union[str, Path]):
    """(poly, factors or None) from a bare pair list, {"poly": ...} or a record."""
    data = read_json(path)
    if isinstance(data, list):
        return poly_from_json(data), None
    if isinstance(data, dict):
        if "poly" in data:
            p = poly_from_json(data["poly"])
            factors = data.get("factors")
            return p, [poly_from_json(f, p.num_vars) for f in factors] if factors else None
        if "b1" in data:
            rec = record_from_dict(data)
            return rec.alexander(), rec.delta_factors
    raise FixtureError(f"{path}: not a polynomial document")


# -- automorphisms and covers ----------------------------------------------


def automorphism_from_dict(doc: dict, require_inverse: bool = True) -> FreeAutomorphism:
    if require_inverse and "inverse" not in doc:
        raise FixtureError("automorphism fixtures must supply an inverse")
    try:
        return FreeAutomorphism(int(doc["rank"]), doc["images"], doc.get("inverse"))
    except KeyError as exc:
        raise FixtureError(f"automorphism is missing field {exc}") from exc


def automorphism_to_dict(phi: FreeAutomorphism) -> dict:
    return {"rank": phi.rank, **phi.to_strings()}


def load_automorphism(path: Union[str, Path]) -> FreeAutomorphism:
    return automorphism_from_dict(read_json(path))


def cover_from_json(perms: List[List[int]]) -> PermCover:
    return PermCover.from_one_line(perms)

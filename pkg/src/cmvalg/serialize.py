"""JSON formats for algebras and piecewise-linear functions.

Rationals travel as strings in lowest terms ("1/2", "0"); algebra files
carry a "kind" tag ("mv" or "cmv").  Loading always re-validates.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cmv import FiniteCmvAlgebra
from .errors import MalformedTableError
from .mcnaughton import PwlFunction, pwl_canonicalize
from .mv import FiniteMvAlgebra


def mv_to_dict(algebra: FiniteMvAlgebra) -> dict:
    return {
        "kind": "mv",
        "size": algebra.size,
        "names": list(algebra.names),
        "zero": algebra.zero,
        "neg": algebra.neg.tolist(),
        "oplus": algebra.oplus.tolist(),
    }


def cmv_to_dict(algebra: FiniteCmvAlgebra) -> dict:
    data = mv_to_dict(algebra.mv)
    data["kind"] = "cmv"
    data["diamond"] = algebra.diamond.tolist()
    data["i"] = algebra.identity
    if algebra.maps is not None:
        data["maps"] = [list(m) for m in algebra.maps]
    if algebra.base is not None:
        data["base"] = mv_to_dict(algebra.base)
    return data


def algebra_to_dict(algebra) -> dict:
    if isinstance(algebra, FiniteCmvAlgebra):
        return cmv_to_dict(algebra)
    return mv_to_dict(algebra)


def _require(data: dict, key: str):
    if key not in data:
        raise MalformedTableError(f"algebra file misses the {key!r} field")
    return data[key]


def algebra_from_dict(data: dict):
    """Rebuild and re-validate an algebra from its JSON dictionary."""
    kind = _require(data, "kind")
    names = data.get("names")
    mv_alg = FiniteMvAlgebra(_require(data, "oplus"), _require(data, "neg"),
                             _require(data, "zero"), names)
    if "size" in data and int(data["size"]) != mv_alg.size:
        raise MalformedTableError("declared size does not match the tables")
    if kind == "mv":
        return mv_alg
    if kind == "cmv":
        maps = data.get("maps")
        base = algebra_from_dict(data["base"]) if "base" in data else None
        return FiniteCmvAlgebra(mv_alg, _require(data, "diamond"),
                                _require(data, "i"), maps=maps, base=base)
    raise MalformedTableError(f"unknown algebra kind {kind!r}")


def pwl_to_dict(f: PwlFunction) -> dict:
    return {"points": [[str(x), str(y)] for x, y in f.points]}


def pwl_from_dict(data: dict) -> PwlFunction:
    pts = [(Fraction(x), Fraction(y)) for x, y in _require(data, "points")]
    return pwl_canonicalize(pts)


def dump_json(obj: dict) -> str:
    """Canonical machine format: sorted keys, fixed layout."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def load_algebra(path: str):
    return algebra_from_dict(load_json(path))


def load_pwl(path: str) -> PwlFunction:
    return pwl_from_dict(load_json(path))

"""Canonical JSON for maps and reports.

Field elements are written as discrete logs relative to the canonical
generator, with zero spelled ``"zero"``.  Map coefficients also carry their
coordinate vectors so a reader can check them against the recorded modulus
without trusting the log convention.
"""

from __future__ import annotations

import hashlib
import json
from importlib import resources

import numpy as np

from .gf import FieldCtx, make_field
from .maps import BiprojPair, DOPoly, MapError, PairMap

SCHEMA_VERSION = "1"
ELEMENT_PARAMS = ("B", "a")


class SerializationError(ValueError):
    pass


def element_to_json(ctx: FieldCtx, code: int):
    code = int(code)
    return "zero" if code == 0 else int(ctx.log[code])


def element_from_json(ctx: FieldCtx, value) -> int:
    if value == "zero":
        return 0
    if isinstance(value, bool) or not isinstance(value, int):
        raise SerializationError(f"field element must be a discrete log or 'zero', got {value!r}")
    return int(ctx.exp[value % (ctx.order - 1)])


def _coeff(ctx: FieldCtx, code: int) -> dict:
    return {"log": element_to_json(ctx, code), "vec": ctx.digits[int(code)].tolist()}


def _coeff_in(ctx: FieldCtx, obj) -> int:
    if isinstance(obj, dict):
        code = element_from_json(ctx, obj["log"])
        if "vec" in obj and int(ctx.from_vec(obj["vec"])) != code:
            raise SerializationError("coefficient log and coordinate vector disagree")
        return code
    return element_from_json(ctx, obj)


def _params_out(ctx: FieldCtx, params: dict) -> dict:
    out = {}
    for key, val in sorted(params.items()):
        if key in ELEMENT_PARAMS and isinstance(val, (int, np.integer)):
            out[key] = element_to_json(ctx, int(val))
        elif isinstance(val, np.integer):
            out[key] = int(val)
        else:
            out[key] = val
    return out


def _params_in(ctx: FieldCtx, params: dict) -> dict:
    return {k: (element_from_json(ctx, v) if k in ELEMENT_PARAMS else v) for k, v in params.items()}


def _field(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "m": ctx.m, "modulus": [int(c) for c in ctx.modulus]}


def map_to_json(obj) -> dict:
    ctx = obj.ctx
    out = {"schema": f"semifields.map/{SCHEMA_VERSION}", "field": _field(ctx),
           "family": obj.family, "params": _params_out(ctx, obj.params)}
    if isinstance(obj, BiprojPair):
        out.update(kind="biproj", k=int(obj.k), l=int(obj.l),
                   first=[_coeff(ctx, c) for c in obj.left],
                   second=[_coeff(ctx, c) for c in obj.right])
    elif isinstance(obj, DOPoly):
        out.update(kind="dopoly",
                   terms=[{"coeff": _coeff(ctx, c), "i": i, "j": j} for c, i, j in obj.terms],
                   linear=[{"coeff": _coeff(ctx, c), "i": i} for c, i in obj.linear])
    elif isinstance(obj, PairMap):
        mono = lambda terms: [{"coeff": _coeff(ctx, c), "x": i, "y": j} for c, i, j in terms]
        out.update(kind="pairmap", first=mono(obj.first), second=mono(obj.second))
    else:
        raise SerializationError(f"cannot serialize {type(obj).__name__}")
    return out


def map_from_json(data: dict):
    try:
        fld = data["field"]
        ctx = make_field(int(fld["p"]), int(fld["m"]))
        if "modulus" in fld and [int(c) for c in fld["modulus"]] != [int(c) for c in ctx.modulus]:
            raise SerializationError("recorded modulus differs from the canonical one")
        family = data.get("family", "custom")
        params = _params_in(ctx, data.get("params", {}))
        kind = data["kind"]
        if kind == "biproj":
            return BiprojPair(ctx, int(data["k"]), int(data["l"]),
                              tuple(_coeff_in(ctx, c) for c in data["first"]),
                              tuple(_coeff_in(ctx, c) for c in data["second"]), family, params)
        if kind == "dopoly":
            terms = tuple((_coeff_in(ctx, t["coeff"]), int(t["i"]), int(t["j"])) for t in data["terms"])
            lin = tuple((_coeff_in(ctx, t["coeff"]), int(t["i"])) for t in data.get("linear", []))
            return DOPoly(ctx, terms, lin, family, params)
        if kind == "pairmap":
            mono = lambda ts: tuple((_coeff_in(ctx, t["coeff"]), int(t["x"]), int(t["y"])) for t in ts)
            return PairMap(ctx, mono(data["first"]), mono(data["second"]), family, params)
    except (KeyError, TypeError, MapError) as exc:
        raise SerializationError(f"malformed map JSON: {exc}") from exc
    raise SerializationError(f"unknown map kind {data.get('kind')!r}")


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), default=_default)


def pretty_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, default=_default)


def _default(o):
    if isinstance(o, np.integer):
        return int(o)
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, tuple):
        return list(o)
    raise TypeError(f"not JSON serializable: {type(o).__name__}")


def map_hash(obj) -> str:
    """SHA-256 of the canonical map JSON (the cache key for certificates)."""
    return hashlib.sha256(canonical_dumps(map_to_json(obj)).encode()).hexdigest()


def load_schema(name: str) -> dict:
    with resources.files("semifields").joinpath("schemas", f"{name}.json").open() as fh:
        return json.load(fh)


def validate(instance: dict, name: str) -> None:
    """Raise ``jsonschema.ValidationError`` when ``instance`` does not match."""
    import jsonschema

    jsonschema.validate(instance, load_schema(name))

from __future__ import annotations

import json

import jsonschema
import pytest

from semifields import cm_dy, dickson, family_s, ganley, make_field
from semifields.serialize import (SerializationError, canonical_dumps, element_from_json, element_to_json,
                                  map_from_json, map_hash, map_to_json, validate)


@pytest.mark.parametrize("build", [lambda: family_s(p=3, m=6, k=2), lambda: dickson(3, 2, 1),
                                   lambda: cm_dy(5), lambda: ganley(3)])
def test_round_trip(build):
    obj, _ = build()
    data = map_to_json(obj)
    validate(data, "map")
    back = map_from_json(json.loads(canonical_dumps(data)))
    assert back == obj
    assert canonical_dumps(map_to_json(back)) == canonical_dumps(data)


def test_elements():
    F = make_field(3, 6)
    assert element_to_json(F, 0) == "zero"
    assert element_to_json(F, F.generator) == 1
    assert element_from_json(F, 1) == F.generator
    with pytest.raises(SerializationError):
        element_from_json(F, "g")


def test_hash_is_deterministic_and_sensitive():
    a, _ = family_s(p=3, m=6, k=2)
    b, _ = family_s(p=3, m=6, k=2)
    c, _ = family_s(p=3, m=6, k=4)
    assert map_hash(a) == map_hash(b) != map_hash(c)


def test_rejects_inconsistent_coefficients():
    data = map_to_json(dickson(3, 2, 1)[0])
    data["first"][0]["vec"] = [0, 1]
    with pytest.raises(SerializationError):
        map_from_json(data)
    data = map_to_json(dickson(3, 2, 1)[0])
    data["field"]["modulus"] = [1, 0]
    with pytest.raises(SerializationError):
        map_from_json(data)


def test_schema_rejects_garbage():
    with pytest.raises(jsonschema.ValidationError):
        validate({"kind": "biproj"}, "map")

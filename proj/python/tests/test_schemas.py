import json
from pathlib import Path

import pytest

jsonschema = pytest.importorskip("jsonschema")
from referencing import Registry, Resource  # noqa: E402

ROOT = Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "docs" / "schemas"
SPECS = ROOT / "tests" / "data" / "specs"


def registry():
    reg = Registry()
    for path in SCHEMAS.glob("*.schema.json"):
        reg = reg.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))
    return reg


def validator(name):
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry())


@pytest.mark.parametrize("path", sorted(SPECS.glob("*.json")), ids=lambda p: p.name)
def test_corpus_matches_schema(path):
    spec = json.loads(path.read_text())
    if spec.get("kind") in ("window", "index_set") or (spec.get("kind") == "kron" and "lattice" in spec.get("left", {})):
        name = "projection.schema.json"
    elif "kind" not in spec:
        name = "nc_polynomial.schema.json"
    else:
        name = "operator.schema.json"
    validator(name).validate(spec)

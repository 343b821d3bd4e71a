"""Validates ptheta JSON output: python3 schemas/validate.py <schema> <document>..."""
import json
import pathlib
import sys

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

here = pathlib.Path(__file__).parent
registry = Registry().with_resources(
    (p.name, Resource.from_contents(json.loads(p.read_text()))) for p in here.glob("*.schema.json")
)
schema = json.loads((here / sys.argv[1]).read_text())
validator = Draft202012Validator(schema, registry=registry)
bad = 0
for doc in sys.argv[2:]:
    for err in validator.iter_errors(json.loads(pathlib.Path(doc).read_text())):
        bad += 1
        print(f"{doc}: {'/'.join(map(str, err.path))}: {err.message}")
sys.exit(1 if bad else 0)

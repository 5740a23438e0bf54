"""Runs the CLI and validates every JSON output against docs/schemas."""
import json
import os
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

registry = Registry()
for path in schema_dir.glob("*.schema.json"):
    registry = registry.with_resource(path.name, Resource.from_contents(json.loads(path.read_text())))


def validator(name):
    return Draft202012Validator(json.loads((schema_dir / name).read_text()), registry=registry)


cache = tempfile.mkdtemp(prefix="ospchar_schema_")
env = dict(os.environ, OSPCHAR_CACHE_DIR=cache)

runs = [
    ("character.schema.json", ["char", "theta", "--n", "2", "--trunc", "2"]),
    ("character.schema.json", ["char", "verma", "--n", "1", "--lambda", "1", "--trunc", "2", "--type", "osp"]),
    ("character.schema.json", ["char", "weyl", "--n", "2", "--mu", "1,0", "--trunc", "1"]),
    ("character.schema.json", ["char", "denominator", "--n", "1", "--trunc", "2"]),
    ("qseries.schema.json", ["char", "branching", "--n", "1", "--lambda", "1", "--mu", "0", "--trunc", "4"]),
    ("qseries.schema.json", ["char", "wmod", "--n", "1", "--lambda", "0", "--mu", "1", "--k", "1/2", "--trunc", "4"]),
    ("report.schema.json", ["verify", "triple-product", "--n", "1", "--trunc", "4"]),
    ("report.schema.json", ["verify", "delta-lemma", "--n", "2", "--cases", "20"]),
    ("report.schema.json", ["verify", "bijections", "--n", "2"]),
    ("report.schema.json", ["verify", "fusion", "--n", "1", "--level", "2"]),
    ("admissible.schema.json", ["tables", "admissible", "--set", "PB", "--p", "7", "--q", "8", "--n", "2"]),
    ("decompose.schema.json", ["tables", "decompose", "--n", "2", "--u", "4", "--v", "1"]),
    ("fusion-table.schema.json", ["tables", "fusion", "--n", "2", "--p", "4", "--q", "7"]),
    ("fusion-table.schema.json", ["tables", "osp-fusion", "--n", "2", "--u", "4", "--v", "1"]),
]

failed = 0
for schema, args in runs:
    out = subprocess.run([cli, *args], capture_output=True, text=True, env=env)
    errors = [] if out.returncode == 0 else [f"exit {out.returncode}: {out.stderr.strip()}"]
    if not errors:
        errors = [e.message for e in validator(schema).iter_errors(json.loads(out.stdout))]
    print(("ok  " if not errors else "BAD ") + " ".join(args) + ("" if not errors else f" -- {errors[0]}"))
    failed += bool(errors)

for path in pathlib.Path(cache).glob("*.json"):
    errors = [e.message for e in validator("fusion-cache.schema.json").iter_errors(json.loads(path.read_text()))]
    print(("ok  " if not errors else "BAD ") + "cache " + path.name + ("" if not errors else f" -- {errors[0]}"))
    failed += bool(errors)

sys.exit(1 if failed else 0)

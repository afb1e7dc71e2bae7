#!/usr/bin/env python3
"""Validates --json output of each subcommand, and the shipped models, against schemas/."""
import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])

resources = []
for path in schema_dir.glob("*.schema.json"):
    doc = json.loads(path.read_text())
    resources.append((doc["$id"], Resource.from_contents(doc)))
registry = Registry().with_resources(resources)

CASES = [
    ["parse", "(p -> q) & r"],
    ["logics"],
    ["prove", "--logic", "WFDhat_imp", "((p->p)->r)->(q->r)"],
    ["prove", "--logic", "WF_imp", "--size", "3", "--rounds", "2", "p -> q"],
    ["check-proof", "lemma2_13a.prf"],
    ["eval", "--model", "minimal.json", "--world", "g", "p->p"],
    ["valid", "--model", "separating_countermodel.json", "((p->p)->r)->(q->r)"],
    ["frame-props", "--model", "kripke_chain.json"],
    ["frame-props", "--model", "nbhd_minimal.json"],
    ["countermodel", "--semantics", "k", "p & (p -> q) -> q"],
    ["countermodel", "--semantics", "n", "--props", "equivalence", "(p -> q) -> (p -> p & q)"],
    ["countermodel", "--semantics", "n", "(p -> q) -> (p -> p & q)"],
    ["correspond", "--axiom", "C", "--property", "union", "--worlds", "2", "--min-worlds", "2"],
    ["separate", "--weaker", "WF_imp", "--stronger", "WFDhat_imp", "--max-size", "4", "--max-worlds", "2"],
    ["separate", "--weaker", "WFDhat_imp", "--stronger", "WF_imp", "--max-size", "3", "--max-worlds", "2"],
    ["--fixtures"],
]

failures = 0
for args in CASES:
    proc = subprocess.run([binary, "--json", *args], capture_output=True, text=True)
    if proc.returncode not in (0, 1):
        print(f"FAIL {args}: exit {proc.returncode}: {proc.stderr.strip()}")
        failures += 1
        continue
    doc = json.loads(proc.stdout)
    schema = registry.get_or_retrieve(f"{doc['command']}.schema.json").value.contents
    errors = list(jsonschema.Draft202012Validator(schema, registry=registry).iter_errors(doc))
    for err in errors:
        print(f"FAIL {args}: {err.json_path}: {err.message}")
    failures += bool(errors)
    if not errors:
        print(f"ok   {' '.join(args)}")
listing = json.loads(subprocess.run([binary, "--json", "--fixtures"], capture_output=True, text=True).stdout)
for name in listing["files"]:
    if not name.endswith(".json"):
        continue
    doc = json.loads((pathlib.Path(listing["directory"]) / name).read_text())
    schema = registry.get_or_retrieve(f"{doc['semantics']}-model.schema.json").value.contents
    errors = list(jsonschema.Draft202012Validator(schema, registry=registry).iter_errors(doc))
    for err in errors:
        print(f"FAIL {name}: {err.json_path}: {err.message}")
    failures += bool(errors)
    if not errors:
        print(f"ok   {name}")

sys.exit(1 if failures else 0)

"""Validate CLI output and the demo inputs against the schemas in schemas/.

usage: validate_schemas.py UNEF_EXECUTABLE SCHEMA_DIR DEMO_DIR
"""
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource


def load_registry(schema_dir):
    resources = []
    for path in sorted(schema_dir.glob("*.schema.json")):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


def validator(registry, schema_dir, name):
    doc = json.loads((schema_dir / name).read_text())
    Draft202012Validator.check_schema(doc)
    return Draft202012Validator(doc, registry=registry)


def main():
    unef = str(pathlib.Path(sys.argv[1]).resolve())
    schema_dir, demo = pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    registry = load_registry(schema_dir)
    envelope = validator(registry, schema_dir, "envelope.schema.json")
    failures = []

    def run(args, expect_code):
        proc = subprocess.run([unef, *args], cwd=demo, capture_output=True, text=True)
        label = " ".join(args)
        if proc.returncode != expect_code:
            failures.append(f"{label}: exit {proc.returncode}, expected {expect_code}")
            return None
        doc = json.loads(proc.stdout)
        errors = sorted(envelope.iter_errors(doc), key=lambda e: list(e.absolute_path))
        for e in errors[:3]:
            failures.append(f"{label}: {'/'.join(map(str, e.absolute_path))}: {e.message[:200]}")
        return doc

    with tempfile.TemporaryDirectory() as tmp:
        ok_calls = [
            ["selftest"],
            ["check", "flag", "--sig", "hilbert2.json", "--weight", "w.json", "--mode", "ample"],
            ["check", "flag", "--sig", "flag3.json"],
            ["check", "X", "--sig", "hilbert2.json", "--weight", "w.json"],
            ["check", "partial", "--sig", "partial.json"],
            ["check", "minimal", "--sig", "minimal.json"],
            ["cone", "rays", "--p", "2", "--a", "1,2,1"],
            ["cone", "member", "--p", "2", "--a", "1,2,1", "--point", "1,-1/2,3"],
            ["cone", "decompose", "--p", "3", "--a", "1,1", "--point", "1,2"],
            ["cone", "decompose", "--p", "3", "--a", "1,1", "--point", "-1,2"],
            ["cone", "fixpoint", "--p", "2", "--a", "1,1,1", "--iters", "30"],
            ["picard", "reduce", "--relations", "reduce_curve.json"],
            ["picard", "identity", "--name", "half-half", "--p", "3", "--a", "1,2,1", "--l", "2"],
            ["picard", "identity", "--name", "tower", "--p", "2", "--N", "2", "--s", "3"],
            ["picard", "identity", "--name", "fiber", "--p", "2", "--sig", "fiber.json"],
            ["picard", "feasible-t", "--params", "feasible.json"],
            ["slope", "generic", "--sig", "sig6.json", "--rank", "2"],
            ["slope", "from-ranks", "--sig", "sig6.json", "--ranks", "2,1,0,2"],
            ["slope", "tower", "--sig", "tower7.json", "--m", "2", "--r", "3,0,4"],
            ["slope", "diagram", "--sig", "sig6.json", "--ranks", "2,1,0,2",
             "--svg", str(pathlib.Path(tmp) / "d.svg")],
            ["zip", "sample", "--p", "3", "--sig", "strata.json"],
            ["zip", "slope", "--p", "5", "--sig", "sig6.json", "--rank", "2"],
            ["zip", "quotient", "--p", "2", "--sig", "strata.json", "--chains", "5"],
            ["weyl", "strata", "--sig", "strata.json"],
            ["weyl", "strata", "--sig", "strata.json", "--order", "twisted", "--variant", "plain"],
            ["--batch", "batch.json"],
        ]
        for args in ok_calls:
            run(args, 0)

    bad_calls = [
        ["frobnicate"],
        ["slope", "generic", "--sig", "missing.json", "--rank", "1"],
        ["slope", "generic", "--sig", '{"N": 1, "n": 3}', "--rank", "1"],
        ["slope", "generic", "--sig", '{"N": 1, "n": 3, "m": [4]}', "--rank", "1"],
        ["cone", "rays", "--p", "6", "--a", "1,1"],
        ["check", "flag", "--sig", "sig6.json", "--weight", '{"kind": "other"}'],
    ]
    for args in bad_calls:
        doc = run(args, 2)
        if doc is not None and "error" not in doc:
            failures.append(f"{' '.join(args)}: no error object")

    inputs = {
        "signature_input.schema.json": ["hilbert2.json", "sig6.json", "tower7.json", "minimal.json",
                                        "partial.json", "flag3.json", "strata.json", "fiber.json"],
        "weight_input.schema.json": ["w.json"],
        "reduce_request.schema.json": ["reduce_curve.json"],
        "feasible_params.schema.json": ["feasible.json"],
        "batch_input.schema.json": ["batch.json"],
    }
    for schema, files in inputs.items():
        v = validator(registry, schema_dir, schema)
        for f in files:
            for e in v.iter_errors(json.loads((demo / f).read_text())):
                failures.append(f"{f} vs {schema}: {e.message[:200]}")

    # inputs the tool rejects must be rejected by the schemas as well
    sig_v = validator(registry, schema_dir, "signature_input.schema.json")
    for bad in [{"N": 1, "n": 3}, {"N": 1, "n": 3, "m": [1], "weight": {"kind": "other"}},
                {"N": 1, "n": 3, "m": [1], "weight": {"kind": "minimal", "place": 1}}]:
        if sig_v.is_valid(bad):
            failures.append(f"schema accepts invalid input {bad}")

    for f in failures:
        print("FAIL", f)
    print(f"{len(ok_calls)} outputs, {len(bad_calls)} error envelopes, "
          f"{sum(len(v) for v in inputs.values())} input files checked; {len(failures)} problems")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())

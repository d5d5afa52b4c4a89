"""Runs every --json command on generated instances and validates the output
against schema/report.schema.json."""
import json
import pathlib
import subprocess
import sys

import jsonschema

flatlie, schema_path, work = sys.argv[1], sys.argv[2], pathlib.Path(sys.argv[3])
work.mkdir(parents=True, exist_ok=True)
schema = json.loads(pathlib.Path(schema_path).read_text())
jsonschema.Draft202012Validator.check_schema(schema)
validator = jsonschema.Draft202012Validator(schema)


def gen(name, *args):
    path = work / name
    subprocess.run([flatlie, "generate", *args, "--out", str(path)], check=True)
    return str(path)


def write(name, text):
    path = work / name
    path.write_text(text)
    return str(path)


e2 = gen("e2.inst", "named", "e2")
so3 = gen("so3.inst", "named", "so3")
heis = gen("heis.inst", "named", "heisenberg3")
lor = gen("lor.inst", "metric", "heisenberg3", "--plus", "2", "--minus", "1", "--seed", "3")
flat = gen("flat.inst", "flat", "--p", "2", "--q", "4", "--seed", "1")
u2 = write("u2.inst", "flatlie-instance 1\nname u2\ndim 4\nbracket 1 2 3:1\nbracket 1 3 2:-1\nbracket 2 3 1:1\n"
           "metric\n1 0 0 0\n0 1 0 0\n0 0 1 0\n0 0 0 1\nsubspace 2\n1 0\n0 0\n0 0\n0 1\n0 1\n-1 0\n")
hr = write("hr.inst", "flatlie-instance 1\ndim 3\nbracket 0 1 2:1\nbivector 0 1 1\n")
bad = write("bad.inst", "flatlie-instance 1\ndim 2\nbracket 0 1 1:1\nmetric\n1 2\n0 1\n")
broken = write("broken.inst", "flatlie-instance 1\ndim 2\nbracket 1 0 1:1\n")
so3s = write("so3s.inst", pathlib.Path(so3).read_text() + "subspace 2\n1 0\n0 1\n0 0\n0 1\n-1 0\n")

runs = [
    ["validate", heis], ["validate", bad], ["validate", broken],
    ["analyze", e2], ["analyze", so3], ["analyze", lor], ["analyze", hr], ["analyze", broken],
    ["analyze", e2, so3, flat],
    ["yb", "--construct", u2], ["yb", "--check", hr], ["yb", "--check", u2],
    ["bialgebra", u2], ["bialgebra", flat], ["bialgebra", so3s],
    ["search", heis, "--plus", "2", "--minus", "1", "--starts", "8"],
]
failures = 0
for args in runs:
    proc = subprocess.run([flatlie, *args, "--json"], capture_output=True, text=True)
    doc = json.loads(proc.stdout)
    errors = sorted(validator.iter_errors(doc), key=str)
    if doc.get("exit_code") != proc.returncode:
        errors.append(f"exit_code {doc.get('exit_code')} != process exit {proc.returncode}")
    status = "ok" if not errors else "INVALID"
    print(f"{status:8} exit={proc.returncode} {' '.join(args[:1])} {pathlib.Path(args[-1]).name}")
    for err in errors:
        print("   ", getattr(err, "message", err))
    failures += bool(errors)
sys.exit(1 if failures else 0)

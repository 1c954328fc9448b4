"""Run the CLI on the bundled systems, validate each JSON report against the
schema and check that repeated runs are byte-identical."""

import json
import os
import subprocess
import sys
import tempfile

import jsonschema

CLI, SCHEMA, DATA = sys.argv[1], sys.argv[2], sys.argv[3]

RUNS = [
    ["analyze", "lorenz.sys", "--skip-numeric"],
    ["analyze", "lorenz.sys", "--params", "sigma=2,epsilon=0,b=1"],
    ["analyze", "system21.sys", "--charts", "standard", "--seed", "7"],
    ["analyze", "m21.sys", "--skip-numeric"],
    ["analyze", "xy41.sys"],
    ["analyze", "system41.sys"],
    ["painleve", "lorenz.sys"],
    ["index", "lorenz.sys", "--chart", "U1", "--point", "0,0,0"],
    ["index", "lorenz.sys", "--chart", "W(1,2,2)", "--point", "0,1/2*i,1/2"],
    ["resolve", "lorenz.sys", "--params", "sigma=1,epsilon=3,b=2"],
    ["verify-integrals", "system51.sys", "--reductions"],
    ["atlas", "system21.sys", "--atlas", "theorem31"],
    ["atlas", "xy41.sys", "--atlas", "prop62"],
    ["uniqueness", "system21.sys", "--atlas", "theorem31", "--params", "epsilon=-2"],
    ["numeric", "system31.sys", "--x0", "1,0,0", "--t", "10", "--step", "1e-3", "--sample", "100"],
]


def run(args, out):
    cmd = [CLI, args[0], os.path.join(DATA, args[1])] + args[2:] + ["--json", out]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    if proc.returncode != 0:
        raise SystemExit(f"{' '.join(cmd)} exited {proc.returncode}: {proc.stderr}")
    with open(out, "rb") as f:
        return f.read()


def main():
    with open(SCHEMA) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failed = 0
    with tempfile.TemporaryDirectory() as tmp:
        for n, args in enumerate(RUNS):
            first = run(args, os.path.join(tmp, f"{n}a.json"))
            second = run(args, os.path.join(tmp, f"{n}b.json"))
            errors = sorted(validator.iter_errors(json.loads(first)), key=lambda e: list(e.path))
            label = " ".join(args)
            for e in errors:
                print(f"{label}: {list(e.path)}: {e.message}")
            if first != second:
                print(f"{label}: output differs between runs")
            ok = not errors and first == second
            failed += not ok
            print(("ok   " if ok else "FAIL ") + label)

    report = json.loads(first)
    if report["trajectory"]["drifts"][0]["max_drift"] > 1e-8:
        print("FAIL system31 drift")
        failed += 1

    empty = os.path.join(tempfile.gettempdir(), "phasekit_empty.sys")
    open(empty, "w").close()
    code = subprocess.run([CLI, "analyze", empty], capture_output=True).returncode
    if code != 1:
        print(f"FAIL empty document exit code {code}")
        failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
